#![no_main]

use libfuzzer_sys::fuzz_target;
use shapley_discount::counterexample::SequenceKind;
use shapley_discount::report::Scale;
use shapley_discount::Method;

fuzz_target!(|data: &str| {
    if let Ok(m) = data.parse::<Method>() {
        assert_eq!(m.as_str(), data);
    }
    if let Ok(k) = data.parse::<SequenceKind>() {
        assert_eq!(k.as_str(), data);
    }
    let _ = data.parse::<Scale>();
});
