#![no_main]

use libfuzzer_sys::fuzz_target;
use shapley_discount::SystemInstance;

// Anything the loader accepts must survive a write/read cycle unchanged.
fuzz_target!(|data: &str| {
    if let Ok(inst) = SystemInstance::from_json_str(data) {
        let back =
            SystemInstance::from_json_str(&inst.to_json()).expect("written instance reloads");
        assert_eq!(back, inst);
    }
});
