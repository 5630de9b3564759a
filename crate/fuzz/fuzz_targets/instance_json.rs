#![no_main]

use libfuzzer_sys::fuzz_target;
use shapley_discount::{Equation, SystemInstance};

fuzz_target!(|data: &[u8]| {
    let Ok(inst) = SystemInstance::from_json_slice(data) else {
        return;
    };
    for eq in Equation::BOTH {
        for set in [inst.maximizer_set(eq), inst.minimizer_set(eq)] {
            let v = set.to_vec();
            assert!(!v.is_empty());
            assert!(v.windows(2).all(|w| w[0] < w[1]));
            assert!(v.iter().all(|x| (0.0..=1.0).contains(x)));
        }
        assert!(inst.g_of(eq).is_finite());
    }
});
