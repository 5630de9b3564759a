//! Replays the checked-in fuzz seeds through the same checks as the fuzz
//! targets, so the corpus stays meaningful without a nightly toolchain.

use std::fs;
use std::path::PathBuf;

use shapley_discount::counterexample::SequenceKind;
use shapley_discount::report::Scale;
use shapley_discount::{Equation, Method, SystemInstance};

fn corpus(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let bytes = fs::read(&p).unwrap();
            (p, bytes)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn instance_json_seeds() {
    let mut accepted = 0;
    for (path, bytes) in corpus("instance_json") {
        let Ok(inst) = SystemInstance::from_json_slice(&bytes) else {
            continue;
        };
        accepted += 1;
        for eq in Equation::BOTH {
            for set in [inst.maximizer_set(eq), inst.minimizer_set(eq)] {
                let v = set.to_vec();
                assert!(
                    !v.is_empty() && v.windows(2).all(|w| w[0] < w[1]),
                    "{}",
                    path.display()
                );
            }
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn instance_roundtrip_seeds() {
    for (_, bytes) in corpus("instance_roundtrip") {
        let Ok(text) = std::str::from_utf8(&bytes) else {
            continue;
        };
        if let Ok(inst) = SystemInstance::from_json_str(text) {
            assert_eq!(
                SystemInstance::from_json_str(&inst.to_json()).unwrap(),
                inst
            );
        }
    }
}

#[test]
fn option_name_seeds() {
    let mut parsed = 0;
    for (_, bytes) in corpus("option_names") {
        let text = String::from_utf8(bytes).unwrap();
        if let Ok(m) = text.parse::<Method>() {
            assert_eq!(m.as_str(), text);
            parsed += 1;
        }
        if let Ok(k) = text.parse::<SequenceKind>() {
            assert_eq!(k.as_str(), text);
            parsed += 1;
        }
        if text.parse::<Scale>().is_ok() {
            parsed += 1;
        }
    }
    assert_eq!(parsed, 7);
}
