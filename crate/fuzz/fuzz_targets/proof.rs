#![no_main]
use libfuzzer_sys::fuzz_target;

use nitlog::presets;
use nitlog::proofs::{check_proof, parse_proof};

fuzz_target!(|data: &str| {
    let logic = presets::logic("kt").unwrap().unwrap();
    if let Ok(p) = parse_proof(data, &logic) {
        if p.lines.len() <= 16 {
            let _ = check_proof(&p);
        }
    }
});
