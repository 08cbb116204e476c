#![no_main]
use libfuzzer_sys::fuzz_target;

use nitlog::semantics::{parse_frame, parse_subset, write_frame};

fuzz_target!(|data: &str| {
    let _ = parse_subset(data);
    // keep inputs small; a frame declares its own state count
    if data.len() > 4096 {
        return;
    }
    if let Ok(f) = parse_frame(data) {
        let again = parse_frame(&write_frame(&f.model, f.witness)).expect("written frame reparses");
        assert_eq!(write_frame(&again.model, again.witness), write_frame(&f.model, f.witness));
    }
});
