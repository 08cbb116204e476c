#![no_main]
use libfuzzer_sys::fuzz_target;

use nitlog::syntax::{parse_logic, write_logic};

fuzz_target!(|data: &str| {
    if let Ok(l) = parse_logic(data) {
        let again = parse_logic(&write_logic(&l)).expect("written logic reparses");
        assert_eq!(l, again);
    }
});
