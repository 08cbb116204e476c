#![no_main]
use libfuzzer_sys::fuzz_target;

use nitlog::syntax::{parse_formula_inferring, print_formula};

fuzz_target!(|data: &str| {
    if let Ok((f, sig)) = parse_formula_inferring(data) {
        let printed = print_formula(&f);
        let (again, _) = parse_formula_inferring(&printed).expect("printed formula reparses");
        assert_eq!(f, again, "round trip through `{printed}`");
        let _ = f.classify();
        let _ = sig.check(&f);
    }
});
