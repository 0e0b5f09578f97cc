#![no_main]

use libfuzzer_sys::fuzz_target;
use tqf_core::TernaryForm;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(f) = s.parse::<TernaryForm>() else { return };
    assert_eq!(f.to_string().parse::<TernaryForm>().unwrap(), f);
    if f.is_positive_definite() {
        let _ = f.invariants();
        let _ = tqf_core::forms::reduce(&f);
    }
});
