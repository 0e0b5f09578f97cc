#![no_main]

use libfuzzer_sys::fuzz_target;
use tqf_core::Rational;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(x) = s.parse::<Rational>() else { return };
    let shown = x.to_string();
    assert!(shown.contains('/'));
    assert_eq!(shown.parse::<Rational>().unwrap(), x);
});
