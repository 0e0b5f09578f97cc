#![no_main]

use libfuzzer_sys::fuzz_target;
use tqf_core::local::GenusLabel;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(g) = s.parse::<GenusLabel>() else { return };
    assert_eq!(g.to_string().parse::<GenusLabel>().unwrap(), g);
    let _ = g.family();
});
