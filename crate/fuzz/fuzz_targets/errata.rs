#![no_main]

use libfuzzer_sys::fuzz_target;
use tqf_core::verify::golden;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = golden::parse_errata(s);
    }
});
