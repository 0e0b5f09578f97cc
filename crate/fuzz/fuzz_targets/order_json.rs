#![no_main]

use libfuzzer_sys::fuzz_target;
use tqf_core::clifford::{self, QuaternionOrder};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(o) = QuaternionOrder::from_json(s) else { return };
    assert_eq!(QuaternionOrder::from_json(&o.to_json()).unwrap(), o);
    let _ = o.discrd();
    if o.is_definite() {
        let _ = clifford::dual_form(&o);
        let _ = clifford::trace_zero_form_o0(&o);
    }
});
