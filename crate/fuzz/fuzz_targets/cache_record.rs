#![no_main]

use libfuzzer_sys::fuzz_target;
use tqf_core::genera::{parse_record, ClassInventory};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Some(line) = s.lines().next() {
        let _ = parse_record(line);
    }
    if let Ok(inv) = ClassInventory::read_jsonl(3, s.as_bytes()) {
        let mut out = Vec::new();
        inv.write_jsonl(&mut out).unwrap();
        assert_eq!(ClassInventory::read_jsonl(3, out.as_slice()).unwrap(), inv);
    }
});
