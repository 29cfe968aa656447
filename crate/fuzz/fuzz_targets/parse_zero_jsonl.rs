#![no_main]

use libfuzzer_sys::fuzz_target;
use zeta_gb::records::{parse_jsonl, write_jsonl};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(records) = parse_jsonl(text) {
        let again = parse_jsonl(&write_jsonl(&records)).expect("written JSONL must parse");
        assert_eq!(again, records);
    }
});
