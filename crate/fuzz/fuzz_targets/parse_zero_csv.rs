#![no_main]

use libfuzzer_sys::fuzz_target;
use zeta_gb::records::{parse_csv, write_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(records) = parse_csv(text) {
        let again = parse_csv(&write_csv(&records)).expect("written CSV must parse");
        assert_eq!(again, records);
    }
});
