#![no_main]

use libfuzzer_sys::fuzz_target;
use zeta_gb::audit::AuditReport;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = AuditReport::from_json(text) {
        let json = report.to_json();
        let again = AuditReport::from_json(&json).expect("written report must parse");
        assert_eq!(again.to_json(), json);
    }
});
