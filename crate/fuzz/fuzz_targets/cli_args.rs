#![no_main]

use libfuzzer_sys::fuzz_target;
use zeta_gb::cli::parse_args;

// NUL-separated argv; parsing only, nothing is executed
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let argv = std::iter::once("zeta-gb").chain(text.split('\0'));
    let _ = parse_args(argv);
});
