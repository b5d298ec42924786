#![no_main]

use blockham::harness::parse_window;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(w) = parse_window(s) {
            assert!(!w.is_empty());
            assert!(w.iter().all(|c| c.is_finite()));
        }
    }
});
