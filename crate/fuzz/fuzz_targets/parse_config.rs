#![no_main]

use blockham::harness::parse_config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(cfg) = parse_config(s) {
            assert!(cfg.trials >= 1);
            assert!(!cfg.window.is_empty());
            let _ = cfg.lints();
        }
    }
});
