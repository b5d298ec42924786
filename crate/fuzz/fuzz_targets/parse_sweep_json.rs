#![no_main]

use blockham::harness::{parse_sweep_json, to_json_string};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(table) = parse_sweep_json(s) {
            let again = parse_sweep_json(&to_json_string(&table)).expect("emitted json parses");
            assert_eq!(to_json_string(&again), to_json_string(&table));
        }
    }
});
