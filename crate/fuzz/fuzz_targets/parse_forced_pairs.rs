#![no_main]

use blockham::solver::parse_forced_pairs;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    if let Ok(s) = std::str::from_utf8(rest) {
        if let Ok(set) = parse_forced_pairs(s, n as usize) {
            for &(u, v) in set.pairs() {
                assert!(u < v && v < n as usize);
                assert_eq!(set.partner(u), Some(v));
            }
        }
    }
});
