#![no_main]

use blockham::model::{parse_edge_list, to_edge_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(g) = parse_edge_list(s) {
            let again = parse_edge_list(&to_edge_list(&g)).expect("printed graph parses");
            assert_eq!(again.edge_vec(), g.edge_vec());
        }
    }
});
