#![no_main]

use knotqp::diagram::{parse_pd_json, to_json_string};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse_pd_json(text) {
        let again = parse_pd_json(&to_json_string(&d)).expect("own JSON reparses");
        assert_eq!(again.crossings(), d.crossings());
    }
});
