#![no_main]

use knotqp::diagram::{parse_pd, to_pd_string};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse_pd(text) {
        // anything accepted must survive a round trip through the strict form
        let again = parse_pd(&to_pd_string(&d)).expect("strict output reparses");
        assert_eq!(to_pd_string(&again), to_pd_string(&d));
        assert!(d.validate().is_valid());
    }
});
