#![no_main]

use knotqp::table::parse_csv;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_csv(text) {
        for r in &t.rows {
            if let (Some(w), Some(b)) = (&r.braid, r.row.braid_index) {
                assert_eq!(r.w_beta.is_some(), w.strands() == b as usize);
            }
        }
    }
});
