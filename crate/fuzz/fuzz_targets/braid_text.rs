#![no_main]

use knotqp::braid::BraidWord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(w) = BraidWord::parse_text(text) {
        assert_eq!(BraidWord::parse_text(&w.to_text()).as_ref(), Ok(&w));
        if w.len() <= 64 {
            assert!(w.closure().validate().is_valid());
        }
    }
});
