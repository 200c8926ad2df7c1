#![no_main]

use knotqp::braid::BraidWord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = BraidWord::parse_list(text, None);
    let _ = BraidWord::parse_list(text, Some(4));
});
