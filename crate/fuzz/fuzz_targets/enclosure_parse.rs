//! Enclosure parsing must never panic, must only accept ordered
//! endpoints, and must round-trip what it accepts.

#![no_main]

use expthresh::format::{parse_enclosure, render_enclosure};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(enclosure) = parse_enclosure(text) {
        assert!(enclosure.lo() <= enclosure.hi());
        let rendered = render_enclosure(&enclosure);
        let reparsed = parse_enclosure(&rendered).expect("canonical form must reparse");
        assert_eq!(reparsed, enclosure, "round trip changed the enclosure");
    }
});
