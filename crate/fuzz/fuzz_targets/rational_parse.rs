//! Rational parsing must never panic; accepted values must round-trip
//! through their canonical lowest-terms rendering.

#![no_main]

use expthresh::format::{parse_rational, render_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(value) = parse_rational(text) {
        let rendered = render_rational(&value);
        let reparsed = parse_rational(&rendered).expect("canonical form must reparse");
        assert_eq!(reparsed, value, "round trip changed the value");
    }
});
