//! Parsing arbitrary bytes as a family must never panic, and anything
//! accepted must render back to a form that reparses to the same family.

#![no_main]

use expthresh::format::{parse_family, render_family};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(family) = parse_family(text) {
        let rendered = render_family(&family);
        let reparsed = parse_family(&rendered).expect("canonical form must reparse");
        assert_eq!(reparsed, family, "round trip changed the family");
    }
});
