//! Group parsing must never panic; accepted groups render to a
//! generator list that regenerates exactly the same element set.

#![no_main]

use expthresh::format::{parse_group, render_group};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(group) = parse_group(text) {
        let rendered = render_group(&group);
        let reparsed = parse_group(&rendered).expect("canonical form must reparse");
        assert_eq!(
            reparsed.elements(),
            group.elements(),
            "round trip changed the group"
        );
    }
});
