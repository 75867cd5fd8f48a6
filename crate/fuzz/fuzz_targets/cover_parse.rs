//! Cover parsing must never panic and must round-trip what it accepts.

#![no_main]

use expthresh::format::{parse_cover, render_cover};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((ground, cover)) = parse_cover(text) {
        let rendered = render_cover(&ground, &cover);
        let (ground2, cover2) = parse_cover(&rendered).expect("canonical form must reparse");
        assert_eq!(ground2, ground, "round trip changed the ground set");
        assert_eq!(cover2, cover, "round trip changed the cover");
    }
});
