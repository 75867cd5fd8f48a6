//! Weighting parsing must never panic and must round-trip what it
//! accepts (zero weights drop out before rendering).

#![no_main]

use expthresh::format::{parse_fractional_cover, render_fractional_cover};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((ground, weighting)) = parse_fractional_cover(text) {
        let rendered = render_fractional_cover(&ground, &weighting);
        let (ground2, weighting2) =
            parse_fractional_cover(&rendered).expect("canonical form must reparse");
        assert_eq!(ground2, ground, "round trip changed the ground set");
        assert_eq!(weighting2, weighting, "round trip changed the weighting");
    }
});
