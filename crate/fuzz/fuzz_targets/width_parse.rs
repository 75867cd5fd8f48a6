//! Width parsing must never panic and must only accept positive values.

#![no_main]

use expthresh::format::parse_width;
use libfuzzer_sys::fuzz_target;
use num_traits::Signed;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(width) = parse_width(text) {
        assert!(width.is_positive(), "accepted a nonpositive width");
    }
});
