//! Fuzz the window and rectangle spec parsers ("lo..hi" and
//! "m_lo..m_hi,n_lo..n_hi").

#![no_main]

use largeness::{Rect, Window1D};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(window) = input.parse::<Window1D>() {
        assert!(window.lo() <= window.hi());
        let rendered = window.to_string();
        let reparsed = rendered.parse::<Window1D>().expect("canonical window reparses");
        assert_eq!(reparsed, window);
    }
    if let Ok(rect) = input.parse::<Rect>() {
        assert!(rect.m_lo() <= rect.m_hi() && rect.n_lo() <= rect.n_hi());
    }
});
