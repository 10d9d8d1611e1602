//! Fuzz the plane set JSON parser; accepted sets get probed at a few points.

#![no_main]

use largeness::{PlaneSet, Vector2};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(plane) = serde_json::from_str::<PlaneSet>(input) else {
        return;
    };
    let json = serde_json::to_string(&plane).expect("plane sets serialize");
    let back: PlaneSet = serde_json::from_str(&json).expect("canonical JSON reparses");
    assert_eq!(back, plane);

    for (m, n) in [(1i64, 0i64), (2, 2), (5, 3), (-1, -1)] {
        // Membership must be total modulo the enumeration budget.
        let _ = plane.member(&Vector2::from_i64(m, n));
    }
});
