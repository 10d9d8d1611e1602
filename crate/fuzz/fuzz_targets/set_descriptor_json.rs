//! Fuzz the set descriptor JSON parser. Accepted descriptors must satisfy
//! their invariants: membership agrees with enumeration on a small window
//! and the JSON round-trips losslessly.

#![no_main]

use largeness::{SetDescriptor, Window1D};
use libfuzzer_sys::fuzz_target;
use num_bigint::BigInt;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(set) = serde_json::from_str::<SetDescriptor>(input) else {
        return;
    };

    // Lossless round trip.
    let json = serde_json::to_string(&set).expect("descriptors serialize");
    let back: SetDescriptor = serde_json::from_str(&json).expect("canonical JSON reparses");
    assert_eq!(back, set);

    // Membership and enumeration agree on a small window.
    let window = Window1D::from_i64(1, 48).expect("static window");
    if let Ok(members) = set.enumerate(&window) {
        for x in 1i64..=48 {
            let x = BigInt::from(x);
            let listed = members.binary_search(&x).is_ok();
            assert_eq!(
                set.member_lenient(&x).expect("bounded membership"),
                listed,
                "membership/enumeration mismatch at {x}"
            );
        }
    }

    // Normalization must stay semantics-preserving and idempotent.
    let normalized = set.normalize();
    assert_eq!(normalized.normalize(), normalized);
});
