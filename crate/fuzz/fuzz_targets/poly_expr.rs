//! Fuzz the polynomial expression parser: it must never panic, and accepted
//! expressions must round-trip through their canonical rendering.

#![no_main]

use libfuzzer_sys::fuzz_target;
use num_bigint::BigInt;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(poly) = largeness::poly::parse_poly_expr(input) {
        let rendered = poly.to_string();
        let reparsed = largeness::poly::parse_poly_expr(&rendered)
            .expect("canonical rendering must reparse");
        assert_eq!(reparsed, poly, "display round trip changed the polynomial");
        // Evaluation must be total.
        let _ = poly.eval(&BigInt::from(3));
        let _ = poly.derivative();
    }
});
