//! Fuzz the construction result JSON parser — the `verify` subcommand's
//! untrusted input surface. Claims are not replayed here (replay is budgeted
//! but can be slow); parsing and re-serialization must never panic.

#![no_main]

use largeness::constructions::ConstructionResult;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(result) = serde_json::from_str::<ConstructionResult>(input) {
        let json = result.to_canonical_json();
        let back: ConstructionResult =
            serde_json::from_str(&json).expect("canonical JSON reparses");
        assert_eq!(back, result);
    }
});
