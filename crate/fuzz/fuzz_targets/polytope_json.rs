#![no_main]

use kstab_core::qgeom::{PolytopeJson, QPolytope};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(json) = serde_json::from_slice::<PolytopeJson>(data) else {
        return;
    };
    if let Ok(p) = QPolytope::from_json(&json) {
        let again = QPolytope::from_json(&p.to_json()).expect("serialized polytope parses");
        assert_eq!(again.to_json(), p.to_json());
    }
});
