use std::path::PathBuf;

use kstab_core::githm::{parse_forms_json, parse_frames_json};
use kstab_core::logfano::PairConfigJson;
use kstab_core::qgeom::{PolytopeJson, QPolytope};
use kstab_core::rational::{parse_q, parse_q_list};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (
                path.display().to_string(),
                std::fs::read_to_string(&path).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn every_seed_parses() {
    for (name, text) in seeds("parse_q") {
        assert!(
            parse_q(&text).is_ok() || parse_q_list(&text).is_ok(),
            "{name}"
        );
    }
    for (name, text) in seeds("polytope_json") {
        let json: PolytopeJson =
            serde_json::from_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        QPolytope::from_json(&json).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    for (name, text) in seeds("pair_config_json") {
        let json: PairConfigJson =
            serde_json::from_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        json.to_config().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    for (name, text) in seeds("forms_json") {
        parse_forms_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    for (name, text) in seeds("frames_json") {
        parse_frames_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
