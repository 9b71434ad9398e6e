#![no_main]

use kstab_core::logfano::PairConfigJson;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(json) = serde_json::from_slice::<PairConfigJson>(data) else {
        return;
    };
    if let Ok(cfg) = json.to_config() {
        assert_eq!(cfg.degrees(), json.degrees.as_slice());
        assert_eq!(cfg.coefficients().len(), cfg.k());
    }
});
