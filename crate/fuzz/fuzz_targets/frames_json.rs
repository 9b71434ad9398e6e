#![no_main]

use kstab_core::githm::parse_frames_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(frames) = parse_frames_json(text) {
        for m in &frames {
            assert!(m.iter().all(|row| row.len() == m.len()));
        }
    }
});
