#![no_main]

use kstab_core::githm::{parse_forms_json, Form};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(forms) = parse_forms_json(text) {
        for f in &forms {
            assert_eq!(&Form::from_json(&f.to_json()).unwrap(), f);
            assert!(f.support().all(|e| e.iter().map(|&x| x as u64).sum::<u64>() == f.degree() as u64));
        }
    }
});
