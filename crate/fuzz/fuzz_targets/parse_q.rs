#![no_main]

use kstab_core::rational::{fmt_q, parse_q, parse_q_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(x) = parse_q(text) {
        assert_eq!(parse_q(&fmt_q(&x)).unwrap(), x);
    }
    if let Ok(xs) = parse_q_list(text) {
        let joined = xs.iter().map(fmt_q).collect::<Vec<_>>().join(",");
        assert_eq!(parse_q_list(&joined).unwrap(), xs);
    }
});
