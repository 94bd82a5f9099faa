#![no_main]

use gorenstein::format::{parse_algebra_file, write_algebra_file};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(alg) = parse_algebra_file(text) {
        let again = parse_algebra_file(&write_algebra_file(&alg)).expect("written algebra re-parses");
        assert_eq!(alg, again);
    }
});
