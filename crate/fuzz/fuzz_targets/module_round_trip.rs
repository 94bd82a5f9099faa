#![no_main]

// Input is an algebra file and a module file separated by a line `---`.

use std::sync::Arc;

use gorenstein::format::{parse_algebra_file, parse_module_file, write_module_file};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Some((alg_text, mod_text)) = text.split_once("\n---\n") else { return };
    let Ok(alg) = parse_algebra_file(alg_text) else { return };
    let alg = Arc::new(alg);
    let Ok(m) = parse_module_file(mod_text, &alg) else { return };
    let written = write_module_file("m", &m.module);
    let back = parse_module_file(&written, &alg).expect("written module re-parses");
    assert_eq!(back.module.dims(), m.module.dims());
    assert_eq!(back.module.maps(), m.module.maps());
});
