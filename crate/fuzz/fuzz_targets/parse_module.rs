#![no_main]

use std::sync::{Arc, OnceLock};

use gorenstein::algebra::{cyclic_nakayama, MonomialAlgebra};
use gorenstein::fieldmat::Field;
use gorenstein::format::parse_module_file;
use gorenstein::rep::check_module;
use libfuzzer_sys::fuzz_target;

fn c3() -> &'static Arc<MonomialAlgebra> {
    static ALG: OnceLock<Arc<MonomialAlgebra>> = OnceLock::new();
    ALG.get_or_init(|| Arc::new(cyclic_nakayama(3, Field::new(3).unwrap()).unwrap()))
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_module_file(text, c3()) {
        assert!(check_module(&m.module).is_ok());
    }
});
