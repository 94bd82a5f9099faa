#![no_main]

use std::sync::{Arc, OnceLock};

use gorenstein::algebra::{cyclic_nakayama, MonomialAlgebra};
use gorenstein::fieldmat::Field;
use gorenstein_cli::{parse_module_spec, parse_seed};
use libfuzzer_sys::fuzz_target;

fn c4() -> &'static Arc<MonomialAlgebra> {
    static ALG: OnceLock<Arc<MonomialAlgebra>> = OnceLock::new();
    ALG.get_or_init(|| Arc::new(cyclic_nakayama(4, Field::new(2).unwrap()).unwrap()))
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 4096 {
        return;
    }
    let _ = parse_seed(text);
    let _ = parse_module_spec(c4(), text);
});
