#![no_main]

use libfuzzer_sys::fuzz_target;
use yangbax::format::parse_rn;
use yangbax::infty::StructureConstants;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_rn(s, &StructureConstants::matrix_algebra(2));
    }
});
