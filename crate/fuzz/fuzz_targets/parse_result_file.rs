#![no_main]

use constacyclic3d::format::ResultFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(result) = ResultFile::from_json(text) {
        let again = ResultFile::from_json(&result.to_json()).expect("accepted result re-parses");
        assert_eq!(again, result);
        let _ = result.g_matrix();
    }
});
