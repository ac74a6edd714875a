#![no_main]

use constacyclic3d::format::SpecFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = SpecFile::from_json(text) else {
        return;
    };
    if let Ok(spec) = file.to_code_spec() {
        // the normalized echo must parse back to the same spec
        let echo = SpecFile::from_spec(&spec);
        let again = SpecFile::from_json(&echo.to_json()).expect("echo parses");
        assert_eq!(again, echo);
        assert_eq!(again.to_code_spec().expect("echo validates"), spec);
    }
});
