#![no_main]

use galchar::oracle::parse_cache;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = parse_cache(s) {
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(parse_cache(&text).unwrap(), t);
    }
});
