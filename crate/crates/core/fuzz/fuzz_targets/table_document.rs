#![no_main]

use galchar::json::parse_table_document;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = parse_table_document(s) {
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(parse_table_document(&text).unwrap(), doc);
    }
});
