#![no_main]

use galchar::numbers::CycNumber;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(x) = serde_json::from_slice::<CycNumber>(data) {
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<CycNumber>(&text).unwrap(), x);
    }
});
