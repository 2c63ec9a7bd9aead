#![no_main]

use galchar::oracle::Matrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(x) = serde_json::from_slice::<Matrix>(data) {
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<Matrix>(&text).unwrap(), x);
    }
});
