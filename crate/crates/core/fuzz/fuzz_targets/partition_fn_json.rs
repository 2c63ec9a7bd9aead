#![no_main]

use galchar::combin::PartitionFn;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(x) = serde_json::from_slice::<PartitionFn>(data) {
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<PartitionFn>(&text).unwrap(), x);
    }
});
