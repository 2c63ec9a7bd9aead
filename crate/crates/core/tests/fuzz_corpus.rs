use std::fs;
use std::path::PathBuf;

use galchar::combin::PartitionFn;
use galchar::json::parse_table_document;
use galchar::numbers::{parse_rational, rational_to_string, CycNumber};
use galchar::oracle::{parse_cache, Matrix};
use galchar::symf::SymElement;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "{target}");
    out
}

/// Returns how many seeds decoded.
fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(
    target: &str,
) -> usize {
    let mut ok = 0;
    for s in seeds(target) {
        if let Ok(x) = serde_json::from_str::<T>(&s) {
            let again: T = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
            assert_eq!(again, x);
            ok += 1;
        }
    }
    ok
}

#[test]
fn rationals() {
    let mut ok = 0;
    for s in seeds("parse_rational") {
        if let Ok(r) = parse_rational(&s) {
            assert_eq!(parse_rational(&rational_to_string(&r)).unwrap(), r);
            ok += 1;
        }
    }
    assert!(ok >= 5);
}

#[test]
fn json_values() {
    assert_eq!(round_trip::<CycNumber>("cyc_number_json"), 3);
    assert!(round_trip::<PartitionFn>("partition_fn_json") >= 7);
    assert_eq!(round_trip::<SymElement>("sym_element_json"), 3);
    assert_eq!(round_trip::<Matrix>("matrix_json"), 2);
}

#[test]
fn table_documents() {
    let mut ok = 0;
    for s in seeds("table_document") {
        if let Ok(doc) = parse_table_document(&s) {
            assert_eq!(
                parse_table_document(&serde_json::to_string(&doc).unwrap()).unwrap(),
                doc
            );
            ok += 1;
        }
    }
    assert_eq!(ok, 3);
}

#[test]
fn cached_tables() {
    let mut ok = 0;
    for s in seeds("cache_table") {
        if let Ok(t) = parse_cache(&s) {
            assert_eq!(parse_cache(&serde_json::to_string(&t).unwrap()).unwrap(), t);
            ok += 1;
        }
    }
    assert_eq!(ok, 3);
}
