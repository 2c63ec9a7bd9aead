//! Documents exchanged on the command line: Galois character tables and
//! their decompositions.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::charmap::{decompose_galois_character, ClassFunction, ParamTable};
use crate::combin::PartitionFn;
use crate::ffield::Side;
use crate::galois::{galois_classes, galois_irr_indices, GaloisOrbit};
use crate::numbers::{gl_order, CycNumber};
use crate::{Error, Result};

/// Largest group rank accepted in documents.
pub const MAX_N: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Column {
    pub orbit: Vec<PartitionFn>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Row {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<Vec<PartitionFn>>,
    pub values: Vec<CycNumber>,
}

/// Values of class functions on Galois classes. `table` emits one row per
/// `d`-Galois irreducible; `decompose` accepts any rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub n: u32,
    pub q: u64,
    pub d: u64,
    pub columns: Vec<Column>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecomposedRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<Vec<PartitionFn>>,
    pub coefficients: Vec<CycNumber>,
    pub nonnegative_integral: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecomposeDocument {
    pub n: u32,
    pub q: u64,
    pub d: u64,
    /// The `d`-Galois irreducibles, in coefficient order.
    pub basis: Vec<Vec<PartitionFn>>,
    pub results: Vec<DecomposedRow>,
}

fn check_group(n: u32, q: u64, d: u64) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::invalid(format!("n must lie in 1..={MAX_N}")));
    }
    gl_order(n, q)?;
    if d == 0 {
        return Err(Error::invalid("d must be positive"));
    }
    Ok(())
}

/// The `d`-Galois character table: orbit-sum characters on Galois classes.
pub fn galois_table(table: &ParamTable, d: u64) -> Result<TableDocument> {
    let (n, q) = (table.n, table.q);
    let classes = galois_classes(n, q, d)?;
    let chars = galois_irr_indices(n, q, d)?;
    let columns = classes
        .iter()
        .map(|o| Column {
            orbit: o.members.clone(),
        })
        .collect();
    let mut rows = Vec::with_capacity(chars.len());
    for o in &chars {
        let cf = table.orbit_character(o)?;
        let values = classes
            .iter()
            .map(|c| cf.value(c.representative()))
            .collect();
        rows.push(Row {
            orbit: Some(o.members.clone()),
            values,
        });
    }
    Ok(TableDocument {
        n,
        q,
        d,
        columns,
        rows,
    })
}

/// Parses and validates a table document.
pub fn parse_table_document(text: &str) -> Result<TableDocument> {
    let doc: TableDocument = serde_json::from_str(text)?;
    check_group(doc.n, doc.q, doc.d)?;
    let mut seen = BTreeSet::new();
    for col in &doc.columns {
        if col.orbit.is_empty() {
            return Err(Error::invalid("empty column orbit"));
        }
        for mu in &col.orbit {
            mu.validate(doc.q)?;
            if mu.weight() != doc.n || mu.side() != Some(Side::Phi) {
                return Err(Error::invalid(format!(
                    "{mu:?} is not a class parameter of GL_{}",
                    doc.n
                )));
            }
            if !seen.insert(mu.clone()) {
                return Err(Error::invalid(format!("{mu:?} appears in two columns")));
            }
        }
    }
    for row in &doc.rows {
        if row.values.len() != doc.columns.len() {
            return Err(Error::invalid(format!(
                "row has {} values for {} columns",
                row.values.len(),
                doc.columns.len()
            )));
        }
        for lam in row.orbit.iter().flatten() {
            lam.validate(doc.q)?;
            if lam.weight() != doc.n || lam.side() != Some(Side::Theta) {
                return Err(Error::invalid(format!(
                    "{lam:?} is not a character parameter of GL_{}",
                    doc.n
                )));
            }
        }
    }
    Ok(doc)
}

/// Decomposes every row of `doc` into `d`-Galois irreducibles.
pub fn decompose_document(table: &ParamTable, doc: &TableDocument) -> Result<DecomposeDocument> {
    if (table.n, table.q) != (doc.n, doc.q) {
        return Err(Error::invalid("document and table disagree on (n, q)"));
    }
    let covered: usize = doc.columns.iter().map(|c| c.orbit.len()).sum();
    if covered != table.classes.len() {
        return Err(Error::invalid(format!(
            "columns cover {covered} of {} classes",
            table.classes.len()
        )));
    }
    let basis: Vec<GaloisOrbit> = galois_irr_indices(doc.n, doc.q, doc.d)?;
    let mut results = Vec::with_capacity(doc.rows.len());
    for row in &doc.rows {
        let mut values = BTreeMap::new();
        for (col, v) in doc.columns.iter().zip(&row.values) {
            if v.is_zero() {
                continue;
            }
            for mu in &col.orbit {
                values.insert(mu.clone(), v.clone());
            }
        }
        let cf = ClassFunction {
            n: doc.n,
            q: doc.q,
            values,
        };
        let dec = decompose_galois_character(table, &cf, doc.d, false)?;
        results.push(DecomposedRow {
            orbit: row.orbit.clone(),
            coefficients: dec.coefficients.into_iter().map(|(_, c)| c).collect(),
            nonnegative_integral: dec.nonnegative_integral,
        });
    }
    Ok(DecomposeDocument {
        n: doc.n,
        q: doc.q,
        d: doc.d,
        basis: basis.into_iter().map(|o| o.members).collect(),
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_gives_unit_vectors() {
        for (n, q, d) in [(2, 2, 1), (2, 3, 1), (2, 3, 2), (1, 5, 1)] {
            let table = ParamTable::new(n, q).unwrap();
            let doc = galois_table(&table, d).unwrap();
            let text = serde_json::to_string(&doc).unwrap();
            let parsed = parse_table_document(&text).unwrap();
            assert_eq!(parsed, doc);
            let dec = decompose_document(&table, &parsed).unwrap();
            for (i, r) in dec.results.iter().enumerate() {
                for (j, c) in r.coefficients.iter().enumerate() {
                    assert_eq!(*c, CycNumber::from_integer((i == j) as i64));
                }
            }
        }
    }

    #[test]
    fn gl2_f3_has_seven_columns() {
        let doc = galois_table(&ParamTable::new(2, 3).unwrap(), 1).unwrap();
        assert_eq!(doc.columns.len(), 7);
        assert_eq!(doc.rows.len(), 7);
    }

    #[test]
    fn rejects_bad_documents() {
        let table = ParamTable::new(2, 2).unwrap();
        let doc = galois_table(&table, 1).unwrap();
        let mut short = doc.clone();
        short.rows[0].values.pop();
        assert!(parse_table_document(&serde_json::to_string(&short).unwrap()).is_err());
        let mut dup = doc.clone();
        dup.columns[1] = dup.columns[0].clone();
        assert!(parse_table_document(&serde_json::to_string(&dup).unwrap()).is_err());
        let mut missing = doc.clone();
        missing.columns.pop();
        for r in missing.rows.iter_mut() {
            r.values.pop();
        }
        let parsed = parse_table_document(&serde_json::to_string(&missing).unwrap()).unwrap();
        assert!(decompose_document(&table, &parsed).is_err());
        assert!(
            parse_table_document("{\"n\":0,\"q\":2,\"d\":1,\"columns\":[],\"rows\":[]}").is_err()
        );
        assert!(parse_table_document("not json").is_err());
    }
}
