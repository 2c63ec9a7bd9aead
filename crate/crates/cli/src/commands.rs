use std::collections::BTreeSet;
use std::io::Read;
use std::path::PathBuf;

use galchar::charmap::{centralizer_order, ParamTable};
use galchar::combin::{enumerate_params, PartitionFn};
use galchar::ffield::Side;
use galchar::galois::{galois_classes, galois_irr_indices, sct_axioms_check, GaloisOrbit};
use galchar::hopfpsh::{
    coproduct_constants, galois_cuspidals, orbit_basis, product_constants, self_duality_check,
};
use galchar::json::{decompose_document, galois_table, parse_table_document, TableDocument, MAX_N};
use galchar::numbers::{admissible_d, gl_order};
use galchar::oracle::{load_or_compute, power_map_orbits, CharTable};
use galchar::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Check, Command, Format, GaloisArgs, GradedArgs, GroupArgs, Outcome};

/// Largest `n` for commands that build a full character table.
const TABLE_N_LIMIT: u32 = 4;
/// Largest degree for the graded commands.
const GRADED_LIMIT: u32 = 4;

pub struct Context {
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

fn to_json<T: Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn check_group(n: u32, q: u64, limit: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    gl_order(n, q)?;
    if n > limit {
        return Err(Error::Capacity(format!(
            "n = {n} exceeds the limit {limit} for this command"
        )));
    }
    Ok(())
}

fn check_d(d: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidInput("d must be positive".into()));
    }
    Ok(())
}

fn check_graded(a: &GradedArgs) -> Result<()> {
    check_d(a.d)?;
    gl_order(1, a.q)?;
    if a.n_max > GRADED_LIMIT {
        return Err(Error::Capacity(format!(
            "n-max = {} exceeds the limit {GRADED_LIMIT}",
            a.n_max
        )));
    }
    Ok(())
}

pub fn run(cmd: &Command, ctx: &Context) -> Result<Outcome> {
    if ctx.format == Format::Csv && !matches!(cmd, Command::Table(_)) {
        return Err(Error::UnsupportedFormat(
            "csv output is only available for tables".into(),
        ));
    }
    match cmd {
        Command::Classes(a) => classes(a),
        Command::Chars(a) => chars(a),
        Command::GaloisClasses(a) => {
            check_group(a.n, a.q, MAX_N)?;
            check_d(a.d)?;
            Ok(Outcome::json(orbits_doc(
                a,
                &galois_classes(a.n, a.q, a.d)?,
            )))
        }
        Command::GaloisIrr(a) => {
            check_group(a.n, a.q, MAX_N)?;
            check_d(a.d)?;
            Ok(Outcome::json(orbits_doc(
                a,
                &galois_irr_indices(a.n, a.q, a.d)?,
            )))
        }
        Command::Table(a) => table(a),
        Command::Product(a) => product(a),
        Command::Coproduct(a) => coproduct(a),
        Command::Cuspidals(a) => {
            check_group(a.n, a.q, MAX_N)?;
            check_d(a.d)?;
            let cusp = galois_cuspidals(a.n, a.q, a.d)?;
            Ok(Outcome::json(
                json!({ "n": a.n, "q": a.q, "d": a.d, "cuspidals": to_json(&cusp)? }),
            ))
        }
        Command::Decompose { input } => decompose(input.as_ref()),
        Command::Verify { graded, checks } => verify(graded, checks, ctx),
        Command::Oracle(a) => oracle(a, ctx),
        Command::AdmissibleD { q, n_max } => {
            if *n_max == 0 {
                return Err(Error::InvalidInput("n-max must be positive".into()));
            }
            let ds: Vec<Value> = admissible_d(*q, *n_max)?
                .iter()
                .map(|d| {
                    u64::try_from(d)
                        .map(Value::from)
                        .unwrap_or_else(|_| Value::from(d.to_string()))
                })
                .collect();
            Ok(Outcome::json(Value::Array(ds)))
        }
    }
}

fn orbits_doc(a: &GaloisArgs, orbits: &[GaloisOrbit]) -> Value {
    let blocks: Vec<&[PartitionFn]> = orbits.iter().map(|o| o.members.as_slice()).collect();
    json!({ "n": a.n, "q": a.q, "d": a.d, "count": blocks.len(), "orbits": blocks })
}

fn classes(a: &GroupArgs) -> Result<Outcome> {
    check_group(a.n, a.q, MAX_N)?;
    let mut out = Vec::new();
    for mu in enumerate_params(a.n, a.q, Side::Phi)? {
        let c = centralizer_order(&mu, a.q)?;
        out.push(json!({ "param": mu, "centralizer_order": c.to_string() }));
    }
    Ok(Outcome::json(
        json!({ "n": a.n, "q": a.q, "count": out.len(), "classes": out }),
    ))
}

fn chars(a: &GroupArgs) -> Result<Outcome> {
    check_group(a.n, a.q, MAX_N)?;
    let params = enumerate_params(a.n, a.q, Side::Theta)?;
    Ok(Outcome::json(
        json!({ "n": a.n, "q": a.q, "count": params.len(), "chars": params }),
    ))
}

fn param_label(f: &PartitionFn) -> String {
    let parts: Vec<String> = f
        .entries()
        .iter()
        .map(|(c, p)| {
            let side = match c.side {
                Side::Phi => "f",
                Side::Theta => "phi",
            };
            let parts: Vec<String> = p.parts().iter().map(u32::to_string).collect();
            format!("{side}[{}.{}]:({})", c.level, c.rep, parts.join(","))
        })
        .collect();
    parts.join(" ")
}

fn table_csv(doc: &TableDocument) -> Vec<Vec<String>> {
    let mut header = vec!["character".to_string()];
    header.extend(doc.columns.iter().map(|c| param_label(&c.orbit[0])));
    let mut rows = vec![header];
    for r in &doc.rows {
        let mut row = vec![r
            .orbit
            .as_ref()
            .map(|o| param_label(&o[0]))
            .unwrap_or_default()];
        row.extend(r.values.iter().map(|v| v.to_string()));
        rows.push(row);
    }
    rows
}

fn table(a: &GaloisArgs) -> Result<Outcome> {
    check_group(a.n, a.q, TABLE_N_LIMIT)?;
    check_d(a.d)?;
    let doc = galois_table(&ParamTable::new(a.n, a.q)?, a.d)?;
    Ok(Outcome {
        csv: Some(table_csv(&doc)),
        doc: to_json(&doc)?,
        passed: true,
    })
}

fn decompose(input: Option<&PathBuf>) -> Result<Outcome> {
    let text = match input {
        Some(p) => std::fs::read_to_string(p)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let doc = parse_table_document(&text)?;
    check_group(doc.n, doc.q, TABLE_N_LIMIT)?;
    let table = ParamTable::new(doc.n, doc.q)?;
    Ok(Outcome::json(to_json(&decompose_document(&table, &doc)?)?))
}

fn product(a: &GradedArgs) -> Result<Outcome> {
    check_graded(a)?;
    let bases: Vec<Vec<GaloisOrbit>> = (0..=a.n_max)
        .map(|n| orbit_basis(n, a.q, a.d))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for i in 1..=a.n_max as usize {
        for j in 1..=(a.n_max as usize).saturating_sub(i) {
            for alpha in &bases[i] {
                for beta in &bases[j] {
                    let constants = product_constants(alpha, beta, a.q, a.d)?;
                    out.push(json!({
                        "alpha": alpha.members,
                        "beta": beta.members,
                        "constants": to_json(&constants)?,
                    }));
                }
            }
        }
    }
    Ok(Outcome::json(
        json!({ "n_max": a.n_max, "q": a.q, "d": a.d, "products": out }),
    ))
}

fn coproduct(a: &GradedArgs) -> Result<Outcome> {
    check_graded(a)?;
    let mut out = Vec::new();
    for n in 1..=a.n_max {
        for gamma in orbit_basis(n, a.q, a.d)? {
            let constants = coproduct_constants(&gamma, a.q, a.d)?;
            out.push(json!({ "gamma": gamma.members, "constants": to_json(&constants)? }));
        }
    }
    Ok(Outcome::json(
        json!({ "n_max": a.n_max, "q": a.q, "d": a.d, "coproducts": out }),
    ))
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn divides_order(n: u32, q: u64, d: u64) -> Result<bool> {
    let order = gl_order(n, q)?;
    Ok((order % d) == 0u32.into())
}

fn oracle_agrees(t: &CharTable, d: u64) -> Result<bool> {
    let o = power_map_orbits(t, d)?;
    let as_sets = |blocks: &[Vec<usize>],
                   label: &dyn Fn(usize) -> PartitionFn|
     -> BTreeSet<BTreeSet<PartitionFn>> {
        blocks
            .iter()
            .map(|b| b.iter().map(|&i| label(i)).collect())
            .collect()
    };
    let class_label = |i: usize| t.classes[i].param.clone().unwrap_or_default();
    let char_label = |i: usize| t.characters[i].param.clone().unwrap_or_default();
    let theory_classes: BTreeSet<BTreeSet<PartitionFn>> = galois_classes(t.n, t.q, d)?
        .into_iter()
        .map(|o| o.members.into_iter().collect())
        .collect();
    let theory_chars: BTreeSet<BTreeSet<PartitionFn>> = galois_irr_indices(t.n, t.q, d)?
        .into_iter()
        .map(|o| o.members.into_iter().collect())
        .collect();
    Ok(as_sets(&o.class_blocks, &class_label) == theory_classes
        && as_sets(&o.char_blocks, &char_label) == theory_chars)
}

fn verify(a: &GradedArgs, checks: &[Check], ctx: &Context) -> Result<Outcome> {
    check_graded(a)?;
    if a.n_max == 0 {
        return Err(Error::InvalidInput("n-max must be positive".into()));
    }
    let mut wanted: BTreeSet<Check> = checks.iter().copied().collect();
    if wanted.is_empty() {
        wanted = [
            Check::Positivity,
            Check::Selfdual,
            Check::Axioms,
            Check::Oracle,
        ]
        .into();
    }
    let mut report = serde_json::Map::new();
    let mut passed = true;

    if wanted.contains(&Check::Positivity) || wanted.contains(&Check::Selfdual) {
        let sd = self_duality_check(a.n_max, a.q, a.d)?;
        if wanted.contains(&Check::Positivity) {
            let ok = sd.positivity_violations.is_empty();
            passed &= ok;
            report.insert(
                "positivity".into(),
                json!({
                    "status": status(ok),
                    "triples_checked": sd.triples_checked,
                    "counterexamples": to_json(&sd.positivity_violations)?,
                }),
            );
        }
        if wanted.contains(&Check::Selfdual) {
            let ok = sd.self_duality_violations.is_empty();
            passed &= ok;
            report.insert(
                "selfdual".into(),
                json!({
                    "status": status(ok),
                    "triples_checked": sd.triples_checked,
                    "coproduct_closed": sd.coproduct_closed,
                    "counterexamples": to_json(&sd.self_duality_violations)?,
                }),
            );
        }
    }

    if wanted.contains(&Check::Axioms) {
        let mut groups = Vec::new();
        let mut ok = true;
        for n in 1..=a.n_max.min(TABLE_N_LIMIT) {
            if !divides_order(n, a.q, a.d)? {
                groups.push(json!({ "n": n, "status": "skipped", "reason": "d does not divide the group order" }));
                continue;
            }
            let table = ParamTable::new(n, a.q)?;
            let r = sct_axioms_check(n, a.q, a.d, &table)?;
            ok &= r.passed();
            groups.push(json!({ "n": n, "status": status(r.passed()), "report": to_json(&r)? }));
        }
        passed &= ok;
        report.insert(
            "axioms".into(),
            json!({ "status": status(ok), "groups": groups }),
        );
    }

    if wanted.contains(&Check::Oracle) {
        let mut groups = Vec::new();
        let mut ok = true;
        for n in 1..=a.n_max {
            let t = match load_or_compute(n, a.q, ctx.seed, ctx.cache_dir.as_deref()) {
                Ok(t) => t,
                Err(Error::Capacity(msg)) => {
                    groups.push(json!({ "n": n, "status": "skipped", "reason": msg }));
                    continue;
                }
                Err(Error::Falsification(msg)) => {
                    ok = false;
                    groups.push(json!({ "n": n, "status": "fail", "counterexample": msg }));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let orbits_ok = if divides_order(n, a.q, a.d)? {
                Some(oracle_agrees(&t, a.d)?)
            } else {
                None
            };
            let group_ok = orbits_ok.unwrap_or(true);
            ok &= group_ok;
            groups.push(json!({
                "n": n,
                "status": status(group_ok),
                "classes": t.classes.len(),
                "characters": t.characters.len(),
                "values_match": true,
                "orbits_match": orbits_ok,
            }));
        }
        passed &= ok;
        report.insert(
            "oracle".into(),
            json!({ "status": status(ok), "groups": groups }),
        );
    }

    let doc = json!({
        "n_max": a.n_max,
        "q": a.q,
        "d": a.d,
        "status": status(passed),
        "checks": Value::Object(report),
    });
    Ok(Outcome {
        doc,
        csv: None,
        passed,
    })
}

fn oracle(a: &GaloisArgs, ctx: &Context) -> Result<Outcome> {
    check_group(a.n, a.q, MAX_N)?;
    check_d(a.d)?;
    let t = load_or_compute(a.n, a.q, ctx.seed, ctx.cache_dir.as_deref())?;
    let orbits = power_map_orbits(&t, a.d)?;
    Ok(Outcome::json(
        json!({ "table": to_json(&t)?, "orbits": to_json(&orbits)? }),
    ))
}
