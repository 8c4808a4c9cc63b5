use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use qcoh_core::decomposition::sp_decomposition;
use qcoh_core::gw::{self, GWQuery};
use qcoh_core::jacobian::{grr_extension_chern_character, VOLUME_CONVENTION};
use qcoh_core::qh::{hat_text, InvariantQuantumRing};
use qcoh_core::quotient::{expected_dimension, poincare_polynomial, Mode};
use qcoh_core::relations::{self, hat_name, parse_invariant, Flavor};
use qcoh_core::verify::{run_suite, Suite};
use qcoh_core::{Element, Error, QuotientRing, Result};

use crate::{Common, Engine, FlavorArg, Output};

/// Largest insertion degree `6g - 2` for table commands by default.
const DEFAULT_TABLE_DEGREE: u32 = 46;

fn flavor_of(f: FlavorArg) -> Flavor {
    match f {
        FlavorArg::Classical => Flavor::Classical,
        FlavorArg::Floer => Flavor::Floer,
        FlavorArg::Quantum => Flavor::QuantumHat,
    }
}

fn render(x: &Element, hatted: bool) -> String {
    if hatted {
        hat_text(x)
    } else {
        x.to_string()
    }
}

fn element_json(x: &Element, hatted: bool) -> Value {
    let terms: Vec<_> = if hatted { x.to_json_with(&hat_name) } else { x.to_json() };
    json!({"text": render(x, hatted), "terms": terms})
}

fn ok(payload: Value, text: String, conjectural: bool) -> Result<Output> {
    Ok(Output { payload, text, conjectural, ok: true })
}

/// The ring a flavor presents: classical relations with the graded
/// structure, Floer and quantum relations filtered.
fn ring_for(genus: u32, flavor: FlavorArg, common: &Common) -> Result<(QuotientRing, bool)> {
    if flavor == FlavorArg::Quantum {
        let q = InvariantQuantumRing::with_degree_bound(genus, common.conjectural, common.max_degree)?;
        let conj = q.is_conjectural();
        return Ok((q.presentation().clone(), conj));
    }
    let triple = relations::relations(genus, flavor_of(flavor))?;
    let mode = if flavor == FlavorArg::Classical { Mode::Homogeneous } else { Mode::Filtered };
    let rels = triple.relations.clone();
    let ring = match common.max_degree {
        Some(b) => QuotientRing::with_degree_bound(genus, rels, mode, b)?,
        None => QuotientRing::new(genus, rels, mode)?,
    };
    Ok((ring, false))
}

pub fn relations(genus: u32, flavor: FlavorArg, common: &Common) -> Result<Output> {
    let triple = relations::relations(genus, flavor_of(flavor))?;
    if triple.conjectural && !common.conjectural {
        return Err(Error::ConjecturalRequired(genus));
    }
    let hatted = flavor == FlavorArg::Quantum;
    let list: Vec<Value> = triple
        .relations
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = element_json(r, hatted);
            v["index"] = json!(i + 1);
            v
        })
        .collect();
    let mut text = String::new();
    if triple.conjectural {
        text.push_str("CONJECTURAL: only the two leading terms are established\n");
    }
    for (i, r) in triple.relations.iter().enumerate() {
        let _ = writeln!(text, "R{}: {}", i + 1, render(r, hatted));
    }
    let payload = json!({
        "flavor": triple.flavor.to_string(),
        "conjectural": triple.conjectural,
        "relations": list,
    });
    ok(payload, text, triple.conjectural)
}

pub fn basis(genus: u32, flavor: FlavorArg, common: &Common) -> Result<Output> {
    let (ring, conjectural) = ring_for(genus, flavor, common)?;
    let hatted = flavor == FlavorArg::Quantum;
    let names: Vec<String> = ring.basis_elements().iter().map(|b| render(b, hatted)).collect();
    let poincare = poincare_polynomial(genus);
    let expected = expected_dimension(genus);
    let mut text = format!("dimension {} (expected {expected})\n", ring.dimension());
    let _ = writeln!(text, "poincare (coefficients of t^0, t^2, ...): {poincare:?}");
    for n in &names {
        let _ = writeln!(text, "{n}");
    }
    let payload = json!({
        "dimension": ring.dimension(),
        "expected_dimension": expected.to_string(),
        "basis": names,
        "poincare": poincare,
    });
    ok(payload, text, conjectural)
}

pub fn nf(genus: u32, expr: &str, flavor: FlavorArg, common: &Common) -> Result<Output> {
    let (ring, conjectural) = ring_for(genus, flavor, common)?;
    let hatted = flavor == FlavorArg::Quantum;
    let x = parse_invariant(expr)?;
    let reduced = ring.normal_form(&x)?;
    let payload = json!({
        "input": render(&x, hatted),
        "normal_form": element_json(&reduced, hatted),
    });
    ok(payload, format!("{}\n", render(&reduced, hatted)), conjectural)
}

pub fn decompose(genus: u32) -> Result<Output> {
    let d = sp_decomposition(genus)?;
    let mut text = String::from("k  primitive  factor_genus  factor_dim  summand\n");
    for s in &d.summands {
        let _ = writeln!(
            text,
            "{}  {}  {}  {}  {}",
            s.k, s.primitive_dim, s.factor_genus, s.factor_dim, s.summand_dim
        );
    }
    let _ = writeln!(text, "total {}", d.total);
    let payload = serde_json::to_value(&d).map_err(|e| Error::Internal(e.to_string()))?;
    ok(payload, text, false)
}

pub fn grr(genus: u32) -> Result<Output> {
    let trace = grr_extension_chern_character(genus)?;
    let mut text = String::new();
    for l in &trace.lines {
        let _ = writeln!(text, "{}: {}", l.label, l.value);
    }
    let doubled = trace.result.scale(&qcoh_core::Rational::from_integer(2.into()));
    let _ = writeln!(text, "ch(E + E): {doubled}");
    let lines: Vec<Value> = trace
        .lines
        .iter()
        .map(|l| json!({"label": l.label, "value": l.value}))
        .collect();
    let payload = json!({
        "trace": lines,
        "chern_character": element_json(&trace.result, false),
        "doubled": element_json(&doubled, false),
    });
    ok(payload, text, false)
}

pub fn gw(genus: u32, a: u32, b: u32, psi: Vec<usize>, engine: Engine) -> Result<Output> {
    let q = GWQuery::new(genus, a, b, psi)?;
    let value = match engine {
        Engine::Direct => gw::gw_direct(&q)?,
        Engine::Qhn => gw::gw_via_qhn(&q)?,
        Engine::Both => {
            let direct = gw::gw_direct(&q)?;
            let qhn = gw::gw_via_qhn(&q)?;
            if direct != qhn {
                return Err(Error::Internal(format!(
                    "engines disagree: direct {direct}, quantum {qhn}"
                )));
            }
            direct
        }
    };
    let donaldson = if genus % 2 == 1 { value.clone() } else { -value.clone() };
    let engine_name = match engine {
        Engine::Both => "both",
        Engine::Direct => "direct",
        Engine::Qhn => "qhn",
    };
    let label = gw::donaldson_label(&q);
    let text = format!(
        "Psi({}) = {value}\n{label} = {donaldson}\nconvention: {VOLUME_CONVENTION}\n",
        q.insertion_text()
    );
    let payload = json!({
        "query": {"a": q.a, "b": q.b, "psi": q.psi},
        "value": value.to_string(),
        "convention": VOLUME_CONVENTION,
        "engine": engine_name,
        "donaldson": donaldson.to_string(),
        "donaldson_label": label,
    });
    ok(payload, text, false)
}

pub fn gw_table(genus: u32, common: &Common) -> Result<Output> {
    let bound = common.max_degree.unwrap_or(DEFAULT_TABLE_DEGREE);
    let degree = 6 * genus.max(1) - 2;
    if degree > bound {
        return Err(Error::DegreeBoundExceeded { degree, bound });
    }
    let reps = gw::legal_representatives(genus)?;
    let rows: Vec<(GWQuery, String, String)> = reps
        .into_par_iter()
        .map(|q| {
            let direct = gw::gw_direct(&q)?;
            let qhn = gw::gw_via_qhn(&q)?;
            if direct != qhn {
                return Err(Error::Internal(format!(
                    "engines disagree on {}: direct {direct}, quantum {qhn}",
                    q.insertion_text()
                )));
            }
            let donaldson = if genus % 2 == 1 { direct.clone() } else { -direct.clone() };
            Ok((q, direct.to_string(), donaldson.to_string()))
        })
        .collect::<Result<_>>()?;
    let mut writer = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Internal(e.to_string());
    writer.write_record(["genus", "a", "b", "psi", "value", "donaldson"]).map_err(io)?;
    let mut json_rows = Vec::new();
    for (q, value, donaldson) in &rows {
        let psi = q.psi.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        writer
            .write_record([&genus.to_string(), &q.a.to_string(), &q.b.to_string(), &psi, value, donaldson])
            .map_err(io)?;
        json_rows.push(json!({"a": q.a, "b": q.b, "psi": q.psi, "value": value, "donaldson": donaldson}));
    }
    let bytes = writer.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    let text = String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))?;
    let payload = json!({"convention": VOLUME_CONVENTION, "rows": json_rows});
    ok(payload, text, false)
}

pub fn qmul(genus: u32, expr: &str, common: &Common) -> Result<Output> {
    let ring = InvariantQuantumRing::with_degree_bound(genus, common.conjectural, common.max_degree)?;
    let x = parse_invariant(expr)?;
    let product = ring.normal_form(&x)?;
    let conjectural = ring.is_conjectural();
    let mut text = String::new();
    if conjectural {
        text.push_str("CONJECTURAL: genus >= 4 quantum relations\n");
    }
    let _ = writeln!(text, "{}", hat_text(&product));
    let payload = json!({
        "input": hat_text(&x),
        "product": element_json(&product, true),
    });
    ok(payload, text, conjectural)
}

pub fn verify(suite: &str, genus: u32) -> Result<Output> {
    let suite: Suite = suite.parse()?;
    let reports = run_suite(suite, genus)?;
    let mut text = String::new();
    let mut all = true;
    for r in &reports {
        for l in &r.lines {
            all &= l.passed;
            let mark = if l.passed { "PASS" } else { "FAIL" };
            let _ = write!(text, "{mark} {}: {}", r.suite, l.name);
            if !l.detail.is_empty() {
                let _ = write!(text, " ({})", l.detail);
            }
            text.push('\n');
        }
    }
    let _ = writeln!(text, "{}", if all { "all checks passed" } else { "some checks failed" });
    let payload = json!({
        "passed": all,
        "suites": reports,
    });
    Ok(Output { payload, text, conjectural: false, ok: all })
}
