//! Self-checks grouped into named suites, each producing pass/fail lines.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::decomposition::{primitive_dimension_by_kernel, sp_decomposition};
use crate::error::{Error, Result};
use crate::gw::{gw_direct, gw_via_qhn, legal_representatives, verify_lemma9, GWQuery};
use crate::jacobian::{
    chern_class_closed_form, chern_classes_from_character, fundamental_class,
    grr_extension_chern_character, jacobian_signature, omega, omega_on_product,
    universal_first_chern,
};
use crate::qh::{cor20_assembly, prop19_exclusion_check, prop19_identity_check, CheckLine, InvariantQuantumRing};
use crate::quotient::{expected_dimension, Mode};
use crate::relations::{
    abg_monomial, classical_relations, floer_relations, leading_degrees, parse_invariant,
    quantum_relations,
};
use crate::scalar::Coefficient;
use crate::{Element, QuotientRing, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Prop19,
    Lemma9,
    Relations,
    Grr,
    Gw,
    Quantum,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["prop19", "lemma9", "relations", "grr", "gw", "quantum", "all"];

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Relations,
                Suite::Grr,
                Suite::Lemma9,
                Suite::Gw,
                Suite::Prop19,
                Suite::Quantum,
            ],
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Prop19 => "prop19",
            Suite::Lemma9 => "lemma9",
            Suite::Relations => "relations",
            Suite::Grr => "grr",
            Suite::Gw => "gw",
            Suite::Quantum => "quantum",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "prop19" => Suite::Prop19,
            "lemma9" => Suite::Lemma9,
            "relations" => Suite::Relations,
            "grr" => Suite::Grr,
            "gw" => Suite::Gw,
            "quantum" => Suite::Quantum,
            "all" => Suite::All,
            other => return Err(Error::parse(0, format!("unknown suite `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub genus: u32,
    pub lines: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }
}

fn line(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckLine {
    CheckLine {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn skipped(name: &str, reason: &str) -> CheckLine {
    line(name, true, format!("skipped: {reason}"))
}

pub fn run_suite(suite: Suite, genus: u32) -> Result<Vec<SuiteReport>> {
    suite
        .members()
        .into_iter()
        .map(|s| {
            let lines = match s {
                Suite::Relations => relations_suite(genus)?,
                Suite::Grr => grr_suite(genus)?,
                Suite::Lemma9 => lemma9_suite(genus)?,
                Suite::Gw => gw_suite(genus)?,
                Suite::Prop19 => prop19_suite()?,
                Suite::Quantum => quantum_suite(genus)?,
                Suite::All => unreachable!("expanded by members"),
            };
            Ok(SuiteReport {
                suite: s.to_string(),
                genus,
                lines,
            })
        })
        .collect()
}

/// The quantum triples at genus 1, 2, 3 in their published form.
pub fn golden_quantum_triples() -> [(u32, [&'static str; 3]); 3] {
    [
        (1, ["a", "b + 8", "g"]),
        (2, ["a^2 + b - 8", "(b + 8)*a + g", "a*g"]),
        (
            3,
            [
                "a*(a^2 + b + 8) + 4*(a*b - 8*a + g)",
                "(b + 8)*(a^2 + b + 8) + 4/3*a*g",
                "g*(a^2 + b + 8)",
            ],
        ),
    ]
}

fn relations_suite(genus: u32) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for (g, texts) in golden_quantum_triples() {
        let expected = texts.map(|t| parse_invariant(t).expect("golden text parses"));
        let actual = &quantum_relations(g)?.relations;
        lines.push(line(
            format!("quantum triple at genus {g}"),
            *actual == expected,
            actual.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ; "),
        ));
    }
    let top = genus.max(1);
    for g in 1..=top {
        let q = classical_relations(g)?;
        let r = floer_relations(g)?;
        let degs = leading_degrees(g);
        let tops_ok = (0..3).all(|i| r.relations[i].top_component() == q.relations[i]);
        lines.push(line(format!("genus {g}: top of R equals q"), tops_ok, ""));
        let alpha_g = r.relations[2].coefficient(&abg_monomial(g, 0, 0));
        lines.push(line(
            format!("genus {g}: no a^{g} in R3"),
            alpha_g == Rational::from_i64(0),
            format!("coefficient {alpha_g}"),
        ));
        let mod4 = (0..3).all(|i| r.relations[i].degrees().iter().all(|d| (degs[i] - d) % 4 == 0));
        lines.push(line(format!("genus {g}: degrees congruent mod 4"), mod4, ""));
    }
    let ring = QuotientRing::new(top, classical_relations(top)?.relations.clone(), Mode::Homogeneous)?;
    lines.push(line(
        format!("genus {top}: dim Q[a,b,g]/I = C(g+2,3)"),
        ring.dimension() as u128 == expected_dimension(top),
        format!("{} vs {}", ring.dimension(), expected_dimension(top)),
    ));
    let mut annihilated = true;
    for rel in &classical_relations(top)?.relations {
        for m in ring.basis_elements() {
            annihilated &= ring.normal_form(&(&m * rel))?.is_zero();
        }
    }
    lines.push(line(format!("genus {top}: basis multiples of q reduce to 0"), annihilated, ""));
    for g in 2..=3 {
        let by_formula = sp_decomposition(g)?;
        let by_kernel: u128 = (0..=g)
            .map(|k| Ok(primitive_dimension_by_kernel(g, k)? * expected_dimension(g - k)))
            .sum::<Result<u128>>()?;
        lines.push(line(
            format!("genus {g}: Sp-decomposition total"),
            by_formula.total == by_kernel,
            format!("formula {} kernel {}", by_formula.total, by_kernel),
        ));
    }
    Ok(lines)
}

fn grr_suite(genus: u32) -> Result<Vec<CheckLine>> {
    if genus < 2 {
        return Ok(vec![skipped("Chern character", "needs g >= 2")]);
    }
    let jsig = jacobian_signature(genus);
    let trace = grr_extension_chern_character(genus)?;
    let w = omega(genus);
    let expected = &Element::integer(&jsig, genus as i64) + &w.scale(&Rational::from_i64(4));
    let mut lines = vec![line("ch E = g + 4w", trace.result == expected, trace.result.to_string())];
    let doubled = trace.result.scale(&Rational::from_i64(2));
    let expected2 = &Element::integer(&jsig, 2 * genus as i64) + &w.scale(&Rational::from_i64(8));
    lines.push(line("ch(E + E) = 2g + 8w", doubled == expected2, doubled.to_string()));
    let c1 = universal_first_chern(genus);
    let sq = &c1 * &c1;
    let expected_sq = (&fundamental_class(genus) * &omega_on_product(genus)).scale(&Rational::from_i64(-2));
    lines.push(line("c1(L)^2 = -2 [S] w", sq == expected_sq, sq.to_string()));
    let classes = chern_classes_from_character(&trace.result, genus + 1);
    let closed = (1..=genus + 1).all(|i| classes[i as usize - 1] == chern_class_closed_form(genus, i));
    lines.push(line("c_i = 4^i/i! w^i", closed, ""));
    Ok(lines)
}

fn lemma9_suite(genus: u32) -> Result<Vec<CheckLine>> {
    if genus < 2 {
        return Ok(vec![skipped("h-power reduction", "needs g >= 2")]);
    }
    let report = verify_lemma9(genus)?;
    Ok(vec![line(
        "h-power reduction",
        report.passed(),
        format!("{} checks, {} failures", report.checks, report.failures.len()),
    )])
}

fn gw_suite(genus: u32) -> Result<Vec<CheckLine>> {
    if genus < 3 {
        return Ok(vec![skipped("line invariants", "needs g >= 3")]);
    }
    let mut lines = Vec::new();
    let reps = legal_representatives(genus)?;
    let mut mismatches = Vec::new();
    for q in &reps {
        if gw_direct(q)? != gw_via_qhn(q)? {
            mismatches.push(q.insertion_text());
        }
    }
    lines.push(line(
        "direct and quantum evaluations agree",
        mismatches.is_empty(),
        format!("{} queries; mismatches: [{}]", reps.len(), mismatches.join(", ")),
    ));
    if genus == 3 {
        let v = gw_direct(&GWQuery::new(3, 8, 0, vec![])?)?;
        lines.push(line("Psi(a^8) = 5632", v == Rational::from_i64(5632), v.to_string()));
    }
    Ok(lines)
}

fn prop19_suite() -> Result<Vec<CheckLine>> {
    let mut lines = prop19_identity_check()?.lines;
    let ex = prop19_exclusion_check()?;
    for (branch, steps) in [("y", &ex.y_branch), ("x", &ex.x_branch)] {
        for s in steps {
            lines.push(line(format!("{branch} != 0: {}", s.statement), s.passed, s.value.clone()));
        }
    }
    let c = cor20_assembly(3)?;
    lines.push(line(
        "genus 3 decomposition total",
        c.total == c.expected_total,
        format!("{} vs {}", c.total, c.expected_total),
    ));
    Ok(lines)
}

/// Associativity, commutativity, mod 4 grading and the associated graded
/// comparison, exhaustively over basis elements.
pub fn quantum_ring_checks(genus: u32) -> Result<Vec<CheckLine>> {
    let ring = InvariantQuantumRing::new(genus, false)?;
    let classical = QuotientRing::new(genus, classical_relations(genus)?.relations.clone(), Mode::Homogeneous)?;
    let basis = ring.presentation().basis_elements();
    let mut assoc = true;
    let mut comm = true;
    let mut grading = true;
    let mut graded = true;
    let top = 6 * genus - 6;
    for x in &basis {
        for y in &basis {
            let xy = ring.quantum_product(x, y)?;
            comm &= xy == ring.quantum_product(y, x)?;
            let dx = x.top_degree().unwrap_or(0);
            let dy = y.top_degree().unwrap_or(0);
            grading &= xy.degrees().iter().all(|d| d % 4 == (dx + dy) % 4);
            if dx + dy <= top {
                let cup = classical.normal_form(&(x * y))?;
                graded &= xy.graded_component(dx + dy) == cup;
            }
            for z in &basis {
                assoc &= ring.quantum_product(&xy, z)? == ring.quantum_product(x, &ring.quantum_product(y, z)?)?;
            }
        }
    }
    let n = basis.len();
    Ok(vec![
        line(format!("genus {genus}: associative"), assoc, format!("{} triples", n * n * n)),
        line(format!("genus {genus}: commutative"), comm, format!("{} pairs", n * n)),
        line(format!("genus {genus}: graded mod 4"), grading, ""),
        line(format!("genus {genus}: top parts match cup products"), graded, ""),
    ])
}

fn quantum_suite(genus: u32) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for g in 1..=genus.clamp(1, 3) {
        lines.extend(quantum_ring_checks(g)?);
    }
    Ok(lines)
}
