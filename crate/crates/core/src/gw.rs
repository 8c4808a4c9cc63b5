//! Line Gromov–Witten invariants `Ψ_A(α^a, β^b, ψ_{i_1}, ..., ψ_{i_r})`.
//!
//! Two independent evaluations are provided. [`gw_direct`] integrates
//! `(4ω + X)^a (X²)^b φ_{i_1}...φ_{i_r} X^r` over `J` after the
//! substitution `X^{2g-1+i} ↦ (-8)^i/i! ω^i`. [`gw_via_qhn`] multiplies
//! the restricted classes in the quantum ring of the projective bundle `N`,
//! where `h^g + c_1 h^{g-1} + ... + c_g = 1`, and reads off the coefficient
//! of `h^{g-1} · vol(J)`.

use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{iter_bits, Monomial, Signature, Truncation};
use crate::error::{Error, Result};
use crate::jacobian::{self, cached, integrate_j, jacobian_signature, omega_in, phi_names};
use crate::scalar::{factorial, int_pow, Coefficient};
use crate::{Element, Rational};

/// A line invariant query. Indices in `psi` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GWQuery {
    pub genus: u32,
    pub a: u32,
    pub b: u32,
    pub psi: Vec<usize>,
}

impl GWQuery {
    /// Validated query: `g >= 3`, indices in `1..=2g`, and
    /// `2a + 4b + 3r = 6g - 2`.
    pub fn new(genus: u32, a: u32, b: u32, psi: Vec<usize>) -> Result<Self> {
        let q = GWQuery { genus, a, b, psi };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        check_genus(self.genus)?;
        self.check_indices()?;
        let actual = self.degree() as i64;
        let expected = 6 * self.genus as i64 - 2;
        if actual != expected {
            return Err(Error::DegreeImbalance { actual, expected });
        }
        Ok(())
    }

    fn check_indices(&self) -> Result<()> {
        let max = 2 * self.genus as usize;
        match self.psi.iter().find(|&&i| i == 0 || i > max) {
            Some(&index) => Err(Error::IndexOutOfRange { index, max }),
            None => Ok(()),
        }
    }

    /// `2a + 4b + 3r`.
    pub fn degree(&self) -> u64 {
        2 * self.a as u64 + 4 * self.b as u64 + 3 * self.psi.len() as u64
    }

    pub fn insertion_text(&self) -> String {
        let mut parts = Vec::new();
        if self.a > 0 {
            parts.push(format!("a^{}", self.a));
        }
        if self.b > 0 {
            parts.push(format!("b^{}", self.b));
        }
        parts.extend(self.psi.iter().map(|i| format!("psi{i}")));
        parts.join(" ")
    }
}

fn check_genus(g: u32) -> Result<()> {
    match g {
        2 => Err(Error::GenusTwoExcluded),
        0 | 1 => Err(Error::InvalidGenus {
            genus: g as i64,
            requirement: "line invariants need g >= 3".into(),
        }),
        _ => Ok(()),
    }
}

/// `Q[X] ⊗ Λ(φ_1..φ_2g)` with `X` of degree 2.
pub fn x_signature(g: u32) -> Arc<Signature> {
    cached(2, g, || {
        Signature::new(vec![("X".into(), 2)], phi_names(g), Truncation::ExteriorTop(2 * g))
            .expect("X signature")
    })
}

/// `H*(N)` generators: `h` of degree 2 over `Λ(φ_1..φ_2g)`.
pub fn n_signature(g: u32) -> Arc<Signature> {
    cached(3, g, || {
        Signature::new(vec![("h".into(), 2)], phi_names(g), Truncation::ExteriorTop(2 * g))
            .expect("N signature")
    })
}

/// Moves an element with no even part into `Λ(φ_1..φ_2g)`.
fn to_jacobian(x: &Element, g: u32) -> Result<Element> {
    let target = jacobian_signature(g);
    let mut terms = Vec::with_capacity(x.len());
    for (m, c) in x.terms() {
        if m.even().iter().any(|&e| e != 0) {
            return Err(Error::Internal(format!(
                "term {m:?} still carries an even generator"
            )));
        }
        terms.push((Monomial::from_parts(&target, &[], m.odd()), c.clone()));
    }
    Ok(Element::from_terms(&target, terms))
}

/// `h^k`-coefficient of an element of [`n_signature`], as a class on `J`.
pub fn h_coefficient(x: &Element, k: u32, g: u32) -> Element {
    let target = jacobian_signature(g);
    Element::from_terms(
        &target,
        x.terms()
            .filter(|(m, _)| m.exponent(0) == k)
            .map(|(m, c)| (Monomial::from_parts(&target, &[], m.odd()), c.clone())),
    )
}

fn top_of(reduced: &Element, g: u32) -> Element {
    h_coefficient(reduced, g - 1, g).graded_component(2 * g)
}

/// `φ_{i_1} ... φ_{i_r}` (1-based indices) in `sig`.
fn phi_word(sig: &Arc<Signature>, psi: &[usize]) -> Element {
    let word: Vec<usize> = psi.iter().map(|i| i - 1).collect();
    Element::odd_word(sig, &word)
}

/// Evaluation by the `X`-substitution rule, without the degree check.
/// Returns zero when the insertion degree misses `6g - 2`, since the class
/// then has no top-degree part.
pub fn lemma10_pairing(g: u32, a: u32, b: u32, psi: &[usize]) -> Result<Rational> {
    check_genus(g)?;
    let q = GWQuery { genus: g, a, b, psi: psi.to_vec() };
    q.check_indices()?;
    if q.degree() != 6 * g as u64 - 2 {
        return Ok(Rational::zero());
    }
    evaluate_direct(&q)
}

/// Line invariant by direct expansion over `J`.
pub fn gw_direct(q: &GWQuery) -> Result<Rational> {
    q.validate()?;
    evaluate_direct(q)
}

fn evaluate_direct(q: &GWQuery) -> Result<Rational> {
    let g = q.genus;
    let sig = x_signature(g);
    let x = Element::even_generator(&sig, 0);
    let omega = omega_in(&sig, g, 0);
    let r = q.psi.len() as u32;
    let alpha = &omega.scale(&Rational::from_i64(4)) + &x;
    let product = &(&alpha.pow(q.a) * &x.pow(2 * q.b + r)) * &phi_word(&sig, &q.psi);
    let threshold = 2 * g - 1;
    if let Some((m, c)) = product.terms().find(|(m, _)| m.exponent(0) < threshold) {
        return Err(Error::Internal(format!(
            "term with X^{} below the substitution threshold survived with coefficient {c}",
            m.exponent(0)
        )));
    }
    let substituted = product.substitute_even_index(0, |k| {
        let i = k - threshold;
        let coeff = int_pow::<Rational>(-8, i) / factorial::<Rational>(i);
        Ok(omega.pow(i).scale(&coeff))
    })?;
    integrate_j(&to_jacobian(&substituted, g)?, g)
}

/// Images of the generators of `H*(M_Σ)` restricted to `N`:
/// `α ↦ 4ω + h`, `β ↦ h²`, `ψ_i ↦ -h φ_i`.
#[derive(Debug, Clone)]
pub struct RestrictedClassTable {
    genus: u32,
    sig: Arc<Signature>,
}

impl RestrictedClassTable {
    pub fn new(genus: u32) -> Self {
        RestrictedClassTable { genus, sig: n_signature(genus) }
    }

    pub fn h(&self) -> Element {
        Element::even_generator(&self.sig, 0)
    }

    pub fn omega(&self) -> Element {
        omega_in(&self.sig, self.genus, 0)
    }

    pub fn alpha(&self) -> Element {
        &self.omega().scale(&Rational::from_i64(4)) + &self.h()
    }

    pub fn beta(&self) -> Element {
        self.h().pow(2)
    }

    /// `ψ_i ↦ -h φ_i`, 1-based.
    pub fn psi(&self, i: usize) -> Element {
        -(&self.h() * &Element::odd_generator(&self.sig, i - 1))
    }
}

/// Cohomology of `N` reduced by `h^g + c_1 h^{g-1} + ... + c_g = ε`, with
/// `c_i = 4^i/i! ω^i`. `ε = 1` gives the quantum ring, `ε = 0` the
/// classical one. Reduced classes have `h`-degree below `g`.
#[derive(Debug)]
pub struct NQuantumRing {
    genus: u32,
    quantum: bool,
    sig: Arc<Signature>,
    /// Reduced `h^k`, filled on demand.
    powers: Mutex<Vec<Element>>,
}

impl NQuantumRing {
    pub fn quantum(genus: u32) -> Self {
        Self::build(genus, true)
    }

    pub fn classical(genus: u32) -> Self {
        Self::build(genus, false)
    }

    fn build(genus: u32, quantum: bool) -> Self {
        let sig = n_signature(genus);
        NQuantumRing {
            genus,
            quantum,
            powers: Mutex::new(vec![Element::one(&sig)]),
            sig,
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn is_quantum(&self) -> bool {
        self.quantum
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    /// `ε - Σ_{j=1}^g c_j h^{g-j}`, the reduction of `h^g`.
    fn h_g_image(&self) -> Element {
        let g = self.genus;
        let omega = omega_in(&self.sig, g, 0);
        let h = Element::even_generator(&self.sig, 0);
        let mut out = if self.quantum { Element::one(&self.sig) } else { Element::zero(&self.sig) };
        for j in 1..=g {
            let c = omega
                .pow(j)
                .scale(&(int_pow::<Rational>(4, j) / factorial::<Rational>(j)));
            out = &out - &(&c * &h.pow(g - j));
        }
        out
    }

    /// Reduced form of `h^k`.
    pub fn h_power(&self, k: u32) -> Element {
        let mut powers = self.powers.lock().expect("power table poisoned");
        let g = self.genus;
        while powers.len() <= k as usize {
            let prev = powers.last().expect("nonempty");
            // h · (reduced h^{k-1}); only h^{g-1} terms overflow
            let mut next = Element::zero(&self.sig);
            let mut overflow = Element::zero(&self.sig);
            for (m, c) in prev.terms() {
                let e = m.exponent(0) + 1;
                if e == g {
                    overflow.add_term(m.with_exponent(&self.sig, 0, 0), c.clone());
                } else {
                    next.add_term(m.with_exponent(&self.sig, 0, e), c.clone());
                }
            }
            if !overflow.is_zero() {
                next = &next + &(&overflow * &self.h_g_image());
            }
            powers.push(next);
        }
        powers[k as usize].clone()
    }

    pub fn reduce(&self, x: &Element) -> Result<Element> {
        if **x.signature() != *self.sig {
            return Err(Error::SignatureMismatch);
        }
        let max = x.terms().map(|(m, _)| m.exponent(0)).max().unwrap_or(0);
        if max < self.genus {
            return Ok(x.clone());
        }
        self.h_power(max);
        x.substitute_even_index(0, |k| Ok(self.h_power(k)))
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.reduce(&x.multiply(y)?)
    }

    /// The component in `H^{4g-2}(N)`, as the class on `J` multiplying
    /// `h^{g-1}`.
    pub fn top_component(&self, x: &Element) -> Result<Element> {
        Ok(top_of(&self.reduce(x)?, self.genus))
    }
}

/// Line invariant through the quantum ring of `N`.
pub fn gw_via_qhn(q: &GWQuery) -> Result<Rational> {
    q.validate()?;
    let g = q.genus;
    let table = RestrictedClassTable::new(g);
    let ring = NQuantumRing::quantum(g);
    let mut acc = Element::one(ring.signature());
    let alpha = table.alpha();
    let beta = table.beta();
    for _ in 0..q.a {
        acc = ring.multiply(&acc, &alpha)?;
    }
    for _ in 0..q.b {
        acc = ring.multiply(&acc, &beta)?;
    }
    for &i in &q.psi {
        acc = ring.multiply(&acc, &table.psi(i))?;
    }
    integrate_j(&ring.top_component(&acc)?, g)
}

/// Donaldson-side value `(-1)^{g-1} Ψ`.
pub fn donaldson_line_value(q: &GWQuery) -> Result<Rational> {
    let psi = gw_direct(q)?;
    Ok(if q.genus % 2 == 1 { psi } else { -psi })
}

/// Label of the Donaldson invariant matching `q`.
pub fn donaldson_label(q: &GWQuery) -> String {
    let mut parts = Vec::new();
    if q.a > 0 {
        parts.push(format!("(2Sigma)^{}", q.a));
    }
    if q.b > 0 {
        parts.push(format!("(-4pt)^{}", q.b));
    }
    parts.extend(q.psi.iter().map(|i| format!("gamma{i}#")));
    format!("D_(S,H)^(c1)({})", parts.join(" "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Lemma9Kind {
    /// `h^{2g-1+i} s` in the quantum ring.
    Quantum,
    /// `h^{g-1+i} s` in the classical ring.
    Segre,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma9Failure {
    pub kind: Lemma9Kind,
    pub i: u32,
    pub s: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma9Report {
    pub genus: u32,
    pub checks: usize,
    pub failures: Vec<Lemma9Failure>,
}

impl Lemma9Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks, for `0 <= i <= g` and every monomial `s` of degree `2g - 2i`
/// on `J`, that the top component of `h^{2g-1+i} s` in the quantum ring is
/// `(-8)^i/i! ω^i s` and that of `h^{g-1+i} s` in the classical ring is
/// `(-4)^i/i! ω^i s`.
pub fn verify_lemma9(g: u32) -> Result<Lemma9Report> {
    if g < 2 {
        return Err(Error::InvalidGenus {
            genus: g as i64,
            requirement: "must be at least 2".into(),
        });
    }
    let quantum = NQuantumRing::quantum(g);
    let classical = NQuantumRing::classical(g);
    let nsig = n_signature(g);
    let jsig = jacobian_signature(g);
    let omega = jacobian::omega(g);
    let mut report = Lemma9Report { genus: g, checks: 0, failures: Vec::new() };
    for i in 0..=g {
        let q_power = quantum.h_power(2 * g - 1 + i);
        let c_power = classical.h_power(g - 1 + i);
        let q_coeff = int_pow::<Rational>(-8, i) / factorial::<Rational>(i);
        let c_coeff = int_pow::<Rational>(-4, i) / factorial::<Rational>(i);
        let omega_i = omega.pow(i);
        let degree = 2 * (g - i);
        for mask in (0u64..1 << (2 * g)).filter(|m| m.count_ones() == degree) {
            let s_n = Element::from_term(&nsig, Monomial::from_parts(&nsig, &[0], mask), Rational::one());
            let s_j = Element::from_term(&jsig, Monomial::from_parts(&jsig, &[], mask), Rational::one());
            let target = &omega_i * &s_j;
            let cases = [
                (Lemma9Kind::Quantum, &q_power, &q_coeff),
                (Lemma9Kind::Segre, &c_power, &c_coeff),
            ];
            for (kind, power, coeff) in cases {
                report.checks += 1;
                let actual = top_of(&(power * &s_n), g);
                let expected = target.scale(coeff);
                if actual != expected {
                    report.failures.push(Lemma9Failure {
                        kind,
                        i,
                        s: s_j.to_string(),
                        expected: expected.to_string(),
                        actual: actual.to_string(),
                    });
                }
            }
        }
    }
    Ok(report)
}

/// A query representative up to `Sp(2g)` symmetry: `pairs` full pairs
/// `ψ_i ψ_{i+g}` followed by `singles` unpaired indices.
pub fn representative(g: u32, a: u32, b: u32, pairs: u32, singles: u32) -> GWQuery {
    let g = g as usize;
    let mut psi = Vec::new();
    for i in 1..=pairs as usize {
        psi.push(i);
        psi.push(i + g);
    }
    psi.extend((pairs as usize + 1..).take(singles as usize));
    GWQuery { genus: g as u32, a, b, psi }
}

/// All legal queries up to symmetry, ordered by `(r, b, pairs)`.
pub fn legal_representatives(g: u32) -> Result<Vec<GWQuery>> {
    check_genus(g)?;
    let total = 6 * g - 2;
    let mut out = Vec::new();
    for r in (0..=2 * g).step_by(2) {
        for pairs in 0..=r / 2 {
            let singles = r - 2 * pairs;
            if pairs + singles > g {
                continue;
            }
            let Some(rest) = total.checked_sub(3 * r) else {
                continue;
            };
            for b in 0..=rest / 4 {
                let a = (rest - 4 * b) / 2;
                out.push(representative(g, a, b, pairs, singles));
            }
        }
    }
    Ok(out)
}

/// Whether the odd mask pairs every `φ_i` with `φ_{i+g}`.
pub fn is_fully_paired(mask: u64, g: u32) -> bool {
    iter_bits(mask).all(|i| {
        let partner = if i < g as usize { i + g as usize } else { i - g as usize };
        mask >> partner & 1 == 1
    })
}
