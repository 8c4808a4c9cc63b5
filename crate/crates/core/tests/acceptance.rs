//! Acceptance criteria, one line of output per criterion.
//!
//! Expected values come from oracles written here independently of the
//! library: a dense polynomial recursion for the relation triples and a
//! brute-force exterior algebra for the line invariants.

use std::collections::{BTreeMap, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcoh_core::algebra::{Monomial, Signature, Truncation};
use qcoh_core::decomposition::{primitive_dimension, primitive_dimension_by_kernel, sp_decomposition};
use qcoh_core::gw::{self, GWQuery};
use qcoh_core::jacobian::{self, grr_extension_chern_character, jacobian_signature};
use qcoh_core::qh::{self, InvariantQuantumRing};
use qcoh_core::quotient::{expected_dimension, Mode};
use qcoh_core::relations::{self, classical_relations, floer_relations, hat_transform, leading_degrees, quantum_relations};
use qcoh_core::verify::quantum_ring_checks;
use qcoh_core::{Element, QuotientRing};

type Q = BigRational;

const CASES: usize = 1000;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

// ---------------------------------------------------------------------------
// Dense oracle for Q[α, β, γ]

#[derive(Clone, Debug, PartialEq)]
struct Poly(BTreeMap<[u32; 3], Q>);

impl Poly {
    fn constant(c: Q) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert([0, 0, 0], c);
        }
        Poly(m)
    }

    fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Poly([(e, q(1))].into_iter().collect())
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut m = self.0.clone();
        for (e, c) in &o.0 {
            let v = m.entry(*e).or_insert_with(Q::zero);
            *v += c;
        }
        m.retain(|_, c| !c.is_zero());
        Poly(m)
    }

    fn scale(&self, s: &Q) -> Poly {
        Poly(self.0.iter().map(|(e, c)| (*e, c * s)).filter(|(_, c)| !c.is_zero()).collect())
    }

    fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&q(-1)))
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly(BTreeMap::new());
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out = out.add(&Poly([(e, c1 * c2)].into_iter().collect()));
            }
        }
        out
    }

    fn to_element(&self) -> Element {
        let sig = relations::invariant_signature();
        Element::from_terms(
            sig,
            self.0.iter().map(|(e, c)| (Monomial::from_parts(sig, e, 0), c.clone())),
        )
    }
}

fn a() -> Poly {
    Poly::var(0)
}
fn b() -> Poly {
    Poly::var(1)
}
fn c() -> Poly {
    Poly::var(2)
}
fn k(n: i64) -> Poly {
    Poly::constant(q(n))
}

/// Triples from genus `start` up to `g` by the shared recursion, with the
/// `β` shift given per step.
fn oracle_recursion(start: [Poly; 3], from: u32, g: u32, shift: impl Fn(u32) -> i64) -> [Poly; 3] {
    let mut cur = start;
    for s in from..g {
        let [r1, r2, r3] = cur;
        let n1 = a().mul(&r1).add(&r2.scale(&q((s * s) as i64)));
        let n2 = b().add(&k(shift(s))).mul(&r1).add(&r3.scale(&frac(2 * s as i64, s as i64 + 1)));
        let n3 = c().mul(&r1);
        cur = [n1, n2, n3];
    }
    cur
}

fn oracle_classical(g: u32) -> [Poly; 3] {
    oracle_recursion([a(), b(), c()], 1, g, |_| 0)
}

fn oracle_floer(g: u32) -> [Poly; 3] {
    let sign = |s: u32| if (s + 1) % 2 == 0 { 8 } else { -8 };
    oracle_recursion([k(1), k(0), k(0)], 0, g, sign)
}

fn criterion_1() {
    // genus 1: (α̂, β̂ + 8, γ̂)
    let g1 = [a(), b().add(&k(8)), c()];
    // genus 2: (α̂² + β̂ − 8, (β̂ + 8)α̂ + γ̂, α̂γ̂)
    let g2 = [
        a().mul(&a()).add(&b()).sub(&k(8)),
        b().add(&k(8)).mul(&a()).add(&c()),
        a().mul(&c()),
    ];
    // genus 3
    let s = a().mul(&a()).add(&b()).add(&k(8));
    let g3 = [
        a().mul(&s).add(&a().mul(&b()).sub(&a().scale(&q(8))).add(&c()).scale(&q(4))),
        b().add(&k(8)).mul(&s).add(&a().mul(&c()).scale(&frac(4, 3))),
        c().mul(&s),
    ];
    for (g, golden) in [(1, g1), (2, g2), (3, g3)] {
        let quantum = quantum_relations(g).unwrap();
        let floer = floer_relations(g).unwrap();
        let classical = classical_relations(g).unwrap();
        let degs = leading_degrees(g);
        for i in 0..3 {
            let expected = golden[i].to_element();
            assert_eq!(quantum.relations[i], expected, "quantum g={g} i={}", i + 1);
            assert_eq!(hat_transform(g, &floer.relations[i], degs[i]), expected);
            assert_eq!(floer.relations[i], oracle_floer(g)[i].to_element());
            assert_eq!(classical.relations[i], oracle_classical(g)[i].to_element());
        }
    }
}

fn criterion_2() {
    let start = Instant::now();
    for g in 1..=8 {
        let classical = classical_relations(g).unwrap();
        let floer = floer_relations(g).unwrap();
        let degs = leading_degrees(g);
        for i in 0..3 {
            let r = &floer.relations[i];
            assert_eq!(r.top_component(), classical.relations[i], "g={g} i={}", i + 1);
            assert_eq!(r.top_degree(), Some(degs[i]));
            assert!(r.degrees().iter().all(|d| (degs[i] - d) % 4 == 0));
        }
        let alpha_g = floer.relations[2].coefficient(&relations::abg_monomial(g, 0, 0));
        assert!(alpha_g.is_zero(), "g={g}");
    }
    assert!(start.elapsed() < Duration::from_secs(1), "took {:?}", start.elapsed());
    // the oracle itself agrees up to genus 8
    for g in 1..=8 {
        let f = oracle_floer(g);
        for i in 0..3 {
            assert_eq!(floer_relations(g).unwrap().relations[i], f[i].to_element());
        }
    }
}

fn criterion_3() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in 1..=8 {
        let rels = classical_relations(g).unwrap();
        let ring = QuotientRing::new(g, rels.relations.clone(), Mode::Homogeneous).unwrap();
        assert_eq!(ring.dimension() as u128, expected_dimension(g));
        let sig = relations::invariant_signature();
        let mut multipliers: Vec<Element> = ring.basis_elements();
        for _ in 0..20 {
            let e = [rng.gen_range(0..4), rng.gen_range(0..3), rng.gen_range(0..2)];
            multipliers.push(Element::from_term(sig, Monomial::from_parts(sig, &e, 0), q(1)));
        }
        for r in &rels.relations {
            let room = ring.degree_bound() - r.top_degree().unwrap();
            for m in multipliers.iter().filter(|m| m.top_degree().unwrap_or(0) <= room) {
                assert!(ring.normal_form(&(m * r)).unwrap().is_zero(), "g={g}");
            }
        }
    }
    assert_eq!(sp_decomposition(2).unwrap().total, 8);
    assert_eq!(sp_decomposition(3).unwrap().total, 48);
    for g in 1..=4 {
        for kk in 0..=g {
            assert_eq!(primitive_dimension_by_kernel(g, kk).unwrap(), primitive_dimension(g, kk));
        }
    }
}

fn criterion_4() {
    for g in 2..=8 {
        let jsig = jacobian_signature(g);
        let w = jacobian::omega(g);
        let ch = grr_extension_chern_character(g).unwrap().result;
        assert_eq!(ch, &Element::integer(&jsig, g as i64) + &w.scale(&q(4)));
        assert_eq!(ch.scale(&q(2)), &Element::integer(&jsig, 2 * g as i64) + &w.scale(&q(8)));
        let c1 = jacobian::universal_first_chern(g);
        let expected = (&jacobian::fundamental_class(g) * &jacobian::omega_on_product(g)).scale(&q(-2));
        assert_eq!(&c1 * &c1, expected);
    }
}

fn criterion_5() {
    for g in 3..=6 {
        let start = Instant::now();
        let report = gw::verify_lemma9(g).unwrap();
        assert!(report.passed(), "g={g}: {:?}", report.failures.first());
        let expected: usize = (0..=g).map(|i| binomial(2 * g, 2 * (g - i))).sum::<usize>() * 2;
        assert_eq!(report.checks, expected);
        assert!(start.elapsed() < Duration::from_secs(60));
    }
}

fn binomial(n: u32, kk: u32) -> usize {
    (0..kk).fold(1usize, |acc, j| acc * (n - j) as usize / (j + 1) as usize)
}

// ---------------------------------------------------------------------------
// Brute-force exterior algebra over Q[X]: keys are (X exponent, word), the
// word a strictly increasing list of φ indices.

type Ext = HashMap<(u32, Vec<usize>), Q>;

/// Sign of sorting `word` and whether it has a repeat.
fn sort_sign(word: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut inversions = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] == word[j] {
                return None;
            }
            if word[i] > word[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = word.to_vec();
    sorted.sort();
    Some((sorted, inversions % 2 == 1))
}

fn ext_mul(x: &Ext, y: &Ext) -> Ext {
    let mut out = Ext::new();
    for ((e1, w1), c1) in x {
        for ((e2, w2), c2) in y {
            let word: Vec<usize> = w1.iter().chain(w2).copied().collect();
            let Some((sorted, negative)) = sort_sign(&word) else { continue };
            let mut v = c1 * c2;
            if negative {
                v = -v;
            }
            *out.entry((e1 + e2, sorted)).or_insert_with(Q::zero) += v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn ext_add(x: &Ext, y: &Ext) -> Ext {
    let mut out = x.clone();
    for (k2, v) in y {
        *out.entry(k2.clone()).or_insert_with(Q::zero) += v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn ext_scale(x: &Ext, s: &Q) -> Ext {
    x.iter().map(|(k2, v)| (k2.clone(), v * s)).collect()
}

fn ext_one() -> Ext {
    [((0, vec![]), q(1))].into_iter().collect()
}

fn ext_pow(x: &Ext, n: u32) -> Ext {
    (0..n).fold(ext_one(), |acc, _| ext_mul(&acc, x))
}

fn ext_omega(g: usize) -> Ext {
    (1..=g).map(|i| ((0, vec![i, i + g]), q(1))).collect()
}

fn factorial(n: u32) -> Q {
    (1..=n as i64).fold(q(1), |acc, i| acc * q(i))
}

/// `∫_J (4ω + X)^a X^{2b+r} φ_I` with `X^{2g-1+i} ↦ (-8)^i/i! ω^i`.
fn oracle_gw(g: u32, a: u32, b: u32, psi: &[usize]) -> Q {
    let gu = g as usize;
    let omega = ext_omega(gu);
    let x: Ext = [((1, vec![]), q(1))].into_iter().collect();
    let alpha = ext_add(&ext_scale(&omega, &q(4)), &x);
    let word: Ext = match sort_sign(psi) {
        Some((sorted, neg)) => [((0, sorted), if neg { q(-1) } else { q(1) })].into_iter().collect(),
        None => return q(0),
    };
    let prod = ext_mul(&ext_mul(&ext_pow(&alpha, a), &ext_pow(&x, 2 * b + psi.len() as u32)), &word);
    let mut total = Ext::new();
    for ((e, w), v) in prod {
        if w.len() > 2 * gu {
            continue;
        }
        assert!(e >= 2 * g - 1, "unsubstitutable term X^{e} with word {w:?}");
        let i = e - (2 * g - 1);
        let coeff = q(-8).pow(i as i32) / factorial(i);
        let rest: Ext = [((0, w), v * coeff)].into_iter().collect();
        total = ext_add(&total, &ext_mul(&ext_pow(&omega, i), &rest));
    }
    let vol: Vec<usize> = (1..=gu).flat_map(|i| [i, i + gu]).collect();
    let (sorted, neg) = sort_sign(&vol).unwrap();
    let coeff = total.get(&(0, sorted)).cloned().unwrap_or_else(Q::zero);
    if neg {
        -coeff
    } else {
        coeff
    }
}

fn criterion_6() {
    assert_eq!(oracle_gw(3, 8, 0, &[]), q(5632));
    let v = gw::gw_direct(&GWQuery::new(3, 8, 0, vec![]).unwrap()).unwrap();
    assert_eq!(v, oracle_gw(3, 8, 0, &[]));
    for g in [3, 4] {
        for query in gw::legal_representatives(g).unwrap() {
            let direct = gw::gw_direct(&query).unwrap();
            assert_eq!(direct, gw::gw_via_qhn(&query).unwrap(), "{query:?}");
            assert_eq!(direct, oracle_gw(g, query.a, query.b, &query.psi), "{query:?}");
        }
    }
    // arbitrary index lists, not just representatives
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..60 {
        let g: u32 = rng.gen_range(3..=4);
        let r = 2 * rng.gen_range(0..g);
        let psi: Vec<usize> = (0..r).map(|_| rng.gen_range(1..=2 * g as usize)).collect();
        let rest = 6 * g - 2 - 3 * r;
        let bb = rng.gen_range(0..=rest / 4);
        let aa = (rest - 4 * bb) / 2;
        let query = GWQuery::new(g, aa, bb, psi.clone()).unwrap();
        let direct = gw::gw_direct(&query).unwrap();
        assert_eq!(direct, gw::gw_via_qhn(&query).unwrap(), "{query:?}");
        assert_eq!(direct, oracle_gw(g, aa, bb, &psi), "{query:?}");
    }
}

fn criterion_7() {
    let identity = qh::prop19_identity_check().unwrap();
    assert!(identity.passed(), "{identity:#?}");
    let r = quantum_relations(3).unwrap();
    let gamma = relations::gamma();
    let g3 = gamma.pow(3);
    assert!((&g3 - &qh::gamma_cube_combination(&r.relations)).is_zero());
    let ring = InvariantQuantumRing::new(3, false).unwrap();
    assert!(ring.normal_form(&g3).unwrap().is_zero());
    assert!(ring.normal_form(&gamma.pow(4)).unwrap().is_zero());
    let b8 = &relations::beta() - &relations::int(8);
    assert!(!ring.normal_form(&(&gamma * &b8)).unwrap().is_zero());
    let exclusion = qh::prop19_exclusion_check().unwrap();
    assert!(exclusion.passed(), "{exclusion:#?}");
    // γ̂²(β̂ − 8) = 0 is the consequence of a nonzero shift x
    let step = exclusion
        .x_branch
        .iter()
        .find(|s| s.statement.contains("gh^4 = 0"))
        .expect("x-branch step");
    assert!(step.passed);
}

fn criterion_8() {
    for g in 1..=3 {
        for line in quantum_ring_checks(g).unwrap() {
            assert!(line.passed, "{line:?}");
        }
    }
}

// ---------------------------------------------------------------------------
// Randomized kernel properties

fn mixed_signature() -> Arc<Signature> {
    Signature::new(
        vec![("x".into(), 2), ("y".into(), 4)],
        (1..=6).map(|i| (format!("e{i}"), if i % 3 == 0 { 3 } else { 1 })).collect(),
        Truncation::None,
    )
    .unwrap()
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Q {
    let n: i64 = rng.gen_range(-20..=20);
    let d: i64 = rng.gen_range(1..=6);
    frac(if n == 0 { 1 } else { n }, d)
}

fn random_element(rng: &mut ChaCha8Rng, sig: &Arc<Signature>, max_exp: u32, terms: usize) -> Element {
    let mut out = Element::zero(sig);
    for _ in 0..rng.gen_range(0..=terms) {
        let even: Vec<u32> = sig.even().iter().map(|_| rng.gen_range(0..=max_exp)).collect();
        let mask: u64 = rng.gen_range(0..1u64 << sig.odd().len());
        out = &out + &Element::from_term(sig, Monomial::from_parts(sig, &even, mask), random_coeff(rng));
    }
    out
}

fn random_homogeneous(rng: &mut ChaCha8Rng, sig: &Arc<Signature>) -> Element {
    let x = random_element(rng, sig, 2, 4);
    match x.degrees().first() {
        Some(&d) => x.graded_component(d),
        None => x,
    }
}

fn criterion_9() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let sig = mixed_signature();
    let n = sig.odd().len();
    // Koszul sign law against permutation parity
    for _ in 0..CASES {
        let len = rng.gen_range(0..=5);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let product = word.iter().fold(Element::one(&sig), |acc, &i| &acc * &Element::odd_generator(&sig, i));
        match sort_sign(&word) {
            None => assert!(product.is_zero()),
            Some((sorted, neg)) => {
                let mask = sorted.iter().fold(0u64, |m, &i| m | 1 << i);
                let mono = Monomial::from_parts(&sig, &[0, 0], mask);
                assert_eq!(product.coefficient(&mono), if neg { q(-1) } else { q(1) });
                assert_eq!(product.len(), 1);
            }
        }
    }
    // graded commutativity
    for _ in 0..CASES {
        let x = random_homogeneous(&mut rng, &sig);
        let y = random_homogeneous(&mut rng, &sig);
        let (dx, dy) = (x.top_degree().unwrap_or(0), y.top_degree().unwrap_or(0));
        let yx = &y * &x;
        let expected = if dx * dy % 2 == 1 { -yx } else { yx };
        assert_eq!(&x * &y, expected);
    }
    // hat transform is an involution
    let inv = relations::invariant_signature();
    for _ in 0..CASES {
        let g = rng.gen_range(1..=8);
        let x = random_element(&mut rng, inv, 4, 8);
        let base = leading_degrees(g)[rng.gen_range(0..3)] + 4 * rng.gen_range(0..4);
        assert_eq!(hat_transform(g, &hat_transform(g, &x, base), base), x);
    }
    // normal forms are idempotent and ignore ideal elements
    let rings: Vec<QuotientRing> = (1..=4)
        .flat_map(|g| {
            [
                QuotientRing::new(g, classical_relations(g).unwrap().relations.clone(), Mode::Homogeneous).unwrap(),
                QuotientRing::new(g, quantum_relations(g).unwrap().relations.clone(), Mode::Filtered).unwrap(),
            ]
        })
        .collect();
    for _ in 0..CASES {
        let ring = &rings[rng.gen_range(0..rings.len())];
        let bound = ring.degree_bound();
        let r = &ring.relations()[rng.gen_range(0..3)];
        let room = bound - r.top_degree().unwrap();
        let x = random_element(&mut rng, inv, 3, 5).filter_terms(|t, _| t.degree() <= bound);
        let m = random_element(&mut rng, inv, 1, 2).filter_terms(|t, _| t.degree() <= room);
        let nf = ring.normal_form(&x).unwrap();
        assert_eq!(ring.normal_form(&nf).unwrap(), nf);
        assert_eq!(ring.normal_form(&(&x + &(&m * r))).unwrap(), nf);
    }
    // text and JSON round trips
    for _ in 0..CASES {
        let x = random_element(&mut rng, &sig, 3, 6);
        assert_eq!(Element::parse(&x.to_string(), &sig).unwrap(), x);
        let encoded = serde_json::to_string(&x.to_json()).unwrap();
        let decoded: Vec<qcoh_core::algebra::json::TermJson> = serde_json::from_str(&encoded).unwrap();
        assert_eq!(Element::from_json(&decoded, &sig).unwrap(), x);
    }
}

fn main() {
    let criteria: [(&str, fn()); 9] = [
        ("relation golden tests", criterion_1),
        ("recursion consistency up to genus 8", criterion_2),
        ("quotient bookkeeping", criterion_3),
        ("Chern character chain", criterion_4),
        ("h-power reduction, genus 3 to 6", criterion_5),
        ("line invariants, two engines and oracle", criterion_6),
        ("genus 3 quantum relations", criterion_7),
        ("quantum ring sanity up to genus 3", criterion_8),
        ("kernel properties, seeded", criterion_9),
    ];
    panic::set_hook(Box::new(|info| eprintln!("{info}")));
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = panic::catch_unwind(AssertUnwindSafe(check)).is_ok();
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {}: {} {name} ({:.2?})",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
