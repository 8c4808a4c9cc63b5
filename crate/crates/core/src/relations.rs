//! Recursive ideal generators for the invariant rings.
//!
//! Three families of triples in `Q[α, β, γ]` (degrees 2, 4, 6):
//!
//! * classical `q_g^i`, generating the relations of the invariant
//!   cohomology ring, from the base `(α, β, γ)` at genus 1;
//! * Floer `R_g^i`, the same recursion with the `β` coefficient shifted by
//!   `±8`, from the base `(1, 0, 0)` at genus 0;
//! * quantum `R̂_g^i`, the sign twist of `R_g^i` produced by
//!   [`hat_transform`]. The hatted generators `α̂, β̂, γ̂` share the
//!   signature of `α, β, γ`; only the presentation tells them apart.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::algebra::{Monomial, Signature, Truncation};
use crate::error::{Error, Result};
use crate::scalar::Coefficient;
use crate::{Element, Rational};

pub const ALPHA: usize = 0;
pub const BETA: usize = 1;
pub const GAMMA: usize = 2;

/// `Q[α, β, γ]` with generators spelled `a`, `b`, `g`.
pub fn invariant_signature() -> &'static Arc<Signature> {
    static SIG: OnceLock<Arc<Signature>> = OnceLock::new();
    SIG.get_or_init(|| {
        Signature::new(
            vec![("a".into(), 2), ("b".into(), 4), ("g".into(), 6)],
            vec![],
            Truncation::None,
        )
        .expect("invariant signature")
    })
}

/// Command-line aliases for the hatted generators.
pub const HAT_ALIASES: [(&str, &str); 3] = [("ah", "a"), ("bh", "b"), ("gh", "g")];

pub fn hat_name(name: &str) -> String {
    format!("{name}h")
}

pub fn alpha() -> Element {
    Element::even_generator(invariant_signature(), ALPHA)
}

pub fn beta() -> Element {
    Element::even_generator(invariant_signature(), BETA)
}

pub fn gamma() -> Element {
    Element::even_generator(invariant_signature(), GAMMA)
}

pub fn constant(c: Rational) -> Element {
    Element::constant(invariant_signature(), c)
}

pub fn int(n: i64) -> Element {
    Element::integer(invariant_signature(), n)
}

/// `α^a β^b γ^c`.
pub fn abg_monomial(a: u32, b: u32, c: u32) -> Monomial {
    Monomial::from_parts(invariant_signature(), &[a, b, c], 0)
}

/// Parses text in `α, β, γ` accepting both plain and hatted spellings.
pub fn parse_invariant(text: &str) -> Result<Element> {
    crate::algebra::text::parse_with_aliases(text, invariant_signature(), &HAT_ALIASES)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Classical,
    Floer,
    QuantumHat,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Classical => "classical",
            Flavor::Floer => "floer",
            Flavor::QuantumHat => "quantum",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationTriple {
    pub genus: u32,
    pub flavor: Flavor,
    pub relations: [Element; 3],
    /// Set for quantum triples with `g >= 4`: only the two leading terms
    /// are established there.
    pub conjectural: bool,
}

impl RelationTriple {
    /// Degrees of the leading components: `2g, 2g + 2, 2g + 4`.
    pub fn top_degrees(&self) -> [u32; 3] {
        leading_degrees(self.genus)
    }

    pub fn get(&self, i: usize) -> &Element {
        &self.relations[i - 1]
    }
}

pub fn leading_degrees(genus: u32) -> [u32; 3] {
    [2 * genus, 2 * genus + 2, 2 * genus + 4]
}

type Memo = RwLock<HashMap<(Flavor, u32), Arc<RelationTriple>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn memoized(
    flavor: Flavor,
    genus: u32,
    compute: impl FnOnce() -> Result<RelationTriple>,
) -> Result<Arc<RelationTriple>> {
    if let Some(hit) = memo().read().expect("relation memo poisoned").get(&(flavor, genus)) {
        return Ok(Arc::clone(hit));
    }
    let fresh = Arc::new(compute()?);
    let mut table = memo().write().expect("relation memo poisoned");
    // first writer wins
    Ok(Arc::clone(table.entry((flavor, genus)).or_insert(fresh)))
}

fn check_genus(g: u32, min: u32) -> Result<()> {
    if g < min {
        Err(Error::InvalidGenus {
            genus: g as i64,
            requirement: format!("must be at least {min}"),
        })
    } else {
        Ok(())
    }
}

/// One step of the shared recursion from genus `g` to `g + 1`:
/// `(α r1 + g² r2, (β + shift) r1 + 2g/(g+1) r3, γ r1)`.
fn recursion_step(prev: &[Element; 3], g: u32, beta_shift: i64) -> [Element; 3] {
    let g_sq = int((g * g) as i64);
    let ratio = constant(Rational::from_ratio(2 * g as i64, g as i64 + 1));
    let [r1, r2, r3] = prev;
    [
        &(&alpha() * r1) + &(&g_sq * r2),
        &(&(&beta() + &int(beta_shift)) * r1) + &(&ratio * r3),
        &gamma() * r1,
    ]
}

/// Classical generators `(q_g^1, q_g^2, q_g^3)`.
pub fn classical_relations(g: u32) -> Result<Arc<RelationTriple>> {
    check_genus(g, 1)?;
    memoized(Flavor::Classical, g, || {
        let relations = if g == 1 {
            [alpha(), beta(), gamma()]
        } else {
            recursion_step(&classical_relations(g - 1)?.relations, g - 1, 0)
        };
        Ok(RelationTriple {
            genus: g,
            flavor: Flavor::Classical,
            relations,
            conjectural: false,
        })
    })
}

fn floer_raw(g: u32) -> Result<[Element; 3]> {
    if g == 0 {
        return Ok([int(1), int(0), int(0)]);
    }
    let prev = if g == 1 {
        floer_raw(0)?
    } else {
        floer_relations(g - 1)?.relations.clone()
    };
    let step_from = g - 1;
    let shift = if (step_from + 1) % 2 == 0 { 8 } else { -8 };
    Ok(recursion_step(&prev, step_from, shift))
}

/// Floer generators `(R_g^1, R_g^2, R_g^3)`.
pub fn floer_relations(g: u32) -> Result<Arc<RelationTriple>> {
    check_genus(g, 1)?;
    memoized(Flavor::Floer, g, || {
        Ok(RelationTriple {
            genus: g,
            flavor: Flavor::Floer,
            relations: floer_raw(g)?,
            conjectural: false,
        })
    })
}

/// Sign twist taking a Floer generator to its quantum counterpart.
///
/// Identity for even `g`. For odd `g`, negates every homogeneous component
/// whose degree is `base_degree - 4 - 8j` for some `j >= 0`.
pub fn hat_transform(g: u32, x: &Element, base_degree: u32) -> Element {
    if g % 2 == 0 {
        return x.clone();
    }
    x.negate_components(|d| d + 4 <= base_degree && (base_degree - 4 - d) % 8 == 0)
}

fn hat_triple(g: u32, triple: &[Element; 3]) -> [Element; 3] {
    let degs = leading_degrees(g);
    [
        hat_transform(g, &triple[0], degs[0]),
        hat_transform(g, &triple[1], degs[1]),
        hat_transform(g, &triple[2], degs[2]),
    ]
}

/// Quantum generators `(R̂_g^1, R̂_g^2, R̂_g^3)`. These are the full
/// relations for `g <= 3`; for `g >= 4` only their two leading terms are
/// established and the triple is flagged conjectural.
pub fn quantum_relations(g: u32) -> Result<Arc<RelationTriple>> {
    check_genus(g, 1)?;
    memoized(Flavor::QuantumHat, g, || {
        Ok(RelationTriple {
            genus: g,
            flavor: Flavor::QuantumHat,
            relations: hat_triple(g, &floer_relations(g)?.relations),
            conjectural: g >= 4,
        })
    })
}

pub fn relations(g: u32, flavor: Flavor) -> Result<Arc<RelationTriple>> {
    match flavor {
        Flavor::Classical => classical_relations(g),
        Flavor::Floer => floer_relations(g),
        Flavor::QuantumHat => quantum_relations(g),
    }
}

/// The leading term `q_g^i` and the first correction (degree
/// `deg q_g^i - 4`) of the `i`-th quantum relation, for `g >= 3`.
pub fn two_leading_terms(g: u32, i: usize) -> Result<(Element, Element)> {
    check_genus(g, 3)?;
    if !(1..=3).contains(&i) {
        return Err(Error::InvalidGenus {
            genus: i as i64,
            requirement: "relation index must be 1, 2 or 3".into(),
        });
    }
    let top = leading_degrees(g)[i - 1];
    let rel = quantum_relations(g)?;
    let r = rel.get(i);
    Ok((r.graded_component(top), r.graded_component(top - 4)))
}

/// The possible shift `γ̂ = γ + s_g α`; known only at genus 1 and 2.
#[derive(Debug, Clone, PartialEq)]
pub enum GammaShift {
    Known(Rational),
    Unknown,
}

impl fmt::Display for GammaShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaShift::Known(s) => write!(f, "{s}"),
            GammaShift::Unknown => f.write_str("unknown"),
        }
    }
}

pub fn gamma_shift(g: u32) -> GammaShift {
    match g {
        1 => GammaShift::Known(Rational::from_i64(0)),
        2 => GammaShift::Known(Rational::from_i64(-4)),
        _ => GammaShift::Unknown,
    }
}
