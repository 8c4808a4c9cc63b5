//! Cohomology of the Jacobian and of `Σ × J`.
//!
//! `H*(J)` is the exterior algebra on `φ_1..φ_2g` (degree 1) with symplectic
//! form `ω = Σ_{i<=g} φ_i φ_{i+g}`. The fundamental class is oriented so
//! that `∫_J ω^g = g!`, i.e. the volume form is
//! `φ_1 φ_{1+g} φ_2 φ_{2+g} ... φ_g φ_2g`.
//!
//! `H*(Σ × J)` adds the surface classes `γ_1..γ_2g` (degree 1) and `[Σ]`
//! (degree 2) with `γ_i γ_{i+g} = [Σ]`; products of surface degree above 2
//! vanish.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{Monomial, Signature, SurfaceRule, Truncation};
use crate::error::{Error, Result};
use crate::scalar::{factorial, int_pow, Coefficient};
use crate::{Element, Rational};

/// Human-readable statement of the orientation convention.
pub const VOLUME_CONVENTION: &str = "vol(J) = phi1^phi(1+g)^phi2^phi(2+g)^...^phig^phi(2g); int_J omega^g = g!";

pub(crate) fn cached(kind: u8, g: u32, build: impl FnOnce() -> Arc<Signature>) -> Arc<Signature> {
    static CACHE: OnceLock<Mutex<HashMap<(u8, u32), Arc<Signature>>>> = OnceLock::new();
    let mut cache = CACHE
        .get_or_init(Default::default)
        .lock()
        .expect("signature cache poisoned");
    Arc::clone(cache.entry((kind, g)).or_insert_with(build))
}

pub fn phi_names(g: u32) -> Vec<(String, u32)> {
    (1..=2 * g).map(|i| (format!("phi{i}"), 1)).collect()
}

/// `Λ(φ_1, ..., φ_2g)`.
pub fn jacobian_signature(g: u32) -> Arc<Signature> {
    cached(0, g, || {
        Signature::new(vec![], phi_names(g), Truncation::ExteriorTop(2 * g)).expect("jacobian")
    })
}

/// `H*(Σ) ⊗ H*(J)`: even `S` = `[Σ]`, odd `gam1..gam2g` then `phi1..phi2g`.
pub fn surface_jacobian_signature(g: u32) -> Arc<Signature> {
    cached(1, g, || {
        let mut odd: Vec<(String, u32)> = (1..=2 * g).map(|i| (format!("gam{i}"), 1)).collect();
        odd.extend(phi_names(g));
        Signature::new(
            vec![("S".into(), 2)],
            odd,
            Truncation::Surface {
                rule: SurfaceRule {
                    genus: g as usize,
                    first_odd: 0,
                    fundamental: 0,
                },
                exterior_top: Some(2 * g),
            },
        )
        .expect("surface-jacobian")
    })
}

/// `ω = Σ φ_i φ_{i+g}` in any signature whose odd generators
/// `phi_offset .. phi_offset + 2g` are the `φ_i`.
pub fn omega_in(sig: &Arc<Signature>, g: u32, phi_offset: usize) -> Element {
    let g = g as usize;
    let mut out = Element::zero(sig);
    for i in 0..g {
        out = &out + &Element::odd_word(sig, &[phi_offset + i, phi_offset + i + g]);
    }
    out
}

pub fn omega(g: u32) -> Element {
    omega_in(&jacobian_signature(g), g, 0)
}

/// The oriented volume form of `J` as an element.
pub fn volume_form(g: u32) -> Element {
    let sig = jacobian_signature(g);
    let word: Vec<usize> = (0..g as usize).flat_map(|i| [i, i + g as usize]).collect();
    Element::odd_word(&sig, &word)
}

/// `⟨x, [J]⟩`: the coefficient of the volume form; lower-degree terms
/// contribute nothing.
pub fn integrate_j(x: &Element, g: u32) -> Result<Rational> {
    let sig = jacobian_signature(g);
    if **x.signature() != *sig {
        return Err(Error::SignatureMismatch);
    }
    let vol = volume_form(g);
    let (top, sign) = vol.terms().next().map(|(m, c)| (m.clone(), c.clone())).expect("volume");
    Ok(x.coefficient(&top) * sign)
}

/// `c_1(L) = Σ γ_i ⊗ φ_i` for the universal line bundle on `Σ × J`.
pub fn universal_first_chern(g: u32) -> Element {
    let sig = surface_jacobian_signature(g);
    let n = 2 * g as usize;
    let mut out = Element::zero(&sig);
    for i in 0..n {
        out = &out + &Element::odd_word(&sig, &[i, n + i]);
    }
    out
}

pub fn fundamental_class(g: u32) -> Element {
    Element::even_generator(&surface_jacobian_signature(g), 0)
}

/// `ω` pulled back to `Σ × J`.
pub fn omega_on_product(g: u32) -> Element {
    omega_in(&surface_jacobian_signature(g), g, 2 * g as usize)
}

/// Integration over the `Σ` factor: keeps the coefficient of `[Σ]`.
pub fn pushforward_sigma(x: &Element, g: u32) -> Result<Element> {
    let sig = surface_jacobian_signature(g);
    if **x.signature() != *sig {
        return Err(Error::SignatureMismatch);
    }
    let target = jacobian_signature(g);
    let surface_mask = (1u64 << (2 * g)) - 1;
    let terms = x
        .terms()
        .filter(|(m, _)| m.exponent(0) == 1 && m.odd() & surface_mask == 0)
        .map(|(m, c)| {
            (
                Monomial::from_parts(&target, &[], m.odd() >> (2 * g)),
                c.clone(),
            )
        });
    Ok(Element::from_terms(&target, terms))
}

/// One displayed step of the Chern character computation.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceLine {
    pub label: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrrTrace {
    pub genus: u32,
    pub lines: Vec<TraceLine>,
    /// `ch(E)` as a class on `J`.
    pub result: Element,
}

/// Chern character of `E = R¹p_*(L² ⊗ Λ^{-1})` on `J` by
/// Grothendieck–Riemann–Roch, with `Λ = [Σ]` and `K_Σ = (2g - 2)[Σ]`:
/// `ch E = -p_*((ch L)² (ch Λ)^{-1} td(Σ))`, which evaluates to `g + 4ω`.
pub fn grr_extension_chern_character(g: u32) -> Result<GrrTrace> {
    if g < 2 {
        return Err(Error::InvalidGenus {
            genus: g as i64,
            requirement: "must be at least 2".into(),
        });
    }
    let sig = surface_jacobian_signature(g);
    let one = Element::one(&sig);
    let c1 = universal_first_chern(g);
    let sigma = fundamental_class(g);
    let half = Rational::from_ratio(1, 2);
    let c1_sq = &c1 * &c1;
    let c1_cubed = &c1_sq * &c1;
    if !c1_cubed.is_zero() {
        return Err(Error::Internal(format!("c_1(L)^3 = {c1_cubed} is not zero")));
    }
    let expected_sq = (&sigma * &omega_on_product(g)).scale(&Rational::from_i64(-2));
    if c1_sq != expected_sq {
        return Err(Error::Internal(format!("c_1(L)^2 = {c1_sq}, expected {expected_sq}")));
    }
    let ch_l = &(&one + &c1) + &c1_sq.scale(&half);
    let ch_l_sq = &ch_l * &ch_l;
    let lambda = sigma.clone();
    let canonical = sigma.scale(&Rational::from_i64(2 * g as i64 - 2));
    // (ch Λ)^{-1} = 1 - Λ and td(Σ) = 1 - K/2, exactly, since [Σ]² = 0
    let ch_lambda_inv = &one - &lambda;
    let todd = &one - &canonical.scale(&half);
    let integrand = &(&ch_l_sq * &ch_lambda_inv) * &todd;
    let pushed = pushforward_sigma(&integrand, g)?;
    let result = -pushed;
    let lines = vec![
        TraceLine { label: "c1(L)".into(), value: c1.to_string() },
        TraceLine { label: "c1(L)^2".into(), value: c1_sq.to_string() },
        TraceLine { label: "ch L = 1 + c1(L) + c1(L)^2/2".into(), value: ch_l.to_string() },
        TraceLine { label: "(ch L)^2".into(), value: ch_l_sq.to_string() },
        TraceLine { label: "(ch Lambda)^-1 = 1 - Lambda".into(), value: ch_lambda_inv.to_string() },
        TraceLine { label: "Todd T_Sigma = 1 - K/2".into(), value: todd.to_string() },
        TraceLine { label: "(ch L)^2 (ch Lambda)^-1 Todd".into(), value: integrand.to_string() },
        TraceLine { label: "ch E = -p_*(...)".into(), value: result.to_string() },
    ];
    Ok(GrrTrace { genus: g, lines, result })
}

/// Chern classes `c_1..c_rank` of a bundle on `J` from its Chern character,
/// by Newton's identities: `k c_k = Σ_{i=1}^k (-1)^{i-1} c_{k-i} p_i` with
/// power sums `p_i = i! ch_i`.
pub fn chern_classes_from_character(ch: &Element, rank: u32) -> Vec<Element> {
    let sig = ch.signature();
    let power_sum = |i: u32| ch.graded_component(2 * i).scale(&factorial::<Rational>(i));
    let mut classes = vec![Element::one(sig)];
    for k in 1..=rank {
        let mut acc = Element::zero(sig);
        for i in 1..=k {
            let term = &classes[(k - i) as usize] * &power_sum(i);
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        classes.push(acc.scale(&Rational::from_ratio(1, k as i64)));
    }
    classes.remove(0);
    classes
}

/// `c_i(E) = 4^i/i! ω^i`, the closed form for `ch E = g + 4ω`.
pub fn chern_class_closed_form(g: u32, i: u32) -> Element {
    omega(g).pow(i).scale(&(int_pow::<Rational>(4, i) / factorial::<Rational>(i)))
}

/// `s_i(E) = (-4)^i/i! ω^i`.
pub fn segre_class(g: u32, i: u32) -> Element {
    omega(g).pow(i).scale(&(int_pow::<Rational>(-4, i) / factorial::<Rational>(i)))
}
