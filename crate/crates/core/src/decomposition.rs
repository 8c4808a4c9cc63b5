//! Dimension bookkeeping for the `Sp(2g)` decomposition
//! `H*(M_Σ) = ⊕_k Λ_0^k H³ ⊗ Q[α, β, γ]/I_{g-k}`.

use serde::Serialize;

use crate::algebra::{Element, Monomial, Signature, Truncation};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::scalar::{binomial, Coefficient};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpSummand {
    pub k: u32,
    /// `dim Λ_0^k H³ = C(2g, k) - C(2g, k - 2)`.
    pub primitive_dim: u128,
    /// Genus of the quotient factor, `g - k`.
    pub factor_genus: u32,
    /// `C(g - k + 2, 3)`.
    pub factor_dim: u128,
    pub summand_dim: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpDecomposition {
    pub genus: u32,
    pub summands: Vec<SpSummand>,
    pub total: u128,
}

pub fn primitive_dimension(g: u32, k: u32) -> u128 {
    let n = 2 * g as i64;
    binomial(n, k as i64) - binomial(n, k as i64 - 2)
}

pub fn sp_decomposition(g: u32) -> Result<SpDecomposition> {
    if g < 1 {
        return Err(Error::InvalidGenus {
            genus: g as i64,
            requirement: "must be at least 1".into(),
        });
    }
    let summands: Vec<SpSummand> = (0..=g)
        .map(|k| {
            let primitive_dim = primitive_dimension(g, k);
            let factor_dim = binomial((g - k) as i64 + 2, 3);
            SpSummand {
                k,
                primitive_dim,
                factor_genus: g - k,
                factor_dim,
                summand_dim: primitive_dim * factor_dim,
            }
        })
        .collect();
    let total = summands.iter().map(|s| s.summand_dim).sum();
    Ok(SpDecomposition {
        genus: g,
        summands,
        total,
    })
}

/// `Λ(ψ_1, ..., ψ_2g)` with `ψ_i` of degree 3.
pub fn psi_signature(g: u32) -> std::sync::Arc<Signature> {
    Signature::new(
        vec![],
        (1..=2 * g).map(|i| (format!("psi{i}"), 3)).collect(),
        Truncation::None,
    )
    .expect("psi signature")
}

/// `γ = -2 Σ ψ_i ψ_{i+g}` in [`psi_signature`].
pub fn psi_gamma(sig: &std::sync::Arc<Signature>, g: u32) -> Element<Rational> {
    let g = g as usize;
    let mut out = Element::zero(sig);
    for i in 0..g {
        out = &out + &Element::odd_word(sig, &[i, i + g]);
    }
    out.scale(&Rational::from_i64(-2))
}

/// `dim ker(γ^{g-k+1} : Λ^k H³ → Λ^{2g-k+2} H³)`, computed by exact rank.
pub fn primitive_dimension_by_kernel(g: u32, k: u32) -> Result<u128> {
    if k > g {
        return Err(Error::InvalidGenus {
            genus: k as i64,
            requirement: format!("k must be at most g = {g}"),
        });
    }
    let sig = psi_signature(g);
    let power = psi_gamma(&sig, g).pow(g - k + 1);
    let n = 2 * g;
    let sources: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() == k).collect();
    let targets: Vec<u64> = (0u64..1 << n)
        .filter(|m| m.count_ones() == 2 * g - k + 2)
        .collect();
    if targets.is_empty() {
        return Ok(sources.len() as u128);
    }
    let rows: Vec<Vec<Rational>> = sources
        .iter()
        .map(|&s| {
            let e = Element::from_term(&sig, Monomial::from_parts(&sig, &[], s), Rational::from_i64(1));
            let image = power.multiply(&e).expect("same signature");
            targets
                .iter()
                .map(|&t| image.coefficient(&Monomial::from_parts(&sig, &[], t)))
                .collect()
        })
        .collect();
    Ok(sources.len() as u128 - rank(&rows) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_and_three_totals() {
        let d2 = sp_decomposition(2).unwrap();
        let dims: Vec<u128> = d2.summands.iter().map(|s| s.summand_dim).collect();
        assert_eq!(dims, vec![4, 4, 0]);
        assert_eq!(d2.total, 8);
        assert_eq!(sp_decomposition(3).unwrap().total, 48);
    }

    #[test]
    fn top_summand_is_empty() {
        for g in 1..6 {
            let d = sp_decomposition(g).unwrap();
            assert_eq!(d.summands.last().unwrap().factor_dim, 0);
        }
    }

    #[test]
    fn kernel_matches_formula_small() {
        for g in 1..=3 {
            for k in 0..=g {
                assert_eq!(
                    primitive_dimension_by_kernel(g, k).unwrap(),
                    primitive_dimension(g, k),
                    "g={g} k={k}"
                );
            }
        }
    }
}
