//! JSON form of elements: a list of `{coeff, even, odd}` terms in the same
//! order as the canonical text form.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::element::Element;
use super::monomial::Monomial;
use super::signature::{iter_bits, Signature};
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub even: BTreeMap<String, u32>,
    pub odd: Vec<String>,
}

pub fn to_json<C: Coefficient>(x: &Element<C>, rename: &dyn Fn(&str) -> String) -> Vec<TermJson> {
    let sig = x.signature();
    x.terms()
        .rev()
        .map(|(m, c)| TermJson {
            coeff: c.to_string(),
            even: m
                .even()
                .iter()
                .zip(sig.even())
                .filter(|(e, _)| **e > 0)
                .map(|(e, g)| (rename(&g.name), *e))
                .collect(),
            odd: iter_bits(m.odd()).map(|i| rename(&sig.odd()[i].name)).collect(),
        })
        .collect()
}

/// Inverse of [`to_json`]. Odd generator lists are read as ordered words,
/// so a non-ascending list contributes its permutation sign.
pub fn from_json<C: Coefficient>(terms: &[TermJson], sig: &Arc<Signature>) -> Result<Element<C>> {
    let mut out = Element::zero(sig);
    for (k, t) in terms.iter().enumerate() {
        let c: C = t
            .coeff
            .parse()
            .map_err(|_| Error::parse(k, format!("bad coefficient {:?}", t.coeff)))?;
        let mut even = vec![0u32; sig.even().len()];
        for (name, e) in &t.even {
            even[sig.even_index(name)?] += e;
        }
        let word = t
            .odd
            .iter()
            .map(|name| sig.odd_index(name))
            .collect::<Result<Vec<_>>>()?;
        let evens = Element::from_term(sig, Monomial::from_parts(sig, &even, 0), c);
        out = &out + &(&evens * &Element::odd_word(sig, &word));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::signature::Truncation;
    use crate::algebra::text::parse;
    use num_rational::BigRational;

    #[test]
    fn json_shape_and_round_trip() {
        let sig = Signature::new(
            vec![("X".into(), 2)],
            vec![("phi1".into(), 1), ("phi2".into(), 1)],
            Truncation::ExteriorTop(2),
        )
        .unwrap();
        let x: Element<BigRational> = parse("-3/2*X^2*phi2*phi1 + 4", &sig).unwrap();
        let j = to_json(&x, &|s| s.to_string());
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(
            text,
            r#"[{"coeff":"3/2","even":{"X":2},"odd":["phi1","phi2"]},{"coeff":"4","even":{},"odd":[]}]"#
        );
        let back: Element<BigRational> = from_json(&j, &sig).unwrap();
        assert_eq!(back, x);
    }
}
