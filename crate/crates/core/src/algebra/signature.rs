use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Maximum number of odd generators; the odd part of a monomial is a `u64` mask.
pub const MAX_ODD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorRef {
    Even(usize),
    Odd(usize),
}

/// Cohomology of a closed surface of genus `g` inside a larger algebra:
/// the `2g` odd generators starting at `first_odd` are a symplectic basis
/// `γ_1..γ_2g` of H¹, with `γ_i γ_{i+g} = [Σ]`, where `[Σ]` is the even
/// generator `fundamental`. Everything of surface degree above 2 vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceRule {
    pub genus: usize,
    pub first_odd: usize,
    pub fundamental: usize,
}

impl SurfaceRule {
    pub fn odd_mask(&self) -> u64 {
        mask_range(self.first_odd, 2 * self.genus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Truncation {
    None,
    /// Kill monomials whose odd part has degree above the bound.
    ExteriorTop(u32),
    /// Surface rule, optionally combined with an exterior bound on the odd
    /// generators outside the surface block.
    Surface {
        rule: SurfaceRule,
        exterior_top: Option<u32>,
    },
}

/// Generators, degrees and truncation rule of a graded-commutative algebra.
#[derive(Debug, Clone)]
pub struct Signature {
    even: Vec<Generator>,
    odd: Vec<Generator>,
    truncation: Truncation,
    lookup: HashMap<String, GeneratorRef>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.even == other.even && self.odd == other.odd && self.truncation == other.truncation
    }
}

impl Eq for Signature {}

impl Signature {
    pub fn new(
        even: Vec<(String, u32)>,
        odd: Vec<(String, u32)>,
        truncation: Truncation,
    ) -> Result<Arc<Self>> {
        if odd.len() > MAX_ODD {
            return Err(Error::InvalidSignature(format!(
                "{} odd generators, at most {MAX_ODD} supported",
                odd.len()
            )));
        }
        let mut lookup = HashMap::new();
        for (idx, (name, degree)) in even.iter().enumerate() {
            if *degree == 0 || degree % 2 != 0 {
                return Err(Error::InvalidSignature(format!(
                    "even generator `{name}` has degree {degree}"
                )));
            }
            if lookup.insert(name.clone(), GeneratorRef::Even(idx)).is_some() {
                return Err(Error::InvalidSignature(format!("duplicate generator `{name}`")));
            }
        }
        for (idx, (name, degree)) in odd.iter().enumerate() {
            if degree % 2 != 1 {
                return Err(Error::InvalidSignature(format!(
                    "odd generator `{name}` has degree {degree}"
                )));
            }
            if lookup.insert(name.clone(), GeneratorRef::Odd(idx)).is_some() {
                return Err(Error::InvalidSignature(format!("duplicate generator `{name}`")));
            }
        }
        if let Truncation::Surface { rule, .. } = &truncation {
            if rule.first_odd + 2 * rule.genus > odd.len() || rule.fundamental >= even.len() {
                return Err(Error::InvalidSignature(
                    "surface rule refers to missing generators".into(),
                ));
            }
            if even[rule.fundamental].1 != 2 {
                return Err(Error::InvalidSignature("[Σ] must have degree 2".into()));
            }
            if odd[rule.first_odd..rule.first_odd + 2 * rule.genus]
                .iter()
                .any(|(_, d)| *d != 1)
            {
                return Err(Error::InvalidSignature(
                    "surface H¹ generators must have degree 1".into(),
                ));
            }
        }
        let to_gen = |v: Vec<(String, u32)>| {
            v.into_iter()
                .map(|(name, degree)| Generator { name, degree })
                .collect()
        };
        Ok(Arc::new(Signature {
            even: to_gen(even),
            odd: to_gen(odd),
            truncation,
            lookup,
        }))
    }

    pub fn even(&self) -> &[Generator] {
        &self.even
    }

    pub fn odd(&self) -> &[Generator] {
        &self.odd
    }

    pub fn truncation(&self) -> &Truncation {
        &self.truncation
    }

    pub fn lookup(&self, name: &str) -> Result<GeneratorRef> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn even_index(&self, name: &str) -> Result<usize> {
        match self.lookup(name)? {
            GeneratorRef::Even(i) => Ok(i),
            GeneratorRef::Odd(_) => Err(Error::UnknownGenerator(format!("{name} (not even)"))),
        }
    }

    pub fn odd_index(&self, name: &str) -> Result<usize> {
        match self.lookup(name)? {
            GeneratorRef::Odd(i) => Ok(i),
            GeneratorRef::Even(_) => Err(Error::UnknownGenerator(format!("{name} (not odd)"))),
        }
    }

    /// Degree of the odd part encoded by `mask`.
    pub fn odd_degree(&self, mask: u64) -> u32 {
        iter_bits(mask).map(|i| self.odd[i].degree).sum()
    }
}

pub(crate) fn mask_range(start: usize, len: usize) -> u64 {
    if len == 0 {
        return 0;
    }
    let ones = if len >= 64 { u64::MAX } else { (1u64 << len) - 1 };
    ones << start
}

/// Indices of set bits, ascending.
pub fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(name: &str, d: u32) -> (String, u32) {
        (name.to_string(), d)
    }

    #[test]
    fn rejects_duplicates_and_bad_degrees() {
        assert!(Signature::new(vec![s("a", 2), s("a", 4)], vec![], Truncation::None).is_err());
        assert!(Signature::new(vec![s("a", 3)], vec![], Truncation::None).is_err());
        assert!(Signature::new(vec![], vec![s("p", 2)], Truncation::None).is_err());
        assert!(Signature::new(vec![s("a", 2)], vec![s("a", 1)], Truncation::None).is_err());
    }

    #[test]
    fn lookup_and_masks() {
        let sig = Signature::new(vec![s("a", 2)], vec![s("x", 1), s("y", 3)], Truncation::None)
            .unwrap();
        assert_eq!(sig.lookup("y").unwrap(), GeneratorRef::Odd(1));
        assert_eq!(sig.odd_degree(0b11), 4);
        assert!(sig.lookup("z").is_err());
        assert_eq!(iter_bits(0b1010).collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(mask_range(2, 3), 0b11100);
    }
}
