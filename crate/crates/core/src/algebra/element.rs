use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;


use super::monomial::Monomial;
use super::signature::{GeneratorRef, Signature};
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// A finite linear combination of canonical monomials with nonzero
/// coefficients.
#[derive(Clone)]
pub struct Element<C> {
    sig: Arc<Signature>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> PartialEq for Element<C> {
    fn eq(&self, other: &Self) -> bool {
        same_signature(&self.sig, &other.sig) && self.terms == other.terms
    }
}

impl<C: Coefficient> Eq for Element<C> {}

fn same_signature(a: &Arc<Signature>, b: &Arc<Signature>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<C: Coefficient> fmt::Debug for Element<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self)
    }
}

impl<C: Coefficient> Element<C> {
    pub fn zero(sig: &Arc<Signature>) -> Self {
        Element {
            sig: Arc::clone(sig),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: &Arc<Signature>) -> Self {
        Self::constant(sig, C::one())
    }

    pub fn constant(sig: &Arc<Signature>, c: C) -> Self {
        Self::from_term(sig, Monomial::one(sig), c)
    }

    pub fn integer(sig: &Arc<Signature>, n: i64) -> Self {
        Self::constant(sig, C::from_i64(n))
    }

    pub fn from_term(sig: &Arc<Signature>, mono: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Element {
            sig: Arc::clone(sig),
            terms,
        }
    }

    /// Sums `(monomial, coefficient)` pairs, merging repeats and dropping zeros.
    pub fn from_terms(sig: &Arc<Signature>, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut out = Self::zero(sig);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn generator(sig: &Arc<Signature>, name: &str) -> Result<Self> {
        Ok(match sig.lookup(name)? {
            GeneratorRef::Even(i) => Self::even_generator(sig, i),
            GeneratorRef::Odd(i) => Self::odd_generator(sig, i),
        })
    }

    pub fn even_generator(sig: &Arc<Signature>, idx: usize) -> Self {
        Self::from_term(sig, Monomial::even_generator(sig, idx, 1), C::one())
    }

    pub fn odd_generator(sig: &Arc<Signature>, idx: usize) -> Self {
        let even = vec![0; sig.even().len()];
        Self::from_term(sig, Monomial::from_parts(sig, &even, 1u64 << idx), C::one())
    }

    /// Ordered product of odd generators, e.g. `φ_2 φ_1 = -φ_1 φ_2`.
    pub fn odd_word(sig: &Arc<Signature>, word: &[usize]) -> Self {
        match Monomial::from_odd_word(sig, word) {
            Some((m, s)) => Self::from_term(sig, m, C::from_i64(s as i64)),
            None => Self::zero(sig),
        }
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &Monomial) -> C {
        self.terms.get(mono).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::one(&self.sig))
    }

    pub fn add_term(&mut self, mono: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_sig(&self, other: &Self) -> Result<()> {
        if same_signature(&self.sig, &other.sig) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &C, other: &Self) -> Result<()> {
        self.check_sig(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), c.clone() * d.clone());
        }
        Ok(())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        Element {
            sig: Arc::clone(&self.sig),
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), d.clone() * c.clone()))
                .collect(),
        }
    }

    /// Graded-commutative product with Koszul signs and the signature's
    /// truncation rule.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = Self::zero(&self.sig);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((m, sign)) = m1.mul(m2, &self.sig) {
                    let c = c1.clone() * c2.clone();
                    out.add_term(m, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.sig);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of terms of total degree exactly `degree`.
    pub fn graded_component(&self, degree: u32) -> Self {
        Element {
            sig: Arc::clone(&self.sig),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous components keyed by degree.
    pub fn components(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Self::zero(&self.sig))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|m| m.degree()).collect();
        d.dedup();
        d
    }

    pub fn top_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn top_component(&self) -> Self {
        match self.top_degree() {
            Some(d) => self.graded_component(d),
            None => self.clone(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// Keeps the terms for which `keep` returns true.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial, &C) -> bool) -> Self {
        Element {
            sig: Arc::clone(&self.sig),
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| keep(m, c))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Negates every homogeneous component whose degree satisfies `pred`.
    pub fn negate_components(&self, mut pred: impl FnMut(u32) -> bool) -> Self {
        Element {
            sig: Arc::clone(&self.sig),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if pred(m.degree()) { -c.clone() } else { c.clone() };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    /// Replaces each term `c · x^k · m` (with `x` the even generator `idx`)
    /// by `c · rule(k) · m`.
    pub fn substitute_even_index(
        &self,
        idx: usize,
        mut rule: impl FnMut(u32) -> Result<Self>,
    ) -> Result<Self> {
        let mut cache: BTreeMap<u32, Self> = BTreeMap::new();
        let mut out = Self::zero(&self.sig);
        for (m, c) in &self.terms {
            let k = m.exponent(idx);
            if !cache.contains_key(&k) {
                let image = rule(k)?;
                image.check_sig(self)?;
                cache.insert(k, image);
            }
            let rest = Self::from_term(&self.sig, m.with_exponent(&self.sig, idx, 0), c.clone());
            out = out.try_add(&cache[&k].multiply(&rest)?)?;
        }
        Ok(out)
    }

    pub fn substitute_even(&self, name: &str, rule: impl FnMut(u32) -> Result<Self>) -> Result<Self> {
        let idx = self.sig.even_index(name)?;
        self.substitute_even_index(idx, rule)
    }

    /// Maps every coefficient through `f`, e.g. to change the scalar type.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Element<D> {
        Element::from_terms(&self.sig, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// If `self = c · other` for a scalar `c`, returns `c`.
    pub fn scalar_multiple_of(&self, other: &Self) -> Option<C> {
        if self.check_sig(other).is_err() {
            return None;
        }
        if other.is_zero() {
            return self.is_zero().then(C::zero);
        }
        let (m0, c0) = other.terms.iter().next()?;
        let ratio = self.coefficient(m0) / c0.clone();
        (other.scale(&ratio) == *self).then_some(ratio)
    }
}

impl<'a, C: Coefficient> Add<&'a Element<C>> for &'a Element<C> {
    type Output = Element<C>;
    fn add(self, rhs: &'a Element<C>) -> Element<C> {
        self.try_add(rhs).expect("signature mismatch in +")
    }
}

impl<'a, C: Coefficient> Sub<&'a Element<C>> for &'a Element<C> {
    type Output = Element<C>;
    fn sub(self, rhs: &'a Element<C>) -> Element<C> {
        self.try_sub(rhs).expect("signature mismatch in -")
    }
}

/// Panics on signature mismatch; use [`Element::multiply`] for a checked product.
impl<'a, C: Coefficient> Mul<&'a Element<C>> for &'a Element<C> {
    type Output = Element<C>;
    fn mul(self, rhs: &'a Element<C>) -> Element<C> {
        self.multiply(rhs).expect("signature mismatch in *")
    }
}

impl<C: Coefficient> Add for Element<C> {
    type Output = Element<C>;
    fn add(self, rhs: Element<C>) -> Element<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for Element<C> {
    type Output = Element<C>;
    fn sub(self, rhs: Element<C>) -> Element<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for Element<C> {
    type Output = Element<C>;
    fn mul(self, rhs: Element<C>) -> Element<C> {
        &self * &rhs
    }
}

impl<C: Coefficient> Neg for &Element<C> {
    type Output = Element<C>;
    fn neg(self) -> Element<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coefficient> Neg for Element<C> {
    type Output = Element<C>;
    fn neg(self) -> Element<C> {
        -&self
    }
}

impl<C: Coefficient> fmt::Display for Element<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::to_text(self, &|name| name.to_string()))
    }
}
