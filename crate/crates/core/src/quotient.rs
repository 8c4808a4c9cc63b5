//! Normal forms in quotients of `Q[α, β, γ]` by a triple of relations.
//!
//! The quotient by `I_g` (or by a filtered deformation `J_g` whose leading
//! forms generate `I_g`) has the monomials `α^a β^b γ^c`, `a + b + c < g`, as
//! a basis. Reduction is degreewise exact linear algebra: for each degree
//! `D` the products `m · r_i` with leading degree `D` are row-reduced,
//! pivoting on the non-basis monomials, which yields one ideal element per
//! non-basis monomial `m` of the form `m - (basis terms) + (lower degree)`.
//! Multiplication by a generator is then a matrix on the basis, and the
//! normal form of any monomial follows by peeling off one generator at a
//! time.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra::{Element, Monomial, Signature};
use crate::error::{Error, Result};
use crate::scalar::{binomial, Coefficient};

/// Environment variable overriding the working degree bound.
pub const MAX_DEGREE_ENV: &str = "QCOH_MAX_DEGREE";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Graded quotient by the leading forms of the relations.
    Homogeneous,
    /// Quotient by the full, mod-4 graded relations.
    Filtered,
}

/// Monomials `α^a β^b γ^c` with `a + b + c < g`, in ascending monomial order.
pub fn basis_in(sig: &Signature, g: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..g {
        for b in 0..g - a {
            for c in 0..g - a - b {
                out.push(Monomial::from_parts(sig, &[a, b, c], 0));
            }
        }
    }
    out.sort();
    out
}

/// All monomials of `Q[α, β, γ]` of the given degree, descending.
fn monomials_of_degree(sig: &Signature, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if degree % 2 != 0 {
        return out;
    }
    let half = degree / 2;
    for c in 0..=half / 3 {
        for b in 0..=(half - 3 * c) / 2 {
            let a = half - 3 * c - 2 * b;
            out.push(Monomial::from_parts(sig, &[a, b, c], 0));
        }
    }
    out.sort();
    out.reverse();
    out
}

/// Default working degree bound: three times the top degree `6g - 6`,
/// but never below 18.
pub fn default_degree_bound(g: u32) -> u32 {
    (3 * (6 * g).saturating_sub(6)).max(18)
}

fn env_degree_bound() -> Option<u32> {
    std::env::var(MAX_DEGREE_ENV).ok()?.trim().parse().ok()
}

#[derive(Clone)]
pub struct QuotientPresentation<C> {
    genus: u32,
    mode: Mode,
    relations: [Element<C>; 3],
    sig: Arc<Signature>,
    basis: Vec<Monomial>,
    basis_index: HashMap<Monomial, usize>,
    /// Per degree: non-basis monomial `m` -> ideal element `m + (basis) + (lower)`.
    reducers: BTreeMap<u32, HashMap<Monomial, Element<C>>>,
    /// `mult[t][j]` = coordinates of the normal form of `basis[j] · x_t`.
    mult: [Vec<Vec<C>>; 3],
    degree_bound: u32,
}

impl<C: Coefficient> std::fmt::Debug for QuotientPresentation<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientPresentation")
            .field("genus", &self.genus)
            .field("mode", &self.mode)
            .field("relations", &self.relations)
            .field("dimension", &self.basis.len())
            .finish()
    }
}

impl<C: Coefficient> QuotientPresentation<C> {
    /// Builds the presentation; the degree bound comes from
    /// `QCOH_MAX_DEGREE` when set, otherwise [`default_degree_bound`].
    pub fn new(genus: u32, relations: [Element<C>; 3], mode: Mode) -> Result<Self> {
        let bound = env_degree_bound().unwrap_or_else(|| default_degree_bound(genus));
        Self::with_degree_bound(genus, relations, mode, bound)
    }

    pub fn with_degree_bound(
        genus: u32,
        relations: [Element<C>; 3],
        mode: Mode,
        degree_bound: u32,
    ) -> Result<Self> {
        if genus < 1 {
            return Err(Error::InvalidGenus {
                genus: 0,
                requirement: "quotient rings need g >= 1".into(),
            });
        }
        let sig = Arc::clone(relations[0].signature());
        let shape_ok = sig.odd().is_empty()
            && sig.even().iter().map(|g| g.degree).collect::<Vec<_>>() == [2, 4, 6];
        if !shape_ok {
            return Err(Error::InvalidSignature(
                "quotient rings live in a signature with even generators of degrees 2, 4, 6".into(),
            ));
        }
        let working: [Element<C>; 3] = match mode {
            Mode::Homogeneous => relations.clone().map(|r| r.top_component()),
            Mode::Filtered => relations.clone(),
        };
        for r in &working {
            if r.signature() != &sig && **r.signature() != *sig {
                return Err(Error::SignatureMismatch);
            }
            if r.is_zero() {
                return Err(Error::Internal("zero relation".into()));
            }
        }
        let basis = basis_in(&sig, genus);
        let basis_index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut pres = QuotientPresentation {
            genus,
            mode,
            relations,
            sig: Arc::clone(&sig),
            basis,
            basis_index,
            reducers: BTreeMap::new(),
            mult: [Vec::new(), Vec::new(), Vec::new()],
            degree_bound,
        };
        // basis · generator reaches degree 6g
        for degree in 0..=6 * genus {
            let table = pres.build_degree(degree, &working)?;
            pres.reducers.insert(degree, table);
        }
        for t in 0..3 {
            let x = Element::even_generator(&sig, t);
            let mut column = Vec::with_capacity(pres.basis.len());
            for b in &pres.basis {
                let product = Element::from_term(&sig, b.clone(), C::one()).multiply(&x)?;
                let reduced = pres.reduce_with_tables(product)?;
                column.push(pres.coordinates_of_reduced(&reduced)?);
            }
            pres.mult[t] = column;
        }
        Ok(pres)
    }

    fn is_basis(&self, m: &Monomial) -> bool {
        self.basis_index.contains_key(m)
    }

    fn build_degree(
        &self,
        degree: u32,
        working: &[Element<C>; 3],
    ) -> Result<HashMap<Monomial, Element<C>>> {
        let sig = &self.sig;
        let mut rows: Vec<Element<C>> = Vec::new();
        for r in working {
            let top = r.top_degree().unwrap_or(0);
            if top > degree {
                continue;
            }
            for m in monomials_of_degree(sig, degree - top) {
                rows.push(Element::from_term(sig, m, C::one()).multiply(r)?);
            }
        }
        let targets: Vec<Monomial> = monomials_of_degree(sig, degree)
            .into_iter()
            .filter(|m| !self.is_basis(m))
            .collect();
        let mut table = HashMap::new();
        let mut used = vec![false; rows.len()];
        let mut pivots: Vec<(Monomial, usize)> = Vec::new();
        for m in &targets {
            let Some(p) = (0..rows.len()).find(|&r| !used[r] && !rows[r].coefficient(m).is_zero())
            else {
                return Err(Error::Internal(format!(
                    "genus {}: relations do not reach monomial {} in degree {degree}",
                    self.genus,
                    crate::algebra::text::monomial_text(m, sig, &|s| s.to_string())
                )));
            };
            used[p] = true;
            let inv = C::one() / rows[p].coefficient(m);
            rows[p] = rows[p].scale(&inv);
            let pivot = rows[p].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == p {
                    continue;
                }
                let c = row.coefficient(m);
                if !c.is_zero() {
                    row.add_scaled(&-c, &pivot)?;
                }
            }
            pivots.push((m.clone(), p));
        }
        // every remaining row must vanish modulo the lower-degree reducers,
        // otherwise the basis monomials would be dependent
        for (r, row) in rows.iter().enumerate() {
            if used[r] {
                continue;
            }
            if !row.graded_component(degree).is_zero() {
                return Err(Error::Internal(format!(
                    "genus {}: basis monomials are dependent in degree {degree}",
                    self.genus
                )));
            }
            let rest = self.reduce_with_tables(row.clone())?;
            if !rest.is_zero() {
                return Err(Error::Internal(format!(
                    "genus {}: filtered relations collapse a basis element below degree {degree}: {rest}",
                    self.genus
                )));
            }
        }
        for (m, p) in pivots {
            table.insert(m, rows[p].clone());
        }
        Ok(table)
    }

    /// Repeatedly cancels the largest non-basis monomial with its reducer.
    fn reduce_with_tables(&self, mut x: Element<C>) -> Result<Element<C>> {
        loop {
            let Some((m, c)) = x
                .terms()
                .rev()
                .find(|(m, _)| !self.is_basis(m))
                .map(|(m, c)| (m.clone(), c.clone()))
            else {
                return Ok(x);
            };
            let reducer = self
                .reducers
                .get(&m.degree())
                .and_then(|t| t.get(&m))
                .ok_or_else(|| {
                    Error::Internal(format!("no reducer for degree {}", m.degree()))
                })?;
            x.add_scaled(&-c, reducer)?;
        }
    }

    fn coordinates_of_reduced(&self, x: &Element<C>) -> Result<Vec<C>> {
        let mut v = vec![C::zero(); self.basis.len()];
        for (m, c) in x.terms() {
            let i = self
                .basis_index
                .get(m)
                .ok_or_else(|| Error::Internal("unreduced term".into()))?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    fn element_from_coordinates(&self, v: &[C]) -> Element<C> {
        Element::from_terms(
            &self.sig,
            self.basis.iter().cloned().zip(v.iter().cloned()),
        )
    }

    fn monomial_coordinates(&self, m: &Monomial) -> Vec<C> {
        let mut v = vec![C::zero(); self.basis.len()];
        // 1 is always a basis monomial for g >= 1
        v[self.basis_index[&Monomial::one(&self.sig)]] = C::one();
        for t in 0..3 {
            for _ in 0..m.exponent(t) {
                let mut next = vec![C::zero(); self.basis.len()];
                for (j, vj) in v.iter().enumerate() {
                    if vj.is_zero() {
                        continue;
                    }
                    for (k, entry) in self.mult[t][j].iter().enumerate() {
                        if !entry.is_zero() {
                            next[k] = next[k].clone() + vj.clone() * entry.clone();
                        }
                    }
                }
                v = next;
            }
        }
        v
    }

    /// Coordinates of the normal form of `x` in [`Self::basis`].
    pub fn coordinates(&self, x: &Element<C>) -> Result<Vec<C>> {
        if x.signature() != &self.sig && **x.signature() != *self.sig {
            return Err(Error::SignatureMismatch);
        }
        if let Some(d) = x.top_degree() {
            if d > self.degree_bound {
                return Err(Error::DegreeBoundExceeded {
                    degree: d,
                    bound: self.degree_bound,
                });
            }
        }
        let mut v = vec![C::zero(); self.basis.len()];
        let mut memo: HashMap<&Monomial, Vec<C>> = HashMap::new();
        for (m, c) in x.terms() {
            let coords = memo.entry(m).or_insert_with(|| self.monomial_coordinates(m));
            for (acc, e) in v.iter_mut().zip(coords.iter()) {
                if !e.is_zero() {
                    *acc = acc.clone() + c.clone() * e.clone();
                }
            }
        }
        Ok(v)
    }

    /// The unique representative of `x` supported on basis monomials.
    pub fn normal_form(&self, x: &Element<C>) -> Result<Element<C>> {
        Ok(self.element_from_coordinates(&self.coordinates(x)?))
    }

    /// Product in the quotient.
    pub fn multiply(&self, x: &Element<C>, y: &Element<C>) -> Result<Element<C>> {
        let x = self.normal_form(x)?;
        let y = self.normal_form(y)?;
        self.normal_form(&x.multiply(&y)?)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn relations(&self) -> &[Element<C>; 3] {
        &self.relations
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_elements(&self) -> Vec<Element<C>> {
        self.basis
            .iter()
            .map(|m| Element::from_term(&self.sig, m.clone(), C::one()))
            .collect()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }
}

/// `C(g + 2, 3)`, the number of basis monomials.
pub fn expected_dimension(g: u32) -> u128 {
    binomial(g as i64 + 2, 3)
}

/// Dimension of each even degree `0, 2, ..., 6g - 6` of `Q[α, β, γ]/I_g`.
/// Entry `k` is the dimension in degree `2k`.
pub fn poincare_polynomial(g: u32) -> Vec<u64> {
    let top = (3 * g).saturating_sub(3) as usize;
    let mut dims = vec![0u64; top + 1];
    for a in 0..g {
        for b in 0..g - a {
            for c in 0..g - a - b {
                dims[(a + 2 * b + 3 * c) as usize] += 1;
            }
        }
    }
    dims
}
