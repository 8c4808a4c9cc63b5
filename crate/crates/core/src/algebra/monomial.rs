use smallvec::SmallVec;

use super::signature::{iter_bits, Signature, Truncation};

pub type Exponents = SmallVec<[u32; 4]>;

/// A canonical monomial: dense even exponents (in signature order) and the
/// set of odd generators as a bit mask, read in ascending index order.
///
/// The derived ordering is degree-lexicographic on
/// `(total degree, even exponents, odd mask)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    even: Exponents,
    odd: u64,
}

impl Monomial {
    pub fn one(sig: &Signature) -> Self {
        Monomial {
            degree: 0,
            even: smallvec::smallvec![0; sig.even().len()],
            odd: 0,
        }
    }

    /// Builds a monomial from raw parts. `even` must have one entry per even
    /// generator; `odd` must only use bits of existing odd generators.
    pub fn from_parts(sig: &Signature, even: &[u32], odd: u64) -> Self {
        assert_eq!(even.len(), sig.even().len(), "exponent vector length");
        assert!(
            sig.odd().len() == 64 || odd >> sig.odd().len() == 0,
            "odd mask uses unknown generators"
        );
        let degree = even
            .iter()
            .zip(sig.even())
            .map(|(e, g)| e * g.degree)
            .sum::<u32>()
            + sig.odd_degree(odd);
        Monomial {
            degree,
            even: even.iter().copied().collect(),
            odd,
        }
    }

    pub fn even_generator(sig: &Signature, idx: usize, exp: u32) -> Self {
        let mut even: Exponents = smallvec::smallvec![0; sig.even().len()];
        even[idx] = exp;
        Monomial {
            degree: exp * sig.even()[idx].degree,
            even,
            odd: 0,
        }
    }

    /// Canonicalizes the ordered product of odd generators `word`.
    /// Returns `None` when a generator repeats, otherwise the monomial and
    /// the sign of the sorting permutation.
    pub fn from_odd_word(sig: &Signature, word: &[usize]) -> Option<(Self, i8)> {
        let mut mask = 0u64;
        let mut sign = 1i8;
        for &idx in word {
            let bit = 1u64 << idx;
            if mask & bit != 0 {
                return None;
            }
            // generators already placed with larger index must be jumped over
            if (mask >> idx).count_ones() % 2 == 1 {
                sign = -sign;
            }
            mask |= bit;
        }
        Some((Monomial::from_parts(sig, &vec![0; sig.even().len()], mask), sign))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn even(&self) -> &[u32] {
        &self.even
    }

    pub fn exponent(&self, idx: usize) -> u32 {
        self.even[idx]
    }

    pub fn odd(&self) -> u64 {
        self.odd
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Product of canonical monomials with Koszul sign and truncation.
    /// `None` means the product vanishes.
    pub fn mul(&self, other: &Monomial, sig: &Signature) -> Option<(Monomial, i8)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let sign = koszul_sign(self.odd, other.odd);
        let even = self
            .even
            .iter()
            .zip(other.even.iter())
            .map(|(a, b)| a + b)
            .collect();
        let product = Monomial {
            degree: self.degree + other.degree,
            even,
            odd: self.odd | other.odd,
        };
        let (product, trunc_sign) = truncate(product, sig)?;
        Some((product, sign * trunc_sign))
    }

    /// Replaces the exponent of even generator `idx`, fixing the degree.
    pub fn with_exponent(&self, sig: &Signature, idx: usize, exp: u32) -> Monomial {
        let mut m = self.clone();
        let gen_degree = sig.even()[idx].degree;
        m.degree = m.degree - m.even[idx] * gen_degree + exp * gen_degree;
        m.even[idx] = exp;
        m
    }

    /// Whether `self` divides `other` (even exponents componentwise,
    /// odd part as a subset).
    pub fn divides(&self, other: &Monomial) -> bool {
        self.odd & !other.odd == 0 && self.even.iter().zip(&other.even).all(|(a, b)| a <= b)
    }
}

/// Sign of reordering the word `a` followed by `b` (each ascending) into
/// ascending order: one transposition per pair `i in a`, `j in b`, `i > j`.
pub fn koszul_sign(a: u64, b: u64) -> i8 {
    let mut inversions = 0u32;
    for j in iter_bits(b) {
        let above = if j >= 63 { 0 } else { a >> (j + 1) };
        inversions += above.count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn truncate(mut m: Monomial, sig: &Signature) -> Option<(Monomial, i8)> {
    match sig.truncation() {
        Truncation::None => Some((m, 1)),
        Truncation::ExteriorTop(bound) => (sig.odd_degree(m.odd) <= *bound).then_some((m, 1)),
        Truncation::Surface { rule, exterior_top } => {
            if let Some(bound) = exterior_top {
                if sig.odd_degree(m.odd & !rule.odd_mask()) > *bound {
                    return None;
                }
            }
            let surface = m.odd & rule.odd_mask();
            let k = surface.count_ones();
            let fundamental = m.even[rule.fundamental];
            if k + 2 * fundamental > 2 {
                return None;
            }
            if k < 2 {
                return Some((m, 1));
            }
            let mut bits = iter_bits(surface);
            let (i, j) = (bits.next()?, bits.next()?);
            if j - i != rule.genus {
                return None;
            }
            // move γ_i then γ_j to the front; γ_i γ_j = [Σ] is even
            let below = |idx: usize| (m.odd & ((1u64 << idx) - 1)).count_ones();
            let swaps = below(i) + below(j) - 1;
            m.odd &= !((1u64 << i) | (1u64 << j));
            m.even[rule.fundamental] += 1;
            Some((m, if swaps % 2 == 0 { 1 } else { -1 }))
        }
    }
}
