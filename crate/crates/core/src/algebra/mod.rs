//! Sparse graded-commutative algebra over an exact field.
//!
//! An algebra is described by a [`Signature`]: even generators (which
//! commute with everything), odd generators (which anticommute among
//! themselves and square to zero) and a truncation rule. Every ring used by
//! the crate is an instance: `Q[α, β, γ]`, the exterior algebra of the
//! Jacobian, the surface-Jacobian tensor algebra, and `H*(J)[h]`.

mod element;
pub mod json;
mod monomial;
mod signature;
pub mod text;

pub use element::Element;
pub use monomial::{koszul_sign, Exponents, Monomial};
pub use signature::{iter_bits, Generator, GeneratorRef, Signature, SurfaceRule, Truncation, MAX_ODD};

impl<C: crate::scalar::Coefficient> Element<C> {
    pub fn parse(text: &str, sig: &std::sync::Arc<Signature>) -> crate::Result<Self> {
        text::parse(text, sig)
    }

    pub fn to_text_with(&self, rename: &dyn Fn(&str) -> String) -> String {
        text::to_text(self, rename)
    }

    pub fn to_json(&self) -> Vec<json::TermJson> {
        json::to_json(self, &|s| s.to_string())
    }

    pub fn to_json_with(&self, rename: &dyn Fn(&str) -> String) -> Vec<json::TermJson> {
        json::to_json(self, rename)
    }

    pub fn from_json(terms: &[json::TermJson], sig: &std::sync::Arc<Signature>) -> crate::Result<Self> {
        json::from_json(terms, sig)
    }
}
