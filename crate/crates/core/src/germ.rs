use std::fmt;

use thiserror::Error;

use crate::algebra::{Poly, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("component P{component} has a nonzero constant term; the germ must fix the origin")]
    ConstantTerm { component: usize },
    #[error("all three components are zero")]
    AllZero,
    #[error("components must be polynomials in (s, t)")]
    WrongRing,
    #[error("component P{component} is not weighted homogeneous for the declared weights ({w1}, {w2})")]
    WeightsMismatch { component: usize, w1: u32, w2: u32 },
}

/// A map germ `(C^2, 0) -> (C^3, 0)` given by three polynomials in `(s, t)`
/// vanishing at the origin.
#[derive(Clone, PartialEq, Eq)]
pub struct Germ {
    components: [Poly; 3],
    name: Option<String>,
}

impl Germ {
    pub fn new(components: [Poly; 3], name: Option<String>) -> Result<Self, GermError> {
        let ring = Ring::source();
        if components.iter().any(|c| *c.ring() != ring) {
            return Err(GermError::WrongRing);
        }
        if let Some(k) = components.iter().position(|c| !c.constant_term().is_zero()) {
            return Err(GermError::ConstantTerm { component: k + 1 });
        }
        if components.iter().all(Poly::is_zero) {
            return Err(GermError::AllZero);
        }
        Ok(Germ { components, name })
    }

    pub fn components(&self) -> &[Poly; 3] {
        &self.components
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// `Φ ∘ (a, b)` for a pair of polynomials in `(s, t)`.
    pub fn precompose(&self, a: &Poly, b: &Poly) -> Result<Germ, GermError> {
        let images = [a.clone(), b.clone()];
        let comps = self.components.clone().map(|c| c.compose(&images).expect("source ring"));
        Germ::new(comps, self.name.clone())
    }

    /// `M ∘ Φ` for a 3×3 matrix of scalars.
    pub fn postcompose_linear(&self, m: &[[crate::Scalar; 3]; 3]) -> Result<Germ, GermError> {
        let ring = Ring::source();
        let comps = std::array::from_fn(|r| {
            (0..3).fold(Poly::zero(&ring), |acc, c| &acc + &self.components[c].scale(&m[r][c]))
        });
        Germ::new(comps, self.name.clone())
    }

    pub(crate) fn check_declared_weights(&self, w1: u32, w2: u32) -> Result<(), GermError> {
        for (k, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !matches!(c.weighted_degree(&[w1, w2]), Ok(Some(_))) {
                return Err(GermError::WeightsMismatch { component: k + 1, w1, w2 });
            }
        }
        Ok(())
    }

    /// The components as a comma-separated list, parseable by
    /// [`crate::parser::GermSource::from_list`].
    pub fn to_list_string(&self) -> String {
        format!("{}, {}, {}", self.components[0], self.components[1], self.components[2])
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_list_string())
    }
}

impl fmt::Debug for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Germ{}", self)
    }
}
