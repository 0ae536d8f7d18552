//! Exact scalars: rationals, sparse commutative polynomials and the rational
//! function field they generate.
//!
//! Parameters are referred to by index into a per-session name list (see
//! [`crate::ncpoly::Alphabet`]); values never carry the names themselves, so a
//! session must not mix indices from different lists.

mod monomial;
mod multipoly;
mod ratfn;

pub use monomial::{Monomial, Var};
pub use multipoly::{fmt_rational, int, rat, univariate, MultiPoly};
pub use num_rational::BigRational;
pub use ratfn::Coefficient;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution makes denominator {denominator} vanish")]
    Pole { denominator: String },
    #[error("parameter has no binding")]
    UnboundParameter,
    #[error("conjugation map is not an involution")]
    NotInvolutive,
}

/// Self-inverse permutation of parameter indices modelling complex
/// conjugation: paired parameters are formal conjugates, fixed ones are real.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConjugationSpec {
    perm: Vec<Var>,
}

impl ConjugationSpec {
    pub fn identity(n: usize) -> Self {
        ConjugationSpec {
            perm: (0..n as Var).collect(),
        }
    }

    pub fn from_pairs(n: usize, pairs: &[(Var, Var)]) -> Result<Self, CoeffError> {
        let mut perm: Vec<Var> = (0..n as Var).collect();
        for &(a, b) in pairs {
            if a as usize >= n || b as usize >= n {
                return Err(CoeffError::NotInvolutive);
            }
            perm[a as usize] = b;
            perm[b as usize] = a;
        }
        Self::from_perm(perm)
    }

    pub fn from_perm(perm: Vec<Var>) -> Result<Self, CoeffError> {
        let n = perm.len();
        for (i, &p) in perm.iter().enumerate() {
            if p as usize >= n || perm[p as usize] as usize != i {
                return Err(CoeffError::NotInvolutive);
            }
        }
        Ok(ConjugationSpec { perm })
    }

    pub fn apply(&self, v: Var) -> Var {
        self.perm.get(v as usize).copied().unwrap_or(v)
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_real(&self, v: Var) -> bool {
        self.apply(v) == v
    }

    /// Identifies `v` with its partner: both become real.
    pub fn make_real(&self, v: Var) -> Self {
        let mut perm = self.perm.clone();
        let w = self.apply(v);
        perm[v as usize] = v;
        perm[w as usize] = w;
        ConjugationSpec { perm }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_spec_validation() {
        let c = ConjugationSpec::from_pairs(3, &[(0, 2)]).unwrap();
        assert_eq!(c.apply(0), 2);
        assert_eq!(c.apply(2), 0);
        assert!(c.is_real(1));
        assert!(ConjugationSpec::from_perm(vec![1, 2, 0]).is_err());
        assert!(c.make_real(0).is_identity());
    }
}
