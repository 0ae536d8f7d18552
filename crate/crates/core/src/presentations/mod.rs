//! Builders for the Sklyanin and Cuntz-Krieger presentations, the auxiliary
//! ideals `I₀`, `J₀`, `Ω₀`, and the claim pipelines that tie them together.

mod matrix;
mod verify;

pub use matrix::{
    lemma2_back_substitution, lemma2_solve, similarity_check, similarity_matrices, specialized_matrix, Matrix2,
    SimilarityReport,
};
pub use verify::{verify, Claim, ClaimOptions, Mode};

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::coeff::{CoeffError, Coefficient, ConjugationSpec, Var};
use crate::ideal::{IdealError, Presentation};
use crate::ncpoly::{Alphabet, InvolutionSpec, NcPoly};

pub const ALPHA: Var = 0;
pub const ALPHA_BAR: Var = 1;
pub const BETA: Var = 2;
pub const BETA_BAR: Var = 3;
pub const GAMMA: Var = 4;
pub const GAMMA_BAR: Var = 5;
pub const B: Var = 6;
pub const LAMBDA: Var = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("parameters violate alpha + beta + gamma + alpha*beta*gamma = 0 (residual {0})")]
    ConstraintViolated(String),
    #[error("matrix row {0} is zero")]
    ZeroRow(usize),
    #[error("matrix column {0} is zero")]
    ZeroColumn(usize),
    #[error("parameter pole: {0}")]
    Pole(&'static str),
    #[error("b must be an integer >= 2, got {0}")]
    BOutOfRange(i64),
    #[error("alpha = 1: the linear system for x2x1, x4x3 is singular")]
    AlphaIsOne,
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Generators `x1..x4`; parameters `alpha, alpha_bar, beta, beta_bar, gamma,
/// gamma_bar, b, lambda` (indices are the constants in this module).
pub fn standard_alphabet() -> Arc<Alphabet> {
    static CELL: OnceLock<Arc<Alphabet>> = OnceLock::new();
    CELL.get_or_init(|| {
        let gens = (1..=4).map(|i| format!("x{i}")).collect();
        let params = [
            "alpha",
            "alpha_bar",
            "beta",
            "beta_bar",
            "gamma",
            "gamma_bar",
            "b",
            "lambda",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        Arc::new(Alphabet::new(gens, params).expect("distinct names"))
    })
    .clone()
}

/// Conjugation pairing each of alpha, beta, gamma with its formal conjugate;
/// `b` and `lambda` are real.
pub fn symbolic_conjugation() -> ConjugationSpec {
    ConjugationSpec::from_pairs(8, &[(ALPHA, ALPHA_BAR), (BETA, BETA_BAR), (GAMMA, GAMMA_BAR)]).expect("valid pairing")
}

/// `x1* = x2, x3* = x4` with the given scalar conjugation.
pub fn cuntz_krieger_involution(conjugation: ConjugationSpec) -> InvolutionSpec {
    InvolutionSpec::new(vec![1, 0, 3, 2], conjugation).expect("swap is involutive")
}

/// The involution used throughout: generator swap, every parameter real
/// except the formal pairs.
pub fn standard_involution() -> InvolutionSpec {
    cuntz_krieger_involution(symbolic_conjugation())
}

fn c(n: i64) -> Coefficient {
    Coefficient::from_int(n)
}

fn xx(i: u8, j: u8) -> NcPoly {
    NcPoly::word(&[i - 1, j - 1])
}

/// `(b − 2)/(b + 2)` for a coefficient `b`.
pub fn alpha_of(b: &Coefficient) -> Result<Coefficient, CoeffError> {
    (b - &c(2)).checked_div(&(b + &c(2)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SklyaninParams {
    pub alpha: Coefficient,
    pub beta: Coefficient,
    pub gamma: Coefficient,
}

impl SklyaninParams {
    pub fn new(alpha: Coefficient, beta: Coefficient, gamma: Coefficient) -> Result<Self, PresentationError> {
        let p = SklyaninParams { alpha, beta, gamma };
        let r = p.constraint_residual();
        if !r.is_zero() {
            return Err(PresentationError::ConstraintViolated(
                r.fmt_with(standard_alphabet().params()),
            ));
        }
        Ok(p)
    }

    /// Skips the constraint; used to study each relation pair on its own.
    pub fn unconstrained(alpha: Coefficient, beta: Coefficient, gamma: Coefficient) -> Self {
        SklyaninParams { alpha, beta, gamma }
    }

    /// `(α, 1, −1)`.
    pub fn self_adjoint(alpha: Coefficient) -> Self {
        SklyaninParams {
            alpha,
            beta: c(1),
            gamma: c(-1),
        }
    }

    pub fn constraint_residual(&self) -> Coefficient {
        let abg = &(&self.alpha * &self.beta) * &self.gamma;
        &(&(&self.alpha + &self.beta) + &self.gamma) + &abg
    }

    /// α ∈ {0, 1, −1} degenerates the curve but is not an error.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        for v in [0, 1, -1] {
            if self.alpha == c(v) {
                w.push(format!("alpha = {v}: associated curve is degenerate"));
            }
        }
        w
    }
}

/// The six quadratic relations, each moved to one side.
pub fn sklyanin_relations(p: &SklyaninParams) -> Vec<NcPoly> {
    let pair = |i: u8, j: u8, k: u8, coef: &Coefficient| {
        let first = &(&xx(1, i) - &xx(i, 1)) - &(&xx(j, k) + &xx(k, j)).scale(coef);
        let second = &(&(&xx(1, i) + &xx(i, 1)) - &xx(j, k)) + &xx(k, j);
        [first, second]
    };
    let mut out = Vec::with_capacity(6);
    out.extend(pair(2, 3, 4, &p.alpha));
    out.extend(pair(3, 4, 2, &p.beta));
    out.extend(pair(4, 2, 3, &p.gamma));
    out
}

pub fn sklyanin(p: &SklyaninParams) -> Result<Presentation, PresentationError> {
    Ok(Presentation::new(
        standard_alphabet(),
        sklyanin_relations(p),
        standard_involution(),
    )?)
}

/// Nonnegative integer 2×2 matrix with no zero row or column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CkMatrix {
    pub a11: u64,
    pub a12: u64,
    pub a21: u64,
    pub a22: u64,
}

impl CkMatrix {
    pub fn new(a11: u64, a12: u64, a21: u64, a22: u64) -> Result<Self, PresentationError> {
        if a11 == 0 && a12 == 0 {
            return Err(PresentationError::ZeroRow(1));
        }
        if a21 == 0 && a22 == 0 {
            return Err(PresentationError::ZeroRow(2));
        }
        if a11 == 0 && a21 == 0 {
            return Err(PresentationError::ZeroColumn(1));
        }
        if a12 == 0 && a22 == 0 {
            return Err(PresentationError::ZeroColumn(2));
        }
        Ok(CkMatrix { a11, a12, a21, a22 })
    }

    /// `B = (b − 1, 1, b − 2, 1)`.
    pub fn for_b(b: i64) -> Result<Self, PresentationError> {
        if b < 2 {
            return Err(PresentationError::BOutOfRange(b));
        }
        let b = b as u64;
        CkMatrix::new(b - 1, 1, b - 2, 1)
    }

    pub fn entries(&self) -> [Coefficient; 4] {
        [self.a11, self.a12, self.a21, self.a22].map(|v| c(v as i64))
    }
}

/// The three relations of the dense subalgebra with entries `[a11, a12, a21, a22]`.
pub fn cuntz_krieger_relations(a: &[Coefficient; 4]) -> Vec<NcPoly> {
    let [a11, a12, a21, a22] = a;
    vec![
        &(&xx(2, 1) - &xx(1, 2).scale(a11)) - &xx(3, 4).scale(a12),
        &(&xx(4, 3) - &xx(1, 2).scale(a21)) - &xx(3, 4).scale(a22),
        &(&xx(1, 2) + &xx(3, 4)) - &NcPoly::one(),
    ]
}

pub fn cuntz_krieger(a: &CkMatrix) -> Result<Presentation, PresentationError> {
    cuntz_krieger_with_entries(&a.entries())
}

/// Same as [`cuntz_krieger`] with coefficient entries, e.g. `b − 1` for symbolic `b`.
pub fn cuntz_krieger_with_entries(a: &[Coefficient; 4]) -> Result<Presentation, PresentationError> {
    Ok(Presentation::new(
        standard_alphabet(),
        cuntz_krieger_relations(a),
        standard_involution(),
    )?)
}

/// `x1 x2 + x3 x4 − 1`.
pub fn ideal_i0() -> Vec<NcPoly> {
    vec![&(&xx(1, 2) + &xx(3, 4)) - &NcPoly::one()]
}

/// `x1x3 − x4x2`, `x3x1 + x2x4`, `x1x4 + x3x2`, `x4x1 − x2x3`.
pub fn ideal_j0() -> Vec<NcPoly> {
    vec![
        &xx(1, 3) - &xx(4, 2),
        &xx(3, 1) + &xx(2, 4),
        &xx(1, 4) + &xx(3, 2),
        &xx(4, 1) - &xx(2, 3),
    ]
}

/// `x1² + x4²`, `x2² + x3²`.
pub fn ideal_omega0() -> Vec<NcPoly> {
    vec![&xx(1, 1) + &xx(4, 4), &xx(2, 2) + &xx(3, 3)]
}

/// `Ω₁ = Σ xᵢ²` and `Ω₂ = x2² + (1+β)/(1−γ) x3² + (1−β)/(1+α) x4²`.
pub fn omega_central(p: &SklyaninParams) -> Result<[NcPoly; 2], PresentationError> {
    let one = c(1);
    let d3 = &one - &p.gamma;
    let d4 = &one + &p.alpha;
    if d3.is_zero() {
        return Err(PresentationError::Pole("gamma = 1"));
    }
    if d4.is_zero() {
        return Err(PresentationError::Pole("alpha = -1"));
    }
    let c3 = (&one + &p.beta).checked_div(&d3)?;
    let c4 = (&one - &p.beta).checked_div(&d4)?;
    let o1 = &(&(&xx(1, 1) + &xx(2, 2)) + &xx(3, 3)) + &xx(4, 4);
    let o2 = &(&xx(2, 2) + &xx(3, 3).scale(&c3)) + &xx(4, 4).scale(&c4);
    Ok([o1, o2])
}

/// Commutators `[Ω, xᵢ]` for each generator (degree 3, homogeneous).
pub fn commutators_with_generators(omega: &NcPoly) -> Vec<NcPoly> {
    (0..4)
        .map(|g| {
            let x = NcPoly::generator(g);
            &(omega * &x) - &(&x * omega)
        })
        .collect()
}
