use std::ops::Mul;

use crate::coeff::{CoeffError, Coefficient};
use crate::ncpoly::{NcPoly, Word};

use super::{sklyanin_relations, PresentationError, SklyaninParams};

/// 2×2 matrix over [`Coefficient`], row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix2 {
    pub m: [[Coefficient; 2]; 2],
}

impl Matrix2 {
    pub fn new(a: Coefficient, b: Coefficient, c: Coefficient, d: Coefficient) -> Self {
        Matrix2 { m: [[a, b], [c, d]] }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Matrix2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Matrix2::from_ints(1, 0, 0, 1)
    }

    pub fn trace(&self) -> Coefficient {
        &self.m[0][0] + &self.m[1][1]
    }

    pub fn det(&self) -> Coefficient {
        &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0])
    }

    pub fn map(&self, f: impl Fn(&Coefficient) -> Result<Coefficient, CoeffError>) -> Result<Self, CoeffError> {
        Ok(Matrix2::new(
            f(&self.m[0][0])?,
            f(&self.m[0][1])?,
            f(&self.m[1][0])?,
            f(&self.m[1][1])?,
        ))
    }

    pub fn entries(&self) -> [&Coefficient; 4] {
        [&self.m[0][0], &self.m[0][1], &self.m[1][0], &self.m[1][1]]
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let e = self.entries().map(|c| c.fmt_with(names));
        format!("[[{}, {}], [{}, {}]]", e[0], e[1], e[2], e[3])
    }
}

impl Mul for &Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: &Matrix2) -> Matrix2 {
        let e = |i: usize, j: usize| &(&self.m[i][0] * &rhs.m[0][j]) + &(&self.m[i][1] * &rhs.m[1][j]);
        Matrix2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

fn w(i: u8, j: u8) -> Word {
    Word::from_gens(&[i - 1, j - 1])
}

/// Solves the first Sklyanin pair for `(x2x1, x4x3)` in terms of
/// `(x1x2, x3x4)`; the result `M` satisfies `(x2x1, x4x3)ᵀ = M (x1x2, x3x4)ᵀ`.
pub fn lemma2_solve(alpha: &Coefficient) -> Result<Matrix2, PresentationError> {
    let rels = sklyanin_relations(&SklyaninParams::self_adjoint(alpha.clone()));
    let pair = &rels[..2];
    // a·x2x1 + b·x4x3 = −c·x1x2 − d·x3x4 for each relation
    let lhs = Matrix2::new(
        pair[0].coeff(&w(2, 1)),
        pair[0].coeff(&w(4, 3)),
        pair[1].coeff(&w(2, 1)),
        pair[1].coeff(&w(4, 3)),
    );
    let rhs = Matrix2::new(
        -pair[0].coeff(&w(1, 2)),
        -pair[0].coeff(&w(3, 4)),
        -pair[1].coeff(&w(1, 2)),
        -pair[1].coeff(&w(3, 4)),
    );
    let det = lhs.det();
    if det.is_zero() {
        return Err(PresentationError::AlphaIsOne);
    }
    let inv_det = det.inv()?;
    let [a, b, c, d] = lhs.entries();
    let adj = Matrix2::new(d.clone(), -b, -c, a.clone());
    let m = &adj * &rhs;
    Ok(m.map(|x| Ok(x * &inv_det))?)
}

/// Substitutes `x2x1 ↦ M₁₁x1x2 + M₁₂x3x4`, `x4x3 ↦ M₂₁x1x2 + M₂₂x3x4` into the
/// first Sklyanin pair and returns the two results (both zero when `M` solves it).
pub fn lemma2_back_substitution(alpha: &Coefficient, m: &Matrix2) -> Vec<NcPoly> {
    let rels = sklyanin_relations(&SklyaninParams::self_adjoint(alpha.clone()));
    let x12 = NcPoly::monomial(w(1, 2), Coefficient::one());
    let x34 = NcPoly::monomial(w(3, 4), Coefficient::one());
    let rules = vec![
        (w(2, 1), &x12.scale(&m.m[0][0]) + &x34.scale(&m.m[0][1])),
        (w(4, 3), &x12.scale(&m.m[1][0]) + &x34.scale(&m.m[1][1])),
    ];
    rels[..2].iter().map(|r| r.replace_words(&rules)).collect()
}

/// `[[b/2, 1 − b/2], [−1 − b/2, b/2]]`.
pub fn specialized_matrix(b: &Coefficient) -> Matrix2 {
    let half = Coefficient::ratio_int(1, 2).expect("nonzero");
    let hb = b * &half;
    let one = Coefficient::one();
    Matrix2::new(hb.clone(), &one - &hb, -(&one + &hb), hb)
}

/// `(S, M, T, B)` with `S·M·T = B`: `S = [[1/2, −1/2], [1, 0]]`,
/// `T = [[0, 1], [−2, 1]]`, `B = [[b − 1, 1], [b − 2, 1]]`.
pub fn similarity_matrices(b: &Coefficient) -> (Matrix2, Matrix2, Matrix2, Matrix2) {
    let h = Coefficient::ratio_int(1, 2).expect("nonzero");
    let s = Matrix2::new(h.clone(), -&h, 1.into(), 0.into());
    let t = Matrix2::from_ints(0, 1, -2, 1);
    let one = Coefficient::one();
    let bm = Matrix2::new(b - &one, one.clone(), b - &Coefficient::from_int(2), one);
    (s, specialized_matrix(b), t, bm)
}

#[derive(Debug, Clone)]
pub struct SimilarityReport {
    pub product: Matrix2,
    pub product_matches: bool,
    pub st_is_identity: bool,
    pub traces: (Coefficient, Coefficient),
    pub determinants: (Coefficient, Coefficient),
}

impl SimilarityReport {
    pub fn traces_agree(&self) -> bool {
        self.traces.0 == self.traces.1
    }

    pub fn determinants_agree(&self) -> bool {
        self.determinants.0 == self.determinants.1
    }

    pub fn passed(&self) -> bool {
        self.product_matches && self.st_is_identity && self.traces_agree() && self.determinants_agree()
    }
}

/// Checks `S·M·T = B` and `S·T = I`, so `B = S M S⁻¹`.
pub fn similarity_check(s: &Matrix2, m: &Matrix2, t: &Matrix2, b: &Matrix2) -> SimilarityReport {
    let product = &(s * m) * t;
    SimilarityReport {
        product_matches: product == *b,
        st_is_identity: s * t == Matrix2::identity(),
        traces: (m.trace(), b.trace()),
        determinants: (m.det(), b.det()),
        product,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{alpha_of, ALPHA, B};

    fn alpha() -> Coefficient {
        Coefficient::param(ALPHA)
    }

    fn b() -> Coefficient {
        Coefficient::param(B)
    }

    fn q(n: i64, d: i64) -> Coefficient {
        Coefficient::ratio_int(n, d).unwrap()
    }

    #[test]
    fn solve_symbolic() {
        let m = lemma2_solve(&alpha()).unwrap();
        let one = Coefficient::one();
        let d = &one - &alpha();
        let expect = Matrix2::new(
            (&one + &alpha()).checked_div(&d).unwrap(),
            (&Coefficient::from_int(-2) * &alpha()).checked_div(&d).unwrap(),
            Coefficient::from_int(-2).checked_div(&d).unwrap(),
            (&one + &alpha()).checked_div(&d).unwrap(),
        );
        assert_eq!(m, expect);
        assert!(lemma2_back_substitution(&alpha(), &m).iter().all(|p| p.is_zero()));
    }

    #[test]
    fn solve_specializes_in_b() {
        let a = alpha_of(&b()).unwrap();
        let m = lemma2_solve(&a).unwrap();
        assert_eq!(m, specialized_matrix(&b()));
        assert_eq!(lemma2_solve(&Coefficient::one()), Err(PresentationError::AlphaIsOne));
    }

    #[test]
    fn similarity_symbolic() {
        let (s, m, t, bm) = similarity_matrices(&b());
        let rep = similarity_check(&s, &m, &t, &bm);
        assert!(rep.passed());
        assert_eq!(rep.traces.0, b());
        assert_eq!(rep.determinants.1, Coefficient::one());
    }

    #[test]
    fn identity_similarity_fails_when_matrices_differ() {
        let i = Matrix2::identity();
        let rep = similarity_check(&i, &Matrix2::from_ints(1, 2, 3, 4), &i, &Matrix2::from_ints(4, 3, 2, 1));
        assert!(!rep.passed());
        assert!(rep.st_is_identity);
    }

    #[test]
    fn specialized_matrix_at_b3() {
        let m = specialized_matrix(&Coefficient::from_int(3));
        assert_eq!(m, Matrix2::new(q(3, 2), q(-1, 2), q(-5, 2), q(3, 2)));
    }
}
