//! Commutative side: the substitution chain taking the two quadrics in `P³`
//! to the Legendre cubic, and invariants of the curves `y² = x(x−1)(x−λ)`.
//!
//! The first step substitutes squares of variables (`u² ↦ T²`, ...), which is
//! not a ring map on all polynomials. It is applied on the subring generated
//! by the squared variables only; any odd exponent is reported as an error.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::coeff::{int, rat, univariate, Coefficient, Monomial, MultiPoly, Var};
use crate::linalg::{EchelonBasis, SparseVec};
use crate::presentations::{alpha_of, B, LAMBDA};

pub const ALPHA: Var = 0;
pub const X: Var = 1;
pub const Y: Var = 2;
pub const Z: Var = 3;
pub const U: Var = 4;
pub const V: Var = 5;
pub const W: Var = 6;
pub const CAP_X: Var = 7;
pub const CAP_Y: Var = 8;
pub const CAP_Z: Var = 9;
pub const CAP_T: Var = 10;

/// Variable names of the curve ring, indexed by the constants above.
pub fn curve_var_names() -> Vec<String> {
    ["alpha", "x", "y", "z", "u", "v", "w", "X", "Y", "Z", "T"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("variable {0} occurs to an odd power; square substitution does not apply")]
    OddPower(String),
    #[error("b must be an integer >= 2, got {0}")]
    BOutOfRange(i64),
}

fn p(v: Var) -> MultiPoly {
    MultiPoly::var(v)
}

fn k(n: i64) -> MultiPoly {
    MultiPoly::from_int(n)
}

fn sq(v: Var) -> MultiPoly {
    p(v).pow(2)
}

/// The symbolic parameter `α` of the curve ring.
pub fn symbolic_alpha() -> MultiPoly {
    p(ALPHA)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricSystem {
    pub polys: Vec<MultiPoly>,
}

impl QuadricSystem {
    pub fn fmt_with(&self) -> Vec<String> {
        let names = curve_var_names();
        self.polys.iter().map(|q| q.fmt_with(&names)).collect()
    }
}

/// `(1−α)v² + (1+α)w² + 2z²` and `u² + v² + w² + z²`.
pub fn quadrics_eq19(alpha: &MultiPoly) -> QuadricSystem {
    let one = MultiPoly::one();
    let first = one
        .sub(alpha)
        .mul(&sq(V))
        .add(&one.add(alpha).mul(&sq(W)))
        .add(&sq(Z).scale(&int(2)));
    let second = sq(U).add(&sq(V)).add(&sq(W)).add(&sq(Z));
    QuadricSystem {
        polys: vec![first, second],
    }
}

/// `αX² + Z² − T²` and `X² + Y² − T²`.
pub fn target_quadrics(alpha: &MultiPoly) -> QuadricSystem {
    QuadricSystem {
        polys: vec![
            alpha.mul(&sq(CAP_X)).add(&sq(CAP_Z)).sub(&sq(CAP_T)),
            sq(CAP_X).add(&sq(CAP_Y)).sub(&sq(CAP_T)),
        ],
    }
}

/// Images of `u², v², w², z²` in terms of `X, Y, Z, T`.
pub fn square_images() -> Vec<(Var, MultiPoly)> {
    let half = rat(1, 2);
    let common = sq(CAP_Y).scale(&half).sub(&sq(CAP_Z).scale(&half)).sub(&sq(CAP_T));
    vec![
        (U, sq(CAP_T)),
        (V, common.clone()),
        (W, sq(CAP_X).add(&common)),
        (Z, sq(CAP_Z)),
    ]
}

/// Replaces `v^(2k)` by `image^k` for every mapped variable.
pub fn substitute_squares(poly: &MultiPoly, images: &[(Var, MultiPoly)]) -> Result<MultiPoly, CurveError> {
    let names = curve_var_names();
    let mut acc = MultiPoly::zero();
    for (m, c) in poly.terms() {
        let mut t = MultiPoly::constant(c.clone());
        let mut rest = Vec::new();
        for &(v, e) in m.pairs() {
            match images.iter().find(|(w, _)| *w == v) {
                Some((_, img)) => {
                    if e % 2 == 1 {
                        return Err(CurveError::OddPower(names.get(v as usize).cloned().unwrap_or_default()));
                    }
                    t = t.mul(&img.pow(e / 2));
                }
                None => rest.push((v, e)),
            }
        }
        acc = acc.add(&t.mul_monomial(&Monomial::from_pairs(rest), &BigRational::one()));
    }
    Ok(acc)
}

/// Coefficient vector of a polynomial over the non-`α` monomials, entries in `Q(α)`.
fn alpha_coefficients(poly: &MultiPoly) -> SparseVec<Monomial, Coefficient> {
    poly.split_coefficients(|v| v == ALPHA)
        .into_iter()
        .map(|(m, c)| (m, Coefficient::from_poly(c)))
        .collect()
}

/// Expresses each target in the span of `basis` over `Q(α)`.
pub fn span_coordinates(targets: &[MultiPoly], basis: &[MultiPoly]) -> Vec<Option<Vec<Coefficient>>> {
    let mut ech = EchelonBasis::new();
    for (i, b) in basis.iter().enumerate() {
        ech.insert(alpha_coefficients(b), i);
    }
    targets
        .iter()
        .map(|t| {
            ech.express(&alpha_coefficients(t)).map(|combo| {
                let mut coords = vec![Coefficient::zero(); basis.len()];
                for (i, c) in combo {
                    coords[i] = c;
                }
                coords
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct SquareStepReport {
    /// Images of the two quadrics.
    pub images: Vec<MultiPoly>,
    /// Coordinates of each image against the two target relations.
    pub coordinates: Vec<Option<Vec<Coefficient>>>,
    /// Coordinates of each target relation against the two images.
    pub inverse_coordinates: Vec<Option<Vec<Coefficient>>>,
}

impl SquareStepReport {
    pub fn passed(&self) -> bool {
        self.coordinates.iter().all(|c| c.is_some()) && self.inverse_coordinates.iter().all(|c| c.is_some())
    }
}

/// Substitutes the square images into both quadrics and checks that the
/// results and the target relations span the same space over `Q(α)`.
pub fn verify_eq20_step(alpha: &MultiPoly) -> Result<SquareStepReport, CurveError> {
    let images = quadrics_eq19(alpha)
        .polys
        .iter()
        .map(|q| substitute_squares(q, &square_images()))
        .collect::<Result<Vec<_>, _>>()?;
    let target = target_quadrics(alpha).polys;
    Ok(SquareStepReport {
        coordinates: span_coordinates(&images, &target),
        inverse_coordinates: span_coordinates(&target, &images),
        images,
    })
}

/// `X = −2y`, `Y = x² − 1 + α`, `Z = x² + 2(1−α)x + 1 − α`, `T = x² + 2x + 1 − α`.
pub fn parametrization_map(alpha: &MultiPoly) -> Vec<(Var, MultiPoly)> {
    let one = MultiPoly::one();
    let x2 = sq(X);
    let one_minus = one.sub(alpha);
    vec![
        (CAP_X, p(Y).scale(&int(-2))),
        (CAP_Y, x2.sub(&one_minus)),
        (CAP_Z, x2.add(&one_minus.mul(&p(X)).scale(&int(2))).add(&one_minus)),
        (CAP_T, x2.add(&p(X).scale(&int(2))).add(&one_minus)),
    ]
}

/// `y² − x(x+1)(x+1−α)`.
pub fn unshifted_cubic(alpha: &MultiPoly) -> MultiPoly {
    let one = MultiPoly::one();
    sq(Y).sub(&p(X).mul(&p(X).add(&one)).mul(&p(X).add(&one).sub(alpha)))
}

#[derive(Debug, Clone)]
pub struct ParametrizationReport {
    /// Images of `αX² + Z² − T²` and `X² + Y² − T²`.
    pub images: Vec<MultiPoly>,
    /// `image_first − 4α·cubic`.
    pub residue_first: MultiPoly,
    /// `image_second − 4·cubic`.
    pub residue_second: MultiPoly,
    /// The extra factor carried by the first image.
    pub alpha_factor: MultiPoly,
}

impl ParametrizationReport {
    pub fn passed(&self) -> bool {
        self.residue_first.is_zero() && self.residue_second.is_zero()
    }
}

pub fn verify_eq22_step(alpha: &MultiPoly) -> ParametrizationReport {
    let map = parametrization_map(alpha);
    let lookup = |v: Var| map.iter().find(|(w, _)| *w == v).map(|(_, q)| q.clone());
    let images: Vec<MultiPoly> = target_quadrics(alpha)
        .polys
        .iter()
        .map(|r| r.compose(&lookup))
        .collect();
    let cubic = unshifted_cubic(alpha);
    let four = k(4);
    let alpha_factor = four.mul(alpha);
    ParametrizationReport {
        residue_first: images[0].sub(&alpha_factor.mul(&cubic)),
        residue_second: images[1].sub(&four.mul(&cubic)),
        alpha_factor,
        images,
    }
}

/// `y² − x(x−1)(x−α)`.
pub fn legendre_affine(alpha: &MultiPoly) -> MultiPoly {
    let one = MultiPoly::one();
    sq(Y).sub(&p(X).mul(&p(X).sub(&one)).mul(&p(X).sub(alpha)))
}

/// `y²z − x(x−z)(x−αz)`.
pub fn legendre_projective(alpha: &MultiPoly) -> MultiPoly {
    sq(Y)
        .mul(&p(Z))
        .sub(&p(X).mul(&p(X).sub(&p(Z))).mul(&p(X).sub(&alpha.mul(&p(Z)))))
}

/// Multiplies each term by a power of `h` so that all terms have the same
/// degree in `vars ∪ {h}`.
pub fn homogenize(poly: &MultiPoly, vars: &[Var], h: Var) -> MultiPoly {
    let deg = |m: &Monomial| vars.iter().map(|&v| m.exponent(v)).sum::<u32>();
    let top = poly.terms().iter().map(|(m, _)| deg(m)).max().unwrap_or(0);
    MultiPoly::from_terms(
        poly.terms()
            .iter()
            .map(|(m, c)| (m.mul(&Monomial::var_pow(h, top - deg(m))), c.clone())),
    )
}

fn is_homogeneous_in(poly: &MultiPoly, vars: &[Var]) -> Option<u32> {
    let mut degs = poly
        .terms()
        .iter()
        .map(|(m, _)| vars.iter().map(|&v| m.exponent(v)).sum::<u32>());
    let d = degs.next()?;
    degs.all(|e| e == d).then_some(d)
}

#[derive(Debug, Clone)]
pub struct ShiftReport {
    /// `y² − x(x+1)(x+1−α)` after `x ↦ x − 1`, minus `y² − x(x−1)(x−α)`.
    pub shift_residue: MultiPoly,
    /// Homogenization of the affine Legendre form minus `y²z − x(x−z)(x−αz)`.
    pub homogenize_residue: MultiPoly,
    /// Projective form at `z = 1` minus the affine form.
    pub dehomogenize_residue: MultiPoly,
    /// Degree in `x, y, z` when homogeneous.
    pub projective_degree: Option<u32>,
}

impl ShiftReport {
    pub fn passed(&self) -> bool {
        self.shift_residue.is_zero()
            && self.homogenize_residue.is_zero()
            && self.dehomogenize_residue.is_zero()
            && self.projective_degree == Some(3)
    }
}

pub fn shift_and_homogenize(alpha: &MultiPoly) -> ShiftReport {
    let shifted = unshifted_cubic(alpha).compose(&|v| (v == X).then(|| p(X).sub(&MultiPoly::one())));
    let affine = legendre_affine(alpha);
    let projective = legendre_projective(alpha);
    let homog = homogenize(&affine, &[X, Y], Z);
    let dehom = projective.compose(&|v| (v == Z).then(MultiPoly::one));
    ShiftReport {
        shift_residue: shifted.sub(&affine),
        homogenize_residue: homog.sub(&projective),
        dehomogenize_residue: dehom.sub(&affine),
        projective_degree: is_homogeneous_in(&projective, &[X, Y, Z]),
    }
}

/// The Legendre curve `y² = x(x−1)(x−λ)` with its invariants.
#[derive(Debug, Clone)]
pub struct LegendreCurve {
    pub lambda: Coefficient,
    /// Coefficients of `x(x−1)(x−λ)`, constant term first.
    pub cubic: [Coefficient; 4],
    pub discriminant: Coefficient,
    pub j_invariant: Option<Coefficient>,
    pub singular: bool,
}

/// `Δ = 16λ²(λ−1)²`.
pub fn legendre_discriminant(lambda: &Coefficient) -> Coefficient {
    let one = Coefficient::one();
    let lm1 = lambda - &one;
    &Coefficient::from_int(16) * &(&lambda.pow(2) * &lm1.pow(2))
}

pub fn legendre_invariants(lambda: &Coefficient) -> LegendreCurve {
    let one = Coefficient::one();
    let cubic = [Coefficient::zero(), lambda.clone(), -(&one + lambda), one.clone()];
    let discriminant = legendre_discriminant(lambda);
    let singular = discriminant.is_zero();
    let j_invariant = if singular {
        None
    } else {
        let num = &Coefficient::from_int(256) * &(&(&lambda.pow(2) - lambda) + &one).pow(3);
        let den = &lambda.pow(2) * &(lambda - &one).pow(2);
        Some(num.checked_div(&den).expect("nonzero when nonsingular"))
    };
    LegendreCurve {
        lambda: lambda.clone(),
        cubic,
        discriminant,
        j_invariant,
        singular,
    }
}

/// `λ = (b−2)/(b+2)`.
pub fn lambda_for_b(b: i64) -> Result<Coefficient, CurveError> {
    if b < 2 {
        return Err(CurveError::BOutOfRange(b));
    }
    Ok(Coefficient::ratio_int(b - 2, b + 2).expect("b + 2 > 0"))
}

pub fn curve_for_b(b: i64) -> Result<LegendreCurve, CurveError> {
    Ok(legendre_invariants(&lambda_for_b(b)?))
}

/// `y²z − x(x−z)(x−λz)` printed for a rational `λ`.
pub fn projective_equation_string(lambda: &Coefficient) -> String {
    match lambda.as_rational() {
        Some(l) => legendre_projective(&MultiPoly::constant(l)).fmt_with(&curve_var_names()),
        None => legendre_projective(&symbolic_alpha())
            .fmt_with(&curve_var_names())
            .replace("alpha", "lambda"),
    }
}

/// Rational roots (with multiplicity) of a univariate polynomial, or `None`
/// when the constant term is too large to enumerate divisors.
pub fn rational_roots(dense: &[BigRational]) -> Option<Vec<(BigRational, usize)>> {
    let mut poly = dense.to_vec();
    univariate::trim(&mut poly);
    if univariate::is_zero(&poly) {
        return None;
    }
    let mut roots = Vec::new();
    // zero roots
    let zeros = poly.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push((BigRational::zero(), zeros));
        poly.drain(..zeros);
    }
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let a0 = ints[0].abs().to_u64()?;
    let an = ints[ints.len() - 1].abs().to_u64()?;
    let divisors = |n: u64| -> Vec<u64> {
        let mut d = Vec::new();
        let mut i = 1;
        while i * i <= n {
            if n.is_multiple_of(i) {
                d.push(i);
                if i != n / i {
                    d.push(n / i);
                }
            }
            i += 1;
        }
        d.sort_unstable();
        d
    };
    if a0 > 1 << 40 || an > 1 << 40 {
        return None;
    }
    let mut candidates: Vec<BigRational> = Vec::new();
    for num in divisors(a0) {
        for den in divisors(an) {
            for s in [1i64, -1] {
                let r = BigRational::new(BigInt::from(num) * s, BigInt::from(den));
                if !candidates.contains(&r) {
                    candidates.push(r);
                }
            }
        }
    }
    candidates.sort();
    for r in candidates {
        let root_poly = vec![-r.clone(), BigRational::one()];
        let mut mult = 0;
        loop {
            let (q, rem) = univariate::divrem(&poly, &root_poly);
            if !univariate::is_zero(&rem) {
                break;
            }
            poly = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    }
    Some(roots)
}

/// `Δ(λ(b))` as a rational function of the parameter `b`, and the rational
/// roots of its numerator.
pub fn singular_locus_in_b() -> (Coefficient, Vec<(BigRational, usize)>) {
    let b = Coefficient::param(B);
    let lam = alpha_of(&b).expect("b + 2 is not the zero polynomial");
    let delta = legendre_discriminant(&Coefficient::param(LAMBDA))
        .substitute(&|v| (v == LAMBDA).then(|| lam.clone()))
        .expect("no pole at symbolic b");
    let roots = delta
        .numer()
        .as_univariate()
        .and_then(|(_, dense)| rational_roots(&dense))
        .unwrap_or_default();
    (delta, roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> MultiPoly {
        symbolic_alpha()
    }

    #[test]
    fn quadrics_at_zero() {
        let q = quadrics_eq19(&MultiPoly::zero());
        assert_eq!(q.polys[0], sq(V).add(&sq(W)).add(&sq(Z).scale(&int(2))));
        for poly in quadrics_eq19(&a())
            .polys
            .iter()
            .chain(target_quadrics(&a()).polys.iter())
        {
            assert_eq!(
                is_homogeneous_in(poly, &[U, V, W, Z, CAP_X, CAP_Y, CAP_Z, CAP_T]),
                Some(2)
            );
        }
    }

    #[test]
    fn square_step_coordinates() {
        let rep = verify_eq20_step(&a()).unwrap();
        assert!(rep.passed());
        let one = Coefficient::one();
        let zero = Coefficient::zero();
        assert_eq!(rep.coordinates[0], Some(vec![one.clone(), one.clone()]));
        assert_eq!(rep.coordinates[1], Some(vec![zero, one]));
        assert_eq!(rep.images[1], target_quadrics(&a()).polys[1]);
    }

    #[test]
    fn odd_power_rejected() {
        let err = substitute_squares(&p(U), &square_images()).unwrap_err();
        assert_eq!(err, CurveError::OddPower("u".into()));
    }

    #[test]
    fn parametrization_residues() {
        let rep = verify_eq22_step(&a());
        assert!(rep.passed());
        let rep0 = verify_eq22_step(&MultiPoly::zero());
        assert!(rep0.images[0].is_zero());
    }

    #[test]
    fn shift_chain() {
        let rep = shift_and_homogenize(&a());
        assert!(rep.passed());
    }

    #[test]
    fn singular_fibres() {
        assert!(curve_for_b(2).unwrap().singular);
        assert!(curve_for_b(2).unwrap().j_invariant.is_none());
        let c3 = curve_for_b(3).unwrap();
        assert!(!c3.singular);
        assert_eq!(c3.lambda, Coefficient::ratio_int(1, 5).unwrap());
        assert!(curve_for_b(1).is_err());
        let j = legendre_invariants(&Coefficient::from_int(-1)).j_invariant.unwrap();
        assert_eq!(j, Coefficient::from_int(1728));
    }

    #[test]
    fn singular_locus_is_b_equals_two() {
        let (_, roots) = singular_locus_in_b();
        assert_eq!(roots, vec![(int(2), 2)]);
    }

    #[test]
    fn rational_root_finder() {
        // 2x^3 - 3x^2 + x = x(2x-1)(x-1)
        let roots = rational_roots(&[int(0), int(1), int(-3), int(2)]).unwrap();
        assert_eq!(roots, vec![(int(0), 1), (rat(1, 2), 1), (int(1), 1)]);
    }
}
