use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::Var;
use super::multipoly::{univariate, MultiPoly};
use super::{CoeffError, ConjugationSpec};

/// Element of the rational function field `Q(params)`.
///
/// Equality is decided by cross-multiplication. Construction runs a cheap
/// simplification (constant denominators folded, univariate gcd cancelled,
/// denominator made monic) that never changes the value.
#[derive(Clone)]
pub struct Coefficient {
    num: MultiPoly,
    den: MultiPoly,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_poly(MultiPoly::constant(r))
    }

    pub fn ratio_int(n: i64, d: i64) -> Result<Self, CoeffError> {
        if d == 0 {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::from_rational(super::multipoly::rat(n, d)))
    }

    pub fn param(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Coefficient {
            num: p,
            den: MultiPoly::one(),
        }
    }

    /// `num / den`, simplified; errors if `den` is the zero polynomial.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            return Coefficient {
                num: num.scale(&c.recip()),
                den: MultiPoly::one(),
            };
        }
        let (mut num, mut den) = (num, den);
        match (num.as_univariate(), den.as_univariate()) {
            (Some((vn, dn)), Some((Some(vd), dd))) if vn.is_none() || vn == Some(vd) => {
                let g = univariate::gcd(&dn, &dd);
                if !univariate::is_one(&g) {
                    let (qn, _) = univariate::divrem(&dn, &g);
                    let (qd, _) = univariate::divrem(&dd, &g);
                    num = MultiPoly::from_univariate(vd, &qn);
                    den = MultiPoly::from_univariate(vd, &qd);
                }
            }
            _ => {
                if let Some(q) = num.div_exact(&den) {
                    return Self::from_poly(q);
                }
            }
        }
        if let Some(c) = den.as_constant() {
            return Coefficient {
                num: num.scale(&c.recip()),
                den: MultiPoly::one(),
            };
        }
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let r = lc.recip();
            num = num.scale(&r);
            den = den.scale(&r);
        }
        Coefficient { num, den }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The rational value when no parameter occurs.
    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Parameters occurring in numerator or denominator.
    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CoeffError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        Coefficient {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    /// Simultaneous substitution of parameters. Unbound parameters are kept.
    pub fn substitute(&self, bindings: &dyn Fn(Var) -> Option<Coefficient>) -> Result<Self, CoeffError> {
        let n = eval_poly(&self.num, bindings);
        let d = eval_poly(&self.den, bindings);
        if d.is_zero() {
            return Err(CoeffError::Pole {
                denominator: format!("{:?}", self.den),
            });
        }
        n.checked_div(&d)
    }

    /// Rational value at a full assignment; a missing binding or pole is an error.
    pub fn eval(&self, point: &dyn Fn(Var) -> Option<BigRational>) -> Result<BigRational, CoeffError> {
        let n = self.num.eval(point).ok_or(CoeffError::UnboundParameter)?;
        let d = self.den.eval(point).ok_or(CoeffError::UnboundParameter)?;
        if d.is_zero() {
            return Err(CoeffError::Pole {
                denominator: format!("{:?}", self.den),
            });
        }
        Ok(n / d)
    }

    pub fn conjugate(&self, spec: &ConjugationSpec) -> Self {
        if spec.is_identity() {
            return self.clone();
        }
        Coefficient {
            num: self.num.remap_vars(|v| spec.apply(v)),
            den: self.den.remap_vars(|v| spec.apply(v)),
        }
    }

    /// True when the leading numerator coefficient is negative (used by printers).
    pub fn looks_negative(&self) -> bool {
        self.num.leading_coeff() < BigRational::zero()
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let n = self.num.fmt_with(names);
        if self.den.is_one() {
            return n;
        }
        let n = if self.num.terms().len() > 1 {
            format!("({n})")
        } else {
            n
        };
        let d = self.den.fmt_with(names);
        let d = if self.den.terms().len() > 1 || !self.den.terms()[0].1.is_one() {
            format!("({d})")
        } else {
            d
        };
        format!("{n}/{d}")
    }

    /// True if printing needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        !self.den.is_one() || self.num.terms().len() > 1
    }
}

fn eval_poly(p: &MultiPoly, bindings: &dyn Fn(Var) -> Option<Coefficient>) -> Coefficient {
    let mut acc = Coefficient::zero();
    for (m, c) in p.terms() {
        let mut t = Coefficient::from_rational(c.clone());
        let mut rest = Vec::new();
        for &(v, e) in m.pairs() {
            match bindings(v) {
                Some(val) => t = &t * &val.pow(e),
                None => rest.push((v, e)),
            }
        }
        if !rest.is_empty() {
            let mono = super::Monomial::from_pairs(rest);
            t = &t * &Coefficient::from_poly(MultiPoly::term(mono, BigRational::one()));
        }
        acc = &acc + &t;
    }
    acc
}

impl PartialEq for Coefficient {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for Coefficient {}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Coefficient::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        Coefficient::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        if self.is_zero() || rhs.is_zero() {
            return Coefficient::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Coefficient::from_poly(self.num.mul(&rhs.num));
        }
        Coefficient::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: Coefficient) -> Coefficient {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: &Coefficient) -> Coefficient {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::from_int(n)
    }
}

impl Zero for Coefficient {
    fn zero() -> Self {
        Coefficient::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Coefficient {
    fn one() -> Self {
        Coefficient::one()
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&[]))
    }
}
