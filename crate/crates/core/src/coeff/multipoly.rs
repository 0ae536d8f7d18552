use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};

/// Sparse polynomial with rational coefficients in commuting variables.
///
/// Terms are kept sorted by descending graded-lex monomial order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, BigRational)>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: vec![(Monomial::one(), c)],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(v: Var) -> Self {
        MultiPoly {
            terms: vec![(Monomial::var(v), BigRational::one())],
        }
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: vec![(m, c)] }
    }

    /// Collects arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Self {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in it {
            *map.entry(m).or_insert_with(BigRational::zero) += c;
        }
        MultiPoly {
            terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0.exponent(v)).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Sorted, deduplicated list of variables that occur.
    pub fn vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.terms.iter().flat_map(|t| t.0.vars()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|t| t.0.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, true)
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly { terms: out }
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = map.entry(ma.mul(mb)).or_insert_with(BigRational::zero);
                *e += ca * cb;
            }
        }
        MultiPoly {
            terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(mm, x)| (mm.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = d.leading()?.clone();
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            rem = rem.sub(&d.mul_monomial(&qm, &qc));
            quot.push((qm, qc));
        }
        Some(MultiPoly::from_terms(quot))
    }

    /// Applies `f` to every variable index (result re-sorted).
    pub fn remap_vars(&self, f: impl Fn(Var) -> Var) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.remap(&f), c.clone())))
    }

    /// Evaluates at a rational point; variables missing from `point` are an error.
    pub fn eval(&self, point: &dyn Fn(Var) -> Option<BigRational>) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = point(v)?;
                t *= num_traits::pow(x, e as usize);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Substitutes polynomials for variables; unmapped variables stay.
    pub fn compose(&self, f: &dyn Fn(Var) -> Option<MultiPoly>) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            let mut rest = Vec::new();
            for &(v, e) in m.pairs() {
                match f(v) {
                    Some(p) => t = t.mul(&p.pow(e)),
                    None => rest.push((v, e)),
                }
            }
            t = t.mul_monomial(&Monomial::from_pairs(rest), &BigRational::one());
            acc = acc.add(&t);
        }
        acc
    }

    /// If all variables are `v` (or none), the dense coefficient list, low degree first.
    pub fn as_univariate(&self) -> Option<(Option<Var>, Vec<BigRational>)> {
        let vars = self.vars();
        if vars.len() > 1 {
            return None;
        }
        let v = vars.first().copied();
        let deg = v.map(|v| self.degree_in(v)).unwrap_or(0) as usize;
        let mut dense = vec![BigRational::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = v.map(|v| m.exponent(v)).unwrap_or(0) as usize;
            dense[e] = c.clone();
        }
        Some((v, dense))
    }

    pub fn from_univariate(v: Var, dense: &[BigRational]) -> MultiPoly {
        MultiPoly::from_terms(
            dense
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (Monomial::var_pow(v, e as u32), c.clone())),
        )
    }

    /// Groups terms by the monomial over variables *not* in `keep`, with the
    /// `keep` part left as polynomial coefficients.
    pub fn split_coefficients(&self, keep: impl Fn(Var) -> bool) -> BTreeMap<Monomial, MultiPoly> {
        let mut out: BTreeMap<Monomial, Vec<(Monomial, BigRational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inner, outer) = m.split(&keep);
            out.entry(outer).or_default().push((inner, c.clone()));
        }
        out.into_iter().map(|(k, v)| (k, MultiPoly::from_terms(v))).collect()
    }

    /// Integer content-free primitive part with positive leading coefficient,
    /// together with the rational factor removed.
    pub fn primitive(&self) -> (BigRational, MultiPoly) {
        if self.is_zero() {
            return (BigRational::one(), MultiPoly::zero());
        }
        use num_integer::Integer;
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading_coeff().is_negative() {
            content = -content;
        }
        (content.clone(), self.scale(&content.recip()))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                s.push_str(&m.fmt_with(names));
            } else {
                s.push_str(&fmt_rational(&a));
                s.push('*');
                s.push_str(&m.fmt_with(names));
            }
        }
        s
    }
}

pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Univariate polynomial helpers over the rationals (dense, low degree first).
pub mod univariate {
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    pub fn trim(p: &mut Vec<BigRational>) {
        while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        if p.is_empty() {
            p.push(BigRational::zero());
        }
    }

    pub fn is_zero(p: &[BigRational]) -> bool {
        p.iter().all(|c| c.is_zero())
    }

    pub fn degree(p: &[BigRational]) -> usize {
        p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Quotient and remainder of `a / b`; `b` must be nonzero.
    pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let db = degree(b);
        let lb = b[db].clone();
        let mut r: Vec<BigRational> = a.to_vec();
        trim(&mut r);
        if is_zero(&r) || degree(&r) < db {
            return (vec![BigRational::zero()], r);
        }
        let mut q = vec![BigRational::zero(); degree(&r) - db + 1];
        while !is_zero(&r) && degree(&r) >= db {
            let dr = degree(&r);
            let c = &r[dr] / &lb;
            let shift = dr - db;
            for (i, bc) in b.iter().enumerate().take(db + 1) {
                let t = &c * bc;
                r[i + shift] -= t;
            }
            q[shift] = c;
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !is_zero(&y) {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = r;
        }
        if is_zero(&x) {
            return x;
        }
        let lc = x[degree(&x)].clone();
        x.iter_mut().for_each(|c| *c = &*c / &lc);
        trim(&mut x);
        x
    }

    pub fn is_one(p: &[BigRational]) -> bool {
        degree(p) == 0 && p[0].is_one()
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = Vec::new();
        write!(f, "{}", self.fmt_with(&names))
    }
}
