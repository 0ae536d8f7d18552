//! Noncommutative polynomials over [`Coefficient`] and the `*`-involution.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use smallvec::SmallVec;
use thiserror::Error;

use crate::coeff::{CoeffError, Coefficient, ConjugationSpec, Var};

/// Index of a generator in an [`Alphabet`].
pub type Gen = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("too many generators ({0})")]
    TooMany(usize),
    #[error("generator map is not a self-inverse permutation of the generators")]
    NotInvolutive,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Generator and parameter names for one session.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    generators: Vec<String>,
    params: Vec<String>,
}

impl Alphabet {
    pub fn new(generators: Vec<String>, params: Vec<String>) -> Result<Self, AlphabetError> {
        if generators.len() > Gen::MAX as usize {
            return Err(AlphabetError::TooMany(generators.len()));
        }
        let mut seen = std::collections::HashSet::new();
        for n in generators.iter().chain(params.iter()) {
            if !seen.insert(n.as_str()) {
                return Err(AlphabetError::Duplicate(n.clone()));
            }
        }
        Ok(Alphabet { generators, params })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn generator(&self, name: &str) -> Option<Gen> {
        self.generators.iter().position(|g| g == name).map(|i| i as Gen)
    }

    pub fn param(&self, name: &str) -> Option<Var> {
        self.params.iter().position(|g| g == name).map(|i| i as Var)
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }
}

/// A word in the generators; the empty word is the unit monomial.
///
/// Ordered degree first, then lexicographically by generator index.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Gen; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_gens(gens: &[Gen]) -> Self {
        Word(SmallVec::from_slice(gens))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Concatenation `left · self · right`.
    pub fn wrap(&self, left: &Word, right: &Word) -> Word {
        let mut v = SmallVec::with_capacity(left.len() + self.len() + right.len());
        v.extend_from_slice(&left.0);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&right.0);
        Word(v)
    }

    /// All words of exactly `len` letters over `n` generators, in increasing order.
    pub fn all_of_length(n: usize, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * n);
            for w in &out {
                for g in 0..n as Gen {
                    let mut v = w.0.clone();
                    v.push(g);
                    next.push(Word(v));
                }
            }
            out = next;
        }
        out
    }

    pub fn fmt_with(&self, alphabet: &Alphabet) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        let g = &self.0;
        while i < g.len() {
            let mut j = i;
            while j < g.len() && g[j] == g[i] {
                j += 1;
            }
            let name = alphabet
                .generators
                .get(g[i] as usize)
                .cloned()
                .unwrap_or_else(|| format!("g{}", g[i]));
            if j - i == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{}", j - i));
            }
            i = j;
        }
        parts.join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.0.iter().map(|g| format!("x{}", g + 1)).collect();
        write!(f, "{}", s.join(""))
    }
}

/// The anti-linear anti-automorphism `p ↦ p*`: words are reversed, letters
/// mapped through a self-inverse permutation, coefficients conjugated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvolutionSpec {
    generators: Vec<Gen>,
    conjugation: ConjugationSpec,
}

impl InvolutionSpec {
    pub fn new(generators: Vec<Gen>, conjugation: ConjugationSpec) -> Result<Self, AlphabetError> {
        let n = generators.len();
        for (i, &g) in generators.iter().enumerate() {
            if g as usize >= n || generators[g as usize] as usize != i {
                return Err(AlphabetError::NotInvolutive);
            }
        }
        Ok(InvolutionSpec {
            generators,
            conjugation,
        })
    }

    pub fn generator_map(&self) -> &[Gen] {
        &self.generators
    }

    pub fn conjugation(&self) -> &ConjugationSpec {
        &self.conjugation
    }

    pub fn with_conjugation(&self, conjugation: ConjugationSpec) -> Self {
        InvolutionSpec {
            generators: self.generators.clone(),
            conjugation,
        }
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        Word(
            w.0.iter()
                .rev()
                .map(|&g| self.generators.get(g as usize).copied().unwrap_or(g))
                .collect(),
        )
    }
}

/// Canonical noncommutative polynomial: a map from words to nonzero coefficients.
#[derive(Clone, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Coefficient>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Coefficient::one())
    }

    pub fn constant(c: Coefficient) -> Self {
        Self::monomial(Word::empty(), c)
    }

    pub fn generator(g: Gen) -> Self {
        Self::monomial(Word::from_gens(&[g]), Coefficient::one())
    }

    /// The word `x_{g1} x_{g2} ...` with coefficient one.
    pub fn word(gens: &[Gen]) -> Self {
        Self::monomial(Word::from_gens(gens), Coefficient::one())
    }

    pub fn monomial(w: Word, c: Coefficient) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NcPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Coefficient)>>(it: I) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Coefficient)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Coefficient {
        self.terms.get(w).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map(|w| w.len()).unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.terms.keys().next().map(|w| w.len()).unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree() == self.min_degree()
    }

    /// Greatest word in deglex order.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn homogeneous_component(&self, d: usize) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// `left · self · right` scaled by `c`.
    pub fn wrapped(&self, left: &Word, right: &Word, c: &Coefficient) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.wrap(left, right), if c.is_one() { x.clone() } else { x * c }))
                .collect(),
        }
    }

    pub fn involute(&self, spec: &InvolutionSpec) -> NcPoly {
        NcPoly::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (spec.apply_word(w), c.conjugate(&spec.conjugation))),
        )
    }

    /// Applies a parameter substitution to every coefficient.
    pub fn map_coefficients(
        &self,
        f: impl Fn(&Coefficient) -> Result<Coefficient, CoeffError>,
    ) -> Result<NcPoly, CoeffError> {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn substitute_params(&self, bindings: &dyn Fn(Var) -> Option<Coefficient>) -> Result<NcPoly, CoeffError> {
        self.map_coefficients(|c| c.substitute(bindings))
    }

    /// Replaces each occurrence of a whole term word found in `rules` by the
    /// corresponding polynomial. Only exact word matches are rewritten.
    pub fn replace_words(&self, rules: &[(Word, NcPoly)]) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            match rules.iter().find(|(k, _)| k == w) {
                Some((_, r)) => out = &out + &r.scale(c),
                None => out.add_term(w.clone(), c.clone()),
            }
        }
        out
    }

    /// Value under the commutative character sending generator `g` to `point[g]`.
    pub fn eval_character(&self, point: &[BigRational]) -> Option<Coefficient> {
        let mut acc = Coefficient::zero();
        for (w, c) in &self.terms {
            let mut v = c.clone();
            for &g in w.gens() {
                v = &v * &Coefficient::from_rational(point.get(g as usize)?.clone());
            }
            acc = &acc + &v;
        }
        Some(acc)
    }

    /// Parameters occurring in any coefficient.
    pub fn params(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.terms.values().flat_map(|c| c.vars()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Highest generator index + 1 (0 for constants).
    pub fn max_generator(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|w| w.gens().iter().copied())
            .max()
            .map(|g| g as usize + 1)
            .unwrap_or(0)
    }
}

impl PartialEq for NcPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(other.terms.iter())
                .all(|((w1, c1), (w2, c2))| w1 == w2 && c1 == c2)
    }
}

impl Eq for NcPoly {}

impl<'a> Add<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<NcPoly> for NcPoly {
            type Output = NcPoly;
            fn $m(self, rhs: NcPoly) -> NcPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a NcPoly> for NcPoly {
            type Output = NcPoly;
            fn $m(self, rhs: &NcPoly) -> NcPoly {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        -&self
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(w, c)| format!("({c:?}){w:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: Gen) -> NcPoly {
        NcPoly::generator(i - 1)
    }

    fn swap_involution() -> InvolutionSpec {
        InvolutionSpec::new(vec![1, 0, 3, 2], ConjugationSpec::identity(0)).unwrap()
    }

    #[test]
    fn free_algebra_is_noncommutative() {
        let a = &x(1) * &x(2);
        let b = &x(2) * &x(1);
        assert_ne!(a, b);
        assert_eq!(&NcPoly::one() * &a, a);
    }

    #[test]
    fn i0_generator() {
        let p = &(&(&x(1) * &x(2)) + &(&x(3) * &x(4))) - &NcPoly::one();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.degree(), 2);
        assert!(!p.is_homogeneous());
        let d2 = p.homogeneous_component(2);
        assert_eq!(d2, &(&x(1) * &x(2)) + &(&x(3) * &x(4)));
        assert!(p.homogeneous_component(5).is_zero());
    }

    #[test]
    fn involution_on_words() {
        let s = swap_involution();
        assert_eq!((&x(1) * &x(2)).involute(&s), &x(1) * &x(2));
        assert_eq!((&x(1) * &x(3)).involute(&s), &x(4) * &x(2));
        assert_eq!((&x(2) * &x(4)).involute(&s), &x(3) * &x(1));
        assert_eq!((&x(1) * &x(4)).involute(&s), &x(3) * &x(2));
    }

    #[test]
    fn omega0_generators_swap() {
        let s = swap_involution();
        let w1 = &(&x(1) * &x(1)) + &(&x(4) * &x(4));
        let w2 = &(&x(2) * &x(2)) + &(&x(3) * &x(3));
        assert_eq!(w1.involute(&s), w2);
        assert_eq!(w1.homogeneous_component(2), w1);
        assert!(w1.homogeneous_component(0).is_zero());
    }

    #[test]
    fn bad_involution_rejected() {
        assert!(InvolutionSpec::new(vec![1, 2, 3, 0], ConjugationSpec::identity(0)).is_err());
    }

    #[test]
    fn word_order_is_deglex() {
        let w = |g: &[Gen]| Word::from_gens(g);
        assert!(w(&[3]) < w(&[0, 0]));
        assert!(w(&[0, 1]) < w(&[1, 0]));
        assert!(Word::empty() < w(&[0]));
        assert_eq!(Word::all_of_length(4, 2).len(), 16);
    }
}
