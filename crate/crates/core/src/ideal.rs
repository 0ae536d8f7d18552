//! Two-sided ideal membership with checkable certificates, involution
//! stability of relation sets, and equivalence of presentations.
//!
//! Membership is reduced to linear algebra: the ideal generated by relations
//! `r_i` is spanned by the products `u · r_i · v`. For homogeneous relations
//! the degree-`d` slice of the ideal is spanned by the finitely many products
//! of degree `d`, so the graded test is a decision procedure. For
//! inhomogeneous relations only the products with `|u| + |v| <= k` are
//! searched, which can prove membership but never refute it; a refutation
//! instead comes from a scalar point (a one-dimensional representation) that
//! annihilates every relation but not the target.

use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

use crate::coeff::{int, Coefficient};
use crate::linalg::{EchelonBasis, SparseVec};
use crate::ncpoly::{Alphabet, InvolutionSpec, NcPoly, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("graded membership needs homogeneous input ({0})")]
    Inhomogeneous(&'static str),
    #[error("presentations use different alphabets")]
    AlphabetMismatch,
    #[error("presentations use different involutions")]
    InvolutionMismatch,
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("involution covers {found} generators, alphabet has {expected}")]
    InvolutionSize { expected: usize, found: usize },
    #[error("relation {0} mentions a generator outside the alphabet")]
    UnknownGenerator(usize),
}

/// Generators, relations (each read as `= 0`) and an involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Arc<Alphabet>,
    relations: Vec<NcPoly>,
    involution: InvolutionSpec,
}

impl Presentation {
    pub fn new(
        alphabet: Arc<Alphabet>,
        relations: Vec<NcPoly>,
        involution: InvolutionSpec,
    ) -> Result<Self, IdealError> {
        let n = alphabet.num_generators();
        if involution.generator_map().len() != n {
            return Err(IdealError::InvolutionSize {
                expected: n,
                found: involution.generator_map().len(),
            });
        }
        for (i, r) in relations.iter().enumerate() {
            if r.is_zero() {
                return Err(IdealError::ZeroRelation(i));
            }
            if r.max_generator() > n {
                return Err(IdealError::UnknownGenerator(i));
            }
        }
        Ok(Presentation {
            alphabet,
            relations,
            involution,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn involution(&self) -> &InvolutionSpec {
        &self.involution
    }

    pub fn num_generators(&self) -> usize {
        self.alphabet.num_generators()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| r.is_homogeneous())
    }

    /// Same presentation with `extra` relations appended.
    pub fn adjoin(&self, extra: &[NcPoly]) -> Result<Self, IdealError> {
        let mut rel = self.relations.clone();
        rel.extend(extra.iter().cloned());
        Presentation::new(self.alphabet.clone(), rel, self.involution.clone())
    }

    pub fn with_involution(&self, involution: InvolutionSpec) -> Result<Self, IdealError> {
        Presentation::new(self.alphabet.clone(), self.relations.clone(), involution)
    }
}

/// One summand `coefficient · left · relations[relation] · right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateTerm {
    pub left: Word,
    pub relation: usize,
    pub right: Word,
    pub coefficient: Coefficient,
}

/// Explicit combination of wrapped relations equal to a target.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MembershipCertificate {
    pub terms: Vec<CertificateTerm>,
}

impl MembershipCertificate {
    pub fn expand(&self, relations: &[NcPoly]) -> NcPoly {
        let mut acc = NcPoly::zero();
        for t in &self.terms {
            let w = relations[t.relation].wrapped(&t.left, &t.right, &t.coefficient);
            acc = &acc + &w;
        }
        acc
    }

    /// Re-multiplies and sums; true iff the result equals `target` exactly.
    pub fn verify(&self, target: &NcPoly, relations: &[NcPoly]) -> bool {
        self.terms.iter().all(|t| t.relation < relations.len()) && self.expand(relations) == *target
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Longest `|left| + |right|` used.
    pub fn wrapper_len(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.left.len() + t.right.len())
            .max()
            .unwrap_or(0)
    }
}

/// Why a target is definitely outside the ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonMembership {
    /// The degree slice of a homogeneous ideal does not contain the target.
    Graded { degree: usize },
    /// Sending generator `i` to `point[i]` kills every relation but not the target.
    Character { point: Vec<BigRational> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipVerdict {
    Member(MembershipCertificate),
    NonMember(NonMembership),
    Inconclusive { wrapper_len: usize },
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipVerdict::Member(_))
    }

    pub fn is_non_member(&self) -> bool {
        matches!(self, MembershipVerdict::NonMember(_))
    }

    pub fn certificate(&self) -> Option<&MembershipCertificate> {
        match self {
            MembershipVerdict::Member(c) => Some(c),
            _ => None,
        }
    }
}

fn to_sparse(p: &NcPoly) -> SparseVec<Word, Coefficient> {
    p.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
}

/// Incremental span of wrapped relations `u · r · v`.
///
/// Rows are added in a fixed order (wrapper length, then left word, then right
/// word, then relation index), so the rows kept as independent, and hence the
/// certificates, are the same on every run and favour the smallest wrappers.
pub struct IdealSpan<'a> {
    relations: &'a [NcPoly],
    n_gens: usize,
    basis: EchelonBasis<Word, Coefficient>,
    origins: Vec<(Word, usize, Word)>,
    levels_done: Option<usize>,
    degree: Option<usize>,
}

impl<'a> IdealSpan<'a> {
    /// Span of all wrapped relations; grow it with [`IdealSpan::extend_to`].
    pub fn bounded(relations: &'a [NcPoly], n_gens: usize) -> Self {
        IdealSpan {
            relations,
            n_gens,
            basis: EchelonBasis::new(),
            origins: Vec::new(),
            levels_done: None,
            degree: None,
        }
    }

    /// The degree-`d` slice of the ideal generated by homogeneous relations.
    pub fn graded(relations: &'a [NcPoly], n_gens: usize, d: usize) -> Self {
        let mut s = IdealSpan {
            relations,
            n_gens,
            basis: EchelonBasis::new(),
            origins: Vec::new(),
            levels_done: None,
            degree: Some(d),
        };
        let min_deg = relations.iter().map(|r| r.degree()).min().unwrap_or(0);
        s.extend_to(d.saturating_sub(min_deg));
        s
    }

    pub fn extend_to(&mut self, wrapper_len: usize) {
        let start = self.levels_done.map(|l| l + 1).unwrap_or(0);
        for total in start..=wrapper_len {
            for left_len in 0..=total {
                let lefts = Word::all_of_length(self.n_gens, left_len);
                let rights = Word::all_of_length(self.n_gens, total - left_len);
                for left in &lefts {
                    for right in &rights {
                        for (ri, r) in self.relations.iter().enumerate() {
                            if let Some(d) = self.degree {
                                if r.degree() + total != d {
                                    continue;
                                }
                            }
                            let row = to_sparse(&r.wrapped(left, right, &Coefficient::one()));
                            let origin = self.origins.len();
                            self.origins.push((left.clone(), ri, right.clone()));
                            self.basis.insert(row, origin);
                        }
                    }
                }
            }
            self.levels_done = Some(total);
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// A verified certificate for `target`, if it lies in the current span.
    pub fn certificate(&self, target: &NcPoly) -> Option<MembershipCertificate> {
        if target.is_zero() {
            return Some(MembershipCertificate::default());
        }
        let combo = self.basis.express(&to_sparse(target))?;
        let cert = MembershipCertificate {
            terms: combo
                .into_iter()
                .map(|(o, c)| {
                    let (l, r, rr) = &self.origins[o];
                    CertificateTerm {
                        left: l.clone(),
                        relation: *r,
                        right: rr.clone(),
                        coefficient: c,
                    }
                })
                .collect(),
        };
        assert!(
            cert.verify(target, self.relations),
            "membership engine produced a certificate that does not re-expand to its target"
        );
        Some(cert)
    }
}

/// Decides membership of a homogeneous target in the ideal generated by
/// homogeneous relations.
pub fn graded_membership(
    target: &NcPoly,
    relations: &[NcPoly],
    n_gens: usize,
) -> Result<MembershipVerdict, IdealError> {
    if !target.is_homogeneous() {
        return Err(IdealError::Inhomogeneous("target"));
    }
    if relations.iter().any(|r| !r.is_homogeneous()) {
        return Err(IdealError::Inhomogeneous("relations"));
    }
    if target.is_zero() {
        return Ok(MembershipVerdict::Member(MembershipCertificate::default()));
    }
    let d = target.degree();
    let span = IdealSpan::graded(relations, n_gens, d);
    Ok(match span.certificate(target) {
        Some(c) => MembershipVerdict::Member(c),
        None => MembershipVerdict::NonMember(NonMembership::Graded { degree: d }),
    })
}

/// Searches wrapped relations with `|left| + |right| <= wrapper_len`.
/// Never answers `NonMember`.
pub fn bounded_membership(
    target: &NcPoly,
    relations: &[NcPoly],
    n_gens: usize,
    wrapper_len: usize,
) -> MembershipVerdict {
    let mut span = IdealSpan::bounded(relations, n_gens);
    for level in 0..=wrapper_len {
        span.extend_to(level);
        if let Some(c) = span.certificate(target) {
            return MembershipVerdict::Member(c);
        }
    }
    MembershipVerdict::Inconclusive { wrapper_len }
}

/// Radius of the integer box searched for refuting characters.
pub const CHARACTER_SEARCH_RADIUS: i64 = 2;

/// Looks for a scalar point where all relations vanish and `target` does not.
/// Only applies when every coefficient is a plain rational.
pub fn character_refutation(
    target: &NcPoly,
    relations: &[NcPoly],
    n_gens: usize,
    radius: i64,
) -> Option<Vec<BigRational>> {
    if !target.params().is_empty() || relations.iter().any(|r| !r.params().is_empty()) {
        return None;
    }
    let values: Vec<BigRational> = (0..=2 * radius)
        .map(|k| {
            // 0, 1, -1, 2, -2, ...
            let m = (k + 1) / 2;
            int(if k % 2 == 1 { m } else { -m })
        })
        .collect();
    let mut idx = vec![0usize; n_gens];
    loop {
        let point: Vec<BigRational> = idx.iter().map(|&i| values[i].clone()).collect();
        let kills = relations
            .iter()
            .all(|r| r.eval_character(&point).is_some_and(|v| v.is_zero()));
        if kills && target.eval_character(&point).is_some_and(|v| !v.is_zero()) {
            return Some(point);
        }
        let mut k = 0;
        while k < n_gens {
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n_gens {
            return None;
        }
    }
}

/// Checks a claimed refuting point.
pub fn verify_character(target: &NcPoly, relations: &[NcPoly], point: &[BigRational]) -> bool {
    relations
        .iter()
        .all(|r| r.eval_character(point).is_some_and(|v| v.is_zero()))
        && target.eval_character(point).is_some_and(|v| !v.is_zero())
}

/// Membership of each target in the ideal of `relations`, sharing one span.
/// Homogeneous inputs take the graded route; otherwise the bounded search is
/// followed by a character refutation attempt for the targets it missed.
pub fn memberships(
    targets: &[NcPoly],
    relations: &[NcPoly],
    n_gens: usize,
    wrapper_len: usize,
) -> Vec<MembershipVerdict> {
    let homogeneous = relations.iter().all(|r| r.is_homogeneous()) && targets.iter().all(|t| t.is_homogeneous());
    if homogeneous {
        let mut by_degree: std::collections::BTreeMap<usize, IdealSpan> = Default::default();
        return targets
            .iter()
            .map(|t| {
                if t.is_zero() {
                    return MembershipVerdict::Member(MembershipCertificate::default());
                }
                let d = t.degree();
                let span = by_degree
                    .entry(d)
                    .or_insert_with(|| IdealSpan::graded(relations, n_gens, d));
                match span.certificate(t) {
                    Some(c) => MembershipVerdict::Member(c),
                    None => MembershipVerdict::NonMember(NonMembership::Graded { degree: d }),
                }
            })
            .collect();
    }
    let mut out: Vec<Option<MembershipVerdict>> = vec![None; targets.len()];
    let mut span = IdealSpan::bounded(relations, n_gens);
    for level in 0..=wrapper_len {
        if out.iter().all(|v| v.is_some()) {
            break;
        }
        span.extend_to(level);
        for (i, t) in targets.iter().enumerate() {
            if out[i].is_none() {
                if let Some(c) = span.certificate(t) {
                    out[i] = Some(MembershipVerdict::Member(c));
                }
            }
        }
    }
    out.into_iter()
        .zip(targets)
        .map(|(v, t)| {
            v.unwrap_or_else(
                || match character_refutation(t, relations, n_gens, CHARACTER_SEARCH_RADIUS) {
                    Some(point) => MembershipVerdict::NonMember(NonMembership::Character { point }),
                    None => MembershipVerdict::Inconclusive { wrapper_len },
                },
            )
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct RelationStability {
    pub index: usize,
    pub image: NcPoly,
    pub verdict: MembershipVerdict,
}

#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub relations: Vec<RelationStability>,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.relations.iter().all(|r| r.verdict.is_member())
    }

    /// Indices whose image is definitely outside the ideal.
    pub fn unstable_indices(&self) -> Vec<usize> {
        self.relations
            .iter()
            .filter(|r| r.verdict.is_non_member())
            .map(|r| r.index)
            .collect()
    }
}

/// Decides for every relation `r` whether `r*` lies in the ideal.
pub fn involution_stability(p: &Presentation, wrapper_len: usize) -> StabilityReport {
    let images: Vec<NcPoly> = p.relations().iter().map(|r| r.involute(p.involution())).collect();
    let verdicts = memberships(&images, p.relations(), p.num_generators(), wrapper_len);
    StabilityReport {
        relations: images
            .into_iter()
            .zip(verdicts)
            .enumerate()
            .map(|(index, (image, verdict))| RelationStability { index, image, verdict })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Equivalence {
    Equivalent,
    NotEquivalent,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    /// Each relation of the first presentation tested against the second ideal.
    pub forward: Vec<MembershipVerdict>,
    /// Each relation of the second presentation tested against the first ideal.
    pub backward: Vec<MembershipVerdict>,
}

impl EquivalenceReport {
    pub fn verdict(&self) -> Equivalence {
        let all = self.forward.iter().chain(self.backward.iter());
        if all.clone().all(|v| v.is_member()) {
            Equivalence::Equivalent
        } else if all.clone().any(|v| v.is_non_member()) {
            Equivalence::NotEquivalent
        } else {
            Equivalence::Inconclusive
        }
    }
}

/// Ideal equality under the identity map on generators, with certificates in
/// both directions.
pub fn presentations_equivalent(
    p: &Presentation,
    q: &Presentation,
    wrapper_len: usize,
) -> Result<EquivalenceReport, IdealError> {
    if p.alphabet() != q.alphabet() {
        return Err(IdealError::AlphabetMismatch);
    }
    if p.involution() != q.involution() {
        return Err(IdealError::InvolutionMismatch);
    }
    let n = p.num_generators();
    let forward = || memberships(p.relations(), q.relations(), n, wrapper_len);
    let backward = || memberships(q.relations(), p.relations(), n, wrapper_len);
    #[cfg(feature = "parallel")]
    let (forward, backward) = rayon::join(forward, backward);
    #[cfg(not(feature = "parallel"))]
    let (forward, backward) = (forward(), backward());
    Ok(EquivalenceReport { forward, backward })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ConjugationSpec;

    fn x(i: u8) -> NcPoly {
        NcPoly::generator(i - 1)
    }
    fn xx(i: u8, j: u8) -> NcPoly {
        NcPoly::word(&[i - 1, j - 1])
    }

    #[test]
    fn zero_target_is_member_with_empty_certificate() {
        let rels = vec![&xx(1, 2) - &xx(2, 1)];
        let v = graded_membership(&NcPoly::zero(), &rels, 4).unwrap();
        assert_eq!(v, MembershipVerdict::Member(MembershipCertificate::default()));
    }

    #[test]
    fn graded_rejects_inhomogeneous() {
        let rels = vec![&xx(1, 2) - &NcPoly::one()];
        assert!(graded_membership(&xx(1, 2), &rels, 4).is_err());
    }

    #[test]
    fn degree_three_membership_uses_wrappers() {
        // x1 x2 = x2 x1 implies x1 x1 x2 = x1 x2 x1 = x2 x1 x1
        let rels = vec![&xx(1, 2) - &xx(2, 1)];
        let target = &NcPoly::word(&[0, 0, 1]) - &NcPoly::word(&[1, 0, 0]);
        let v = graded_membership(&target, &rels, 2).unwrap();
        let cert = v.certificate().unwrap();
        assert!(cert.verify(&target, &rels));
        assert_eq!(cert.wrapper_len(), 1);
        let not = &NcPoly::word(&[0, 0, 1]) - &NcPoly::word(&[1, 1, 0]);
        assert!(graded_membership(&not, &rels, 2).unwrap().is_non_member());
    }

    #[test]
    fn bounded_finds_inhomogeneous_member() {
        let i0 = &(&xx(1, 2) + &xx(3, 4)) - &NcPoly::one();
        let rels = vec![i0.clone()];
        assert!(bounded_membership(&i0, &rels, 4, 0).is_member());
        // x1 · i0 is found at wrapper length 1, not 0
        let t = &x(1) * &i0;
        assert!(matches!(
            bounded_membership(&t, &rels, 4, 0),
            MembershipVerdict::Inconclusive { wrapper_len: 0 }
        ));
        assert!(bounded_membership(&t, &rels, 4, 1).is_member());
    }

    #[test]
    fn generator_not_found_against_quadratics() {
        let rels = vec![&xx(1, 2) - &xx(2, 1), &xx(3, 4) + &xx(4, 3)];
        assert!(matches!(
            bounded_membership(&x(1), &rels, 4, 2),
            MembershipVerdict::Inconclusive { wrapper_len: 2 }
        ));
    }

    #[test]
    fn character_refutes() {
        let rels = vec![&xx(1, 2) - &xx(2, 1)];
        let point = character_refutation(&x(1), &rels, 2, 1).unwrap();
        assert!(verify_character(&x(1), &rels, &point));
        assert!(character_refutation(&(&xx(1, 2) - &xx(2, 1)), &rels, 2, 1).is_none());
    }

    #[test]
    fn equivalence_is_reflexive() {
        let alphabet = Arc::new(Alphabet::new((1..=4).map(|i| format!("x{i}")).collect(), Vec::new()).unwrap());
        let inv = InvolutionSpec::new(vec![1, 0, 3, 2], ConjugationSpec::identity(0)).unwrap();
        let p = Presentation::new(
            alphabet,
            vec![&xx(1, 2) - &xx(2, 1), &(&xx(1, 2) + &xx(3, 4)) - &NcPoly::one()],
            inv,
        )
        .unwrap();
        let rep = presentations_equivalent(&p, &p, 0).unwrap();
        assert_eq!(rep.verdict(), Equivalence::Equivalent);
        for v in rep.forward.iter() {
            assert_eq!(v.certificate().unwrap().len(), 1);
        }
    }
}
