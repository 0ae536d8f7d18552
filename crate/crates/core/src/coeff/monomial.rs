use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Index of a variable in the session's fixed variable list.
pub type Var = u16;

/// A power product of commuting variables, stored sparsely as
/// `(variable, exponent)` pairs sorted by variable with no zero exponents.
///
/// Ordering is graded lexicographic: total degree first, then the exponent
/// of the lowest-indexed variable decides.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut s = SmallVec::new();
        s.push((v, e));
        Monomial(s)
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut v: SmallVec<[(Var, u32); 4]> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_by_key(|p| p.0);
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|p| p.0 == v).map(|p| p.1).unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|p| p.0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::new();
        let mut j = 0;
        let b = &other.0;
        for &(v, e) in &self.0 {
            let mut e = e;
            if j < b.len() && b[j].0 < v {
                return None;
            }
            if j < b.len() && b[j].0 == v {
                if b[j].1 > e {
                    return None;
                }
                e -= b[j].1;
                j += 1;
            }
            if e > 0 {
                out.push((v, e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// Renames variables through `map` (used by conjugation).
    pub fn remap(&self, map: impl Fn(Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (map(v), e)))
    }

    /// Splits into the part over `keep` and the rest.
    pub fn split(&self, keep: impl Fn(Var) -> bool) -> (Monomial, Monomial) {
        let mut a = SmallVec::new();
        let mut b = SmallVec::new();
        for &p in &self.0 {
            if keep(p.0) {
                a.push(p);
            } else {
                b.push(p);
            }
        }
        (Monomial(a), Monomial(b))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&(v, e)| {
                let name = names.get(v as usize).cloned().unwrap_or_else(|| format!("v{v}"));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        if va < vb {
                            return Ordering::Greater;
                        }
                        if vb < va {
                            return Ordering::Less;
                        }
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|&(v, e)| format!("v{v}^{e}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}
