//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use skck::coeff::{rat, Coefficient, Monomial, MultiPoly, Var};
use skck::ncpoly::{NcPoly, Word};
use skck::presentations::{ALPHA, ALPHA_BAR, B};

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<Coefficient>]) -> Coefficient {
    match m.len() {
        0 => Coefficient::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Coefficient::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Coefficient>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, c)| c.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &cofactor_det(&minor);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Sylvester matrix of `f` and `g`, coefficients highest degree first.
pub fn sylvester(f: &[Coefficient], g: &[Coefficient]) -> Vec<Vec<Coefficient>> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![Coefficient::zero(); size];
        for (i, c) in f.iter().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![Coefficient::zero(); size];
        for (i, c) in g.iter().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Discriminant of a cubic from `Res(f, f')`; input is constant term first.
pub fn cubic_discriminant(c: &[Coefficient; 4]) -> Coefficient {
    let f = [c[3].clone(), c[2].clone(), c[1].clone(), c[0].clone()];
    let df = [
        &Coefficient::from_int(3) * &c[3],
        &Coefficient::from_int(2) * &c[2],
        c[1].clone(),
    ];
    let res = cofactor_det(&sylvester(&f, &df));
    (-res)
        .checked_div(&c[3])
        .expect("cubic has nonzero leading coefficient")
}

/// `(Δ, c4)` of `y² = x³ + a2 x² + a4 x + a6` through the `b`-invariants.
pub fn weierstrass_invariants(c: &[Coefficient; 4]) -> (Coefficient, Coefficient) {
    assert!(c[3].is_one(), "monic cubic expected");
    let k = |n: i64| Coefficient::from_int(n);
    let (a2, a4, a6) = (&c[2], &c[1], &c[0]);
    let b2 = &k(4) * a2;
    let b4 = &k(2) * a4;
    let b6 = &k(4) * a6;
    let b8 = &(&k(4) * &(a2 * a6)) - &a4.pow(2);
    let c4 = &b2.pow(2) - &(&k(24) * &b4);
    let delta = &(&(&(-&(&b2.pow(2) * &b8)) - &(&k(8) * &b4.pow(3))) - &(&k(27) * &b6.pow(2)))
        + &(&k(9) * &(&(&b2 * &b4) * &b6));
    (delta, c4)
}

/// `j = c4³ / Δ`, or `None` on a singular cubic.
pub fn j_by_c4(c: &[Coefficient; 4]) -> Option<Coefficient> {
    let (delta, c4) = weierstrass_invariants(c);
    (!delta.is_zero()).then(|| c4.pow(3).checked_div(&delta).expect("nonzero"))
}

pub fn legendre_cubic(lambda: &Coefficient) -> [Coefficient; 4] {
    let one = Coefficient::one();
    [Coefficient::zero(), lambda.clone(), -(&one + lambda), one]
}

pub fn q(n: i64, d: i64) -> Coefficient {
    Coefficient::from_rational(rat(n, d))
}

fn small_poly(vars: &'static [Var]) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-3i64..=3, prop::sample::select(vars), 0u32..=2), 1..=3).prop_map(|terms| {
        MultiPoly::from_terms(terms.into_iter().map(|(c, v, e)| (Monomial::var_pow(v, e), rat(c, 1))))
    })
}

const PARAMS: &[Var] = &[ALPHA, ALPHA_BAR, B];

/// Rational functions in `alpha`, `alpha_bar`, `b` with nonvanishing denominators.
pub fn coefficient() -> impl Strategy<Value = Coefficient> {
    let den = prop_oneof![
        Just(MultiPoly::one()),
        Just(MultiPoly::from_int(2)),
        Just(MultiPoly::var(B).add(&MultiPoly::from_int(2))),
        Just(MultiPoly::var(ALPHA).add(&MultiPoly::one())),
    ];
    (small_poly(PARAMS), den).prop_map(|(n, d)| Coefficient::new(n, d).expect("nonzero denominator"))
}

pub fn nonzero_coefficient() -> impl Strategy<Value = Coefficient> {
    coefficient().prop_filter("nonzero", |c| !c.is_zero())
}

pub fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..4, 0..=3).prop_map(|g| Word::from_gens(&g))
}

pub fn ncpoly() -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((word(), coefficient()), 0..=4).prop_map(NcPoly::from_terms)
}
