//! Exact verification of the algebraic identities relating four-generator
//! Sklyanin algebras at `(α, 1, −1)` to the dense `*`-subalgebras of the
//! Cuntz-Krieger algebras `O_B`, `B = (b−1, 1, b−2, 1)`, and of the Legendre
//! curve family `y²z = x(x−z)(x−λz)`, `λ = (b−2)/(b+2)`.
//!
//! Everything is exact: scalars live in `Q(params)`, ideal membership comes
//! with certificates that are re-expanded before they are returned, and
//! curve identities are polynomial identities checked term by term.

pub mod coeff;
pub mod curves;
pub mod ideal;
pub mod linalg;
pub mod ncpoly;
pub mod parser;
pub mod presentations;
pub mod report;
