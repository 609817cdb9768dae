//! Exact combinatorics for the order-`n` Nash blowup of the toric surface
//! singularity `A_n = V(xz - y^(n+1))`.
//!
//! The crate builds the point set `I_n = { m_J : J in S_{A_n} }`, the fan of
//! linearity domains of its order function on the cone
//! `sigma_n = cone{(0,1), (n+1,-n)}`, and checks that every ray `(k, 1-k)`
//! of the minimal resolution appears in it. Everything runs in exact integer
//! arithmetic.
//!
//! Module map:
//!
//! * [`multiindex`]: multi-index sets `Lambda_{t,n}`, binomial products, the
//!   bar lift and the matrix `A_n`.
//! * [`exactlinalg`]: fraction-free determinants, rank and span tests over
//!   big integers.
//! * [`eta`]: compositions with a parity bit, their staircase sets `T_eta`,
//!   the shifted sets `T'_eta` and the preimages `J_eta`.
//! * [`identities`]: instance checkers for the binomial identities and span
//!   lemmas the basis construction rests on.
//! * [`nashfan`]: the Jacobian-minor matrices, `S_{A_n}` membership, order
//!   functions, Newton fans and the minimal-resolution fan.
//! * [`etak`]: the distinguished sequences `eta_k`, their twins and the
//!   minimality checks.
//! * [`oracle`]: brute-force enumeration of `S_{A_n}` for small `n`.

pub mod error;
pub mod eta;
pub mod etak;
pub mod exactlinalg;
pub mod identities;
pub mod multiindex;
pub mod nashfan;
pub mod oracle;

pub use error::{Error, Result};
pub use eta::EtaSequence;
pub use exactlinalg::BigIntMatrix;
pub use multiindex::{LatticePoint, MultiIndex};
pub use nashfan::{Fan2D, PointCloud};
