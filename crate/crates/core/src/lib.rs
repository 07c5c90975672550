//! Exact computations for simple knots in lens spaces.
//!
//! Everything here is exact: rationals are arbitrary precision and no floating
//! point enters any computed quantity. The main pipelines are
//!
//! * [`lens`]: correction terms `d(L(p,q), s)` by the Euclidean recursion, plus
//!   the Spin^c chart (conjugation, shifts by `PD[K]`);
//! * [`simpleknot`]: the genus-one doubly pointed diagram of `K(p,q,k)`, its
//!   relative periodic domain, rational Alexander gradings and `tau`;
//! * [`contact`]: the `m - 1` tight contact structures on `L(m,1)`;
//! * [`legendrian`]: formal `(tb_Q, rot_Q)` calculus and bound evaluation.

pub mod contact;
pub mod error;
pub mod exactq;
pub mod legendrian;
pub mod lens;
pub mod simpleknot;

pub use error::{Error, Result};
pub use exactq::{Rat, RatMultiset};
pub use lens::{CorrectionCache, CorrectionTable, LensSpace, ShiftForm, SpincLabel};
pub use simpleknot::{KnotFloerData, SimpleKnot};
