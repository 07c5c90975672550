//! Simple knots `K(p,q,k)` in lens spaces and their knot Floer data.
//!
//! The pipeline is diagram -> relative periodic domain -> Alexander gradings:
//!
//! 1. [`build_diagram`] lays out the standard genus-one doubly pointed diagram;
//! 2. [`solve_relative_periodic_domain`] finds the integral 2-chain whose
//!    boundary is `q'` copies of the knot plus whole copies of `alpha` and
//!    `beta`;
//! 3. [`alexander_gradings`] evaluates `c_1` on that chain generator by
//!    generator and normalizes.
//!
//! None of it consults correction terms; the identity with the lens-space side
//! is checked, not used.

mod alexander;
mod diagram;
mod domain;

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lens::LensSpace;

pub use alexander::{
    alexander_gradings, connected_sum_knot_data, tau_table, verify_two_tau, verify_two_tau_with,
    KnotFloerData, VerificationReport, Witness,
};
pub use diagram::{build_diagram, Corner, Diagram, Region};
pub use domain::{solve_relative_periodic_domain, RelPeriodicDomain};

/// The simple knot in `space` whose basepoints sit `k` regions apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimpleKnot {
    pub space: LensSpace,
    pub k: u64,
}

impl SimpleKnot {
    pub fn new(space: LensSpace, k: i64) -> Result<Self> {
        if k < 0 || k as u64 >= space.p() {
            return Err(Error::InvalidKnot(format!(
                "k = {k} must lie in [0, {}) for {space}",
                space.p()
            )));
        }
        Ok(SimpleKnot { space, k: k as u64 })
    }

    pub fn from_params(p: i64, q: i64, k: i64) -> Result<Self> {
        SimpleKnot::new(LensSpace::new(p, q)?, k)
    }

    pub fn p(&self) -> u64 {
        self.space.p()
    }

    pub fn q(&self) -> u64 {
        self.space.q()
    }

    /// Order of `[K]` in `H_1`: `p / gcd(p, k)`, which is 1 for the unknot.
    pub fn order(&self) -> u64 {
        self.p() / self.p().gcd(&self.k)
    }

    /// The knot with basepoint offset `p - k`.
    pub fn mirror_offset(&self) -> SimpleKnot {
        SimpleKnot { space: self.space, k: (self.p() - self.k) % self.p() }
    }

    /// Every simple knot with `p <= pmax`, ordered by `(p, q, k)`.
    pub fn enumerate(pmax: u64) -> Vec<SimpleKnot> {
        LensSpace::enumerate(pmax)
            .into_iter()
            .flat_map(|space| (0..space.p()).map(move |k| SimpleKnot { space, k }))
            .collect()
    }
}

impl fmt::Display for SimpleKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({},{},{})", self.p(), self.q(), self.k)
    }
}
