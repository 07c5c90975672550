//! Formal `(tb_Q, rot_Q)` calculus.
//!
//! A [`LegendrianRep`] is a pair of rationals attached to a knot type. The
//! operations apply the stabilization and connected-sum rules and evaluate
//! the two upper bounds for `tb_Q + rot_Q`:
//!
//! * `2 tau* - 1`, with `tau*` the `tau` invariant in the contact Spin^c class;
//! * `-chi(F) / q' = 2 A_max - 1`, which ignores the contact structure.
//!
//! Nothing here certifies that a pair is realized by an actual Legendrian
//! embedding; a report that a pair satisfies a bound means it is consistent
//! with it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{lcm_u64, Rat};
use crate::simpleknot::{KnotFloerData, SimpleKnot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StabSign {
    Positive,
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LegendrianRep {
    /// Summands of the underlying knot; one entry unless a connected sum.
    pub knot: Vec<SimpleKnot>,
    pub order: u64,
    pub tb_q: Rat,
    pub rot_q: Rat,
}

impl LegendrianRep {
    /// Both invariants must have denominators dividing the order.
    pub fn new(knot: SimpleKnot, tb_q: Rat, rot_q: Rat) -> Result<Self> {
        Self::with_summands(vec![knot], tb_q, rot_q)
    }

    pub fn with_summands(knot: Vec<SimpleKnot>, tb_q: Rat, rot_q: Rat) -> Result<Self> {
        let order = knot.iter().map(SimpleKnot::order).fold(1, lcm_u64);
        for (name, v) in [("tb_Q", &tb_q), ("rot_Q", &rot_q)] {
            if !v.mul_int(order as i64).is_integer() {
                return Err(Error::InvalidLegendrian(format!(
                    "{name} = {v} has a denominator not dividing the order {order}"
                )));
            }
        }
        Ok(LegendrianRep { knot, order, tb_q, rot_q })
    }

    /// `tb_Q + rot_Q`.
    pub fn lhs(&self) -> Rat {
        &self.tb_q + &self.rot_q
    }
}

/// `S_+` lowers `tb_Q` by one and raises `rot_Q` by one; `S_-` lowers both.
pub fn stabilize(rep: &LegendrianRep, sign: StabSign, times: u32) -> LegendrianRep {
    let n = times as i64;
    let dr = match sign {
        StabSign::Positive => n,
        StabSign::Negative => -n,
    };
    LegendrianRep {
        knot: rep.knot.clone(),
        order: rep.order,
        tb_q: &rep.tb_q - &Rat::int(n),
        rot_q: &rep.rot_q + &Rat::int(dr),
    }
}

/// `tb_Q` adds plus one, `rot_Q` adds.
pub fn connect_sum(a: &LegendrianRep, b: &LegendrianRep) -> LegendrianRep {
    LegendrianRep {
        knot: a.knot.iter().chain(&b.knot).copied().collect(),
        order: lcm_u64(a.order, b.order),
        tb_q: &a.tb_q + &b.tb_q + Rat::one(),
        rot_q: &a.rot_q + &b.rot_q,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub lhs: Rat,
    pub tau_bound: Rat,
    pub be_bound: Rat,
    pub satisfied_tau: bool,
    pub satisfied_be: bool,
    /// `tau_bound - lhs`.
    pub slack_tau: Rat,
    /// `be_bound - lhs`.
    pub slack_be: Rat,
}

impl BoundReport {
    /// `tau_bound <= be_bound`.
    pub fn dominance_holds(&self) -> bool {
        self.tau_bound <= self.be_bound
    }
}

/// Evaluates both bounds. `tau_star` should be one of `data`'s `tau` values
/// (or a sum of them for connected sums).
pub fn bound_report(rep: &LegendrianRep, data: &KnotFloerData, tau_star: &Rat) -> BoundReport {
    let lhs = rep.lhs();
    let tau_bound = tau_star.mul_int(2) - Rat::one();
    let be_bound = -data.chi_f.div_int(data.order as i64).expect("order >= 1");
    BoundReport {
        satisfied_tau: lhs <= tau_bound,
        satisfied_be: lhs <= be_bound,
        slack_tau: &tau_bound - &lhs,
        slack_be: &be_bound - &lhs,
        lhs,
        tau_bound,
        be_bound,
    }
}

/// Whether `(lhs - 1)/2` agrees modulo 1 with some fractional class
/// `k_{s,F}`, as every Legendrian representative's must.
pub fn parity_check(rep: &LegendrianRep, data: &KnotFloerData) -> bool {
    let half = (rep.lhs() - Rat::one()).div_int(2).expect("nonzero");
    data.kfrac.iter().any(|k| (&half - k).frac_center().is_zero())
}
