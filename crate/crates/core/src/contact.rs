//! Tight contact structures on `L(m,1)`.
//!
//! There are exactly `m - 1` of them, obtained by Legendrian surgery on a
//! Legendrian unknot in `(S^3, xi_std)` with `tb = 1 - m` and rotation number
//! `rot in {m-2, m-4, .., 2-m}`. Their contact invariants are taken to be
//! nontrivial and pairwise distinct; matching a structure to a Spin^c class
//! is done through its correction term alone.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::Rat;
use crate::lens::{correction_terms, CorrectionTable, LensSpace, SpincLabel};
use crate::simpleknot::{alexander_gradings, KnotFloerData, SimpleKnot};

/// Euler characteristic of the Stein filling: a 0-handle plus one 2-handle.
const FILLING_EULER: i64 = 2;
/// Signature of the filling: its intersection form is the 1x1 matrix `(-m)`.
const FILLING_SIGNATURE: i64 = -1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightContact {
    pub m: u64,
    /// `1 ..= m - 1`.
    pub index: u64,
    /// Thurston–Bennequin number of the surgery unknot.
    pub tb: i64,
    /// Rotation number of the surgery unknot, `m - 2 index`.
    pub rot: i64,
    pub hopf: Rat,
    pub d_xi: Rat,
}

pub fn enumerate_tight(m: i64) -> Result<Vec<TightContact>> {
    if m < 2 {
        return Err(Error::InvalidContact(format!("L({m},1) needs m >= 2")));
    }
    (1..m)
        .map(|i| {
            let rot = m - 2 * i;
            let hopf = hopf_invariant(m, rot)?;
            let d_xi = contact_d(&hopf);
            Ok(TightContact { m: m as u64, index: i as u64, tb: 1 - m, rot, hopf, d_xi })
        })
        .collect()
}

/// `h = c_1^2 - 2 chi - 3 sigma` of the filling. With intersection form
/// `(-m)` and `<c_1, [generator]> = rot`, `c_1^2 = -rot^2 / m`.
pub fn hopf_invariant(m: i64, rot: i64) -> Result<Rat> {
    if m < 2 {
        return Err(Error::InvalidContact(format!("m = {m} must be at least 2")));
    }
    if (rot - m).rem_euclid(2) != 0 || rot.abs() > m - 2 {
        return Err(Error::InvalidContact(format!(
            "rotation number {rot} must satisfy |rot| <= {} and rot = m mod 2",
            m - 2
        )));
    }
    let c1_squared = Rat::new(-rot * rot, m)?;
    Ok(c1_squared - Rat::int(2 * FILLING_EULER) - Rat::int(3 * FILLING_SIGNATURE))
}

/// `d(Y, s_xi) = -h/4 - 1/2`.
pub fn contact_d(h: &Rat) -> Rat {
    -(h * &Rat::frac(1, 4)) - Rat::frac(1, 2)
}

/// All labels whose correction term equals `d_xi`.
pub fn matched_labels(structure: &TightContact, table: &CorrectionTable) -> Vec<SpincLabel> {
    table
        .space()
        .labels()
        .filter(|&s| table.get(s) == &structure.d_xi)
        .collect()
}

/// `tau_xi` as a set of candidate values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauXi {
    pub labels: Vec<SpincLabel>,
    pub values: BTreeSet<Rat>,
}

impl TauXi {
    /// A single candidate value is definitive; more than one is ambiguous.
    pub fn definitive(&self) -> Option<&Rat> {
        match self.values.len() {
            1 => self.values.iter().next(),
            _ => None,
        }
    }
}

fn check_matching_space(structure: &TightContact, knot: SimpleKnot) -> Result<()> {
    if knot.space != LensSpace::new(structure.m as i64, 1)? {
        return Err(Error::InvalidContact(format!(
            "structure lives on L({},1) but the knot is in {}",
            structure.m, knot.space
        )));
    }
    Ok(())
}

pub fn tau_xi_with(structure: &TightContact, data: &KnotFloerData, table: &CorrectionTable) -> Result<TauXi> {
    let knot = data
        .simple_knot()
        .ok_or_else(|| Error::InvalidContact("tau_xi needs a simple knot".into()))?;
    check_matching_space(structure, knot)?;
    let labels = matched_labels(structure, table);
    if labels.is_empty() {
        return Err(Error::Invariant(format!(
            "no Spin^c structure on L({},1) has d = {}",
            structure.m, structure.d_xi
        )));
    }
    let values = labels.iter().map(|s| data.tau[s.index()].clone()).collect();
    Ok(TauXi { labels, values })
}

pub fn tau_xi(structure: &TightContact, knot: SimpleKnot) -> Result<TauXi> {
    check_matching_space(structure, knot)?;
    let data = alexander_gradings(knot)?;
    let table = correction_terms(knot.space);
    tau_xi_with(structure, &data, &table)
}
