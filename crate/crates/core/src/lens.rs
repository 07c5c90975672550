//! Lens spaces, their Spin^c structures and correction terms.
//!
//! # Spin^c chart
//!
//! Spin^c structures on `L(p,q)` are labeled `0..p` by the index `i` of the
//! correction-term recursion
//!
//! ```text
//! d(1, 0, 0) = 0
//! d(p, q, i) = ((2i + 1 - p - q)^2 - pq) / (4pq) - d(q, p mod q, i mod q)
//! ```
//!
//! with orientations chosen so that `d(p, 1, i) = ((2i - p)^2 - p) / (4p)`.
//! In this chart
//!
//! * conjugation is `J(i) = (p + q - 1 - i) mod p`, the affine involution that
//!   preserves `d`;
//! * the class `PD[K(p,q,k)]` acts by `i -> i + k`.
//!
//! Neither identification is canonical. Both are checked against the
//! recursion and against the diagrammatic Alexander gradings in the test
//! suites rather than assumed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{Rat, RatMultiset};

/// `L(p,q)` with `gcd(p,q) = 1` and `0 <= q < p`. `L(1,0)` is `S^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LensSpace {
    p: u64,
    q: u64,
}

impl LensSpace {
    /// Validates and normalizes `q` into `[0, p)`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidLens { p, q, reason: "p must be at least 1" });
        }
        let qn = q.rem_euclid(p);
        if p > 1 && qn.gcd(&p) != 1 {
            return Err(Error::InvalidLens { p, q, reason: "gcd(p, q) must be 1" });
        }
        Ok(LensSpace { p: p as u64, q: qn as u64 })
    }

    pub fn sphere() -> Self {
        LensSpace { p: 1, q: 0 }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn label(&self, i: u64) -> Result<SpincLabel> {
        if i >= self.p {
            return Err(Error::InvalidLabel { p: self.p, q: self.q, label: i });
        }
        Ok(SpincLabel(i))
    }

    pub fn labels(&self) -> impl Iterator<Item = SpincLabel> {
        (0..self.p).map(SpincLabel)
    }

    /// Every `L(p,q)` with `p <= pmax`, ordered by `(p, q)`.
    pub fn enumerate(pmax: u64) -> Vec<LensSpace> {
        let mut out = Vec::new();
        for p in 1..=pmax {
            for q in 0..p {
                if p == 1 || q.gcd(&p) == 1 {
                    out.push(LensSpace { p, q });
                }
            }
        }
        out
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

/// A Spin^c structure on an ambient lens space, in the recursion chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpincLabel(pub u64);

impl SpincLabel {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for SpincLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// `J(i) = (p + q - 1 - i) mod p`.
pub fn conjugate(space: LensSpace, s: SpincLabel) -> SpincLabel {
    let p = space.p;
    SpincLabel((p + space.q + p - 1 - s.0 % p) % p)
}

/// `i -> (i + k) mod p`.
pub fn pd_shift(space: LensSpace, s: SpincLabel, k: i64) -> SpincLabel {
    let p = space.p as i64;
    SpincLabel((s.0 as i64 + k).rem_euclid(p) as u64)
}

/// Which reading of the shifted conjugate to use on the right-hand side of
/// the `2 tau = d - d'` identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftForm {
    /// `J s + PD[K]`.
    #[default]
    Proposition,
    /// `J (s + PD[K])`. Differs from the default by `2 PD[K]`.
    Corollary,
}

impl ShiftForm {
    pub fn apply(self, space: LensSpace, s: SpincLabel, k: i64) -> SpincLabel {
        match self {
            ShiftForm::Proposition => pd_shift(space, conjugate(space, s), k),
            ShiftForm::Corollary => conjugate(space, pd_shift(space, s, k)),
        }
    }
}

/// The `p` correction terms of a lens space, indexed by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectionTable {
    pub p: u64,
    pub q: u64,
    pub d: Vec<Rat>,
}

impl CorrectionTable {
    pub fn space(&self) -> LensSpace {
        LensSpace { p: self.p, q: self.q }
    }

    pub fn get(&self, s: SpincLabel) -> &Rat {
        &self.d[s.index()]
    }

    pub fn multiset(&self) -> RatMultiset {
        self.d.iter().cloned().collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }

    /// Per-label right-hand side `d(s) - d(shift(s))`.
    pub fn shifted_difference(&self, s: SpincLabel, k: i64, form: ShiftForm) -> Rat {
        let t = form.apply(self.space(), s, k);
        self.get(s) - self.get(t)
    }

    /// The multiset `{ d(s) - d(J s + PD[K]) }` (or the corollary reading).
    pub fn rhs_multiset(&self, k: i64, form: ShiftForm) -> RatMultiset {
        self.space()
            .labels()
            .map(|s| self.shifted_difference(s, k, form))
            .collect()
    }
}

fn recursion_term(p: u64, q: u64, i: u64) -> Rat {
    let a = 2 * i as i64 + 1 - p as i64 - q as i64;
    let pq = (p * q) as i64;
    Rat::new(a * a - pq, 4 * pq).expect("p, q >= 1")
}

fn build_table(space: LensSpace, sub: Option<&CorrectionTable>) -> CorrectionTable {
    let (p, q) = (space.p, space.q);
    let d = match sub {
        None => vec![Rat::zero()],
        Some(sub) => (0..p)
            .map(|i| recursion_term(p, q, i) - &sub.d[(i % q) as usize])
            .collect(),
    };
    CorrectionTable { p, q, d }
}

/// Correction terms of `space` by the Euclidean recursion. Each level of the
/// descent `(p, q) -> (q, p mod q)` is computed once.
pub fn correction_terms(space: LensSpace) -> CorrectionTable {
    if space.p == 1 {
        return build_table(space, None);
    }
    let sub = correction_terms(LensSpace { p: space.q, q: space.p % space.q });
    build_table(space, Some(&sub))
}

/// Thread-safe memo of whole correction tables keyed by `(p, q)`. Sub-tables
/// met during the descent are cached too.
#[derive(Default)]
pub struct CorrectionCache {
    tables: RwLock<HashMap<LensSpace, Arc<CorrectionTable>>>,
}

impl CorrectionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&self, space: LensSpace) -> Arc<CorrectionTable> {
        if let Some(t) = self.tables.read().expect("cache lock").get(&space) {
            return Arc::clone(t);
        }
        let table = if space.p == 1 {
            build_table(space, None)
        } else {
            let sub = self.table(LensSpace { p: space.q, q: space.p % space.q });
            build_table(space, Some(&sub))
        };
        // A racing worker may have inserted the same (identical) table.
        let mut guard = self.tables.write().expect("cache lock");
        Arc::clone(guard.entry(space).or_insert_with(|| Arc::new(table)))
    }

    pub fn len(&self) -> usize {
        self.tables.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `{ d(s) - d(J s + PD[K]) : s }` for the class `k` in this chart.
pub fn two_tau_rhs(space: LensSpace, k: i64) -> RatMultiset {
    correction_terms(space).rhs_multiset(k, ShiftForm::Proposition)
}

/// Correction terms of a connected sum: `d(s_1 # ... # s_n) = sum d(s_i)`,
/// keyed by label tuples in lexicographic order. The empty sum is `S^3`.
pub fn connected_sum_d(tables: &[CorrectionTable]) -> BTreeMap<Vec<u64>, Rat> {
    let mut acc: BTreeMap<Vec<u64>, Rat> = BTreeMap::new();
    acc.insert(Vec::new(), Rat::zero());
    for t in tables {
        let mut next = BTreeMap::new();
        for (labels, d) in &acc {
            for (i, di) in t.d.iter().enumerate() {
                let mut key = labels.clone();
                key.push(i as u64);
                next.insert(key, d + di);
            }
        }
        acc = next;
    }
    acc
}
