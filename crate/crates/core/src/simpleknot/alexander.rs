use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{lcm_u64, Rat, RatMultiset};
use crate::lens::{correction_terms, CorrectionTable, ShiftForm, SpincLabel};
use crate::simpleknot::{build_diagram, solve_relative_periodic_domain, SimpleKnot};

/// Alexander gradings, `tau` and genus data of a simple knot or of a
/// connected sum of simple knots.
///
/// Generators and Spin^c labels of a connected sum are flattened row-major
/// over the summands. For a single simple knot, generator `x_i` lies in
/// Spin^c class `(i - 1) mod p` of the lens-space chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotFloerData {
    pub summands: Vec<SimpleKnot>,
    pub order: u64,
    /// Alexander grading of each generator.
    pub alexander: Vec<Rat>,
    /// Flattened Spin^c label of each generator.
    pub generator_label: Vec<usize>,
    /// `tau` indexed by flattened Spin^c label.
    pub tau: Vec<Rat>,
    pub a_max: Rat,
    /// Euler characteristic of a minimal rational Seifert surface.
    pub chi_f: Rat,
    /// Fractional class `k_{s,F}` in `[-1/2, 1/2)`, by label.
    pub kfrac: Vec<Rat>,
}

#[derive(Serialize)]
struct SimpleKnotJson<'a> {
    p: u64,
    q: u64,
    k: u64,
    order: u64,
    #[serde(rename = "A")]
    alexander: &'a [Rat],
    tau: &'a [Rat],
    a_max: &'a Rat,
    #[serde(rename = "chi_F")]
    chi_f: &'a Rat,
}

#[derive(Serialize)]
struct SumJson<'a> {
    summands: Vec<[u64; 3]>,
    order: u64,
    #[serde(rename = "A")]
    alexander: &'a [Rat],
    tau: &'a [Rat],
    a_max: &'a Rat,
    #[serde(rename = "chi_F")]
    chi_f: &'a Rat,
}

impl KnotFloerData {
    fn finish(summands: Vec<SimpleKnot>, order: u64, alexander: Vec<Rat>, generator_label: Vec<usize>) -> Self {
        let mut tau = vec![Rat::zero(); alexander.len()];
        for (a, &s) in alexander.iter().zip(&generator_label) {
            tau[s] = a.clone();
        }
        let a_max = alexander.iter().max().cloned().unwrap_or_else(Rat::zero);
        let chi_f = Rat::int(order as i64) * (Rat::one() - a_max.mul_int(2));
        let kfrac = tau.iter().map(Rat::frac_center).collect();
        KnotFloerData { summands, order, alexander, generator_label, tau, a_max, chi_f, kfrac }
    }

    pub fn alexander_multiset(&self) -> RatMultiset {
        self.alexander.iter().cloned().collect()
    }

    pub fn tau_multiset(&self) -> RatMultiset {
        self.tau.iter().cloned().collect()
    }

    pub fn a_min(&self) -> Rat {
        self.alexander.iter().min().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn mean(&self) -> Rat {
        let n = self.alexander.len() as i64;
        self.alexander.iter().sum::<Rat>().div_int(n).expect("at least one generator")
    }

    /// The simple knot, when this is not a connected sum.
    pub fn simple_knot(&self) -> Option<SimpleKnot> {
        match self.summands.as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    /// Spin^c label tuple for a flattened label.
    pub fn label_tuple(&self, flat: usize) -> Vec<u64> {
        let mut rest = flat as u64;
        let mut out = vec![0; self.summands.len()];
        for (slot, knot) in out.iter_mut().zip(&self.summands).rev() {
            *slot = rest % knot.p();
            rest /= knot.p();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let out = match self.simple_knot() {
            Some(k) => serde_json::to_string(&SimpleKnotJson {
                p: k.p(),
                q: k.q(),
                k: k.k,
                order: self.order,
                alexander: &self.alexander,
                tau: &self.tau,
                a_max: &self.a_max,
                chi_f: &self.chi_f,
            }),
            None => serde_json::to_string(&SumJson {
                summands: self.summands.iter().map(|k| [k.p(), k.q(), k.k]).collect(),
                order: self.order,
                alexander: &self.alexander,
                tau: &self.tau,
                a_max: &self.a_max,
                chi_f: &self.chi_f,
            }),
        };
        out.expect("knot data serializes")
    }

    /// Checks the structural invariants: anti-symmetry, `a_max = -a_min`,
    /// one generator per label, `2 q' A` integral, `chi_F <= 1`.
    pub fn check(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::Invariant(format!("{:?}: {msg}", self.summands)));
        if !self.alexander_multiset().is_antisymmetric() {
            return fail("Alexander multiset is not anti-symmetric");
        }
        if self.a_max != -self.a_min() {
            return fail("a_max != -a_min");
        }
        let mut seen = vec![false; self.tau.len()];
        for &s in &self.generator_label {
            if std::mem::replace(&mut seen[s], true) {
                return fail("two generators share a Spin^c class");
            }
        }
        if self.tau_multiset() != self.alexander_multiset() {
            return fail("tau multiset differs from A multiset");
        }
        let two_q = 2 * self.order as i64;
        if self.alexander.iter().any(|a| !a.mul_int(two_q).is_integer()) {
            return fail("2 q' A is not integral");
        }
        if self.chi_f > Rat::one() {
            return fail("chi_F > 1");
        }
        Ok(())
    }
}

/// Rational Alexander gradings of a simple knot from its diagram.
///
/// For each generator `x`, `<c_1(s_{w,z}(x)), [F]> = e(P) + 2 n_x(P) - n_w(P) -
/// n_z(P)` on the relative periodic domain `P` (all regions have Euler measure
/// zero), then `A(x) = (<c_1, [F]> - q') / (2 q')`. The absolute level is fixed
/// by subtracting the mean, after which the gradings must be anti-symmetric.
pub fn alexander_gradings(knot: SimpleKnot) -> Result<KnotFloerData> {
    let diagram = build_diagram(knot);
    diagram.check()?;
    let domain = solve_relative_periodic_domain(&diagram)?;
    let order = knot.order();
    if domain.longitude_multiplicity as u64 != order {
        return Err(Error::Invariant(format!(
            "{knot}: domain has longitudinal multiplicity {} but the order is {order}",
            domain.longitude_multiplicity
        )));
    }
    let q = order as i64;
    let p = knot.p() as usize;
    let basepoints = Rat::int(domain.n_w + domain.n_z);
    // e(P): Euler measures weighted by the region's mean sector multiplicity.
    let euler: Rat = domain
        .sectors
        .iter()
        .enumerate()
        .map(|(j, s)| diagram.euler_measure(j) * Rat::frac(s.iter().sum(), 4))
        .sum();
    let raw: Vec<Rat> = (0..p)
        .map(|i| {
            let c1 = &euler + &domain.vertex_average[i].mul_int(2) - basepoints.clone();
            (c1 - Rat::int(q)).div_int(2 * q).expect("order >= 1")
        })
        .collect();
    let mean = raw.iter().sum::<Rat>().div_int(p as i64).expect("p >= 1");
    let alexander: Vec<Rat> = raw.iter().map(|a| a - &mean).collect();
    let generator_label = (0..p).map(|i| (i + p - 1) % p).collect();

    let data = KnotFloerData::finish(vec![knot], order, alexander, generator_label);
    data.check()?;
    Ok(data)
}

/// `tau_s = A(s)` for a Floer simple knot, keyed by Spin^c label.
pub fn tau_table(knot: SimpleKnot) -> Result<BTreeMap<SpincLabel, Rat>> {
    let data = alexander_gradings(knot)?;
    Ok(data
        .tau
        .into_iter()
        .enumerate()
        .map(|(s, t)| (SpincLabel(s as u64), t))
        .collect())
}

/// One row of a passing comparison: generator, its label, `2 tau`, and the
/// two correction terms whose difference it equals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub generator: usize,
    pub label: u64,
    pub two_tau: Rat,
    pub d: Rat,
    pub d_shifted: Rat,
}

/// Outcome of comparing `{2 A(x)}` with `{d(s) - d(J s + PD[K])}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub knot: SimpleKnot,
    pub form: ShiftForm,
    pub pass: bool,
    /// Whether the identity also holds label by label in the chart.
    pub per_label: bool,
    pub two_tau: RatMultiset,
    pub rhs: RatMultiset,
    /// Present when `pass`; label-by-label when `per_label`, otherwise the
    /// sorted pairing of the two multisets.
    pub witness: Option<Vec<Witness>>,
}

pub fn verify_two_tau(knot: SimpleKnot) -> Result<VerificationReport> {
    let data = alexander_gradings(knot)?;
    let table = correction_terms(knot.space);
    Ok(verify_two_tau_with(&data, &table, ShiftForm::Proposition))
}

/// Compares precomputed knot data with a correction table. `data` must be
/// for a single simple knot in the table's space.
pub fn verify_two_tau_with(data: &KnotFloerData, table: &CorrectionTable, form: ShiftForm) -> VerificationReport {
    let knot = data.simple_knot().expect("verification applies to simple knots");
    assert_eq!(knot.space, table.space(), "table for the wrong lens space");
    let k = knot.k as i64;
    let two_tau: RatMultiset = data.alexander.iter().map(|a| a.mul_int(2)).collect();
    let rhs = table.rhs_multiset(k, form);
    let pass = two_tau == rhs;

    let rows: Vec<Witness> = data
        .alexander
        .iter()
        .enumerate()
        .map(|(g, a)| {
            let s = SpincLabel(data.generator_label[g] as u64);
            let t = form.apply(table.space(), s, k);
            Witness {
                generator: g,
                label: s.0,
                two_tau: a.mul_int(2),
                d: table.get(s).clone(),
                d_shifted: table.get(t).clone(),
            }
        })
        .collect();
    let per_label = rows.iter().all(|w| w.two_tau == &w.d - &w.d_shifted);

    let witness = if !pass {
        None
    } else if per_label {
        Some(rows)
    } else {
        let mut lhs: Vec<(Rat, usize)> = data.alexander.iter().map(|a| a.mul_int(2)).zip(0..).collect();
        lhs.sort();
        let mut labels: Vec<(Rat, u64)> = table
            .space()
            .labels()
            .map(|s| (table.shifted_difference(s, k, form), s.0))
            .collect();
        labels.sort();
        Some(
            lhs.into_iter()
                .zip(labels)
                .map(|((two_tau, g), (_, s))| {
                    let s = SpincLabel(s);
                    Witness {
                        generator: g,
                        label: s.0,
                        two_tau,
                        d: table.get(s).clone(),
                        d_shifted: table.get(form.apply(table.space(), s, k)).clone(),
                    }
                })
                .collect(),
        )
    };

    VerificationReport { knot, form, pass, per_label, two_tau, rhs, witness }
}

/// Knot Floer data of `K_1 # K_2`: generators are pairs, gradings and `tau`
/// add, and the order is the lcm of the orders.
pub fn connected_sum_knot_data(d1: &KnotFloerData, d2: &KnotFloerData) -> KnotFloerData {
    let n2 = d2.alexander.len();
    let mut alexander = Vec::with_capacity(d1.alexander.len() * n2);
    let mut labels = Vec::with_capacity(d1.alexander.len() * n2);
    for (a1, &s1) in d1.alexander.iter().zip(&d1.generator_label) {
        for (a2, &s2) in d2.alexander.iter().zip(&d2.generator_label) {
            alexander.push(a1 + a2);
            labels.push(s1 * n2 + s2);
        }
    }
    let summands = d1.summands.iter().chain(&d2.summands).copied().collect();
    KnotFloerData::finish(summands, lcm_u64(d1.order, d2.order), alexander, labels)
}
