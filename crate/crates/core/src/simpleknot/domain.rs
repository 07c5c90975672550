//! The relative periodic domain of a simple knot.
//!
//! The domain is a 2-chain `P` on the torus with
//!
//! ```text
//! ∂P = c_alpha·alpha + c_beta·beta + m·K
//! ```
//!
//! where `K` is the knot curve drawn on the diagram. Because `K` runs through
//! the interior of regions, `P` is described by one integer per corner sector
//! of each region (four per region). Adjacent sectors are related by
//!
//! * crossing an alpha-arc upward: `+c_alpha`;
//! * crossing a beta-arc leftward: `+c_beta`;
//! * moving along a region side that `K` crosses: `±m`, depending on which
//!   side of `K` is entered.
//!
//! Solving means finding the primitive integral solution with `m > 0` and the
//! sector of `w` normalized to multiplicity zero. Capping off the `alpha` and
//! `beta` copies with meridian disks turns `P` into `m` times the rational
//! Seifert surface, so `m` must equal the order of the knot.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::Rat;
use crate::simpleknot::diagram::{Corner, Diagram};

const C_ALPHA: usize = 0;
const C_BETA: usize = 1;
const LONGITUDE: usize = 2;

/// `f[plus] - f[minus] = coeffs · (c_alpha, c_beta, m)`.
#[derive(Clone, Copy, Debug)]
struct Relation {
    plus: usize,
    minus: usize,
    coeffs: [i64; 3],
}

fn sector(region: usize, corner: Corner) -> usize {
    4 * region + corner as usize
}

fn relations(diagram: &Diagram) -> Vec<Relation> {
    let p = diagram.generator_count();
    let mut on_alpha = vec![false; p];
    for &a in &diagram.knot_alpha_crossings {
        on_alpha[a] = true;
    }
    let mut on_beta = vec![false; p];
    for &b in &diagram.knot_beta_crossings {
        on_beta[b] = true;
    }
    let knot = |hit: bool, sign: i64| [0, 0, if hit { sign } else { 0 }];

    let mut rels = Vec::with_capacity(8 * p);
    for (j, region) in diagram.regions.iter().enumerate() {
        use Corner::*;
        // The knot crosses alpha moving down, so its left side is +x: walking
        // rightward along an alpha side enters the left side.
        rels.push(Relation {
            plus: sector(j, SE),
            minus: sector(j, SW),
            coeffs: knot(on_alpha[region.bottom_alpha], 1),
        });
        rels.push(Relation {
            plus: sector(j, NE),
            minus: sector(j, NW),
            coeffs: knot(on_alpha[region.top_alpha], 1),
        });
        // It crosses beta moving left, so its left side is -y: walking up a
        // beta side leaves the left side.
        rels.push(Relation {
            plus: sector(j, NW),
            minus: sector(j, SW),
            coeffs: knot(on_beta[region.left_beta], -1),
        });
        rels.push(Relation {
            plus: sector(j, NE),
            minus: sector(j, SE),
            coeffs: knot(on_beta[region.right_beta], -1),
        });
    }
    for arc in &diagram.alpha_arcs {
        // left (above) minus right (below) is c_alpha at both ends
        rels.push(Relation {
            plus: sector(arc.left_region, Corner::SW),
            minus: sector(arc.right_region, Corner::NW),
            coeffs: [1, 0, 0],
        });
        rels.push(Relation {
            plus: sector(arc.left_region, Corner::SE),
            minus: sector(arc.right_region, Corner::NE),
            coeffs: [1, 0, 0],
        });
    }
    for arc in &diagram.beta_arcs {
        rels.push(Relation {
            plus: sector(arc.left_region, Corner::SE),
            minus: sector(arc.right_region, Corner::SW),
            coeffs: [0, 1, 0],
        });
        rels.push(Relation {
            plus: sector(arc.left_region, Corner::NE),
            minus: sector(arc.right_region, Corner::NW),
            coeffs: [0, 1, 0],
        });
    }
    rels
}

/// The solved 2-chain and the quantities read off from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelPeriodicDomain {
    /// Multiplicity of each region near each of its corners, indexed by
    /// [`Corner`].
    pub sectors: Vec<[i64; 4]>,
    /// Multiplicity of `alpha` in the boundary.
    pub alpha_multiplicity: i64,
    /// Multiplicity of `beta` in the boundary.
    pub beta_multiplicity: i64,
    /// Multiplicity of the knot in the boundary; equals the order.
    pub longitude_multiplicity: i64,
    /// Boundary multiplicity measured at both ends of every alpha-arc.
    pub alpha_arc_boundary: Vec<[i64; 2]>,
    /// Boundary multiplicity measured at both ends of every beta-arc.
    pub beta_arc_boundary: Vec<[i64; 2]>,
    pub n_w: i64,
    pub n_z: i64,
    /// Average of the four quadrant multiplicities at each generator.
    pub vertex_average: Vec<Rat>,
}

impl RelPeriodicDomain {
    pub fn sector(&self, region: usize, corner: Corner) -> i64 {
        self.sectors[region][corner as usize]
    }

    pub fn max_abs_coefficient(&self) -> i64 {
        self.sectors.iter().flatten().map(|c| c.abs()).max().unwrap_or(0)
    }
}

/// Nullspace of an integer matrix with three columns, as primitive integer
/// vectors. Rows are reduced in order; the pivot for each column is the first
/// remaining row with a nonzero entry there.
fn nullspace3(rows: &[[i64; 3]]) -> Vec<[i64; 3]> {
    let mut m: Vec<[Rat; 3]> = rows
        .iter()
        .map(|r| [Rat::int(r[0]), Rat::int(r[1]), Rat::int(r[2])])
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut next_row = 0;
    for col in 0..3 {
        let Some(pr) = (next_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next_row, pr);
        let lead = m[next_row][col].clone();
        for x in m[next_row].iter_mut() {
            *x = x.divide(&lead).expect("nonzero pivot");
        }
        let pivot_row = m[next_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != next_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, pv) in row.iter_mut().zip(&pivot_row) {
                    *x -= &(&factor * pv);
                }
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
    }
    let free: Vec<usize> = (0..3).filter(|c| !pivots.iter().any(|&(_, pc)| pc == *c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = [Rat::zero(), Rat::zero(), Rat::zero()];
            v[fc] = Rat::one();
            for &(r, pc) in &pivots {
                v[pc] = -&m[r][fc];
            }
            primitive(&v)
        })
        .collect()
}

fn primitive(v: &[Rat; 3]) -> [i64; 3] {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let den = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = ints.iter().fold(num_bigint::BigInt::from(0), |acc, x| acc.gcd(x));
    let mut out = [0i64; 3];
    for (o, x) in out.iter_mut().zip(&ints) {
        *o = (x / &g).to_i64().expect("small coefficients");
    }
    out
}

/// Solves for the relative periodic domain of the diagram's knot.
///
/// Sector unknowns are eliminated first by propagating from the sector of
/// `w` (relations scanned in a fixed order), leaving a small integer system
/// in `(c_alpha, c_beta, m)` whose one-dimensional nullspace is the answer.
pub fn solve_relative_periodic_domain(diagram: &Diagram) -> Result<RelPeriodicDomain> {
    let p = diagram.generator_count();
    let n = 4 * p;
    let rels = relations(diagram);
    let fail = |msg: String| Error::Invariant(format!("{}: {msg}", diagram.knot));

    // forms[s] expresses f[s] as an integer combination of (c_alpha, c_beta, m)
    let mut forms: Vec<Option<[i64; 3]>> = vec![None; n];
    let root = sector(diagram.w_region, Corner::SW);
    forms[root] = Some([0, 0, 0]);
    let mut used = vec![false; rels.len()];
    loop {
        let mut progressed = false;
        for (idx, rel) in rels.iter().enumerate() {
            if used[idx] {
                continue;
            }
            match (forms[rel.plus], forms[rel.minus]) {
                (Some(_), Some(_)) | (None, None) => {}
                (Some(fp), None) => {
                    forms[rel.minus] = Some(std::array::from_fn(|c| fp[c] - rel.coeffs[c]));
                    used[idx] = true;
                    progressed = true;
                }
                (None, Some(fm)) => {
                    forms[rel.plus] = Some(std::array::from_fn(|c| fm[c] + rel.coeffs[c]));
                    used[idx] = true;
                    progressed = true;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    let forms: Vec<[i64; 3]> = forms
        .into_iter()
        .enumerate()
        .map(|(s, f)| f.ok_or_else(|| fail(format!("sector {s} is unreachable"))))
        .collect::<Result<_>>()?;

    let residual: Vec<[i64; 3]> = rels
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(rel, _)| {
            let (a, b) = (forms[rel.plus], forms[rel.minus]);
            std::array::from_fn(|c| a[c] - b[c] - rel.coeffs[c])
        })
        .filter(|row: &[i64; 3]| row.iter().any(|&x| x != 0))
        .collect();

    let basis = nullspace3(&residual);
    if basis.len() != 1 {
        return Err(fail(format!("solution space has dimension {}", basis.len())));
    }
    let mut sol = basis[0];
    if sol[LONGITUDE] < 0 {
        sol = sol.map(|x| -x);
    }
    if sol[LONGITUDE] == 0 {
        return Err(fail("no solution with nonzero longitudinal multiplicity".into()));
    }

    let value = |s: usize| -> i64 { (0..3).map(|c| forms[s][c] * sol[c]).sum() };
    let values: Vec<i64> = (0..n).map(value).collect();
    for rel in &rels {
        let rhs: i64 = (0..3).map(|c| rel.coeffs[c] * sol[c]).sum();
        if values[rel.plus] - values[rel.minus] != rhs {
            return Err(fail("boundary relation violated after solving".into()));
        }
    }

    let sectors: Vec<[i64; 4]> = (0..p)
        .map(|j| std::array::from_fn(|c| values[4 * j + c]))
        .collect();
    let at = |r: usize, c: Corner| sectors[r][c as usize];

    let alpha_arc_boundary = diagram
        .alpha_arcs
        .iter()
        .map(|a| {
            [
                at(a.left_region, Corner::SW) - at(a.right_region, Corner::NW),
                at(a.left_region, Corner::SE) - at(a.right_region, Corner::NE),
            ]
        })
        .collect();
    let beta_arc_boundary = diagram
        .beta_arcs
        .iter()
        .map(|b| {
            [
                at(b.left_region, Corner::SE) - at(b.right_region, Corner::SW),
                at(b.left_region, Corner::NE) - at(b.right_region, Corner::NW),
            ]
        })
        .collect();

    let vertex_average = (0..p)
        .map(|i| {
            let total: i64 = diagram.sectors_at(i).iter().map(|&(r, c)| at(r, c)).sum();
            Rat::frac(total, 4)
        })
        .collect();

    Ok(RelPeriodicDomain {
        alpha_multiplicity: sol[C_ALPHA],
        beta_multiplicity: sol[C_BETA],
        longitude_multiplicity: sol[LONGITUDE],
        n_w: at(diagram.w_region, Corner::SW),
        n_z: at(diagram.z_region, Corner::SW),
        sectors,
        alpha_arc_boundary,
        beta_arc_boundary,
        vertex_average,
    })
}
