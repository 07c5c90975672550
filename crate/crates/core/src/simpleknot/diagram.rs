use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::Rat;
use crate::simpleknot::SimpleKnot;

/// Corner positions of a region, as seen in the square picture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Corner {
    SW = 0,
    SE = 1,
    NW = 2,
    NE = 3,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::SW, Corner::SE, Corner::NW, Corner::NE];
}

/// A component of `T^2 - alpha - beta`.
///
/// Region `D_j` is the upper half of strip `j` glued to the lower half of
/// strip `j + q`. It is a quadrilateral bounded below by alpha-arc `j`, above
/// by alpha-arc `j + q`, on the left by beta-arc `j` and on the right by
/// beta-arc `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    /// Generator at each corner, indexed by [`Corner`].
    pub corners: [usize; 4],
    pub bottom_alpha: usize,
    pub top_alpha: usize,
    pub left_beta: usize,
    pub right_beta: usize,
}

/// An oriented arc of `alpha` or `beta` between two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub left_region: usize,
    pub right_region: usize,
}

/// The standard genus-one doubly pointed diagram of a simple knot.
///
/// The torus is `p` vertical strips `S_0 .. S_{p-1}` cut horizontally by
/// `alpha`. Beta-segment `B_i` is the left wall of strip `i`; the top of `B_i`
/// is glued to the bottom of `B_{i+q}`. Generator `x_i = B_i ∩ alpha`.
/// Basepoint `w` lies in `D_0` and `z` in `D_k`.
///
/// The knot is drawn as a closed curve through `w` and `z`: from `z` it runs
/// left inside `T^2 - alpha` across beta-arcs `k, k-1, .., 1` to `w`, then
/// downward inside `T^2 - beta` across alpha-arcs `0, -q, -2q, ..` until it
/// returns to `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagram {
    pub knot: SimpleKnot,
    /// `beta_glue[i]`: the segment whose bottom is glued to the top of `B_i`.
    pub beta_glue: Vec<usize>,
    pub regions: Vec<Region>,
    /// Alpha-arc `i` runs rightward from `x_i` to `x_{i+1}`.
    pub alpha_arcs: Vec<Arc>,
    /// Beta-arc `i` runs upward from `x_i` to `x_{i+q}`.
    pub beta_arcs: Vec<Arc>,
    pub w_region: usize,
    pub z_region: usize,
    /// Beta-arcs crossed (leftward) by the knot, in traversal order.
    pub knot_beta_crossings: Vec<usize>,
    /// Alpha-arcs crossed (downward) by the knot, in traversal order.
    pub knot_alpha_crossings: Vec<usize>,
}

pub fn build_diagram(knot: SimpleKnot) -> Diagram {
    let p = knot.p() as usize;
    let q = knot.q() as usize;
    let k = knot.k as usize;
    let m = |i: usize| i % p;
    // i - q mod p, written without underflow
    let back = |i: usize| (i + p - q % p) % p;

    let beta_glue = (0..p).map(|i| m(i + q)).collect();

    let regions = (0..p)
        .map(|j| Region {
            corners: [j, m(j + 1), m(j + q), m(j + q + 1)],
            bottom_alpha: j,
            top_alpha: m(j + q),
            left_beta: j,
            right_beta: m(j + 1),
        })
        .collect();

    let alpha_arcs = (0..p)
        .map(|i| Arc { from: i, to: m(i + 1), left_region: i, right_region: back(i) })
        .collect();
    let beta_arcs = (0..p)
        .map(|i| Arc { from: i, to: m(i + q), left_region: (i + p - 1) % p, right_region: i })
        .collect();

    let knot_beta_crossings: Vec<usize> = (1..=k).rev().collect();
    let mut knot_alpha_crossings = Vec::new();
    if k != 0 {
        // Moving down through alpha-arc `a` enters region `a - q`.
        let mut region = 0;
        while region != k {
            knot_alpha_crossings.push(region);
            region = back(region);
        }
    }

    Diagram {
        knot,
        beta_glue,
        regions,
        alpha_arcs,
        beta_arcs,
        w_region: 0,
        z_region: k,
        knot_beta_crossings,
        knot_alpha_crossings,
    }
}

impl Diagram {
    pub fn generator_count(&self) -> usize {
        self.knot.p() as usize
    }

    /// Combinatorial Euler measure `1 - (#corners)/4` of a quadrilateral with
    /// four convex corners.
    pub fn euler_measure(&self, _region: usize) -> Rat {
        Rat::one() - Rat::frac(Corner::ALL.len() as i64, 4)
    }

    /// The `(region, corner)` sectors meeting generator `x_i`, in quadrant
    /// order NE, NW, SE, SW around the point.
    pub fn sectors_at(&self, i: usize) -> [(usize, Corner); 4] {
        let p = self.generator_count();
        let q = self.knot.q() as usize % p.max(1);
        let m = |a: usize| a % p;
        [
            (m(i), Corner::SW),
            (m(i + p - 1), Corner::SE),
            (m(i + p - q), Corner::NW),
            (m(i + 2 * p - 1 - q), Corner::NE),
        ]
    }

    /// Length of the orbit of `0` under the beta gluing.
    pub fn beta_orbit_len(&self) -> usize {
        let mut i = self.beta_glue[0];
        let mut len = 1;
        while i != 0 {
            i = self.beta_glue[i];
            len += 1;
        }
        len
    }

    /// Checks the structural invariants of the diagram.
    pub fn check(&self) -> Result<()> {
        let p = self.generator_count();
        let fail = |msg: String| Err(Error::Invariant(format!("{}: {msg}", self.knot)));
        let (v, e, f) = (p as i64, (self.alpha_arcs.len() + self.beta_arcs.len()) as i64, self.regions.len() as i64);
        if e != 2 * v || f != v || v - e + f != 0 {
            return fail(format!("cell counts V={v} E={e} F={f}"));
        }
        if self.beta_orbit_len() != p {
            return fail("beta is not a single closed curve".into());
        }
        let mut incidence = vec![0usize; p];
        for (j, region) in self.regions.iter().enumerate() {
            for c in region.corners {
                incidence[c] += 1;
            }
            if !self.euler_measure(j).is_zero() {
                return fail(format!("region {j} has nonzero Euler measure"));
            }
            let bottom = self.alpha_arcs[region.bottom_alpha];
            let top = self.alpha_arcs[region.top_alpha];
            let left = self.beta_arcs[region.left_beta];
            let right = self.beta_arcs[region.right_beta];
            let ok = bottom.left_region == j
                && top.right_region == j
                && left.right_region == j
                && right.left_region == j
                && [bottom.from, bottom.to] == [region.corners[0], region.corners[1]]
                && [top.from, top.to] == [region.corners[2], region.corners[3]]
                && [left.from, left.to] == [region.corners[0], region.corners[2]]
                && [right.from, right.to] == [region.corners[1], region.corners[3]];
            if !ok {
                return fail(format!("region {j} sides are inconsistent with its arcs"));
            }
        }
        if incidence.iter().any(|&n| n != 4) {
            return fail(format!("corner incidences {incidence:?}"));
        }
        for i in 0..p {
            for (r, c) in self.sectors_at(i) {
                if self.regions[r].corners[c as usize] != i {
                    return fail(format!("sector ({r}, {c:?}) does not touch x_{i}"));
                }
            }
        }
        Ok(())
    }
}
