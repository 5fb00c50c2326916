//! Brute-force ground truth for the condensation pipeline, built on direct
//! Voronoi-wall witnesses instead of inversion and hulls.
//!
//! Two cells share a wall exactly when some x is equidistant from the two
//! sites and strictly farther from every other site. That is one linear
//! program per pair: constrain x to the perpendicular bisector (a pair of
//! opposed rows with no slack), give every other site a shared slack t in
//! its half-space row, and maximize t. Rows are scaled to unit normals so
//! t reads as a Euclidean clearance, and the wall exists iff the optimal
//! clearance beats `eps_strict`.
//!
//! The witness is searched for twice. The first pass confines x to an
//! inflated copy of the data bounding box, where t is an absolute
//! Euclidean clearance. A wall can open up arbitrarily far from the data
//! (walls between near-collinear sites start near their circumcenter, and
//! some walls are unbounded), so a second pass reruns the search in
//! homogeneous coordinates, where remote and infinite witnesses survive
//! with s near zero. A pair shares a wall if either pass finds one.
//!
//! A training point matters for classification exactly when it shares a
//! wall with a differently-labeled point, so enumerating pairs gives an
//! implementation-independent reference answer.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::condense::classify;
use crate::geom::{sqdist, LabeledDataset};
use crate::lp::{solve, Constraint, LpOutcome, LpProblem};
use crate::{derive_seed, Error, Result, Tolerances};

/// Default factor by which the search box exceeds the data's bounding box.
pub const DEFAULT_BOX_INFLATION: f64 = 10.0;

/// Extra absolute margin added to the search box on every axis.
const BOX_MARGIN: f64 = 10.0;

/// Voronoi-wall witness queries against one dataset.
pub struct WallOracle<'a> {
    data: &'a LabeledDataset,
    tol: Tolerances,
    inflate: f64,
    seed: u64,
    // Search box, precomputed once.
    lower: Vec<f64>,
    upper: Vec<f64>,
    t_cap: f64,
}

impl<'a> WallOracle<'a> {
    pub fn new(data: &'a LabeledDataset, tol: &Tolerances) -> Self {
        Self::with_inflation(data, tol, DEFAULT_BOX_INFLATION)
    }

    /// `inflate` scales the half-extent of the data bounding box; the box
    /// is additionally widened by an absolute margin so thin datasets still
    /// leave room for witnesses.
    pub fn with_inflation(data: &'a LabeledDataset, tol: &Tolerances, inflate: f64) -> Self {
        let (lo, hi) = data.bounding_box();
        let mut lower = Vec::with_capacity(lo.len() + 1);
        let mut upper = Vec::with_capacity(lo.len() + 1);
        let mut diameter_sq = 0.0;
        for (l, h) in lo.iter().zip(&hi) {
            let center = 0.5 * (l + h);
            let half = 0.5 * (h - l) * inflate + BOX_MARGIN;
            lower.push(center - half);
            upper.push(center + half);
            diameter_sq += (2.0 * half) * (2.0 * half);
        }
        WallOracle {
            data,
            tol: *tol,
            inflate,
            seed: 0,
            lower,
            upper,
            t_cap: diameter_sq.sqrt() + 1.0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn inflation(&self) -> f64 {
        self.inflate
    }

    /// Do the Voronoi cells of points `a` and `b` share a (d-1)-dimensional
    /// wall? Symmetric in its arguments.
    pub fn shares_wall(&self, a: usize, b: usize) -> Result<bool> {
        let n = self.data.len();
        for idx in [a, b] {
            if idx >= n {
                return Err(Error::IndexOutOfBounds { index: idx, len: n });
            }
        }
        if a == b {
            return Err(Error::InvalidParameter(
                "shares_wall needs two distinct point indices".into(),
            ));
        }
        if self.boxed_witness(a, b)? {
            return Ok(true);
        }
        self.horizon_witness(a, b)
    }

    /// Witness search inside the inflated bounding box, where t is an
    /// absolute Euclidean clearance. Finds every wall that passes through
    /// the box; blind to walls lying entirely outside it.
    fn boxed_witness(&self, a: usize, b: usize) -> Result<bool> {
        let n = self.data.len();
        let d = self.data.dim();
        let pa = self.data.point(a).coords();
        let pb = self.data.point(b).coords();
        let na_sq: f64 = pa.iter().map(|x| x * x).sum();
        let nb_sq: f64 = pb.iter().map(|x| x * x).sum();

        // Bisector rows: 2(pb - pa) . x == |pb|^2 - |pa|^2, no slack share.
        let mut bis: Vec<f64> = pb.iter().zip(pa).map(|(u, v)| 2.0 * (u - v)).collect();
        let mut rhs = nb_sq - na_sq;
        let bn = bis.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut bis {
            *x /= bn;
        }
        rhs /= bn;

        let mut constraints = Vec::with_capacity(2 + n - 2);
        let mut forward = bis.clone();
        forward.push(0.0);
        constraints.push(Constraint {
            normal: forward,
            bound: rhs,
        });
        let mut backward: Vec<f64> = bis.iter().map(|x| -x).collect();
        backward.push(0.0);
        constraints.push(Constraint {
            normal: backward,
            bound: -rhs,
        });

        // Every other site s must stay strictly farther than a:
        // unit(ps - pa) . x + t <= (|ps|^2 - |pa|^2) / (2 |ps - pa|).
        for s in 0..n {
            if s == a || s == b {
                continue;
            }
            let ps = self.data.point(s).coords();
            let mut normal: Vec<f64> = ps.iter().zip(pa).map(|(u, v)| u - v).collect();
            let nn = normal.iter().map(|x| x * x).sum::<f64>().sqrt();
            for x in &mut normal {
                *x /= nn;
            }
            let ns_sq: f64 = ps.iter().map(|x| x * x).sum();
            let bound = (ns_sq - na_sq) / (2.0 * nn);
            normal.push(1.0);
            constraints.push(Constraint { normal, bound });
        }

        let mut objective = vec![0.0; d];
        objective.push(1.0);
        let mut lower = self.lower.clone();
        let mut upper = self.upper.clone();
        lower.push(-self.t_cap);
        upper.push(self.t_cap);

        let problem = LpProblem {
            objective,
            constraints,
            lower,
            upper,
        };
        let lp_seed = derive_seed(self.seed, (a as u64) * (n as u64) + b as u64);
        match solve(&problem, lp_seed)? {
            LpOutcome::Optimum { value, .. } => Ok(value > self.tol.eps_strict),
            LpOutcome::Infeasible => Ok(false),
        }
    }

    /// Witness search in homogeneous coordinates. The pair (x, s) with
    /// s in (0, 1] stands for the plane point x/s, and s = 0 for the limit
    /// along ray x, so witnesses at any distance (or at infinity) land in
    /// the unit box. Sites are centered on the pair midpoint and scaled by
    /// the largest centered coordinate, which keeps every row at unit
    /// magnitude and makes the clearance threshold scale-free. The wall
    /// condition `|x/s - p_a| < |x/s - p_c|` multiplied through by s
    /// becomes the linear row below.
    fn horizon_witness(&self, a: usize, b: usize) -> Result<bool> {
        let n = self.data.len();
        let d = self.data.dim();
        let pa = self.data.point(a).coords();
        let pb = self.data.point(b).coords();

        let mid: Vec<f64> = pa.iter().zip(pb).map(|(u, v)| 0.5 * (u + v)).collect();
        let mut spread = 0.0f64;
        for i in 0..n {
            for (c, m) in self.data.point(i).coords().iter().zip(&mid) {
                spread = spread.max((c - m).abs());
            }
        }
        let scale = if spread > 0.0 { spread } else { 1.0 };
        let centered = |p: &[f64]| -> Vec<f64> {
            p.iter().zip(&mid).map(|(c, m)| (c - m) / scale).collect()
        };
        let ca = centered(pa);
        let cb = centered(pb);
        let na_sq: f64 = ca.iter().map(|x| x * x).sum();
        let nb_sq: f64 = cb.iter().map(|x| x * x).sum();

        // Bisector rows over (x, s), no slack share. Centering makes the
        // s coefficient vanish up to rounding.
        let mut bis: Vec<f64> = cb.iter().zip(&ca).map(|(u, v)| 2.0 * (u - v)).collect();
        bis.push(-(nb_sq - na_sq));
        let bn = bis.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut bis {
            *x /= bn;
        }

        let mut constraints = Vec::with_capacity(2 + n - 2);
        let mut forward = bis.clone();
        forward.push(0.0);
        constraints.push(Constraint {
            normal: forward,
            bound: 0.0,
        });
        let mut backward: Vec<f64> = bis.iter().map(|x| -x).collect();
        backward.push(0.0);
        constraints.push(Constraint {
            normal: backward,
            bound: 0.0,
        });

        // Every other site c: 2c . x - (|c|^2 - |a|^2) s + t <= 0, with the
        // (x, s) part at unit norm. Using |a|^2 here is sound because the
        // bisector rows pin |x/s - a| = |x/s - b|.
        for c in 0..n {
            if c == a || c == b {
                continue;
            }
            let cc = centered(self.data.point(c).coords());
            let nc_sq: f64 = cc.iter().map(|x| x * x).sum();
            let mut normal: Vec<f64> = cc.iter().map(|x| 2.0 * x).collect();
            normal.push(-(nc_sq - na_sq));
            let nn = normal.iter().map(|x| x * x).sum::<f64>().sqrt();
            for x in &mut normal {
                *x /= nn;
            }
            normal.push(1.0);
            constraints.push(Constraint {
                normal,
                bound: 0.0,
            });
        }

        let mut objective = vec![0.0; d + 1];
        objective.push(1.0);
        let mut lower = vec![-1.0; d];
        let mut upper = vec![1.0; d];
        lower.push(0.0);
        upper.push(1.0);
        let t_cap = ((d + 1) as f64).sqrt() + 1.0;
        lower.push(-t_cap);
        upper.push(t_cap);

        let problem = LpProblem {
            objective,
            constraints,
            lower,
            upper,
        };
        let pair = (a as u64) * (n as u64) + b as u64;
        let lp_seed = derive_seed(derive_seed(self.seed, 0x686f727a), pair);
        match solve(&problem, lp_seed)? {
            LpOutcome::Optimum { value, .. } => Ok(value > self.tol.eps_strict),
            LpOutcome::Infeasible => Ok(false),
        }
    }

    /// Indices that share a wall with at least one differently-labeled
    /// point: the reference answer for condensation. Stops scanning a point
    /// as soon as one cross-label wall is found.
    pub fn brute_force_relevant(&self) -> Result<BTreeSet<usize>> {
        let n = self.data.len();
        let mut memo: HashMap<(usize, usize), bool> = HashMap::new();
        let mut out = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if self.data.label_id(i) == self.data.label_id(j) {
                    continue;
                }
                let key = (i.min(j), i.max(j));
                let hit = match memo.get(&key) {
                    Some(&v) => v,
                    None => {
                        let v = self.shares_wall(key.0, key.1)?;
                        memo.insert(key, v);
                        v
                    }
                };
                if hit {
                    out.insert(i);
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Every cross-label pair (i < j) whose cells share a wall. Exhaustive,
    /// unlike [`Self::brute_force_relevant`], so it also supports checking
    /// that both endpoints of every such wall are reported relevant.
    pub fn bichromatic_wall_pairs(&self) -> Result<Vec<(usize, usize)>> {
        let n = self.data.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.data.label_id(i) == self.data.label_id(j) {
                    continue;
                }
                if self.shares_wall(i, j)? {
                    out.push((i, j));
                }
            }
        }
        Ok(out)
    }
}

/// Outcome of sampled classification comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalenceReport {
    /// Queries actually compared.
    pub tested: usize,
    /// Queries discarded because their two nearest full-set distances were
    /// within the relative tie tolerance.
    pub skipped_ties: usize,
    /// Compared queries where full set and subset disagreed.
    pub mismatches: usize,
}

/// Samples queries uniformly from the data's bounding box inflated by 50%
/// and compares nearest-neighbor labels under the full set against the
/// subset. Near-ties in the full set are excluded: at a tie the winner is
/// an artifact of index order, not geometry.
pub fn sample_equivalence(
    data: &LabeledDataset,
    subset: &[usize],
    query_count: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<EquivalenceReport> {
    for &i in subset {
        if i >= data.len() {
            return Err(Error::IndexOutOfBounds {
                index: i,
                len: data.len(),
            });
        }
    }
    // An empty subset is the correct condensation of single-label data:
    // with no boundary every query keeps the one label there is, so the
    // comparison passes trivially. An empty subset for multi-label data
    // genuinely fails every query.
    let single_label = (1..data.len()).all(|i| data.label_id(i) == data.label_id(0));
    let sub = if subset.is_empty() {
        None
    } else {
        Some(data.subset(subset)?)
    };

    let (lo, hi) = data.bounding_box();
    let boxes: Vec<(f64, f64)> = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| {
            let span = h - l;
            let pad = if span > 0.0 { 0.25 * span } else { 0.5 };
            (l - pad, h + pad)
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 0x71756572));
    let mut report = EquivalenceReport {
        tested: 0,
        skipped_ties: 0,
        mismatches: 0,
    };
    for _ in 0..query_count {
        let coords: Vec<f64> = boxes
            .iter()
            .map(|&(l, h)| l + (h - l) * rng.gen::<f64>())
            .collect();

        // Two smallest distances in the full set decide tie exclusion.
        let mut d1 = f64::INFINITY;
        let mut d2 = f64::INFINITY;
        let mut nearest = 0usize;
        for i in 0..data.len() {
            let dist = sqdist(data.point(i).coords(), &coords).sqrt();
            if dist < d1 {
                d2 = d1;
                d1 = dist;
                nearest = i;
            } else if dist < d2 {
                d2 = dist;
            }
        }
        if d2.is_finite() && d2 - d1 <= tol.eps_tie * d2 {
            report.skipped_ties += 1;
            continue;
        }
        report.tested += 1;
        match &sub {
            None => {
                if !single_label {
                    report.mismatches += 1;
                }
            }
            Some(sub) => {
                let q = crate::geom::Point::new(coords)?;
                let got = classify(sub, &q)?;
                if got != data.label_id(nearest) {
                    report.mismatches += 1;
                }
            }
        }
    }
    Ok(report)
}
