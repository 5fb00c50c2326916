//! Extreme points of a finite point set, decided by linear programming.
//!
//! A point p is extreme (a convex-hull vertex) exactly when some direction
//! v strictly separates it from the rest of the set. The test below finds
//! the best such direction by maximizing the worst separation margin:
//! maximize t subject to v . (p - q) >= t for every other q,
//! with v confined to the box [-1, 1]^d so the margin is bounded. p is
//! extreme iff the optimal margin clears a threshold scaled to the data.
//!
//! [`all_extreme_points`] avoids running that test against the full set
//! for every point. It grows a set E of known vertices: each input point
//! is tested only against E, and when a separating direction v is found,
//! the input point maximizing v (ties broken lexicographically, which
//! lands on a vertex) is added to E. Every successful test contributes a
//! new vertex, so the whole run costs n small LPs plus one O(n) scan per
//! vertex found, rather than n large ones.

use std::collections::BTreeSet;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::Point;
use crate::lp::{solve, solve_flat, Constraint, LpOutcome, LpProblem, LpWorkspace, FEASIBILITY_TOL};
use crate::{derive_seed, Error, Result, Tolerances};

/// Outcome of one extremeness test. `direction` is a strictly separating
/// witness and is present exactly when `is_extreme` holds.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremenessWitness {
    pub is_extreme: bool,
    pub direction: Option<Vec<f64>>,
}

/// Largest axis-aligned extent of a point collection. Margins are compared
/// against `eps_geom` times this scale, which makes the decision invariant
/// under translation and covariant under uniform scaling.
pub(crate) fn coordinate_scale<'a>(points: impl Iterator<Item = &'a Point>) -> f64 {
    let mut lo: Vec<f64> = Vec::new();
    let mut hi: Vec<f64> = Vec::new();
    for p in points {
        if lo.is_empty() {
            lo = p.coords().to_vec();
            hi = lo.clone();
        } else {
            for (k, &c) in p.coords().iter().enumerate() {
                lo[k] = lo[k].min(c);
                hi[k] = hi[k].max(c);
            }
        }
    }
    lo.iter()
        .zip(&hi)
        .map(|(l, h)| h - l)
        .fold(0.0f64, f64::max)
}

/// Margin threshold for a point collection under the given tolerances.
pub(crate) fn strictness_threshold(tol: &Tolerances, scale: f64) -> f64 {
    tol.eps_geom * scale.max(f64::MIN_POSITIVE)
}

/// `coordinate_scale` clamped away from zero so it can serve as a divisor.
/// A zero extent means every point coincides, so any positive unit works.
pub(crate) fn positive_scale(extent: f64) -> f64 {
    if extent > 0.0 {
        extent
    } else {
        1.0
    }
}

/// Tests whether `p` lies outside the convex hull of `others`.
///
/// `p` must not coincide with any element of `others`. An empty `others`
/// is trivially extreme.
pub fn extremeness_test(
    p: &Point,
    others: &[&Point],
    seed: u64,
    tol: &Tolerances,
) -> Result<ExtremenessWitness> {
    let scale = positive_scale(coordinate_scale(
        std::iter::once(p).chain(others.iter().copied()),
    ));
    test_with_threshold(
        p,
        others,
        seed,
        strictness_threshold(tol, 1.0),
        1.0 / scale,
    )
}

/// Margin program for one point. All coordinate differences are multiplied
/// by `inv_scale`, which callers set to the reciprocal of the point
/// collection's extent. Running in that unit frame keeps the solver's
/// absolute feasibility tolerance proportional to the data: without it a
/// tightly clustered set far below unit size has its entire geometry
/// inside the solver's slack and the reported margins are noise.
fn test_with_threshold(
    p: &Point,
    others: &[&Point],
    seed: u64,
    threshold: f64,
    inv_scale: f64,
) -> Result<ExtremenessWitness> {
    let d = p.dim();
    let mut max_dist: f64 = 0.0;
    for q in others {
        if q.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: q.dim(),
            });
        }
        if q.coords() == p.coords() {
            return Err(Error::DuplicatePoints { a: 0, b: 0 });
        }
        max_dist = max_dist.max(inv_scale * crate::geom::sqdist(p.coords(), q.coords()).sqrt());
    }

    // Variables (v_1 .. v_d, t); rows are normalized so the feasibility
    // tolerance means the same thing for every constraint.
    let mut constraints = Vec::with_capacity(others.len());
    for q in others {
        let mut normal: Vec<f64> = q
            .coords()
            .iter()
            .zip(p.coords())
            .map(|(qc, pc)| inv_scale * (qc - pc))
            .collect();
        normal.push(1.0);
        let n = normal.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut normal {
            *x /= n;
        }
        constraints.push(Constraint {
            normal,
            bound: 0.0,
        });
    }
    let t_cap = 1.0 + (d as f64).sqrt() * max_dist;
    let mut lower = vec![-1.0; d];
    let mut upper = vec![1.0; d];
    lower.push(-t_cap);
    upper.push(t_cap);
    let mut objective = vec![0.0; d];
    objective.push(1.0);

    let problem = LpProblem {
        objective,
        constraints,
        lower,
        upper,
    };
    match solve(&problem, seed)? {
        LpOutcome::Optimum { solution, value } if value > threshold => {
            let direction = solution[..d].to_vec();
            Ok(ExtremenessWitness {
                is_extreme: true,
                direction: Some(direction),
            })
        }
        _ => Ok(ExtremenessWitness {
            is_extreme: false,
            direction: None,
        }),
    }
}

/// Indices of all convex-hull vertices of `points`.
///
/// Points must be pairwise distinct and share one dimension. Output is
/// independent of input order as a set and deterministic for a fixed seed.
pub fn all_extreme_points(points: &[Point], seed: u64, tol: &Tolerances) -> Result<BTreeSet<usize>> {
    let n = points.len();
    if n == 0 {
        return Ok(BTreeSet::new());
    }
    let d = points[0].dim();
    let mut seen = std::collections::HashMap::with_capacity(n);
    for (i, p) in points.iter().enumerate() {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
        if let Some(&first) = seen.get(&p.key()) {
            return Err(Error::DuplicatePoints { a: first, b: i });
        }
        seen.insert(p.key(), i);
    }

    // Work in the unit frame (coordinates divided by the set's extent) so
    // the solver's absolute tolerances scale with the data. See
    // `test_with_threshold` for why.
    let inv_scale = 1.0 / positive_scale(coordinate_scale(points.iter()));
    let threshold = strictness_threshold(tol, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 0x68756c6c));
    let mut in_hull = vec![false; n];
    // Vertices found so far, in discovery order. Each candidate is tested
    // only against these, so the margin programs stay small.
    let mut vertices: Vec<usize> = Vec::new();

    // The margin program for a candidate p: variables (v, t), one row per
    // known vertex. Rows live in one flat buffer (coefficients then bound)
    // and the workspace is shared across solves, so the loop below does not
    // allocate once warm.
    let vars = d + 1;
    let mut ws = LpWorkspace::new();
    let mut rows: Vec<f64> = Vec::new();
    let mut sol: Vec<f64> = Vec::new();
    let mut obj = vec![0.0; vars];
    obj[d] = 1.0;
    let mut lower = vec![-1.0; vars];
    let mut upper = vec![1.0; vars];

    let push_row = |e: usize, p: usize, rows: &mut Vec<f64>, max_dist: &mut f64| {
        let start = rows.len();
        let mut sq = 0.0;
        for (ec, pc) in points[e].coords().iter().zip(points[p].coords()) {
            let diff = inv_scale * (ec - pc);
            sq += diff * diff;
            rows.push(diff);
        }
        *max_dist = max_dist.max(sq.sqrt());
        rows.push(1.0);
        let norm = (sq + 1.0).sqrt();
        for c in &mut rows[start..] {
            *c /= norm;
        }
        rows.push(0.0);
    };

    let mut planar = (d == 2).then(|| PlanarFilter::new(inv_scale, threshold));

    for i in 0..n {
        if in_hull[i] {
            continue;
        }
        if let Some(filter) = planar.as_mut() {
            if filter.certifies_interior(points, &vertices, i) {
                continue;
            }
        }
        rows.clear();
        let mut max_dist: f64 = 0.0;
        for &v in &vertices {
            push_row(v, i, &mut rows, &mut max_dist);
        }
        loop {
            let t_cap = 1.0 + (d as f64).sqrt() * max_dist;
            lower[d] = -t_cap;
            upper[d] = t_cap;
            // v = 0, t = 0 satisfies every row, so the program is feasible.
            let feasible = solve_flat(&mut ws, &obj, &rows, &lower, &upper, &mut rng, &mut sol);
            debug_assert!(feasible);
            if !feasible || sol[d] <= threshold {
                break; // inside the hull of known vertices: settled
            }
            let j = maximizer(points, &in_hull, i, &sol[..d], threshold, inv_scale);
            in_hull[j] = true;
            vertices.push(j);
            if let Some(filter) = planar.as_mut() {
                filter.dirty = true;
            }
            if j == i {
                break;
            }
            push_row(j, i, &mut rows, &mut max_dist);
        }
    }
    Ok(vertices.into_iter().collect())
}

/// One directed edge of the planar filter polygon, stored in the shifted
/// unit frame. `min_cross` is the cross product a point must clear against
/// this edge to count as interior with the required depth.
struct FilterEdge {
    ax: f64,
    ay: f64,
    ex: f64,
    ey: f64,
    min_cross: f64,
}

/// Planar fast path for [`all_extreme_points`].
///
/// In two dimensions the hull of the known vertices is an explicit convex
/// polygon, so a candidate that lies inside it with enough clearance can be
/// settled by a handful of cross products instead of a margin program. The
/// clearance is chosen so the skipped program could only ever have answered
/// "not extreme": a point at depth `clearance` inside the polygon has a
/// strictly negative true margin of at least `clearance / (diameter + 1)`,
/// which dwarfs both the extremeness threshold and the solver's feasibility
/// slack. Shallow or exterior candidates fall through to the program, so
/// results are identical either way; only the work changes.
struct PlanarFilter {
    base: [f64; 2],
    edges: Vec<FilterEdge>,
    dirty: bool,
    hint: usize,
    clearance: f64,
    inv_scale: f64,
}

impl PlanarFilter {
    fn new(inv_scale: f64, threshold: f64) -> Self {
        PlanarFilter {
            base: [0.0, 0.0],
            edges: Vec::new(),
            dirty: true,
            hint: 0,
            clearance: (threshold * 1e3).max(FEASIBILITY_TOL * 10.0),
            inv_scale,
        }
    }

    /// Rebuilds the polygon from the current vertex set via a monotone
    /// chain, in counterclockwise order. Fewer than three vertices, or a
    /// fully collinear set, leave the polygon empty and the filter inert.
    fn rebuild(&mut self, points: &[Point], vertices: &[usize]) {
        self.edges.clear();
        self.hint = 0;
        self.dirty = false;
        if vertices.len() < 3 {
            return;
        }
        let base = points[vertices[0]].coords();
        self.base = [base[0], base[1]];
        let mut pts: Vec<(f64, f64)> = vertices
            .iter()
            .map(|&v| {
                let c = points[v].coords();
                (
                    self.inv_scale * (c[0] - base[0]),
                    self.inv_scale * (c[1] - base[1]),
                )
            })
            .collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let cross =
            |o: (f64, f64), a: (f64, f64), b: (f64, f64)| -> f64 {
                (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
            };
        let mut hull: Vec<(f64, f64)> = Vec::with_capacity(pts.len() + 1);
        for half in 0..2 {
            let start = hull.len();
            let mut walk = |p: (f64, f64)| {
                while hull.len() >= start + 2
                    && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
                {
                    hull.pop();
                }
                hull.push(p);
            };
            if half == 0 {
                pts.iter().for_each(|&p| walk(p));
            } else {
                pts.iter().rev().for_each(|&p| walk(p));
            }
            hull.pop();
        }
        if hull.len() < 3 {
            return;
        }
        for e in 0..hull.len() {
            let a = hull[e];
            let b = hull[(e + 1) % hull.len()];
            let ex = b.0 - a.0;
            let ey = b.1 - a.1;
            let len = (ex * ex + ey * ey).sqrt();
            self.edges.push(FilterEdge {
                ax: a.0,
                ay: a.1,
                ex,
                ey,
                min_cross: self.clearance * len,
            });
        }
    }

    /// True when `points[i]` is certified interior at full clearance. The
    /// edge scan starts where the previous candidate failed, which makes
    /// runs of nearby exterior candidates fail on their first edge.
    fn certifies_interior(&mut self, points: &[Point], vertices: &[usize], i: usize) -> bool {
        if self.dirty {
            self.rebuild(points, vertices);
        }
        let m = self.edges.len();
        if m < 3 {
            return false;
        }
        let c = points[i].coords();
        let px = self.inv_scale * (c[0] - self.base[0]);
        let py = self.inv_scale * (c[1] - self.base[1]);
        for step in 0..m {
            let mut e = self.hint + step;
            if e >= m {
                e -= m;
            }
            let ed = &self.edges[e];
            let cr = ed.ex * (py - ed.ay) - ed.ey * (px - ed.ax);
            if cr < ed.min_cross {
                self.hint = e;
                return false;
            }
        }
        true
    }
}

/// Input point maximizing v . x, restricted to points not yet in the hull
/// set (the witness guarantees the true maximizer is outside it). Near-ties
/// within `threshold` are broken toward the lexicographically largest
/// coordinate vector, which always selects a hull vertex of the tied face.
///
/// Dots are taken against offsets from the candidate `p`, in the same unit
/// frame the margin program ran in. The ranking is the same as for raw
/// dots, but when the point cloud sits far from the origin raw dots lose
/// exactly the low-order digits the tie threshold lives in, and the tie
/// set can spuriously come up empty.
fn maximizer(
    points: &[Point],
    in_hull: &[bool],
    p: usize,
    v: &[f64],
    threshold: f64,
    inv_scale: f64,
) -> usize {
    let base = points[p].coords();
    let dots: Vec<f64> = points
        .iter()
        .map(|x| {
            x.coords()
                .iter()
                .zip(base)
                .zip(v)
                .map(|((c, b), w)| inv_scale * (c - b) * w)
                .sum()
        })
        .collect();
    let max_dot = dots.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut best: Option<usize> = None;
    for j in 0..points.len() {
        if in_hull[j] || dots[j] < max_dot - threshold {
            continue;
        }
        best = match best {
            None => Some(j),
            Some(b) => {
                if lex_greater(points[j].coords(), points[b].coords()) {
                    Some(j)
                } else {
                    Some(b)
                }
            }
        };
    }
    best.expect("witness separates p from the hull set, so a candidate exists")
}

fn lex_greater(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return true;
        }
        if x < y {
            return false;
        }
    }
    false
}
