//! Low-dimensional linear programming by randomized incremental
//! construction (Seidel's algorithm).
//!
//! Problems are maximization over inequality constraints `normal . x <= bound`
//! plus mandatory per-variable box bounds. The box keeps every subproblem
//! bounded, so the solver never has to reason about unbounded rays: the
//! optimum of the empty constraint set is simply a box corner.
//!
//! Constraints are visited in seed-determined random order. While the
//! current optimum satisfies the next constraint (within [`FEASIBILITY_TOL`])
//! it is kept; on a violation the optimum must lie on that constraint's
//! hyperplane, so one variable is eliminated through it (choosing the
//! largest-magnitude coefficient for stability) and the prefix is re-solved
//! one dimension lower. Expected running time is O(d! * m) for m constraints.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Absolute slack a constraint may show before it counts as violated.
pub const FEASIBILITY_TOL: f64 = 1e-7;

/// Coefficients at or below this magnitude are treated as exact zeros.
const ZERO_COEF: f64 = 1e-12;

/// One linear constraint `normal . x <= bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub normal: Vec<f64>,
    pub bound: f64,
}

/// A bounded maximization problem.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    /// Per-variable lower bounds; same length as `objective`.
    pub lower: Vec<f64>,
    /// Per-variable upper bounds; same length as `objective`.
    pub upper: Vec<f64>,
}

impl LpProblem {
    pub fn dim(&self) -> usize {
        self.objective.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimum { solution: Vec<f64>, value: f64 },
    Infeasible,
}

fn dot(a: &[f64], x: &[f64]) -> f64 {
    a.iter().zip(x).map(|(u, v)| u * v).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Maximizes the problem's objective. Identical inputs and seed produce an
/// identical outcome; the optimal value is seed-independent up to roundoff.
pub fn solve(problem: &LpProblem, seed: u64) -> Result<LpOutcome> {
    validate(problem)?;
    let d = problem.dim();
    let mut rows = Vec::with_capacity(problem.constraints.len() * (d + 1));
    for c in &problem.constraints {
        rows.extend_from_slice(&c.normal);
        rows.push(c.bound);
    }
    let mut ws = LpWorkspace::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut solution = Vec::new();
    if solve_flat(
        &mut ws,
        &problem.objective,
        &rows,
        &problem.lower,
        &problem.upper,
        &mut rng,
        &mut solution,
    ) {
        let value = dot(&problem.objective, &solution);
        Ok(LpOutcome::Optimum { solution, value })
    } else {
        Ok(LpOutcome::Infeasible)
    }
}

fn validate(problem: &LpProblem) -> Result<()> {
    let d = problem.dim();
    if d == 0 {
        return Err(Error::MalformedLp("dimension must be at least 1".into()));
    }
    if problem.objective.iter().any(|c| !c.is_finite()) {
        return Err(Error::MalformedLp("objective has non-finite entries".into()));
    }
    if problem.lower.len() != d || problem.upper.len() != d {
        return Err(Error::MalformedLp(format!(
            "bounds cover {} / {} variables but dimension is {d}",
            problem.lower.len(),
            problem.upper.len()
        )));
    }
    for (j, (&lo, &hi)) in problem.lower.iter().zip(&problem.upper).enumerate() {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::MalformedLp(format!(
                "bounds of variable {j} are not finite"
            )));
        }
        if lo > hi {
            return Err(Error::MalformedLp(format!(
                "variable {j} has empty bound interval [{lo}, {hi}]"
            )));
        }
    }
    for (i, c) in problem.constraints.iter().enumerate() {
        if c.normal.len() != d {
            return Err(Error::MalformedLp(format!(
                "constraint {i} has {} coefficients, expected {d}",
                c.normal.len()
            )));
        }
        if c.normal.iter().any(|x| !x.is_finite()) || !c.bound.is_finite() {
            return Err(Error::MalformedLp(format!(
                "constraint {i} has non-finite entries"
            )));
        }
    }
    Ok(())
}

/// Reusable per-recursion-depth buffers. The solver allocates nothing new
/// once a workspace has warmed up, which matters to callers issuing many
/// small solves in a row.
#[derive(Default)]
pub(crate) struct LpWorkspace {
    levels: Vec<LevelBuf>,
}

impl LpWorkspace {
    pub(crate) fn new() -> Self {
        Self::default()
    }
}

#[derive(Default)]
struct LevelBuf {
    order: Vec<u32>,
    unit: Vec<f64>,
    sub_rows: Vec<f64>,
    sub_obj: Vec<f64>,
    sub_lower: Vec<f64>,
    sub_upper: Vec<f64>,
    sub_sol: Vec<f64>,
}

/// Workspace-backed entry point. `rows` is flat with stride `obj.len() + 1`,
/// each row being the coefficients followed by the bound. The optimal point
/// is written to `out`; the return value is false when infeasible. Inputs
/// are trusted (the public wrapper validates).
pub(crate) fn solve_flat(
    ws: &mut LpWorkspace,
    obj: &[f64],
    rows: &[f64],
    lower: &[f64],
    upper: &[f64],
    rng: &mut ChaCha8Rng,
    out: &mut Vec<f64>,
) -> bool {
    let d = obj.len();
    debug_assert!(d >= 1);
    debug_assert_eq!(rows.len() % (d + 1), 0);
    debug_assert!(lower.len() == d && upper.len() == d);
    if ws.levels.len() < d {
        ws.levels.resize_with(d, Default::default);
    }
    solve_level(obj, rows, lower, upper, &mut ws.levels, rng, out)
}

/// One level of the randomized incremental recursion. `levels[0]` holds
/// this level's scratch space; deeper levels use the rest of the slice.
fn solve_level(
    obj: &[f64],
    rows: &[f64],
    lower: &[f64],
    upper: &[f64],
    levels: &mut [LevelBuf],
    rng: &mut ChaCha8Rng,
    out: &mut Vec<f64>,
) -> bool {
    let d = obj.len();
    let stride = d + 1;
    if d == 1 {
        return match solve_1d(obj[0], rows, lower[0], upper[0]) {
            Some(x) => {
                out.clear();
                out.push(x);
                true
            }
            None => false,
        };
    }
    let nrows = rows.len() / stride;
    let (lvl, rest) = levels.split_first_mut().expect("workspace sized to depth");

    lvl.order.clear();
    lvl.order.extend(0..nrows as u32);
    for i in (1..nrows).rev() {
        // Multiply-shift map of a raw draw onto 0..=i. Its bias is below
        // 2^-32 per swap, irrelevant for an ordering whose only job is to
        // keep adversarial row arrangements improbable, and it is several
        // times cheaper than an exact bounded draw.
        let j = ((rng.next_u32() as u64 * (i as u64 + 1)) >> 32) as usize;
        lvl.order.swap(i, j);
    }

    // Optimum of the box alone: pick the corner favored by the objective.
    out.clear();
    for j in 0..d {
        out.push(if obj[j] >= 0.0 { upper[j] } else { lower[j] });
    }

    for pos in 0..nrows {
        let r = lvl.order[pos] as usize * stride;
        let (ra, rb) = (&rows[r..r + d], rows[r + d]);
        if dot(ra, out) <= rb + FEASIBILITY_TOL {
            continue;
        }

        // The new optimum lies on this hyperplane. Eliminate the variable
        // with the largest-magnitude coefficient.
        let j = (0..d)
            .max_by(|&p, &q| ra[p].abs().total_cmp(&ra[q].abs()))
            .expect("d >= 2");
        if ra[j].abs() <= ZERO_COEF {
            // 0 . x <= b is violated outright, so b < 0: infeasible.
            return false;
        }

        lvl.sub_rows.clear();
        let mut ok = true;
        for &pi in &lvl.order[..pos] {
            let v = pi as usize * stride;
            ok &= reduce_into(&rows[v..v + d], rows[v + d], ra, rb, j, &mut lvl.sub_rows);
        }
        // The eliminated variable's box bounds become ordinary constraints.
        lvl.unit.clear();
        lvl.unit.resize(d, 0.0);
        lvl.unit[j] = 1.0;
        ok &= reduce_into(&lvl.unit, upper[j], ra, rb, j, &mut lvl.sub_rows);
        lvl.unit[j] = -1.0;
        ok &= reduce_into(&lvl.unit, -lower[j], ra, rb, j, &mut lvl.sub_rows);
        if !ok {
            return false;
        }

        eliminate_into(obj, ra, j, &mut lvl.sub_obj);
        lvl.sub_lower.clear();
        lvl.sub_upper.clear();
        for l in 0..d {
            if l != j {
                lvl.sub_lower.push(lower[l]);
                lvl.sub_upper.push(upper[l]);
            }
        }

        if !solve_level(
            &lvl.sub_obj,
            &lvl.sub_rows,
            &lvl.sub_lower,
            &lvl.sub_upper,
            rest,
            rng,
            &mut lvl.sub_sol,
        ) {
            return false;
        }

        // Re-insert the eliminated coordinate, computed from the tight row.
        out.clear();
        let mut rest_sum = 0.0;
        let mut yi = lvl.sub_sol.iter();
        for (l, &a) in ra.iter().enumerate() {
            if l == j {
                out.push(0.0); // placeholder
            } else {
                let v = *yi.next().expect("length checked");
                rest_sum += a * v;
                out.push(v);
            }
        }
        out[j] = (rb - rest_sum) / ra[j];
    }
    true
}

/// Substitutes the tight row `(ta, tb)` into the victim row `(va, vb)`,
/// removing variable `j`, and appends the result to `sub` renormalized so
/// feasibility slack keeps its meaning. Rows that reduce to `0 . x <= b`
/// are dropped; returns false when such a row is plainly infeasible.
fn reduce_into(va: &[f64], vb: f64, ta: &[f64], tb: f64, j: usize, sub: &mut Vec<f64>) -> bool {
    let start = sub.len();
    let ratio = va[j] / ta[j];
    for (l, &c) in va.iter().enumerate() {
        if l != j {
            sub.push(c - ratio * ta[l]);
        }
    }
    let b = vb - va[j] * tb / ta[j];
    let n = norm(&sub[start..]);
    if n <= ZERO_COEF {
        sub.truncate(start);
        b >= -FEASIBILITY_TOL
    } else {
        for v in &mut sub[start..] {
            *v /= n;
        }
        sub.push(b / n);
        true
    }
}

/// Coefficient vector of `coefs` after substituting variable `j` out via the
/// tight row, written into `out`.
fn eliminate_into(coefs: &[f64], ta: &[f64], j: usize, out: &mut Vec<f64>) {
    out.clear();
    let ratio = coefs[j] / ta[j];
    for (l, &c) in coefs.iter().enumerate() {
        if l != j {
            out.push(c - ratio * ta[l]);
        }
    }
}

/// One-dimensional base case: intersect the box with every half-line.
/// Rows are flat with stride 2.
fn solve_1d(c: f64, rows: &[f64], lower: f64, upper: f64) -> Option<f64> {
    let mut lo = lower;
    let mut hi = upper;
    for r in rows.chunks_exact(2) {
        let (a, b) = (r[0], r[1]);
        if a > ZERO_COEF {
            hi = hi.min(b / a);
        } else if a < -ZERO_COEF {
            lo = lo.max(b / a);
        } else if b < -FEASIBILITY_TOL {
            return None;
        }
    }
    if lo > hi {
        if lo - hi <= FEASIBILITY_TOL {
            return Some(0.5 * (lo + hi));
        }
        return None;
    }
    Some(if c >= 0.0 { hi } else { lo })
}
