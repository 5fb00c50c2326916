//! Named, executable checks for every geometric guarantee the condenser
//! leans on, runnable on a single dataset or over a generated family.
//!
//! Each check is identified by a stable name from [`CHECK_NAMES`]. A report
//! that is missing any of those names fails as a whole, so a check cannot
//! silently fall out of the suite.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::condense::condense;
use crate::generate::{generate, Family, GeneratorSpec};
use crate::geom::{build_inverted_set, LabeledDataset};
use crate::hull::all_extreme_points;
use crate::mst::minimum_spanning_tree;
use crate::oracle::{sample_equivalence, WallOracle};
use crate::{derive_seed, Error, Result, Tolerances};

/// Every check the suite knows, in report order.
///
/// * `mst_is_delaunay`: every spanning-tree edge joins two cells that
///   share a wall.
/// * `extreme_wall_equivalence`: for each relevant point r, the extreme
///   images of its inverted set are exactly the differing-label points
///   whose cells share a wall with r's cell, in the diagram restricted to
///   r and its differing-label points.
/// * `both_defining`: a wall between differing labels never has only one
///   of its two defining points in the result.
/// * `condense_matches_oracle`: the condensed set equals the wall oracle's
///   independently computed relevant set.
/// * `idempotence`: condensing the condensed subset keeps every point.
/// * `classification_preserved`: sampled queries classify identically
///   against the subset and the full set, near-ties excluded.
/// * `wall_symmetry`: the wall oracle answers the same in both argument
///   orders.
pub const CHECK_NAMES: [&str; 7] = [
    "mst_is_delaunay",
    "extreme_wall_equivalence",
    "both_defining",
    "condense_matches_oracle",
    "idempotence",
    "classification_preserved",
    "wall_symmetry",
];

const MAX_DETAIL: usize = 6;

/// Tally for one named check across however many instances ran.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    /// Datasets this check examined.
    pub instances: usize,
    /// Individual violations found (edges, pairs, points or whole-set
    /// mismatches, depending on the check).
    pub failures: usize,
    /// Human-readable descriptions of the first few violations.
    pub detail: Vec<String>,
}

/// Report over the full check list.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    fn empty() -> Self {
        SuiteReport {
            checks: CHECK_NAMES
                .iter()
                .map(|&name| CheckOutcome {
                    name,
                    instances: 0,
                    failures: 0,
                    detail: Vec::new(),
                })
                .collect(),
        }
    }

    /// Coverage guard: true only when every name in [`CHECK_NAMES`]
    /// appears exactly once.
    pub fn complete(&self) -> bool {
        CHECK_NAMES
            .iter()
            .all(|n| self.checks.iter().filter(|c| &c.name == n).count() == 1)
    }

    /// True when coverage is complete and nothing failed.
    pub fn all_passed(&self) -> bool {
        self.complete() && self.checks.iter().all(|c| c.failures == 0)
    }

    fn merge(&mut self, other: SuiteReport) {
        for (mine, theirs) in self.checks.iter_mut().zip(other.checks) {
            debug_assert_eq!(mine.name, theirs.name);
            mine.instances += theirs.instances;
            mine.failures += theirs.failures;
            for d in theirs.detail {
                if mine.detail.len() < MAX_DETAIL {
                    mine.detail.push(d);
                }
            }
        }
    }

    fn tally(&mut self, name: &'static str, failures: usize, detail: Option<String>) {
        let c = self
            .checks
            .iter_mut()
            .find(|c| c.name == name)
            .expect("tally against a known check name");
        c.instances += 1;
        c.failures += failures;
        if let Some(d) = detail {
            if c.detail.len() < MAX_DETAIL {
                c.detail.push(d);
            }
        }
    }

    /// Plain-text rendering, one line per check plus a verdict line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let width = CHECK_NAMES.iter().map(|n| n.len()).max().unwrap_or(0);
        for c in &self.checks {
            let verdict = if c.failures == 0 { "ok" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{:width$}  instances {:>4}  failures {:>4}  {}",
                c.name,
                c.instances,
                c.failures,
                verdict,
                width = width
            );
            for d in &c.detail {
                let _ = writeln!(out, "    {d}");
            }
        }
        let _ = writeln!(
            out,
            "result: {}",
            if self.all_passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}

/// Per-dataset knobs for [`run_instance_checks`].
#[derive(Debug, Clone, Copy)]
pub struct CheckConfig {
    pub seed: u64,
    /// Sampled queries for the classification check.
    pub queries: usize,
    /// Bounding-box inflation handed to the wall oracle's boxed witness
    /// pass. The default is fine for routine runs; raising it stress-tests
    /// the boxed pass on its own terms.
    pub oracle_inflation: f64,
}

/// Runs every check against one dataset.
pub fn run_instance_checks(
    data: &LabeledDataset,
    cfg: &CheckConfig,
    tol: &Tolerances,
) -> Result<SuiteReport> {
    let mut report = SuiteReport::empty();
    let oracle = WallOracle::with_inflation(data, tol, cfg.oracle_inflation);
    let relevant = condense(data, cfg.seed, tol)?;
    let relevant_set: BTreeSet<usize> = relevant.indices().into_iter().collect();

    // mst_is_delaunay
    let tree = minimum_spanning_tree(data);
    let mut failures = 0;
    let mut detail = None;
    for edge in &tree {
        if !oracle.shares_wall(edge.u, edge.v)? {
            failures += 1;
            detail.get_or_insert_with(|| {
                format!("tree edge ({}, {}) joins cells with no shared wall", edge.u, edge.v)
            });
        }
    }
    report.tally("mst_is_delaunay", failures, detail);

    // extreme_wall_equivalence
    let mut failures = 0;
    let mut detail = None;
    for &r in &relevant_set {
        let mut idx: Vec<usize> = (0..data.len())
            .filter(|&i| i == r || data.label_id(i) != data.label_id(r))
            .collect();
        idx.sort_unstable();
        let pos_r = idx.binary_search(&r).expect("r is in its own sub-dataset");
        let sub = data.subset(&idx)?;

        let inverted = build_inverted_set(&sub, pos_r)?;
        let pts = inverted.hull_points();
        let extreme = all_extreme_points(&pts, derive_seed(cfg.seed, r as u64), tol)?;
        let image_side: BTreeSet<usize> = extreme
            .into_iter()
            .filter(|&pos| pos != inverted.center_position())
            .map(|pos| idx[inverted.source_of(pos)])
            .collect();

        let sub_oracle = WallOracle::with_inflation(&sub, tol, cfg.oracle_inflation);
        let mut wall_side = BTreeSet::new();
        for (j, &orig) in idx.iter().enumerate() {
            if j != pos_r && sub_oracle.shares_wall(pos_r, j)? {
                wall_side.insert(orig);
            }
        }

        if image_side != wall_side {
            failures += 1;
            detail.get_or_insert_with(|| {
                format!(
                    "point {r}: extreme images {:?} but wall neighbors {:?}",
                    image_side, wall_side
                )
            });
        }
    }
    report.tally("extreme_wall_equivalence", failures, detail);

    // both_defining
    let mut failures = 0;
    let mut detail = None;
    for (i, j) in oracle.bichromatic_wall_pairs()? {
        let hits = relevant_set.contains(&i) as u8 + relevant_set.contains(&j) as u8;
        if hits == 1 {
            failures += 1;
            detail.get_or_insert_with(|| {
                format!("wall pair ({i}, {j}) has only one endpoint in the result")
            });
        }
    }
    report.tally("both_defining", failures, detail);

    // condense_matches_oracle
    let brute = oracle.brute_force_relevant()?;
    let (failures, detail) = if relevant_set == brute {
        (0, None)
    } else {
        let missing: Vec<usize> = brute.difference(&relevant_set).copied().collect();
        let extra: Vec<usize> = relevant_set.difference(&brute).copied().collect();
        (
            1,
            Some(format!("missing {missing:?}, unexpected {extra:?}")),
        )
    };
    report.tally("condense_matches_oracle", failures, detail);

    // idempotence
    let (failures, detail) = if relevant_set.is_empty() {
        (0, None)
    } else {
        let indices = relevant.indices();
        let sub = data.subset(&indices)?;
        let again = condense(&sub, cfg.seed, tol)?;
        if again.len() == sub.len() {
            (0, None)
        } else {
            let dropped: Vec<usize> = (0..sub.len())
                .filter(|&i| !again.contains(i))
                .map(|i| indices[i])
                .collect();
            (1, Some(format!("re-condensing dropped {dropped:?}")))
        }
    };
    report.tally("idempotence", failures, detail);

    // classification_preserved
    let eq = sample_equivalence(
        data,
        &relevant.indices(),
        cfg.queries,
        derive_seed(cfg.seed, 0x71756572),
        tol,
    )?;
    let detail = if eq.mismatches > 0 {
        Some(format!(
            "{} of {} queries disagreed ({} tie queries skipped)",
            eq.mismatches, eq.tested, eq.skipped_ties
        ))
    } else {
        None
    };
    report.tally("classification_preserved", eq.mismatches, detail);

    // wall_symmetry, on a bounded deterministic sample of ordered pairs
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, 0x73796d6d));
    let mut failures = 0;
    let mut detail = None;
    let sample = 48.min(data.len().saturating_mul(data.len().saturating_sub(1)));
    for _ in 0..sample {
        let i = rng.gen_range(0..data.len());
        let j = rng.gen_range(0..data.len());
        if i == j {
            continue;
        }
        if oracle.shares_wall(i, j)? != oracle.shares_wall(j, i)? {
            failures += 1;
            detail.get_or_insert_with(|| format!("asymmetric answer for pair ({i}, {j})"));
        }
    }
    report.tally("wall_symmetry", failures, detail);

    Ok(report)
}

/// How to draw a family of instances for a whole-suite run.
#[derive(Debug, Clone)]
pub struct InstanceFamily {
    pub count: usize,
    pub seed_base: u64,
    /// Inclusive range of dataset sizes.
    pub n_range: (usize, usize),
    pub dims: Vec<usize>,
    pub label_counts: Vec<usize>,
    pub queries: usize,
    pub oracle_inflation: f64,
}

impl InstanceFamily {
    fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidParameter(
                "instance count must be at least 1".into(),
            ));
        }
        if self.n_range.0 < 2 || self.n_range.1 < self.n_range.0 {
            return Err(Error::InvalidParameter(format!(
                "size range [{}, {}] is not usable",
                self.n_range.0, self.n_range.1
            )));
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::InvalidParameter(
                "dimension list must be nonempty and positive".into(),
            ));
        }
        if self.label_counts.is_empty() || self.label_counts.contains(&0) {
            return Err(Error::InvalidParameter(
                "label count list must be nonempty and positive".into(),
            ));
        }
        Ok(())
    }
}

/// Runs the full check list over `family.count` generated datasets,
/// rotating through the generator families, and merges the tallies in
/// instance order.
pub fn run_family_checks(family: &InstanceFamily, tol: &Tolerances) -> Result<SuiteReport> {
    family.validate()?;
    let mut merged = SuiteReport::empty();
    for k in 0..family.count {
        let seed = family.seed_base.wrapping_add(k as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 0x66616d69));
        let n = rng.gen_range(family.n_range.0..=family.n_range.1);
        let dim = family.dims[rng.gen_range(0..family.dims.len())];
        let label_count = family.label_counts[rng.gen_range(0..family.label_counts.len())].min(n);
        let fam = match k % 4 {
            0 => Family::GridHalfplane,
            1 => Family::GaussianClusters {
                separation: 12.0,
                spread: 1.0,
            },
            2 => Family::ConcentricAnnuli { band_width: 2.0 },
            // The ring family only exists in the plane.
            _ if dim == 2 => Family::ConvexRing { radius: 10.0 },
            _ => Family::GridHalfplane,
        };
        let data = generate(&GeneratorSpec {
            family: fam,
            n,
            dim,
            label_count,
            seed,
        })?;
        let cfg = CheckConfig {
            seed,
            queries: family.queries,
            oracle_inflation: family.oracle_inflation,
        };
        merged.merge(run_instance_checks(&data, &cfg, tol)?);
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn family(count: usize) -> InstanceFamily {
        InstanceFamily {
            count,
            seed_base: 40,
            n_range: (12, 36),
            dims: vec![2, 3],
            label_counts: vec![2, 3],
            queries: 400,
            oracle_inflation: crate::oracle::DEFAULT_BOX_INFLATION,
        }
    }

    #[test]
    fn one_label_instances_pass_trivially() {
        let points = (0..6)
            .map(|i| Point::new(vec![i as f64, (i * i % 5) as f64]).unwrap())
            .collect();
        let labels = vec!["A".to_string(); 6];
        let data = LabeledDataset::new(points, labels).unwrap();
        let cfg = CheckConfig {
            seed: 1,
            queries: 50,
            oracle_inflation: crate::oracle::DEFAULT_BOX_INFLATION,
        };
        let rep = run_instance_checks(&data, &cfg, &tol()).unwrap();
        assert!(rep.all_passed(), "{}", rep.render_text());
    }

    #[test]
    fn mixed_family_run_passes() {
        let rep = run_family_checks(&family(8), &tol()).unwrap();
        assert!(rep.all_passed(), "{}", rep.render_text());
        for c in &rep.checks {
            assert_eq!(c.instances, 8, "{} must run on every instance", c.name);
        }
    }

    #[test]
    fn report_without_every_name_is_incomplete() {
        let mut rep = SuiteReport::empty();
        rep.checks.remove(3);
        assert!(!rep.complete());
        assert!(!rep.all_passed());
    }

    #[test]
    fn render_lists_every_check() {
        let rep = run_family_checks(&family(1), &tol()).unwrap();
        let text = rep.render_text();
        for name in CHECK_NAMES {
            assert!(text.contains(name), "missing {name} in rendering");
        }
        assert!(text.trim_end().ends_with("PASS"));
    }

    #[test]
    fn family_validation_rejects_bad_inputs() {
        let mut f = family(0);
        assert!(run_family_checks(&f, &tol()).is_err());
        f.count = 1;
        f.n_range = (5, 3);
        assert!(run_family_checks(&f, &tol()).is_err());
        f.n_range = (5, 9);
        f.dims = vec![];
        assert!(run_family_checks(&f, &tol()).is_err());
    }
}
