//! The condensation driver: finds every training point whose removal could
//! change nearest-neighbor classification, and the classifier itself.
//!
//! Discovery is a closure computation over a FIFO work queue. Endpoints of
//! bichromatic minimum-spanning-tree edges are guaranteed starting points;
//! processing a queued point r adds every cross-label Voronoi neighbor of
//! r, obtained as the sources of the extreme points of r's inverted set.
//! The queue drains once the boundary is fully mapped, so the work done
//! scales with the size of the answer rather than with one pass per point.

use std::collections::{btree_map::Entry, BTreeMap, VecDeque};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::geom::{build_inverted_set, sqdist, LabeledDataset, Point};
use crate::hull::all_extreme_points;
use crate::mst::{bichromatic_edges, minimum_spanning_tree, MstEdge};
use crate::{derive_seed, Error, Result, Tolerances};

/// How a point entered the relevant set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Endpoint of a bichromatic minimum-spanning-tree edge.
    MstSeed,
    /// Found as a cross-label Voronoi neighbor while expanding `from`.
    Expansion { from: usize },
}

/// The set of boundary-defining training points, each with the step that
/// first discovered it.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RelevantSet {
    entries: BTreeMap<usize, Provenance>,
}

impl RelevantSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.entries.contains_key(&index)
    }

    pub fn provenance(&self, index: usize) -> Option<&Provenance> {
        self.entries.get(&index)
    }

    /// Member indices in ascending order.
    pub fn indices(&self) -> Vec<usize> {
        self.entries.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Provenance)> {
        self.entries.iter().map(|(&i, p)| (i, p))
    }

    fn insert_new(&mut self, index: usize, why: Provenance) -> bool {
        match self.entries.entry(index) {
            Entry::Occupied(_) => false,
            Entry::Vacant(slot) => {
                slot.insert(why);
                true
            }
        }
    }
}

/// Wall-clock spent in the two phases of [`condense_with_report`].
#[derive(Debug, Clone, Copy)]
pub struct PhaseTimings {
    pub mst: Duration,
    pub expansion: Duration,
}

/// Everything a caller might want from one condensation run.
#[derive(Debug, Clone)]
pub struct CondenseReport {
    pub result: RelevantSet,
    pub tree: Vec<MstEdge>,
    pub timings: PhaseTimings,
}

/// Finds the boundary-defining subset of `data`.
///
/// The returned set is identical for identical inputs and seed, including
/// provenance; the seed only steers LP pivot orders, so the membership is
/// stable across seeds as well.
pub fn condense(data: &LabeledDataset, seed: u64, tol: &Tolerances) -> Result<RelevantSet> {
    condense_with_report(data, seed, tol).map(|r| r.result)
}

/// As [`condense`], also returning the spanning tree and phase timings.
pub fn condense_with_report(
    data: &LabeledDataset,
    seed: u64,
    tol: &Tolerances,
) -> Result<CondenseReport> {
    let mst_start = Instant::now();
    let tree = minimum_spanning_tree(data);
    let seeds = bichromatic_edges(data, &tree);
    let mst_time = mst_start.elapsed();

    let expansion_start = Instant::now();
    let mut result = RelevantSet::default();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for edge in &seeds {
        for endpoint in [edge.u, edge.v] {
            if result.insert_new(endpoint, Provenance::MstSeed) {
                queue.push_back(endpoint);
            }
        }
    }

    while let Some(r) = queue.pop_front() {
        let inverted = build_inverted_set(data, r)?;
        let pts = inverted.hull_points();
        let extreme = all_extreme_points(&pts, derive_seed(seed, r as u64), tol)?;
        for pos in extreme {
            if pos == inverted.center_position() {
                continue;
            }
            let source = inverted.source_of(pos);
            if result.insert_new(source, Provenance::Expansion { from: r }) {
                queue.push_back(source);
            }
        }
    }
    let expansion_time = expansion_start.elapsed();

    Ok(CondenseReport {
        result,
        tree,
        timings: PhaseTimings {
            mst: mst_time,
            expansion: expansion_time,
        },
    })
}

/// Label of the training point nearest to `query`; exact distance ties are
/// broken toward the lowest index. Callers that compare classifiers are
/// expected to exclude near-ties instead of relying on this rule.
pub fn classify(data: &LabeledDataset, query: &Point) -> Result<u32> {
    if query.dim() != data.dim() {
        return Err(Error::DimensionMismatch {
            expected: data.dim(),
            got: query.dim(),
        });
    }
    let mut best = 0usize;
    let mut best_sq = sqdist(data.point(0).coords(), query.coords());
    for i in 1..data.len() {
        let d = sqdist(data.point(i).coords(), query.coords());
        if d < best_sq {
            best = i;
            best_sq = d;
        }
    }
    Ok(data.label_id(best))
}
