//! Thin a nearest-neighbor classification training set down to the points
//! that actually determine its decision boundary.
//!
//! Dropping a training point changes nearest-neighbor classification only
//! if that point's Voronoi cell touches the cell of a differently-labeled
//! point. The [`condense`] module finds exactly those points without ever
//! building a Voronoi diagram:
//!
//! 1. seed the result with the endpoints of minimum-spanning-tree edges
//!    whose labels differ, then
//! 2. for each discovered point, invert the differently-labeled points
//!    through a unit sphere centered on it; the extreme points of the
//!    inverted image correspond one-to-one to cross-label Voronoi
//!    neighbors, which join the result and the work queue.
//!
//! The [`oracle`] module reaches the same answer along an entirely
//! different route (direct LP witnesses for shared Voronoi walls) and is
//! used by the test batteries and the `verify` CLI mode to cross-check the
//! fast path. [`checks`] bundles both into a named property suite.

pub mod bench;
pub mod checks;
pub mod condense;
pub mod error;
pub mod generate;
pub mod geom;
pub mod hull;
pub mod io;
pub mod lp;
pub mod mst;
pub mod oracle;
pub mod svg;

pub use condense::{classify, condense, condense_with_report, Provenance, RelevantSet};
pub use error::Error;
pub use geom::{LabeledDataset, Point};

pub type Result<T> = std::result::Result<T, Error>;

/// Numeric tolerances shared by the geometric decision procedures.
///
/// * `eps_geom` scales with the data: geometric predicates (extremeness
///   margins, coordinate comparisons) treat anything below
///   `eps_geom * bounding-box extent` as zero.
/// * `eps_strict` is absolute: the wall oracle demands at least this much
///   clearance (in distance units, after row normalization) before it
///   believes a strict inequality.
/// * `eps_tie` is relative: query points whose two nearest training
///   distances differ by less than `eps_tie * d2` are excluded from
///   classification-equivalence sampling.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    pub eps_geom: f64,
    pub eps_strict: f64,
    pub eps_tie: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_geom: 1e-9,
            eps_strict: 1e-7,
            eps_tie: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn new(eps_geom: f64, eps_strict: f64, eps_tie: f64) -> Result<Self> {
        for (name, v) in [
            ("eps-geom", eps_geom),
            ("eps-strict", eps_strict),
            ("eps-tie", eps_tie),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be a positive finite number, got {v}"
                )));
            }
        }
        Ok(Tolerances {
            eps_geom,
            eps_strict,
            eps_tie,
        })
    }
}

/// Stable per-subtask seed derivation (splitmix64 over seed xor salt).
/// Callers hand every stage its own stream so adding a draw in one place
/// never shifts another stage's randomness.
pub fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
