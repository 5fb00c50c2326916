//! Synthetic dataset families for tests, verification runs, and benches.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::geom::{LabeledDataset, Point};
use crate::{Error, Result};

/// The supported families.
///
/// * `GridHalfplane`: integer lattice labeled by bands along the first
///   axis. Deliberately degenerate: full of cocircular and collinear
///   subsets.
/// * `GaussianClusters`: one isotropic Gaussian blob per label, centers
///   spaced `separation` apart along the first axis.
/// * `ConcentricAnnuli`: uniform points in a ball, labeled by radial band
///   of width `band_width`.
/// * `ConvexRing`: evenly spaced points on a circle (dimension 2 only),
///   labels cycling around it; every point ends up boundary-defining.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    GridHalfplane,
    GaussianClusters { separation: f64, spread: f64 },
    ConcentricAnnuli { band_width: f64 },
    ConvexRing { radius: f64 },
}

/// A fully-specified generation request; output is a pure function of it.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub dim: usize,
    pub label_count: usize,
    pub seed: u64,
}

/// Label names are single letters for up to 26 labels, `c<i>` beyond that.
pub fn label_name(i: usize) -> String {
    if i < 26 {
        char::from(b'A' + i as u8).to_string()
    } else {
        format!("c{i}")
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<LabeledDataset> {
    if spec.n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if spec.dim == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    if spec.label_count == 0 {
        return Err(Error::InvalidParameter(
            "label count must be at least 1".into(),
        ));
    }
    match spec.family {
        Family::GridHalfplane => grid_halfplane(spec),
        Family::GaussianClusters { separation, spread } => {
            for (name, v) in [("separation", separation), ("spread", spread)] {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "{name} must be positive, got {v}"
                    )));
                }
            }
            gaussian_clusters(spec, separation, spread)
        }
        Family::ConcentricAnnuli { band_width } => {
            if !(band_width.is_finite() && band_width > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "band width must be positive, got {band_width}"
                )));
            }
            concentric_annuli(spec, band_width)
        }
        Family::ConvexRing { radius } => {
            if !(radius.is_finite() && radius > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "radius must be positive, got {radius}"
                )));
            }
            if spec.dim != 2 {
                return Err(Error::UnsupportedDimension {
                    expected: 2,
                    got: spec.dim,
                });
            }
            convex_ring(spec, radius)
        }
    }
}

/// Smallest lattice side whose d-th power reaches n, then the first n
/// lattice points in lexicographic order. Labels are equal-width bands of
/// the first coordinate, computed against the layers actually emitted.
fn grid_halfplane(spec: &GeneratorSpec) -> Result<LabeledDataset> {
    let side = (1..)
        .find(|&m| (m as u128).pow(spec.dim as u32) >= spec.n as u128)
        .expect("side search is bounded by n");
    let mut points = Vec::with_capacity(spec.n);
    let mut counters = vec![0usize; spec.dim];
    for _ in 0..spec.n {
        points.push(Point::new(counters.iter().map(|&c| c as f64).collect())?);
        for k in (0..spec.dim).rev() {
            counters[k] += 1;
            if counters[k] < side {
                break;
            }
            counters[k] = 0;
        }
    }
    let layers = points
        .iter()
        .map(|p| p.coords()[0] as usize)
        .max()
        .unwrap_or(0)
        + 1;
    let labels = points
        .iter()
        .map(|p| {
            let x0 = p.coords()[0] as usize;
            let band = (x0 * spec.label_count / layers).min(spec.label_count - 1);
            label_name(band)
        })
        .collect();
    LabeledDataset::new(points, labels)
}

fn gaussian_clusters(spec: &GeneratorSpec, separation: f64, spread: f64) -> Result<LabeledDataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut points = Vec::with_capacity(spec.n);
    let mut labels = Vec::with_capacity(spec.n);
    for i in 0..spec.n {
        let cluster = i % spec.label_count;
        let mut coords: Vec<f64> = (0..spec.dim)
            .map(|_| {
                let g: f64 = StandardNormal.sample(&mut rng);
                spread * g
            })
            .collect();
        coords[0] += cluster as f64 * separation;
        points.push(Point::new(coords)?);
        labels.push(label_name(cluster));
    }
    LabeledDataset::new(points, labels)
}

fn concentric_annuli(spec: &GeneratorSpec, band_width: f64) -> Result<LabeledDataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let outer = band_width * spec.label_count as f64;
    let mut points = Vec::with_capacity(spec.n);
    let mut labels = Vec::with_capacity(spec.n);
    for _ in 0..spec.n {
        // Uniform in the ball: normal direction, radius by inverse CDF.
        let mut dir: Vec<f64>;
        let mut norm_sq: f64;
        loop {
            dir = (0..spec.dim)
                .map(|_| StandardNormal.sample(&mut rng))
                .collect();
            norm_sq = dir.iter().map(|x| x * x).sum();
            if norm_sq > 1e-12 {
                break;
            }
        }
        let norm = norm_sq.sqrt();
        let u: f64 = rng.gen();
        let radius = outer * u.powf(1.0 / spec.dim as f64);
        let coords: Vec<f64> = dir.iter().map(|x| radius * x / norm).collect();
        let band = ((radius / band_width) as usize).min(spec.label_count - 1);
        points.push(Point::new(coords)?);
        labels.push(label_name(band));
    }
    LabeledDataset::new(points, labels)
}

fn convex_ring(spec: &GeneratorSpec, radius: f64) -> Result<LabeledDataset> {
    let mut points = Vec::with_capacity(spec.n);
    let mut labels = Vec::with_capacity(spec.n);
    for i in 0..spec.n {
        let angle = 2.0 * std::f64::consts::PI * i as f64 / spec.n as f64;
        points.push(Point::new(vec![
            radius * angle.cos(),
            radius * angle.sin(),
        ])?);
        labels.push(label_name(i % spec.label_count));
    }
    LabeledDataset::new(points, labels)
}
