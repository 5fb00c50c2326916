//! Points, labeled datasets, and the sphere inversion that turns
//! "Voronoi neighbor of r" into "extreme point of an inverted image".

use std::collections::HashMap;

use crate::{Error, Result};

/// A point in d-dimensional Euclidean space, d >= 1, all coordinates finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoordinate);
        }
        Ok(Point { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Bit-exact hash key; folds -0.0 onto +0.0 so coordinate-equal points collide.
    pub(crate) fn key(&self) -> Vec<u64> {
        self.coords.iter().map(|c| (c + 0.0).to_bits()).collect()
    }
}

/// Squared Euclidean distance between two points of equal dimension.
pub fn squared_distance(a: &Point, b: &Point) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(sqdist(a.coords(), b.coords()))
}

/// Unchecked slice version used on hot paths where dimensions are known equal.
pub(crate) fn sqdist(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        acc += d * d;
    }
    acc
}

/// Training points with one opaque label token per point.
///
/// Invariants enforced on construction: at least one point, uniform
/// dimension, finite coordinates, and no two points coordinate-identical.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    points: Vec<Point>,
    labels: Vec<u32>,
    label_names: Vec<String>,
    dim: usize,
}

impl LabeledDataset {
    pub fn new(points: Vec<Point>, labels: Vec<String>) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(Error::InvalidParameter(format!(
                "{} points but {} labels",
                points.len(),
                labels.len()
            )));
        }
        let mut names: Vec<String> = Vec::new();
        let mut ids = Vec::with_capacity(labels.len());
        for label in &labels {
            let id = match names.iter().position(|n| n == label) {
                Some(i) => i,
                None => {
                    names.push(label.clone());
                    names.len() - 1
                }
            };
            ids.push(id as u32);
        }
        Self::from_parts(points, ids, names)
    }

    /// Construction from pre-interned labels; shared by `new` and `subset`.
    pub(crate) fn from_parts(
        points: Vec<Point>,
        labels: Vec<u32>,
        label_names: Vec<String>,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if points.len() != labels.len() {
            return Err(Error::InvalidParameter(format!(
                "{} points but {} label ids",
                points.len(),
                labels.len()
            )));
        }
        let dim = points[0].dim();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        if let Some(&bad) = labels.iter().find(|&&l| l as usize >= label_names.len()) {
            return Err(Error::IndexOutOfBounds {
                index: bad as usize,
                len: label_names.len(),
            });
        }
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if let Some(&first) = seen.get(&p.key()) {
                return Err(Error::DuplicatePoints { a: first, b: i });
            }
            seen.insert(p.key(), i);
        }
        Ok(LabeledDataset {
            points,
            labels,
            label_names,
            dim,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Interned label id of point `i`; ids are comparable across subsets.
    pub fn label_id(&self, i: usize) -> u32 {
        self.labels[i]
    }

    pub fn label_name(&self, i: usize) -> &str {
        &self.label_names[self.labels[i] as usize]
    }

    pub fn label_names(&self) -> &[String] {
        &self.label_names
    }

    /// Number of distinct labels that actually occur.
    pub fn distinct_labels(&self) -> usize {
        let mut seen = vec![false; self.label_names.len()];
        for &l in &self.labels {
            seen[l as usize] = true;
        }
        seen.iter().filter(|&&s| s).count()
    }

    /// New dataset holding the selected points; label ids keep their meaning.
    pub fn subset(&self, indices: &[usize]) -> Result<LabeledDataset> {
        if indices.is_empty() {
            return Err(Error::EmptyDataset);
        }
        for &i in indices {
            if i >= self.len() {
                return Err(Error::IndexOutOfBounds {
                    index: i,
                    len: self.len(),
                });
            }
        }
        let points = indices.iter().map(|&i| self.points[i].clone()).collect();
        let labels = indices.iter().map(|&i| self.labels[i]).collect();
        Self::from_parts(points, labels, self.label_names.clone())
    }

    /// Axis-aligned bounding box as (per-axis min, per-axis max).
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = self.points[0].coords().to_vec();
        let mut hi = lo.clone();
        for p in &self.points[1..] {
            for (k, &c) in p.coords().iter().enumerate() {
                lo[k] = lo[k].min(c);
                hi[k] = hi[k].max(c);
            }
        }
        (lo, hi)
    }
}

/// Image of one training point under inversion, tagged with its source.
/// The image is stored relative to the inversion center (the center sits
/// at the origin of this frame).
#[derive(Debug, Clone, PartialEq)]
pub struct InversionImage {
    pub source_index: usize,
    pub image: Point,
}

/// Inversion through the sphere of the given radius centered at `center`:
/// p maps to center + (radius^2 / |p - center|^2)(p - center).
///
/// The map is an involution on everything except the center itself, which
/// has no image and is rejected.
pub fn invert_through_sphere(p: &Point, center: &Point, radius: f64) -> Result<Point> {
    if p.dim() != center.dim() {
        return Err(Error::DimensionMismatch {
            expected: center.dim(),
            got: p.dim(),
        });
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "inversion radius must be positive and finite, got {radius}"
        )));
    }
    if p.coords() == center.coords() {
        return Err(Error::DegenerateInversion);
    }
    let dsq = sqdist(p.coords(), center.coords());
    let scale = radius * radius / dsq;
    let coords = p
        .coords()
        .iter()
        .zip(center.coords())
        .map(|(pc, cc)| cc + scale * (pc - cc))
        .collect();
    Point::new(coords)
}

/// The inverted set for one anchor point r: every differently-labeled
/// training point pushed through the unit sphere at r, plus r itself.
///
/// Everything is expressed in coordinates relative to r. Which points are
/// extreme does not depend on translation, and the relative frame keeps
/// full floating-point resolution even when the data sits far from the
/// origin, where absolute image coordinates would swallow the tiny offsets
/// the images of remote points collapse to.
#[derive(Debug, Clone)]
pub struct InvertedSet {
    pub center_index: usize,
    pub images: Vec<InversionImage>,
    dim: usize,
}

impl InvertedSet {
    /// Point list handed to the extreme-point search: all images in source
    /// order, then the center (the origin of the relative frame) last.
    pub fn hull_points(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = self.images.iter().map(|im| im.image.clone()).collect();
        pts.push(Point::new(vec![0.0; self.dim]).expect("origin of a nonzero dimension"));
        pts
    }

    /// Position of the center inside `hull_points()`.
    pub fn center_position(&self) -> usize {
        self.images.len()
    }

    /// Training-point index behind position `pos` of `hull_points()`.
    pub fn source_of(&self, pos: usize) -> usize {
        if pos == self.images.len() {
            self.center_index
        } else {
            self.images[pos].source_index
        }
    }
}

/// Builds the inverted set using the unit sphere. The radius only rescales
/// the image set, which leaves its extreme points unchanged, so it is fixed
/// at 1. Images are computed directly in the r-relative frame, never adding
/// r back, so no precision is lost to large absolute coordinates.
pub fn build_inverted_set(data: &LabeledDataset, r: usize) -> Result<InvertedSet> {
    if r >= data.len() {
        return Err(Error::IndexOutOfBounds {
            index: r,
            len: data.len(),
        });
    }
    let center = data.point(r);
    let mut images = Vec::new();
    for i in 0..data.len() {
        if data.label_id(i) == data.label_id(r) {
            continue;
        }
        let p = data.point(i);
        if p.coords() == center.coords() {
            return Err(Error::DegenerateInversion);
        }
        let dsq = sqdist(p.coords(), center.coords());
        let coords: Vec<f64> = p
            .coords()
            .iter()
            .zip(center.coords())
            .map(|(pc, cc)| (pc - cc) / dsq)
            .collect();
        images.push(InversionImage {
            source_index: i,
            image: Point::new(coords)?,
        });
    }
    Ok(InvertedSet {
        center_index: r,
        images,
        dim: data.dim(),
    })
}
