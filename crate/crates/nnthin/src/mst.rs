//! Euclidean minimum spanning tree over the training points and the
//! bichromatic filter that seeds the condensation work queue.

use crate::geom::{sqdist, LabeledDataset};

/// One tree edge; `u < v` and `weight` is the Euclidean distance.
#[derive(Debug, Clone, PartialEq)]
pub struct MstEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Dense Jarnik/Prim scan: n-1 rounds over a best-candidate array, no heap.
/// Squared distances are compared internally; the emitted weight is the
/// true distance. Equal candidates are broken toward the lower vertex
/// index, so the tree is deterministic even on tied inputs.
///
/// Returns n-1 edges in discovery order (empty for a single point).
pub fn minimum_spanning_tree(data: &LabeledDataset) -> Vec<MstEdge> {
    let n = data.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n < 2 {
        return edges;
    }
    let mut in_tree = vec![false; n];
    let mut best_sq = vec![f64::INFINITY; n];
    let mut best_from = vec![0usize; n];
    in_tree[0] = true;
    for (j, slot) in best_sq.iter_mut().enumerate().skip(1) {
        *slot = sqdist(data.point(0).coords(), data.point(j).coords());
    }
    for _ in 1..n {
        let mut next = usize::MAX;
        for j in 0..n {
            if !in_tree[j] && (next == usize::MAX || best_sq[j] < best_sq[next]) {
                next = j;
            }
        }
        let from = best_from[next];
        edges.push(MstEdge {
            u: from.min(next),
            v: from.max(next),
            weight: best_sq[next].sqrt(),
        });
        in_tree[next] = true;
        for j in 0..n {
            if in_tree[j] {
                continue;
            }
            let d = sqdist(data.point(next).coords(), data.point(j).coords());
            if d < best_sq[j] || (d == best_sq[j] && next < best_from[j]) {
                best_sq[j] = d;
                best_from[j] = next;
            }
        }
    }
    edges
}

/// Tree edges whose endpoints carry different labels, in input order.
pub fn bichromatic_edges(data: &LabeledDataset, tree: &[MstEdge]) -> Vec<MstEdge> {
    tree.iter()
        .filter(|e| data.label_id(e.u) != data.label_id(e.v))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use proptest::prelude::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dataset(points: &[&[f64]], labels: &[&str]) -> LabeledDataset {
        LabeledDataset::new(
            points
                .iter()
                .map(|c| Point::new(c.to_vec()).unwrap())
                .collect(),
            labels.iter().map(|l| l.to_string()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn two_points_one_edge() {
        let data = dataset(&[&[0.0, 0.0], &[3.0, 4.0]], &["A", "B"]);
        let tree = minimum_spanning_tree(&data);
        assert_eq!(tree.len(), 1);
        assert_eq!((tree[0].u, tree[0].v), (0, 1));
        assert!((tree[0].weight - 5.0).abs() <= 1e-12);
    }

    #[test]
    fn collinear_points_chain_up() {
        let data = dataset(&[&[0.0], &[1.0], &[3.0]], &["A", "A", "A"]);
        let tree = minimum_spanning_tree(&data);
        assert_eq!(tree.len(), 2);
        assert_eq!((tree[0].u, tree[0].v), (0, 1));
        assert!((tree[0].weight - 1.0).abs() <= 1e-12);
        assert_eq!((tree[1].u, tree[1].v), (1, 2));
        assert!((tree[1].weight - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn unit_square_total_weight_three() {
        let data = dataset(
            &[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]],
            &["A", "A", "A", "A"],
        );
        let tree = minimum_spanning_tree(&data);
        assert_eq!(tree.len(), 3);
        for e in &tree {
            assert!((e.weight - 1.0).abs() <= 1e-12, "picked a diagonal");
        }
    }

    #[test]
    fn single_point_empty_tree() {
        let data = dataset(&[&[0.0]], &["A"]);
        assert!(minimum_spanning_tree(&data).is_empty());
    }

    #[test]
    fn bichromatic_filter_keeps_cross_label_edges() {
        // 0A - 1A - 2B - 3B on a line: one bichromatic edge in the middle.
        let data = dataset(&[&[0.0], &[1.0], &[2.0], &[3.0]], &["A", "A", "B", "B"]);
        let tree = minimum_spanning_tree(&data);
        let cross = bichromatic_edges(&data, &tree);
        assert_eq!(cross.len(), 1);
        assert_eq!((cross[0].u, cross[0].v), (1, 2));
    }

    #[test]
    fn bichromatic_on_uniform_labels_is_empty() {
        let data = dataset(&[&[0.0], &[2.0], &[5.0]], &["A", "A", "A"]);
        let tree = minimum_spanning_tree(&data);
        assert!(bichromatic_edges(&data, &tree).is_empty());
    }

    /// Independent reference: Kruskal over all pairs with union-find.
    fn kruskal_total_weight(data: &LabeledDataset) -> f64 {
        let n = data.len();
        let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                pairs.push((sqdist(data.point(i).coords(), data.point(j).coords()), i, j));
            }
        }
        pairs.sort_by(|a, b| (a.0, a.1, a.2).partial_cmp(&(b.0, b.1, b.2)).unwrap());
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut total = 0.0;
        let mut used = 0;
        for (dsq, i, j) in pairs {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
                total += dsq.sqrt();
                used += 1;
                if used == n - 1 {
                    break;
                }
            }
        }
        total
    }

    fn random_dataset(seed: u64, n: usize, d: usize, grid: bool) -> LabeledDataset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = Vec::new();
        let mut labels = Vec::new();
        let mut seen = std::collections::HashSet::new();
        while points.len() < n {
            let coords: Vec<f64> = (0..d)
                .map(|_| {
                    if grid {
                        rng.gen_range(0..12) as f64
                    } else {
                        rng.gen_range(-20.0..20.0)
                    }
                })
                .collect();
            let key: Vec<u64> = coords.iter().map(|c| c.to_bits()).collect();
            if seen.insert(key) {
                points.push(Point::new(coords).unwrap());
                labels.push(if rng.gen_bool(0.5) { "A" } else { "B" }.to_string());
            }
        }
        LabeledDataset::new(points, labels).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn matches_kruskal_total(seed in 0u64..5_000, n in 2usize..60, grid: bool) {
            let data = random_dataset(seed, n, 2, grid);
            let tree = minimum_spanning_tree(&data);
            let total: f64 = tree.iter().map(|e| e.weight).sum();
            let want = kruskal_total_weight(&data);
            prop_assert!((total - want).abs() <= 1e-9 * want.max(1.0),
                "prim total {total} != kruskal total {want}");
        }

        #[test]
        fn edges_form_a_spanning_tree(seed in 0u64..5_000, n in 1usize..50) {
            let data = random_dataset(seed, n, 3, false);
            let tree = minimum_spanning_tree(&data);
            prop_assert_eq!(tree.len(), n - 1);
            // n-1 edges that leave the graph connected form a tree.
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(parent: &mut [usize], mut x: usize) -> usize {
                while parent[x] != x {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                x
            }
            for e in &tree {
                prop_assert!(e.u < e.v, "edges must be canonical");
                let (ru, rv) = (find(&mut parent, e.u), find(&mut parent, e.v));
                prop_assert!(ru != rv, "cycle in claimed tree");
                parent[ru] = rv;
                let d = crate::geom::squared_distance(data.point(e.u), data.point(e.v))
                    .unwrap()
                    .sqrt();
                prop_assert!((e.weight - d).abs() <= 1e-9 * d.max(1.0));
            }
        }
    }
}
