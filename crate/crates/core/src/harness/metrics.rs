use rayon::prelude::*;

use crate::instance::{build_graph, Embedding, GeometricGraph};

use super::HarnessError;

/// Quality of `phi` as an embedding of `g`: longest edge over shortest
/// non-edge, both measured under `phi`.
///
/// When `g` is complete there is no non-edge and the longest edge is divided
/// by `r` instead; without a known `r` the measure is undefined and `None` is
/// returned. A graph on fewer than two vertices also gives `None`.
pub fn quality_q(g: &GeometricGraph, phi: &Embedding, r: Option<f64>) -> Option<f64> {
    assert_eq!(g.n(), phi.len(), "graph and embedding sizes differ");
    if g.n() < 2 {
        return None;
    }
    let max_edge = g
        .edges()
        .map(|(u, v)| phi.point(u).dist(&phi.point(v)))
        .fold(0.0_f64, f64::max);
    if g.is_complete() {
        return r.map(|r| max_edge / r);
    }
    Some(max_edge / min_non_edge_length(g, phi))
}

/// Shortest distance under `phi` between two non-adjacent vertices.
///
/// Searches pairs within a radius that doubles until a non-edge turns up;
/// every pair closer than the radius is examined, so the first hit is the
/// exact minimum. The graph must have at least one non-edge.
pub fn min_non_edge_length(g: &GeometricGraph, phi: &Embedding) -> f64 {
    // Slightly beyond the diameter so the last round surely covers all pairs.
    let diameter = phi.domain().diameter() * (1.0 + 1e-9);
    let mut radius = 1.0_f64.min(diameter);
    loop {
        let near = build_graph(phi, radius).expect("positive radius");
        let best = (0..g.n())
            .into_par_iter()
            .map(|u| {
                let p = phi.point(u);
                sorted_difference(near.neighbors(u), g.neighbors(u))
                    .filter(|&v| v as usize > u)
                    .map(|v| p.dist(&phi.point(v as usize)))
                    .fold(f64::INFINITY, f64::min)
            })
            .reduce(|| f64::INFINITY, f64::min);
        if best.is_finite() {
            return best;
        }
        assert!(radius < diameter, "graph has no non-edge");
        radius = (radius * 2.0).min(diameter);
    }
}

/// Entries of sorted `a` missing from sorted `b`.
fn sorted_difference<'a>(a: &'a [u32], b: &'a [u32]) -> impl Iterator<Item = u32> + 'a {
    let mut j = 0;
    a.iter().copied().filter(move |&x| {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        !(j < b.len() && b[j] == x)
    })
}

/// `|E(g) Δ E(G(phi, r))| / |E(g)|`.
pub fn edge_symmetric_difference(
    g: &GeometricGraph,
    phi: &Embedding,
    r: f64,
) -> Result<f64, HarnessError> {
    if g.edge_count() == 0 {
        return Err(HarnessError::EmptyGraph);
    }
    let h = build_graph(phi, r)?;
    let mut common = 0usize;
    for u in 0..g.n() {
        let (a, b) = (g.neighbors(u), h.neighbors(u));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    common += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    // Each common edge was seen from both ends.
    let common = common / 2;
    let diff = g.edge_count() + h.edge_count() - 2 * common;
    Ok(diff as f64 / g.edge_count() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point, SquareDomain, SquareSymmetry};
    use crate::instance::sample_embedding;

    #[test]
    fn realisation_has_q_at_most_one() {
        let e = sample_embedding(400, 12).unwrap();
        let g = build_graph(&e, 2.0).unwrap();
        let q = quality_q(&g, &e, Some(2.0)).unwrap();
        assert!(q <= 1.0, "q={q}");
    }

    #[test]
    fn clique_of_two() {
        let d = SquareDomain::new(2);
        let e = Embedding::new(d, vec![Point::new(0.0, 0.0), Point::new(0.5, 0.0)]).unwrap();
        let g = GeometricGraph::from_edges(2, &[(0, 1)], None).unwrap();
        assert_eq!(quality_q(&g, &e, Some(0.5)), Some(1.0));
        assert_eq!(quality_q(&g, &e, None), None);
    }

    #[test]
    fn non_edge_search_doubles_far_enough() {
        // Only non-edge is between the two far-apart points.
        let d = SquareDomain::new(9);
        let pts = vec![Point::new(-1.5, -1.5), Point::new(1.5, 1.5), Point::new(0.0, 0.0)];
        let e = Embedding::new(d, [pts, vec![Point::new(0.0, 0.1); 6]].concat()).unwrap();
        let mut edges = vec![];
        for u in 0..9 {
            for v in u + 1..9 {
                if (u, v) != (0, 1) {
                    edges.push((u, v));
                }
            }
        }
        let g = GeometricGraph::from_edges(9, &edges, None).unwrap();
        assert!((min_non_edge_length(&g, &e) - 18f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn symmetric_difference_zero_cases() {
        let e = sample_embedding(500, 13).unwrap();
        let g = build_graph(&e, 3.0).unwrap();
        assert_eq!(edge_symmetric_difference(&g, &e, 3.0).unwrap(), 0.0);
        for s in SquareSymmetry::all() {
            let t = e.transformed(&s);
            assert_eq!(edge_symmetric_difference(&g, &t, 3.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn symmetric_difference_counts() {
        let e = sample_embedding(500, 13).unwrap();
        let g = build_graph(&e, 3.0).unwrap();
        let h = build_graph(&e, 2.0).unwrap();
        let ratio = edge_symmetric_difference(&g, &e, 2.0).unwrap();
        let want = (g.edge_count() - h.edge_count()) as f64 / g.edge_count() as f64;
        assert!((ratio - want).abs() < 1e-15);
    }

    #[test]
    fn empty_graph_errors() {
        let e = sample_embedding(5, 0).unwrap();
        let g = GeometricGraph::from_edges(5, &[], None).unwrap();
        assert!(matches!(
            edge_symmetric_difference(&g, &e, 1.0),
            Err(HarnessError::EmptyGraph)
        ));
    }
}
