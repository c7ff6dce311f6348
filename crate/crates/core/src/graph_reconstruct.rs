//! Reconstruction from adjacency alone: estimate the threshold from the edge
//! count, find four corner vertices, and trilaterate every other vertex from
//! its hop distances to them.

use std::collections::VecDeque;
use std::f64::consts::PI;

use rayon::prelude::*;

use crate::geometry::{Point, SquareDomain};
use crate::instance::{Embedding, GeometricGraph};
use crate::placement::{
    pairs_without, place_on_pairs, CornerInfo, PlacementCase, ReconstructError,
    ReconstructionResult, VertexPlacement,
};

/// Hop count for vertices a BFS never reached.
pub const UNREACHABLE: u32 = u32::MAX;

/// Expected edge count of `G(n, r)`:
/// `½(n−1)πr²(1 − (8/3π)(r/√n) + (1/2π)(r²/n))`.
///
/// Exact for `0 < r ≤ √n`, where it is strictly increasing in `r`.
pub fn expected_edges_mu(n: usize, r: f64) -> f64 {
    let nf = n as f64;
    let t = r / nf.sqrt();
    0.5 * (nf - 1.0) * PI * r * r * (1.0 - 8.0 / (3.0 * PI) * t + t * t / (2.0 * PI))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct REstimate {
    pub r_hat: f64,
    pub m_observed: usize,
    /// `√n / r̂`.
    pub rho_hat: f64,
    /// The edge count is at or beyond what any `r ≤ √n` explains, so
    /// `r̂ = √n` is only a lower bound.
    pub saturated: bool,
}

/// Inverts [`expected_edges_mu`] by bisection on `(0, √n]`.
pub fn estimate_r(g: &GeometricGraph) -> Result<REstimate, ReconstructError> {
    let m = g.edge_count();
    if m == 0 {
        return Err(ReconstructError::TooSparse);
    }
    let mut est = estimate_r_from_count(g.n(), m as f64);
    est.m_observed = m;
    est.saturated |= g.is_complete();
    Ok(est)
}

/// Bisection for a possibly fractional target count `m > 0`.
pub fn estimate_r_from_count(n: usize, m: f64) -> REstimate {
    let side = (n as f64).sqrt();
    let finish = |r_hat: f64, saturated: bool| REstimate {
        r_hat,
        m_observed: m.round() as usize,
        rho_hat: side / r_hat,
        saturated,
    };
    if m >= expected_edges_mu(n, side) {
        return finish(side, true);
    }
    let (mut lo, mut hi) = (0.0, side);
    // Run to float resolution; the result then meets |μ(r̂) − m| < 1 with
    // room to spare.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if expected_edges_mu(n, mid) < m {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    finish(0.5 * (lo + hi), false)
}

/// Hop distances from `src`; [`UNREACHABLE`] where no path exists.
pub fn bfs_distances(g: &GeometricGraph, src: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::with_capacity(g.n());
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &w in g.neighbors(u) {
            let w = w as usize;
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Four corner vertices and their BFS trees.
#[derive(Debug, Clone, PartialEq)]
pub struct CornerAssignment {
    /// `v1..v4`; vertex `corner_vertices[i]` is placed at corner `i`.
    pub corner_vertices: [usize; 4],
    /// `u1..u4` in the order they were picked.
    pub picks: [usize; 4],
    /// `distances[i][v] = d_G(v, corner_vertices[i])`.
    pub distances: [Vec<u32>; 4],
    /// Some pick had several unmarked vertices of minimal degree.
    pub degree_tie: bool,
    /// Two picks were equally far from `u1`.
    pub distance_tie: bool,
}

impl CornerAssignment {
    pub fn hops(&self, v: usize) -> [u32; 4] {
        [0, 1, 2, 3].map(|i| self.distances[i][v])
    }

    /// Corner index of `v` if it is a corner vertex.
    pub fn corner_of(&self, v: usize) -> Option<usize> {
        self.corner_vertices.iter().position(|&c| c == v)
    }
}

/// Picks four low-degree vertices with pairwise disjoint closed
/// neighbourhoods, then labels them so that `v1, v3` are the pair farthest
/// apart in the graph.
pub fn find_corner_vertices(g: &GeometricGraph) -> Result<CornerAssignment, ReconstructError> {
    let n = g.n();
    let mut marked = vec![false; n];
    let mut picks = [0usize; 4];
    let mut degree_tie = false;
    for (found, slot) in picks.iter_mut().enumerate() {
        let mut best: Option<(usize, usize)> = None;
        let mut ties = 0;
        for v in (0..n).filter(|&v| !marked[v]) {
            let d = g.degree(v);
            match best {
                Some((bd, _)) if d > bd => {}
                Some((bd, _)) if d == bd => ties += 1,
                _ => {
                    best = Some((d, v));
                    ties = 0;
                }
            }
        }
        let (_, u) = best.ok_or(ReconstructError::DegenerateDegrees { found })?;
        degree_tie |= ties > 0;
        *slot = u;
        marked[u] = true;
        for &w in g.neighbors(u) {
            marked[w as usize] = true;
        }
    }

    let from_u1 = bfs_distances(g, picks[0]);
    if let Some(vertex) = from_u1.iter().position(|&d| d == UNREACHABLE) {
        return Err(ReconstructError::Disconnected { vertex });
    }

    let far = (1..4)
        .max_by_key(|&j| (from_u1[picks[j]], std::cmp::Reverse(j)))
        .expect("three candidates");
    let far_d = from_u1[picks[far]];
    let distance_tie = (1..4).filter(|&j| from_u1[picks[j]] == far_d).count() > 1;
    let rest: Vec<usize> = (1..4).filter(|&j| j != far).collect();
    let corner_vertices = [picks[0], picks[rest[0]], picks[far], picks[rest[1]]];

    let mut others: Vec<Vec<u32>> = corner_vertices[1..]
        .par_iter()
        .map(|&c| bfs_distances(g, c))
        .collect();
    let d4 = others.pop().expect("three trees");
    let d3 = others.pop().expect("three trees");
    let d2 = others.pop().expect("three trees");

    Ok(CornerAssignment {
        corner_vertices,
        picks,
        distances: [from_u1, d2, d3, d4],
        degree_tie,
        distance_tie,
    })
}

/// Least corner index minimising `d_G(v, v_i)`.
pub fn nearest_corner(assign: &CornerAssignment, v: usize) -> Result<usize, ReconstructError> {
    let hops = assign.hops(v);
    if hops.contains(&UNREACHABLE) {
        return Err(ReconstructError::Disconnected { vertex: v });
    }
    Ok(argmin_first(&hops))
}

pub(crate) fn argmin_first<T: PartialOrd + Copy>(xs: &[T; 4]) -> usize {
    let mut best = 0;
    for i in 1..4 {
        if xs[i] < xs[best] {
            best = i;
        }
    }
    best
}

/// Places a vertex with hop distances `hops` to the four corners, using
/// circles of radius `r̂(d_G − ½)` around the three corners other than the
/// nearest.
pub fn place_from_hops(domain: &SquareDomain, r_hat: f64, hops: [u32; 4]) -> (Point, VertexPlacement) {
    let near = argmin_first(&hops);
    let radii = hops.map(|h| r_hat * (h as f64 - 0.5));
    place_on_pairs(domain, &pairs_without(near), &radii, near)
}

pub fn place_vertex_graph(
    domain: &SquareDomain,
    assign: &CornerAssignment,
    est: &REstimate,
    v: usize,
) -> Result<(Point, VertexPlacement), ReconstructError> {
    nearest_corner(assign, v)?;
    Ok(place_from_hops(domain, est.r_hat, assign.hops(v)))
}

pub fn reconstruct_from_graph(g: &GeometricGraph) -> Result<ReconstructionResult, ReconstructError> {
    let n = g.n();
    if n < 5 {
        return Err(ReconstructError::TooFewVertices { n, min: 5 });
    }
    let est = estimate_r(g)?;
    let assign = find_corner_vertices(g)?;
    let domain = SquareDomain::new(n);
    let corners = domain.corners();

    let placed: Vec<(Point, VertexPlacement)> = (0..n)
        .into_par_iter()
        .map(|v| match assign.corner_of(v) {
            Some(i) => (corners[i], VertexPlacement::corner(i)),
            // Connectivity was checked from u1, so every hop count is finite.
            None => place_from_hops(&domain, est.r_hat, assign.hops(v)),
        })
        .collect();

    let (points, placements): (Vec<Point>, Vec<VertexPlacement>) = placed.into_iter().unzip();
    let failures = collect_failures(&placements);
    let phi = Embedding::new(domain, points).expect("placements are clamped to the square");
    Ok(ReconstructionResult {
        phi,
        r_estimate: Some(est),
        corners: CornerInfo::Graph(assign),
        placements,
        failures,
        annulus_half_width: None,
    })
}

pub(crate) fn collect_failures(placements: &[VertexPlacement]) -> Vec<(usize, String)> {
    placements
        .iter()
        .enumerate()
        .filter(|(_, p)| {
            matches!(
                p.case,
                PlacementCase::FallbackNonintersecting | PlacementCase::ClampedToBoundary
            )
        })
        .map(|(v, p)| (v, p.case.tag().to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{build_graph, sample_embedding};

    #[test]
    fn mu_small_r_limit() {
        let n = 10_000;
        for r in [1e-3, 1e-5, 1e-7] {
            let ratio = expected_edges_mu(n, r) / (0.5 * (n as f64 - 1.0) * PI * r * r);
            assert!((ratio - 1.0).abs() < 2.0 * r, "r={r} ratio={ratio}");
        }
    }

    #[test]
    fn mu_at_full_side() {
        let n = 400;
        let nf = n as f64;
        let want = 0.5 * (nf - 1.0) * PI * nf * (1.0 - 8.0 / (3.0 * PI) + 1.0 / (2.0 * PI));
        assert!((expected_edges_mu(n, 20.0) - want).abs() < 1e-9 * want);
    }

    #[test]
    fn mu_strictly_increasing() {
        for n in [5usize, 100, 10_000, 1_000_000] {
            let side = (n as f64).sqrt();
            let mut prev = 0.0;
            for i in 1..=1000 {
                let m = expected_edges_mu(n, side * i as f64 / 1000.0);
                assert!(m > prev, "n={n} i={i}");
                prev = m;
            }
        }
    }

    #[test]
    fn estimator_inverts_mu() {
        for (n, r0) in [(10_000, 20.0), (10_000, 99.0), (2_000, 0.5), (100, 3.0)] {
            let est = estimate_r_from_count(n, expected_edges_mu(n, r0));
            assert!((est.r_hat - r0).abs() < 1e-6 * r0, "n={n} r0={r0} got {}", est.r_hat);
            assert!(!est.saturated);
            assert!((est.rho_hat - (n as f64).sqrt() / est.r_hat).abs() < 1e-12);
        }
    }

    #[test]
    fn estimator_meets_exit_criterion() {
        let e = sample_embedding(1500, 3).unwrap();
        let g = build_graph(&e, 4.0).unwrap();
        let est = estimate_r(&g).unwrap();
        assert!((expected_edges_mu(1500, est.r_hat) - g.edge_count() as f64).abs() < 1.0);
        assert_eq!(est.m_observed, g.edge_count());
    }

    #[test]
    fn estimator_saturates() {
        let n = 50;
        let est = estimate_r_from_count(n, expected_edges_mu(n, (n as f64).sqrt()) + 10.0);
        assert!(est.saturated);
        assert_eq!(est.r_hat, (n as f64).sqrt());
    }

    #[test]
    fn empty_graph_is_too_sparse() {
        let g = GeometricGraph::from_edges(6, &[], None).unwrap();
        assert_eq!(estimate_r(&g), Err(ReconstructError::TooSparse));
    }

    #[test]
    fn bfs_on_path() {
        let g = GeometricGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3)], None).unwrap();
        assert_eq!(bfs_distances(&g, 0), vec![0, 1, 2, 3, UNREACHABLE]);
    }

    #[test]
    fn path_graph_is_total() {
        let edges: Vec<_> = (0..19).map(|i| (i, i + 1)).collect();
        let g = GeometricGraph::from_edges(20, &edges, None).unwrap();
        let res = reconstruct_from_graph(&g).unwrap();
        assert_eq!(res.phi.len(), 20);
        let cv = res.corners.vertices();
        let mut sorted = cv;
        sorted.sort();
        assert!(sorted.windows(2).all(|w| w[0] != w[1]));
    }

    #[test]
    fn disconnected_graph_rejected() {
        let g =
            GeometricGraph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)], None)
                .unwrap();
        assert!(matches!(
            find_corner_vertices(&g),
            Err(ReconstructError::Disconnected { .. })
        ));
    }

    #[test]
    fn star_is_degenerate() {
        let edges: Vec<_> = (1..6).map(|i| (0, i)).collect();
        let g = GeometricGraph::from_edges(6, &edges, None).unwrap();
        // Picking leaf 1 marks the hub; the other leaves are still free, so
        // use a complete graph to exhaust candidates instead.
        assert!(find_corner_vertices(&g).is_ok());
        let all: Vec<_> = (0..6)
            .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
            .collect();
        let k6 = GeometricGraph::from_edges(6, &all, None).unwrap();
        assert_eq!(
            find_corner_vertices(&k6),
            Err(ReconstructError::DegenerateDegrees { found: 1 })
        );
    }

    #[test]
    fn corners_and_centre_do_not_panic() {
        let d = SquareDomain::new(5);
        let mut pts = d.corners().to_vec();
        pts.push(Point::new(0.0, 0.0));
        let e = Embedding::new(d, pts).unwrap();
        let g = build_graph(&e, 1.2 * d.side()).unwrap();
        assert!(reconstruct_from_graph(&g).is_err());
        let k5 = build_graph(&e, d.diameter()).unwrap();
        assert!(k5.is_complete());
        assert!(reconstruct_from_graph(&k5).is_err());
        assert!(estimate_r(&k5).unwrap().saturated);
    }

    #[test]
    fn pinned_corners_are_found() {
        let n = 1000;
        let mut e = sample_embedding(n, 21).unwrap();
        let d = *e.domain();
        let mut pts = e.points().to_vec();
        pts[..4].copy_from_slice(&d.corners());
        e = Embedding::new(d, pts).unwrap();
        let g = build_graph(&e, 0.3 * d.side()).unwrap();
        let a = find_corner_vertices(&g).unwrap();
        let mut picked = a.corner_vertices;
        picked.sort();
        assert_eq!(picked, [0, 1, 2, 3]);
        // v1 and v3 are diagonal, hence v2 and v4 too.
        let (v1, v3) = (a.corner_vertices[0], a.corner_vertices[2]);
        assert_eq!((v1 + 2) % 4, v3);
    }

    #[test]
    fn nearest_corner_ties_go_low() {
        let a = CornerAssignment {
            corner_vertices: [0, 1, 2, 3],
            picks: [0, 1, 2, 3],
            distances: [vec![0, 3, 3, 3, 2], vec![3, 0, 3, 3, 1], vec![3, 3, 0, 3, 2], vec![3, 3, 3, 0, 2]],
            degree_tie: false,
            distance_tie: false,
        };
        assert_eq!(nearest_corner(&a, 4), Ok(1));
        let mut b = a.clone();
        b.distances[1][4] = 2;
        assert_eq!(nearest_corner(&b, 4), Ok(0));
        b.distances[3][4] = UNREACHABLE;
        assert!(nearest_corner(&b, 4).is_err());
    }

    #[test]
    fn hop_placement_stays_inside() {
        let d = SquareDomain::new(10_000);
        for hops in [[1, 4, 5, 4], [2, 2, 6, 6], [3, 3, 3, 3], [1, 1, 1, 1], [7, 1, 1, 9]] {
            let (p, info) = place_from_hops(&d, 25.0, hops);
            assert!(d.contains(&p), "{hops:?} -> {p:?}");
            assert_eq!(info.nearest_corner, argmin_first(&hops));
            let (i, j) = info.pair.unwrap();
            assert!(i != info.nearest_corner && j != info.nearest_corner);
        }
    }
}
