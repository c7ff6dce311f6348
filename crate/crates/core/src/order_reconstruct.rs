//! Reconstruction from distance orderings: locate four extreme vertices with
//! `far` queries, turn each vertex's rank in their orders into a distance by
//! inverting the corner-ball area, and intersect two of the resulting
//! circles.

use std::f64::consts::FRAC_PI_4;

use rayon::prelude::*;

use crate::geometry::{rank_radius_grid, rank_radius_sn, Point, SquareDomain, ALPHA0};
use crate::graph_reconstruct::{argmin_first, collect_failures};
use crate::instance::{Embedding, OrderingOracle};
use crate::placement::{
    pairs_without, place_on_pairs, CornerInfo, ReconstructError, ReconstructionResult,
    VertexPlacement,
};

/// Smallest `n` the ordering pipeline accepts.
pub const MIN_VERTICES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacementParams {
    /// Rank fraction above which the opposite corner is considered too far
    /// to give a usable circle. Must lie in `(α₀, 1)`.
    pub alpha: f64,
    /// Radius factor `f` in the off-diagonal threshold
    /// `(π/4)(f√n)² + n^{4/5}`.
    pub off_diagonal_factor: f64,
    /// Evaluate radii on the coarse rank grid instead of exactly.
    pub use_grid: bool,
    /// Vertex whose `far` seeds corner discovery.
    pub start_vertex: usize,
}

impl Default for PlacementParams {
    fn default() -> Self {
        PlacementParams {
            alpha: 0.93,
            off_diagonal_factor: 0.9,
            use_grid: false,
            start_vertex: 0,
        }
    }
}

impl PlacementParams {
    pub fn with_alpha(alpha: f64) -> Result<Self, ReconstructError> {
        let p = PlacementParams {
            alpha,
            ..Default::default()
        };
        p.validate_alpha()?;
        Ok(p)
    }

    fn validate_alpha(&self) -> Result<(), ReconstructError> {
        if self.alpha > ALPHA0 && self.alpha < 1.0 {
            Ok(())
        } else {
            Err(ReconstructError::BadAlpha(self.alpha))
        }
    }

    /// Half-width of the annulus each rank circle is expected to fall in,
    /// `1.19695·√(ln n) + 1`. Diagnostic only.
    pub fn concentration_half_width(n: usize) -> f64 {
        1.19695 * (n as f64).ln().sqrt() + 1.0
    }

    /// Minimum rank from both `v1` and `v3` for an off-diagonal vertex.
    pub fn off_diagonal_threshold(&self, n: usize) -> f64 {
        let nf = n as f64;
        FRAC_PI_4 * self.off_diagonal_factor.powi(2) * nf + nf.powf(0.8)
    }
}

/// Which circles a vertex is placed with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RankCase {
    /// Best of the three pairs avoiding the nearest corner.
    One,
    /// Opposite corner too far; use the two corners adjacent to the nearest.
    Two,
}

/// The four extreme vertices and their rank arrays.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderCornerSet {
    /// `v1..v4`; `v1, v3` and `v2, v4` are opposite.
    pub vertices: [usize; 4],
    /// `ranks[i][v] = k(v_i, v)`, a permutation of `1..=n`.
    pub ranks: [Vec<u32>; 4],
    /// The vertex whose `far` gave `v2`.
    pub off_diagonal: usize,
    /// False when no vertex reached the threshold and the vertex with the
    /// largest smaller rank was used instead.
    pub threshold_met: bool,
}

impl OrderCornerSet {
    pub fn ranks_of(&self, v: usize) -> [u32; 4] {
        [0, 1, 2, 3].map(|i| self.ranks[i][v])
    }

    pub fn corner_of(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&c| c == v)
    }

    /// `τ_{v_i}` recovered from the rank array.
    pub fn order(&self, i: usize) -> Vec<u32> {
        let mut order = vec![0u32; self.ranks[i].len()];
        for (v, &k) in self.ranks[i].iter().enumerate() {
            order[k as usize - 1] = v as u32;
        }
        order
    }
}

/// The vertex last in `τ_v`.
pub fn far(oracle: &OrderingOracle, v: usize) -> usize {
    oracle.far(v)
}

pub fn find_corners_from_orders(
    oracle: &OrderingOracle,
    params: &PlacementParams,
) -> Result<OrderCornerSet, ReconstructError> {
    let n = oracle.n();
    if n < MIN_VERTICES {
        return Err(ReconstructError::TooFewVertices {
            n,
            min: MIN_VERTICES,
        });
    }
    if params.start_vertex >= n {
        return Err(ReconstructError::BadStartVertex(params.start_vertex));
    }
    let v1 = far(oracle, params.start_vertex);
    let v3 = far(oracle, v1);
    let order1 = oracle.order(v1);
    let rank1 = ranks_from_order(&order1);
    let rank3 = oracle.ranks(v3);

    let threshold = params.off_diagonal_threshold(n);
    let passes = |v: usize| rank1[v] as f64 >= threshold && rank3[v] as f64 >= threshold;
    let first = (threshold.ceil().max(1.0) as usize).min(n + 1) - 1;
    let hit = order1[first.min(n)..]
        .iter()
        .map(|&v| v as usize)
        .find(|&v| passes(v));

    let (off_diagonal, threshold_met) = match hit {
        Some(v) => (v, true),
        None => {
            let mut best: Option<(u32, usize)> = None;
            for &u in &order1 {
                let u = u as usize;
                if u == v1 || u == v3 {
                    continue;
                }
                let m = rank1[u].min(rank3[u]);
                if best.map_or(true, |(bm, _)| m > bm) {
                    best = Some((m, u));
                }
            }
            (best.ok_or(ReconstructError::OffDiagonalNotFound)?.1, false)
        }
    };

    let v2 = far(oracle, off_diagonal);
    let v4 = far(oracle, v2);
    let vertices = [v1, v2, v3, v4];
    for i in 0..4 {
        for j in i + 1..4 {
            if vertices[i] == vertices[j] {
                return Err(ReconstructError::OffDiagonalNotFound);
            }
        }
    }
    let (rank2, rank4) = rayon::join(|| oracle.ranks(v2), || oracle.ranks(v4));
    Ok(OrderCornerSet {
        vertices,
        ranks: [rank1, rank2, rank3, rank4],
        off_diagonal,
        threshold_met,
    })
}

fn ranks_from_order(order: &[u32]) -> Vec<u32> {
    let mut ranks = vec![0u32; order.len()];
    for (i, &u) in order.iter().enumerate() {
        ranks[u as usize] = i as u32 + 1;
    }
    ranks
}

/// Nearest corner (least index among minimal ranks) and rank case.
pub fn classify_ranks(ranks: [u32; 4], n: usize, alpha: f64) -> (usize, RankCase) {
    let i0 = argmin_first(&ranks);
    let opposite = ranks[(i0 + 2) % 4] as f64;
    let case = if opposite > alpha * n as f64 {
        RankCase::Two
    } else {
        RankCase::One
    };
    (i0, case)
}

pub fn classify_vertex(
    corners: &OrderCornerSet,
    params: &PlacementParams,
    v: usize,
) -> (usize, RankCase) {
    classify_ranks(corners.ranks_of(v), corners.ranks[0].len(), params.alpha)
}

/// Places a vertex from its ranks in the four corner orders.
pub fn place_with_ranks(
    domain: &SquareDomain,
    ranks: [u32; 4],
    params: &PlacementParams,
) -> (Point, VertexPlacement) {
    let (i0, case) = classify_ranks(ranks, domain.n(), params.alpha);
    let radii = ranks.map(|k| {
        if params.use_grid {
            rank_radius_grid(domain, k as usize)
        } else {
            rank_radius_sn(domain, k as usize)
        }
    });
    let (point, mut info) = match case {
        RankCase::One => place_on_pairs(domain, &pairs_without(i0), &radii, i0),
        RankCase::Two => {
            let (a, b) = ((i0 + 3) % 4, (i0 + 1) % 4);
            place_on_pairs(domain, &[(a.min(b), a.max(b))], &radii, i0)
        }
    };
    info.rank_case = Some(case);
    (point, info)
}

pub fn place_vertex_order(
    domain: &SquareDomain,
    corners: &OrderCornerSet,
    params: &PlacementParams,
    v: usize,
) -> (Point, VertexPlacement) {
    place_with_ranks(domain, corners.ranks_of(v), params)
}

pub fn reconstruct_from_orders(
    oracle: &OrderingOracle,
    params: &PlacementParams,
) -> Result<ReconstructionResult, ReconstructError> {
    params.validate_alpha()?;
    let corners = find_corners_from_orders(oracle, params)?;
    let n = oracle.n();
    let domain = SquareDomain::new(n);
    let square_corners = domain.corners();

    let placed: Vec<(Point, VertexPlacement)> = (0..n)
        .into_par_iter()
        .map(|v| match corners.corner_of(v) {
            Some(i) => (square_corners[i], VertexPlacement::corner(i)),
            None => place_vertex_order(&domain, &corners, params, v),
        })
        .collect();

    let (points, placements): (Vec<Point>, Vec<VertexPlacement>) = placed.into_iter().unzip();
    let failures = collect_failures(&placements);
    let phi = Embedding::new(domain, points).expect("placements are clamped to the square");
    Ok(ReconstructionResult {
        phi,
        r_estimate: None,
        corners: CornerInfo::Orders(corners),
        placements,
        failures,
        annulus_half_width: Some(PlacementParams::concentration_half_width(n)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::displacement_dstar;
    use crate::instance::{build_ordering_oracle, sample_embedding};
    use crate::PlacementCase;

    fn corners_and_centre() -> OrderingOracle {
        let d = SquareDomain::new(5);
        let mut pts = d.corners().to_vec();
        pts.push(Point::new(0.0, 0.0));
        build_ordering_oracle(&Embedding::new(d, pts).unwrap())
    }

    #[test]
    fn alpha_bounds() {
        assert!(PlacementParams::with_alpha(0.93).is_ok());
        assert!(PlacementParams::with_alpha(0.92).is_err());
        assert!(PlacementParams::with_alpha(ALPHA0).is_err());
        assert!(PlacementParams::with_alpha(1.0).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_ranks([5, 9000, 9990, 9100], 10_000, 0.93), (0, RankCase::Two));
        assert_eq!(classify_ranks([5, 8000, 9000, 8100], 10_000, 0.93), (0, RankCase::One));
        assert_eq!(classify_ranks([40, 40, 9000, 9000], 10_000, 0.93).0, 0);
        assert_eq!(classify_ranks([900, 30, 900, 9800], 10_000, 0.93), (1, RankCase::Two));
    }

    #[test]
    fn five_point_smoke() {
        let o = corners_and_centre();
        let c = find_corners_from_orders(&o, &PlacementParams::default()).unwrap();
        let mut v = c.vertices;
        v.sort();
        assert_eq!(v, [0, 1, 2, 3]);
        assert!(!c.threshold_met);
        assert_eq!((c.vertices[0] + 2) % 4, c.vertices[2]);
        assert_eq!((c.vertices[1] + 2) % 4, c.vertices[3]);
        for i in 0..4 {
            let mut r = c.ranks[i].clone();
            r.sort();
            assert_eq!(r, vec![1, 2, 3, 4, 5]);
            assert_eq!(c.order(i), o.order(c.vertices[i]));
        }
    }

    #[test]
    fn too_small() {
        let d = SquareDomain::new(4);
        let o = build_ordering_oracle(&Embedding::new(d, d.corners().to_vec()).unwrap());
        assert!(matches!(
            reconstruct_from_orders(&o, &PlacementParams::default()),
            Err(ReconstructError::TooFewVertices { .. })
        ));
    }

    #[test]
    fn threshold_needs_large_n() {
        // A point exactly at c2 has rank only about (π/4)n from c1, so the
        // threshold is out of reach until n^{-1/5} < π/4 − 0.2025π.
        let p = PlacementParams::default();
        assert!(p.off_diagonal_threshold(10_000) > FRAC_PI_4 * 10_000.0);
        assert!(p.off_diagonal_threshold(20_000) < FRAC_PI_4 * 20_000.0);
    }

    #[test]
    fn fallback_still_finds_off_diagonal_corners() {
        let e = sample_embedding(2000, 9).unwrap();
        let o = build_ordering_oracle(&e);
        let c = find_corners_from_orders(&o, &PlacementParams::default()).unwrap();
        assert!(!c.threshold_met);
        let d = e.domain();
        let near = |v: usize| {
            (0..4)
                .min_by(|&a, &b| {
                    e.point(v).dist(&d.corner(a)).total_cmp(&e.point(v).dist(&d.corner(b)))
                })
                .unwrap()
        };
        let hit: Vec<usize> = c.vertices.iter().map(|&v| near(v)).collect();
        let mut sorted = hit.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
        assert_eq!((hit[0] + 2) % 4, hit[2]);
        for &v in &c.vertices {
            assert!(e.point(v).dist(&d.corner(near(v))) < 5.0 * (2000f64).ln().sqrt());
        }
    }

    #[test]
    fn threshold_met_at_large_n() {
        let e = sample_embedding(20_000, 9).unwrap();
        let o = build_ordering_oracle(&e);
        let p = PlacementParams::default();
        let c = find_corners_from_orders(&o, &p).unwrap();
        assert!(c.threshold_met);
        let t = p.off_diagonal_threshold(20_000);
        let v = c.off_diagonal;
        assert!(c.ranks[0][v] as f64 >= t && c.ranks[2][v] as f64 >= t);
    }

    #[test]
    fn exact_ranks_recover_centre() {
        // Ranks equal to the exact corner-ball areas of the centre.
        let d = SquareDomain::new(10_000);
        let k = crate::geometry::ball_square_area(&d, &d.corner(0), 50.0 * 2f64.sqrt()).unwrap();
        let k = k.round() as u32;
        let (p, info) = place_with_ranks(&d, [k; 4], &PlacementParams::default());
        assert_eq!(info.rank_case, Some(RankCase::One));
        assert!(p.dist(&Point::new(0.0, 0.0)) < 0.05, "{p:?}");
    }

    #[test]
    fn case_two_uses_adjacent_corners() {
        let d = SquareDomain::new(10_000);
        let x = Point::new(-45.0, -44.0);
        let ks = d.corners().map(|c| {
            crate::geometry::ball_square_area(&d, &c, c.dist(&x)).unwrap().round() as u32
        });
        let (p, info) = place_with_ranks(&d, ks, &PlacementParams::default());
        assert_eq!(info.rank_case, Some(RankCase::Two));
        assert_eq!(info.pair, Some((1, 3)));
        assert_eq!(info.case, PlacementCase::SquarelikePair);
        assert!(p.dist(&x) < 0.5, "{p:?}");
    }

    #[test]
    fn placements_stay_inside_and_are_deterministic() {
        let e = sample_embedding(3000, 17).unwrap();
        let o = build_ordering_oracle(&e);
        let p = PlacementParams::default();
        let a = reconstruct_from_orders(&o, &p).unwrap();
        let b = reconstruct_from_orders(&o, &p).unwrap();
        assert_eq!(a.phi, b.phi);
        assert!(a.phi.points().iter().all(|q| a.phi.domain().contains(q)));
        let (dstar, _) = displacement_dstar(&e, &a.phi).unwrap();
        let bound = 3.6 * (3000f64).ln().sqrt();
        assert!(dstar < bound, "d*={dstar}");
    }

    #[test]
    fn grid_radii_are_close() {
        let e = sample_embedding(3000, 2).unwrap();
        let o = build_ordering_oracle(&e);
        let exact = reconstruct_from_orders(&o, &PlacementParams::default()).unwrap();
        let grid = PlacementParams {
            use_grid: true,
            ..Default::default()
        };
        let coarse = reconstruct_from_orders(&o, &grid).unwrap();
        let (dstar, _) = displacement_dstar(&e, &coarse.phi).unwrap();
        assert!(dstar < 3.6 * (3000f64).ln().sqrt() + 2.0);
        assert_eq!(exact.corners.vertices(), coarse.corners.vertices());
    }
}
