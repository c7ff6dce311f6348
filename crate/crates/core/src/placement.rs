//! Circle-pair placement shared by both reconstruction pipelines, and the
//! result type they return.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::geometry::{circle_intersections, intersection_angle, Circle, Intersection, Point, SquareDomain};
use crate::graph_reconstruct::{CornerAssignment, REstimate};
use crate::instance::Embedding;
use crate::order_reconstruct::{OrderCornerSet, RankCase};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReconstructError {
    #[error("need at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("too sparse to estimate r: graph has no edges")]
    TooSparse,
    #[error("graph disconnected: vertex {vertex} is unreachable from the corners")]
    Disconnected { vertex: usize },
    #[error("degree structure degenerate: only {found} corner candidates")]
    DegenerateDegrees { found: usize },
    #[error("off-diagonal vertex not found")]
    OffDiagonalNotFound,
    #[error("alpha = {0} must lie strictly between {lo} and 1", lo = crate::geometry::ALPHA0)]
    BadAlpha(f64),
    #[error("start vertex {0} is out of range")]
    BadStartVertex(usize),
}

/// How a vertex's position was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlacementCase {
    /// Corner vertex, placed exactly on its corner.
    Corner,
    /// At an in-square crossing of the chosen circle pair.
    SquarelikePair,
    /// No candidate pair crossed; placed in the gap on the centre line.
    FallbackNonintersecting,
    /// Both crossings fell outside the square; projected onto its boundary.
    ClampedToBoundary,
}

impl PlacementCase {
    pub const ALL: [PlacementCase; 4] = [
        PlacementCase::Corner,
        PlacementCase::SquarelikePair,
        PlacementCase::FallbackNonintersecting,
        PlacementCase::ClampedToBoundary,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            PlacementCase::Corner => "corner",
            PlacementCase::SquarelikePair => "squarelike-pair-chosen",
            PlacementCase::FallbackNonintersecting => "fallback-nonintersecting",
            PlacementCase::ClampedToBoundary => "clamped-to-boundary",
        }
    }
}

/// Per-vertex placement diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexPlacement {
    pub case: PlacementCase,
    /// Corner index (0-based) nearest to the vertex by graph distance or rank.
    pub nearest_corner: usize,
    /// The two corner indices whose circles were used.
    pub pair: Option<(usize, usize)>,
    /// Crossing angle of the chosen pair, when it crossed.
    pub angle: Option<f64>,
    /// Radii of the chosen pair's circles.
    pub radii: Option<(f64, f64)>,
    /// Rank case, for the ordering pipeline.
    pub rank_case: Option<RankCase>,
}

impl VertexPlacement {
    pub(crate) fn corner(i: usize) -> Self {
        VertexPlacement {
            case: PlacementCase::Corner,
            nearest_corner: i,
            pair: None,
            angle: None,
            radii: None,
            rank_case: None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum CornerInfo {
    Graph(CornerAssignment),
    Orders(OrderCornerSet),
}

impl CornerInfo {
    /// Corner vertices `v1..v4`, placed at `c1..c4`.
    pub fn vertices(&self) -> [usize; 4] {
        match self {
            CornerInfo::Graph(a) => a.corner_vertices,
            CornerInfo::Orders(o) => o.vertices,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    pub phi: Embedding,
    /// Present for the graph pipeline.
    pub r_estimate: Option<REstimate>,
    pub corners: CornerInfo,
    pub placements: Vec<VertexPlacement>,
    /// Vertices whose placement needed a fallback, with the reason.
    pub failures: Vec<(usize, String)>,
    /// Annulus half-width the analysis guarantees around each circle;
    /// reported only, never used for placement.
    pub annulus_half_width: Option<f64>,
}

impl ReconstructionResult {
    pub fn case_count(&self, case: PlacementCase) -> usize {
        self.placements.iter().filter(|p| p.case == case).count()
    }
}

/// Centre-line point for circles that do not cross: the midpoint of the
/// radial gap between them.
pub(crate) fn gap_midpoint(a: &Circle, b: &Circle) -> Point {
    let d = a.center.dist(&b.center);
    let (ux, uy) = ((b.center.x - a.center.x) / d, (b.center.y - a.center.y) / d);
    let (ra, rb) = (a.radius, b.radius);
    let t = if d >= ra + rb {
        ra + (d - ra - rb) / 2.0
    } else if ra >= rb {
        // b nested inside a: gap between b's far side and a.
        (d + ra + rb) / 2.0
    } else {
        // a nested inside b.
        (d - ra - rb) / 2.0
    };
    Point::new(a.center.x + t * ux, a.center.y + t * uy)
}

/// Places a vertex on the best of `pairs`.
///
/// `radii[i]` is the estimated distance to corner `i`. The pair crossing
/// closest to a right angle wins (first listed on ties; non-crossing pairs
/// score as angle π). Of its two crossings the in-square one is used;
/// otherwise the one nearer corner `near`, projected onto the square if it
/// lies outside.
pub(crate) fn place_on_pairs(
    domain: &SquareDomain,
    pairs: &[(usize, usize)],
    radii: &[f64; 4],
    near: usize,
) -> (Point, VertexPlacement) {
    let corners = domain.corners();
    let circle = |i: usize| Circle::new(corners[i], radii[i].max(0.0));

    let mut best: Option<(f64, usize, Intersection, Option<f64>)> = None;
    for (idx, &(i, j)) in pairs.iter().enumerate() {
        let (a, b) = (circle(i), circle(j));
        let crossing = circle_intersections(&a, &b).expect("corners are distinct");
        let angle = intersection_angle(&a, &b).ok();
        let score = (angle.unwrap_or(PI) - FRAC_PI_2).abs();
        if best.as_ref().map_or(true, |b| score < b.0) {
            best = Some((score, idx, crossing, angle));
        }
    }
    let (_, idx, crossing, angle) = best.expect("at least one candidate pair");
    let (i, j) = pairs[idx];
    let (a, b) = (circle(i), circle(j));

    let mut info = VertexPlacement {
        case: PlacementCase::SquarelikePair,
        nearest_corner: near,
        pair: Some((i, j)),
        angle,
        radii: Some((a.radius, b.radius)),
        rank_case: None,
    };

    let c = corners[near];
    let nearer_corner = |p: Point, q: Point| if q.dist2(&c) < p.dist2(&c) { q } else { p };
    let point = match crossing {
        Intersection::Two(p, q) => match (domain.contains(&p), domain.contains(&q)) {
            (true, true) => nearer_corner(p, q),
            (true, false) => p,
            (false, true) => q,
            (false, false) => {
                // Both crossings are mirror images across the line through
                // the two centres, and the square is symmetric about a
                // diagonal, so distance to the square cannot separate them
                // for a diagonal pair. The near corner always lies on the
                // correct side.
                info.case = PlacementCase::ClampedToBoundary;
                domain.clamp(&nearer_corner(p, q))
            }
        },
        Intersection::Tangent(_) | Intersection::Empty => {
            info.case = PlacementCase::FallbackNonintersecting;
            domain.clamp(&gap_midpoint(&a, &b))
        }
    };
    (point, info)
}

/// The three pairs of corner indices other than `skip`, in lexicographic
/// order.
pub(crate) fn pairs_without(skip: usize) -> [(usize, usize); 3] {
    let others: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
    [
        (others[0], others[1]),
        (others[0], others[2]),
        (others[1], others[2]),
    ]
}
