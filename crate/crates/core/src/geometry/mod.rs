//! Planar primitives over the centred square `[-√n/2, √n/2]²`.

mod area;
mod circle;
mod displacement;
mod symmetry;

pub use area::{
    ball_square_area, corner_area_lambda, corner_area_psi, corner_distance_s, rank_radius_grid,
    rank_radius_real, rank_radius_sn, ALPHA0, LAMBDA_SQRT5_HALF,
};
pub use circle::{circle_intersections, intersection_angle, Circle, Intersection};
pub use displacement::{displacement_dmax, displacement_dstar};
pub use symmetry::SquareSymmetry;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("point ({x}, {y}) lies outside the square of area {n}")]
    OutsideDomain { x: f64, y: f64, n: usize },
    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("radius must be finite and nonnegative, got {0}")]
    BadRadius(f64),
    #[error("circles are concentric")]
    Concentric,
    #[error("circles do not cross at two points")]
    NonCrossing,
    #[error("embeddings have different vertex counts ({0} vs {1})")]
    VertexMismatch(usize, usize),
}

/// A point in the plane, in the same length unit as the square side.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist2(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist2(other).sqrt()
    }
}

/// The square of area `n` centred at the origin.
///
/// Corners are numbered clockwise from the bottom left:
/// `c1 = (-h,-h)`, `c2 = (-h,h)`, `c3 = (h,h)`, `c4 = (h,-h)` with `h = √n/2`.
/// Corner indices in this crate are 0-based, so `corners()[0]` is `c1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareDomain {
    n: usize,
    side: f64,
    half: f64,
}

impl SquareDomain {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "square area must be positive");
        let side = (n as f64).sqrt();
        SquareDomain {
            n,
            side,
            half: side * 0.5,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn half_side(&self) -> f64 {
        self.half
    }

    pub fn corners(&self) -> [Point; 4] {
        let h = self.half;
        [
            Point::new(-h, -h),
            Point::new(-h, h),
            Point::new(h, h),
            Point::new(h, -h),
        ]
    }

    pub fn corner(&self, i: usize) -> Point {
        self.corners()[i % 4]
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.x >= -self.half && p.x <= self.half && p.y >= -self.half && p.y <= self.half
    }

    /// Orthogonal projection onto the closed square.
    pub fn clamp(&self, p: &Point) -> Point {
        Point::new(
            p.x.clamp(-self.half, self.half),
            p.y.clamp(-self.half, self.half),
        )
    }

    /// Euclidean distance from `p` to the closed square (0 inside).
    pub fn distance_to(&self, p: &Point) -> f64 {
        p.dist(&self.clamp(p))
    }

    pub fn diameter(&self) -> f64 {
        (2.0 * self.n as f64).sqrt()
    }
}
