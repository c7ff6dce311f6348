use super::{GeometryError, Point};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Circle { center, radius }
    }
}

/// Common points of two circles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Intersection {
    /// Disjoint or nested.
    Empty,
    Tangent(Point),
    /// Ordered by x, then y.
    Two(Point, Point),
}

impl Intersection {
    pub fn points(&self) -> Vec<Point> {
        match *self {
            Intersection::Empty => Vec::new(),
            Intersection::Tangent(p) => vec![p],
            Intersection::Two(p, q) => vec![p, q],
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, Intersection::Two(..))
    }
}

const TANGENT_TOL: f64 = 1e-14;

pub fn circle_intersections(a: &Circle, b: &Circle) -> Result<Intersection, GeometryError> {
    let dx = b.center.x - a.center.x;
    let dy = b.center.y - a.center.y;
    let d2 = dx * dx + dy * dy;
    if d2 == 0.0 {
        return Err(GeometryError::Concentric);
    }
    let d = d2.sqrt();
    let (ra, rb) = (a.radius, b.radius);
    // Signed distance from a's centre to the radical line, along a→b.
    let along = (d2 + ra * ra - rb * rb) / (2.0 * d);
    let h2 = ra * ra - along * along;
    let scale = ra.max(rb).max(d);
    let tol = TANGENT_TOL * scale * scale;
    let (ux, uy) = (dx / d, dy / d);
    let foot = Point::new(a.center.x + along * ux, a.center.y + along * uy);
    if h2 < -tol {
        return Ok(Intersection::Empty);
    }
    if h2 <= tol {
        return Ok(Intersection::Tangent(foot));
    }
    let h = h2.sqrt();
    let p = Point::new(foot.x - h * uy, foot.y + h * ux);
    let q = Point::new(foot.x + h * uy, foot.y - h * ux);
    let ordered = if (p.x, p.y) <= (q.x, q.y) {
        (p, q)
    } else {
        (q, p)
    };
    Ok(Intersection::Two(ordered.0, ordered.1))
}

/// Angle in `[0, π]` between the two radius vectors at a crossing point.
///
/// From the triangle (centre a, centre b, crossing point):
/// `cos θ = (r_a² + r_b² − d²) / (2 r_a r_b)`.
pub fn intersection_angle(a: &Circle, b: &Circle) -> Result<f64, GeometryError> {
    if !circle_intersections(a, b)?.is_crossing() {
        return Err(GeometryError::NonCrossing);
    }
    let d2 = a.center.dist2(&b.center);
    let (ra, rb) = (a.radius, b.radius);
    let cos = (ra * ra + rb * rb - d2) / (2.0 * ra * rb);
    Ok(cos.clamp(-1.0, 1.0).acos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    #[test]
    fn symmetric_pair() {
        let a = Circle::new(Point::new(0.0, 0.0), SQRT_2);
        let b = Circle::new(Point::new(2.0, 0.0), SQRT_2);
        match circle_intersections(&a, &b).unwrap() {
            Intersection::Two(p, q) => {
                assert!((p.x - 1.0).abs() < 1e-12 && (p.y + 1.0).abs() < 1e-12);
                assert!((q.x - 1.0).abs() < 1e-12 && (q.y - 1.0).abs() < 1e-12);
            }
            other => panic!("expected two points, got {other:?}"),
        }
    }

    #[test]
    fn disjoint_and_nested_are_empty() {
        let a = Circle::new(Point::new(0.0, 0.0), 1.0);
        let b = Circle::new(Point::new(4.0, 0.0), 1.0);
        assert_eq!(circle_intersections(&a, &b).unwrap(), Intersection::Empty);
        let big = Circle::new(Point::new(0.0, 0.0), 10.0);
        let small = Circle::new(Point::new(1.0, 0.0), 1.0);
        assert_eq!(
            circle_intersections(&big, &small).unwrap(),
            Intersection::Empty
        );
    }

    #[test]
    fn concentric_is_error() {
        let a = Circle::new(Point::new(1.0, 1.0), 1.0);
        let b = Circle::new(Point::new(1.0, 1.0), 2.0);
        assert_eq!(
            circle_intersections(&a, &b),
            Err(GeometryError::Concentric)
        );
    }

    #[test]
    fn tangent_point() {
        let a = Circle::new(Point::new(0.0, 0.0), 1.0);
        let b = Circle::new(Point::new(3.0, 0.0), 2.0);
        match circle_intersections(&a, &b).unwrap() {
            Intersection::Tangent(p) => assert!((p.x - 1.0).abs() < 1e-12 && p.y.abs() < 1e-12),
            other => panic!("expected tangency, got {other:?}"),
        }
        assert_eq!(intersection_angle(&a, &b), Err(GeometryError::NonCrossing));
    }

    #[test]
    fn orthogonal_angles() {
        let a = Circle::new(Point::new(0.0, 0.0), 1.0);
        let b = Circle::new(Point::new(SQRT_2, 0.0), 1.0);
        assert!((intersection_angle(&a, &b).unwrap() - FRAC_PI_2).abs() < 1e-12);
        let a = Circle::new(Point::new(0.0, 0.0), SQRT_2);
        let b = Circle::new(Point::new(2.0, 0.0), SQRT_2);
        assert!((intersection_angle(&a, &b).unwrap() - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn angle_near_tangency_approaches_pi() {
        let (ra, rb) = (1.0, 2.0);
        let d = (ra + rb) * (1.0 - 1e-6);
        let a = Circle::new(Point::new(0.0, 0.0), ra);
        let b = Circle::new(Point::new(d, 0.0), rb);
        let theta = intersection_angle(&a, &b).unwrap();
        assert!(PI - theta < 1e-2, "theta={theta}");
        assert!(theta < PI);
    }

    #[test]
    fn angle_matches_radius_vectors() {
        let a = Circle::new(Point::new(-1.0, 0.5), 2.0);
        let b = Circle::new(Point::new(1.5, -0.2), 1.7);
        let Intersection::Two(p, _) = circle_intersections(&a, &b).unwrap() else {
            panic!("circles should cross");
        };
        let (ux, uy) = (a.center.x - p.x, a.center.y - p.y);
        let (vx, vy) = (b.center.x - p.x, b.center.y - p.y);
        let direct = ((ux * vx + uy * vy) / (a.radius * b.radius)).acos();
        assert!((intersection_angle(&a, &b).unwrap() - direct).abs() < 1e-9);
    }
}
