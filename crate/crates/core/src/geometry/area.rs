use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use super::{GeometryError, Point, SquareDomain};

/// `λ(2/√3) = π/9 + 1/√3`, the rank fraction beyond which the far corner's
/// order no longer gives a usable radius.
pub const ALPHA0: f64 = PI / 9.0 + 0.577_350_269_189_625_8;

/// `λ(√5/2) = (5/8)·asin(3/5) + 1/2`.
pub const LAMBDA_SQRT5_HALF: f64 = 0.902_188_192_995_802_7;

const RANGE_SLACK: f64 = 1e-12;

/// Area of a circular segment of a radius-`r` disk cut off by a line at
/// distance `d ≥ 0` from the centre.
fn segment_area(r: f64, d: f64) -> f64 {
    if d >= r {
        return 0.0;
    }
    let c = (d / r).min(1.0);
    r * r * c.acos() - d * (r * r - d * d).max(0.0).sqrt()
}

/// `∫₀ᵗ √(r²−u²) du`.
fn half_chord_primitive(r: f64, t: f64) -> f64 {
    let t = t.clamp(-r, r);
    0.5 * (t * (r * r - t * t).max(0.0).sqrt() + r * r * (t / r).clamp(-1.0, 1.0).asin())
}

/// Area of the part of a radius-`r` disk (centred at the origin) lying in the
/// quadrant `{X ≥ a, Y ≥ b}`, for `a, b ≥ 0`.
fn corner_area(r: f64, a: f64, b: f64) -> f64 {
    if a * a + b * b >= r * r {
        return 0.0;
    }
    let x_max = (r * r - b * b).max(0.0).sqrt();
    (half_chord_primitive(r, x_max) - half_chord_primitive(r, a) - b * (x_max - a)).max(0.0)
}

/// Exact area of `B(center, radius) ∩ square`.
///
/// The disk is cut against the four sides; the parts beyond opposite sides
/// are disjoint, so inclusion–exclusion only needs the four corner overlaps.
pub fn ball_square_area(
    domain: &SquareDomain,
    center: &Point,
    radius: f64,
) -> Result<f64, GeometryError> {
    if !radius.is_finite() || radius < 0.0 {
        return Err(GeometryError::BadRadius(radius));
    }
    if !center.is_finite() || !domain.contains(center) {
        return Err(GeometryError::OutsideDomain {
            x: center.x,
            y: center.y,
            n: domain.n(),
        });
    }
    if radius == 0.0 {
        return Ok(0.0);
    }
    let h = domain.half_side();
    let r = radius;
    let left = center.x + h;
    let right = h - center.x;
    let bottom = center.y + h;
    let top = h - center.y;
    if left.max(right).hypot(bottom.max(top)) <= r {
        return Ok(domain.n() as f64);
    }

    let mut area = PI * r * r;
    for d in [left, right, bottom, top] {
        area -= segment_area(r, d);
    }
    for (a, b) in [(left, bottom), (left, top), (right, bottom), (right, top)] {
        area += corner_area(r, a, b);
    }
    Ok(area.clamp(0.0, domain.n() as f64))
}

/// The angle `ψ(s) = asin(2/s² − 1)` subtended at a corner of the unit square
/// by the curved boundary of `B(corner, s) ∩ square`, for `1 ≤ s ≤ √2`.
pub fn corner_area_psi(s: f64) -> f64 {
    (2.0 / (s * s) - 1.0).clamp(-1.0, 1.0).asin()
}

fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<f64, GeometryError> {
    if !(value >= lo - RANGE_SLACK && value <= hi + RANGE_SLACK) {
        return Err(GeometryError::OutOfRange {
            name,
            value,
            lo,
            hi,
        });
    }
    Ok(value.clamp(lo, hi))
}

/// `λ(s)`: area of the unit square within distance `s` of a fixed corner.
pub fn corner_area_lambda(s: f64) -> Result<f64, GeometryError> {
    let s = check_range("s", s, 0.0, SQRT_2)?;
    Ok(lambda_unchecked(s))
}

fn lambda_unchecked(s: f64) -> f64 {
    if s <= 1.0 {
        FRAC_PI_4 * s * s
    } else {
        0.5 * s * s * corner_area_psi(s) + (s * s - 1.0).sqrt()
    }
}

/// Inverse of [`corner_area_lambda`]: the `s ∈ [0, √2]` with `λ(s) = t`.
pub fn corner_distance_s(t: f64) -> Result<f64, GeometryError> {
    let t = check_range("t", t, 0.0, 1.0)?;
    if t <= FRAC_PI_4 {
        return Ok((t / FRAC_PI_4).sqrt());
    }
    if t >= 1.0 {
        // λ is flat at √2, so bisection alone lands only near it.
        return Ok(SQRT_2);
    }
    // λ is strictly increasing on (1, √2], slope below π/2.
    let (mut lo, mut hi) = (1.0_f64, SQRT_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if lambda_unchecked(mid) < t {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `s_n(k) = s(k/n)·√n`: the radius around a corner enclosing area `k`.
pub fn rank_radius_sn(domain: &SquareDomain, k: usize) -> f64 {
    rank_radius_real(domain, k as f64)
}

/// [`rank_radius_sn`] for a real-valued area; `k` is clamped to `[0, n]`.
pub fn rank_radius_real(domain: &SquareDomain, k: f64) -> f64 {
    let n = domain.n() as f64;
    let t = (k / n).clamp(0.0, 1.0);
    corner_distance_s(t).expect("t clamped to [0,1]") * domain.side()
}

/// Coarse-grid variant of [`rank_radius_sn`]: evaluates `s_n` only at
/// multiples of `⌈n^{1/3}⌉` and rounds `k` down to the nearest one.
///
/// Within ±1 of the exact value for ranks bounded away from 0 and n.
pub fn rank_radius_grid(domain: &SquareDomain, k: usize) -> f64 {
    let step = (domain.n() as f64).cbrt().ceil().max(1.0) as usize;
    rank_radius_sn(domain, (k / step) * step)
}
