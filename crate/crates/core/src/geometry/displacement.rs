use super::{GeometryError, SquareSymmetry};
use crate::instance::Embedding;

/// `max_v |a(v) − b(v)|`.
pub fn displacement_dmax(a: &Embedding, b: &Embedding) -> Result<f64, GeometryError> {
    check_same_vertices(a, b)?;
    Ok(a
        .points()
        .iter()
        .zip(b.points())
        .map(|(p, q)| p.dist2(q))
        .fold(0.0_f64, f64::max)
        .sqrt())
}

/// Symmetry-adjusted sup distance: `min_σ d_max(σ∘a, b)` over the 8 square
/// symmetries, together with the minimising σ (lowest index on ties).
pub fn displacement_dstar(
    a: &Embedding,
    b: &Embedding,
) -> Result<(f64, SquareSymmetry), GeometryError> {
    check_same_vertices(a, b)?;
    let mut best = (f64::INFINITY, SquareSymmetry::IDENTITY);
    for sigma in SquareSymmetry::all() {
        let worst = a
            .points()
            .iter()
            .zip(b.points())
            .map(|(p, q)| sigma.apply(p).dist2(q))
            .fold(0.0_f64, f64::max);
        if worst < best.0 {
            best = (worst, sigma);
        }
    }
    Ok((best.0.sqrt(), best.1))
}

fn check_same_vertices(a: &Embedding, b: &Embedding) -> Result<(), GeometryError> {
    if a.len() != b.len() {
        return Err(GeometryError::VertexMismatch(a.len(), b.len()));
    }
    Ok(())
}
