use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::InstanceError;
use crate::geometry::{Point, SquareDomain, SquareSymmetry};

/// A vertex-indexed family of points in the square of area `n`, one per
/// vertex `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    domain: SquareDomain,
    points: Vec<Point>,
}

impl Embedding {
    pub fn new(domain: SquareDomain, points: Vec<Point>) -> Result<Self, InstanceError> {
        if points.len() != domain.n() {
            return Err(InstanceError::WrongLength {
                expected: domain.n(),
                got: points.len(),
            });
        }
        for (vertex, p) in points.iter().enumerate() {
            if !p.is_finite() || !domain.contains(p) {
                return Err(InstanceError::PointOutside {
                    vertex,
                    x: p.x,
                    y: p.y,
                });
            }
        }
        Ok(Embedding { domain, points })
    }

    pub fn domain(&self) -> &SquareDomain {
        &self.domain
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, v: usize) -> Point {
        self.points[v]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `σ ∘ self`.
    pub fn transformed(&self, sigma: &SquareSymmetry) -> Embedding {
        Embedding {
            domain: self.domain,
            points: self.points.iter().map(|p| sigma.apply(p)).collect(),
        }
    }

    /// The embedding `u ↦ self(perm⁻¹(u))`, i.e. vertex `v` is renamed
    /// `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Embedding {
        assert_eq!(perm.len(), self.len());
        let mut points = vec![Point::default(); self.len()];
        for (v, &u) in perm.iter().enumerate() {
            points[u] = self.points[v];
        }
        Embedding {
            domain: self.domain,
            points,
        }
    }
}

/// `n` i.i.d. uniform points in the square of area `n`.
///
/// Uses ChaCha8 seeded from `seed`, so the result is identical across
/// platforms.
pub fn sample_embedding(n: usize, seed: u64) -> Result<Embedding, InstanceError> {
    if n < 5 {
        return Err(InstanceError::TooFewVertices { n, min: 5 });
    }
    let domain = SquareDomain::new(n);
    let side = domain.side();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n)
        .map(|_| {
            let x = (rng.gen::<f64>() - 0.5) * side;
            let y = (rng.gen::<f64>() - 0.5) * side;
            Point::new(x, y)
        })
        .collect();
    Ok(Embedding { domain, points })
}
