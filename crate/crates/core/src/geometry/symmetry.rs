use super::Point;

/// One of the 8 symmetries of a square centred at the origin.
///
/// Index `k + 4·f` means: reflect in the y-axis when `f = 1`, then rotate
/// anticlockwise by `k·90°`. Index 0 is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareSymmetry(u8);

impl SquareSymmetry {
    pub const IDENTITY: SquareSymmetry = SquareSymmetry(0);

    pub fn new(index: u8) -> Option<Self> {
        (index < 8).then_some(SquareSymmetry(index))
    }

    pub fn index(&self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = SquareSymmetry> {
        (0..8).map(SquareSymmetry)
    }

    /// Integer matrix `[[a, b], [c, d]]` acting on column vectors.
    fn matrix(&self) -> [[i8; 2]; 2] {
        let reflect: [[i8; 2]; 2] = if self.0 >= 4 {
            [[-1, 0], [0, 1]]
        } else {
            [[1, 0], [0, 1]]
        };
        let rot: [[i8; 2]; 2] = match self.0 % 4 {
            0 => [[1, 0], [0, 1]],
            1 => [[0, -1], [1, 0]],
            2 => [[-1, 0], [0, -1]],
            _ => [[0, 1], [-1, 0]],
        };
        mat_mul(rot, reflect)
    }

    fn from_matrix(m: [[i8; 2]; 2]) -> SquareSymmetry {
        Self::all()
            .find(|s| s.matrix() == m)
            .expect("signed permutation matrices form the dihedral group")
    }

    pub fn apply(&self, p: &Point) -> Point {
        let m = self.matrix();
        Point::new(
            f64::from(m[0][0]) * p.x + f64::from(m[0][1]) * p.y,
            f64::from(m[1][0]) * p.x + f64::from(m[1][1]) * p.y,
        )
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SquareSymmetry) -> SquareSymmetry {
        Self::from_matrix(mat_mul(self.matrix(), other.matrix()))
    }

    pub fn inverse(&self) -> SquareSymmetry {
        let m = self.matrix();
        // Orthogonal, so the inverse is the transpose.
        Self::from_matrix([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    /// Index of the corner that corner `i` is mapped to (0-based, clockwise
    /// from bottom left).
    pub fn corner_image(&self, i: usize) -> usize {
        const SIGNS: [(i8, i8); 4] = [(-1, -1), (-1, 1), (1, 1), (1, -1)];
        let (sx, sy) = SIGNS[i % 4];
        let m = self.matrix();
        let image = (m[0][0] * sx + m[0][1] * sy, m[1][0] * sx + m[1][1] * sy);
        SIGNS.iter().position(|&s| s == image).expect("corner maps to corner")
    }
}

fn mat_mul(a: [[i8; 2]; 2], b: [[i8; 2]; 2]) -> [[i8; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}
