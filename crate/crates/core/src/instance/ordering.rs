use super::{Embedding, InstanceError};

#[derive(Debug, Clone, PartialEq)]
enum Backing {
    Hidden(Embedding),
    /// Row-major `n × n`; row `v` is `τ_v`.
    Table(Vec<u32>),
}

/// Answers distance-order queries about a vertex set.
///
/// `τ_v` lists all vertices by increasing distance from `v`, starting with
/// `v` itself; equal distances are broken by smaller vertex id. Ranks are
/// 1-based, so `k(v, v) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingOracle {
    n: usize,
    backing: Backing,
}

pub fn build_ordering_oracle(e: &Embedding) -> OrderingOracle {
    OrderingOracle {
        n: e.len(),
        backing: Backing::Hidden(e.clone()),
    }
}

impl OrderingOracle {
    /// Wraps explicit orderings. Each row must be a permutation of `0..n`
    /// whose first entry is the row's own vertex.
    pub fn from_table(rows: Vec<Vec<u32>>) -> Result<Self, InstanceError> {
        let n = rows.len();
        let mut flat = Vec::with_capacity(n * n);
        let mut seen = vec![usize::MAX; n];
        for (v, row) in rows.into_iter().enumerate() {
            if !is_rooted_permutation(v, &row, &mut seen) {
                return Err(InstanceError::BadOrdering { vertex: v });
            }
            flat.extend_from_slice(&row);
        }
        Ok(OrderingOracle {
            n,
            backing: Backing::Table(flat),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hidden_embedding(&self) -> Option<&Embedding> {
        match &self.backing {
            Backing::Hidden(e) => Some(e),
            Backing::Table(_) => None,
        }
    }

    /// Last vertex of `τ_v`. O(n).
    pub fn far(&self, v: usize) -> usize {
        match &self.backing {
            Backing::Hidden(e) => {
                let p = e.point(v);
                let mut best = v;
                let mut best_d = f64::NEG_INFINITY;
                for (u, q) in e.points().iter().enumerate() {
                    if u == v {
                        continue;
                    }
                    let d = p.dist2(q);
                    // `>=` so later ids win ties, matching the last place in τ_v.
                    if d >= best_d {
                        best_d = d;
                        best = u;
                    }
                }
                best
            }
            Backing::Table(t) => t[v * self.n + self.n - 1] as usize,
        }
    }

    /// `τ_v`. O(n log n) for a hidden embedding.
    pub fn order(&self, v: usize) -> Vec<u32> {
        match &self.backing {
            Backing::Hidden(e) => {
                let p = e.point(v);
                let mut keyed: Vec<(f64, u32)> = e
                    .points()
                    .iter()
                    .enumerate()
                    .filter(|&(u, _)| u != v)
                    .map(|(u, q)| (p.dist2(q), u as u32))
                    .collect();
                keyed.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                std::iter::once(v as u32)
                    .chain(keyed.into_iter().map(|(_, u)| u))
                    .collect()
            }
            Backing::Table(t) => t[v * self.n..(v + 1) * self.n].to_vec(),
        }
    }

    /// Rank array of `τ_v`: entry `u` is `k(v, u) ∈ 1..=n`.
    pub fn ranks(&self, v: usize) -> Vec<u32> {
        let order = self.order(v);
        let mut ranks = vec![0u32; self.n];
        for (i, &u) in order.iter().enumerate() {
            ranks[u as usize] = i as u32 + 1;
        }
        ranks
    }
}

fn is_rooted_permutation(v: usize, row: &[u32], seen: &mut [usize]) -> bool {
    let n = seen.len();
    if row.len() != n || row.first() != Some(&(v as u32)) {
        return false;
    }
    for &u in row {
        let u = u as usize;
        if u >= n || seen[u] == v {
            return false;
        }
        seen[u] = v;
    }
    true
}
