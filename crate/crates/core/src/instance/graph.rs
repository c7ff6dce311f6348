use rayon::prelude::*;

use super::{Embedding, InstanceError};

/// Undirected simple graph in compressed adjacency form.
///
/// Neighbour lists are sorted; `r` is the threshold it was generated with,
/// when known.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricGraph {
    n: usize,
    r: Option<f64>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl GeometricGraph {
    /// Builds a graph from an edge list. Each unordered pair may appear at
    /// most once; self-loops are rejected.
    pub fn from_edges(
        n: usize,
        edges: &[(usize, usize)],
        r: Option<f64>,
    ) -> Result<Self, InstanceError> {
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(InstanceError::BadEdge(u, v));
            }
            lists[u].push(v as u32);
            lists[v].push(u as u32);
        }
        for (u, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(InstanceError::BadEdge(u, w[0] as usize));
            }
        }
        Ok(Self::from_sorted_lists(lists, r))
    }

    fn from_sorted_lists(lists: Vec<Vec<u32>>, r: Option<f64>) -> Self {
        let n = lists.len();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let total: usize = lists.iter().map(Vec::len).sum();
        let mut targets = Vec::with_capacity(total);
        for list in lists {
            targets.extend_from_slice(&list);
            offsets.push(targets.len());
        }
        GeometricGraph {
            n,
            r,
            offsets,
            targets,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> Option<f64> {
        self.r
    }

    /// A copy that forgets the generating threshold, as if loaded from an
    /// adjacency-only file.
    pub fn without_threshold(&self) -> GeometricGraph {
        GeometricGraph {
            r: None,
            ..self.clone()
        }
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_complete(&self) -> bool {
        self.n < 2 || self.edge_count() == self.n * (self.n - 1) / 2
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> GeometricGraph {
        assert_eq!(perm.len(), self.n);
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        GeometricGraph::from_edges(self.n, &edges, self.r).expect("relabeling preserves validity")
    }
}

/// `G(Ψ, r)`: `u ~ v` iff `|Ψ(u) − Ψ(v)| ≤ r`.
///
/// Points are bucketed into a uniform grid whose cells are at least `r`
/// wide, so each vertex only compares against its own and the 8 adjacent
/// cells.
pub fn build_graph(e: &Embedding, r: f64) -> Result<GeometricGraph, InstanceError> {
    if !(r.is_finite() && r > 0.0) {
        return Err(InstanceError::BadThreshold(r));
    }
    let n = e.len();
    let domain = e.domain();
    let side = domain.side();
    let half = domain.half_side();
    let max_cells = (n as f64).sqrt().ceil().max(1.0) as usize;
    let k = ((side / r).floor() as usize).clamp(1, max_cells);
    let cell = side / k as f64;
    let cell_of = |x: f64| (((x + half) / cell).floor().max(0.0) as usize).min(k - 1);

    // Counting sort of vertices by cell.
    let cells: Vec<usize> = e
        .points()
        .iter()
        .map(|p| cell_of(p.y) * k + cell_of(p.x))
        .collect();
    let mut start = vec![0usize; k * k + 1];
    for &c in &cells {
        start[c + 1] += 1;
    }
    for i in 0..k * k {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut members = vec![0u32; n];
    for (v, &c) in cells.iter().enumerate() {
        members[fill[c]] = v as u32;
        fill[c] += 1;
    }

    let r2 = r * r;
    let points = e.points();
    let lists: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let p = points[u];
            let (cx, cy) = (cells[u] % k, cells[u] / k);
            let mut out = Vec::new();
            for y in cy.saturating_sub(1)..=(cy + 1).min(k - 1) {
                for x in cx.saturating_sub(1)..=(cx + 1).min(k - 1) {
                    let c = y * k + x;
                    for &v in &members[start[c]..start[c + 1]] {
                        if v as usize != u && p.dist2(&points[v as usize]) <= r2 {
                            out.push(v);
                        }
                    }
                }
            }
            out.sort_unstable();
            out
        })
        .collect();
    Ok(GeometricGraph::from_sorted_lists(lists, Some(r)))
}
