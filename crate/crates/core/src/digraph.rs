//! Simple digraphs on dense vertex labels `0..n`.

use thiserror::Error;

/// Errors raised while building or querying a [`Digraph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("arc ({0}, {1}) listed twice")]
    DuplicateArc(usize, usize),
    #[error("digraph has no vertices")]
    EmptyGraph,
    #[error("vertex sets overlap at vertex {0}")]
    OverlappingSets(usize),
}

/// A loopless digraph without parallel arcs.
///
/// Opposite arcs `(u, v)` and `(v, u)` may both be present, which is what
/// makes complete digraphs representable. Neighbor lists are kept sorted so
/// every traversal visits vertices in ascending label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
    arc_count: usize,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut matrix = vec![false; n * n];
        let mut arc_count = 0;
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if matrix[u * n + v] {
                return Err(GraphError::DuplicateArc(u, v));
            }
            matrix[u * n + v] = true;
            out_adj[u].push(v);
            in_adj[v].push(u);
            arc_count += 1;
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            out_adj,
            in_adj,
            matrix,
            arc_count,
        })
    }

    /// The complete digraph on `n` vertices: both arcs between every pair.
    pub fn complete(n: usize) -> Self {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
        Self::new(n, arcs).expect("complete digraph is well formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.matrix[u * self.n + v]
    }

    /// Out-neighbors of `v` in ascending order.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// In-neighbors of `v` in ascending order.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// Number of out-neighbors of `v` that satisfy `member`.
    pub fn out_degree_within(&self, v: usize, member: impl Fn(usize) -> bool) -> usize {
        self.out_adj[v].iter().filter(|&&w| member(w)).count()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    /// Minimum out-degree over all vertices.
    pub fn min_out_degree(&self) -> Result<usize, GraphError> {
        (0..self.n)
            .map(|v| self.out_degree(v))
            .min()
            .ok_or(GraphError::EmptyGraph)
    }

    /// Number of arcs with tail in `from` and head in `to`. The two sets must be disjoint.
    pub fn arc_count_between(&self, from: &[usize], to: &[usize]) -> Result<usize, GraphError> {
        for &x in from {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
            if to.contains(&x) {
                return Err(GraphError::OverlappingSets(x));
            }
        }
        if let Some(&y) = to.iter().find(|&&y| y >= self.n) {
            return Err(GraphError::VertexOutOfRange { vertex: y, n: self.n });
        }
        Ok(from
            .iter()
            .map(|&x| to.iter().filter(|&&y| self.has_arc(x, y)).count())
            .sum())
    }

    /// True if some pair of opposite arcs is present.
    pub fn has_digon(&self) -> bool {
        self.arcs().any(|(u, v)| u < v && self.has_arc(v, u))
    }

    /// The subdigraph induced by `keep`, relabelled densely in the order given.
    ///
    /// Returns the subdigraph together with the map from new labels back to
    /// the original ones.
    pub fn induced(&self, keep: &[usize]) -> (Digraph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let arcs = keep.iter().flat_map(|&u| {
            let local = &local;
            self.out_adj[u]
                .iter()
                .filter(move |&&v| local[v] != usize::MAX)
                .map(move |&v| (local[u], local[v]))
        });
        let sub = Digraph::new(keep.len(), arcs.collect::<Vec<_>>())
            .expect("induced subdigraph of a valid digraph is valid");
        (sub, keep.to_vec())
    }
}
