//! Multipartite tournaments: orientations of complete multipartite graphs.

use std::ops::Deref;

use thiserror::Error;

use crate::digraph::{Digraph, GraphError};

/// Why a vertex partition plus arc list is not a multipartite tournament.
///
/// Pair-level errors name the first offending pair in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("at least two parts are required, got {0}")]
    TooFewParts(usize),
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("vertex {0} appears in more than one part")]
    VertexInTwoParts(usize),
    #[error("vertex {0} is not covered by any part")]
    UncoveredVertex(usize),
    #[error("arc ({0}, {1}) joins two vertices of the same part")]
    IntraPartArc(usize, usize),
    #[error("pair ({0}, {1}) is oriented both ways")]
    DoubleArc(usize, usize),
    #[error("pair ({0}, {1}) in different parts has no arc")]
    MissingArc(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A digraph together with a partition into independent parts such that
/// every pair of vertices from different parts is joined by exactly one arc.
///
/// Derefs to the underlying [`Digraph`] for degree and adjacency queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultipartiteTournament {
    base: Digraph,
    parts: Vec<Vec<usize>>,
    part_of: Vec<usize>,
}

/// Validate `parts` and `arcs` as a multipartite tournament.
///
/// Parts must be nonempty, disjoint and cover `0..n` where `n` is the total
/// number of listed vertices.
pub fn build_multipartite(
    parts: Vec<Vec<usize>>,
    arcs: impl IntoIterator<Item = (usize, usize)>,
) -> Result<MultipartiteTournament, ValidationError> {
    if parts.len() < 2 {
        return Err(ValidationError::TooFewParts(parts.len()));
    }
    let n: usize = parts.iter().map(Vec::len).sum();
    let mut part_of = vec![usize::MAX; n];
    for (p, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(ValidationError::EmptyPart(p));
        }
        for &v in part {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n }.into());
            }
            if part_of[v] != usize::MAX {
                return Err(ValidationError::VertexInTwoParts(v));
            }
            part_of[v] = p;
        }
    }
    if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
        return Err(ValidationError::UncoveredVertex(v));
    }
    let arcs: Vec<(usize, usize)> = arcs.into_iter().collect();
    for &(u, v) in &arcs {
        if u < n && v < n && part_of[u] == part_of[v] {
            return Err(ValidationError::IntraPartArc(u, v));
        }
    }
    let base = Digraph::new(n, arcs)?;
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] == part_of[v] {
                continue;
            }
            match (base.has_arc(u, v), base.has_arc(v, u)) {
                (true, true) => return Err(ValidationError::DoubleArc(u, v)),
                (false, false) => return Err(ValidationError::MissingArc(u, v)),
                _ => {}
            }
        }
    }
    let mut parts = parts;
    for part in &mut parts {
        part.sort_unstable();
    }
    Ok(MultipartiteTournament {
        base,
        parts,
        part_of,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("sink structure violated: {0}")]
pub struct ObservationViolated(pub String);

impl MultipartiteTournament {
    pub fn digraph(&self) -> &Digraph {
        &self.base
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Number of parts.
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn same_part(&self, u: usize, v: usize) -> bool {
        self.part_of[u] == self.part_of[v]
    }

    /// A tournament is the case where every part is a singleton.
    pub fn is_tournament(&self) -> bool {
        self.parts.iter().all(|p| p.len() == 1)
    }

    /// The sub-tournament induced by `keep`, relabelled in the order given,
    /// plus the map back to original labels.
    ///
    /// Parts that lose all their vertices are dropped; part order is kept.
    /// Fails with `TooFewParts` when `keep` meets fewer than two parts.
    pub fn induced(&self, keep: &[usize]) -> Result<(MultipartiteTournament, Vec<usize>), ValidationError> {
        let (sub, map) = self.base.induced(keep);
        let mut part_index = vec![usize::MAX; self.parts.len()];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        let mut order: Vec<usize> = keep.iter().map(|&v| self.part_of[v]).collect();
        order.sort_unstable();
        order.dedup();
        for p in order {
            part_index[p] = parts.len();
            parts.push(Vec::new());
        }
        let mut part_of = Vec::with_capacity(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            let p = part_index[self.part_of[v]];
            parts[p].push(i);
            part_of.push(p);
        }
        if parts.len() < 2 {
            return Err(ValidationError::TooFewParts(parts.len()));
        }
        for part in &mut parts {
            part.sort_unstable();
        }
        Ok((
            MultipartiteTournament {
                base: sub,
                parts,
                part_of,
            },
            map,
        ))
    }

    /// Vertices of `within` with no out-neighbor in `within`.
    ///
    /// Also checks the structure such sinks must have: they all lie in one
    /// part, and every other vertex of `within` reaches every sink by a path
    /// of length at most two inside `within`. A failure of that check means
    /// the instance is not a valid multipartite tournament and is reported
    /// as [`ObservationViolated`].
    pub fn sinks_within(&self, within: &[usize]) -> Result<Vec<usize>, ObservationViolated> {
        let mut member = vec![false; self.vertex_count()];
        for &v in within {
            member[v] = true;
        }
        let mut sinks: Vec<usize> = within
            .iter()
            .copied()
            .filter(|&v| self.out_degree_within(v, |w| member[w]) == 0)
            .collect();
        sinks.sort_unstable();
        if let Some(&first) = sinks.first() {
            if let Some(&other) = sinks.iter().find(|&&s| !self.same_part(s, first)) {
                return Err(ObservationViolated(format!(
                    "sinks {first} and {other} lie in different parts"
                )));
            }
            for &u in within {
                if sinks.binary_search(&u).is_ok() {
                    continue;
                }
                for &s in &sinks {
                    let direct = self.has_arc(u, s);
                    let two_step = self
                        .out_neighbors(u)
                        .iter()
                        .any(|&w| member[w] && self.has_arc(w, s));
                    if !direct && !two_step {
                        return Err(ObservationViolated(format!(
                            "vertex {u} does not reach sink {s} within two steps"
                        )));
                    }
                }
            }
        }
        Ok(sinks)
    }
}

impl Deref for MultipartiteTournament {
    type Target = Digraph;

    fn deref(&self) -> &Digraph {
        &self.base
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_random_multipartite, GenSpec};
    use proptest::prelude::*;

    #[test]
    fn validates_cyclic_triangle() {
        let d = build_multipartite(vec![vec![0], vec![1], vec![2]], [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(d.part_count(), 3);
        assert!(d.is_tournament());
        assert_eq!(d.min_out_degree(), Ok(1));
    }

    #[test]
    fn names_first_bad_pair() {
        assert_eq!(
            build_multipartite(vec![vec![0], vec![1]], [(0, 1), (1, 0)]),
            Err(ValidationError::DoubleArc(0, 1))
        );
        assert_eq!(
            build_multipartite(vec![vec![0, 1], vec![2, 3]], [(0, 2), (0, 3), (2, 1)]),
            Err(ValidationError::MissingArc(1, 3))
        );
        assert_eq!(
            build_multipartite(vec![vec![0, 1], vec![2]], [(0, 1), (0, 2), (1, 2)]),
            Err(ValidationError::IntraPartArc(0, 1))
        );
        assert_eq!(
            build_multipartite(vec![vec![0, 1]], []),
            Err(ValidationError::TooFewParts(1))
        );
        assert_eq!(
            build_multipartite(vec![vec![0, 1], vec![1, 2]], []),
            Err(ValidationError::VertexInTwoParts(1))
        );
    }

    #[test]
    fn bipartite_examples() {
        // 0 is a source here, so the instance is acyclic
        let d = build_multipartite(vec![vec![0, 1], vec![2, 3]], [(0, 2), (0, 3), (2, 1), (3, 1)]).unwrap();
        assert_eq!(d.arc_count(), 4);
        // 3 is a sink, so no cycle passes through it
        let d = build_multipartite(vec![vec![0, 1], vec![2, 3]], [(0, 2), (0, 3), (2, 1), (1, 3)]).unwrap();
        assert_eq!(d.out_degree(3), 0);
    }

    #[test]
    fn sinks_examples() {
        let tri = build_multipartite(vec![vec![0], vec![1], vec![2]], [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(tri.sinks_within(&[0, 1, 2]), Ok(vec![]));
        assert_eq!(tri.sinks_within(&[0, 1]), Ok(vec![1]));
    }

    /// Exhaustive pair scan, independent of the validator's own loop.
    fn definition_holds(parts: &[Vec<usize>], arcs: &[(usize, usize)]) -> bool {
        let n: usize = parts.iter().map(Vec::len).sum();
        let part = |v: usize| parts.iter().position(|p| p.contains(&v)).unwrap();
        let has = |u, v| arcs.contains(&(u, v));
        if arcs.iter().any(|&(u, v)| part(u) == part(v)) {
            return false;
        }
        (0..n).all(|u| {
            (0..n).all(|v| u == v || part(u) == part(v) || (has(u, v) ^ has(v, u)))
        })
    }

    #[test]
    fn validator_matches_definition_on_all_small_arc_sets() {
        // parts {0,1},{2},{3}: 5 cross pairs; every subset of the 10 directed arcs
        let parts = vec![vec![0, 1], vec![2], vec![3]];
        let candidates: Vec<(usize, usize)> = (0..4)
            .flat_map(|u| (0..4).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && !(u < 2 && v < 2))
            .collect();
        assert_eq!(candidates.len(), 10);
        for mask in 0u32..(1 << candidates.len()) {
            let arcs: Vec<_> = (0..candidates.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| candidates[i])
                .collect();
            let ok = build_multipartite(parts.clone(), arcs.clone()).is_ok();
            assert_eq!(ok, definition_holds(&parts, &arcs), "arcs {arcs:?}");
        }
    }

    proptest! {
        #[test]
        fn sink_structure_always_holds(
            sizes in prop::collection::vec(1usize..4, 2..5),
            seed in any::<u64>(),
            mask in any::<u64>(),
        ) {
            let d = gen_random_multipartite(&GenSpec::new(sizes, seed)).unwrap();
            let within: Vec<usize> = (0..d.vertex_count()).filter(|v| mask >> v & 1 == 1).collect();
            let sinks = d.sinks_within(&within);
            prop_assert!(sinks.is_ok());
            // brute-force sink scan
            let expected: Vec<usize> = within
                .iter()
                .copied()
                .filter(|&v| within.iter().all(|&w| !d.has_arc(v, w)))
                .collect();
            prop_assert_eq!(sinks.unwrap(), expected);
        }
    }
}
