//! Directed cycles and packings of vertex-disjoint cycles.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::digraph::Digraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("a cycle needs at least two vertices, got {0}")]
    TooShort(usize),
    #[error("vertex {0} repeated in cycle")]
    RepeatedVertex(usize),
    #[error("vertex {0} is not on the cycle")]
    VertexNotOnCycle(usize),
    #[error("a packing needs at least one cycle")]
    EmptyPacking,
    #[error("cycles share vertex {0}")]
    SharedVertex(usize),
}

/// A directed cycle stored as its vertex sequence, rotated so that the
/// smallest label comes first.
///
/// The rotation makes two cycles equal exactly when they trace the same arcs.
/// Whether the arcs exist is a property of a host digraph, see
/// [`Cycle::lies_in`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    verts: Vec<usize>,
}

impl Cycle {
    pub fn new(mut verts: Vec<usize>) -> Result<Self, CycleError> {
        if verts.len() < 2 {
            return Err(CycleError::TooShort(verts.len()));
        }
        let mut seen = BTreeSet::new();
        for &v in &verts {
            if !seen.insert(v) {
                return Err(CycleError::RepeatedVertex(v));
            }
        }
        let start = verts
            .iter()
            .enumerate()
            .min_by_key(|&(_, v)| v)
            .map(|(i, _)| i)
            .unwrap_or(0);
        verts.rotate_left(start);
        Ok(Self { verts })
    }

    /// Number of arcs, which equals the number of vertices.
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn contains(&self, v: usize) -> bool {
        self.verts.contains(&v)
    }

    fn position(&self, v: usize) -> Result<usize, CycleError> {
        self.verts
            .iter()
            .position(|&w| w == v)
            .ok_or(CycleError::VertexNotOnCycle(v))
    }

    pub fn successor(&self, v: usize) -> Result<usize, CycleError> {
        let i = self.position(v)?;
        Ok(self.verts[(i + 1) % self.len()])
    }

    pub fn predecessor(&self, v: usize) -> Result<usize, CycleError> {
        let i = self.position(v)?;
        Ok(self.verts[(i + self.len() - 1) % self.len()])
    }

    /// The path from `from` to `to` following the cycle's orientation, both
    /// ends included. `path(x, x)` is the single vertex `x`.
    pub fn path(&self, from: usize, to: usize) -> Result<Vec<usize>, CycleError> {
        let i = self.position(from)?;
        let j = self.position(to)?;
        let steps = (j + self.len() - i) % self.len();
        Ok((0..=steps).map(|s| self.verts[(i + s) % self.len()]).collect())
    }

    /// Arcs of the cycle, starting at the smallest vertex.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let p = self.len();
        (0..p).map(move |i| (self.verts[i], self.verts[(i + 1) % p]))
    }

    /// True if every arc of the cycle is an arc of `host`.
    pub fn lies_in(&self, host: &Digraph) -> bool {
        self.arcs().all(|(u, v)| host.has_arc(u, v))
    }

    /// Relabel through `map` (local label -> original label).
    pub fn relabel(&self, map: &[usize]) -> Cycle {
        Cycle::new(self.verts.iter().map(|&v| map[v]).collect()).expect("relabelling is injective")
    }
}

impl AsRef<[usize]> for Cycle {
    fn as_ref(&self) -> &[usize] {
        &self.verts
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A nonempty set of pairwise vertex-disjoint cycles, kept in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclePacking {
    cycles: Vec<Cycle>,
}

impl CyclePacking {
    pub fn new(mut cycles: Vec<Cycle>) -> Result<Self, CycleError> {
        if cycles.is_empty() {
            return Err(CycleError::EmptyPacking);
        }
        let mut seen = BTreeSet::new();
        for c in &cycles {
            for &v in c.vertices() {
                if !seen.insert(v) {
                    return Err(CycleError::SharedVertex(v));
                }
            }
        }
        cycles.sort();
        Ok(Self { cycles })
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    /// Number of cycles in the packing.
    pub fn k(&self) -> usize {
        self.cycles.len()
    }

    /// Cycle lengths in the packing's (sorted) cycle order.
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Cycle::len).collect()
    }

    /// Number of distinct cycle lengths.
    pub fn distinct_lengths(&self) -> usize {
        self.cycles.iter().map(Cycle::len).collect::<BTreeSet<_>>().len()
    }

    pub fn relabel(&self, map: &[usize]) -> CyclePacking {
        CyclePacking::new(self.cycles.iter().map(|c| c.relabel(map)).collect())
            .expect("relabelling preserves disjointness")
    }

    pub fn into_cycles(self) -> Vec<Cycle> {
        self.cycles
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_rotation() {
        let c = Cycle::new(vec![5, 2, 7]).unwrap();
        assert_eq!(c.vertices(), &[2, 7, 5]);
        assert_eq!(c, Cycle::new(vec![7, 5, 2]).unwrap());
        assert_ne!(c, Cycle::new(vec![2, 5, 7]).unwrap());
    }

    #[test]
    fn rejects_bad_cycles() {
        assert_eq!(Cycle::new(vec![1]), Err(CycleError::TooShort(1)));
        assert_eq!(Cycle::new(vec![1, 2, 1]), Err(CycleError::RepeatedVertex(1)));
    }

    #[test]
    fn paths_follow_orientation() {
        let tri = Cycle::new(vec![10, 11, 12]).unwrap();
        assert_eq!(tri.path(11, 10).unwrap(), vec![11, 12, 10]);
        assert_eq!(tri.path(10, 10).unwrap(), vec![10]);
        let square = Cycle::new(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(square.path(2, 1).unwrap(), vec![2, 3, 0, 1]);
        assert_eq!(square.path(4, 1), Err(CycleError::VertexNotOnCycle(4)));
    }

    #[test]
    fn packing_rejects_overlap() {
        let a = Cycle::new(vec![0, 1, 2]).unwrap();
        let b = Cycle::new(vec![2, 3, 4]).unwrap();
        assert_eq!(
            CyclePacking::new(vec![a.clone(), b]),
            Err(CycleError::SharedVertex(2))
        );
        assert_eq!(CyclePacking::new(vec![]), Err(CycleError::EmptyPacking));
        let c = Cycle::new(vec![3, 4, 5, 6]).unwrap();
        let p = CyclePacking::new(vec![c, a]).unwrap();
        assert_eq!(p.lengths(), vec![3, 4]);
        assert_eq!(p.distinct_lengths(), 2);
    }

    proptest! {
        #[test]
        fn rotation_invariant(len in 2usize..8, shift in 0usize..8) {
            let verts: Vec<usize> = (0..len).map(|i| (i * 7 + 3) % 23).collect();
            let mut rotated = verts.clone();
            rotated.rotate_left(shift % len);
            let a = Cycle::new(verts).unwrap();
            let b = Cycle::new(rotated).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.vertices()[0], *a.vertices().iter().min().unwrap());
            // walking the full path from any vertex back to its predecessor covers the cycle
            let v = a.vertices()[shift % len];
            prop_assert_eq!(a.path(v, a.predecessor(v).unwrap()).unwrap().len(), len);
        }
    }
}
