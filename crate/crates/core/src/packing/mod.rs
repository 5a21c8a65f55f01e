//! Constructive cycle packings in multipartite tournaments.
//!
//! Each packer checks its degree hypothesis up front and verifies its output
//! against the host before returning. Failures that the hypotheses rule out
//! are reported as [`PackingError::InternalExhaustion`] and logged together
//! with the instance, since they indicate either a bug or a counterexample.

mod bt;
mod diversify;
mod lemmas;
mod search;
mod theorems;

use thiserror::Error;

use crate::cycle::{Cycle, CyclePacking};
use crate::digraph::Digraph;
use crate::multipartite::MultipartiteTournament;
use crate::oracle::{verify_packing, PackingViolation};

pub use bt::{kappa_one_characterization, recognize_bt, BtLabeling, KappaOneVerdict};
pub use diversify::{diversify_3partite, DiversePacking};
pub use lemmas::{merge_triangle_pair, split_triangle_triple};
pub use search::{pack_bipartite_4cycles, pack_tournament_triangles};
pub use theorems::{pack_3partite, pack_extended, pack_multipartite_3k2, pack_triangle_free};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingError {
    #[error("minimum out-degree {actual} is below the required {required}")]
    HypothesisViolated { required: usize, actual: usize },
    #[error("k must be at least {min}, got {got}")]
    InvalidK { min: usize, got: usize },
    #[error("expected at most {max} parts, got {got}")]
    TooManyParts { max: usize, got: usize },
    #[error("expected a bipartite tournament, got {0} parts")]
    NotBipartite(usize),
    #[error("expected a tournament (all parts singletons)")]
    NotATournament,
    #[error("instance contains the triangle {0}")]
    NotTriangleFree(Cycle),
    #[error("instance is triangle-free")]
    TriangleFree,
    #[error("parts {0} and {1} are joined by arcs in both directions")]
    NotAnExtension(usize, usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("terminal strong component spans {0} parts")]
    NonBipartiteTerminal(usize),
    #[error("search exhausted: {0}")]
    InternalExhaustion(String),
    #[error("produced an invalid packing: {0}")]
    InvalidOutput(PackingViolation),
}

impl PackingError {
    /// Errors that the hypotheses of the called operation should rule out.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            PackingError::NonBipartiteTerminal(_)
                | PackingError::InternalExhaustion(_)
                | PackingError::InvalidOutput(_)
        )
    }
}

fn require_k(k: usize, min: usize) -> Result<(), PackingError> {
    if k < min {
        Err(PackingError::InvalidK { min, got: k })
    } else {
        Ok(())
    }
}

fn require_min_out_degree(d: &Digraph, required: usize) -> Result<(), PackingError> {
    let actual = d.min_out_degree().unwrap_or(0);
    if actual < required {
        Err(PackingError::HypothesisViolated { required, actual })
    } else {
        Ok(())
    }
}

fn exhausted(d: &MultipartiteTournament, what: String) -> PackingError {
    log::error!(
        "{what}; instance follows\n{}",
        crate::mtg::serialize(d)
    );
    PackingError::InternalExhaustion(what)
}

/// Check the cycles against `host` and wrap them as a packing.
fn finish(host: &Digraph, cycles: Vec<Cycle>) -> Result<CyclePacking, PackingError> {
    verify_packing(host, &cycles).map_err(PackingError::InvalidOutput)?;
    CyclePacking::new(cycles).map_err(|e| PackingError::PreconditionViolated(e.to_string()))
}

/// The lexicographically first triangle avoiding `forbidden`.
pub fn find_triangle(d: &Digraph, forbidden: &[usize]) -> Option<Cycle> {
    let mut alive = vec![true; d.vertex_count()];
    for &v in forbidden {
        if v < alive.len() {
            alive[v] = false;
        }
    }
    find_triangle_alive(d, &alive)
}

pub(crate) fn find_triangle_alive(d: &Digraph, alive: &[bool]) -> Option<Cycle> {
    for a in 0..d.vertex_count() {
        if !alive[a] {
            continue;
        }
        for &b in d.out_neighbors(a) {
            if b < a || !alive[b] {
                continue;
            }
            for &c in d.out_neighbors(b) {
                if c > a && alive[c] && d.has_arc(c, a) {
                    return Some(Cycle::new(vec![a, b, c]).expect("three distinct vertices"));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_random_multipartite, GenSpec};

    #[test]
    fn triangle_search_matches_triple_scan() {
        let d = gen_random_multipartite(&GenSpec::new(vec![4, 4, 4], 5)).unwrap();
        let n = d.vertex_count();
        let mut brute = None;
        'outer: for a in 0..n {
            for b in a + 1..n {
                for c in a + 1..n {
                    if b != c && d.has_arc(a, b) && d.has_arc(b, c) && d.has_arc(c, a) {
                        brute = Some(Cycle::new(vec![a, b, c]).unwrap());
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(find_triangle(&d, &[]), brute);
        assert!(brute.is_some());
        let t = brute.unwrap();
        let rest = find_triangle(&d, t.vertices());
        if let Some(r) = rest {
            assert!(r.vertices().iter().all(|v| !t.contains(*v)));
        }
    }

    #[test]
    fn bipartite_has_no_triangle() {
        for seed in 0..20 {
            let d = gen_random_multipartite(&GenSpec::new(vec![4, 5], seed)).unwrap();
            assert_eq!(find_triangle(&d, &[]), None);
        }
    }

    #[test]
    fn cyclic_triangle_found() {
        let d = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(find_triangle(&d, &[]), Some(Cycle::new(vec![0, 1, 2]).unwrap()));
        assert_eq!(find_triangle(&d, &[1]), None);
    }
}
