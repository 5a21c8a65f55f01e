//! Vertex-disjoint cycle packings in multipartite tournaments.
//!
//! The crate has three layers:
//!
//! * [`digraph`], [`multipartite`], [`cycle`], [`condensation`] and [`mtg`]
//!   describe instances, cycles and the plain-text instance format.
//! * [`packing`] builds packings constructively under minimum out-degree
//!   hypotheses, and [`oracle`] checks them by exhaustive search.
//! * [`generators`] and [`harness`] produce seeded instances and run
//!   verification campaigns over them.
//!
//! ```
//! use mtcycles::generators::{gen_with_min_outdegree, GenSpec};
//! use mtcycles::oracle::verify_packing;
//! use mtcycles::packing::pack_3partite;
//!
//! let d = gen_with_min_outdegree(&GenSpec::new(vec![4, 4, 4], 7).with_min_out_degree(3)).unwrap();
//! let packing = pack_3partite(&d, 2).unwrap();
//! assert!(verify_packing(&d, packing.cycles()).is_ok());
//! ```

pub mod condensation;
pub mod cycle;
pub mod digraph;
pub mod generators;
pub mod harness;
pub mod mtg;
pub mod multipartite;
pub mod oracle;
pub mod packing;

pub use cycle::{Cycle, CyclePacking};
pub use digraph::Digraph;
pub use multipartite::{build_multipartite, MultipartiteTournament};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/instances.md")]
    mod instances {}
    #[doc = include_str!("../../../book/src/components.md")]
    mod components {}
    #[doc = include_str!("../../../book/src/packing.md")]
    mod packing {}
    #[doc = include_str!("../../../book/src/diversity.md")]
    mod diversity {}
    #[doc = include_str!("../../../book/src/bt.md")]
    mod bt {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/campaigns.md")]
    mod campaigns {}
}
