//! cagekit: construction and exhaustive certification of the girth-8
//! incidence cages coordinatized over GF(q).
//!
//! The crate builds the Moore (q+1,8)-cage Gamma_q, the q-regular graphs
//! B_q and H_q, the intermediate augmentation stages between them, and, for
//! even q, a perfect dominating set whose removal leaves a q-regular
//! girth-8 graph. Every claimed property (order, regularity, bipartiteness,
//! girth, diameter, domination) is checked by exact combinatorial kernels
//! rather than assumed.

pub mod cage;
pub mod cli;
pub mod dominating;
pub mod error;
pub mod field;
pub mod formats;
pub mod graph;
pub mod label;
pub mod rng;
pub mod selftest;

pub use cage::{
    build_bq, build_gamma, build_gamma_dual, build_hq, build_staged, check_dual_equivalence,
    check_isomorphism, gamma_neighbors, sigma, Stage,
};
pub use dominating::{
    build_pds, build_pds_on, check_matching, closed_neighborhood, common_second_neighborhood,
    p_poly, remove_pds, seed_sets, seed_sets_q4, verify_pds, PdsCertificate, PdsVariant,
    PdsWitness, SeedSets,
};
pub use error::Error;
pub use field::{Field, FieldElem, FieldInfo};
pub use formats::GraphFormat;
pub use graph::{moore_bound, BipartiteGraph, Expectations, Labeling, VerifyReport, VertexSet};
pub use label::{Coord, Label, LabelCodec, Shape, Side};
