//! Kneading sequences and abstract Hubbard trees of quadratic polynomials.
//!
//! Sequences over `{0, 1, *}` are stored as eventually periodic words; a
//! Hubbard tree is built from the itineraries of the critical orbit, with
//! betweenness computed symbolically by the triod algorithm. On top of the
//! trees sit characteristic points, the partial order on kneading sequences
//! and the computation of where two arcs `[*̄, ν]` part.

pub mod address;
pub mod angle;
pub mod bifurcation;
pub mod branch;
pub mod charpoint;
pub mod error;
pub mod export;
pub mod itinerary;
pub mod order;
pub mod seq;
pub mod symbol;
pub mod tree;
pub mod triod;

pub use address::{
    from_internal_address, internal_address, lower, rho, truncation, truncations, upper, upper_lower, InternalAddress,
};
pub use angle::angle_to_kneading;
pub use bifurcation::{
    backward_bifurcate, bifurcate, enumerate_star_periodic, is_primitive, star_periodic_up_to, star_periodize,
};
pub use branch::{branch, BranchCase, BranchKind, BranchResult, SideData, Witness};
pub use charpoint::{
    characteristic_chain, find_dynamical_parent, is_admissible, is_tame_itinerary, locate_characteristic, successor,
    Chain, CharLookup, CharPoint, PointType, Successor,
};
pub use error::{Error, Result};
pub use export::{to_dot, to_json};
pub use itinerary::Itinerary;
pub use order::{
    compare, find_subwake, in_arc, less_than, nonadmissible_root, nonadmissible_subwake_contains, subwake_contains,
    wake_contains, Direction, OrderRelation, Verdict,
};
pub use seq::{Seq, SeqKind};
pub use symbol::Symbol;
pub use tree::{build_tree, contains_point, verify_axioms, AxiomReport, MarkedTree};
pub use triod::{critical_itinerary, middle, triod, TriodOutcome, TriodResult};
