//! Exact-arithmetic simplicial group machinery: explicit Eilenberg-MacLane
//! constructions, homotopy and cohomology computation over finite abelian
//! groups, and cyclic modules attached to commutative Hopf algebras.

pub mod cohomology;
pub mod cyclicmod;
pub mod em;
pub mod family;
pub mod finab;
pub mod hopf;
pub mod moore;
pub mod simplex;
pub mod snf;
pub mod tablegroup;
pub mod verify;
