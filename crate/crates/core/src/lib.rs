//! Graph associahedra as lattices: maximal tubings, the flip poset `L_G`,
//! the surjection Ψ_G from the weak order, arc congruences, and the tubing
//! Hopf algebras.

pub mod check;
pub mod error;
pub mod graph;
pub mod hopf;
pub mod oracle;
pub mod par;
pub mod perm;
pub mod poset;
pub mod tubing;
pub mod verify;
pub mod vset;
pub mod weakorder;

pub use check::FamilyCheck;
pub use error::{Error, Result};
pub use graph::{DistanceSet, Graph, GraphFamily, LabeledGraph};
pub use hopf::FormalSum;
pub use perm::Permutation;
pub use poset::Poset;
pub use tubing::{GForest, Tubing};
pub use vset::VertexSet;
pub use weakorder::Congruence;
