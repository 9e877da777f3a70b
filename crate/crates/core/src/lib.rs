//! Exact Tutte polynomials, spanning-tree counts and all-terminal reliability
//! for the pseudofractal scale-free web `G(n)` and the Sierpinski gasket
//! `SG(n)`, computed by self-similarity recursions and checked against
//! brute-force oracles.

pub mod bipoly;
pub mod dsu;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod numeric;
pub mod oracle;
pub mod recursion;
pub mod reliability;
pub mod semiring;

pub use bipoly::BiPoly;
pub use error::{Error, Result};
pub use graph::{Family, Graph, HubGraph};
pub use invariants::{ExponentSeq, InvariantReport};
pub use recursion::{PartitionTriple, PswTutteState, TutteState};
pub use reliability::{ExactProb, Mode, RelStatePsw, RelStateSg, Scalar};
pub use semiring::{LogPos, Semiring};
