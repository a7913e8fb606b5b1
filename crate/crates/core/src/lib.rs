//! Exact combinatorics of alcoves, Levi orbits and Grothendieck-group
//! translation calculus for graded categories of reduced enveloping algebras
//! in standard Levi form.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootdata`]: root systems, weights and pairings.
//! * [`affine_weyl`]: the affine Weyl group `W_p`, the dot-action and `S_p`.
//! * [`alcoves`]: alcove coordinates, the `d`-function and the `↑` order.
//! * [`levi`]: `W_{I,p}`, the domain `C̄_I`, orbit labels and `N_I`.
//! * [`groth`]: Grothendieck-group vectors and translation functors.
//! * [`tilting`]: reduced expressions, Θ-products and peeling.
//! * [`sections`]: cardinalities of sections of costandard flags.
//! * [`oracle`]: brute-force cross-checks of every closed formula.

pub mod affine_weyl;
pub mod alcoves;
pub mod error;
pub mod groth;
pub mod levi;
pub mod oracle;
pub mod rootdata;
pub mod sections;
pub mod tilting;

pub use affine_weyl::{AffineElt, FiniteElt, Reflection};
pub use alcoves::{AlcoveCoords, Relation, WallDatum, WallSide};
pub use error::{Error, Result};
pub use groth::{Basis, Direction, GVector, TransSpec};
pub use levi::{LeviDatum, OrbitLabel, WallSetup};
pub use rootdata::{CartanType, Coroot, Root, RootSystem, Weight};
pub use sections::{SectionKind, SectionSkeleton};
pub use tilting::{Decomposition, ReducedWord, TiltingTable};
