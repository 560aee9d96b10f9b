//! Verification toolkit for the genus-4 icosahedral dessin and its quotient
//! family on Bring's curve.
//!
//! The crate machine-checks, from scratch, the combinatorial and algebraic
//! structure of the dessin `I4 = (sigma^2, alpha)` built from a regular
//! icosahedron: its passport and automorphisms, the lattice of quotients by
//! subgroups of A5, explicit Belyi functions and their decomposition
//! identities, the hyperelliptic and elliptic models of the quotient curves,
//! and a 3-isogeny computed directly with division polynomials and Velu's
//! formulas. A floating-point suite samples Bring's curve through quintic
//! roots and verifies the degree-60 Belyi function identities numerically.

pub mod algebra;
pub mod belyi;
pub mod catalog;
pub mod checks;
pub mod curves;
pub mod dessin;
pub mod numeric;
pub mod perm;

pub use dessin::{Dessin, DessinDocument, Passport};
pub use perm::{PermGroup, Permutation};
