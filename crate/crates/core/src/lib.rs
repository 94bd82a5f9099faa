//! Computational homological algebra for monomial bound-quiver algebras over
//! prime fields: minimal projective resolutions, syzygies, Ext, k-duality,
//! and detection of n-strongly Gorenstein projective, injective and flat
//! modules.

pub mod algebra;
pub mod fieldmat;
pub mod format;
pub mod rep;
pub mod resolution;
pub mod sg;

pub use algebra::{cyclic_nakayama, MonomialAlgebra, Quiver};
pub use fieldmat::{Field, Matrix};
pub use rep::{IsoOptions, Morphism, Representation};
