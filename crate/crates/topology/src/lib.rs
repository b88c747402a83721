//! Graded abelian-group bookkeeping, F2 cohomology rings with Steenrod
//! operations, twisted Atiyah-Hirzebruch differentials and extension
//! resolution for twisted K-theory computations at desk scale.

pub mod abelian;
pub mod ahss;
pub mod error;
pub mod extensions;
pub mod f2ring;
pub mod snf;
pub mod spaces;
pub mod steenrod;

pub use abelian::{kunneth_ktheory, tensor_ab, tor_ab, AbelianGroup, KTheory, KunnethResult};
pub use ahss::{
    ahss_integral, ahss_mod2, twisted_d3_mod2, IntegralPage, IntegralSpaceData, MoravaPage,
};
pub use error::{Error, Result};
pub use extensions::{abelian_extensions, resolve_extensions, uct_mod2_check};
pub use f2ring::{F2Element, F2Ring, GeneratorSpec};
pub use steenrod::{milnor_q1, sq, total_square};
