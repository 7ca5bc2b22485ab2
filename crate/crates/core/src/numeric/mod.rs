pub mod cube;
pub mod eisenstein;
pub mod factor;
pub mod finite;
pub mod quad;
pub mod rational;
pub mod poly;
pub mod valuation;

pub use cube::{cube_test, ClassField, ClassVector, CubeClass, CubeClassGroup, FieldTag, PrimeKey};
pub use eisenstein::{
    cube_residue_character, factor_eisenstein, EisensteinFactorization, EisensteinPrime,
};
pub use factor::{factor_integer, Factorization};
pub use finite::{Gf, GfCtx};
pub use quad::Quad;
pub use rational::{int, rat, Rat};
pub use valuation::{valuation, PrimeDescriptor, QuadPrime};
