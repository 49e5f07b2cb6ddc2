//! Exact combinatorics behind finiteness arguments for tight contact structures:
//! Farey-tessellation slope calculus, small Seifert space slope analysis,
//! weight systems on branched surfaces, and multicurves on the 3-punctured sphere.
//!
//! The numeric core is generic over the integer scalar ([`Int`]); the aliases
//! below fix it to [`BigInt`] for unbounded inputs or `i64` for fast searches.

pub mod branched;
pub mod cli;
pub mod farey;
pub mod multicurve;
pub mod scalar;
pub mod seifert;

pub use num_bigint::BigInt;
pub use scalar::Int;

pub type BigSlope = farey::Slope<BigInt>;
pub type Slope64 = farey::Slope<i64>;
pub type BigFareyPath = farey::FareyPath<BigInt>;
pub type FareyPath64 = farey::FareyPath<i64>;
pub type BigRational = num_rational::Ratio<BigInt>;
pub type BigTriple = seifert::SeifertTriple<BigInt>;
pub type Triple64 = seifert::SeifertTriple<i64>;
pub type BigGcsFamily = seifert::GcsFamily<BigInt>;
pub type GcsFamily64 = seifert::GcsFamily<i64>;
pub type BigWeights = branched::WeightFunction<BigInt>;
pub type Weights64 = branched::WeightFunction<i64>;
