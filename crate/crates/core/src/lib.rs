//! Suffridge polynomials and the numerical checks around them: closed forms,
//! Brandt's representation, Koebe approximation, Robertson measures,
//! univalency tests and the `G_{N,mu}` family.

pub mod curve;
pub mod error;
pub mod gfamily;
pub mod kernels;
pub mod poly;
pub mod quadrature;
pub mod robertson;
pub mod roots;
pub mod suffridge;
pub mod univalence;

pub use num_complex::Complex64;

pub use curve::{CurvePoint, CurveSamples};
pub use error::{Error, Result};
pub use gfamily::{GFamilyParams, ZetaEstimate};
pub use kernels::KernelSpec;
pub use poly::{DensePolynomial, RealPolynomial};
pub use robertson::MeasureTable;
pub use suffridge::{SuffridgeParams, TrigSumParams};
pub use univalence::{RobustFamilyParams, UnivalenceReport, Verdict};
