//! Exact computation of generalized Hilbert-Kunz multiplicities of
//! hypersurfaces over prime fields, with closed forms for plane cubics and the
//! Hankel-determinant identities behind the elliptic case.

pub mod closedform;
pub mod cubics;
pub mod error;
pub mod exec;
pub mod field;
pub mod hankel;
pub mod matrix;
pub mod poly;
pub mod properties;
pub mod quotient;
pub mod series;

pub use error::{Error, Result};
pub use exec::Execution;
pub use field::{Fp, PrimeField, QuadExtElement, QuadraticExtension};
pub use matrix::FpMatrix;
pub use poly::{Monomial, MultiPoly};
pub use quotient::{hk_profile, hk_profile_with, EngineOptions, HKProfile, RankStrategy};
pub use series::Rational;
