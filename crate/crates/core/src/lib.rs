//! Generalized negative binomial distributions (GNBD) attached to the
//! hyperbolic Landau levels of the Poincaré disc.
//!
//! * [`specialfn`]: log-gamma, Pochhammer, Jacobi/Laguerre polynomials,
//!   Jacobi zeros, terminating hypergeometric polynomials.
//! * [`gnbd`]: the pmf, closed-form MGF and CF, moments, Mandel parameter
//!   and the flat contraction limit.
//! * [`decomposition`]: signed atomic measures and the decomposition of the
//!   GNBD as a negative binomial law convolved with a finite signed measure.
//! * [`levy`]: non-vanishing threshold, quasi-Lévy measures and the
//!   Lévy–Khintchine representation of the CF.
//! * [`idd`]: the infinitely divisible compound-Poisson law built from the
//!   total variation of the quasi-Lévy measure, with exact samplers.
//! * [`verify`]: the identity suite behind the `verify` CLI command.
//!
//! ```
//! use hyperlandau::gnbd::{mgf, pmf};
//! use hyperlandau::levy::lk_representation;
//! use hyperlandau::GnbdParams;
//! use num_complex::Complex64;
//!
//! let params = GnbdParams::unit(2.0, 0.05, 1)?;
//! let p = pmf(&params, None)?;
//! let g = mgf(&params, Complex64::new(0.5, 0.0))?;
//! let rep = lk_representation(&params, 1e-12)?;
//! assert!((p.power_series(Complex64::new(0.5, 0.0)) - g).norm() < 1e-12);
//! assert!((rep.cf(1.0) - hyperlandau::gnbd::cf(&params, 1.0)).norm() < 1e-9);
//! # Ok::<(), hyperlandau::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod decomposition;
pub mod error;
pub mod gnbd;
pub mod idd;
pub mod levy;
pub mod specialfn;
pub mod tolerances;
pub mod verify;

pub use decomposition::{BoundedMeasure, SignedAtomicMeasure};
pub use error::{Error, Result};
pub use gnbd::{GnbdParams, MandelReport, Regime, TruncatedPmf};
pub use idd::CompoundPoissonSpec;
pub use levy::LevyRepresentation;
pub use specialfn::{JacobiSpec, ZeroSet};
