//! Numerical tolerances shared by the library, the verification report and
//! the acceptance tests. Every threshold lives here so CI has a single knob.

use serde::{Deserialize, Serialize};

/// Relative accuracy of `log_gamma` on `[0.5, 1e6]`.
pub const LOG_GAMMA_REL: f64 = 1e-13;
/// Legendre duplication residual for moderate arguments.
pub const DUPLICATION: f64 = 1e-13;
/// Legendre duplication residual for larger arguments (x around 10).
pub const DUPLICATION_LARGE: f64 = 1e-12;
/// Agreement between the sum and hypergeometric Jacobi evaluation routes.
pub const JACOBI_ROUTES_REL: f64 = 1e-11;
/// Jacobi symmetry `P(a,b)(x) = (-1)^n P(b,a)(-x)`.
pub const JACOBI_SYMMETRY_REL: f64 = 1e-11;
/// Jacobi index-swap transformation.
pub const INDEX_SWAP_REL: f64 = 1e-10;
/// Product form rebuilt from zeros versus direct evaluation.
pub const ZERO_RECONSTRUCTION_REL: f64 = 1e-9;
/// Newton step size above which a polished zero counts as unconverged.
pub const ZERO_NEWTON_STEP: f64 = 1e-8;

/// Total mass of a truncated pmf plus its tail bound.
pub const NORMALIZATION: f64 = 1e-9;
/// Round-off below which a negative weight is clipped to zero.
pub const NEGATIVE_WEIGHT_CLIP: f64 = 1e-14;
/// Auto-truncation target for a single omitted pmf weight.
pub const PMF_TAIL_TARGET: f64 = 1e-15;
/// Closed-form MGF against the truncated power series.
pub const MGF_SERIES_ABS: f64 = 1e-10;
/// Switch to the finite-sum MGF when `|xi - tau| |1 - tau xi|` is below this.
pub const MGF_SINGULARITY_RADIUS: f64 = 1e-6;
/// Closed-form moments against pmf summation.
pub const MOMENTS_REL: f64 = 1e-8;
/// Band around `q = 0` classified as Poissonian.
pub const MANDEL_Q: f64 = 1e-12;
/// `q` evaluated at the critical intensity.
pub const MANDEL_BOUNDARY: f64 = 1e-10;
/// Bilinear generating function partial sums.
pub const BILINEAR_GENERATING: f64 = 1e-8;
/// Vanishing of the `j < m` cross terms of the MGF derivation.
pub const LOW_INDEX_CANCELLATION: f64 = 1e-10;

/// Convolution `NBD * decomposition measure` against the pmf.
pub const DECOMPOSITION_ABS: f64 = 1e-10;
/// Fourier transform of the decomposition measure versus the sine-power sum.
pub const LINEARIZATION_ABS: f64 = 1e-11;
/// Hypergeometric form of `Q_k` against the direct sum.
pub const Q_HYPERGEOMETRIC_REL: f64 = 1e-10;

/// Series identities for the quasi-Levy measure weights.
pub const LEVY_SERIES: f64 = 1e-10;
/// Total mass of a quasi-Levy measure against its closed form.
pub const LEVY_MASS: f64 = 1e-12;
/// Product identity over the shifted Jacobi zeros.
pub const PRODUCT_IDENTITY: f64 = 1e-12;
/// Lévy-Khintchine exponent reproducing the characteristic function.
pub const LK_REPRODUCTION: f64 = 1e-8;
/// Real product form of the CF modulus.
pub const MODULUS_PRODUCT: f64 = 1e-10;
/// Default truncation tolerance for atomic Lévy measures.
pub const LEVY_TRUNCATION: f64 = 1e-12;

/// `id_cf / id_cf_zeros_form` constant in `u`.
pub const ID_RATIO_CONSTANT: f64 = 1e-9;
/// n-th root exponent raised to the n-th power.
pub const DIVISIBILITY: f64 = 1e-10;
/// Per-factor log-series closed form.
pub const ID_FACTOR: f64 = 1e-10;
/// Normalization of the jump law.
pub const JUMP_PMF_MASS: f64 = 1e-12;

/// Runtime-adjustable subset of the tolerances, used by `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub normalization: f64,
    pub mgf_series: f64,
    pub decomposition: f64,
    pub levy_series: f64,
    pub product_identity: f64,
    pub lk_reproduction: f64,
    pub id_ratio: f64,
    pub divisibility: f64,
    pub truncation: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            normalization: NORMALIZATION,
            mgf_series: MGF_SERIES_ABS,
            decomposition: DECOMPOSITION_ABS,
            levy_series: LEVY_SERIES,
            product_identity: PRODUCT_IDENTITY,
            lk_reproduction: LK_REPRODUCTION,
            id_ratio: ID_RATIO_CONSTANT,
            divisibility: DIVISIBILITY,
            truncation: LEVY_TRUNCATION,
        }
    }
}
