//! The generalized negative binomial distribution attached to the `m`-th
//! hyperbolic Landau level of a disc of radius `R`.
//!
//! Everything depends on the radius only through the shape `N = 2 ν R²`
//! and the intensity `τ = |z|²/R²`; formulas written for `R = 1` carry over
//! with `ν` replaced by `ν R²`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::specialfn::{gen_binomial, lgamma, JacobiSpec};
use crate::tolerances;

/// Parameters `(ν, τ, m, R)` of a GNBD.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GnbdParams {
    pub nu: f64,
    pub tau: f64,
    pub m: u32,
    pub r: f64,
}

impl GnbdParams {
    /// Validated constructor: `2νR² > 1`, `0 < τ < 1`, `m ≤ ⌊νR² - 1/2⌋`.
    pub fn new(nu: f64, tau: f64, m: u32, r: f64) -> Result<Self> {
        if !(nu > 0.0) || !nu.is_finite() {
            return domain(format!("nu must be positive, got {nu}"));
        }
        if !(r > 0.0) || !r.is_finite() {
            return domain(format!("radius must be positive, got {r}"));
        }
        if !(tau > 0.0 && tau < 1.0) {
            return domain(format!("tau must lie in (0, 1), got {tau}"));
        }
        let scaled = nu * r * r;
        if !(2.0 * scaled > 1.0) {
            return domain(format!("2 nu R^2 must exceed 1, got {}", 2.0 * scaled));
        }
        let m_max = (scaled - 0.5).floor();
        if f64::from(m) > m_max {
            return domain(format!(
                "Landau level m = {m} exceeds floor(nu R^2 - 1/2) = {m_max}"
            ));
        }
        Ok(Self { nu, tau, m, r })
    }

    /// Unit-radius parameters.
    pub fn unit(nu: f64, tau: f64, m: u32) -> Result<Self> {
        Self::new(nu, tau, m, 1.0)
    }

    /// Shape `N = 2 ν R²`.
    pub fn shape(&self) -> f64 {
        2.0 * self.nu * self.r * self.r
    }

    /// Second Jacobi parameter `N - 2m - 1 ≥ 0`.
    pub fn beta(&self) -> f64 {
        self.shape() - 2.0 * f64::from(self.m) - 1.0
    }

    pub fn is_unit_radius(&self) -> bool {
        self.r == 1.0
    }

    /// `τ / (1 - τ)²`, the variable of the perturbation polynomials.
    pub fn perturbation_variable(&self) -> f64 {
        self.tau / ((1.0 - self.tau) * (1.0 - self.tau))
    }

    /// Single pmf weight `p_j`.
    pub fn weight(&self, j: u64) -> f64 {
        let m = u64::from(self.m);
        let n_shape = self.shape();
        let mf = f64::from(self.m);
        let jf = j as f64;
        let (degree, a, ln_gamma_j) = if j <= m {
            let ln = lgamma(jf + 1.0) + lgamma(n_shape - mf)
                - lgamma(mf + 1.0)
                - lgamma(n_shape - 2.0 * mf + jf);
            (j as u32, (m - j) as f64, ln)
        } else {
            let ln = lgamma(mf + 1.0) + lgamma(n_shape - 2.0 * mf + jf)
                - lgamma(jf + 1.0)
                - lgamma(n_shape - mf);
            (self.m, (j - m) as f64, ln)
        };
        let gap = (jf - mf).abs();
        let ln_pref = ln_gamma_j + (n_shape - 2.0 * mf) * (-self.tau).ln_1p() + gap * self.tau.ln();
        let p = JacobiSpec::new(degree, a, self.beta()).eval(1.0 - 2.0 * self.tau);
        let w = ln_pref.exp() * p * p;
        if w < 0.0 && w > -tolerances::NEGATIVE_WEIGHT_CLIP {
            0.0
        } else {
            w
        }
    }
}

/// Hyperbolic Landau level `ε_m = 4m(2ν - m - 1)`.
pub fn landau_level(nu: f64, m: u32) -> Result<f64> {
    if !(2.0 * nu > 1.0) {
        return domain(format!(
            "discrete spectrum requires 2 nu > 1, got nu = {nu}"
        ));
    }
    let m_max = (nu - 0.5).floor();
    if f64::from(m) > m_max {
        return domain(format!("m = {m} exceeds floor(nu - 1/2) = {m_max}"));
    }
    let mf = f64::from(m);
    Ok(4.0 * mf * (2.0 * nu - mf - 1.0))
}

/// Nonnegative weights on `{0, ..., j_max}` with a bound on the omitted mass.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncatedPmf {
    pub weights: Vec<f64>,
    pub tail_bound: f64,
}

impl TruncatedPmf {
    pub fn j_max(&self) -> usize {
        self.weights.len().saturating_sub(1)
    }

    pub fn get(&self, j: usize) -> f64 {
        self.weights.get(j).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `Σ_j ξ^j p_j` over the stored weights.
    pub fn power_series(&self, xi: Complex64) -> Complex64 {
        self.weights
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &w| acc * xi + w)
    }

    /// Mean and variance of the stored weights.
    pub fn moments(&self) -> (f64, f64) {
        let (mut s1, mut s2) = (0.0, 0.0);
        for (j, w) in self.weights.iter().enumerate() {
            let jf = j as f64;
            s1 += jf * w;
            s2 += jf * jf * w;
        }
        (s1, s2 - s1 * s1)
    }
}

/// Running state of the geometric tail certificate.
struct TailWatch {
    ratio_cap: f64,
    confirmations: u32,
    previous: Option<f64>,
}

impl TailWatch {
    fn new(tau: f64) -> Self {
        Self {
            ratio_cap: tau.sqrt(),
            confirmations: 0,
            previous: None,
        }
    }

    /// Feed `p_j`; returns true once three consecutive weights are below the
    /// target and decay at least geometrically with ratio `√τ`.
    fn observe(&mut self, w: f64, past_mode: bool) -> bool {
        let small = w / (1.0 - self.ratio_cap) < tolerances::PMF_TAIL_TARGET;
        let decaying = match self.previous {
            Some(p) => p == 0.0 && w == 0.0 || w <= self.ratio_cap * p,
            None => false,
        };
        self.previous = Some(w);
        if past_mode && small && decaying {
            self.confirmations += 1;
        } else {
            self.confirmations = 0;
        }
        self.confirmations >= 3
    }

    fn bound(&self, w: f64) -> f64 {
        w * self.ratio_cap / (1.0 - self.ratio_cap)
    }
}

const MAX_TERMS: u64 = 50_000_000;

/// The GNBD pmf. With `j_max = None` the support is cut where the geometric
/// tail certificate first holds; with `Some(j)` the weights stop at `j` and
/// the omitted mass is bounded by summing forward until the certificate
/// holds.
pub fn pmf(params: &GnbdParams, j_max: Option<usize>) -> Result<TruncatedPmf> {
    let m = u64::from(params.m);
    let mut watch = TailWatch::new(params.tau);
    let mut weights = Vec::new();
    let mut j: u64 = 0;
    match j_max {
        None => loop {
            let w = params.weight(j);
            weights.push(w);
            if watch.observe(w, j > m) {
                return Ok(TruncatedPmf {
                    tail_bound: watch.bound(w),
                    weights,
                });
            }
            j += 1;
            if j > MAX_TERMS {
                return Err(Error::Convergence {
                    what: "pmf auto-truncation",
                    residual: w,
                });
            }
        },
        Some(cut) => {
            for j in 0..=cut as u64 {
                let w = params.weight(j);
                watch.observe(w, j > m);
                weights.push(w);
            }
            let mut extra = 0.0;
            let mut j = cut as u64 + 1;
            loop {
                let w = params.weight(j);
                extra += w;
                if watch.observe(w, j > m) {
                    return Ok(TruncatedPmf {
                        weights,
                        tail_bound: extra + watch.bound(w),
                    });
                }
                j += 1;
                if j > MAX_TERMS {
                    return Err(Error::Convergence {
                        what: "pmf tail certificate",
                        residual: w,
                    });
                }
            }
        }
    }
}

fn nbd_factor(params: &GnbdParams, xi: Complex64) -> Complex64 {
    let tau = params.tau;
    let log = Complex64::new((-tau).ln_1p(), 0.0) - (Complex64::new(1.0, 0.0) - tau * xi).ln();
    (params.shape() * log).exp()
}

fn check_disc(xi: Complex64) -> Result<()> {
    if !(xi.norm() <= 1.0 + 1e-14) {
        return domain(format!("mgf requires |xi| <= 1, got |xi| = {}", xi.norm()));
    }
    Ok(())
}

/// Closed form
/// `((1-τ)/(1-τξ))^N ((τ-ξ)(1-τξ)/(1-τ)²)^m P_m^{(N-2m-1,0)}(1 + 2ξ(1-τ)²/((τ-ξ)(1-τξ)))`.
/// Undefined at `ξ = τ`.
pub fn mgf_closed_form(params: &GnbdParams, xi: Complex64) -> Result<Complex64> {
    check_disc(xi)?;
    let nbd = nbd_factor(params, xi);
    if params.m == 0 {
        return Ok(nbd);
    }
    let tau = params.tau;
    let w = (tau - xi) * (1.0 - tau * xi) / ((1.0 - tau) * (1.0 - tau));
    if w.norm() == 0.0 {
        return domain("closed-form mgf is singular at xi = tau");
    }
    let jac = JacobiSpec::new(params.m, params.beta(), 0.0);
    let arg = 1.0 + 2.0 * xi / w;
    Ok(nbd * w.powu(params.m) * jac.eval_complex(arg))
}

/// Singularity-free expansion
/// `((1-τ)/(1-τξ))^N Σ_j binom(N-m-1, j) binom(m, j) x^j ξ^{m-j} (1-ξ)^{2j}`,
/// with `x = τ/(1-τ)²`.
pub fn mgf_finite_sum(params: &GnbdParams, xi: Complex64) -> Result<Complex64> {
    check_disc(xi)?;
    let nbd = nbd_factor(params, xi);
    let m = params.m;
    let x = params.perturbation_variable();
    let top = params.shape() - f64::from(m) - 1.0;
    let one_minus_sq = (1.0 - xi) * (1.0 - xi);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..=m {
        let c = gen_binomial(top, j) * gen_binomial(f64::from(m), j) * x.powi(j as i32);
        sum += c * xi.powu(m - j) * one_minus_sq.powu(j);
    }
    Ok(nbd * sum)
}

/// Moment generating function `G(ξ) = Σ_j ξ^j p_j` on the closed unit disc.
pub fn mgf(params: &GnbdParams, xi: Complex64) -> Result<Complex64> {
    check_disc(xi)?;
    let tau = params.tau;
    let near = (xi - tau).norm() * (1.0 - tau * xi).norm() < tolerances::MGF_SINGULARITY_RADIUS;
    if params.m > 0 && near {
        mgf_finite_sum(params, xi)
    } else {
        mgf_closed_form(params, xi)
    }
}

/// Characteristic function `u ↦ G(e^{iu})`.
pub fn cf(params: &GnbdParams, u: f64) -> Complex64 {
    let xi = Complex64::from_polar(1.0, u);
    mgf(params, xi).expect("unit circle lies in the closed disc")
}

/// Mean and variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

/// Closed-form moments: `E = Nτ/(1-τ) + m`,
/// `Var = τ (N + 2m(N - m - 1)) / (1-τ)²`.
pub fn moments(params: &GnbdParams) -> Moments {
    let n_shape = params.shape();
    let tau = params.tau;
    let mf = f64::from(params.m);
    Moments {
        mean: n_shape * tau / (1.0 - tau) + mf,
        variance: tau * (n_shape + 2.0 * mf * (n_shape - mf - 1.0)) / ((1.0 - tau) * (1.0 - tau)),
    }
}

/// Photon-counting regime by the sign of the Mandel parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    SubPoissonian,
    Poissonian,
    SuperPoissonian,
}

impl Regime {
    pub fn classify(q: f64) -> Self {
        if q < -tolerances::MANDEL_Q {
            Regime::SubPoissonian
        } else if q > tolerances::MANDEL_Q {
            Regime::SuperPoissonian
        } else {
            Regime::Poissonian
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MandelReport {
    pub mean: f64,
    pub variance: f64,
    pub q: f64,
    /// Critical intensity where `q` changes sign.
    pub tau_crit: f64,
    /// Anti-bunching radius `√τ_crit` in the `|z|` variable.
    pub rho: f64,
    pub regime: Regime,
}

/// Mandel parameter `Var/E - 1` from the closed-form moments; any radius.
pub fn mandel_q(params: &GnbdParams) -> f64 {
    let mo = moments(params);
    mo.variance / mo.mean - 1.0
}

/// Positive root of `(2ν-m)τ² + 2m(2ν-m)τ - m`, i.e.
/// `√(m² + m/(2ν-m)) - m`, in a cancellation-free form.
pub fn tau_crit(nu: f64, m: u32) -> Result<f64> {
    let mf = f64::from(m);
    let c = 2.0 * nu - mf;
    if !(c > 0.0) {
        return domain(format!(
            "critical intensity needs 2 nu > m, got nu = {nu}, m = {m}"
        ));
    }
    if m == 0 {
        return Ok(0.0);
    }
    let ratio = mf / c;
    Ok(ratio / (mf + (mf * mf + ratio).sqrt()))
}

/// Numerator `(2ν-m)τ² + 2m(2ν-m)τ - m` of the Mandel parameter (`R = 1`).
pub fn mandel_numerator(nu: f64, m: u32, tau: f64) -> f64 {
    let mf = f64::from(m);
    let c = 2.0 * nu - mf;
    c * tau * tau + 2.0 * mf * c * tau - mf
}

/// Mandel report for unit-radius parameters.
pub fn mandel(params: &GnbdParams) -> Result<MandelReport> {
    if !params.is_unit_radius() {
        return domain("the anti-bunching radius is defined for R = 1 only; use mandel_q");
    }
    let mo = moments(params);
    let q = mo.variance / mo.mean - 1.0;
    let tau_crit = tau_crit(params.nu, params.m)?;
    Ok(MandelReport {
        mean: mo.mean,
        variance: mo.variance,
        q,
        tau_crit,
        rho: tau_crit.sqrt(),
        regime: Regime::classify(q),
    })
}

/// MGF of the flat-limit generalized Poisson law with `λ = 2ν|z|²`:
/// `e^{λ(ξ-1)} Σ_j binom(m,j)/j! λ^j ξ^{m-j} (1-ξ)^{2j}`, which is
/// `e^{λ(ξ-1)} ξ^m L_m^{(0)}(-λ(1-ξ)²/ξ)` written without the division.
pub fn generalized_poisson_mgf(nu: f64, z_abs: f64, m: u32, xi: Complex64) -> Complex64 {
    let lambda = 2.0 * nu * z_abs * z_abs;
    let one_minus_sq = (1.0 - xi) * (1.0 - xi);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut coeff = 1.0;
    for j in 0..=m {
        if j > 0 {
            let jf = f64::from(j);
            coeff *= (f64::from(m) - jf + 1.0) / jf * lambda / jf;
        }
        sum += coeff * xi.powu(m - j) * one_minus_sq.powu(j);
    }
    (lambda * (xi - 1.0)).exp() * sum
}

/// Gap between the GNBD MGF at radius `R` (with `τ = |z|²/R²`) and its flat
/// limit, for each radius in `r_values`.
pub fn contraction_limit_check(
    nu: f64,
    z_abs: f64,
    m: u32,
    xi: Complex64,
    r_values: &[f64],
) -> Result<Vec<f64>> {
    if xi.norm() == 0.0 {
        return domain("contraction check requires xi != 0");
    }
    let target = generalized_poisson_mgf(nu, z_abs, m, xi);
    r_values
        .iter()
        .map(|&r| {
            let params = GnbdParams::new(nu, z_abs * z_abs / (r * r), m, r)?;
            Ok((mgf(&params, xi)? - target).norm())
        })
        .collect()
}
