//! Quasi-infinite divisibility of the GNBD: the non-vanishing threshold
//! `τ*`, the quantities `A_n` and `α(4A_n)`, the signed quasi-Lévy measures
//! `μ_n` and the Lévy–Khintchine representation of the characteristic
//! function.

use num_complex::Complex64;
use serde::Serialize;

use crate::decomposition::{neumaier, BoundedMeasure, SignedAtomicMeasure};
use crate::error::{domain, Error, Result};
use crate::gnbd::{cf, GnbdParams};
use crate::specialfn::{pochhammer, JacobiSpec, ZeroSet};

const MAX_SERIES_TERMS: u64 = 10_000_000;

/// Zeros of `P_m^{(2ν-2m-1, 0)}`.
pub fn lk_zeros(nu: f64, m: u32) -> Result<ZeroSet> {
    JacobiSpec::new(m, 2.0 * nu - 2.0 * f64::from(m) - 1.0, 0.0).zeros()
}

/// `(√2 - √(1-x_1))/(√2 + √(1-x_1))`, `x_1` the smallest zero.
pub fn tau_star(nu: f64, m: u32) -> Result<f64> {
    if m == 0 {
        return domain("tau_star needs m >= 1");
    }
    let s = (1.0 - lk_zeros(nu, m)?.smallest()).sqrt();
    let r2 = std::f64::consts::SQRT_2;
    Ok((r2 - s) / (r2 + s))
}

fn check_below_threshold(nu: f64, tau: f64, m: u32) -> Result<()> {
    if !(tau > 0.0 && tau < 1.0) {
        return domain(format!("tau must lie in (0, 1), got {tau}"));
    }
    if m > 0 {
        let ts = tau_star(nu, m)?;
        if tau >= ts {
            return domain(format!(
                "tau = {tau} is not below the threshold tau* = {ts}; the characteristic function may vanish"
            ));
        }
    }
    Ok(())
}

/// `A_n = τ(1-x_n)/((1+x_n)(1-τ)²)` for `n = 1..=m`.
pub fn a_coeffs(nu: f64, tau: f64, m: u32) -> Result<Vec<f64>> {
    check_below_threshold(nu, tau, m)?;
    if m == 0 {
        return Ok(Vec::new());
    }
    let scale = tau / ((1.0 - tau) * (1.0 - tau));
    Ok(lk_zeros(nu, m)?
        .zeros
        .iter()
        .map(|x| scale * (1.0 - x) / (1.0 + x))
        .collect())
}

/// `α(x) = x/(1+√(1-x))²` on `[0, 1]`.
pub fn alpha(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return domain(format!("alpha needs x in [0, 1], got {x}"));
    }
    let d = 1.0 + (1.0 - x).sqrt();
    Ok(x / (d * d))
}

/// `α(4A_n)` for `n = 1..=m`.
pub fn alphas(nu: f64, tau: f64, m: u32) -> Result<Vec<f64>> {
    a_coeffs(nu, tau, m)?
        .into_iter()
        .map(|a| alpha(4.0 * a))
        .collect()
}

/// Smallest `s_max ≥ 2` whose omitted `±s` pairs have total variation below
/// `tol`, together with that bound.
fn pair_cutoff(alphas: &[f64], tol: f64) -> (u32, f64) {
    let tail = |s: u32| -> f64 {
        let s1 = f64::from(s + 1);
        alphas
            .iter()
            .map(|&a| 2.0 * a.powf(s1) / (s1 * (1.0 - a)))
            .sum()
    };
    let mut s = 2;
    while tail(s) >= tol && s < u32::MAX / 2 {
        s += 1;
    }
    (s, tail(s))
}

/// `Σ_n Σ_{s ≤ s_max} w_s(α_n) [δ_s + δ_{-s}]` with `w_s = (-1)^{s+1} α^s/s`
/// when `signed`, `α^s/s` otherwise.
pub(crate) fn symmetric_measure(alphas: &[f64], tol: f64, signed: bool) -> BoundedMeasure {
    let mut measure = SignedAtomicMeasure::new();
    if alphas.is_empty() {
        return measure.into();
    }
    let (s_max, tail_bound) = pair_cutoff(alphas, tol);
    for &a in alphas {
        let mut pow = 1.0;
        for s in 1..=s_max {
            pow *= a;
            let w = pow / f64::from(s);
            let w = if signed && s % 2 == 0 { -w } else { w };
            measure.add_atom(i64::from(s), w);
            measure.add_atom(-i64::from(s), w);
        }
    }
    BoundedMeasure {
        measure,
        tail_bound,
    }
}

/// A single `μ = Σ_s (-1)^{s+1} α^s/s [δ_s + δ_{-s}]`, truncated to `tol`.
pub fn quasi_levy_component(alpha: f64, tol: f64) -> Result<BoundedMeasure> {
    if !(0.0..1.0).contains(&alpha) {
        return domain(format!("alpha must lie in [0, 1), got {alpha}"));
    }
    Ok(symmetric_measure(&[alpha], tol, true))
}

/// `Σ_{n=1}^m μ_n`, truncated so that the omitted total variation is below
/// `tol`.
pub fn quasi_levy_measure(nu: f64, tau: f64, m: u32, tol: f64) -> Result<BoundedMeasure> {
    Ok(symmetric_measure(&alphas(nu, tau, m)?, tol, true))
}

/// `c Σ_{j≥1} τ^j/j δ_j`, truncated with a geometric tail bound.
pub fn nb_measure(tau: f64, c: f64, tol: f64) -> BoundedMeasure {
    let mut measure = SignedAtomicMeasure::new();
    let mut pow = 1.0;
    let mut j = 0u32;
    loop {
        j += 1;
        pow *= tau;
        measure.add_atom(i64::from(j), c * pow / f64::from(j));
        let tail = c * pow * tau / (f64::from(j + 1) * (1.0 - tau));
        if tail < tol {
            return BoundedMeasure {
                measure,
                tail_bound: tail,
            };
        }
    }
}

/// `exp{i·drift·u + ∫(e^{iux} - 1) measure(dx)}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevyRepresentation {
    pub drift: i64,
    pub measure: SignedAtomicMeasure,
    /// Total variation of the omitted part of the measure.
    pub truncation_error: f64,
    /// Weight `c` in front of the negative binomial part `c Σ τ^j/j δ_j`.
    pub nb_constant: f64,
}

impl LevyRepresentation {
    pub fn exponent(&self, u: f64) -> Complex64 {
        let mut re = Vec::with_capacity(self.measure.len());
        let mut im = Vec::with_capacity(self.measure.len());
        for (x, w) in self.measure.atoms() {
            let t = u * x as f64;
            re.push(w * (t.cos() - 1.0));
            im.push(w * t.sin());
        }
        Complex64::new(neumaier(re), neumaier(im) + self.drift as f64 * u)
    }

    pub fn cf(&self, u: f64) -> Complex64 {
        self.exponent(u).exp()
    }
}

/// The representation with the negative binomial part weighted by `c`.
/// Only `c = 2ν` reproduces the characteristic function.
pub fn lk_representation_with_constant(
    params: &GnbdParams,
    c: f64,
    tol: f64,
) -> Result<LevyRepresentation> {
    if !params.is_unit_radius() {
        return domain("the Levy-Khintchine representation is stated for R = 1");
    }
    let (nu, tau, m) = (params.nu, params.tau, params.m);
    let nb = nb_measure(tau, c, tol / 2.0);
    let quasi = quasi_levy_measure(nu, tau, m, tol / 2.0)?;
    Ok(LevyRepresentation {
        drift: i64::from(m),
        measure: nb.measure.add(&quasi.measure),
        truncation_error: nb.tail_bound + quasi.tail_bound,
        nb_constant: c,
    })
}

pub fn lk_representation(params: &GnbdParams, tol: f64) -> Result<LevyRepresentation> {
    lk_representation_with_constant(params, 2.0 * params.nu, tol)
}

/// `(2ν-m)_m/m! Π_i (1 - (1-x_i)/2 · (1+τ²-2τ cos u)/(1-τ)²)`, the
/// characteristic function with the negative binomial factor and the phase
/// `e^{imu}` removed.
pub fn modulus_product(params: &GnbdParams, u: f64) -> Result<f64> {
    let (nu, tau, m) = (params.nu, params.tau, params.m);
    if m == 0 {
        return Ok(1.0);
    }
    let d = (1.0 + tau * tau - 2.0 * tau * u.cos()) / ((1.0 - tau) * (1.0 - tau));
    let front = pochhammer(2.0 * nu - f64::from(m), m) / pochhammer(1.0, m);
    Ok(lk_zeros(nu, m)?
        .zeros
        .iter()
        .fold(front, |acc, x| acc * (1.0 - 0.5 * (1.0 - x) * d)))
}

/// `(2ν-m)_m/m! Π_n (1+x_n)/2`, equal to one.
pub fn product_identity(nu: f64, m: u32) -> Result<f64> {
    let front = pochhammer(2.0 * nu - f64::from(m), m) / pochhammer(1.0, m);
    Ok(lk_zeros(nu, m)?
        .zeros
        .iter()
        .fold(front, |acc, x| acc * 0.5 * (1.0 + x)))
}

/// Outcome of [`cf_nonvanishing_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonVanishing {
    pub min_abs_cf: f64,
    pub attained_u: f64,
    /// `max_u |cf(u) / (NB(u) e^{imu}) - modulus_product(u)|` over the grid.
    pub modulus_max_deviation: f64,
}

/// Minimum of `|cf|` over a uniform grid on `[-π, π]`, refined by golden
/// section around the best grid point.
pub fn cf_nonvanishing_check(params: &GnbdParams, grid_size: usize) -> Result<NonVanishing> {
    if grid_size < 2 {
        return domain("grid_size must be at least 2");
    }
    let pi = std::f64::consts::PI;
    let h = 2.0 * pi / (grid_size - 1) as f64;
    let shape = params.shape();
    let nb = |u: f64| {
        let t = Complex64::new(params.tau, 0.0);
        ((1.0 - t) / (1.0 - t * Complex64::from_polar(1.0, u))).powf(shape)
    };
    let mut best = (f64::INFINITY, 0.0);
    let mut modulus_dev = 0.0f64;
    for i in 0..grid_size {
        let u = -pi + h * i as f64;
        let c = cf(params, u);
        if c.norm() < best.0 {
            best = (c.norm(), u);
        }
        if params.is_unit_radius() {
            let reduced = c / (nb(u) * Complex64::from_polar(1.0, u * f64::from(params.m)));
            modulus_dev = modulus_dev.max((reduced - modulus_product(params, u)?).norm());
        }
    }
    let f = |u: f64| cf(params, u).norm();
    let (mut lo, mut hi) = ((best.1 - h).max(-pi), (best.1 + h).min(pi));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut c, mut d) = (hi - g * (hi - lo), lo + g * (hi - lo));
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d);
        }
    }
    let refined = if fc < fd { (fc, c) } else { (fd, d) };
    let (min_abs_cf, attained_u) = if refined.0 < best.0 { refined } else { best };
    Ok(NonVanishing {
        min_abs_cf,
        attained_u,
        modulus_max_deviation: modulus_dev,
    })
}

/// A truncated series with a bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    pub terms: u64,
    pub tail_bound: f64,
}

fn check_a(a: f64) -> Result<()> {
    if !(0.0..0.25).contains(&a) {
        return domain(format!("series needs A in [0, 1/4), got {a}"));
    }
    Ok(())
}

/// `-Σ_{k≥1} binom(2k,k) A^k / k`.
pub fn central_binomial_series(a: f64, tol: f64) -> Result<SeriesValue> {
    check_a(a)?;
    let mut terms = Vec::new();
    let mut b = 1.0;
    let mut k = 0u64;
    loop {
        k += 1;
        let kf = k as f64;
        b *= 2.0 * (2.0 * kf - 1.0) / kf * a;
        let t = b / kf;
        terms.push(t);
        let tail = t * 4.0 * a / (1.0 - 4.0 * a);
        if tail < tol {
            return Ok(SeriesValue {
                value: -neumaier(terms),
                terms: k,
                tail_bound: tail,
            });
        }
        if k >= MAX_SERIES_TERMS {
            return Err(Error::Convergence {
                what: "central_binomial_series",
                residual: tail,
            });
        }
    }
}

/// `2 ln((1+√(1-4A))/2)`.
pub fn central_binomial_closed_form(a: f64) -> Result<f64> {
    check_a(a)?;
    Ok(2.0 * (0.5 * (1.0 + (1.0 - 4.0 * a).sqrt())).ln())
}

/// `Σ_{k≥s} binom(2k, k-s) A^k / k` for `s ≥ 1`.
pub fn shifted_binomial_series(a: f64, s: u32, tol: f64) -> Result<SeriesValue> {
    check_a(a)?;
    if s == 0 {
        return domain("shifted_binomial_series needs s >= 1");
    }
    let sf = f64::from(s);
    // binom(2s, 0) A^s at k = s.
    let mut b = a.powi(s as i32);
    let mut terms = vec![b / sf];
    let mut k = u64::from(s);
    // Past this index every term ratio is below 4A.
    let monotone_from = (4.0 * sf * sf - 4.0) / 6.0;
    loop {
        let kf = k as f64;
        b *= (2.0 * kf + 2.0) * (2.0 * kf + 1.0) / ((kf + 1.0 - sf) * (kf + 1.0 + sf)) * a;
        k += 1;
        let t = b / k as f64;
        terms.push(t);
        if k as f64 > monotone_from {
            let tail = t * 4.0 * a / (1.0 - 4.0 * a);
            if tail < tol {
                return Ok(SeriesValue {
                    value: neumaier(terms),
                    terms: k - u64::from(s) + 1,
                    tail_bound: tail,
                });
            }
        }
        if k >= MAX_SERIES_TERMS {
            return Err(Error::Convergence {
                what: "shifted_binomial_series",
                residual: t,
            });
        }
    }
}

/// `α(4A)^s / s`.
pub fn shifted_binomial_closed_form(a: f64, s: u32) -> Result<f64> {
    check_a(a)?;
    Ok(alpha(4.0 * a)?.powi(s as i32) / f64::from(s))
}

/// `2 ln(1 + α(4A))`, the mass of a single `μ_n`.
pub fn component_mass(a: f64) -> Result<f64> {
    check_a(a)?;
    Ok(2.0 * alpha(4.0 * a)?.ln_1p())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn threshold_example() {
        assert_relative_eq!(
            tau_star(2.0, 1).unwrap(),
            0.1010205144336438,
            max_relative = 1e-10
        );
        assert!(tau_star(2.0, 0).is_err());
        let ts = tau_star(5.5, 2).unwrap();
        assert!(ts > 0.0 && ts < 1.0);
    }

    #[test]
    fn a_and_alpha() {
        let a = a_coeffs(2.0, 0.05, 1).unwrap();
        assert_relative_eq!(a[0], 0.110803324099723, max_relative = 1e-12);
        assert!(a_coeffs(2.0, 0.2, 1).is_err());
        assert_eq!(alpha(0.0).unwrap(), 0.0);
        assert_eq!(alpha(1.0).unwrap(), 1.0);
        assert_relative_eq!(alpha(0.75).unwrap(), 1.0 / 3.0, max_relative = 1e-15);
        assert!(alpha(1.5).is_err());
    }

    #[test]
    fn component_atoms() {
        let mu = quasi_levy_component(1.0 / 3.0, 1e-12).unwrap().measure;
        assert_relative_eq!(mu.weight(1), 1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(mu.weight(-2), -1.0 / 18.0, max_relative = 1e-15);
        assert_relative_eq!(mu.weight(3), 1.0 / 81.0, max_relative = 1e-15);
        assert_eq!(mu.weight(0), 0.0);
    }

    #[test]
    fn nb_only_representation() {
        let p = GnbdParams::unit(2.0, 0.3, 0).unwrap();
        let rep = lk_representation(&p, 1e-13).unwrap();
        for i in 0..16 {
            let u = -3.0 + 0.4 * f64::from(i);
            assert!((rep.cf(u) - cf(&p, u)).norm() < 1e-10);
        }
        assert!(!rep.measure.has_negative_atom());
    }

    #[test]
    fn nonvanishing() {
        let p = GnbdParams::unit(2.0, 0.3, 0).unwrap();
        let nv = cf_nonvanishing_check(&p, 101).unwrap();
        assert_relative_eq!(nv.min_abs_cf, (0.7f64 / 1.3).powi(4), max_relative = 1e-10);
        let ts = tau_star(2.0, 1).unwrap();
        let above = GnbdParams::unit(2.0, ts * 1.000001, 1).unwrap();
        assert!(cf_nonvanishing_check(&above, 1001).unwrap().min_abs_cf < 1e-5);
        let below = GnbdParams::unit(2.0, 0.05, 1).unwrap();
        let nv = cf_nonvanishing_check(&below, 1001).unwrap();
        assert!(nv.min_abs_cf > 0.0);
        assert!(nv.modulus_max_deviation < 1e-10);
    }

    #[test]
    fn series_identities() {
        for &a in &[0.01, 0.1, 0.2, 0.249] {
            let s = central_binomial_series(a, 1e-13).unwrap();
            assert!((s.value - central_binomial_closed_form(a).unwrap()).abs() < 1e-10);
            for k in 1..=8 {
                let s = shifted_binomial_series(a, k, 1e-13).unwrap();
                assert!((s.value - shifted_binomial_closed_form(a, k).unwrap()).abs() < 1e-10);
            }
        }
    }
}
