//! Atomic decomposition of the GNBD (unit radius) as the negative binomial
//! law with shape `2ν` convolved with a finite signed measure supported on
//! `{0, …, 2m}`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::gnbd::{pmf, GnbdParams, TruncatedPmf};
use crate::specialfn::{gen_binomial, hyp_poly, pochhammer};

const ZERO_ATOM: f64 = 1e-300;

/// Finitely supported signed measure on the integers.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SignedAtomicMeasure {
    atoms: BTreeMap<i64, f64>,
}

impl SignedAtomicMeasure {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dirac(at: i64) -> Self {
        let mut m = Self::new();
        m.add_atom(at, 1.0);
        m
    }

    /// Adds `w` to the atom at `at`, dropping it if the result is negligible.
    pub fn add_atom(&mut self, at: i64, w: f64) {
        let entry = self.atoms.entry(at).or_insert(0.0);
        *entry += w;
        if entry.abs() < ZERO_ATOM {
            self.atoms.remove(&at);
        }
    }

    pub fn weight(&self, at: i64) -> f64 {
        self.atoms.get(&at).copied().unwrap_or(0.0)
    }

    pub fn atoms(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.atoms.iter().map(|(&k, &w)| (k, w))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        neumaier(self.atoms.values().copied())
    }

    pub fn total_variation(&self) -> f64 {
        neumaier(self.atoms.values().map(|w| w.abs()))
    }

    /// `|μ|`, the total variation measure.
    pub fn abs(&self) -> Self {
        Self {
            atoms: self.atoms.iter().map(|(&k, &w)| (k, w.abs())).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = Self::new();
        for (k, w) in self.atoms() {
            out.add_atom(k, c * w);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, w) in other.atoms() {
            out.add_atom(k, w);
        }
        out
    }

    /// `μ ⋆ δ_by`.
    pub fn shift(&self, by: i64) -> Self {
        Self {
            atoms: self.atoms.iter().map(|(&k, &w)| (k + by, w)).collect(),
        }
    }

    pub fn convolve(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (i, a) in self.atoms() {
            for (j, b) in other.atoms() {
                out.add_atom(i + j, a * b);
            }
        }
        out
    }

    /// `Σ_k w_k e^{iuk}`.
    pub fn fourier(&self, u: f64) -> Complex64 {
        self.atoms()
            .map(|(k, w)| Complex64::from_polar(w, u * k as f64))
            .sum()
    }

    pub fn has_negative_atom(&self) -> bool {
        self.atoms.values().any(|&w| w < 0.0)
    }

    pub fn min_support(&self) -> Option<i64> {
        self.atoms.keys().next().copied()
    }

    pub fn max_support(&self) -> Option<i64> {
        self.atoms.keys().next_back().copied()
    }
}

/// A signed measure known up to an error measure of total variation at most
/// `tail_bound`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundedMeasure {
    pub measure: SignedAtomicMeasure,
    pub tail_bound: f64,
}

impl From<&TruncatedPmf> for BoundedMeasure {
    fn from(p: &TruncatedPmf) -> Self {
        let mut measure = SignedAtomicMeasure::new();
        for (j, &w) in p.weights.iter().enumerate() {
            measure.add_atom(j as i64, w);
        }
        Self {
            measure,
            tail_bound: p.tail_bound,
        }
    }
}

impl From<SignedAtomicMeasure> for BoundedMeasure {
    fn from(measure: SignedAtomicMeasure) -> Self {
        Self {
            measure,
            tail_bound: 0.0,
        }
    }
}

/// `a ⋆ b`; the error of `a` is carried as `‖b‖_TV · tail(a)`.
pub fn convolve(a: &BoundedMeasure, b: &SignedAtomicMeasure) -> BoundedMeasure {
    BoundedMeasure {
        measure: a.measure.convolve(b),
        tail_bound: b.total_variation() * a.tail_bound,
    }
}

pub(crate) fn neumaier(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

fn check_order(nu: f64, m: u32, k: u32) -> Result<()> {
    if k > m {
        return domain(format!("Q_k needs k <= m, got k = {k}, m = {m}"));
    }
    if !(2.0 * nu > 2.0 * f64::from(m)) {
        return domain(format!(
            "decomposition needs 2nu > 2m, got nu = {nu}, m = {m}"
        ));
    }
    Ok(())
}

/// `Q_k^{(ν,m)}(x) = (-1)^k Σ_{j=k}^m binom(2ν-m-1, j) binom(m, j)
/// binom(2j, j-k) (-x)^j`.
pub fn q_poly(nu: f64, m: u32, k: u32, x: f64) -> Result<f64> {
    check_order(nu, m, k)?;
    let top = 2.0 * nu - f64::from(m) - 1.0;
    let terms = (k..=m).map(|j| {
        gen_binomial(top, j)
            * gen_binomial(f64::from(m), j)
            * gen_binomial(f64::from(2 * j), j - k)
            * (-x).powi(j as i32)
    });
    let s = neumaier(terms);
    Ok(if k.is_multiple_of(2) { s } else { -s })
}

/// `Q_k` through `binom(m,k) (m+1-2ν)_k/k! (-x)^k
/// ₃F₂(k-m, m+k+1-2ν, k+1/2; k+1, 2k+1; -4x)`.
pub fn q_poly_hypergeometric(nu: f64, m: u32, k: u32, x: f64) -> Result<f64> {
    check_order(nu, m, k)?;
    let (mf, kf) = (f64::from(m), f64::from(k));
    let front = gen_binomial(mf, k) * pochhammer(mf + 1.0 - 2.0 * nu, k) / pochhammer(1.0, k)
        * (-x).powi(k as i32);
    let series = hyp_poly(
        &[kf - mf, mf + kf + 1.0 - 2.0 * nu, kf + 0.5],
        &[kf + 1.0, 2.0 * kf + 1.0],
        -4.0 * x,
    )?;
    Ok(front * series)
}

/// `Σ_{k=0}^{2m} Q_{|k-m|}(τ/(1-τ)²) δ_k`.
pub fn decomposition_measure(nu: f64, m: u32, tau: f64) -> Result<SignedAtomicMeasure> {
    check_order(nu, m, 0)?;
    if !(tau > 0.0 && tau < 1.0) {
        return domain(format!("tau must lie in (0, 1), got {tau}"));
    }
    let x = tau / ((1.0 - tau) * (1.0 - tau));
    let mut out = SignedAtomicMeasure::new();
    for k in 0..=m {
        let q = q_poly(nu, m, k, x)?;
        out.add_atom(i64::from(m) + i64::from(k), q);
        if k > 0 {
            out.add_atom(i64::from(m) - i64::from(k), q);
        }
    }
    Ok(out)
}

/// The negative binomial factor: shape `2ν`, truncated like [`pmf`].
pub fn nbd_part(nu: f64, tau: f64, j_max: Option<usize>) -> Result<TruncatedPmf> {
    pmf(&GnbdParams::unit(nu, tau, 0)?, j_max)
}

/// `NBD(2ν, τ) ⋆ decomposition_measure(ν, m, τ)` restricted to `0..=j_max`,
/// with the tail error of the NBD factor propagated.
pub fn reconstruct_pmf(params: &GnbdParams, j_max: usize) -> Result<BoundedMeasure> {
    if !params.is_unit_radius() {
        return domain("the decomposition is defined for R = 1");
    }
    let nbd = nbd_part(params.nu, params.tau, Some(j_max))?;
    let signed = decomposition_measure(params.nu, params.m, params.tau)?;
    Ok(convolve(&BoundedMeasure::from(&nbd), &signed))
}

/// `e^{ium} Σ_j binom(2ν-m-1, j) binom(m, j) (-4τ/(1-τ)²)^j sin^{2j}(u/2)`,
/// the Fourier transform of [`decomposition_measure`] in product form.
pub fn sine_power_transform(nu: f64, m: u32, tau: f64, u: f64) -> Result<Complex64> {
    check_order(nu, m, 0)?;
    let top = 2.0 * nu - f64::from(m) - 1.0;
    let y = -4.0 * tau / ((1.0 - tau) * (1.0 - tau)) * (u / 2.0).sin().powi(2);
    let s = neumaier(
        (0..=m).map(|j| gen_binomial(top, j) * gen_binomial(f64::from(m), j) * y.powi(j as i32)),
    );
    Ok(Complex64::from_polar(s, u * f64::from(m)))
}
