//! The infinitely divisible law obtained by replacing the quasi-Lévy
//! measure of the GNBD with its total variation: a compound Poisson law
//! with integer drift `m`, together with exact samplers for its values and
//! for the ℤ-valued Lévy process it generates.

use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{weighted::WeightedAliasIndex, Distribution, Exp};
use serde::Serialize;

use crate::decomposition::{BoundedMeasure, SignedAtomicMeasure};
use crate::error::{domain, Error, Result};
use crate::levy::{alphas, lk_zeros, nb_measure, symmetric_measure, LevyRepresentation};
use crate::specialfn::pochhammer;

/// Above this many atoms jumps are drawn with the alias method.
const ALIAS_THRESHOLD: usize = 1000;

/// `2ν Σ_{j≥1} τ^j/j δ_j + Σ_n Σ_s α_n^s/s [δ_s + δ_{-s}]`, truncated so the
/// omitted mass is below `tol`.
pub fn total_variation_measure(nu: f64, tau: f64, m: u32, tol: f64) -> Result<BoundedMeasure> {
    let a = alphas(nu, tau, m)?;
    let nb = nb_measure(tau, 2.0 * nu, tol / 2.0);
    let sym = symmetric_measure(&a, tol / 2.0, false);
    Ok(BoundedMeasure {
        measure: nb.measure.add(&sym.measure),
        tail_bound: nb.tail_bound + sym.tail_bound,
    })
}

/// Total mass of [`total_variation_measure`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Intensity {
    /// `-2ν ln(1-τ) - 2 Σ_n ln(1-α_n)`.
    pub lambda: f64,
    /// The same with weight one on the negative binomial part.
    pub unit_weight_lambda: f64,
    pub nb_constant: f64,
}

pub fn intensity(nu: f64, tau: f64, m: u32) -> Result<Intensity> {
    let sym: f64 = alphas(nu, tau, m)?
        .iter()
        .map(|a| -2.0 * (-a).ln_1p())
        .sum();
    let nb = -(-tau).ln_1p();
    Ok(Intensity {
        lambda: 2.0 * nu * nb + sym,
        unit_weight_lambda: nb + sym,
        nb_constant: 2.0 * nu,
    })
}

/// The exponent `imu + ∫(e^{iux} - 1)|μ|(dx)` as a [`LevyRepresentation`].
pub fn id_representation(nu: f64, tau: f64, m: u32, tol: f64) -> Result<LevyRepresentation> {
    let tv = total_variation_measure(nu, tau, m, tol)?;
    Ok(LevyRepresentation {
        drift: i64::from(m),
        measure: tv.measure,
        truncation_error: tv.tail_bound,
        nb_constant: 2.0 * nu,
    })
}

/// Characteristic function of the infinitely divisible law, from its
/// exponent.
pub fn id_cf(nu: f64, tau: f64, m: u32, u: f64) -> Result<Complex64> {
    Ok(id_representation(nu, tau, m, 1e-15)?.cf(u))
}

fn nb_cf(nu: f64, tau: f64, m: u32, u: f64) -> Complex64 {
    let t = Complex64::new(tau, 0.0);
    ((1.0 - t) / (1.0 - t * Complex64::from_polar(1.0, u))).powf(2.0 * nu)
        * Complex64::from_polar(1.0, u * f64::from(m))
}

/// `((1-τ)/(1-τe^{iu}))^{2ν} e^{imu} Π_n (1-α_n)²/(1+α_n²-2α_n cos u)`.
pub fn id_cf_closed_form(nu: f64, tau: f64, m: u32, u: f64) -> Result<Complex64> {
    let prod: f64 = alphas(nu, tau, m)?
        .iter()
        .map(|a| (1.0 - a) * (1.0 - a) / (1.0 + a * a - 2.0 * a * u.cos()))
        .product();
    Ok(nb_cf(nu, tau, m, u) * prod)
}

/// `((1-τ)/(1-τe^{iu}))^{2ν} e^{imu} m!/(2ν-m)_m
/// Π_n (1 - (1-x_n)/2 · (1+τ²+2τ cos u)/(1-τ)²)^{-1}`.
pub fn id_cf_zeros_form(nu: f64, tau: f64, m: u32, u: f64) -> Result<Complex64> {
    alphas(nu, tau, m)?;
    let d = (1.0 + tau * tau + 2.0 * tau * u.cos()) / ((1.0 - tau) * (1.0 - tau));
    let front = pochhammer(1.0, m) / pochhammer(2.0 * nu - f64::from(m), m);
    let prod = if m == 0 {
        1.0
    } else {
        lk_zeros(nu, m)?
            .zeros
            .iter()
            .fold(front, |acc, x| acc / (1.0 - 0.5 * (1.0 - x) * d))
    };
    Ok(nb_cf(nu, tau, m, u) * prod)
}

/// `Π_n (1-α_n)²/(1+α_n)²`, the ratio of [`id_cf`] to [`id_cf_zeros_form`].
pub fn id_ratio_constant(nu: f64, tau: f64, m: u32) -> Result<f64> {
    Ok(alphas(nu, tau, m)?
        .iter()
        .map(|a| ((1.0 - a) / (1.0 + a)).powi(2))
        .product())
}

/// Compound Poisson law with integer drift: `drift + Σ_{i≤N} J_i`,
/// `N ~ Poisson(λ)`, `J_i ~ jump_pmf`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompoundPoissonSpec {
    pub lambda: f64,
    pub jump_pmf: SignedAtomicMeasure,
    pub drift: i64,
    /// Mass omitted from the jump intensity by truncation.
    pub truncation_error: f64,
}

impl CompoundPoissonSpec {
    /// Normalizes a nonnegative Lévy measure without atom at 0.
    pub fn from_representation(rep: &LevyRepresentation) -> Result<Self> {
        if rep.measure.has_negative_atom() {
            return domain("a compound Poisson law needs a nonnegative jump measure");
        }
        if rep.measure.weight(0) != 0.0 {
            return domain("the jump measure must not charge 0");
        }
        let lambda = rep.measure.total_mass();
        if !(lambda > 0.0) {
            return domain("the jump measure has zero mass");
        }
        Ok(Self {
            lambda,
            jump_pmf: rep.measure.scale(1.0 / lambda),
            drift: rep.drift,
            truncation_error: rep.truncation_error,
        })
    }

    pub fn from_gnbd(nu: f64, tau: f64, m: u32, tol: f64) -> Result<Self> {
        Self::from_representation(&id_representation(nu, tau, m, tol)?)
    }

    /// `exp{t (i·drift·u + λ(φ(u) - 1))}`, `φ` the jump CF.
    pub fn cf_at(&self, u: f64, t: f64) -> Complex64 {
        let phi = self.jump_pmf.fourier(u);
        (t * (Complex64::new(0.0, self.drift as f64 * u) + self.lambda * (phi - 1.0))).exp()
    }

    pub fn cf(&self, u: f64) -> Complex64 {
        self.cf_at(u, 1.0)
    }

    /// CF of the `n`-th root law: intensity `λ/n`, drift `drift/n`.
    pub fn nth_root_cf(&self, u: f64, n: u32) -> Complex64 {
        self.cf_at(u, 1.0 / f64::from(n))
    }

    pub fn mean(&self) -> f64 {
        let jump_mean: f64 = self.jump_pmf.atoms().map(|(k, w)| k as f64 * w).sum();
        self.drift as f64 + self.lambda * jump_mean
    }

    pub fn sampler(&self, seed: u64, stream: u64) -> Result<CompoundPoissonSampler> {
        CompoundPoissonSampler::new(self, seed, stream)
    }
}

/// Value of the process at a fixed time, split into its two parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompoundDraw {
    pub jumps_sum: i64,
    pub drift_accrual: f64,
}

impl CompoundDraw {
    pub fn value(&self) -> f64 {
        self.jumps_sum as f64 + self.drift_accrual
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathPoint {
    pub time: f64,
    pub jumps_sum: i64,
    pub drift_accrual: f64,
    pub value: f64,
}

enum JumpTable {
    Cdf(Vec<f64>),
    Alias(WeightedAliasIndex<f64>),
}

/// Seeded sampler; one ChaCha8 stream per `(seed, stream)` pair.
pub struct CompoundPoissonSampler {
    rng: ChaCha8Rng,
    interarrival: Exp<f64>,
    support: Vec<i64>,
    table: JumpTable,
    drift: f64,
}

impl CompoundPoissonSampler {
    pub fn new(spec: &CompoundPoissonSpec, seed: u64, stream: u64) -> Result<Self> {
        let interarrival =
            Exp::new(spec.lambda).map_err(|e| Error::Domain(format!("invalid intensity: {e}")))?;
        let (support, weights): (Vec<i64>, Vec<f64>) = spec.jump_pmf.atoms().unzip();
        if support.is_empty() {
            return domain("empty jump distribution");
        }
        let table = if support.len() > ALIAS_THRESHOLD {
            JumpTable::Alias(
                WeightedAliasIndex::new(weights)
                    .map_err(|e| Error::Domain(format!("invalid jump weights: {e}")))?,
            )
        } else {
            let mut acc = 0.0;
            let mut cdf: Vec<f64> = weights
                .iter()
                .map(|w| {
                    acc += w;
                    acc
                })
                .collect();
            let total = acc;
            cdf.iter_mut().for_each(|c| *c /= total);
            JumpTable::Cdf(cdf)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Ok(Self {
            rng,
            interarrival,
            support,
            table,
            drift: spec.drift as f64,
        })
    }

    fn jump(&mut self) -> i64 {
        let i = match &self.table {
            JumpTable::Cdf(cdf) => {
                let u: f64 = self.rng.random();
                cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
            }
            JumpTable::Alias(alias) => alias.sample(&mut self.rng),
        };
        self.support[i]
    }

    /// Visits every jump time up to `horizon` with the running jump sum.
    fn run(&mut self, horizon: f64, mut visit: impl FnMut(f64, i64)) -> i64 {
        let mut t = 0.0;
        let mut sum = 0i64;
        loop {
            t += self.interarrival.sample(&mut self.rng);
            if t > horizon {
                return sum;
            }
            sum += self.jump();
            visit(t, sum);
        }
    }

    /// The process at time `t`, drift `m·t` included.
    pub fn sample(&mut self, t: f64) -> CompoundDraw {
        let jumps_sum = self.run(t, |_, _| {});
        CompoundDraw {
            jumps_sum,
            drift_accrual: self.drift * t,
        }
    }

    /// The path on `[0, horizon]` observed at every jump time and at the
    /// `n_steps + 1` grid points `k·horizon/n_steps`, in time order.
    pub fn path(&mut self, horizon: f64, n_steps: usize) -> Vec<PathPoint> {
        let mut jumps = Vec::new();
        self.run(horizon, |t, s| jumps.push((t, s)));
        let drift = self.drift;
        let point = |time: f64, jumps_sum: i64| PathPoint {
            time,
            jumps_sum,
            drift_accrual: drift * time,
            value: jumps_sum as f64 + drift * time,
        };
        let steps = n_steps.max(1);
        let mut out = Vec::with_capacity(jumps.len() + steps + 1);
        let mut next = 0;
        let mut current = 0;
        for k in 0..=steps {
            let time = horizon * k as f64 / steps as f64;
            while next < jumps.len() && jumps[next].0 <= time {
                current = jumps[next].1;
                out.push(point(jumps[next].0, current));
                next += 1;
            }
            out.push(point(time, current));
        }
        out
    }
}

/// One draw at time `t` from stream 0 of `seed`.
pub fn sample_compound_poisson(
    spec: &CompoundPoissonSpec,
    t: f64,
    seed: u64,
) -> Result<CompoundDraw> {
    Ok(spec.sampler(seed, 0)?.sample(t))
}

/// Path from stream 0 of `seed`.
pub fn simulate_path(
    spec: &CompoundPoissonSpec,
    horizon: f64,
    n_steps: usize,
    seed: u64,
) -> Result<Vec<PathPoint>> {
    if !(horizon > 0.0) {
        return domain(format!("horizon must be positive, got {horizon}"));
    }
    Ok(spec.sampler(seed, 0)?.path(horizon, n_steps))
}

/// CSV with columns `time,jumps_sum,drift_accrual,value`.
pub fn write_path_csv<W: Write>(points: &[PathPoint], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["time", "jumps_sum", "drift_accrual", "value"])?;
    for p in points {
        w.write_record([
            format!("{:.16e}", p.time),
            p.jumps_sum.to_string(),
            format!("{:.16e}", p.drift_accrual),
            format!("{:.16e}", p.value),
        ])?;
    }
    w.flush()
}
