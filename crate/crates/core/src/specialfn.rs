//! Special functions: log-gamma, Pochhammer symbols, generalized binomial
//! coefficients, Jacobi and Laguerre polynomials, Jacobi zeros and
//! terminating hypergeometric polynomials.
//!
//! Jacobi polynomials are evaluated in double-double arithmetic. Both the
//! binomial sum and the terminating `2F1` representation are alternating
//! sums whose cancellation can exceed `1e15` once `a, b` reach a few tens,
//! which is more than plain `f64` can absorb. Near interior zeros with large
//! parameters even double-double is not enough; there the running error
//! bound triggers an exact rational re-evaluation.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use twofloat::TwoFloat;

use crate::error::{domain, Error, Result};
use crate::tolerances;

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("log_gamma requires x > 0, got {x}"));
    }
    Ok(libm::lgamma(x))
}

/// `ln Γ(x)` without the domain check; callers guarantee `x > 0`.
pub(crate) fn lgamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    libm::lgamma(x)
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`, with `(x)_0 = 1`.
///
/// Negative integers terminate: `(-n)_k = 0` for `k > n`.
pub fn pochhammer(x: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        let f = x + f64::from(i);
        if f == 0.0 {
            return 0.0;
        }
        acc *= f;
    }
    acc
}

/// Generalized binomial coefficient `x (x-1) ... (x-k+1) / k!`.
pub fn gen_binomial(x: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        let f = f64::from(i);
        acc *= (x - f) / (f + 1.0);
    }
    acc
}

/// Relative residual of the Legendre duplication formula
/// `√π Γ(2x+1) = 2^{2x} Γ(x+1/2) Γ(x+1)`, evaluated through `log_gamma`.
pub fn duplication_check(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return domain(format!("duplication_check requires x > 0, got {x}"));
    }
    let ln_sqrt_pi = 0.5 * std::f64::consts::PI.ln();
    let rhs = 2.0 * x * std::f64::consts::LN_2 + log_gamma(x + 0.5)? + log_gamma(x + 1.0)?;
    let lhs = ln_sqrt_pi + log_gamma(2.0 * x + 1.0)?;
    Ok((rhs - lhs).exp_m1().abs())
}

/// Degree and parameters of a Jacobi polynomial `P_n^{(a,b)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiSpec {
    pub n: u32,
    pub a: f64,
    pub b: f64,
}

/// Increasingly ordered zeros of an orthogonal-regime Jacobi polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    pub zeros: Vec<f64>,
    pub degree: u32,
    /// `max_i |P(x_i)| / |lc|`, `lc` the leading coefficient.
    pub residual_bound: f64,
}

fn tf(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

fn to_f64(x: TwoFloat) -> f64 {
    x.hi() + x.lo()
}

/// Double-double quotient by long division. The `TwoFloat / TwoFloat`
/// operator loses the low word of the divisor's reciprocal residual.
fn dd_div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    tf(q1) + q2 + q3
}

/// Common power-of-two scale `2^s` turning every listed `f64` into an integer.
struct Dyadic {
    shift: u32,
}

impl Dyadic {
    fn covering(values: &[f64]) -> Self {
        let shift = values
            .iter()
            .map(|&v| {
                if v == 0.0 {
                    return 0;
                }
                let bits = v.to_bits();
                let raw_exp = ((bits >> 52) & 0x7ff) as i32;
                let mut mant = bits & ((1u64 << 52) - 1);
                let mut exp = if raw_exp == 0 { -1074 } else { raw_exp - 1075 };
                if raw_exp != 0 {
                    mant |= 1u64 << 52;
                }
                let tz = mant.trailing_zeros() as i32;
                exp += tz;
                (-exp).max(0) as u32
            })
            .max()
            .unwrap_or(0);
        Self { shift }
    }

    /// `v * 2^shift`, exactly.
    fn int(&self, v: f64) -> BigInt {
        let r = BigRational::from_float(v).expect("finite input")
            * BigRational::from_integer(BigInt::one() << self.shift);
        debug_assert!(r.is_integer());
        r.to_integer()
    }

    fn unit(&self) -> BigInt {
        BigInt::one() << self.shift
    }
}

fn ratio_to_f64(num: BigInt, den: BigInt) -> f64 {
    BigRational::new(num, den).to_f64().unwrap_or(f64::NAN)
}

fn big_factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn big_binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// True when a double-double sum of `terms` terms with absolute scale
/// `scale` may carry a relative error above `EXACT_TRIGGER`.
fn needs_exact(value: TwoFloat, scale: f64, terms: u32) -> bool {
    let bound = scale * 8.0 * f64::from(terms + 1) * 2f64.powi(-104);
    bound > EXACT_TRIGGER * to_f64(value).abs()
}

const EXACT_TRIGGER: f64 = 1e-14;

impl JacobiSpec {
    pub fn new(n: u32, a: f64, b: f64) -> Self {
        Self { n, a, b }
    }

    /// `binom(n + p, i)` for `i = 0..=n`, in double-double.
    fn binomial_row(&self, p: f64) -> Vec<TwoFloat> {
        let n = self.n as usize;
        let top = tf(p) + f64::from(self.n);
        let mut row = Vec::with_capacity(n + 1);
        let mut c = tf(1.0);
        row.push(c);
        for i in 0..n {
            c = c * (top - i as f64) / (i as f64 + 1.0);
            row.push(c);
        }
        row
    }

    /// Binomial-sum evaluation together with the sum of absolute terms.
    fn eval_sum_dd(&self, x: f64) -> (TwoFloat, f64) {
        let n = self.n as usize;
        let ca = self.binomial_row(self.a);
        let cb = self.binomial_row(self.b);
        let u = (tf(x) - 1.0) / 2.0;
        let v = (tf(x) + 1.0) / 2.0;
        let mut upow = vec![tf(1.0); n + 1];
        let mut vpow = vec![tf(1.0); n + 1];
        for i in 1..=n {
            upow[i] = upow[i - 1] * u;
            vpow[i] = vpow[i - 1] * v;
        }
        let mut sum = tf(0.0);
        let mut abs = 0.0;
        for k in 0..=n {
            let term = ca[k] * cb[n - k] * upow[n - k] * vpow[k];
            abs += to_f64(term).abs();
            sum += term;
        }
        (sum, abs)
    }

    /// `P_n^{(a,b)}(x)` from the binomial sum
    /// `Σ_k binom(n+a,k) binom(n+b,n-k) ((x-1)/2)^{n-k} ((x+1)/2)^k`.
    ///
    /// Valid for every real `a, b`, including negative integers.
    pub fn eval(&self, x: f64) -> f64 {
        let (sum, scale) = self.eval_sum_dd(x);
        if needs_exact(sum, scale, self.n) {
            return self.eval_sum_exact(x);
        }
        to_f64(sum)
    }

    /// Exact binomial sum, scaled to integers:
    /// `n! (2D)^n D^n P = Σ_k binom(n,k) Π_{i<k}(D(n+a-i)) Π_{i<n-k}(D(n+b-i))
    /// (D(x-1))^{n-k} (D(x+1))^k` with `D = 2^s`.
    fn eval_sum_exact(&self, x: f64) -> f64 {
        let n = self.n;
        let d = Dyadic::covering(&[self.a, self.b, x]);
        let unit = d.unit();
        let top_a = d.int(self.a) + &unit * BigInt::from(n);
        let top_b = d.int(self.b) + &unit * BigInt::from(n);
        let xi = d.int(x);
        let u = &xi - &unit;
        let v = &xi + &unit;
        let falling = |top: &BigInt, len: u32| {
            (0..len).fold(BigInt::one(), |acc, i| {
                acc * (top - &unit * BigInt::from(i))
            })
        };
        let mut sum = BigInt::zero();
        for k in 0..=n {
            sum += big_binomial(n, k)
                * falling(&top_a, k)
                * falling(&top_b, n - k)
                * num_traits::pow(u.clone(), (n - k) as usize)
                * num_traits::pow(v.clone(), k as usize);
        }
        let den = big_factorial(n)
            * num_traits::pow(unit.clone() * BigInt::from(2), n as usize)
            * num_traits::pow(unit, n as usize);
        ratio_to_f64(sum, den)
    }

    /// Sum of the absolute values of the binomial-sum terms at `x`; the
    /// scale against which cancellation in [`JacobiSpec::eval`] is measured.
    pub fn term_scale(&self, x: f64) -> f64 {
        self.eval_sum_dd(x).1
    }

    /// `P_n^{(a,b)}(x)` from `(a+1)_n/n! 2F1(-n, n+a+b+1; a+1; (1-x)/2)`.
    ///
    /// For `x < 0` the series in `(1-x)/2` cancels catastrophically once `a`
    /// is large, so the reflected series `(-1)^n (b+1)_n/n! 2F1(-n,
    /// n+a+b+1; b+1; (1+x)/2)` is summed instead. Fails when the bottom
    /// parameter of the series used reaches zero before termination.
    pub fn eval_hypergeometric(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            let reflected = JacobiSpec::new(self.n, self.b, self.a).hypergeometric_series(-x)?;
            return Ok(if self.n.is_multiple_of(2) {
                reflected
            } else {
                -reflected
            });
        }
        self.hypergeometric_series(x)
    }

    fn hypergeometric_series(&self, x: f64) -> Result<f64> {
        let n = self.n;
        let a1 = tf(self.a) + 1.0;
        let top = tf(self.a) + self.b + f64::from(n) + 1.0;
        let y = (tf(1.0) - x) / 2.0;
        let mut term = tf(1.0);
        let mut sum = tf(1.0);
        let mut abs = 1.0;
        let mut prefactor = tf(1.0);
        for k in 0..n {
            let kf = f64::from(k);
            let den = a1 + kf;
            if to_f64(den) == 0.0 {
                return domain(format!(
                    "hypergeometric Jacobi route undefined for a = {}",
                    self.a
                ));
            }
            term = dd_div(term * (kf - f64::from(n)) * (top + kf), den * (kf + 1.0)) * y;
            sum += term;
            abs += to_f64(term).abs();
            prefactor = prefactor * den / (kf + 1.0);
        }
        if needs_exact(sum, abs, n) {
            return Ok(self.hypergeometric_exact(x));
        }
        Ok(to_f64(prefactor * sum))
    }

    /// Exact series, scaled to integers:
    /// `n! D^n (2D)^n P = Σ_k binom(n,k) (-1)^k Π_{i<k}(D(n+a+b+1+i))
    /// Π_{i<n-k}(D(a+1+k+i)) (D(1-x))^k (2D)^{n-k}` with `D = 2^s`.
    fn hypergeometric_exact(&self, x: f64) -> f64 {
        let n = self.n;
        let d = Dyadic::covering(&[self.a, self.b, x]);
        let unit = d.unit();
        let ai = d.int(self.a);
        let top = &ai + d.int(self.b) + &unit * BigInt::from(n + 1);
        let a1 = &ai + &unit;
        let y = &unit - d.int(x);
        let two_unit = &unit * BigInt::from(2);
        let mut sum = BigInt::zero();
        for k in 0..=n {
            let rising_top = (0..k).fold(BigInt::one(), |acc, i| {
                acc * (&top + &unit * BigInt::from(i))
            });
            let rising_a = (0..n - k).fold(BigInt::one(), |acc, i| {
                acc * (&a1 + &unit * BigInt::from(k + i))
            });
            let term = big_binomial(n, k)
                * rising_top
                * rising_a
                * num_traits::pow(y.clone(), k as usize)
                * num_traits::pow(two_unit.clone(), (n - k) as usize);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        let den = big_factorial(n)
            * num_traits::pow(unit, n as usize)
            * num_traits::pow(two_unit, n as usize);
        ratio_to_f64(sum, den)
    }

    /// `d/dx P_n^{(a,b)}(x) = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}(x)`.
    pub fn derivative(&self, x: f64) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        let lower = JacobiSpec::new(self.n - 1, self.a + 1.0, self.b + 1.0);
        0.5 * (f64::from(self.n) + self.a + self.b + 1.0) * lower.eval(x)
    }

    /// Leading coefficient `(n+a+b+1)_n / (2^n n!)`.
    pub fn leading_coefficient(&self) -> f64 {
        let base = f64::from(self.n) + self.a + self.b + 1.0;
        (0..self.n).fold(1.0, |acc, i| {
            acc * (base + f64::from(i)) / (2.0 * (f64::from(i) + 1.0))
        })
    }

    /// Binomial-sum evaluation at a complex argument.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let n = self.n as usize;
        let ca = self.binomial_row(self.a);
        let cb = self.binomial_row(self.b);
        let u = (z - 1.0) * 0.5;
        let v = (z + 1.0) * 0.5;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..=n {
            let coeff = to_f64(ca[k] * cb[n - k]);
            sum += coeff * u.powu((n - k) as u32) * v.powu(k as u32);
        }
        sum
    }

    /// Zeros by eigenvalues of the symmetric recurrence matrix, each
    /// polished by one Newton step.
    pub fn zeros(&self) -> Result<ZeroSet> {
        let (n, a, b) = (self.n, self.a, self.b);
        if !(a > -1.0) || !(b > -1.0) {
            return domain(format!(
                "Jacobi zeros require a, b > -1, got a = {a}, b = {b}"
            ));
        }
        if n == 0 {
            return domain("Jacobi zeros require degree n >= 1");
        }
        let size = n as usize;
        let mut mat = DMatrix::<f64>::zeros(size, size);
        let ab = a + b;
        for i in 0..size {
            let k = i as f64;
            let s = 2.0 * k + ab;
            mat[(i, i)] = if i == 0 {
                (b - a) / (ab + 2.0)
            } else {
                (b * b - a * a) / (s * (s + 2.0))
            };
            if i + 1 < size {
                let k1 = k + 1.0;
                let s1 = 2.0 * k1 + ab;
                let sq = if i == 0 {
                    4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
                } else {
                    4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + ab) / (s1 * s1 * (s1 + 1.0) * (s1 - 1.0))
                };
                let off = sq.sqrt();
                mat[(i, i + 1)] = off;
                mat[(i + 1, i)] = off;
            }
        }
        let mut zeros: Vec<f64> = SymmetricEigen::new(mat)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        zeros.sort_by(|x, y| x.total_cmp(y));

        let lc = self.leading_coefficient().abs();
        let mut residual_bound: f64 = 0.0;
        for z in zeros.iter_mut() {
            let step = self.eval(*z) / self.derivative(*z);
            if !step.is_finite() || step.abs() > tolerances::ZERO_NEWTON_STEP {
                return Err(Error::Convergence {
                    what: "jacobi_zeros",
                    residual: step.abs(),
                });
            }
            *z -= step;
            residual_bound = residual_bound.max(self.eval(*z).abs() / lc);
        }
        if zeros.windows(2).any(|w| w[0] >= w[1]) || zeros.iter().any(|z| z.abs() >= 1.0) {
            return Err(Error::Convergence {
                what: "jacobi_zeros",
                residual: residual_bound,
            });
        }
        Ok(ZeroSet {
            zeros,
            degree: n,
            residual_bound,
        })
    }
}

impl ZeroSet {
    /// Product form `lc Π (x - x_i)` for the polynomial the zeros came from.
    pub fn product_form(&self, spec: &JacobiSpec, x: f64) -> f64 {
        self.zeros
            .iter()
            .fold(spec.leading_coefficient(), |acc, z| acc * (x - z))
    }

    /// Smallest zero.
    pub fn smallest(&self) -> f64 {
        self.zeros[0]
    }
}

/// `P_n^{(a,b)}(x)`, see [`JacobiSpec::eval`].
pub fn jacobi_eval(spec: &JacobiSpec, x: f64) -> f64 {
    spec.eval(x)
}

/// Zeros of `P_n^{(a,b)}`, see [`JacobiSpec::zeros`].
pub fn jacobi_zeros(spec: &JacobiSpec) -> Result<ZeroSet> {
    spec.zeros()
}

/// Generalized Laguerre polynomial
/// `L_n^{(a)}(x) = (a+1)_n/n! 1F1(-n; a+1; x) = (a+1)_n/n! Σ_k binom(n,k) (-x)^k / (a+1)_k`.
pub fn laguerre_eval(n: u32, a: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = f64::from(k);
        term *= (f64::from(n) - kf) / (kf + 1.0) * (-x) / (a + 1.0 + kf);
        sum += term;
    }
    pochhammer(a + 1.0, n) / (1..=n).fold(1.0, |acc, i| acc * f64::from(i)) * sum
}

/// Terminating hypergeometric polynomial `pFq(upper; lower; x)` summed by
/// forward recurrence on the term ratio. `upper[0] = -n` must be a
/// nonpositive integer; the sum has exactly `n + 1` terms.
pub fn hyp_poly(upper: &[f64], lower: &[f64], x: f64) -> Result<f64> {
    let first = *upper.first().ok_or_else(|| {
        Error::Domain("hypergeometric polynomial needs an upper parameter".into())
    })?;
    if first > 0.0 || first.fract() != 0.0 {
        return domain(format!(
            "first upper parameter must be a nonpositive integer, got {first}"
        ));
    }
    let terms = (-first) as u32;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..terms {
        let kf = f64::from(k);
        let mut ratio = x / (kf + 1.0);
        for p in upper {
            ratio *= p + kf;
        }
        for q in lower {
            let d = q + kf;
            if d == 0.0 {
                return domain(format!(
                    "lower parameter {q} reaches zero before the series terminates"
                ));
            }
            ratio /= d;
        }
        term *= ratio;
        sum += term;
    }
    Ok(sum)
}

/// Terminating `3F2(k_minus_m, p2, p3; q1, q2; x)`.
pub fn hyp_poly_3f2(k_minus_m: i32, p2: f64, p3: f64, q1: f64, q2: f64, x: f64) -> Result<f64> {
    if k_minus_m > 0 {
        return domain(format!(
            "first parameter must be nonpositive, got {k_minus_m}"
        ));
    }
    hyp_poly(&[f64::from(k_minus_m), p2, p3], &[q1, q2], x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn log_gamma_values() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_relative_eq!(log_gamma(5.0).unwrap(), 24f64.ln(), max_relative = 1e-15);
        assert_relative_eq!(
            log_gamma(0.5).unwrap(),
            0.5723649429247001,
            max_relative = 1e-15
        );
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-2.5).is_err());
    }

    #[test]
    fn pochhammer_rules() {
        assert_eq!(pochhammer(3.0, 0), 1.0);
        assert_eq!(pochhammer(-3.0, 2), 6.0);
        assert_eq!(pochhammer(-3.0, 3), -6.0);
        assert_eq!(pochhammer(-3.0, 5), 0.0);
        assert_eq!(pochhammer(1.0, 5), 120.0);
    }

    #[test]
    fn binomials() {
        assert_eq!(gen_binomial(4.0, 2), 6.0);
        assert_eq!(gen_binomial(-7.3, 0), 1.0);
        assert_relative_eq!(gen_binomial(2.5, 2), 1.875, max_relative = 1e-15);
        // binom(x, k) = (-1)^k (-x)_k / k!
        for &x in &[2.5, -1.25, 7.0, 0.3] {
            for k in 0..8u32 {
                let fact: f64 = (1..=k).map(f64::from).product();
                let via_poch = (-1f64).powi(k as i32) * pochhammer(-x, k) / fact;
                assert_relative_eq!(
                    gen_binomial(x, k),
                    via_poch,
                    max_relative = 1e-13,
                    epsilon = 1e-15
                );
            }
        }
    }

    #[test]
    fn duplication() {
        assert!(duplication_check(1.0).unwrap() < 1e-13);
        assert!(duplication_check(0.5).unwrap() < 1e-13);
        assert!(duplication_check(10.0).unwrap() < 1e-12);
        assert!(duplication_check(0.0).is_err());
    }

    #[test]
    fn jacobi_low_degree() {
        let s = JacobiSpec::new(0, 3.2, -0.4);
        assert_eq!(s.eval(0.7), 1.0);
        for &(a, b, x) in &[(1.0, 0.0, 0.3), (2.5, 7.0, -1.7), (-0.5, 0.5, 1.9)] {
            let p1 = JacobiSpec::new(1, a, b).eval(x);
            assert_relative_eq!(
                p1,
                (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0,
                max_relative = 1e-14
            );
        }
        assert_relative_eq!(
            JacobiSpec::new(2, 0.0, 0.0).eval(1.0),
            1.0,
            max_relative = 1e-15
        );
        // Legendre P_2 = (3x^2 - 1)/2
        assert_relative_eq!(
            JacobiSpec::new(2, 0.0, 0.0).eval(0.4),
            (3.0 * 0.16 - 1.0) / 2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn jacobi_derivative_matches_finite_difference() {
        let s = JacobiSpec::new(6, 1.5, 0.25);
        for &x in &[-0.8, -0.1, 0.45, 0.9] {
            let h = 1e-5;
            let fd = (s.eval(x + h) - s.eval(x - h)) / (2.0 * h);
            assert_relative_eq!(s.derivative(x), fd, max_relative = 1e-8);
        }
    }

    #[test]
    fn hypergeometric_route_rejects_degenerate_a() {
        assert!(JacobiSpec::new(3, -2.0, 1.0)
            .eval_hypergeometric(0.2)
            .is_err());
        assert!(JacobiSpec::new(3, 1.0, -3.0)
            .eval_hypergeometric(-0.2)
            .is_err());
    }

    #[test]
    fn zeros_small_cases() {
        let z = JacobiSpec::new(1, 1.0, 0.0).zeros().unwrap();
        assert_relative_eq!(z.zeros[0], -1.0 / 3.0, max_relative = 1e-14);
        let nu: f64 = 2.0;
        let z = JacobiSpec::new(1, 2.0 * nu - 3.0, 0.0).zeros().unwrap();
        assert_relative_eq!(z.smallest(), -1.0 / 3.0, max_relative = 1e-14);
        let z = JacobiSpec::new(2, 0.0, 0.0).zeros().unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert_relative_eq!(z.zeros[0], -r, max_relative = 1e-14);
        assert_relative_eq!(z.zeros[1], r, max_relative = 1e-14);
        assert_eq!(z.degree, 2);
    }

    #[test]
    fn zeros_domain_errors() {
        assert!(matches!(
            JacobiSpec::new(3, -1.0, 0.0).zeros(),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            JacobiSpec::new(3, 0.0, -1.5).zeros(),
            Err(Error::Domain(_))
        ));
        assert!(JacobiSpec::new(0, 0.0, 0.0).zeros().is_err());
    }

    #[test]
    fn laguerre() {
        assert_eq!(laguerre_eval(0, 0.7, 3.0), 1.0);
        for &x in &[-2.0, 0.0, 0.5, 4.0] {
            assert_relative_eq!(
                laguerre_eval(1, 0.0, x),
                1.0 - x,
                max_relative = 1e-15,
                epsilon = 1e-15
            );
        }
        for m in 0..8 {
            assert_relative_eq!(laguerre_eval(m, 0.0, 0.0), 1.0, max_relative = 1e-15);
        }
        // L_2^{(0)}(x) = 1 - 2x + x^2/2
        assert_relative_eq!(
            laguerre_eval(2, 0.0, 1.5),
            1.0 - 3.0 + 1.125,
            max_relative = 1e-14
        );
        // L_2^{(a)}(x) = (a+1)(a+2)/2 - (a+2)x + x^2/2
        let (a, x) = (1.5, 0.7);
        assert_relative_eq!(
            laguerre_eval(2, a, x),
            (a + 1.0) * (a + 2.0) / 2.0 - (a + 2.0) * x + x * x / 2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn hypergeometric_polynomials() {
        assert_eq!(hyp_poly_3f2(0, 1.3, 2.0, 0.5, 4.0, 9.0).unwrap(), 1.0);
        assert_eq!(hyp_poly_3f2(-4, 1.3, 2.0, 0.5, 4.0, 0.0).unwrap(), 1.0);
        let (p2, p3, q1, q2, x) = (1.3, -2.2, 0.7, 4.5, 0.35);
        assert_relative_eq!(
            hyp_poly_3f2(-1, p2, p3, q1, q2, x).unwrap(),
            1.0 - p2 * p3 * x / (q1 * q2),
            max_relative = 1e-15
        );
        assert!(hyp_poly_3f2(-3, 1.0, 1.0, -1.0, 2.0, 0.5).is_err());
        assert!(hyp_poly_3f2(2, 1.0, 1.0, 1.0, 2.0, 0.5).is_err());
    }
}
