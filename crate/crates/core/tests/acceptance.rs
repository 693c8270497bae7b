//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::time::{Duration, Instant};

use hyperlandau::decomposition::reconstruct_pmf;
use hyperlandau::gnbd::{cf, contraction_limit_check, mandel_q, mgf, pmf, tau_crit};
use hyperlandau::idd::{id_cf, id_cf_zeros_form, id_ratio_constant, id_representation};
use hyperlandau::levy::{
    alpha, central_binomial_closed_form, central_binomial_series, component_mass,
    lk_representation, lk_representation_with_constant, product_identity, quasi_levy_component,
    shifted_binomial_closed_form, shifted_binomial_series, tau_star,
};
use hyperlandau::tolerances as tol;
use hyperlandau::{CompoundPoissonSpec, GnbdParams, JacobiSpec};
use num_complex::Complex64;

type Outcome = Result<String, String>;

fn pi() -> f64 {
    std::f64::consts::PI
}

fn u_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| -pi() + 2.0 * pi() * i as f64 / (n - 1) as f64)
        .collect()
}

fn ci_grid() -> Vec<GnbdParams> {
    let mut out = Vec::new();
    for &r in &[1.0f64, 3.0] {
        for &nu in &[1.0, 2.0, 5.5] {
            for &tau in &[0.05, 0.3, 0.7] {
                let cap = (nu * r * r - 0.5).floor().min(4.0) as u32;
                for m in 0..=cap {
                    out.push(GnbdParams::new(nu, tau, m, r).expect("grid cell is valid"));
                }
            }
        }
    }
    out
}

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn normalization() -> Outcome {
    let mut worst = 0.0f64;
    let grid = ci_grid();
    for p in &grid {
        let w = pmf(p, None).map_err(|e| e.to_string())?;
        worst = worst.max((w.total() - 1.0).abs());
    }
    ensure(
        worst <= tol::NORMALIZATION,
        format!("max |sum p_j - 1| = {worst:.2e} over {} cells", grid.len()),
    )
}

fn mgf_series() -> Outcome {
    let mut worst = 0.0f64;
    let points: Vec<Complex64> = [0.3, 0.6, 0.9, 1.0]
        .iter()
        .flat_map(|&r| [0.4, 1.9, pi(), 4.5].map(|t| Complex64::from_polar(r, t)))
        .collect();
    for p in &ci_grid() {
        let w = pmf(p, None).map_err(|e| e.to_string())?;
        for &xi in &points {
            let closed = mgf(p, xi).map_err(|e| e.to_string())?;
            worst = worst.max((closed - w.power_series(xi)).norm());
        }
    }
    ensure(
        worst <= tol::MGF_SERIES_ABS,
        format!("max |closed form - series| = {worst:.2e} at 16 points per cell"),
    )
}

fn mandel_regimes() -> Outcome {
    let mut worst = 0.0f64;
    for &nu in &[2.0, 3.5, 5.5] {
        let max_m = (nu - 0.5f64).floor() as u32;
        for m in 1..=max_m {
            let tc = tau_crit(nu, m).map_err(|e| e.to_string())?;
            let q = |tau: f64| mandel_q(&GnbdParams::unit(nu, tau, m).unwrap());
            worst = worst.max(q(tc).abs());
            if !(q(tc * 0.999) < 0.0 && q(tc * 1.001) > 0.0) {
                return Err(format!(
                    "no sign flip across tau_crit for nu = {nu}, m = {m}"
                ));
            }
        }
    }
    let curve: Vec<f64> = (0..=5).map(|m| tau_crit(5.5, m).unwrap()).collect();
    let increasing = curve.windows(2).all(|w| w[0] < w[1]);
    ensure(
        worst <= tol::MANDEL_BOUNDARY && increasing,
        format!(
            "max |q(tau_crit)| = {worst:.2e}; sign flips; tau_crit(5.5, 0..5) increasing = {increasing}"
        ),
    )
}

fn decomposition() -> Outcome {
    let mut worst = 0.0f64;
    let mut cells = 0;
    for &nu in &[2.0, 3.5, 5.5] {
        for m in 1..=3u32 {
            if 2.0 * nu <= 2.0 * f64::from(m) || GnbdParams::unit(nu, 0.3, m).is_err() {
                continue;
            }
            for &tau in &[0.05, 0.3, 0.6] {
                let p = GnbdParams::unit(nu, tau, m).unwrap();
                let w = pmf(&p, None).map_err(|e| e.to_string())?;
                let rec = reconstruct_pmf(&p, w.j_max()).map_err(|e| e.to_string())?;
                for (j, x) in w.weights.iter().enumerate() {
                    worst = worst.max((rec.measure.weight(j as i64) - x).abs());
                }
                cells += 1;
            }
        }
    }
    ensure(
        worst <= tol::DECOMPOSITION_ABS,
        format!("max |NBD(2nu) * measure - pmf| = {worst:.2e} over {cells} cells; NBD shape = 2nu"),
    )
}

fn jacobi() -> Outcome {
    let params = [-0.5, 0.0, 0.5, 3.0, 7.5, 20.0, 50.0];
    let mut routes = 0.0f64;
    for n in 0..=30 {
        for &a in &params {
            for &b in &params {
                let s = JacobiSpec::new(n, a, b);
                for i in 0..=40 {
                    let x = -2.0 + 0.1 * f64::from(i);
                    let d = s.eval(x);
                    let h = s.eval_hypergeometric(x).map_err(|e| e.to_string())?;
                    let scale = d.abs().max(h.abs());
                    if scale > 0.0 {
                        routes = routes.max((d - h).abs() / scale);
                    }
                }
            }
        }
    }
    let mut recon = 0.0f64;
    for n in 1..=20 {
        for &(a, b) in &[
            (0.0, 0.0),
            (0.5, 0.0),
            (3.0, 0.0),
            (7.5, 3.0),
            (20.0, 0.5),
            (50.0, 0.0),
        ] {
            let s = JacobiSpec::new(n, a, b);
            let z = s.zeros().map_err(|e| e.to_string())?;
            let mut probes: Vec<f64> = z.zeros.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
            probes.extend([-1.0, 1.0, 0.5 * (z.zeros[0] - 1.0), 1.3]);
            for x in probes {
                let v = s.eval(x);
                recon = recon.max((z.product_form(&s, x) - v).abs() / v.abs());
            }
        }
    }
    let mut prod = 0.0f64;
    for m in 1..=10u32 {
        let mf = f64::from(m);
        for nu in [mf + 0.7, mf + 2.5, 2.0 * mf + 1.0] {
            prod = prod.max((product_identity(nu, m).map_err(|e| e.to_string())? - 1.0).abs());
        }
    }
    ensure(
        routes <= tol::JACOBI_ROUTES_REL
            && recon <= tol::ZERO_RECONSTRUCTION_REL
            && prod <= tol::PRODUCT_IDENTITY,
        format!("routes {routes:.2e} (n <= 30), zeros {recon:.2e}, product identity {prod:.2e}"),
    )
}

fn levy_identities() -> Outcome {
    let (mut e1, mut e2, mut e3, mut flipped_sign_gap) = (0.0f64, 0.0f64, 0.0f64, f64::INFINITY);
    for a in [0.01, 0.1, 0.2, 0.249] {
        let s1 = central_binomial_series(a, 1e-13).map_err(|e| e.to_string())?;
        e1 = e1.max((s1.value - central_binomial_closed_form(a).unwrap()).abs());
        for s in 1..=8 {
            let lhs = shifted_binomial_series(a, s, 1e-13)
                .map_err(|e| e.to_string())?
                .value;
            let rhs = shifted_binomial_closed_form(a, s).unwrap();
            e2 = e2.max((lhs - rhs).abs());
            flipped_sign_gap = flipped_sign_gap.min((-lhs - rhs).abs() / rhs.abs());
        }
        let mu = quasi_levy_component(alpha(4.0 * a).unwrap(), 1e-14).unwrap();
        let mass = mu.measure.total_mass();
        e3 = e3
            .max((mass - component_mass(a).unwrap()).abs())
            .max((mass + central_binomial_closed_form(a).unwrap()).abs());
    }
    ensure(
        e1 <= tol::LEVY_SERIES && e2 <= tol::LEVY_SERIES && e3 <= tol::LEVY_SERIES && flipped_sign_gap > 1e-6,
        format!(
            "central binomial {e1:.2e}, shifted binomial {e2:.2e} (relative gap with the opposite sign >= {flipped_sign_gap:.2}), component mass {e3:.2e}"
        ),
    )
}

fn lk_reproduction() -> Outcome {
    let grid = u_grid(64);
    let mut worst = 0.0f64;
    for &(nu, m) in &[(2.0, 1u32), (3.5, 2), (5.5, 3)] {
        let ts = tau_star(nu, m).map_err(|e| e.to_string())?;
        for f in [0.1, 0.5, 0.9] {
            let p = GnbdParams::unit(nu, f * ts, m).unwrap();
            let rep = lk_representation(&p, tol::LEVY_TRUNCATION).map_err(|e| e.to_string())?;
            for &u in &grid {
                worst = worst.max((rep.cf(u) - cf(&p, u)).norm());
            }
        }
    }
    let (mut nb_2nu, mut nb_1) = (0.0f64, f64::INFINITY);
    for &nu in &[1.0, 2.0, 5.5] {
        for &tau in &[0.05, 0.3, 0.7] {
            let p = GnbdParams::unit(nu, tau, 0).unwrap();
            let good = lk_representation(&p, tol::LEVY_TRUNCATION).unwrap();
            let unit = lk_representation_with_constant(&p, 1.0, tol::LEVY_TRUNCATION).unwrap();
            let e_good = grid
                .iter()
                .map(|&u| (good.cf(u) - cf(&p, u)).norm())
                .fold(0.0, f64::max);
            let e_unit = grid
                .iter()
                .map(|&u| (unit.cf(u) - cf(&p, u)).norm())
                .fold(0.0, f64::max);
            nb_2nu = nb_2nu.max(e_good);
            nb_1 = nb_1.min(e_unit);
        }
    }
    ensure(
        worst <= tol::LK_REPRODUCTION && nb_2nu <= tol::LK_REPRODUCTION && nb_1 > 1e-3,
        format!(
            "max |exp(LK) - cf| = {worst:.2e}; m = 0 fixes c = 2nu (error {nb_2nu:.2e}; c = 1 error >= {nb_1:.2e})"
        ),
    )
}

fn quasi_vs_infinite() -> Outcome {
    let mut checked = 0;
    for &(nu, m) in &[(2.0, 1u32), (3.5, 2), (5.5, 3), (5.5, 5), (3.5, 1)] {
        let ts = tau_star(nu, m).map_err(|e| e.to_string())?;
        for f in [0.01, 0.5, 0.99] {
            let p = GnbdParams::unit(nu, f * ts, m).unwrap();
            let rep = lk_representation(&p, tol::LEVY_TRUNCATION).unwrap();
            if !rep.measure.has_negative_atom() {
                return Err(format!(
                    "no negative atom for nu = {nu}, m = {m}, tau = {}",
                    p.tau
                ));
            }
            checked += 1;
        }
    }
    for &nu in &[1.0, 2.0, 5.5] {
        for &tau in &[0.05, 0.3, 0.7] {
            let rep =
                lk_representation(&GnbdParams::unit(nu, tau, 0).unwrap(), tol::LEVY_TRUNCATION)
                    .unwrap();
            if rep.measure.has_negative_atom() {
                return Err(format!("negative atom at m = 0, nu = {nu}, tau = {tau}"));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "m >= 1 always signed, m = 0 always nonnegative ({checked} cases)"
    ))
}

fn id_law() -> Outcome {
    let grid = u_grid(64);
    let (mut at0, mut ratio, mut div) = (0.0f64, 0.0f64, 0.0f64);
    for &(nu, m) in &[(2.0, 1u32), (3.5, 2), (5.5, 3)] {
        let ts = tau_star(nu, m).map_err(|e| e.to_string())?;
        for f in [0.5, 0.9] {
            let tau = f * ts;
            let rep = id_representation(nu, tau, m, tol::LEVY_TRUNCATION).unwrap();
            at0 = at0.max((id_cf(nu, tau, m, 0.0).unwrap() - 1.0).norm());
            let k = id_ratio_constant(nu, tau, m).unwrap();
            let spec = CompoundPoissonSpec::from_representation(&rep).unwrap();
            for &u in &grid {
                let e = rep.cf(u);
                ratio = ratio.max((e / id_cf_zeros_form(nu, tau, m, u).unwrap() - k).norm());
                for n in [2u32, 3, 5] {
                    div = div.max((spec.nth_root_cf(u, n).powu(n) - e).norm());
                }
            }
        }
    }
    ensure(
        at0 == 0.0 && ratio <= tol::ID_RATIO_CONSTANT && div <= tol::DIVISIBILITY,
        format!(
            "|id_cf(0) - 1| = {at0:.1e}; ratio to product form constant to {ratio:.2e} (= prod (1-a_n)^2/(1+a_n)^2); divisibility {div:.2e}"
        ),
    )
}

fn sampler() -> Outcome {
    let (nu, tau, m) = (2.0, 0.05, 1);
    let spec = CompoundPoissonSpec::from_gnbd(nu, tau, m, 1e-14).map_err(|e| e.to_string())?;
    let n = 100_000;
    let draw = |seed| {
        let mut s = spec.sampler(seed, 0).unwrap();
        (0..n).map(|_| s.sample(1.0).value()).collect::<Vec<f64>>()
    };
    let xs = draw(2024);
    let deterministic = xs == draw(2024);
    let mut worst = 0.0f64;
    for i in 0..16 {
        let u = -pi() + 2.0 * pi() * (f64::from(i) + 0.5) / 16.0;
        let emp: Complex64 = xs
            .iter()
            .map(|&x| Complex64::from_polar(1.0, u * x))
            .sum::<Complex64>()
            / n as f64;
        worst = worst.max((emp - id_cf(nu, tau, m, u).unwrap()).norm());
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
    let h = 1e-5;
    let cf_mean = ((id_cf(nu, tau, m, h).unwrap() - id_cf(nu, tau, m, -h).unwrap()) / (2.0 * h)).im;
    let z = (mean - cf_mean).abs() / (sd / (n as f64).sqrt());
    let bound = 4.0 / (n as f64).sqrt();
    ensure(
        worst <= bound && z <= 3.0 && deterministic,
        format!(
            "max |empirical cf - id_cf| = {worst:.4} (bound {bound:.4}); mean {mean:.4} vs {cf_mean:.4} ({z:.2} s.e.); deterministic = {deterministic}"
        ),
    )
}

fn contraction() -> Outcome {
    let xi = Complex64::new(0.5, 0.0);
    let radii = [5.0, 10.0, 20.0, 40.0];
    let mut report = Vec::new();
    for m in [0u32, 1] {
        let gaps = contraction_limit_check(1.0, 1.0, m, xi, &radii).map_err(|e| e.to_string())?;
        if !gaps.windows(2).all(|w| w[1] < w[0]) {
            return Err(format!("gaps not decreasing for m = {m}: {gaps:?}"));
        }
        report.push(format!("m = {m}: {:.2e} -> {:.2e}", gaps[0], gaps[3]));
    }
    Ok(format!(
        "gaps decrease along R = 5, 10, 20, 40 ({})",
        report.join("; ")
    ))
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 11] = [
        ("normalization", normalization, Duration::from_secs(5)),
        (
            "mgf closed form vs series",
            mgf_series,
            Duration::from_secs(10),
        ),
        ("mandel regimes", mandel_regimes, Duration::from_secs(1)),
        (
            "atomic decomposition",
            decomposition,
            Duration::from_secs(5),
        ),
        ("jacobi machinery", jacobi, Duration::from_secs(5)),
        (
            "levy series identities",
            levy_identities,
            Duration::from_secs(2),
        ),
        (
            "levy-khintchine reproduction",
            lk_reproduction,
            Duration::from_secs(10),
        ),
        (
            "quasi vs infinite divisibility",
            quasi_vs_infinite,
            Duration::from_secs(1),
        ),
        ("infinitely divisible law", id_law, Duration::from_secs(5)),
        ("compound poisson sampler", sampler, Duration::from_secs(60)),
        ("contraction limit", contraction, Duration::from_secs(2)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, msg) = match outcome {
            Ok(m) => (elapsed <= *budget, m),
            Err(m) => (false, m),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {:>2} {name}: {msg} ({:.2} s, budget {} s)",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
