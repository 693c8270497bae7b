//! Non-vanishing threshold, quasi-Lévy measure and the Lévy–Khintchine
//! representation of the characteristic function.

use hyperlandau::gnbd::cf;
use hyperlandau::levy::{a_coeffs, alphas, cf_nonvanishing_check, lk_representation, tau_star};
use hyperlandau::GnbdParams;

pub(crate) fn run_example() -> hyperlandau::Result<()> {
    let (nu, m) = (3.5, 2);
    let ts = tau_star(nu, m)?;
    let tau = 0.9 * ts;
    println!("tau* = {ts:.10}, using tau = {tau:.10}");
    println!("A_n = {:?}", a_coeffs(nu, tau, m)?);
    println!("alpha_n = {:?}", alphas(nu, tau, m)?);

    let params = GnbdParams::unit(nu, tau, m)?;
    let rep = lk_representation(&params, 1e-13)?;
    println!(
        "drift {}, {} atoms, truncation <= {:.1e}, negative atoms: {}",
        rep.drift,
        rep.measure.len(),
        rep.truncation_error,
        rep.measure.has_negative_atom()
    );
    for x in -3..=3 {
        println!("  mu{{{x}}} = {:+.6e}", rep.measure.weight(x));
    }
    let worst = (0..64)
        .map(|i| {
            let u = -std::f64::consts::PI + 0.1 * f64::from(i);
            (rep.cf(u) - cf(&params, u)).norm()
        })
        .fold(0.0, f64::max);
    println!("max |exp(LK) - cf| = {worst:.1e}");

    let above = GnbdParams::unit(nu, ts * 1.01, m)?;
    let nv = cf_nonvanishing_check(&above, 2001)?;
    println!(
        "just above tau*: min |cf| = {:.3e} at u = {:.4}",
        nv.min_abs_cf, nv.attained_u
    );
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
