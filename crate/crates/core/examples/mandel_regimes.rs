//! Mandel parameter, photon-counting regimes and the anti-bunching radius
//! as a function of the Landau level.

use hyperlandau::gnbd::{mandel, tau_crit};
use hyperlandau::GnbdParams;

pub(crate) fn run_example() -> hyperlandau::Result<()> {
    let nu = 5.5;
    println!("m  tau_crit        rho");
    for m in 0..=5 {
        let t = tau_crit(nu, m)?;
        println!("{m}  {t:.12}  {:.12}", t.sqrt());
    }
    let t2 = tau_crit(nu, 2)?;
    for tau in [0.5 * t2, t2 * 1.5] {
        let report = mandel(&GnbdParams::unit(nu, tau, 2)?)?;
        println!("tau = {tau:.5}: Q = {:+.6e}, {:?}", report.q, report.regime);
    }
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
