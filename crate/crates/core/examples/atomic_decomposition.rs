//! The GNBD as a negative binomial law convolved with a finite signed
//! measure.

use hyperlandau::decomposition::{
    decomposition_measure, q_poly, q_poly_hypergeometric, reconstruct_pmf,
};
use hyperlandau::gnbd::pmf;
use hyperlandau::GnbdParams;

pub(crate) fn run_example() -> hyperlandau::Result<()> {
    let (nu, m, tau) = (2.0, 1, 0.3);
    let d = decomposition_measure(nu, m, tau)?;
    println!("signed measure for nu = {nu}, m = {m}, tau = {tau}:");
    for (k, w) in d.atoms() {
        println!("  {k:>2}: {w:+.10}");
    }
    println!(
        "total mass {:.12}, total variation {:.6}",
        d.total_mass(),
        d.total_variation()
    );

    let params = GnbdParams::unit(nu, tau, m)?;
    let p = pmf(&params, None)?;
    let rebuilt = reconstruct_pmf(&params, p.j_max())?;
    let worst = p
        .weights
        .iter()
        .enumerate()
        .map(|(j, w)| (rebuilt.measure.weight(j as i64) - w).abs())
        .fold(0.0, f64::max);
    println!("max |NBD * measure - pmf| = {worst:.1e}");

    let x = tau / ((1.0 - tau) * (1.0 - tau));
    for k in 0..=m {
        println!(
            "Q_{k}: sum {:.12}, 3F2 {:.12}",
            q_poly(nu, m, k, x)?,
            q_poly_hypergeometric(nu, m, k, x)?
        );
    }
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
