//! Closed-form moment generating function against the truncated power
//! series of the pmf, and the characteristic function on the unit circle.

use hyperlandau::gnbd::{cf, mgf, pmf};
use hyperlandau::GnbdParams;
use num_complex::Complex64;

pub(crate) fn run_example() -> hyperlandau::Result<()> {
    let params = GnbdParams::unit(3.5, 0.3, 2)?;
    let p = pmf(&params, None)?;
    for &(r, theta) in &[
        (0.0, 0.0),
        (0.5, 1.0),
        (1.0, 2.5),
        (1.0, std::f64::consts::PI),
    ] {
        let xi = Complex64::from_polar(r, theta);
        let closed = mgf(&params, xi)?;
        let series = p.power_series(xi);
        println!(
            "xi = {xi:.3}: G = {closed:.12}, |G - series| = {:.1e}",
            (closed - series).norm()
        );
    }
    println!("cf(1.0) = {:.12}", cf(&params, 1.0));
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
