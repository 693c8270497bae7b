//! Flat limit: as the disc radius grows the GNBD approaches a generalized
//! Poisson law.

use hyperlandau::gnbd::{contraction_limit_check, generalized_poisson_mgf};
use num_complex::Complex64;

pub(crate) fn run_example() -> hyperlandau::Result<()> {
    let xi = Complex64::new(0.5, 0.0);
    let radii = [5.0, 10.0, 20.0, 40.0];
    for m in 0..=2 {
        let limit = generalized_poisson_mgf(1.0, 1.0, m, xi);
        let gaps = contraction_limit_check(1.0, 1.0, m, xi, &radii)?;
        println!("m = {m}: limit {:.10}, gaps {:?}", limit.re, gaps);
    }
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
