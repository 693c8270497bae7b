//! Probability mass function of a GNBD, its certified tail and its moments.

use hyperlandau::gnbd::{moments, pmf};
use hyperlandau::GnbdParams;

pub(crate) fn run_example() -> hyperlandau::Result<()> {
    let params = GnbdParams::unit(2.0, 0.3, 1)?;
    let p = pmf(&params, None)?;
    println!(
        "nu = 2, tau = 0.3, m = 1: {} weights, tail <= {:.1e}",
        p.weights.len(),
        p.tail_bound
    );
    for (j, w) in p.weights.iter().take(6).enumerate() {
        println!("  p_{j} = {w:.10}");
    }
    let exact = moments(&params);
    let (mean, var) = p.moments();
    println!("mean {:.10} (closed form {:.10})", mean, exact.mean);
    println!("variance {:.10} (closed form {:.10})", var, exact.variance);

    // Radius R = 3 rescales the shape to 2 nu R^2.
    let wide = GnbdParams::new(2.0, 0.3, 1, 3.0)?;
    println!("R = 3: mean {:.6}", moments(&wide).mean);
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
