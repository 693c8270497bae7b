//! The infinitely divisible compound Poisson law: intensity, jump law,
//! seeded draws and a CSV path of the ℤ-valued Lévy process.

use hyperlandau::idd::{
    id_cf, id_cf_zeros_form, id_ratio_constant, intensity, simulate_path, write_path_csv,
};
use hyperlandau::CompoundPoissonSpec;

pub(crate) fn run_example() -> hyperlandau::Result<()> {
    let (nu, tau, m) = (2.0, 0.05, 1);
    let lam = intensity(nu, tau, m)?;
    println!(
        "lambda = {:.12} (weight-one variant {:.12})",
        lam.lambda, lam.unit_weight_lambda
    );
    let k = id_ratio_constant(nu, tau, m)?;
    for u in [0.5, 1.5, 3.0] {
        let ratio = id_cf(nu, tau, m, u)? / id_cf_zeros_form(nu, tau, m, u)?;
        println!("u = {u}: exponent form / product form = {ratio:.12} (constant {k:.12})");
    }

    let spec = CompoundPoissonSpec::from_gnbd(nu, tau, m, 1e-14)?;
    let mut sampler = spec.sampler(42, 0)?;
    let draws: Vec<f64> = (0..10_000).map(|_| sampler.sample(1.0).value()).collect();
    let mean = draws.iter().sum::<f64>() / draws.len() as f64;
    println!("empirical mean {mean:.4}, exact {:.4}", spec.mean());

    let path = simulate_path(&spec, 5.0, 5, 7)?;
    write_path_csv(&path, std::io::stdout()).expect("stdout");
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
