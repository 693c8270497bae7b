//! Jacobi polynomials by two routes, their zeros and the product form.

use hyperlandau::levy::product_identity;
use hyperlandau::JacobiSpec;

pub(crate) fn run_example() -> hyperlandau::Result<()> {
    let spec = JacobiSpec::new(30, 50.0, 20.0);
    for x in [-0.7, 0.0, 0.4] {
        println!(
            "P_30^(50,20)({x}) = {:.15e} (2F1 route {:.15e})",
            spec.eval(x),
            spec.eval_hypergeometric(x)?
        );
    }
    let small = JacobiSpec::new(6, 2.5, 0.0);
    let zs = small.zeros()?;
    println!("zeros of P_6^(2.5,0): {:?}", zs.zeros);
    println!("residual bound {:.1e}", zs.residual_bound);
    let x = 0.123;
    println!(
        "P(x) = {:.15}, product form {:.15}",
        small.eval(x),
        zs.product_form(&small, x)
    );
    for m in [1, 4, 10] {
        let nu = f64::from(m) + 2.5;
        println!(
            "(2nu-m)_m/m! prod (1+x_n)/2 for nu = {nu}, m = {m}: {:.15}",
            product_identity(nu, m)?
        );
    }
    Ok(())
}

fn main() {
    run_example().expect("example failed");
}
