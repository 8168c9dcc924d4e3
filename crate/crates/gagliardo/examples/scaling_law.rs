//! The dilation law: [u(λ·)]_{W^{s,p}} = λ^{s − n/p} · [u]_{W^{s,p}}.
//!
//! The scaling exponent changes sign exactly at sp = n, which is what makes
//! the three regimes behave so differently at infinity.
//!
//!     cargo run --release --example scaling_law

use gagliardo::fields::{hat, rat, SeminormParams};
use gagliardo::quadrature::QuadratureSpec;
use gagliardo::{gagliardo_seminorm, scale};

fn main() {
    let spec = QuadratureSpec::default();
    let grids = [
        SeminormParams::new(1, rat(1, 2), rat(2, 1)).unwrap(), // sp = n: invariant
        SeminormParams::new(1, rat(3, 4), rat(2, 1)).unwrap(), // sp > n: shrinks
        SeminormParams::new(1, rat(1, 4), rat(3, 1)).unwrap(), // sp < n: grows
    ];

    for params in grids {
        let base = gagliardo_seminorm(&hat(1), &params, &spec).unwrap().estimate.value;
        let exponent = params.s_f64() - f64::from(params.n()) / params.p_f64();
        println!("{params}  (exponent s - n/p = {exponent:+.4})");
        for lambda in [0.5, 2.0, 4.0] {
            let dilated = scale(&hat(1), lambda);
            let measured = gagliardo_seminorm(&dilated, &params, &spec).unwrap().estimate.value;
            let predicted = lambda.powf(exponent) * base;
            println!(
                "  λ = {lambda:3}:  measured {measured:.6}  predicted {predicted:.6}  \
                 rel err {:.2e}",
                ((measured - predicted) / predicted).abs()
            );
        }
    }
}
