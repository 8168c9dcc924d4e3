//! Why the homogeneous space needs its quotient topology: two families with
//! seminorms tending to zero while the functions sit at height 1 on huge
//! balls.
//!
//! For sp > n the rescaled plateau φ(·/m) has seminorm exactly
//! m^{n/p−s}·[φ], a clean power law.  At sp = n dilation is invariant, so
//! the decay must come from somewhere else: the logarithmic profile ψ_m
//! decays like (1/log m)^{1−s/n} — visible as a power law in log m.
//!
//!     cargo run --release --example null_sequences

use gagliardo::fields::{rat, SeminormParams};
use gagliardo::quadrature::QuadratureSpec;
use gagliardo::{conformal_sweep, fit_rate, superconformal_sweep};

fn main() {
    let spec = QuadratureSpec::default();

    let sup = SeminormParams::new(1, rat(3, 4), rat(2, 1)).unwrap();
    let pts = superconformal_sweep(&sup, &[2, 4, 8, 16], &spec).unwrap();
    println!("rescaled plateaus at {sup} (expected slope n/p - s = -1/4):");
    for p in &pts {
        println!("  m = {:3}   [φ_m] = {:.6}", p.index, p.value);
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.index).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.value).collect();
    let fit = fit_rate(&xs, &ys).unwrap();
    println!("  fitted slope in m: {:.4}\n", fit.slope);

    let conf = SeminormParams::new(1, rat(1, 2), rat(2, 1)).unwrap();
    let pts = conformal_sweep(&conf, &[4, 16, 64, 256], &spec).unwrap();
    println!("logarithmic cutoffs at {conf} (expected slope in log m: -(1 - s/n) = -1/2):");
    for p in &pts {
        let compensated = p.value * p.index.ln().sqrt();
        println!(
            "  m = {:4}   [ψ_m] = {:.6}   [ψ_m]·(log m)^(1/2) = {compensated:.6}",
            p.index, p.value
        );
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.index.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.value).collect();
    let fit = fit_rate(&xs, &ys).unwrap();
    println!("  fitted slope in log m: {:.4}", fit.slope);
}
