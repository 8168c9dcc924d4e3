//! Tour of the seminorm zoo: Gagliardo, Campanato, BMO and Hölder values on
//! catalog fields, side by side with the closed forms that exist.
//!
//!     cargo run --release --example seminorms_tour

use gagliardo::fields::{hat, linear, rat, sign, SeminormParams};
use gagliardo::quadrature::QuadratureSpec;
use gagliardo::{bmo_seminorm, campanato_seminorm, gagliardo_seminorm, holder_seminorm};

fn main() {
    let spec = QuadratureSpec::default();

    // The tent function at the conformal pair (s, p) = (1/2, 2) in 1-D has
    // the closed form [hat] = sqrt(2 ln 2) once the s(1-s) factor is applied.
    let params = SeminormParams::new(1, rat(1, 2), rat(2, 1)).unwrap();
    let tent = gagliardo_seminorm(&hat(1), &params, &spec).unwrap();
    let exact = (2.0 * 2.0f64.ln()).sqrt();
    println!("[hat]_(W^(1/2,2))  = {:.8}   closed form {:.8}", tent.estimate.value, exact);

    // s = 1 falls back to the gradient: [hat]_(W^(1,1)) = ∫|hat'| = 2.
    let w11 = SeminormParams::new(1, rat(1, 1), rat(1, 1)).unwrap();
    let grad = gagliardo_seminorm(&hat(1), &w11, &spec).unwrap();
    println!("[hat]_(W^(1,1))    = {:.8}   closed form 2", grad.estimate.value);

    // Campanato with exponent lambda = n + p annihilates affine data in the
    // mean; the linear field scores exactly 1.
    let camp = campanato_seminorm(&linear(1), 1.0, 2.0, &spec).unwrap();
    println!("[linear]_(L^(1,2)) = {:.8}   closed form 1", camp.estimate.value);

    // BMO of the jump function: the worst ball straddles the jump and sees
    // mean oscillation exactly 1.
    let bmo = bmo_seminorm(&sign(1), &spec).unwrap();
    println!("[sign]_BMO         = {:.8}   closed form 1", bmo.estimate.value);

    // The Lipschitz seminorm of the tent is its slope.
    let lip = holder_seminorm(&hat(1), 1.0, &spec).unwrap();
    println!("[hat]_(C^(0,1))    = {:.8}   closed form 1", lip.estimate.value);
}
