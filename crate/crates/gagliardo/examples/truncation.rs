//! Truncation to compact support, one experiment per regime.
//!
//! Multiplying by a cutoff that vanishes inside B_j and equals one far out
//! isolates the part of u the seminorm can still see at infinity:
//!
//! * sp < n — fields in L^{p*} lose everything: [(1−η_j)·u] → 0.
//! * sp > n — Hölder fields vanishing at the origin are merely kept under a
//!   uniform bound; no decay is promised, and none is asserted.
//! * sp = n — subtract the mean over the big ball first, then the remainder
//!   decays; the cutoff ramps over [j, j²] to beat scaling invariance.
//!
//!     cargo run --release --example truncation

use gagliardo::fields::{by_label, hat, rat, SeminormParams};
use gagliardo::quadrature::QuadratureSpec;
use gagliardo::truncation_sweep;

fn main() {
    let spec = QuadratureSpec::default();
    let sweep = [2u32, 4, 8];

    let sub = SeminormParams::new(1, rat(1, 4), rat(2, 1)).unwrap();
    let u = by_label(1, "powtail:alpha=0.5").unwrap();
    println!("sp < n at {sub}, slow power tail (decays):");
    for p in truncation_sweep(&u, &sub, &sweep, &spec).unwrap() {
        println!("  j = {:2}   [(1−η_j)u] = {:.6}", p.index, p.value);
    }

    let sup = SeminormParams::new(1, rat(3, 4), rat(2, 1)).unwrap();
    let u = by_label(1, "powgrow:beta=0.125").unwrap();
    println!("\nsp > n at {sup}, Hölder growth (stays bounded):");
    for p in truncation_sweep(&u, &sup, &sweep, &spec).unwrap() {
        println!("  j = {:2}   [(1−η_j)u] = {:.6}", p.index, p.value);
    }

    let conf = SeminormParams::new(1, rat(1, 2), rat(2, 1)).unwrap();
    println!("\nsp = n at {conf}, tent with its far mean subtracted (decays):");
    for p in truncation_sweep(&hat(1), &conf, &sweep, &spec).unwrap() {
        println!("  j = {:2}   [(1−η_j)(u−ū)] = {:.6}", p.index, p.value);
    }
}
