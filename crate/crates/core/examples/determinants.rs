//! Commutative determinants of the linear matrices of both families.

use num_rational::BigRational;
use ncmirror::families::commutative::{det_m0_at, det_m0_identity, det_p_check};

fn main() {
    let id = det_m0_identity();
    println!("det M0 = {}", id.determinant.display());
    println!("matches -ABC(x^3+y^3+z^3) + (A^3+B^3+C^3)xyz: {}", id.holds());
    println!("x^3 coefficient: {}", id.k.display());

    let r = |n: i64| BigRational::from_integer(n.into());
    println!("at (A, B, C) = (1, 2, -1): {}", det_m0_at(&r(1), &r(2), &r(-1)).display());

    let p = det_p_check();
    println!("det P = {}", p.determinant.display());
    println!("stated = {}", p.stated.display());
    println!("difference {} vanishes once the loop relation is used: {}",
        p.literal_difference.display(), p.reduced_difference.is_zero());
}
