//! The three-generator family with theta-function coefficients: the cubic
//! relation between a, b, c and the centrality of W.

use num_complex::Complex64;
use ncmirror::families::sklyanin::{commutative_limit, SklyaninFamily};
use ncmirror::families::{sample_points, DEFAULT_SEED};

fn main() -> ncmirror::Result<()> {
    let tau = Complex64::new(0.0, 1.0);
    for pt in sample_points(DEFAULT_SEED, 3, tau) {
        let f = SklyaninFamily::new(pt, None)?;
        let h = f.hesse()?;
        println!("s = {:.4}, t = {:+.4}", pt.s, pt.t);
        println!("  (a, b, c) = {:.6}, {:.6}, {:.6}", f.abc[0], f.abc[1], f.abc[2]);
        println!("  sigma = {:.10}", h.sigma);
        println!("  |a^3+b^3+c^3 - sigma abc| = {:.3e}", h.minus_sigma);
        println!("  |a^3+b^3+c^3 + sigma abc| = {:.3e}", h.plus_sigma);
        println!("  W: {}", f.centrality(7, 1e-8)?.label());
    }
    let lim = commutative_limit(tau, None)?;
    println!("commutative point: xyz/x^3 = {:.10}, sigma = {:.10}", lim.xyz_ratio, lim.sigma);
    Ok(())
}
