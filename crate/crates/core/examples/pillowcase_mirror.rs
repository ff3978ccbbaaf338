//! The four-punctured sphere family: the series phi and psi, the j-invariant
//! of their ratio, and the quadric relation at sampled points.

use num_complex::Complex64;
use ncmirror::families::pillowcase::{open_mirror_check, pillowcase_series, q_coefficients, PillowcaseFamily};
use ncmirror::families::FamilyPoint;

fn main() -> ncmirror::Result<()> {
    let (phi, psi) = pillowcase_series(24);
    println!("phi = {phi}");
    println!("psi = {psi}");

    let m = open_mirror_check(3)?;
    let show = |s| q_coefficients(s, 4).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
    println!("j(psi/phi) in q = q_d^8: {}", show(&m.j_psi_over_phi));
    println!("j(phi/psi):              {}", show(&m.j_phi_over_psi));
    println!("j from eta quotient:     {}", show(&m.j_eta));

    for t in [-0.2, 0.05, 0.25] {
        let f = PillowcaseFamily::new(FamilyPoint::new(0.0, t, Complex64::new(0.0, 1.0))?)?;
        let (raw, _) = f.ac_plus_bd();
        println!(
            "t = {t:+.2}: |ac+bd| = {raw:.2e}, quadric with psi/phi {:.2e}, with phi/psi {:.2e}",
            f.quadric(f.psi / f.phi),
            f.quadric(f.phi / f.psi)
        );
    }
    Ok(())
}
