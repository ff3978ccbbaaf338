//! First-order deformation ratios at the commutative point, by finite
//! differences with Richardson extrapolation.

use num_complex::Complex64;
use ncmirror::families::dq::{dq_first_order_check, Family};

fn main() -> ncmirror::Result<()> {
    let tau = Complex64::new(0.0, 1.0);
    for family in [Family::Sklyanin, Family::Pillowcase] {
        let c = dq_first_order_check(family, tau, 1e-4)?;
        let d = &c.derivatives;
        println!("{}", family.label());
        println!("  ratio        {:.12}", c.ratio);
        println!("  stated       {:.12}  residual {:.3e}", c.expected, c.residual());
        println!("  alternative  {:.12}  residual {:.3e}", c.alternative, c.alternative_residual());
        if let Some(r) = c.cd_residual() {
            println!("  |c'/d' - 1|  {r:.3e}");
        }
        println!(
            "  step h {:.3e}, h/2 {:.3e}, extrapolated {:.3e}",
            d.residual_h(),
            d.residual_half(),
            d.residual_richardson()
        );
    }
    Ok(())
}
