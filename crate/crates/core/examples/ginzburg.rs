//! Ginzburg dg algebra of the quiver of a triangulated four-punctured sphere.

use std::path::PathBuf;

use ncmirror::dimer::Triangulation;
use ncmirror::matfact::GinzburgAlgebra;

fn main() -> ncmirror::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/tetrahedron.tri");
    let text = std::fs::read_to_string(&path).map_err(|e| ncmirror::Error::Usage(e.to_string()))?;
    let tq = Triangulation::parse(&text)?.build()?;
    // No poles here, so Φ has constant coefficients.
    let phi = tq.phi.map_coeffs(|s| s.coeff_int(0));
    println!("phi = {}", phi.display(&tq.quiver));

    let g = GinzburgAlgebra::new(&tq.quiver, &phi, 10)?;
    let gq = &g.quiver;
    for e in tq.quiver.arrow_ids().take(3) {
        println!("d {} = {}", gq.arrow_name(g.bar(e)), g.d_generator(g.bar(e)).display(gq));
    }
    println!("d t_{} = {}", gq.vertex_name(0), g.d_generator(g.loop_at(0)).display(gq));
    let check = g.d_square_check(None, 0.0);
    println!("d^2 = 0 on {} generators up to degree {}: {}", check.generators, check.bound, check.holds());
    Ok(())
}
