//! Spacetime and worldsheet potentials of a dimer, and the centrality of W.
//!
//!     cargo run --example dimer_potential -- fixtures/pentagon.dm 10

use std::path::PathBuf;

use num_rational::BigRational;
use ncmirror::dimer::Dimer;
use ncmirror::reduction::{is_central, CompletionOptions};

fn main() -> ncmirror::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let path = args.first().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/conifold.dm")
    });
    let degree: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(8);

    let d = Dimer::load_file(&path)?;
    let data = d.potentials::<BigRational>(None, degree)?;
    let q = data.dual.quiver();
    println!("face words   {}", d.face_word_display());
    println!("phi (dual)   {}", data.phi.display(q));
    println!("W            {}", data.w_display());
    for (e, r) in q.arrow_ids().zip(data.phi.jacobian_relations(q, degree)?) {
        println!("  d/d{:<4} {}", q.arrow_name(e), r.display(q));
    }

    let sys = data.reduction_system(CompletionOptions::new(degree))?;
    println!("{} rewriting rules, complete: {}", sys.rule_count(), sys.is_complete());
    println!("{}", is_central(q, &data.w, &sys, degree)?.label());
    Ok(())
}
