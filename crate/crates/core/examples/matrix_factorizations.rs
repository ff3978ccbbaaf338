//! Arc matrix factorizations on the dual of the conifold and the morphisms
//! between them along zigzag rays.

use std::path::PathBuf;
use std::sync::Arc;

use num_rational::BigRational;
use ncmirror::dimer::Dimer;
use ncmirror::matfact::{arc_family, hom_differential, zeta_morphism, MfDocument};
use ncmirror::reduction::CompletionOptions;

fn main() -> ncmirror::Result<()> {
    let bound = 10;
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/conifold.dm");
    let d = Dimer::load_file(&path)?;
    let data = d.potentials::<BigRational>(None, bound)?;
    let sys = Arc::new(data.reduction_system(CompletionOptions::new(bound))?);
    let dual = &data.dual;
    let q = dual.quiver();
    let mfs = arc_family(&data, sys)?;

    let x = q.arrow_id("x")?;
    println!("P_x:\n{}", MfDocument::from_mf(q, &mfs[x as usize]).save());

    for a in q.arrow_ids() {
        for b in q.arrow_ids() {
            for lift in 0..2 {
                let Ok((z, info)) = zeta_morphism(dual, &mfs[a as usize], &mfs[b as usize], a, b, lift) else {
                    continue;
                };
                let closed = hom_differential(&z, &mfs[a as usize], &mfs[b as usize]).is_zero();
                println!(
                    "zeta {} -> {} lift {lift}: k = {}, {} ray, closed: {closed}",
                    q.arrow_name(a),
                    q.arrow_name(b),
                    info.k,
                    if info.zig { "zig" } else { "zag" }
                );
            }
        }
    }
    Ok(())
}
