//! Zigzag cycles, the dual dimer, perfect matchings and consistency for every
//! shipped dimer.

use std::path::PathBuf;

use ncmirror::dimer::{isomorphic, perfect_matchings, zigzag_consistent, Dimer};

fn main() -> ncmirror::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for name in ["conifold", "conifold_torus", "pentagon", "c3", "dp0", "orbifold_a1", "inconsistent"] {
        let d = Dimer::load_file(&dir.join(format!("{name}.dm")))?;
        let q = d.quiver();
        println!("== {name}: {} vertices, {} arrows, {} faces, genus {:?}",
            q.vertex_count(), q.arrow_count(), d.faces().len(), d.genus());
        for z in d.zigzag_cycles()? {
            println!("   {}", z.describe(q));
        }
        let dual = d.dual()?;
        let back = dual.dual()?;
        println!("   dual genus {:?}, dual of dual isomorphic: {}", dual.genus(), isomorphic(&back, &d).is_some());
        let m = perfect_matchings(&d, 10_000)?;
        println!("   {} perfect matchings", m.matchings.len());
        println!("   {}", zigzag_consistent(&d, 20)?.label());
    }
    Ok(())
}
