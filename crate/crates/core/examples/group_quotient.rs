//! Formal Z2 quotient of the conifold: smash product, lifted relations and the
//! centrality of the summed potential.

use std::path::PathBuf;

use ncmirror::cli::quiver_with_potential;
use ncmirror::dimer::Document;
use ncmirror::groups::{formal_quotient, DecoratedQuiver, GroupTable};
use ncmirror::Error;

fn main() -> ncmirror::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let read = |n: &str| std::fs::read_to_string(dir.join(n)).map_err(|e| Error::Usage(e.to_string()));
    let doc = Document::parse(&read("conifold_z2.qp")?)?;
    let g = GroupTable::parse(&read("z2.grp")?)?;
    let dq = DecoratedQuiver::from_fmap(doc.quiver.clone(), &doc.fmap, &g)?;
    let (rels, w) = quiver_with_potential(&doc, 8)?;

    let fq = formal_quotient(&dq, &g, &rels, &w)?;
    let sq = &fq.smash.quiver;
    println!("smash product: {} vertices, {} arrows", sq.vertex_count(), sq.arrow_count());
    for r in &fq.relations {
        println!("  {}", r.display(sq));
    }
    println!("W-hat = {}", fq.w_hat.display(sq));
    println!("{}", fq.centrality(8, 0.0)?.label());

    // An S3 decoration under which the relations are not homogeneous.
    let mixed = Document::parse(&read("conifold_s3_mixed.qp")?)?;
    let s3 = GroupTable::parse(&read("s3.grp")?)?;
    let dq = DecoratedQuiver::from_fmap(mixed.quiver.clone(), &mixed.fmap, &s3)?;
    let (rels, w) = quiver_with_potential(&mixed, 8)?;
    match formal_quotient(&dq, &s3, &rels, &w) {
        Err(e) => println!("S3 decoration rejected: {e}"),
        Ok(_) => println!("S3 decoration accepted"),
    }
    Ok(())
}
