//! The free-field realization of `sp6` at `k = −5/2` attached to `p_{α_3}`: print
//! the images of the Chevalley generators and verify every affine relation.

use collapsing::freefield::{build_explicit_realization, verify_affine_relations, Family};

fn main() -> collapsing::Result<()> {
    let family: Family = "C".parse()?;
    let r = build_explicit_realization(family, 3)?;
    for i in r.chevalley() {
        println!("{} ↦ {}", r.label(i), r.image(i));
    }
    let report = verify_affine_relations(&r, Some(2))?;
    println!("{} pairs checked, all relations hold: {}", report.pairs.len(), report.passed());
    Ok(())
}
