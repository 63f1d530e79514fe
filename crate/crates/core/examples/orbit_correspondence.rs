//! Nilpotent orbits below a Richardson orbit and the correspondence χ onto the
//! orbits of the centralizer, checked on sampled matrices.

use collapsing::orbits::{verify_chi_by_sampling, ChiSetting};
use collapsing::rootsys::TypeLabel;

fn main() -> collapsing::Result<()> {
    let setting = ChiSetting::new(TypeLabel::D, 6, 6)?;
    let map = setting.chi_map()?;
    println!("χ: {} → {}", setting.algebra(), setting.target_algebra());
    for (i, j) in &map.arrows {
        println!("  {} (dim {}) ↦ {}", map.source.nodes[*i], map.source.dims[*i], map.target.nodes[*j]);
    }
    println!("order isomorphism: {}", map.is_order_isomorphism());
    let report = verify_chi_by_sampling(TypeLabel::C, 3, 3, 5, 1)?;
    println!("sp6 sampled Jordan types agree: {}", report.passed());
    Ok(())
}
