//! Collapsing levels, the shifted levels on the centralizer, the central-charge
//! identity and the associated-variety recursion for a few algebras.

use collapsing::levels::tables::symbolic_table;
use collapsing::levels::{central_charge_check, collapsing_level, table5_chain};
use collapsing::rootsys::TypeLabel;

fn main() -> collapsing::Result<()> {
    for (t, n, k) in [(TypeLabel::A, 5, 3), (TypeLabel::C, 4, 4), (TypeLabel::D, 6, 1), (TypeLabel::E, 7, 6)] {
        let level = collapsing_level(t, n, k)?;
        let charge = central_charge_check(t, n, k)?;
        let chain = table5_chain(t, n, k)?;
        println!(
            "{} p_α{k}: k_p = {}, c(W) = {} = Σ c_Sug: {}, X_V = {}",
            level.algebra, level.k_p, charge.w_charge, charge.passed, chain.variety()
        );
    }
    let table = symbolic_table("collapsing")?;
    for row in &table.rows {
        println!("{}", row.join(" | "));
    }
    Ok(())
}
