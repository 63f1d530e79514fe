//! Root-system data: dual Coxeter numbers, the highest root and Dynkin indices of
//! the nilradical modules.

use collapsing::levels::tables::commutative_parabolics;
use collapsing::liealg::ParabolicDatum;
use collapsing::rootsys::{dual_coxeter, RootSystem, TypeLabel};

fn main() -> collapsing::Result<()> {
    for (t, n) in [(TypeLabel::A, 4), (TypeLabel::C, 3), (TypeLabel::D, 5), (TypeLabel::E, 6), (TypeLabel::E, 7)] {
        let rs = RootSystem::new(t, n)?;
        let theta: Vec<String> = rs.labels(&rs.theta).iter().map(|x| x.to_string()).collect();
        println!("{}: dim {}, h∨ = {}, θ = [{}]", rs.name(), rs.dimension(), dual_coxeter(t, n), theta.join(","));
        for k in commutative_parabolics(t, n)? {
            let p = ParabolicDatum::new(&rs, k, false)?;
            let factors: Vec<String> = p.levi_factors.iter().map(|lf| lf.factor.name()).collect();
            println!("  p_α{k}: dim u = {}, [l,l] = {}", p.dim_u, factors.join(" ⊕ "));
        }
    }
    Ok(())
}
