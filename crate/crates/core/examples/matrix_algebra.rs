//! Matrix realization of `sp4`: the Chevalley basis, the normalized form and the
//! minimal grading with its symplectic form on `g_{1/2}`.

use collapsing::liealg::{MatrixLieAlgebra, MinimalTriple};
use collapsing::rootsys::TypeLabel;

fn main() -> collapsing::Result<()> {
    let g = MatrixLieAlgebra::new(TypeLabel::C, 2)?;
    println!("{}: {} basis elements as {}×{} matrices", g.name(), g.dim(), g.size, g.size);
    for b in &g.basis {
        println!("  {}", b.label);
    }
    let triple = MinimalTriple::new(&g);
    println!("minimal grading: dim g_1/2 = {}", triple.half_basis.len());
    for (pos, &i) in triple.half_basis.iter().enumerate() {
        let j = triple.half_basis[triple.partner(&g, pos)];
        let w = triple.omega_chi(&g, &g.unit(i), &g.unit(j));
        println!("  ω({}, {}) = {w}", g.basis[i].label, g.basis[j].label);
    }
    Ok(())
}
