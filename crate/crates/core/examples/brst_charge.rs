//! The BRST charge of minimal reduction for `sl3`: its terms, `Q_(0)² = 0`, and
//! the level of the centralizer currents.

use collapsing::dsred::{build_brst, check_natural_embedding, check_q_squared_zero};
use collapsing::rootsys::TypeLabel;
use collapsing::Q;

fn main() -> collapsing::Result<()> {
    let c = build_brst(TypeLabel::A, 2, Q::new(-1, 3))?;
    println!("Q = {}", c.q);
    let nil = check_q_squared_zero(&c, 3)?;
    println!("Q_(0)² = 0: Wick {}, {} Fock states clean: {}", nil.wick_zero, nil.states, nil.witness.is_none());
    let emb = check_natural_embedding(&c, Some(2))?;
    for p in &emb.pairs {
        println!("κ♮ on the centre: observed {}, expected {}", p.observed_level, p.expected_level);
    }
    Ok(())
}
