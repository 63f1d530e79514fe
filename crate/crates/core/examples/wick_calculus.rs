//! Wick calculus on free fields, cross-checked against the mode action on a
//! truncated Fock space.

use collapsing::vertex::{parse_field, wick_commutator, FieldSystem, ModeOracle};

fn main() -> collapsing::Result<()> {
    let sys = FieldSystem::weyl(1);
    // Number operator and the cubic term of the sl2 realization.
    let number = parse_field(":a*[1] a[1]:")?;
    let cubic = parse_field(":a*[1] a*[1] a[1]:")?;
    for (x, y) in [(&number, &number), (&number, &cubic), (&cubic, &cubic)] {
        let d = wick_commutator(&sys, x, y)?;
        let oracle = ModeOracle::new(&sys).check_bracket(x, y, &d, 4)?;
        println!("[{x}_λ {y}] = {d}");
        println!("  Fock check to depth 4: {} states, passed = {}", oracle.states, oracle.passed());
    }
    Ok(())
}
