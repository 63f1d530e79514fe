//! Symbolic vertex-algebra engine for free fields and affine currents.
//!
//! Fields are sums of normally ordered monomials in Weyl pairs `a, a*`,
//! fermion pairs `ψ, ψ*`, neutral fields `φ`, Heisenberg fields `b` and currents
//! `J`. Commutators are computed by Wick contraction ([`wick`]) and can be
//! cross-checked against the mode action on a truncated Fock space ([`fock`]),
//! which only uses the generator commutation relations.
//!
//! Mode conventions: `A(z) = Σ_n A_(n) z^{−n−1}`, so `A_(n)` with `n ≥ 0`
//! annihilates the vacuum and `[A(z), B(w)] = Σ_j (A_(j)B)(w) ∂_w^j δ(z−w)/j!`.

pub mod field;
pub mod fock;
pub mod modealg;
pub mod notation;
pub mod wick;
pub mod zhu;

pub use field::{CurrentAlgebra, Factor, Field, FieldSystem, Gen, Monomial};
pub use fock::{ModeOracle, OracleReport};
pub use notation::parse_field;
pub use wick::{nth_product, normal_order, ope, wick_commutator, DeltaExpansion};
pub use zhu::{c2_project, zhu_project, DiffOp, Polynomial, Var};
