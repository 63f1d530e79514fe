//! Symmetric bilinear forms on a matrix Lie algebra, stored as Gram matrices.

use super::{Elem, MatrixLieAlgebra, ParabolicDatum};
use crate::linalg::Mat;
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// `k·κ₀`.
    Level(Q),
    Killing,
    CriticalParabolic,
    /// `κ* = −κ − κ_g` for a level form `κ`.
    Dual(Q),
}

#[derive(Clone, Debug)]
pub struct BilinearForm {
    pub kind: FormKind,
    pub gram: Mat,
}

impl BilinearForm {
    pub fn level(g: &MatrixLieAlgebra, k: Q) -> BilinearForm {
        let d = g.dim();
        let gram = Mat::from_rows((0..d).map(|i| (0..d).map(|j| k * g.kappa0_basis(i, j)).collect()).collect());
        BilinearForm { kind: FormKind::Level(k), gram }
    }

    pub fn killing(g: &MatrixLieAlgebra) -> BilinearForm {
        let d = g.dim();
        let ads: Vec<Mat> = (0..d).map(|i| g.ad(&g.unit(i))).collect();
        let gram = Mat::from_rows((0..d).map(|i| (0..d).map(|j| ads[i].trace_product(&ads[j])).collect()).collect());
        BilinearForm { kind: FormKind::Killing, gram }
    }

    pub fn critical_parabolic(g: &MatrixLieAlgebra, p: &ParabolicDatum) -> BilinearForm {
        BilinearForm { kind: FormKind::CriticalParabolic, gram: p.kappa_c_p_gram(g) }
    }

    /// Dual level `κ* = −κ − κ_g = (−k − 2h∨)κ₀`.
    pub fn dual(g: &MatrixLieAlgebra, k: Q) -> BilinearForm {
        let kd = -k - Q::int(2 * i64::from(g.root_system.dual_coxeter));
        let mut f = BilinearForm::level(g, kd);
        f.kind = FormKind::Dual(k);
        f
    }

    pub fn eval(&self, x: &[Q], y: &[Q]) -> Q {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| *a * *b).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    /// Check `κ([x, y], z) + κ(y, [x, z]) = 0` for `x` in `acting` and `y, z` in `on`.
    pub fn is_invariant(&self, g: &MatrixLieAlgebra, acting: &[Elem], on: &[Elem]) -> bool {
        acting.iter().all(|x| {
            on.iter().all(|y| {
                let xy = g.bracket(x, y);
                on.iter().all(|z| (self.eval(&xy, z) + self.eval(y, &g.bracket(x, z))).is_zero())
            })
        })
    }
}
