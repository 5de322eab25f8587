//! Left multipliers of the dual convolution algebra induced by coefficients
//! of invertible corepresentations.
//!
//! For `x = T^{pi~}_{alpha,beta}` write `Delta(x) = sum_i a_i (x) b_i` with
//! `b_i = T^{pi~}_{f_i,beta}` and `a_i = T^{pi~}_{alpha,f_i}`. The multiplier
//! acts on the dual by `L^*(y) = sum_i S(b_i^*)^* y a_i`, and satisfies
//! `lambda_hat(L omega) = x lambda_hat(omega)`.

use crate::corep::{Corepresentation, Variant, INVERTIBILITY_RATIO};
use crate::element::AlgebraElement;
use crate::error::{QgError, Result};
use crate::linalg::{self, CMat, C64, ZERO};

#[derive(Debug, Clone)]
pub struct Multiplier {
    pub x: AlgebraElement,
    pub a: Vec<AlgebraElement>,
    pub b: Vec<AlgebraElement>,
    /// `c_i = S(b_i^*)^*`.
    pub c: Vec<AlgebraElement>,
    /// Matrix of `L^*` on dual coefficients; column `l` is `L^*(b_l)`.
    pub lstar: CMat,
    /// `||sum c_i c_i^*||^{1/2} ||sum a_i^* a_i||^{1/2}`.
    pub norm_bound: f64,
    /// `||pi||_cb ||pi^*||_cb ||alpha|| ||beta||`.
    pub cor_bound: f64,
    /// `||Delta(x) - sum_i a_i (x) b_i||`.
    pub coproduct_residual: f64,
    /// Largest `||lambda_hat(L omega) - x lambda_hat(omega)||` over matrix-unit
    /// functionals.
    pub residual: f64,
    /// `||(L^* (x) id)(W_hat) - (1 (x) x) W_hat||`.
    pub w_hat_residual: f64,
    /// How far `L^*` leaves the dual algebra.
    pub closure_residual: f64,
}

pub fn multiplier_from_coefficient(
    v: &Corepresentation,
    alpha: &[C64],
    beta: &[C64],
) -> Result<Multiplier> {
    multiplier_in_basis(v, alpha, beta, &linalg::identity(v.dim()))
}

/// Same as [`multiplier_from_coefficient`] with the expansion of `Delta(x)`
/// taken over the orthonormal basis given by the columns of `basis`.
pub fn multiplier_in_basis(
    v: &Corepresentation,
    alpha: &[C64],
    beta: &[C64],
    basis: &CMat,
) -> Result<Multiplier> {
    let g = v.owner();
    let d = v.dim();
    let n = g.dim();
    let ratio = v.invertibility_ratio()?;
    if ratio < INVERTIBILITY_RATIO {
        return Err(QgError::NotInvertible { ratio });
    }
    if basis.nrows() != d || basis.ncols() != d {
        return Err(QgError::DimensionMismatch {
            expected: d,
            got: basis.nrows(),
            context: "multiplier basis",
        });
    }
    let gns = g.gns()?;
    let dual = g.dual()?;
    let vt = v.generator(Variant::Tilde);
    let x = vt.coefficient(alpha, beta)?;
    let mut a = Vec::with_capacity(d);
    let mut b = Vec::with_capacity(d);
    for i in 0..d {
        let f: Vec<C64> = basis.column(i).iter().cloned().collect();
        b.push(vt.coefficient(&f, beta)?);
        a.push(vt.coefficient(alpha, &f)?);
    }
    let c: Vec<AlgebraElement> = b.iter().map(|bi| bi.adjoint().apply_antipode().adjoint()).collect();

    let mut expansion = vec![ZERO; n * n];
    for (ai, bi) in a.iter().zip(&b) {
        for p in 0..n {
            for q in 0..n {
                expansion[p * n + q] += ai.coeffs()[p] * bi.coeffs()[q];
            }
        }
    }
    let coproduct_residual = linalg::diff_norm(&x.apply_coproduct(), &expansion);

    let am: Vec<CMat> = a.iter().map(|e| gns.left_action(e.coeffs())).collect();
    let cm: Vec<CMat> = c.iter().map(|e| gns.left_action(e.coeffs())).collect();
    let apply = |y: &CMat| -> CMat {
        let mut out = CMat::zeros(n, n);
        for (ci, ai) in cm.iter().zip(&am) {
            out += ci * y * ai;
        }
        out
    };
    let images: Vec<CMat> = dual.basis_ops.iter().map(apply).collect();
    let mut lstar = CMat::zeros(n, n);
    let mut closure_residual: f64 = 0.0;
    for (l, img) in images.iter().enumerate() {
        let coeffs = dual.dual_coeffs(img);
        let back = dual.lambda(&coeffs);
        closure_residual = closure_residual.max(linalg::close_mat(&back, img));
        for (k, z) in coeffs.into_iter().enumerate() {
            lstar[(k, l)] = z;
        }
    }

    let lx = gns.left_action(x.coeffs());
    let mut residual: f64 = 0.0;
    for p in 0..n {
        for q in 0..n {
            let vals: Vec<C64> = dual.basis_ops.iter().map(|bl| bl[(p, q)]).collect();
            let lvals: Vec<C64> = images.iter().map(|im| im[(p, q)]).collect();
            let lhs = dual.lambda_hat(&lvals);
            let rhs = &lx * dual.lambda_hat(&vals);
            residual = residual.max(linalg::op_norm(&(lhs - rhs)));
        }
    }

    let id = linalg::identity(n);
    let mut lw = CMat::zeros(n * n, n * n);
    for (ci, ai) in cm.iter().zip(&am) {
        lw += linalg::kron(ci, &id) * &dual.w_hat * linalg::kron(ai, &id);
    }
    let xw = linalg::kron(&id, &lx) * &dual.w_hat;
    let w_hat_residual = linalg::op_norm(&(lw - xw));

    let mut row = CMat::zeros(n, n);
    let mut col = CMat::zeros(n, n);
    for (ci, ai) in cm.iter().zip(&am) {
        row += ci * ci.adjoint();
        col += ai.adjoint() * ai;
    }
    let norm_bound = (linalg::op_norm(&row) * linalg::op_norm(&col)).sqrt();
    let cor_bound = v.cb_norm()?
        * v.generator(Variant::Star).cb_norm()?
        * linalg::vec_norm(alpha)
        * linalg::vec_norm(beta);

    Ok(Multiplier {
        x,
        a,
        b,
        c,
        lstar,
        norm_bound,
        cor_bound,
        coproduct_residual,
        residual,
        w_hat_residual,
        closure_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Qg;
    use crate::group::GroupTable;
    use crate::linalg::ONE;
    use crate::quantum_group::FiniteQuantumGroup;
    use std::sync::Arc;

    #[test]
    fn character_multiplier_is_sign_on_dual() {
        let g: Qg = Arc::new(FiniteQuantumGroup::from_function_algebra(&GroupTable::cyclic(2)));
        let v = Corepresentation::new(&g, 1, vec![vec![ONE, -ONE]]).unwrap();
        let m = multiplier_from_coefficient(&v, &[ONE], &[ONE]).unwrap();
        assert!(m.residual < 1e-12);
        let expected = CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]);
        assert!(linalg::close_mat(&m.lstar, &expected) < 1e-12);
        assert!(m.norm_bound <= 1.0 + 1e-12);
    }
}
