//! GNS construction for the Haar state.
//!
//! `Lambda(x) = R a` where `a` are the coefficients of `x` and `R = G^{1/2}`
//! for the Gram matrix `G[i][j] = h(e_i^* e_j)`. The image of the stored
//! basis is therefore mapped to an h-orthonormal frame.

use crate::error::{QgError, Result};
use crate::linalg::{self, CMat, CVec, C64, ZERO};
use crate::quantum_group::{FiniteQuantumGroup, DEFAULT_TOL};

#[derive(Debug, Clone)]
pub struct GnsData {
    pub gns_dim: usize,
    pub gram: CMat,
    /// `Lambda` as a matrix acting on coefficient columns.
    pub lambda_map: CMat,
    pub lambda_inv: CMat,
    /// `lambda_h(e_i)` for each basis element.
    pub left_basis: Vec<CMat>,
    /// Right multiplication `Lambda(y) -> Lambda(y e_i)`.
    pub right_basis: Vec<CMat>,
    /// `J v = modular_conj * conj(v)`.
    pub modular_conj: CMat,
    pub min_gram_eigenvalue: f64,
}

impl GnsData {
    pub fn compute(g: &FiniteQuantumGroup) -> Result<Self> {
        let n = g.dim();
        let gram = g.gram_matrix();
        let (eigs, _) = linalg::hermitian_eigen(&gram);
        let min = eigs[0];
        let max = eigs[n - 1].max(1.0);
        if min <= DEFAULT_TOL * max {
            return Err(QgError::NotFaithful { min_eigenvalue: min });
        }
        let r = linalg::hermitian_apply(&gram, f64::sqrt);
        let r_inv = linalg::hermitian_apply(&gram, |v| 1.0 / v.sqrt());
        let left_basis = (0..n)
            .map(|i| &r * g.left_mult_matrix(&g.basis_vector(i)) * &r_inv)
            .collect();
        let right_basis = (0..n)
            .map(|i| &r * g.right_mult_matrix(&g.basis_vector(i)) * &r_inv)
            .collect();
        let modular_conj = &r * g.star_matrix().transpose() * r_inv.map(|z| z.conj());
        Ok(Self {
            gns_dim: n,
            gram,
            lambda_map: r,
            lambda_inv: r_inv,
            left_basis,
            right_basis,
            modular_conj,
            min_gram_eigenvalue: min,
        })
    }

    pub fn lambda(&self, a: &[C64]) -> CVec {
        &self.lambda_map * linalg::to_cvec(a)
    }

    /// Coefficients of the element whose GNS vector is `v`.
    pub fn lambda_preimage(&self, v: &CVec) -> Vec<C64> {
        (&self.lambda_inv * v).iter().cloned().collect()
    }

    pub fn left_action(&self, a: &[C64]) -> CMat {
        combine(&self.left_basis, a)
    }

    pub fn right_action(&self, a: &[C64]) -> CMat {
        combine(&self.right_basis, a)
    }

    pub fn apply_j(&self, v: &CVec) -> CVec {
        &self.modular_conj * v.map(|z| z.conj())
    }

    /// `Delta = 1` in the Kac case.
    pub fn modular_op(&self) -> CMat {
        linalg::identity(self.gns_dim)
    }
}

pub(crate) fn combine(mats: &[CMat], a: &[C64]) -> CMat {
    let (r, c) = mats[0].shape();
    let mut out = CMat::zeros(r, c);
    for (m, &x) in mats.iter().zip(a) {
        if x != ZERO {
            out += m * x;
        }
    }
    out
}
