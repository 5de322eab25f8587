use std::sync::Arc;

use nalgebra_sparse::{CooMatrix, CsrMatrix};

use super::space::FockSpace;
use crate::error::{QgError, Result};
use crate::linalg::{self, CMat, C64};

/// `pi_i(a)` on the truncated Fock space. Components longer than the word
/// cap are dropped, so this is the compression of the free action.
#[derive(Debug, Clone)]
pub struct FreeOperator {
    pub factor: usize,
    pub element: CMat,
    matrix: Arc<CsrMatrix<C64>>,
    adjoint: Arc<CsrMatrix<C64>>,
}

impl FreeOperator {
    pub fn matrix(&self) -> &CsrMatrix<C64> {
        &self.matrix
    }

    pub fn adjoint_matrix(&self) -> &CsrMatrix<C64> {
        &self.adjoint
    }

    pub fn apply(&self, v: &CMat) -> CMat {
        self.matrix.as_ref() * v
    }

    pub fn apply_adjoint(&self, v: &CMat) -> CMat {
        self.adjoint.as_ref() * v
    }
}

/// Builds `pi_i(a)`. With `a = phi_i(a) 1 + a^0` the action on a word `w`
/// not starting in `i` and on `h w` with `h` in `H_i^0` is `a` acting on
/// `H_i = C xi + H_i^0` in the first leg.
pub fn free_action(space: &FockSpace, i: usize, a: &CMat) -> Result<FreeOperator> {
    let f = space.factor(i)?;
    let d = f.gns_dim();
    if a.nrows() != d || a.ncols() != d {
        return Err(QgError::DimensionMismatch {
            expected: d,
            got: a.nrows(),
            context: "free action element",
        });
    }
    let b = f.local(a);
    let cutoff = 1e-15 * b.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let n = space.dim();
    let mut coo = CooMatrix::new(n, n);
    let mut slots: Vec<Option<usize>> = vec![None; d];
    for t in 0..n {
        if space.first_factor_of(t) == Some(i) {
            continue;
        }
        slots[0] = Some(t);
        let c = space.child_of(t, i);
        for k in 1..d {
            slots[k] = c.map(|c| c + k - 1);
        }
        for (r, tr) in slots.iter().enumerate() {
            let Some(tr) = tr else { continue };
            for (s, ts) in slots.iter().enumerate() {
                let Some(ts) = ts else { continue };
                let z = b[(r, s)];
                if z.norm() > cutoff {
                    coo.push(*tr, *ts, z);
                }
            }
        }
    }
    let matrix = CsrMatrix::from(&coo);
    let adjoint = conj_transpose(&matrix);
    Ok(FreeOperator {
        factor: i,
        element: a.clone(),
        matrix: Arc::new(matrix),
        adjoint: Arc::new(adjoint),
    })
}

pub(crate) fn conj_transpose(m: &CsrMatrix<C64>) -> CsrMatrix<C64> {
    let mut t = m.transpose();
    for v in t.values_mut() {
        *v = v.conj();
    }
    t
}

/// `sum_r a_r (x) X_r` acting on `C^k (x) H`, stored as `dim x k` blocks.
#[derive(Debug, Clone)]
pub struct AmplifiedOperator {
    k: usize,
    terms: Vec<(CMat, FreeOperator)>,
}

impl AmplifiedOperator {
    pub fn new(k: usize) -> Self {
        Self { k, terms: Vec::new() }
    }

    pub fn from_operator(op: &FreeOperator) -> Self {
        let mut out = Self::new(1);
        out.terms.push((linalg::identity(1), op.clone()));
        out
    }

    /// Sum of free operators with scalar weights.
    pub fn scalar_sum(ops: &[(C64, &FreeOperator)]) -> Self {
        let mut out = Self::new(1);
        for (z, op) in ops {
            out.terms.push((linalg::identity(1) * *z, (*op).clone()));
        }
        out
    }

    pub fn add_term(&mut self, a: CMat, op: &FreeOperator) -> Result<()> {
        if a.nrows() != self.k || a.ncols() != self.k {
            return Err(QgError::DimensionMismatch {
                expected: self.k,
                got: a.nrows(),
                context: "amplification matrix",
            });
        }
        self.terms.push((a, op.clone()));
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[(CMat, FreeOperator)] {
        &self.terms
    }

    /// Column `c` of `v` is the `H` component at `e_c`.
    pub fn apply(&self, v: &CMat) -> CMat {
        let mut out = CMat::zeros(v.nrows(), self.k);
        for (a, op) in &self.terms {
            accumulate(&mut out, v, op.matrix(), |r, c| a[(r, c)]);
        }
        out
    }

    pub fn apply_adjoint(&self, v: &CMat) -> CMat {
        let mut out = CMat::zeros(v.nrows(), self.k);
        for (a, op) in &self.terms {
            accumulate(&mut out, v, op.adjoint_matrix(), |r, c| a[(c, r)].conj());
        }
        out
    }
}

/// `out[:, r] += sum_c coeff(r, c) X v[:, c]`, skipping zero coefficients.
fn accumulate(out: &mut CMat, v: &CMat, x: &CsrMatrix<C64>, coeff: impl Fn(usize, usize) -> C64) {
    let (n, k) = (v.nrows(), out.ncols());
    let offsets = x.row_offsets();
    let cols = x.col_indices();
    let vals = x.values();
    let mut y = vec![linalg::ZERO; n];
    for c in 0..v.ncols() {
        if (0..k).all(|r| coeff(r, c) == linalg::ZERO) {
            continue;
        }
        let src = &v.as_slice()[c * n..(c + 1) * n];
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = linalg::ZERO;
            for p in offsets[i]..offsets[i + 1] {
                acc += vals[p] * src[cols[p]];
            }
            *yi = acc;
        }
        for r in 0..k {
            let z = coeff(r, c);
            if z == linalg::ZERO {
                continue;
            }
            let dst = &mut out.as_mut_slice()[r * n..(r + 1) * n];
            for (d, yi) in dst.iter_mut().zip(&y) {
                *d += z * yi;
            }
        }
    }
}

/// Vacuum expectation of an ordered product.
#[derive(Debug, Clone, Copy)]
pub struct VacuumValue {
    pub value: C64,
    /// The product acts without truncation loss on `Omega`.
    pub exact: bool,
}

/// `<Omega, x_1 x_2 ... x_n Omega>`.
pub fn vacuum_state(space: &FockSpace, product: &[&FreeOperator]) -> VacuumValue {
    let mut v = vacuum(space);
    for op in product.iter().rev() {
        v = op.apply(&v);
    }
    VacuumValue {
        value: v[(0, 0)],
        exact: product.len() <= space.max_len(),
    }
}

/// Basis vector `Omega` as a `dim x 1` block.
pub fn vacuum(space: &FockSpace) -> CMat {
    let mut v = CMat::zeros(space.dim(), 1);
    v[(0, 0)] = linalg::ONE;
    v
}
