//! The convolution algebra of functionals on a finite quantum group.

use std::sync::Arc;

use crate::element::{same_owner, AlgebraElement, Qg};
use crate::error::{QgError, Result};
use crate::linalg::{self, C64, ZERO};

/// A functional `omega`, stored by its values `omega(e_i)`.
#[derive(Debug, Clone)]
pub struct Functional {
    owner: Qg,
    coeffs: Vec<C64>,
}

impl PartialEq for Functional {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.owner, &other.owner) && self.coeffs == other.coeffs
    }
}

impl Functional {
    pub fn new(owner: &Qg, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != owner.dim() {
            return Err(QgError::DimensionMismatch {
                expected: owner.dim(),
                got: coeffs.len(),
                context: "functional",
            });
        }
        Ok(Self {
            owner: owner.clone(),
            coeffs,
        })
    }

    pub(crate) fn from_raw(owner: &Qg, coeffs: Vec<C64>) -> Self {
        Self {
            owner: owner.clone(),
            coeffs,
        }
    }

    /// The convolution unit.
    pub fn counit(owner: &Qg) -> Self {
        Self::from_raw(owner, owner.counit().to_vec())
    }

    pub fn haar(owner: &Qg) -> Self {
        Self::from_raw(owner, owner.haar().to_vec())
    }

    /// Dual basis functional `e_j -> [i == j]`.
    pub fn point(owner: &Qg, i: usize) -> Result<Self> {
        if i >= owner.dim() {
            return Err(QgError::IndexOutOfRange {
                index: i,
                len: owner.dim(),
            });
        }
        Ok(Self::from_raw(owner, owner.basis_vector(i)))
    }

    pub fn owner(&self) -> &Qg {
        &self.owner
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn evaluate(&self, x: &AlgebraElement) -> Result<C64> {
        same_owner(&self.owner, x.owner())?;
        Ok(self.coeffs.iter().zip(x.coeffs()).map(|(w, a)| w * a).sum())
    }

    pub fn convolve(&self, other: &Self) -> Result<Self> {
        same_owner(&self.owner, &other.owner)?;
        let g = &self.owner;
        let n = g.dim();
        let out = (0..n)
            .map(|i| {
                let mut s = ZERO;
                for j in 0..n {
                    if self.coeffs[j] == ZERO {
                        continue;
                    }
                    for k in 0..n {
                        s += g.coproduct_coeff(i, j, k) * self.coeffs[j] * other.coeffs[k];
                    }
                }
                s
            })
            .collect();
        Ok(Self::from_raw(g, out))
    }

    /// `<x, omega^*> = conj <x^*, omega>`.
    pub fn star_l1(&self) -> Self {
        let g = &self.owner;
        let out = (0..g.dim())
            .map(|i| {
                let xs = g.adjoint(&g.basis_vector(i));
                linalg::dot(&xs, &self.coeffs).conj()
            })
            .collect();
        Self::from_raw(g, out)
    }

    /// `<x, omega#> = conj <S(x)^*, omega>`; total since `S` is bounded.
    pub fn sharp(&self) -> Self {
        let g = &self.owner;
        let out = (0..g.dim())
            .map(|i| {
                let y = g.adjoint(&g.antipode(&g.basis_vector(i)));
                linalg::dot(&y, &self.coeffs).conj()
            })
            .collect();
        Self::from_raw(g, out)
    }

    /// Exact dual norm through the block decomposition.
    pub fn norm_l1(&self) -> Result<f64> {
        let blocks = self.owner.blocks()?;
        Ok(blocks
            .pairing_matrices(&self.coeffs)
            .iter()
            .map(linalg::trace_norm)
            .sum())
    }

    /// A norm-one element `x` with `omega(x) = ||omega||_1`.
    pub fn norm_witness(&self) -> Result<AlgebraElement> {
        let blocks = self.owner.blocks()?;
        let mats: Vec<_> = blocks
            .pairing_matrices(&self.coeffs)
            .into_iter()
            .map(|w| {
                let svd = w.svd(true, true);
                let (u, vt) = (svd.u.unwrap(), svd.v_t.unwrap());
                vt.adjoint() * u.adjoint()
            })
            .collect();
        Ok(AlgebraElement::from_raw(&self.owner, blocks.from_blocks(&mats)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_owner(&self.owner, &other.owner)?;
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self::from_raw(&self.owner, c))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_owner(&self.owner, &other.owner)?;
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self::from_raw(&self.owner, c))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_raw(&self.owner, self.coeffs.iter().map(|a| a * s).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;
    use crate::linalg::{r, I, ONE};
    use crate::quantum_group::FiniteQuantumGroup;

    fn cz2() -> Qg {
        Arc::new(FiniteQuantumGroup::from_function_algebra(&GroupTable::cyclic(2)))
    }

    #[test]
    fn point_masses_convolve_like_z2() {
        let g = cz2();
        let wg = Functional::point(&g, 1).unwrap();
        let we = Functional::point(&g, 0).unwrap();
        assert_eq!(wg.convolve(&wg).unwrap(), we);
        assert_eq!(wg.sharp(), wg);
    }

    #[test]
    fn l1_norms_on_z2() {
        let g = cz2();
        assert!((Functional::counit(&g).norm_l1().unwrap() - 1.0).abs() < 1e-12);
        assert!((Functional::haar(&g).norm_l1().unwrap() - 1.0).abs() < 1e-12);
        let w = Functional::new(&g, vec![ONE, -ONE]).unwrap();
        assert!((w.norm_l1().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn star_is_conjugate_linear() {
        let g = cz2();
        let w = Functional::new(&g, vec![r(0.3), c64(1.0, 2.0)]).unwrap();
        let lhs = w.scale(I).star_l1();
        let rhs = w.star_l1().scale(-I);
        assert_eq!(lhs, rhs);
        let real = Functional::new(&g, vec![r(0.3), r(-1.5)]).unwrap();
        assert_eq!(real.star_l1(), real);
    }

    fn c64(a: f64, b: f64) -> C64 {
        C64::new(a, b)
    }
}
