use std::sync::Arc;

use crate::error::{QgError, Result};
use crate::linalg::{self, C64, ZERO};
use crate::quantum_group::FiniteQuantumGroup;

/// Shared handle to a quantum group; elements and functionals compare
/// owners by pointer identity.
pub type Qg = Arc<FiniteQuantumGroup>;

pub(crate) fn same_owner(a: &Qg, b: &Qg) -> Result<()> {
    if Arc::ptr_eq(a, b) {
        Ok(())
    } else {
        Err(QgError::OwnerMismatch)
    }
}

/// An element `x` of the algebra, as coefficients over the owner's basis.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    owner: Qg,
    coeffs: Vec<C64>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.owner, &other.owner) && self.coeffs == other.coeffs
    }
}

impl AlgebraElement {
    pub fn new(owner: &Qg, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != owner.dim() {
            return Err(QgError::DimensionMismatch {
                expected: owner.dim(),
                got: coeffs.len(),
                context: "algebra element",
            });
        }
        Ok(Self {
            owner: owner.clone(),
            coeffs,
        })
    }

    pub(crate) fn from_raw(owner: &Qg, coeffs: Vec<C64>) -> Self {
        debug_assert_eq!(coeffs.len(), owner.dim());
        Self {
            owner: owner.clone(),
            coeffs,
        }
    }

    pub fn basis(owner: &Qg, i: usize) -> Result<Self> {
        if i >= owner.dim() {
            return Err(QgError::IndexOutOfRange {
                index: i,
                len: owner.dim(),
            });
        }
        Ok(Self::from_raw(owner, owner.basis_vector(i)))
    }

    pub fn unit(owner: &Qg) -> Self {
        Self::from_raw(owner, owner.unit().to_vec())
    }

    pub fn zero(owner: &Qg) -> Self {
        Self::from_raw(owner, vec![ZERO; owner.dim()])
    }

    pub fn owner(&self) -> &Qg {
        &self.owner
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        same_owner(&self.owner, &other.owner)?;
        Ok(Self::from_raw(&self.owner, self.owner.mul(&self.coeffs, &other.coeffs)))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_raw(&self.owner, self.owner.adjoint(&self.coeffs))
    }

    /// `Delta(x)` as an `n^2` vector indexed by `j * n + k`.
    pub fn apply_coproduct(&self) -> Vec<C64> {
        self.owner.coproduct(&self.coeffs)
    }

    pub fn apply_antipode(&self) -> Self {
        Self::from_raw(&self.owner, self.owner.antipode(&self.coeffs))
    }

    pub fn apply_counit(&self) -> C64 {
        self.owner.counit_of(&self.coeffs)
    }

    pub fn apply_haar(&self) -> C64 {
        self.owner.haar_of(&self.coeffs)
    }

    /// C*-norm, the largest singular value of the GNS left action.
    pub fn operator_norm(&self) -> Result<f64> {
        let gns = self.owner.gns()?;
        Ok(linalg::op_norm(&gns.left_action(&self.coeffs)))
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

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        linalg::vec_norm(&self.coeffs)
    }
}
