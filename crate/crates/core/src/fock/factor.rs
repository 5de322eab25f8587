use rand::Rng;

use crate::error::{QgError, Result};
use crate::linalg::{self, CMat, CVec, C64, ONE, ZERO};
use crate::quantum_group::FiniteQuantumGroup;

/// A finite-dimensional C*-algebra in the GNS representation of a faithful
/// state. Elements are handled as matrices acting on `H_i`.
#[derive(Debug, Clone)]
pub struct FreeFactor {
    name: String,
    /// Images of an algebra basis on `H_i`.
    gens: Vec<CMat>,
    /// Unitary on `H_i`; column 0 is `xi`, the rest span `H_i^0`.
    frame: CMat,
}

impl FreeFactor {
    pub fn new(name: impl Into<String>, gens: Vec<CMat>, xi: &CVec) -> Result<Self> {
        let dim = xi.len();
        if gens.is_empty() {
            return Err(QgError::Structural("factor needs at least one generator".into()));
        }
        for g in &gens {
            if g.nrows() != dim || g.ncols() != dim {
                return Err(QgError::DimensionMismatch {
                    expected: dim,
                    got: g.nrows(),
                    context: "factor generator",
                });
            }
        }
        let norm = xi.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(QgError::InvalidInstance(format!("cyclic vector has norm {norm}")));
        }
        // faithful <=> a -> a xi is injective on the algebra
        let images = CMat::from_fn(dim, gens.len(), |r, c| (&gens[c] * xi)[r]);
        let gram = images.adjoint() * &images;
        let (eigs, _) = linalg::hermitian_eigen(&gram);
        let scale = eigs.last().cloned().unwrap_or(1.0).max(1.0);
        if eigs[0] <= 1e-10 * scale {
            return Err(QgError::NotFaithful { min_eigenvalue: eigs[0] });
        }
        Ok(Self {
            name: name.into(),
            gens,
            frame: complete_frame(xi),
        })
    }

    /// `C^m` acting diagonally, with the state given by `weights`.
    pub fn diagonal(weights: &[f64]) -> Result<Self> {
        let m = weights.len();
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(QgError::NotFaithful {
                min_eigenvalue: weights.iter().cloned().fold(f64::INFINITY, f64::min),
            });
        }
        let gens = (0..m)
            .map(|k| CMat::from_fn(m, m, |r, c| if r == k && c == k { ONE } else { ZERO }))
            .collect();
        let xi = CVec::from_fn(m, |r, _| linalg::r(weights[r].sqrt()));
        Self::new(format!("diag{m}"), gens, &xi)
    }

    /// `C(Z_2)` with the uniform state; `u = (1, -1)` is a centred symmetry.
    pub fn z2() -> Self {
        Self::diagonal(&[0.5, 0.5]).expect("uniform state is faithful")
    }

    /// `M_m` with the state `tr(density . )`, realized on `M_m` with the
    /// Hilbert-Schmidt structure via `a -> a density^{1/2}`.
    pub fn matrix_algebra(m: usize, density: &CMat) -> Result<Self> {
        if density.nrows() != m || density.ncols() != m {
            return Err(QgError::DimensionMismatch {
                expected: m,
                got: density.nrows(),
                context: "density matrix",
            });
        }
        let (eigs, _) = linalg::hermitian_eigen(density);
        if eigs[0] <= 1e-12 {
            return Err(QgError::NotFaithful { min_eigenvalue: eigs[0] });
        }
        let root = linalg::hermitian_apply(density, f64::sqrt);
        let id = linalg::identity(m);
        let mut gens = Vec::with_capacity(m * m);
        for r in 0..m {
            for c in 0..m {
                let e = CMat::from_fn(m, m, |i, j| if i == r && j == c { ONE } else { ZERO });
                gens.push(linalg::kron(&e, &id));
            }
        }
        let xi = CVec::from_fn(m * m, |k, _| root[(k / m, k % m)]);
        Self::new(format!("m{m}"), gens, &xi)
    }

    /// `M_m` with the normalized trace.
    pub fn matrix_trace(m: usize) -> Self {
        Self::matrix_algebra(m, &(linalg::identity(m) * linalg::r(1.0 / m as f64)))
            .expect("trace is faithful")
    }

    /// The GNS image of a finite quantum group with its Haar state.
    pub fn from_quantum_group(g: &FiniteQuantumGroup) -> Result<Self> {
        let gns = g.gns()?;
        let xi = gns.lambda(g.unit());
        Self::new(g.name().to_string(), gns.left_basis.clone(), &xi)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gns_dim(&self) -> usize {
        self.frame.nrows()
    }

    pub fn centred_dim(&self) -> usize {
        self.gns_dim() - 1
    }

    pub fn algebra_dim(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[CMat] {
        &self.gens
    }

    pub fn xi(&self) -> CVec {
        self.frame.column(0).into_owned()
    }

    pub fn frame(&self) -> &CMat {
        &self.frame
    }

    /// Element with the given coefficients in the generator basis.
    pub fn element(&self, coeffs: &[C64]) -> Result<CMat> {
        if coeffs.len() != self.gens.len() {
            return Err(QgError::DimensionMismatch {
                expected: self.gens.len(),
                got: coeffs.len(),
                context: "factor element",
            });
        }
        let n = self.gns_dim();
        let mut out = CMat::zeros(n, n);
        for (g, z) in self.gens.iter().zip(coeffs) {
            out += g * *z;
        }
        Ok(out)
    }

    pub fn state(&self, a: &CMat) -> C64 {
        let xi = self.frame.column(0);
        xi.dotc(&(a * xi))
    }

    pub fn centre(&self, a: &CMat) -> CMat {
        a - linalg::identity(self.gns_dim()) * self.state(a)
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> CMat {
        let coeffs = linalg::random_vector(rng, self.gens.len());
        self.element(&coeffs).expect("length matches")
    }

    pub fn random_centred(&self, rng: &mut impl Rng) -> CMat {
        self.centre(&self.random_element(rng))
    }

    /// `a` in the frame `(xi, H_i^0)`.
    pub(crate) fn local(&self, a: &CMat) -> CMat {
        self.frame.adjoint() * a * &self.frame
    }
}

/// Unitary whose first column is `xi`, by Gram-Schmidt against the standard
/// basis.
fn complete_frame(xi: &CVec) -> CMat {
    let n = xi.len();
    let mut cols: Vec<CVec> = vec![xi.clone()];
    for k in 0..n {
        if cols.len() == n {
            break;
        }
        let mut v = CVec::from_fn(n, |r, _| if r == k { ONE } else { ZERO });
        for _ in 0..2 {
            for q in &cols {
                let p = q.dotc(&v);
                v -= q * p;
            }
        }
        let nv = v.norm();
        if nv > 1e-8 {
            cols.push(v / linalg::r(nv));
        }
    }
    CMat::from_columns(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_symmetry_swaps_vacuum_and_centred_vector() {
        let f = FreeFactor::z2();
        let u = f.element(&[ONE, -ONE]).unwrap();
        assert!(f.state(&u).norm() < 1e-15);
        let b = f.local(&u);
        assert!((b[(1, 0)].norm() - 1.0).abs() < 1e-12);
        assert!((b[(0, 1)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matrix_trace_state() {
        let f = FreeFactor::matrix_trace(2);
        assert_eq!(f.centred_dim(), 3);
        let a = f.element(&[ONE, ZERO, ZERO, linalg::r(3.0)]).unwrap();
        assert!((f.state(&a) - linalg::r(2.0)).norm() < 1e-12);
    }

    #[test]
    fn degenerate_weights_rejected() {
        assert!(matches!(
            FreeFactor::diagonal(&[1.0, 0.0]),
            Err(QgError::NotFaithful { .. })
        ));
    }
}
