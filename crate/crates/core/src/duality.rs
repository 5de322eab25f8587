//! The multiplicative unitary, the left regular representation of the
//! convolution algebra, and the dual finite quantum group.
//!
//! Operators on `H_h (x) H_h` are `n^2 x n^2` matrices with the first leg as
//! the outer index, matching `CMat::kronecker`.

use std::sync::Arc;

use crate::convolution::Functional;
use crate::element::{same_owner, AlgebraElement, Qg};
use crate::error::{QgError, Result};
use crate::linalg::{self, CMat, CVec, C64, ONE, ZERO};
use crate::quantum_group::{FiniteQuantumGroup, StructureData};

const EXTRACTION_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct MultiplicativeUnitary {
    pub n: usize,
    pub w: CMat,
}

impl MultiplicativeUnitary {
    /// `W^*(Lambda(a) (x) Lambda(b)) = (Lambda (x) Lambda)(Delta(b)(a (x) 1))`.
    pub fn build(g: &FiniteQuantumGroup) -> Result<Self> {
        let n = g.dim();
        let gns = g.gns()?;
        let mut k = CMat::zeros(n * n, n * n);
        for a in 0..n {
            for b in 0..n {
                for j in 0..n {
                    for kk in 0..n {
                        let d = g.coproduct_coeff(b, j, kk);
                        if d == ZERO {
                            continue;
                        }
                        for m in 0..n {
                            let mm = g.mult_coeff(j, a, m);
                            if mm != ZERO {
                                k[(m * n + kk, a * n + b)] += d * mm;
                            }
                        }
                    }
                }
            }
        }
        let rr = linalg::kron(&gns.lambda_map, &gns.lambda_map);
        let rr_inv = linalg::kron(&gns.lambda_inv, &gns.lambda_inv);
        let w_star = rr * k * rr_inv;
        let w = w_star.adjoint();
        let mu = Self { n, w };
        let res = mu.unitarity_residual();
        if res > 1e-8 {
            return Err(QgError::InvalidInstance(format!(
                "multiplicative unitary fails unitarity by {res:e}"
            )));
        }
        Ok(mu)
    }

    pub fn unitarity_residual(&self) -> f64 {
        let id = linalg::identity(self.n * self.n);
        linalg::close_mat(&(self.w.adjoint() * &self.w), &id)
            .max(linalg::close_mat(&(&self.w * self.w.adjoint()), &id))
    }

    /// `|| W12 W13 W23 - W23 W12 ||_F`.
    pub fn pentagon_residual(&self) -> f64 {
        let n = self.n;
        let id = linalg::identity(n);
        let w12 = linalg::kron(&self.w, &id);
        let w23 = linalg::kron(&id, &self.w);
        let s23 = linalg::kron(&id, &flip(n));
        let w13 = &s23 * &w12 * &s23;
        let lhs = &w12 * &w13 * &w23;
        let rhs = &w23 * &w12;
        linalg::close_mat(&lhs, &rhs)
    }

    /// Largest `|| W^*(1 (x) lambda(e_i))W - (lambda (x) lambda)Delta(e_i) ||`.
    pub fn coproduct_residual(&self, g: &FiniteQuantumGroup) -> Result<f64> {
        let gns = g.gns()?;
        let n = self.n;
        let id = linalg::identity(n);
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let lhs = self.w.adjoint() * linalg::kron(&id, &gns.left_basis[i]) * &self.w;
            let d = g.coproduct(&g.basis_vector(i));
            let mut rhs = CMat::zeros(n * n, n * n);
            for j in 0..n {
                for k in 0..n {
                    if d[j * n + k] != ZERO {
                        rhs += linalg::kron(&gns.left_basis[j], &gns.left_basis[k]) * d[j * n + k];
                    }
                }
            }
            worst = worst.max(linalg::close_mat(&lhs, &rhs));
        }
        Ok(worst)
    }

    /// `Sigma W^* Sigma`.
    pub fn dual(&self) -> CMat {
        let s = flip(self.n);
        &s * self.w.adjoint() * &s
    }
}

/// Flip `Sigma` on `C^n (x) C^n`.
pub fn flip(n: usize) -> CMat {
    let mut s = CMat::zeros(n * n, n * n);
    for p in 0..n {
        for q in 0..n {
            s[(q * n + p, p * n + q)] = ONE;
        }
    }
    s
}

/// Writes `w = sum_l basis[l] (x) x_l` and returns the `x_l` with the
/// residual of the fit.
pub fn slice_first_leg(w: &CMat, basis: &[CMat]) -> (Vec<CMat>, f64) {
    let n = basis[0].nrows();
    let m = basis.len();
    let k = w.nrows() / n;
    let phi = stack(basis);
    let mut wt = CMat::zeros(n * n, k * k);
    for p in 0..n {
        for pp in 0..n {
            for q in 0..k {
                for qq in 0..k {
                    wt[(p * n + pp, q * k + qq)] = w[(p * k + q, pp * k + qq)];
                }
            }
        }
    }
    let xt = linalg::lstsq(&phi, &wt);
    let res = linalg::close_mat(&(&phi * &xt), &wt);
    let xs = (0..m)
        .map(|l| CMat::from_fn(k, k, |q, qq| xt[(l, q * k + qq)]))
        .collect();
    (xs, res)
}

/// Columns are the row-major vectorizations of the given matrices.
fn stack(mats: &[CMat]) -> CMat {
    let n = mats[0].nrows();
    let c = mats[0].ncols();
    CMat::from_fn(n * c, mats.len(), |pq, l| mats[l][(pq / c, pq % c)])
}

fn vectorize(m: &CMat) -> CMat {
    let c = m.ncols();
    CMat::from_fn(m.nrows() * c, 1, |pq, _| m[(pq / c, pq % c)])
}

/// The dual quantum group, realised on the GNS space of the primal one.
#[derive(Debug)]
pub struct DualQuantumGroup {
    pub dual: Qg,
    pub w: MultiplicativeUnitary,
    /// `b_l = lambda(delta_l)`, the dual basis as operators on `H_h`.
    pub basis_ops: Vec<CMat>,
    pub w_hat: CMat,
    /// `W_hat = sum_l b_l (x) y_l`.
    pub w_hat_slices: Vec<CMat>,
    /// `Lambda_hat(lambda(omega)) = lambda_hat_map * omega`.
    pub lambda_hat_map: CMat,
    /// `J_hat v = j_hat * conj(v)`.
    pub j_hat: CMat,
    /// `phi_hat = phi_hat_scale * h_hat` for the unnormalised dual weight.
    pub phi_hat_scale: f64,
    pub extraction_residual: f64,
    stacked: CMat,
}

impl DualQuantumGroup {
    pub fn build(g: &FiniteQuantumGroup) -> Result<Self> {
        let n = g.dim();
        let gns = g.gns()?;
        let w = MultiplicativeUnitary::build(g)?;
        let (basis_ops, res_w) = slice_first_leg(&w.w, &gns.left_basis);
        let stacked = stack(&basis_ops);
        let sv = linalg::singular_values(&stacked);
        if sv[n - 1] < 1e-10 * sv[0] {
            return Err(QgError::InvalidInstance(
                "slices of the multiplicative unitary are linearly dependent".into(),
            ));
        }
        let mut residual = res_w;
        let mut decompose = |m: &CMat| -> Vec<C64> {
            let v = vectorize(m);
            let x = linalg::lstsq(&stacked, &v);
            residual = residual.max(linalg::close_mat(&(&stacked * &x), &v));
            x.iter().cloned().collect()
        };

        let mut mult = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                mult.extend(decompose(&(&basis_ops[i] * &basis_ops[j])));
            }
        }
        let unit = decompose(&linalg::identity(n));
        let mut star = CMat::zeros(n, n);
        let mut antipode = CMat::zeros(n, n);
        let jc = gns.modular_conj.map(|z| z.conj());
        for i in 0..n {
            for (j, z) in decompose(&basis_ops[i].adjoint()).into_iter().enumerate() {
                star[(i, j)] = z;
            }
            let s = &gns.modular_conj * basis_ops[i].transpose() * &jc;
            for (j, z) in decompose(&s).into_iter().enumerate() {
                antipode[(i, j)] = z;
            }
        }
        let one = gns.lambda(g.unit());
        let counit = basis_ops
            .iter()
            .map(|b| one.dotc(&(b * &one)))
            .collect();
        let haar = basis_ops.iter().map(|b| b.trace() / n as f64).collect();

        let w_hat = w.dual();
        let id = linalg::identity(n);
        let mut coproduct = Vec::with_capacity(n * n * n);
        for b in &basis_ops {
            let z = w_hat.adjoint() * linalg::kron(&id, b) * &w_hat;
            let mut zt = CMat::zeros(n * n, n * n);
            for p in 0..n {
                for pp in 0..n {
                    for q in 0..n {
                        for qq in 0..n {
                            zt[(p * n + pp, q * n + qq)] = z[(p * n + q, pp * n + qq)];
                        }
                    }
                }
            }
            let c1 = linalg::lstsq(&stacked, &zt);
            let c = linalg::lstsq(&stacked, &c1.transpose()).transpose();
            residual = residual.max(linalg::close_mat(&(&stacked * &c * stacked.transpose()), &zt));
            for j in 0..n {
                for k in 0..n {
                    coproduct.push(c[(j, k)]);
                }
            }
        }
        if residual > EXTRACTION_TOL {
            return Err(QgError::InvalidInstance(format!(
                "dual structure extraction residual {residual:e}"
            )));
        }
        let (w_hat_slices, res_hat) = slice_first_leg(&w_hat, &basis_ops);
        if res_hat > EXTRACTION_TOL {
            return Err(QgError::InvalidInstance(format!(
                "dual unitary is not in the expected tensor product ({res_hat:e})"
            )));
        }

        let cmat = g.star_matrix();
        let lambda_hat_map = &gns.lambda_inv * cmat;
        let y = CMat::from_fn(n, n, |i, j| g.adjoint(&g.antipode(&g.basis_vector(i)))[j]);
        let c_inv = linalg::inverse(cmat)
            .ok_or_else(|| QgError::InvalidInstance("star matrix is singular".into()))?;
        let j_hat = &lambda_hat_map * (y * c_inv * &gns.lambda_map).map(|z| z.conj());
        let lh1 = &lambda_hat_map * linalg::to_cvec(g.counit());
        let phi_hat_scale = lh1.norm_squared();

        let data = StructureData {
            name: format!("dual_{}", g.name()),
            basis_labels: g.basis_labels().iter().map(|l| format!("hat_{l}")).collect(),
            mult,
            unit,
            coproduct,
            counit,
            antipode,
            star,
            haar,
        };
        Ok(Self {
            dual: Arc::new(FiniteQuantumGroup::new(data)?),
            w,
            basis_ops,
            w_hat,
            w_hat_slices,
            lambda_hat_map,
            j_hat,
            phi_hat_scale,
            extraction_residual: residual.max(res_hat),
            stacked,
        })
    }

    /// `lambda(omega) = (omega (x) id) W`.
    pub fn lambda(&self, omega: &[C64]) -> CMat {
        crate::gns::combine(&self.basis_ops, omega)
    }

    /// Coefficients of an operator in the span of the dual basis.
    pub fn dual_coeffs(&self, m: &CMat) -> Vec<C64> {
        linalg::lstsq(&self.stacked, &vectorize(m)).iter().cloned().collect()
    }

    /// `Lambda_hat(lambda(omega))`.
    pub fn lambda_hat_vector(&self, omega: &[C64]) -> CVec {
        &self.lambda_hat_map * linalg::to_cvec(omega)
    }

    pub fn apply_j_hat(&self, v: &CVec) -> CVec {
        &self.j_hat * v.map(|z| z.conj())
    }

    /// `lambda_hat(omega_hat)` for a functional on the dual given by its
    /// values on the dual basis.
    pub fn lambda_hat(&self, values: &[C64]) -> CMat {
        crate::gns::combine(&self.w_hat_slices, values)
    }

    /// Values of the vector functional `y -> (y xi | eta)` on the dual basis.
    pub fn vector_functional(&self, xi: &CVec, eta: &CVec) -> Vec<C64> {
        self.basis_ops.iter().map(|b| eta.dotc(&(b * xi))).collect()
    }
}

/// Checks `Lambda(lambda_hat(omega_hat)) = Lambda_hat(lambda((x omega_1) omega_2))`
/// with `omega_hat = omega_hat_{x xi, eta}`, `xi = Lambda_hat(lambda(omega_1))`
/// and `eta = J_hat Lambda_hat(lambda(omega_2))`.
pub fn pairing_identity_residual(
    x: &AlgebraElement,
    w1: &Functional,
    w2: &Functional,
) -> Result<f64> {
    let g = x.owner();
    same_owner(g, w1.owner())?;
    same_owner(g, w2.owner())?;
    let gns = g.gns()?;
    let dual = g.dual()?;
    let xi = dual.lambda_hat_vector(w1.coeffs());
    let eta = dual.apply_j_hat(&dual.lambda_hat_vector(w2.coeffs()));
    let lx = gns.left_action(x.coeffs());
    let values = dual.vector_functional(&(&lx * xi), &eta);
    let lhs = dual.lambda_hat(&values) * gns.lambda(g.unit());
    let n = g.dim();
    let xw1: Vec<C64> = (0..n)
        .map(|i| linalg::dot(&g.mul(&g.basis_vector(i), x.coeffs()), w1.coeffs()))
        .collect();
    let xw1 = Functional::new(g, xw1)?;
    let rhs = dual.lambda_hat_vector(xw1.convolve(w2)?.coeffs());
    Ok((lhs - rhs).norm())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BidualityReport {
    /// Name of the canonical identification that matched best.
    pub map: String,
    pub violation: f64,
    pub candidates: Vec<(String, f64)>,
}

/// Largest violation of the Hopf *-structure by the linear map `phi`
/// (columns: images of basis elements) from `g` to `h`.
pub fn isomorphism_violation(g: &FiniteQuantumGroup, h: &FiniteQuantumGroup, phi: &CMat) -> f64 {
    let n = g.dim();
    if h.dim() != n {
        return f64::INFINITY;
    }
    let map = |a: &[C64]| -> Vec<C64> { (phi * linalg::to_cvec(a)).iter().cloned().collect() };
    let imgs: Vec<Vec<C64>> = (0..n).map(|i| map(&g.basis_vector(i))).collect();
    let mut v = linalg::diff_norm(&map(g.unit()), h.unit());
    for i in 0..n {
        for j in 0..n {
            let lhs = map(&g.mul(&g.basis_vector(i), &g.basis_vector(j)));
            v = v.max(linalg::diff_norm(&lhs, &h.mul(&imgs[i], &imgs[j])));
        }
        let e = g.basis_vector(i);
        v = v.max(linalg::diff_norm(&map(&g.adjoint(&e)), &h.adjoint(&imgs[i])));
        v = v.max(linalg::diff_norm(&map(&g.antipode(&e)), &h.antipode(&imgs[i])));
        v = v.max((g.counit_of(&e) - h.counit_of(&imgs[i])).norm());
        v = v.max((g.haar_of(&e) - h.haar_of(&imgs[i])).norm());
        let lhs = h.apply2(&g.coproduct(&e), map, map);
        v = v.max(linalg::diff_norm(&lhs, &h.coproduct(&imgs[i])));
    }
    v
}

/// Compares `g` with its double dual through the canonical identification
/// (evaluation: `e_i` goes to the `i`-th double-dual basis element), and,
/// for comparison, through its composition with the antipode.
pub fn biduality(g: &FiniteQuantumGroup) -> Result<BidualityReport> {
    let d1 = g.dual()?;
    let d2 = d1.dual.dual()?;
    let gg = &d2.dual;
    let candidates = vec![
        ("evaluation".to_string(), linalg::identity(g.dim())),
        ("evaluation_antipode".to_string(), g.antipode_matrix().transpose()),
    ];
    let scored: Vec<(String, f64)> = candidates
        .into_iter()
        .map(|(name, phi)| {
            let v = isomorphism_violation(g, gg, &phi);
            (name, v)
        })
        .collect();
    let best = scored
        .iter()
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .cloned()
        .expect("at least one candidate");
    Ok(BidualityReport {
        map: best.0,
        violation: best.1,
        candidates: scored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;
    use crate::quantum_group::DEFAULT_TOL;

    #[test]
    fn z2_multiplicative_unitary() {
        let g = FiniteQuantumGroup::from_function_algebra(&GroupTable::cyclic(2));
        let w = MultiplicativeUnitary::build(&g).unwrap();
        assert!(w.pentagon_residual() < 1e-12);
        assert!(w.coproduct_residual(&g).unwrap() < 1e-12);
        // permutation matrix: every entry 0 or 1
        for z in w.w.iter() {
            assert!(z.norm() < 1e-12 || (z - ONE).norm() < 1e-12);
        }
    }

    #[test]
    fn dual_of_function_algebra_validates() {
        let g = FiniteQuantumGroup::from_function_algebra(&GroupTable::s3());
        let d = g.dual().unwrap();
        let rep = d.dual.validate(DEFAULT_TOL);
        assert!(rep.passed, "{:?}", rep.failures());
        assert!(d.dual.is_cocommutative(1e-10));
        assert!(!d.dual.is_commutative(1e-10));
    }

    #[test]
    fn lambda_of_counit_is_identity() {
        let g = FiniteQuantumGroup::kac_paljutkin();
        let d = g.dual().unwrap();
        let l = d.lambda(g.counit());
        assert!(linalg::close_mat(&l, &linalg::identity(8)) < 1e-10);
    }

    #[test]
    fn biduality_on_small_instances() {
        for name in ["c_z2", "cg_s3", "kac_paljutkin"] {
            let g = FiniteQuantumGroup::builtin(name).unwrap();
            let rep = biduality(&g).unwrap();
            assert!(rep.violation < 1e-8, "{name}: {rep:?}");
        }
    }

    #[test]
    fn pairing_identity_trivial_case() {
        let g: Qg = Arc::new(FiniteQuantumGroup::from_function_algebra(&GroupTable::cyclic(2)));
        let x = AlgebraElement::unit(&g);
        let e = Functional::counit(&g);
        assert!(pairing_identity_residual(&x, &e, &e).unwrap() < 1e-12);
    }
}
