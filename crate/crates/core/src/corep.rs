//! Corepresentations `V = sum e_ij (x) v_ij` in `A (x) M_d` and the
//! representations `pi(omega) = (omega (x) id)V` of the convolution algebra.
//!
//! Operator-level residuals are measured in the GNS image, a `dn x dn`
//! matrix whose `(i, j)` block is `lambda_h(v_ij)`.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::convolution::Functional;
use crate::element::{same_owner, AlgebraElement, Qg};
use crate::error::{QgError, Result};
use crate::linalg::{self, CMat, CVec, C64, ONE, ZERO};

/// Smallest-to-largest singular value ratio below which `V` is singular.
pub const INVERTIBILITY_RATIO: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Pi,
    /// `pi^*(omega) = pi(omega#)^*`
    Star,
    /// `pi_check(omega) = pi((omega^*)#)`
    Check,
    /// `pi_tilde(omega) = pi(omega^*)^*`
    Tilde,
}

impl FromStr for Variant {
    type Err = QgError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pi" => Ok(Variant::Pi),
            "star" => Ok(Variant::Star),
            "check" => Ok(Variant::Check),
            "tilde" => Ok(Variant::Tilde),
            other => Err(QgError::UnknownVariant(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorepCheck {
    pub corep_violation: f64,
    pub anti_violation: f64,
    pub is_corep: bool,
    pub is_anti: bool,
}

#[derive(Debug, Clone)]
pub struct Corepresentation {
    owner: Qg,
    d: usize,
    /// Row-major `d x d` coefficient vectors.
    entries: Vec<Vec<C64>>,
}

impl Corepresentation {
    pub fn new(owner: &Qg, d: usize, entries: Vec<Vec<C64>>) -> Result<Self> {
        if d == 0 {
            return Err(QgError::Structural("corepresentation dimension must be positive".into()));
        }
        if entries.len() != d * d {
            return Err(QgError::DimensionMismatch {
                expected: d * d,
                got: entries.len(),
                context: "corepresentation entries",
            });
        }
        if let Some(e) = entries.iter().find(|e| e.len() != owner.dim()) {
            return Err(QgError::DimensionMismatch {
                expected: owner.dim(),
                got: e.len(),
                context: "corepresentation entry",
            });
        }
        Ok(Self {
            owner: owner.clone(),
            d,
            entries,
        })
    }

    pub fn from_elements(d: usize, entries: &[AlgebraElement]) -> Result<Self> {
        let owner = entries
            .first()
            .ok_or_else(|| QgError::Structural("no entries".into()))?
            .owner()
            .clone();
        for e in entries {
            same_owner(&owner, e.owner())?;
        }
        Self::new(&owner, d, entries.iter().map(|e| e.coeffs().to_vec()).collect())
    }

    fn from_fn(owner: &Qg, d: usize, f: impl Fn(usize, usize) -> Vec<C64>) -> Self {
        let entries = (0..d * d).map(|ij| f(ij / d, ij % d)).collect();
        Self {
            owner: owner.clone(),
            d,
            entries,
        }
    }

    pub fn identity(owner: &Qg, d: usize) -> Self {
        let zero = vec![ZERO; owner.dim()];
        Self::from_fn(owner, d, |i, j| if i == j { owner.unit().to_vec() } else { zero.clone() })
    }

    pub fn zero(owner: &Qg, d: usize) -> Self {
        Self::from_fn(owner, d, |_, _| vec![ZERO; owner.dim()])
    }

    pub fn owner(&self) -> &Qg {
        &self.owner
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entry_coeffs(&self, i: usize, j: usize) -> &[C64] {
        &self.entries[i * self.d + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> AlgebraElement {
        AlgebraElement::from_raw(&self.owner, self.entry_coeffs(i, j).to_vec())
    }

    pub fn is_corep(&self, tol: f64) -> CorepCheck {
        let g = &self.owner;
        let n = g.dim();
        let d = self.d;
        let outer = |a: &[C64], b: &[C64], out: &mut [C64]| {
            for p in 0..n {
                if a[p] == ZERO {
                    continue;
                }
                for q in 0..n {
                    out[p * n + q] += a[p] * b[q];
                }
            }
        };
        let mut cv: f64 = 0.0;
        let mut av: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let delta = g.coproduct(self.entry_coeffs(i, j));
                let mut co = vec![ZERO; n * n];
                let mut anti = vec![ZERO; n * n];
                for k in 0..d {
                    outer(self.entry_coeffs(i, k), self.entry_coeffs(k, j), &mut co);
                    outer(self.entry_coeffs(k, j), self.entry_coeffs(i, k), &mut anti);
                }
                cv = cv.max(linalg::diff_norm(&delta, &co));
                av = av.max(linalg::diff_norm(&delta, &anti));
            }
        }
        CorepCheck {
            corep_violation: cv,
            anti_violation: av,
            is_corep: cv <= tol,
            is_anti: av <= tol,
        }
    }

    /// `[pi(omega)]_ij = omega(v_ij)`.
    pub fn pi(&self, omega: &Functional) -> Result<CMat> {
        same_owner(&self.owner, omega.owner())?;
        Ok(CMat::from_fn(self.d, self.d, |i, j| {
            linalg::dot(self.entry_coeffs(i, j), omega.coeffs())
        }))
    }

    pub fn pi_star(&self, omega: &Functional) -> Result<CMat> {
        Ok(self.pi(&omega.sharp())?.adjoint())
    }

    pub fn pi_tilde(&self, omega: &Functional) -> Result<CMat> {
        Ok(self.pi(&omega.star_l1())?.adjoint())
    }

    pub fn pi_check(&self, omega: &Functional) -> Result<CMat> {
        self.pi(&omega.star_l1().sharp())
    }

    pub fn pi_variant(&self, variant: Variant, omega: &Functional) -> Result<CMat> {
        match variant {
            Variant::Pi => self.pi(omega),
            Variant::Star => self.pi_star(omega),
            Variant::Check => self.pi_check(omega),
            Variant::Tilde => self.pi_tilde(omega),
        }
    }

    /// The tensor whose slices give the requested variant:
    /// `V_tilde = V^*`, `V_check = (S (x) id)V`, `V_star = V_check^*`.
    pub fn generator(&self, variant: Variant) -> Self {
        let g = &self.owner;
        match variant {
            Variant::Pi => self.clone(),
            Variant::Tilde => self.adjoint(),
            Variant::Check => self.antipode_leg(),
            Variant::Star => Self::from_fn(g, self.d, |i, j| {
                g.adjoint(&g.antipode(self.entry_coeffs(j, i)))
            }),
        }
    }

    /// Adjoint in `A (x) M_d`.
    pub fn adjoint(&self) -> Self {
        let g = &self.owner;
        Self::from_fn(g, self.d, |i, j| g.adjoint(self.entry_coeffs(j, i)))
    }

    /// `(S (x) id)V`.
    pub fn antipode_leg(&self) -> Self {
        let g = &self.owner;
        Self::from_fn(g, self.d, |i, j| g.antipode(self.entry_coeffs(i, j)))
    }

    /// Product in `A (x) M_d`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        same_owner(&self.owner, &other.owner)?;
        if self.d != other.d {
            return Err(QgError::DimensionMismatch {
                expected: self.d,
                got: other.d,
                context: "corepresentation product",
            });
        }
        let g = &self.owner;
        let n = g.dim();
        let d = self.d;
        Ok(Self::from_fn(g, d, |i, j| {
            let mut acc = vec![ZERO; n];
            for k in 0..d {
                let p = g.mul(self.entry_coeffs(i, k), other.entry_coeffs(k, j));
                for (a, b) in acc.iter_mut().zip(p) {
                    *a += b;
                }
            }
            acc
        }))
    }

    /// `(1 (x) t) V (1 (x) t_inv)`.
    pub fn twist(&self, t: &CMat, t_inv: &CMat) -> Self {
        let g = &self.owner;
        let n = g.dim();
        let d = self.d;
        Self::from_fn(g, d, |i, j| {
            let mut acc = vec![ZERO; n];
            for k in 0..d {
                for l in 0..d {
                    let w = t[(i, k)] * t_inv[(l, j)];
                    if w == ZERO {
                        continue;
                    }
                    for (a, b) in acc.iter_mut().zip(self.entry_coeffs(k, l)) {
                        *a += w * b;
                    }
                }
            }
            acc
        })
    }

    pub fn similarity(&self, t: &CMat) -> Result<Self> {
        let t_inv = linalg::inverse(t).ok_or(QgError::NotInvertible { ratio: 0.0 })?;
        Ok(self.twist(t, &t_inv))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        same_owner(&self.owner, &other.owner)?;
        let (a, b) = (self.d, other.d);
        let zero = vec![ZERO; self.owner.dim()];
        Ok(Self::from_fn(&self.owner, a + b, |i, j| {
            if i < a && j < a {
                self.entry_coeffs(i, j).to_vec()
            } else if i >= a && j >= a {
                other.entry_coeffs(i - a, j - a).to_vec()
            } else {
                zero.clone()
            }
        }))
    }

    /// `V (+) 0` with a zero block of size `m`.
    pub fn with_zero_block(&self, m: usize) -> Self {
        let z = Self::zero(&self.owner, m.max(1));
        if m == 0 {
            return self.clone();
        }
        self.direct_sum(&z).expect("same owner")
    }

    /// `T_{alpha,beta} = sum_ij v_ij alpha_j conj(beta_i)`.
    pub fn coefficient(&self, alpha: &[C64], beta: &[C64]) -> Result<AlgebraElement> {
        for v in [alpha, beta] {
            if v.len() != self.d {
                return Err(QgError::DimensionMismatch {
                    expected: self.d,
                    got: v.len(),
                    context: "coefficient vector",
                });
            }
        }
        let n = self.owner.dim();
        let mut acc = vec![ZERO; n];
        for i in 0..self.d {
            for j in 0..self.d {
                let w = alpha[j] * beta[i].conj();
                if w == ZERO {
                    continue;
                }
                for (a, b) in acc.iter_mut().zip(self.entry_coeffs(i, j)) {
                    *a += w * b;
                }
            }
        }
        Ok(AlgebraElement::from_raw(&self.owner, acc))
    }

    /// `|| S(T^{pi*}_{alpha,beta})^* - T^pi_{beta,alpha} ||` in coefficients.
    pub fn antipode_coeff_check(&self, alpha: &[C64], beta: &[C64]) -> Result<f64> {
        let t_star = self.generator(Variant::Star).coefficient(alpha, beta)?;
        let lhs = t_star.apply_antipode().adjoint();
        let rhs = self.coefficient(beta, alpha)?;
        Ok(lhs.sub(&rhs)?.coeff_norm())
    }

    /// The `dn x dn` operator on `C^d (x) H_h`.
    pub fn gns_image(&self) -> Result<CMat> {
        let gns = self.owner.gns()?;
        let n = self.owner.dim();
        let d = self.d;
        let mut m = CMat::zeros(d * n, d * n);
        for i in 0..d {
            for j in 0..d {
                let l = gns.left_action(self.entry_coeffs(i, j));
                m.view_mut((i * n, j * n), (n, n)).copy_from(&l);
            }
        }
        Ok(m)
    }

    /// Operator-norm distance of the GNS images.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(linalg::op_norm(&(self.gns_image()? - other.gns_image()?)))
    }

    /// `sigma_min / sigma_max` of the GNS image.
    pub fn invertibility_ratio(&self) -> Result<f64> {
        let s = linalg::singular_values(&self.gns_image()?);
        let max = s[0];
        Ok(if max == 0.0 { 0.0 } else { s[s.len() - 1] / max })
    }

    /// `(S (x) id)V`, verified to be a two-sided inverse of `V`.
    pub fn inverse_corep(&self) -> Result<InverseCorep> {
        let ratio = self.invertibility_ratio()?;
        if ratio < INVERTIBILITY_RATIO {
            return Err(QgError::NotInvertible { ratio });
        }
        let inv = self.antipode_leg();
        let id = Self::identity(&self.owner, self.d);
        let left = inv.compose(self)?.distance(&id)?;
        let right = self.compose(&inv)?.distance(&id)?;
        let anti = inv.is_corep(0.0).anti_violation;
        let direct = linalg::inverse(&self.gns_image()?)
            .map(|m| linalg::op_norm(&(m - inv.gns_image().expect("gns exists"))))
            .unwrap_or(f64::INFINITY);
        Ok(InverseCorep {
            inverse: inv,
            inverse_residual: left.max(right),
            anti_violation: anti,
            matrix_inverse_residual: direct,
        })
    }

    /// `||pi||_cb = ||V||`.
    pub fn cb_norm(&self) -> Result<f64> {
        Ok(linalg::op_norm(&self.gns_image()?))
    }

    /// `T = (h (x) id)(V^* V)` and `V' = (1 (x) T^{1/2}) V (1 (x) T^{-1/2})`.
    pub fn unitarize(&self) -> Result<Unitarization> {
        let ratio = self.invertibility_ratio()?;
        if ratio < INVERTIBILITY_RATIO {
            return Err(QgError::NotInvertible { ratio });
        }
        let g = &self.owner;
        let d = self.d;
        let vv = self.adjoint().compose(self)?;
        let t = CMat::from_fn(d, d, |i, j| g.haar_of(vv.entry_coeffs(i, j)));
        let herm = linalg::frobenius(&(&t - t.adjoint()));
        let (eigs, _) = linalg::hermitian_eigen(&t);
        if herm > 1e-8 || eigs[0] <= 0.0 {
            return Err(QgError::Consistency(format!(
                "averaged matrix is not positive definite (smallest eigenvalue {:e}, asymmetry {herm:e})",
                eigs[0]
            )));
        }
        let sqrt = linalg::hermitian_apply(&t, f64::sqrt);
        let inv_sqrt = linalg::hermitian_apply(&t, |v| 1.0 / v.sqrt());
        let v = self.twist(&sqrt, &inv_sqrt);
        let inv_norm = self.antipode_leg().cb_norm()?;
        Ok(Unitarization {
            t,
            t_min_eigenvalue: eigs[0],
            epsilon: 1.0 / (inv_norm * inv_norm),
            v,
        })
    }

    /// `||V^*V - 1||` and `||VV^* - 1||` in the GNS image.
    pub fn unitarity_residuals(&self) -> Result<(f64, f64)> {
        let id = Self::identity(&self.owner, self.d);
        let a = self.adjoint().compose(self)?.distance(&id)?;
        let b = self.compose(&self.adjoint())?.distance(&id)?;
        Ok((a, b))
    }

    /// The idempotent `P = V (S (x) id)V`, the essential idempotent
    /// `Q = pi(epsilon)` and the rank of `Q`.
    pub fn essential_data(&self) -> Result<EssentialData> {
        let g = &self.owner;
        let check = self.antipode_leg();
        let p = self.compose(&check)?.gns_image()?;
        let p_other = check.compose(self)?.gns_image()?;
        let q = self.pi(&Functional::counit(g))?;
        let sv = linalg::singular_values(&q);
        let essential_dim = sv.iter().filter(|&&s| s > 1e-8).count();
        let mut absorb: f64 = 0.0;
        for l in 0..g.dim() {
            let pw = self.pi(&Functional::point(g, l)?)?;
            absorb = absorb.max(linalg::op_norm(&(&pw * &q - &pw)));
        }
        Ok(EssentialData {
            idempotent_residual: linalg::op_norm(&(&p * &p - &p)),
            commutation_residual: linalg::op_norm(&(&p - &p_other)),
            q_idempotent_residual: linalg::op_norm(&(&q * &q - &q)),
            absorption_residual: absorb,
            p,
            q,
            essential_dim,
        })
    }

    /// A certified lower bound for `sup { ||pi(omega)|| : ||omega||_1 <= 1 }`,
    /// from alternating ascent over rank-one extreme points in each block.
    pub fn bounded_norm_lower(&self, restarts: usize, seed: u64) -> Result<f64> {
        let g = &self.owner;
        let blocks = g.blocks()?;
        let gns = g.gns()?;
        let d = self.d;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best: f64 = 0.0;
        for block in &blocks.blocks {
            let m = block.size;
            let b: Vec<CMat> = self
                .entries
                .iter()
                .map(|e| block.iso.adjoint() * gns.left_action(e) * &block.iso)
                .collect();
            for _ in 0..restarts.max(1) {
                let mut xi = linalg::to_cvec(&linalg::random_unit_vector(&mut rng, m));
                let mut eta = linalg::to_cvec(&linalg::random_unit_vector(&mut rng, m));
                let mut alpha;
                let mut beta = linalg::to_cvec(&linalg::random_unit_vector(&mut rng, d));
                let mut last = 0.0;
                for _ in 0..200 {
                    // scalar entries s_ij = xi^* B_ij eta
                    let s = CMat::from_fn(d, d, |i, j| xi.dotc(&(&b[i * d + j] * &eta)));
                    let c = s.transpose() * beta.map(|z| z.conj());
                    alpha = normalize(c.map(|z| z.conj()));
                    let sa = &s * &alpha;
                    beta = normalize(sa);
                    let mut mm = CMat::zeros(m, m);
                    for i in 0..d {
                        for j in 0..d {
                            mm += &b[i * d + j] * (beta[i].conj() * alpha[j]);
                        }
                    }
                    eta = normalize(mm.adjoint() * &xi);
                    xi = normalize(&mm * &eta);
                    let val = xi.dotc(&(&mm * &eta)).norm();
                    if (val - last).abs() <= 1e-13 * val.max(1.0) {
                        break;
                    }
                    last = val;
                }
                // evaluate pi on the actual norm-one functional
                let omega: Vec<C64> = (0..g.dim())
                    .map(|l| {
                        let pl = block.iso.adjoint() * &gns.left_basis[l] * &block.iso;
                        xi.dotc(&(pl * &eta))
                    })
                    .collect();
                let w = Functional::new(g, omega)?;
                let nrm = w.norm_l1()?;
                if nrm > 0.0 {
                    best = best.max(linalg::op_norm(&self.pi(&w)?) / nrm);
                }
            }
        }
        Ok(best)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.d)
            .map(|i| {
                Value::Array(
                    (0..self.d)
                        .map(|j| {
                            Value::Array(
                                self.entry_coeffs(i, j).iter().map(|z| json!([z.re, z.im])).collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect();
        json!({ "dim_d": self.d, "entries": entries })
    }

    pub fn from_json(owner: &Qg, v: &Value) -> Result<Self> {
        let schema = |m: &str| QgError::Schema {
            field: "entries".into(),
            message: m.into(),
        };
        let d = v
            .get("dim_d")
            .and_then(Value::as_u64)
            .ok_or_else(|| QgError::Schema {
                field: "dim_d".into(),
                message: "expected a positive integer".into(),
            })? as usize;
        let rows = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("missing field"))?;
        let mut entries = Vec::new();
        for row in rows {
            for e in row.as_array().ok_or_else(|| schema("expected rows"))? {
                let coeffs = e
                    .as_array()
                    .ok_or_else(|| schema("expected coefficient vectors"))?
                    .iter()
                    .map(|z| match z.as_array().map(|a| a.as_slice()) {
                        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                            (Some(re), Some(im)) => Ok(C64::new(re, im)),
                            _ => Err(schema("expected numbers")),
                        },
                        _ => Err(schema("complex numbers must be [re, im] pairs")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                entries.push(coeffs);
            }
        }
        Self::new(owner, d, entries)
    }
}

fn normalize(v: CVec) -> CVec {
    let n = v.norm();
    if n > 0.0 {
        v / linalg::r(n)
    } else {
        let mut e = CVec::zeros(v.len());
        e[0] = ONE;
        e
    }
}

#[derive(Debug, Clone)]
pub struct InverseCorep {
    pub inverse: Corepresentation,
    /// `max(||V_check V - 1||, ||V V_check - 1||)`.
    pub inverse_residual: f64,
    pub anti_violation: f64,
    /// Distance to the matrix inverse of the GNS image.
    pub matrix_inverse_residual: f64,
}

#[derive(Debug, Clone)]
pub struct Unitarization {
    pub t: CMat,
    pub t_min_eigenvalue: f64,
    /// `1 / ||V^{-1}||^2`.
    pub epsilon: f64,
    pub v: Corepresentation,
}

#[derive(Debug, Clone)]
pub struct EssentialData {
    pub p: CMat,
    pub q: CMat,
    pub essential_dim: usize,
    pub idempotent_residual: f64,
    pub commutation_residual: f64,
    pub q_idempotent_residual: f64,
    /// `max_l ||pi(delta_l) Q - pi(delta_l)||`.
    pub absorption_residual: f64,
}

/// Irreducible unitary corepresentations, read off from the blocks of the
/// dual: `v^k_ij = sum_l pi_k(b_l)_ij e_l`.
pub fn unitary_irreducibles(g: &Qg) -> Result<Vec<Corepresentation>> {
    let dual = g.dual()?;
    let blocks = dual.dual.blocks()?;
    let n = g.dim();
    let images: Vec<Vec<CMat>> = (0..n).map(|l| blocks.to_blocks(&g.basis_vector(l))).collect();
    let mut out = Vec::new();
    for (k, b) in blocks.blocks.iter().enumerate() {
        let m = b.size;
        let entries = (0..m * m)
            .map(|ij| (0..n).map(|l| images[l][k][(ij / m, ij % m)]).collect())
            .collect();
        out.push(Corepresentation::new(g, m, entries)?);
    }
    Ok(out)
}

fn is_trivial(v: &Corepresentation) -> bool {
    v.dim() == 1 && linalg::diff_norm(v.entry_coeffs(0, 0), v.owner().unit()) < 1e-9
}

/// A unitary corepresentation of dimension `d`: a nontrivial irreducible
/// of that dimension when one exists, otherwise a direct sum of
/// irreducibles rotated by a random unitary.
pub fn random_unitary_corep(g: &Qg, d: usize, rng: &mut impl Rng) -> Result<Corepresentation> {
    if d == 0 {
        return Err(QgError::NoUnitaryCorep(0));
    }
    let irreps = unitary_irreducibles(g)?;
    let exact: Vec<&Corepresentation> =
        irreps.iter().filter(|v| v.dim() == d && !is_trivial(v)).collect();
    if !exact.is_empty() {
        return Ok(exact[rng.random_range(0..exact.len())].clone());
    }
    // distinct summands first, so that the similarity twist is visible
    let mut pool: Vec<&Corepresentation> = irreps.iter().filter(|v| !is_trivial(v)).collect();
    pool.extend(irreps.iter().filter(|v| is_trivial(v)));
    let mut parts: Vec<&Corepresentation> = Vec::new();
    let mut used = vec![false; pool.len()];
    let mut remaining = d;
    while remaining > 0 {
        let fresh: Vec<usize> = (0..pool.len())
            .filter(|&k| !used[k] && pool[k].dim() <= remaining && !is_trivial(pool[k]))
            .collect();
        let k = if !fresh.is_empty() {
            fresh[rng.random_range(0..fresh.len())]
        } else if let Some(k) = (0..pool.len()).find(|&k| !used[k] && is_trivial(pool[k])) {
            k
        } else {
            let fits: Vec<usize> = (0..pool.len()).filter(|&k| pool[k].dim() <= remaining).collect();
            if fits.is_empty() {
                return Err(QgError::NoUnitaryCorep(d));
            }
            fits[rng.random_range(0..fits.len())]
        };
        used[k] = true;
        remaining -= pool[k].dim();
        parts.push(pool[k]);
    }
    let mut v = parts[0].clone();
    for p in &parts[1..] {
        v = v.direct_sum(p)?;
    }
    let u = linalg::random_unitary(rng, d);
    Ok(v.twist(&u, &u.adjoint()))
}

/// `(1 (x) T0) V0 (1 (x) T0^{-1})` for a seeded unitary `V0` and a random
/// `T0` with condition number at most 10. Returns `(V, V0, T0)`.
pub fn random_invertible_corep_parts(
    g: &Qg,
    d: usize,
    seed: u64,
) -> Result<(Corepresentation, Corepresentation, CMat)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v0 = random_unitary_corep(g, d, &mut rng)?;
    let cond = 1.0 + 9.0 * rng.random::<f64>();
    let t0 = linalg::random_conditioned(&mut rng, d, cond);
    let v = v0.similarity(&t0)?;
    Ok((v, v0, t0))
}

pub fn random_invertible_corep(g: &Qg, d: usize, seed: u64) -> Result<Corepresentation> {
    Ok(random_invertible_corep_parts(g, d, seed)?.0)
}

/// A random unitary in `A (x) M_d`, generally not a corepresentation.
/// Built blockwise as the unitary polar part of a Gaussian element.
pub fn random_unitary_element(g: &Qg, d: usize, rng: &mut impl Rng) -> Result<Corepresentation> {
    let blocks = g.blocks()?;
    let n = g.dim();
    let mut per_block: Vec<Vec<CMat>> = vec![Vec::new(); d * d];
    for b in &blocks.blocks {
        let m = b.size;
        let x = linalg::random_matrix(rng, d * m, d * m);
        let svd = x.svd(true, true);
        let u = svd.u.unwrap() * svd.v_t.unwrap();
        for i in 0..d {
            for j in 0..d {
                per_block[i * d + j].push(u.view((i * m, j * m), (m, m)).into_owned());
            }
        }
    }
    let entries: Vec<Vec<C64>> = per_block.iter().map(|mats| blocks.from_blocks(mats)).collect();
    debug_assert!(entries.iter().all(|e| e.len() == n));
    Corepresentation::new(g, d, entries)
}
