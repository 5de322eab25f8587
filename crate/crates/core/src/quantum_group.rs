//! Finite quantum groups: finite-dimensional Hopf *-algebras with a faithful
//! tracial Haar state, stored as structure tensors over a fixed basis.
//!
//! Conventions (all relative to the stored basis `e_0, ..., e_{n-1}`):
//!
//! * `e_i e_j = sum_k mult[i][j][k] e_k`
//! * `Delta(e_i) = sum_{j,k} coproduct[i][j][k] e_j (x) e_k`
//! * `S(e_i) = sum_j antipode[i][j] e_j`
//! * `(sum_i a_i e_i)^* = sum_{i,j} conj(a_i) star[i][j] e_j`
//!
//! Every finite quantum group is of Kac type, so the antipode is involutive
//! and coincides with the unitary antipode, and the Haar state is a trace.
//! The scaling group, the modular groups and the modular operator are all
//! trivial and are not represented separately.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::blocks::BlockDecomposition;
use crate::duality::DualQuantumGroup;
use crate::error::{QgError, Result};
use crate::gns::GnsData;
use crate::group::GroupTable;
use crate::linalg::{self, c, r, CMat, C64, ONE, ZERO};

pub const DEFAULT_TOL: f64 = 1e-10;

/// Raw structure tensors.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureData {
    pub name: String,
    pub basis_labels: Vec<String>,
    /// Flattened `mult[i][j][k]`.
    pub mult: Vec<C64>,
    pub unit: Vec<C64>,
    /// Flattened `coproduct[i][j][k]`.
    pub coproduct: Vec<C64>,
    pub counit: Vec<C64>,
    pub antipode: CMat,
    pub star: CMat,
    pub haar: Vec<C64>,
}

#[derive(Debug)]
pub struct FiniteQuantumGroup {
    data: StructureData,
    dim: usize,
    gns: OnceLock<Result<GnsData>>,
    blocks: OnceLock<Result<BlockDecomposition>>,
    dual: OnceLock<Result<Box<DualQuantumGroup>>>,
}

impl Clone for FiniteQuantumGroup {
    fn clone(&self) -> Self {
        Self {
            data: self.data.clone(),
            dim: self.dim,
            gns: OnceLock::new(),
            blocks: OnceLock::new(),
            dual: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteQuantumGroup {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub name: String,
    pub violation: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub instance: String,
    pub tol: f64,
    pub checks: Vec<AxiomCheck>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn max_violation(&self) -> f64 {
        self.checks.iter().map(|c| c.violation).fold(0.0, f64::max)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }
}

impl FiniteQuantumGroup {
    /// Wraps structure tensors after checking that their shapes agree.
    /// No axioms are checked here; see [`FiniteQuantumGroup::validate`].
    pub fn new(data: StructureData) -> Result<Self> {
        let n = data.unit.len();
        if n == 0 {
            return Err(QgError::Structural("dimension must be positive".into()));
        }
        let check = |got: usize, expected: usize, what: &str| -> Result<()> {
            if got != expected {
                Err(QgError::Structural(format!(
                    "{what} has {got} entries, expected {expected}"
                )))
            } else {
                Ok(())
            }
        };
        check(data.basis_labels.len(), n, "basis_labels")?;
        check(data.mult.len(), n * n * n, "mult")?;
        check(data.coproduct.len(), n * n * n, "coproduct")?;
        check(data.counit.len(), n, "counit")?;
        check(data.haar.len(), n, "haar")?;
        check(data.antipode.nrows(), n, "antipode rows")?;
        check(data.antipode.ncols(), n, "antipode columns")?;
        check(data.star.nrows(), n, "star rows")?;
        check(data.star.ncols(), n, "star columns")?;
        Ok(Self {
            data,
            dim: n,
            gns: OnceLock::new(),
            blocks: OnceLock::new(),
            dual: OnceLock::new(),
        })
    }

    pub fn data(&self) -> &StructureData {
        &self.data
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.data.basis_labels
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn mult_coeff(&self, i: usize, j: usize, k: usize) -> C64 {
        self.data.mult[self.idx(i, j, k)]
    }

    pub fn coproduct_coeff(&self, i: usize, j: usize, k: usize) -> C64 {
        self.data.coproduct[self.idx(i, j, k)]
    }

    pub fn unit(&self) -> &[C64] {
        &self.data.unit
    }

    pub fn counit(&self) -> &[C64] {
        &self.data.counit
    }

    pub fn haar(&self) -> &[C64] {
        &self.data.haar
    }

    pub fn antipode_matrix(&self) -> &CMat {
        &self.data.antipode
    }

    pub fn star_matrix(&self) -> &CMat {
        &self.data.star
    }

    pub fn basis_vector(&self, i: usize) -> Vec<C64> {
        let mut v = vec![ZERO; self.dim];
        v[i] = ONE;
        v
    }

    // ---- raw coefficient-level operations --------------------------------

    pub fn mul(&self, a: &[C64], b: &[C64]) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![ZERO; n];
        for i in 0..n {
            if a[i] == ZERO {
                continue;
            }
            for j in 0..n {
                let ab = a[i] * b[j];
                if ab == ZERO {
                    continue;
                }
                let base = self.idx(i, j, 0);
                for (k, o) in out.iter_mut().enumerate() {
                    *o += ab * self.data.mult[base + k];
                }
            }
        }
        out
    }

    pub fn adjoint(&self, a: &[C64]) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![ZERO; n];
        for i in 0..n {
            let ci = a[i].conj();
            if ci == ZERO {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += ci * self.data.star[(i, j)];
            }
        }
        out
    }

    pub fn antipode(&self, a: &[C64]) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![ZERO; n];
        for i in 0..n {
            if a[i] == ZERO {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += a[i] * self.data.antipode[(i, j)];
            }
        }
        out
    }

    /// `Delta(a)` as an `n^2` vector indexed by `j * n + k`.
    pub fn coproduct(&self, a: &[C64]) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            if a[i] == ZERO {
                continue;
            }
            let base = self.idx(i, 0, 0);
            for (jk, o) in out.iter_mut().enumerate() {
                *o += a[i] * self.data.coproduct[base + jk];
            }
        }
        out
    }

    pub fn counit_of(&self, a: &[C64]) -> C64 {
        a.iter().zip(&self.data.counit).map(|(x, e)| x * e).sum()
    }

    pub fn haar_of(&self, a: &[C64]) -> C64 {
        a.iter().zip(&self.data.haar).map(|(x, h)| x * h).sum()
    }

    /// Matrix of `y -> a y` acting on coefficient columns.
    pub fn left_mult_matrix(&self, a: &[C64]) -> CMat {
        let n = self.dim;
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            if a[i] == ZERO {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    m[(k, j)] += a[i] * self.mult_coeff(i, j, k);
                }
            }
        }
        m
    }

    /// Matrix of `y -> y a` acting on coefficient columns.
    pub fn right_mult_matrix(&self, a: &[C64]) -> CMat {
        let n = self.dim;
        let mut m = CMat::zeros(n, n);
        for j in 0..n {
            if a[j] == ZERO {
                continue;
            }
            for i in 0..n {
                for k in 0..n {
                    m[(k, i)] += a[j] * self.mult_coeff(i, j, k);
                }
            }
        }
        m
    }

    // ---- two-fold tensor helpers (n^2 vectors, index j * n + k) -----------

    pub fn mul2(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for p in 0..n {
            for q in 0..n {
                let xpq = x[p * n + q];
                if xpq == ZERO {
                    continue;
                }
                for rr in 0..n {
                    for s in 0..n {
                        let w = xpq * y[rr * n + s];
                        if w == ZERO {
                            continue;
                        }
                        let b1 = self.idx(p, rr, 0);
                        let b2 = self.idx(q, s, 0);
                        for a in 0..n {
                            let m1 = self.data.mult[b1 + a];
                            if m1 == ZERO {
                                continue;
                            }
                            let wm = w * m1;
                            for b in 0..n {
                                out[a * n + b] += wm * self.data.mult[b2 + b];
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn adjoint2(&self, x: &[C64]) -> Vec<C64> {
        self.map2(x, |v| self.adjoint(v), true)
    }

    /// Applies `f (x) id` (or the conjugate-linear analogue) to an `n^2` vector.
    fn map2(&self, x: &[C64], f: impl Fn(&[C64]) -> Vec<C64>, conj_linear: bool) -> Vec<C64> {
        let n = self.dim;
        let images: Vec<Vec<C64>> = (0..n).map(|i| f(&self.basis_vector(i))).collect();
        let mut out = vec![ZERO; n * n];
        for p in 0..n {
            for q in 0..n {
                let xpq = if conj_linear { x[p * n + q].conj() } else { x[p * n + q] };
                if xpq == ZERO {
                    continue;
                }
                for a in 0..n {
                    let fa = images[p][a];
                    if fa == ZERO {
                        continue;
                    }
                    for b in 0..n {
                        out[a * n + b] += xpq * fa * images[q][b];
                    }
                }
            }
        }
        out
    }

    /// `(f (x) g)(x)` for linear maps given on coefficient vectors.
    pub fn apply2(
        &self,
        x: &[C64],
        f: impl Fn(&[C64]) -> Vec<C64>,
        g: impl Fn(&[C64]) -> Vec<C64>,
    ) -> Vec<C64> {
        let n = self.dim;
        let fi: Vec<Vec<C64>> = (0..n).map(|i| f(&self.basis_vector(i))).collect();
        let gi: Vec<Vec<C64>> = (0..n).map(|i| g(&self.basis_vector(i))).collect();
        let mut out = vec![ZERO; n * n];
        for p in 0..n {
            for q in 0..n {
                let xpq = x[p * n + q];
                if xpq == ZERO {
                    continue;
                }
                for a in 0..n {
                    let fa = fi[p][a] * xpq;
                    if fa == ZERO {
                        continue;
                    }
                    for b in 0..n {
                        out[a * n + b] += fa * gi[q][b];
                    }
                }
            }
        }
        out
    }

    /// Multiplication map `A (x) A -> A`.
    pub fn multiply_legs(&self, x: &[C64]) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![ZERO; n];
        for p in 0..n {
            for q in 0..n {
                let xpq = x[p * n + q];
                if xpq == ZERO {
                    continue;
                }
                let base = self.idx(p, q, 0);
                for (k, o) in out.iter_mut().enumerate() {
                    *o += xpq * self.data.mult[base + k];
                }
            }
        }
        out
    }

    /// `(id (x) phi)(x)` for a functional `phi`, returning an element of A.
    pub fn slice_right(&self, x: &[C64], phi: &[C64]) -> Vec<C64> {
        let n = self.dim;
        (0..n)
            .map(|p| (0..n).map(|q| x[p * n + q] * phi[q]).sum())
            .collect()
    }

    /// `(phi (x) id)(x)` for a functional `phi`.
    pub fn slice_left(&self, x: &[C64], phi: &[C64]) -> Vec<C64> {
        let n = self.dim;
        (0..n)
            .map(|q| (0..n).map(|p| x[p * n + q] * phi[p]).sum())
            .collect()
    }

    pub fn flip2(&self, x: &[C64]) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for p in 0..n {
            for q in 0..n {
                out[q * n + p] = x[p * n + q];
            }
        }
        out
    }

    /// Gram matrix `G[i][j] = h(e_i^* e_j)`.
    pub fn gram_matrix(&self) -> CMat {
        let n = self.dim;
        let stars: Vec<Vec<C64>> = (0..n).map(|i| self.adjoint(&self.basis_vector(i))).collect();
        CMat::from_fn(n, n, |i, j| self.haar_of(&self.mul(&stars[i], &self.basis_vector(j))))
    }

    pub fn is_commutative(&self, tol: f64) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| (self.mult_coeff(i, j, k) - self.mult_coeff(j, i, k)).norm() <= tol)
            })
        })
    }

    pub fn is_cocommutative(&self, tol: f64) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    (self.coproduct_coeff(i, j, k) - self.coproduct_coeff(i, k, j)).norm() <= tol
                })
            })
        })
    }

    // ---- cached analytic data ------------------------------------------------

    pub fn gns(&self) -> Result<&GnsData> {
        self.gns
            .get_or_init(|| GnsData::compute(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn blocks(&self) -> Result<&BlockDecomposition> {
        self.blocks
            .get_or_init(|| BlockDecomposition::compute(self, crate::blocks::DEFAULT_SEED))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The dual quantum group, built once on first use.
    pub fn dual(&self) -> Result<&DualQuantumGroup> {
        self.dual
            .get_or_init(|| DualQuantumGroup::build(self).map(Box::new))
            .as_ref()
            .map(|d| d.as_ref())
            .map_err(Clone::clone)
    }

    // ---- validation ----------------------------------------------------------

    /// Checks every Hopf *-algebra axiom, the Kac conditions and Haar
    /// invariance. Each check reports its maximal residual.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        let n = self.dim;
        let e: Vec<Vec<C64>> = (0..n).map(|i| self.basis_vector(i)).collect();
        let unit = self.unit().to_vec();
        let mut checks = Vec::new();
        let mut push = |name: &str, violation: f64| {
            checks.push(AxiomCheck {
                name: name.to_string(),
                violation,
                passed: violation <= tol,
            })
        };

        let products: Vec<Vec<Vec<C64>>> = (0..n)
            .map(|i| (0..n).map(|j| self.mul(&e[i], &e[j])).collect())
            .collect();

        let mut v: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.mul(&products[i][j], &e[k]);
                    let rhs = self.mul(&e[i], &products[j][k]);
                    v = v.max(linalg::diff_norm(&lhs, &rhs));
                }
            }
        }
        push("mult_associative", v);

        let mut v: f64 = 0.0;
        for x in &e {
            v = v.max(linalg::diff_norm(&self.mul(&unit, x), x));
            v = v.max(linalg::diff_norm(&self.mul(x, &unit), x));
        }
        push("unit_two_sided", v);

        let mut v = (self.counit_of(&unit) - ONE).norm();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.counit_of(&products[i][j]);
                v = v.max((lhs - self.counit()[i] * self.counit()[j]).norm());
            }
        }
        push("counit_multiplicative", v);

        let deltas: Vec<Vec<C64>> = e.iter().map(|x| self.coproduct(x)).collect();
        let mut v: f64 = 0.0;
        for d in &deltas {
            // (Delta (x) id) Delta vs (id (x) Delta) Delta, as n^3 vectors
            let mut lhs = vec![ZERO; n * n * n];
            let mut rhs = vec![ZERO; n * n * n];
            for p in 0..n {
                for q in 0..n {
                    let w = d[p * n + q];
                    if w == ZERO {
                        continue;
                    }
                    for (ab, dp) in deltas[p].iter().enumerate() {
                        lhs[ab * n + q] += w * dp;
                    }
                    for (bc, dq) in deltas[q].iter().enumerate() {
                        rhs[p * n * n + bc] += w * dq;
                    }
                }
            }
            v = v.max(linalg::diff_norm(&lhs, &rhs));
        }
        push("coassociative", v);

        let mut v: f64 = 0.0;
        for (i, d) in deltas.iter().enumerate() {
            let left = self.slice_left(d, self.counit());
            let right = self.slice_right(d, self.counit());
            v = v.max(linalg::diff_norm(&left, &e[i]));
            v = v.max(linalg::diff_norm(&right, &e[i]));
        }
        push("counit_law", v);

        let mut one_one = vec![ZERO; n * n];
        for p in 0..n {
            for q in 0..n {
                one_one[p * n + q] = unit[p] * unit[q];
            }
        }
        let mut v = linalg::diff_norm(&self.coproduct(&unit), &one_one);
        for i in 0..n {
            for j in 0..n {
                let lhs = self.coproduct(&products[i][j]);
                let rhs = self.mul2(&deltas[i], &deltas[j]);
                v = v.max(linalg::diff_norm(&lhs, &rhs));
            }
        }
        push("coproduct_unital_homomorphism", v);

        let mut v: f64 = 0.0;
        for (i, d) in deltas.iter().enumerate() {
            let lhs = self.coproduct(&self.adjoint(&e[i]));
            v = v.max(linalg::diff_norm(&lhs, &self.adjoint2(d)));
        }
        push("coproduct_star_preserving", v);

        let mut v: f64 = 0.0;
        for (i, d) in deltas.iter().enumerate() {
            let target: Vec<C64> = unit.iter().map(|u| u * self.counit()[i]).collect();
            let left = self.multiply_legs(&self.apply2(d, |x| self.antipode(x), |x| x.to_vec()));
            let right = self.multiply_legs(&self.apply2(d, |x| x.to_vec(), |x| self.antipode(x)));
            v = v.max(linalg::diff_norm(&left, &target));
            v = v.max(linalg::diff_norm(&right, &target));
        }
        push("antipode_law", v);

        let mut v: f64 = 0.0;
        for x in &e {
            v = v.max(linalg::diff_norm(&self.adjoint(&self.adjoint(x)), x));
        }
        push("star_involutive", v);

        let mut v: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let lhs = self.adjoint(&products[i][j]);
                let rhs = self.mul(&self.adjoint(&e[j]), &self.adjoint(&e[i]));
                v = v.max(linalg::diff_norm(&lhs, &rhs));
            }
        }
        push("star_antimultiplicative", v);

        let mut v: f64 = 0.0;
        for x in &e {
            let y = self.adjoint(&self.antipode(&self.adjoint(&self.antipode(x))));
            v = v.max(linalg::diff_norm(&y, x));
        }
        push("antipode_star_compatible", v);

        let mut v: f64 = 0.0;
        for x in &e {
            v = v.max(linalg::diff_norm(&self.antipode(&self.antipode(x)), x));
        }
        push("kac_antipode_involutive", v);

        let mut v = (self.haar_of(&unit) - ONE).norm();
        push("haar_normalized", v);
        v = 0.0;
        for x in &e {
            v = v.max((self.haar_of(&self.antipode(x)) - self.haar_of(x)).norm());
        }
        push("haar_antipode_invariant", v);

        let mut v: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let a = self.haar_of(&products[i][j]);
                let b = self.haar_of(&products[j][i]);
                v = v.max((a - b).norm());
            }
        }
        push("haar_tracial", v);

        let gram = self.gram_matrix();
        let herm = linalg::frobenius(&(&gram - gram.adjoint()));
        let (eigs, _) = linalg::hermitian_eigen(&gram);
        let min_eig = eigs.first().copied().unwrap_or(0.0);
        checks.push(AxiomCheck {
            name: "haar_faithful_positive".into(),
            violation: herm.max(-min_eig).max(0.0),
            passed: herm <= tol && min_eig > tol,
        });

        let mut v: f64 = 0.0;
        for (i, d) in deltas.iter().enumerate() {
            let target: Vec<C64> = unit.iter().map(|u| u * self.haar()[i]).collect();
            v = v.max(linalg::diff_norm(&self.slice_right(d, self.haar()), &target));
            v = v.max(linalg::diff_norm(&self.slice_left(d, self.haar()), &target));
        }
        checks.push(AxiomCheck {
            name: "haar_invariant".into(),
            violation: v,
            passed: v <= tol,
        });

        let passed = checks.iter().all(|c| c.passed);
        ValidationReport {
            instance: self.name().to_string(),
            tol,
            checks,
            passed,
        }
    }

    // ---- builders -----------------------------------------------------------

    /// The commutative algebra `C(G)` of functions on a finite group, with
    /// basis the point masses `delta_g`.
    pub fn from_function_algebra(group: &GroupTable) -> Self {
        let n = group.order();
        let mut mult = vec![ZERO; n * n * n];
        let mut coproduct = vec![ZERO; n * n * n];
        for g in 0..n {
            mult[(g * n + g) * n + g] = ONE;
            for a in 0..n {
                let b = group.mul(group.inv(a), g);
                coproduct[(g * n + a) * n + b] = ONE;
            }
        }
        let mut antipode = CMat::zeros(n, n);
        for g in 0..n {
            antipode[(g, group.inv(g))] = ONE;
        }
        let mut counit = vec![ZERO; n];
        counit[group.identity()] = ONE;
        let data = StructureData {
            name: format!("c_{}", group.name),
            basis_labels: group.labels.iter().map(|l| format!("delta_{l}")).collect(),
            mult,
            unit: vec![ONE; n],
            coproduct,
            counit,
            antipode,
            star: CMat::identity(n, n),
            haar: vec![r(1.0 / n as f64); n],
        };
        Self::new(data).expect("function algebra tensors are consistent")
    }

    /// The group algebra `C[G]` with basis the group-like elements `lambda_g`.
    pub fn from_group_algebra(group: &GroupTable) -> Self {
        let n = group.order();
        let mut mult = vec![ZERO; n * n * n];
        let mut coproduct = vec![ZERO; n * n * n];
        let mut antipode = CMat::zeros(n, n);
        for g in 0..n {
            for h in 0..n {
                mult[(g * n + h) * n + group.mul(g, h)] = ONE;
            }
            coproduct[(g * n + g) * n + g] = ONE;
            antipode[(g, group.inv(g))] = ONE;
        }
        let mut unit = vec![ZERO; n];
        unit[group.identity()] = ONE;
        let mut haar = vec![ZERO; n];
        haar[group.identity()] = ONE;
        let data = StructureData {
            name: format!("cg_{}", group.name),
            basis_labels: group.labels.iter().map(|l| format!("lambda_{l}")).collect(),
            mult,
            unit: unit.clone(),
            coproduct,
            counit: vec![ONE; n],
            antipode: antipode.clone(),
            star: antipode,
            haar,
        };
        Self::new(data).expect("group algebra tensors are consistent")
    }

    /// The eight-dimensional Kac–Paljutkin quantum group
    /// `C + C + C + C + M_2`, basis `e1..e4, a11, a12, a21, a22`.
    pub fn kac_paljutkin() -> Self {
        let n = 8;
        const E: [usize; 4] = [0, 1, 2, 3];
        let a = |i: usize, j: usize| 4 + 2 * i + j;
        let mut mult = vec![ZERO; n * n * n];
        for &k in &E {
            mult[(k * n + k) * n + k] = ONE;
        }
        for i in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    mult[(a(i, j) * n + a(j, l)) * n + a(i, l)] = ONE;
                }
            }
        }
        let mut coproduct = vec![ZERO; n * n * n];
        let mut add = |x: usize, terms: &[(C64, usize, usize)]| {
            for &(w, p, q) in terms {
                coproduct[(x * n + p) * n + q] += w;
            }
        };
        let h = r(0.5);
        let hi = c(0.0, 0.5);
        let (a11, a12, a21, a22) = (a(0, 0), a(0, 1), a(1, 0), a(1, 1));
        add(
            0,
            &[
                (ONE, 0, 0),
                (ONE, 1, 1),
                (ONE, 2, 2),
                (ONE, 3, 3),
                (h, a11, a11),
                (h, a12, a12),
                (h, a21, a21),
                (h, a22, a22),
            ],
        );
        add(
            1,
            &[
                (ONE, 0, 1),
                (ONE, 1, 0),
                (ONE, 2, 3),
                (ONE, 3, 2),
                (h, a11, a22),
                (h, a22, a11),
                (hi, a21, a12),
                (-hi, a12, a21),
            ],
        );
        add(
            2,
            &[
                (ONE, 0, 2),
                (ONE, 2, 0),
                (ONE, 1, 3),
                (ONE, 3, 1),
                (h, a11, a22),
                (h, a22, a11),
                (-hi, a21, a12),
                (hi, a12, a21),
            ],
        );
        add(
            3,
            &[
                (ONE, 0, 3),
                (ONE, 3, 0),
                (ONE, 1, 2),
                (ONE, 2, 1),
                (h, a11, a11),
                (h, a22, a22),
                (-h, a12, a12),
                (-h, a21, a21),
            ],
        );
        add(
            a11,
            &[
                (ONE, 0, a11),
                (ONE, a11, 0),
                (ONE, 1, a22),
                (ONE, a22, 2),
                (ONE, 2, a22),
                (ONE, a22, 1),
                (ONE, 3, a11),
                (ONE, a11, 3),
            ],
        );
        add(
            a12,
            &[
                (ONE, 0, a12),
                (ONE, a12, 0),
                (I_, 1, a21),
                (I_, a21, 2),
                (-I_, 2, a21),
                (-I_, a21, 1),
                (-ONE, 3, a12),
                (-ONE, a12, 3),
            ],
        );
        add(
            a21,
            &[
                (ONE, 0, a21),
                (ONE, a21, 0),
                (-I_, 1, a12),
                (-I_, a12, 2),
                (I_, 2, a12),
                (I_, a12, 1),
                (-ONE, 3, a21),
                (-ONE, a21, 3),
            ],
        );
        add(
            a22,
            &[
                (ONE, 0, a22),
                (ONE, a22, 0),
                (ONE, 1, a11),
                (ONE, a11, 2),
                (ONE, 2, a11),
                (ONE, a11, 1),
                (ONE, 3, a22),
                (ONE, a22, 3),
            ],
        );
        let mut unit = vec![ZERO; n];
        for k in [0, 1, 2, 3, a11, a22] {
            unit[k] = ONE;
        }
        let mut counit = vec![ZERO; n];
        counit[0] = ONE;
        let mut swap = CMat::identity(n, n);
        swap[(a12, a12)] = ZERO;
        swap[(a21, a21)] = ZERO;
        swap[(a12, a21)] = ONE;
        swap[(a21, a12)] = ONE;
        let mut haar = vec![r(0.125); 4];
        haar.extend([r(0.25), ZERO, ZERO, r(0.25)]);
        let labels = ["e1", "e2", "e3", "e4", "a11", "a12", "a21", "a22"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let data = StructureData {
            name: "kac_paljutkin".into(),
            basis_labels: labels,
            mult,
            unit,
            coproduct,
            counit,
            antipode: swap.clone(),
            star: swap,
            haar,
        };
        Self::new(data).expect("Kac-Paljutkin tensors are consistent")
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &[
            "c_z2",
            "c_z3",
            "c_z4",
            "c_z2xz2",
            "c_s3",
            "cg_z2",
            "cg_z3",
            "cg_z4",
            "cg_z2xz2",
            "cg_s3",
            "kac_paljutkin",
        ]
    }

    pub fn builtin(name: &str) -> Result<Self> {
        if name == "kac_paljutkin" {
            return Ok(Self::kac_paljutkin());
        }
        let (family, group) = name
            .split_once('_')
            .ok_or_else(|| QgError::InvalidInstance(format!("unknown builtin `{name}`")))?;
        let table = match group {
            "z2" => GroupTable::cyclic(2),
            "z3" => GroupTable::cyclic(3),
            "z4" => GroupTable::cyclic(4),
            "z2xz2" => GroupTable::klein(),
            "s3" => GroupTable::s3(),
            _ => return Err(QgError::InvalidInstance(format!("unknown builtin `{name}`"))),
        };
        match family {
            "c" => Ok(Self::from_function_algebra(&table)),
            "cg" => Ok(Self::from_group_algebra(&table)),
            _ => Err(QgError::InvalidInstance(format!("unknown builtin `{name}`"))),
        }
    }

    /// Returns a copy with a different Haar vector (used to build invalid
    /// instances in tests and suites).
    pub fn with_haar(&self, haar: Vec<C64>) -> Result<Self> {
        let mut data = self.data.clone();
        data.haar = haar;
        Self::new(data)
    }

    pub fn with_name(&self, name: &str) -> Self {
        let mut data = self.data.clone();
        data.name = name.to_string();
        Self::new(data).expect("renaming keeps shapes")
    }
}

const I_: C64 = linalg::I;

#[cfg(test)]
mod tests {
    use super::*;

    fn cz2() -> FiniteQuantumGroup {
        FiniteQuantumGroup::from_function_algebra(&GroupTable::cyclic(2))
    }

    #[test]
    fn function_algebra_z2_matches_hand_tensors() {
        let g = cz2();
        // Delta(delta_e) = delta_e (x) delta_e + delta_g (x) delta_g
        let d = g.coproduct(&g.basis_vector(0));
        assert_eq!(d, vec![ONE, ZERO, ZERO, ONE]);
        let d = g.coproduct(&g.basis_vector(1));
        assert_eq!(d, vec![ZERO, ONE, ONE, ZERO]);
        assert_eq!(g.haar(), &[r(0.5), r(0.5)]);
        assert!(g.validate(DEFAULT_TOL).passed);
    }

    #[test]
    fn point_mass_haar_fails_invariance() {
        let g = cz2().with_haar(vec![ONE, ZERO]).unwrap();
        let rep = g.validate(DEFAULT_TOL);
        assert!(!rep.passed);
        assert!(!rep.check("haar_invariant").unwrap().passed);
    }

    #[test]
    fn z2_character_arithmetic() {
        let g = cz2();
        let de = g.basis_vector(0);
        let dg = g.basis_vector(1);
        assert_eq!(g.mul(&de, &dg), vec![ZERO, ZERO]);
        let u = vec![ONE, -ONE];
        assert_eq!(g.mul(&u, &u), g.unit().to_vec());
        assert_eq!(g.haar_of(&u), ZERO);
    }

    #[test]
    fn group_algebra_z2_is_grouplike() {
        let g = FiniteQuantumGroup::from_group_algebra(&GroupTable::cyclic(2));
        let d = g.coproduct(&g.basis_vector(1));
        assert_eq!(d, vec![ZERO, ZERO, ZERO, ONE]);
        assert!(g.is_cocommutative(0.0));
        assert!(g.validate(DEFAULT_TOL).passed);
    }

    #[test]
    fn s3_instances_validate() {
        let s3 = GroupTable::s3();
        let f = FiniteQuantumGroup::from_function_algebra(&s3);
        let gr = FiniteQuantumGroup::from_group_algebra(&s3);
        assert_eq!(f.dim(), 6);
        let rep = f.validate(DEFAULT_TOL);
        assert!(rep.passed, "{:?}", rep.failures());
        let rep = gr.validate(DEFAULT_TOL);
        assert!(rep.passed, "{:?}", rep.failures());
        assert!(f.is_commutative(0.0) && !f.is_cocommutative(1e-12));
        assert!(gr.is_cocommutative(0.0) && !gr.is_commutative(1e-12));
    }

    #[test]
    fn kac_paljutkin_validates() {
        let kp = FiniteQuantumGroup::kac_paljutkin();
        let rep = kp.validate(DEFAULT_TOL);
        assert!(rep.passed, "failed: {:?}", rep.failures());
        assert!(!kp.is_commutative(1e-12));
        assert!(!kp.is_cocommutative(1e-12));
    }

    #[test]
    fn kac_paljutkin_haar_trace_by_hand() {
        // h = 1/8 on each e_k and 1/4 Tr on the matrix block; check traciality
        // on the matrix units directly: h(a12 a21) = h(a11) = h(a22) = h(a21 a12).
        let kp = FiniteQuantumGroup::kac_paljutkin();
        let a12 = kp.basis_vector(5);
        let a21 = kp.basis_vector(6);
        let x = kp.haar_of(&kp.mul(&a12, &a21));
        let y = kp.haar_of(&kp.mul(&a21, &a12));
        assert_eq!(x, r(0.25));
        assert_eq!(y, r(0.25));
    }

    #[test]
    fn every_builtin_validates() {
        for name in FiniteQuantumGroup::builtin_names() {
            let g = FiniteQuantumGroup::builtin(name).unwrap();
            let rep = g.validate(DEFAULT_TOL);
            assert!(rep.passed, "{name}: {:?}", rep.failures());
        }
    }

    #[test]
    fn structural_mismatch_is_distinct_error() {
        let mut data = cz2().data().clone();
        data.haar.pop();
        assert!(matches!(FiniteQuantumGroup::new(data), Err(QgError::Structural(_))));
    }
}
