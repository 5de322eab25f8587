//! The bounded but not completely bounded representation built from `N`
//! free copies of `C(Z_2)` with the nontrivial characters `u_i`.
//!
//! `phi(omega) = (omega(u_i))_i`, `theta_0(delta_i) = e_ii + e_i0` on
//! `C^{N+1}` and `pi = theta_0 . phi`, with generator
//! `V = sum_i u_i (x) (e_ii + e_i0)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::factor::FreeFactor;
use super::norm::{compression_norm, NormOptions};
use super::operator::{free_action, AmplifiedOperator, FreeOperator};
use super::space::FockSpace;
use crate::error::Result;
use crate::linalg::{self, CMat, C64, ONE, ZERO};

/// `||theta_0|| <= 2` times `||phi|| <= 3` from the norm equivalence with
/// `C_1 = C_2 = 1`.
pub const BOUNDED_UPPER: f64 = 6.0;

/// `omega(x) = <x zeta, eta>`; its norm is at most `||zeta|| ||eta||`.
#[derive(Debug, Clone)]
pub struct VectorFunctional {
    pub zeta: CMat,
    pub eta: CMat,
}

impl VectorFunctional {
    pub fn norm_bound(&self) -> f64 {
        self.zeta.norm() * self.eta.norm()
    }
}

#[derive(Debug, Clone)]
pub struct NonCbRep {
    pub n: usize,
    pub space: FockSpace,
    pub symmetries: Vec<FreeOperator>,
}

pub fn build_noncb_rep(n: usize, max_len: usize, cap: usize) -> Result<NonCbRep> {
    let f = FreeFactor::z2();
    let space = FockSpace::copies(&f, n, max_len, cap)?;
    let u = f.element(&[ONE, -ONE])?;
    let symmetries = (0..n)
        .map(|i| free_action(&space, i, &u))
        .collect::<Result<Vec<_>>>()?;
    Ok(NonCbRep { n, space, symmetries })
}

pub fn theta0(c: &[C64]) -> CMat {
    let n = c.len();
    let mut m = CMat::zeros(n + 1, n + 1);
    for (i, z) in c.iter().enumerate() {
        m[(i + 1, i + 1)] += *z;
        m[(i + 1, 0)] += *z;
    }
    m
}

fn unit(k: usize, r: usize, c: usize) -> CMat {
    CMat::from_fn(k, k, |i, j| if i == r && j == c { ONE } else { ZERO })
}

impl NonCbRep {
    pub fn phi(&self, omega: &VectorFunctional) -> Vec<C64> {
        self.symmetries
            .iter()
            .map(|u| omega.eta.dotc(&u.apply(&omega.zeta)))
            .collect()
    }

    pub fn pi(&self, omega: &VectorFunctional) -> CMat {
        theta0(&self.phi(omega))
    }

    /// `phi` of the convolution product; `Delta(u_i) = u_i (x) u_i`.
    pub fn phi_product(&self, a: &VectorFunctional, b: &VectorFunctional) -> Vec<C64> {
        self.phi(a).iter().zip(self.phi(b)).map(|(x, y)| x * y).collect()
    }

    pub fn generator(&self) -> AmplifiedOperator {
        let k = self.n + 1;
        let mut v = AmplifiedOperator::new(k);
        for (i, u) in self.symmetries.iter().enumerate() {
            v.add_term(unit(k, i + 1, i + 1) + unit(k, i + 1, 0), u)
                .expect("square of size k");
        }
        v
    }

    /// `sum_i u_i (x) e_ii`, unitary with norm one.
    pub fn diagonal_part(&self) -> AmplifiedOperator {
        let k = self.n + 1;
        let mut v = AmplifiedOperator::new(k);
        for (i, u) in self.symmetries.iter().enumerate() {
            v.add_term(unit(k, i + 1, i + 1), u).expect("square of size k");
        }
        v
    }

    /// `sum_i u_i (x) e_i0`, the column with `x^* x = N (x) e_00`.
    pub fn column_part(&self) -> AmplifiedOperator {
        let k = self.n + 1;
        let mut v = AmplifiedOperator::new(k);
        for (i, u) in self.symmetries.iter().enumerate() {
            v.add_term(unit(k, i + 1, 0), u).expect("square of size k");
        }
        v
    }

    pub fn random_functional(&self, rng: &mut ChaCha8Rng) -> VectorFunctional {
        let dom = self.space.dim_up_to(self.space.max_len().saturating_sub(1));
        let dim = self.space.dim();
        let mut zeta = CMat::zeros(dim, 1);
        let mut eta = CMat::zeros(dim, 1);
        for r in 0..dom {
            zeta[(r, 0)] = linalg::gaussian(rng);
        }
        for r in 0..dim {
            eta[(r, 0)] = linalg::gaussian(rng);
        }
        VectorFunctional { zeta, eta }
    }

    /// Largest `||pi(omega)|| / (||zeta|| ||eta||)` found by alternating
    /// ascent over vector functionals; a lower bound for `||pi||`.
    pub fn bounded_norm_lower(&self, restarts: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dom = self.space.dim_up_to(self.space.max_len().saturating_sub(1));
        let ratio = |w: &VectorFunctional| {
            let b = w.norm_bound();
            if b > 0.0 {
                linalg::op_norm(&self.pi(w)) / b
            } else {
                0.0
            }
        };
        let mut best: f64 = 0.0;
        for _ in 0..restarts.max(1) {
            let mut w = self.random_functional(&mut rng);
            let mut last = ratio(&w);
            for _ in 0..60 {
                let m = self.pi(&w);
                let svd = m.svd(true, true);
                let top = (0..svd.singular_values.len())
                    .max_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]))
                    .unwrap_or(0);
                let p = svd.u.as_ref().expect("u computed").column(top).into_owned();
                let q = svd.v_t.as_ref().expect("v computed").row(top).adjoint();
                // <theta_0(c) q, p> = sum_i c_i conj(p_i) (q_i + q_0)
                let weights: Vec<C64> = (0..self.n)
                    .map(|i| p[i + 1].conj() * (q[i + 1] + q[0]))
                    .collect();
                let terms: Vec<(C64, &FreeOperator)> =
                    weights.iter().cloned().zip(self.symmetries.iter()).collect();
                let a = AmplifiedOperator::scalar_sum(&terms);
                let eta = a.apply(&w.zeta);
                if eta.norm() == 0.0 {
                    break;
                }
                w.eta = &eta / linalg::r(eta.norm());
                let mut zeta = a.apply_adjoint(&w.eta);
                for r in dom..zeta.nrows() {
                    zeta[(r, 0)] = ZERO;
                }
                if zeta.norm() == 0.0 {
                    break;
                }
                w.zeta = &zeta / linalg::r(zeta.norm());
                let now = ratio(&w);
                let done = (now - last).abs() <= 1e-12 * now.max(1.0);
                last = now;
                if done {
                    break;
                }
            }
            best = best.max(ratio(&w));
        }
        best
    }
}

#[derive(Debug, Clone)]
pub struct NonCbReport {
    pub n: usize,
    pub max_len: usize,
    pub domain_len: usize,
    pub fock_dim: usize,
    /// Compression norm of the generator, a lower bound for `||pi||_cb`.
    pub cb_lower: f64,
    pub column_norm: f64,
    pub diagonal_norm: f64,
    /// `||V - U|| - ||U||` with `U` the unitary diagonal part.
    pub cb_floor: f64,
    pub analytic_floor: f64,
    pub bounded_upper: f64,
    pub bounded_lower: f64,
    pub multiplicativity_residual: f64,
    pub theta_hom_residual: f64,
    /// Row and column norms of the factorization of the coefficient
    /// `T^{pi~}_{delta_1, delta_0} = u_1`.
    pub multiplier_row: f64,
    pub multiplier_column: f64,
    pub multiplier_factorization: f64,
}

pub fn cb_vs_bounded_probe(
    rep: &NonCbRep,
    restarts: usize,
    seed: u64,
    opts: &NormOptions,
) -> Result<NonCbReport> {
    let n = rep.n;
    let k = n + 1;
    let domain_len = rep.space.max_len().saturating_sub(1);
    let cb_lower = compression_norm(&rep.space, &rep.generator(), domain_len, opts)?.value;
    let column_norm = compression_norm(&rep.space, &rep.column_part(), domain_len, opts)?.value;
    let diagonal_norm = compression_norm(&rep.space, &rep.diagonal_part(), domain_len, opts)?.value;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut multiplicativity_residual: f64 = 0.0;
    let mut theta_hom_residual: f64 = 0.0;
    for _ in 0..4 {
        let a = rep.random_functional(&mut rng);
        let b = rep.random_functional(&mut rng);
        let lhs = theta0(&rep.phi_product(&a, &b));
        let rhs = rep.pi(&a) * rep.pi(&b);
        multiplicativity_residual = multiplicativity_residual.max(linalg::op_norm(&(lhs - rhs)));
        let x = linalg::random_vector(&mut rng, n);
        let y = linalg::random_vector(&mut rng, n);
        let xy: Vec<C64> = x.iter().zip(&y).map(|(p, q)| p * q).collect();
        theta_hom_residual =
            theta_hom_residual.max(linalg::op_norm(&(theta0(&xy) - theta0(&x) * theta0(&y))));
    }

    // Coefficients of V~ = V^* = sum_i u_i (x) (e_ii + e_0i) at alpha = delta_1,
    // beta = delta_0: a_r = V~_{r1} (u_1 for r = 0, 1), b_i = V~_{0i} = u_i and
    // c_i = S(b_i^*)^* = u_i.
    let mut rows = AmplifiedOperator::new(k);
    for (i, u) in rep.symmetries.iter().enumerate() {
        rows.add_term(unit(k, 0, i + 1), u)?;
    }
    let mut cols = AmplifiedOperator::new(k);
    if let Some(u1) = rep.symmetries.first() {
        cols.add_term(unit(k, 0, 0), u1)?;
        cols.add_term(unit(k, 1, 0), u1)?;
    }
    let multiplier_row = compression_norm(&rep.space, &rows, domain_len, opts)?.value;
    let multiplier_column = compression_norm(&rep.space, &cols, domain_len, opts)?.value;

    Ok(NonCbReport {
        n,
        max_len: rep.space.max_len(),
        domain_len,
        fock_dim: rep.space.dim(),
        cb_lower,
        column_norm,
        diagonal_norm,
        cb_floor: column_norm - 1.0,
        analytic_floor: (n as f64).sqrt() - 1.0,
        bounded_upper: BOUNDED_UPPER,
        bounded_lower: rep.bounded_norm_lower(restarts, seed ^ 0x5a5a),
        multiplicativity_residual,
        theta_hom_residual,
        multiplier_row,
        multiplier_column,
        multiplier_factorization: multiplier_row * multiplier_column,
    })
}
