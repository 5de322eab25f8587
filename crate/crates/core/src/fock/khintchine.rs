use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::norm::{compression_norm, NormOptions};
use super::operator::{free_action, vacuum, AmplifiedOperator};
use super::space::FockSpace;
use crate::error::{QgError, Result};
use crate::linalg::{self, CMat};

pub const KHINTCHINE_CONSTANT: f64 = 3.0;

/// One summand `a (x) x` with `x` a centred element of `factor`.
#[derive(Debug, Clone)]
pub struct KhintchineTerm {
    pub a: CMat,
    pub factor: usize,
    pub x: CMat,
}

#[derive(Debug, Clone)]
pub struct KhintchineReport {
    pub terms: usize,
    pub k: usize,
    pub max_len: usize,
    pub domain_len: usize,
    /// Compression norm of `sum a_i (x) x_i`.
    pub lhs_cert: f64,
    pub max_single: f64,
    pub column: f64,
    pub row: f64,
    pub rhs_max: f64,
    pub ratio: f64,
    /// `max(rhs_max - lhs_cert, 0)`; the lower inequality is only approached
    /// as the word cap grows.
    pub slack: f64,
    pub upper_holds: bool,
    pub iterations: usize,
}

pub fn khintchine_check(
    space: &FockSpace,
    terms: &[KhintchineTerm],
    opts: &NormOptions,
) -> Result<KhintchineReport> {
    let k = terms.first().map(|t| t.a.nrows()).unwrap_or(1);
    let mut seen = vec![false; space.num_factors()];
    let mut x = AmplifiedOperator::new(k);
    let mut max_single: f64 = 0.0;
    let mut col = CMat::zeros(k, k);
    let mut row = CMat::zeros(k, k);
    for t in terms {
        let f = space.factor(t.factor)?;
        if std::mem::replace(&mut seen[t.factor], true) {
            return Err(QgError::Structural(format!(
                "factor {} appears more than once",
                t.factor
            )));
        }
        let scale = linalg::op_norm(&t.x).max(1.0);
        let phi = f.state(&t.x);
        if phi.norm() > 1e-10 * scale {
            return Err(QgError::NotCentred {
                factor: t.factor,
                value: phi.norm(),
            });
        }
        max_single = max_single.max(linalg::op_norm(&t.a) * linalg::op_norm(&t.x));
        let xsx = f.state(&(t.x.adjoint() * &t.x));
        let xxs = f.state(&(&t.x * t.x.adjoint()));
        col += t.a.adjoint() * &t.a * xsx;
        row += &t.a * t.a.adjoint() * xxs;
        x.add_term(t.a.clone(), &free_action(space, t.factor, &t.x)?)?;
    }
    let column = linalg::op_norm(&col).sqrt();
    let row = linalg::op_norm(&row).sqrt();
    let rhs_max = max_single.max(column).max(row);
    let domain_len = space.max_len().saturating_sub(1);
    let est = compression_norm(space, &x, domain_len, opts)?;
    let lhs_cert = est.value;
    Ok(KhintchineReport {
        terms: terms.len(),
        k,
        max_len: space.max_len(),
        domain_len,
        lhs_cert,
        max_single,
        column,
        row,
        rhs_max,
        ratio: if rhs_max > 0.0 { lhs_cert / rhs_max } else { 0.0 },
        slack: (rhs_max - lhs_cert).max(0.0),
        upper_holds: lhs_cert <= KHINTCHINE_CONSTANT * rhs_max + 1e-8,
        iterations: est.iterations,
    })
}

#[derive(Debug, Clone)]
pub struct NormEquivalenceReport {
    pub samples: usize,
    pub ratios: Vec<f64>,
    /// Largest `||x|| / ||x Omega||` observed.
    pub max_ratio: f64,
    /// Smallest ratio; at `d = 1` this is the measured lower bound of
    /// `||phi^*(rho)|| / ||rho||`.
    pub min_ratio: f64,
    pub c1: f64,
    pub c2: f64,
    /// `3 max(c1, c2)`.
    pub bound: f64,
    /// `||x Omega|| <= ||x||` held on every sample.
    pub lower_holds: bool,
}

/// Samples `x = sum_i x_i` with `x_i` in the coefficient space of the same
/// corepresentation placed in factor `i`, given by its matrix entries as
/// elements of the factor.
pub fn norm_equivalence(
    space: &FockSpace,
    entries: &[CMat],
    samples: usize,
    seed: u64,
    opts: &NormOptions,
) -> Result<NormEquivalenceReport> {
    let f = space.factor(0)?;
    let xi = f.xi();
    let dim = f.gns_dim();
    for e in entries {
        if e.nrows() != dim || e.ncols() != dim {
            return Err(QgError::DimensionMismatch {
                expected: dim,
                got: e.nrows(),
                context: "coefficient entry",
            });
        }
    }
    let images = CMat::from_fn(dim, entries.len(), |r, c| (&entries[c] * &xi)[r]);
    let star_images = CMat::from_fn(dim, entries.len(), |r, c| (entries[c].adjoint() * &xi)[r]);
    let (g, _) = linalg::hermitian_eigen(&(images.adjoint() * &images));
    let (gs, _) = linalg::hermitian_eigen(&(star_images.adjoint() * &star_images));
    let min_g = g[0];
    if min_g <= 1e-12 {
        return Err(QgError::NotFaithful { min_eigenvalue: min_g });
    }
    let sum_sq: f64 = entries.iter().map(|e| linalg::op_norm(e).powi(2)).sum();
    let c1 = (sum_sq / min_g).sqrt();
    let c2 = (gs[gs.len() - 1] / min_g).sqrt();

    let domain_len = space.max_len().saturating_sub(1);
    let omega = vacuum(space);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ratios = Vec::with_capacity(samples);
    let mut lower_holds = true;
    for _ in 0..samples {
        let n = space.num_factors();
        let mut support: Vec<usize> = (0..n).filter(|_| rng.random::<bool>()).collect();
        if support.is_empty() {
            support.push(rng.random_range(0..n));
        }
        let mut x = AmplifiedOperator::new(1);
        for &i in &support {
            let rho = linalg::random_vector(&mut rng, entries.len());
            let mut xi_elem = CMat::zeros(dim, dim);
            for (e, z) in entries.iter().zip(&rho) {
                xi_elem += e * *z;
            }
            x.add_term(linalg::identity(1), &free_action(space, i, &xi_elem)?)?;
        }
        let l2 = x.apply(&omega).norm();
        let norm = compression_norm(space, &x, domain_len, opts)?.value;
        lower_holds &= l2 <= norm * (1.0 + 1e-10) + 1e-12;
        ratios.push(norm / l2);
    }
    let max_ratio = ratios.iter().cloned().fold(0.0, f64::max);
    let min_ratio = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(NormEquivalenceReport {
        samples,
        ratios,
        max_ratio,
        min_ratio,
        c1,
        c2,
        bound: KHINTCHINE_CONSTANT * c1.max(c2),
        lower_holds,
    })
}
