use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::operator::AmplifiedOperator;
use super::space::FockSpace;
use crate::error::{QgError, Result};
use crate::linalg::{self, CMat};

#[derive(Debug, Clone)]
pub struct NormOptions {
    /// Relative change of the top Ritz value between restarts.
    pub tol: f64,
    /// Budget of operator applications.
    pub max_iter: usize,
    /// Krylov basis size per restart.
    pub krylov: usize,
    pub seed: u64,
}

impl Default for NormOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 4000,
            krylov: 12,
            seed: 0x0f0c_4a11,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NormEstimate {
    /// `||x v||` for the returned unit vector `v` supported on the domain.
    pub value: f64,
    pub iterations: usize,
    pub domain_len: usize,
    pub domain_dim: usize,
    pub vector: CMat,
}

/// Norm of `x` compressed to words of length `<= domain_len`.
///
/// Every summand moves word length by at most one, so on that domain the
/// truncated operator agrees with the free-product operator and the result
/// is a lower bound for the true norm. The value reported is `||x v||` for
/// an explicit unit vector `v`, found by restarted Lanczos on `P x^* x P`.
pub fn compression_norm(
    space: &FockSpace,
    x: &AmplifiedOperator,
    domain_len: usize,
    opts: &NormOptions,
) -> Result<NormEstimate> {
    compression_norm_from(space, x, domain_len, opts, None)
}

/// As [`compression_norm`], starting from `start` (restricted to the domain).
pub fn compression_norm_from(
    space: &FockSpace,
    x: &AmplifiedOperator,
    domain_len: usize,
    opts: &NormOptions,
    start: Option<&CMat>,
) -> Result<NormEstimate> {
    if domain_len >= space.max_len() {
        return Err(QgError::Exactness {
            domain_len,
            max_len: space.max_len(),
        });
    }
    let n = space.dim();
    let k = x.k();
    let n_dom = space.dim_up_to(domain_len);
    let project = |v: &mut CMat| {
        for r in n_dom..n {
            for c in 0..k {
                v[(r, c)] = linalg::ZERO;
            }
        }
    };
    let op = |v: &CMat| {
        let mut w = x.apply_adjoint(&x.apply(v));
        project(&mut w);
        w
    };

    // A warm start may sit in an invariant subspace; mix in a random
    // direction and keep whichever of the two final vectors is better.
    let warm = start.filter(|s| s.nrows() == n && s.ncols() == k).map(|s| {
        let mut s = s.clone();
        project(&mut s);
        s
    });
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut v = CMat::zeros(n, k);
    for r in 0..n_dom {
        for c in 0..k {
            v[(r, c)] = linalg::gaussian(&mut rng);
        }
    }
    v /= linalg::r(v.norm());
    let warm = warm.filter(|w| w.norm() > 0.0).map(|w| {
        let w = &w / linalg::r(w.norm());
        v = &w + &v * linalg::r(0.1);
        v /= linalg::r(v.norm());
        w
    });

    let m = opts.krylov.max(2);
    let mut iterations = 0;
    let mut prev = f64::NAN;
    loop {
        let mut basis: Vec<CMat> = vec![v.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        let mut exhausted = false;
        for j in 0..m {
            let mut w = op(&basis[j]);
            iterations += 1;
            let alpha = basis[j].dotc(&w).re;
            alphas.push(alpha);
            for _ in 0..2 {
                for q in &basis {
                    let p = q.dotc(&w);
                    w -= q * p;
                }
            }
            let beta = w.norm();
            if beta <= 1e-12 * alpha.abs().max(1e-300) || j + 1 == m {
                exhausted = beta <= 1e-12 * alpha.abs().max(1e-300);
                break;
            }
            betas.push(beta);
            basis.push(w / linalg::r(beta));
        }
        let dim = alphas.len();
        let t = DMatrix::<f64>::from_fn(dim, dim, |r, c| {
            if r == c {
                alphas[r]
            } else if r + 1 == c {
                betas[r]
            } else if c + 1 == r {
                betas[c]
            } else {
                0.0
            }
        });
        let eig = t.symmetric_eigen();
        let (top, _) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .fold((0usize, f64::NEG_INFINITY), |acc, (i, &e)| if e > acc.1 { (i, e) } else { acc });
        let theta = eig.eigenvalues[top];
        let mut ritz = CMat::zeros(n, k);
        for (j, q) in basis.iter().take(dim).enumerate() {
            ritz += q * linalg::r(eig.eigenvectors[(j, top)]);
        }
        let nr = ritz.norm();
        if nr > 0.0 {
            ritz /= linalg::r(nr);
        }
        let change = (theta - prev).abs();
        let converged = exhausted || theta <= 0.0 || change <= opts.tol * theta;
        v = ritz;
        if converged {
            let mut value = x.apply(&v).norm();
            if let Some(w) = &warm {
                let warm_value = x.apply(w).norm();
                if warm_value > value {
                    value = warm_value;
                    v = w.clone();
                }
            }
            return Ok(NormEstimate {
                value,
                iterations,
                domain_len,
                domain_dim: n_dom,
                vector: v,
            });
        }
        if iterations >= opts.max_iter {
            return Err(QgError::NoConvergence {
                iterations,
                last_change: change,
                estimate: theta.max(0.0).sqrt(),
            });
        }
        prev = theta;
    }
}

/// Compression norms for increasing domain lengths, each run warm-started
/// from the previous optimizer, so the sequence is nondecreasing.
pub fn compression_profile(
    space: &FockSpace,
    x: &AmplifiedOperator,
    lens: &[usize],
    opts: &NormOptions,
) -> Result<Vec<NormEstimate>> {
    let mut out: Vec<NormEstimate> = Vec::with_capacity(lens.len());
    for &len in lens {
        let start = out.last().map(|e| e.vector.clone());
        out.push(compression_norm_from(space, x, len, opts, start.as_ref())?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::factor::FreeFactor;
    use crate::fock::operator::free_action;
    use crate::linalg::ONE;

    #[test]
    fn symmetry_has_norm_one() {
        let f = FreeFactor::z2();
        let s = FockSpace::copies(&f, 3, 3, 1000).unwrap();
        let u = f.element(&[ONE, -ONE]).unwrap();
        let x = AmplifiedOperator::from_operator(&free_action(&s, 1, &u).unwrap());
        for len in 0..3 {
            let e = compression_norm(&s, &x, len, &NormOptions::default()).unwrap();
            assert!((e.value - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn domain_must_leave_room() {
        let f = FreeFactor::z2();
        let s = FockSpace::copies(&f, 2, 2, 1000).unwrap();
        let x = AmplifiedOperator::new(1);
        assert!(matches!(
            compression_norm(&s, &x, 2, &NormOptions::default()),
            Err(QgError::Exactness { .. })
        ));
    }
}
