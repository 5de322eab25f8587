//! Small dense complex linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Largest singular value.
pub fn op_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().cloned().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// Sum of singular values.
pub fn trace_norm(m: &CMat) -> f64 {
    singular_values(m).iter().sum()
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Bilinear pairing `sum a_i b_i`.
pub fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn diff_norm(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    let sym = (m + m.adjoint()) * r(0.5);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

/// Applies a real function to the spectrum of a Hermitian matrix.
pub fn hermitian_apply(m: &CMat, f: impl Fn(f64) -> f64) -> CMat {
    let (vals, vecs) = hermitian_eigen(m);
    let d = CMat::from_diagonal(&CVec::from_iterator(vals.len(), vals.iter().map(|&v| r(f(v)))));
    &vecs * d * vecs.adjoint()
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Least-squares solution of `a x = b` via SVD.
pub fn lstsq(a: &CMat, b: &CMat) -> CMat {
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    svd.solve(b, smax * 1e-13).expect("svd computed with u and v")
}

pub fn inverse(a: &CMat) -> Option<CMat> {
    a.clone().try_inverse()
}

pub fn gaussian(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| gaussian(rng)).collect()
}

pub fn random_unit_vector(rng: &mut impl Rng, n: usize) -> Vec<C64> {
    let v = random_vector(rng, n);
    let nv = vec_norm(&v);
    v.into_iter().map(|z| z / nv).collect()
}

/// Haar-distributed unitary from the QR decomposition of a Gaussian matrix.
pub fn random_unitary(rng: &mut impl Rng, d: usize) -> CMat {
    let g = random_matrix(rng, d, d);
    let qr = g.qr();
    let mut q = qr.q();
    let rr = qr.r();
    for j in 0..d {
        let diag = rr[(j, j)];
        let phase = if diag.norm() > 0.0 { diag / diag.norm() } else { ONE };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn random_hermitian(rng: &mut impl Rng, d: usize) -> CMat {
    let g = random_matrix(rng, d, d);
    (&g + g.adjoint()) * r(0.5)
}

/// Matrix with operator norm `smax` and smallest singular value 1.
pub fn random_conditioned(rng: &mut impl Rng, d: usize, cond: f64) -> CMat {
    let u = random_unitary(rng, d);
    let v = random_unitary(rng, d);
    let mut s = CVec::zeros(d);
    for i in 0..d {
        let t = if d == 1 {
            0.0
        } else if i == 0 {
            0.0
        } else if i == d - 1 {
            1.0
        } else {
            rng.random::<f64>()
        };
        s[i] = r(cond.powf(t));
    }
    u * CMat::from_diagonal(&s) * v.adjoint()
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn to_cvec(v: &[C64]) -> CVec {
    CVec::from_column_slice(v)
}

pub fn close_mat(a: &CMat, b: &CMat) -> f64 {
    frobenius(&(a - b))
}
