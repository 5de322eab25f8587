mod common;

use common::*;
use proptest::prelude::*;
use qglab::fock::khintchine::KHINTCHINE_CONSTANT;
use qglab::fock::noncb::{theta0, BOUNDED_UPPER};
use qglab::fock::space::predicted_dim;
use qglab::fock::*;
use qglab::linalg::{self, CMat, C64, ONE, ZERO};
use qglab::{FiniteQuantumGroup, QgError};

const CAP: usize = 200_000;

fn opts() -> NormOptions {
    NormOptions::default()
}

/// Alternating words over factors with the given centred dimensions,
/// counted by brute force.
fn enumerate(dims: &[usize], max_len: usize) -> usize {
    fn go(dims: &[usize], last: Option<usize>, left: usize) -> usize {
        if left == 0 {
            return 1;
        }
        let mut total = 1;
        for (i, &d) in dims.iter().enumerate() {
            if Some(i) != last {
                total += d * go(dims, Some(i), left - 1);
            }
        }
        total
    }
    go(dims, None, max_len)
}

fn z2_symmetries(n: usize, max_len: usize) -> (FockSpace, Vec<FreeOperator>) {
    let f = FreeFactor::z2();
    let space = FockSpace::copies(&f, n, max_len, CAP).unwrap();
    let u = f.element(&[ONE, -ONE]).unwrap();
    let ops = (0..n).map(|i| free_action(&space, i, &u).unwrap()).collect();
    (space, ops)
}

fn on_zone(space: &FockSpace, len: usize, rng: &mut rand_chacha::ChaCha8Rng, k: usize) -> CMat {
    let mut v = CMat::zeros(space.dim(), k);
    for r in 0..space.dim_up_to(len) {
        for c in 0..k {
            v[(r, c)] = linalg::gaussian(rng);
        }
    }
    v
}

#[test]
fn dimensions() {
    let z2 = FreeFactor::z2();
    let s = FockSpace::copies(&z2, 2, 3, CAP).unwrap();
    assert_eq!(s.dim(), 7);
    assert_eq!(s.dim(), enumerate(&[1, 1], 3));
    for n in [1, 4, 9] {
        assert_eq!(FockSpace::copies(&z2, n, 1, CAP).unwrap().dim(), 1 + n);
    }
    let m2 = FreeFactor::matrix_trace(2);
    let s = FockSpace::copies(&m2, 2, 2, CAP).unwrap();
    assert_eq!(s.dim(), 25);
    assert_eq!(s.dim(), enumerate(&[3, 3], 2));
    let mixed = FockSpace::build_with_cap(vec![m2, z2, FreeFactor::matrix_trace(3)], 3, CAP).unwrap();
    assert_eq!(mixed.dim(), enumerate(&[3, 1, 8], 3));
    for t in 0..mixed.dim() {
        let w = mixed.word(t);
        assert!(w.windows(2).all(|p| p[0].0 != p[1].0));
        assert_eq!(mixed.index_of(&w), Some(t));
    }
}

#[test]
fn budget_is_predicted_before_building() {
    let z2 = FreeFactor::z2();
    assert_eq!(predicted_dim(&[1; 16], 4), 57_857);
    match FockSpace::copies(&z2, 16, 5, CAP) {
        Err(QgError::Budget { dim, cap }) => {
            assert_eq!(dim as u128, predicted_dim(&[1; 16], 5));
            assert_eq!(cap, CAP);
        }
        other => panic!("expected budget error, got {other:?}"),
    }
}

#[test]
fn degenerate_state_rejected() {
    assert!(matches!(FreeFactor::diagonal(&[1.0, 0.0]), Err(QgError::NotFaithful { .. })));
    let bad = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![ONE, ZERO]));
    assert!(matches!(FreeFactor::matrix_algebra(2, &bad), Err(QgError::NotFaithful { .. })));
}

#[test]
fn symmetry_on_vacuum() {
    let (s, u) = z2_symmetries(2, 3);
    let omega = vacuum(&s);
    let v = u[0].apply(&omega);
    let w = s.index_of(&[(0, 0)]).unwrap();
    assert!((v[(w, 0)].norm() - 1.0).abs() < 1e-14);
    assert!((v.norm() - 1.0).abs() < 1e-14);
    let back = u[0].apply(&v);
    assert!((back - &omega).norm() < 1e-14);
    let uu = vacuum_state(&s, &[&u[0], &u[0]]);
    assert!(uu.exact && (uu.value - ONE).norm() < 1e-14);
}

#[test]
fn fourth_moment_of_two_free_symmetries() {
    // closed words in the free product Z_2 * Z_2 reduce to the identity
    fn reduces(word: &[usize]) -> bool {
        let mut stack: Vec<usize> = Vec::new();
        for &l in word {
            if stack.last() == Some(&l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        stack.is_empty()
    }
    let mut oracle = 0usize;
    for mask in 0..16usize {
        let word: Vec<usize> = (0..4).map(|b| (mask >> b) & 1).collect();
        oracle += reduces(&word) as usize;
    }
    assert_eq!(oracle, 6);
    let (s, u) = z2_symmetries(2, 4);
    let sum = AmplifiedOperator::scalar_sum(&[(ONE, &u[0]), (ONE, &u[1])]);
    let mut v = vacuum(&s);
    for _ in 0..4 {
        v = sum.apply(&v);
    }
    assert!((v[(0, 0)] - linalg::r(oracle as f64)).norm() < 1e-12);
}

#[test]
fn product_state_is_free_product_of_states() {
    let mut r = rng(50);
    let factors = vec![
        FreeFactor::matrix_trace(2),
        FreeFactor::from_quantum_group(&FiniteQuantumGroup::kac_paljutkin()).unwrap(),
    ];
    let s = FockSpace::build_with_cap(factors.clone(), 2, CAP).unwrap();
    for _ in 0..5 {
        let a = factors[0].random_element(&mut r);
        let b = factors[1].random_element(&mut r);
        let pa = free_action(&s, 0, &a).unwrap();
        let pb = free_action(&s, 1, &b).unwrap();
        let got = vacuum_state(&s, &[&pa, &pb]);
        let want = factors[0].state(&a) * factors[1].state(&b);
        assert!(got.exact);
        assert!((got.value - want).norm() < 1e-12 * (1.0 + want.norm()));
    }
}

#[test]
fn alternating_centred_products_vanish() {
    let mut r = rng(51);
    let factors = vec![FreeFactor::matrix_trace(2), FreeFactor::z2(), FreeFactor::matrix_trace(2)];
    let s = FockSpace::build_with_cap(factors.clone(), 4, CAP).unwrap();
    let patterns: [&[usize]; 4] = [&[0, 1, 0], &[0, 1, 2, 0], &[2, 0, 2, 1], &[1, 0]];
    for p in patterns {
        let ops: Vec<FreeOperator> = p
            .iter()
            .map(|&i| free_action(&s, i, &factors[i].random_centred(&mut r)).unwrap())
            .collect();
        let refs: Vec<&FreeOperator> = ops.iter().collect();
        let got = vacuum_state(&s, &refs);
        assert!(got.exact);
        assert!(got.value.norm() < 1e-10);
    }
    // flagged once the product is longer than the word cap
    let u = FreeFactor::z2().element(&[ONE, -ONE]).unwrap();
    let op = free_action(&s, 1, &u).unwrap();
    assert!(!vacuum_state(&s, &[&op; 5]).exact);
}

#[test]
fn free_action_is_star_homomorphism_on_exact_zone() {
    let mut r = rng(52);
    let factors = vec![FreeFactor::matrix_trace(2), FreeFactor::matrix_trace(2), FreeFactor::z2()];
    let s = FockSpace::build_with_cap(factors.clone(), 3, CAP).unwrap();
    for i in 0..3 {
        let a = factors[i].random_element(&mut r);
        let b = factors[i].random_element(&mut r);
        let pa = free_action(&s, i, &a).unwrap();
        let pb = free_action(&s, i, &b).unwrap();
        let pab = free_action(&s, i, &(&a * &b)).unwrap();
        let pas = free_action(&s, i, &a.adjoint()).unwrap();
        let v = on_zone(&s, 2, &mut r, 1);
        let lhs = pab.apply(&v);
        let rhs = pa.apply(&pb.apply(&v));
        assert!((lhs - rhs).norm() < 1e-10 * (1.0 + v.norm()));
        assert!((pa.apply_adjoint(&v) - pas.apply(&v)).norm() < 1e-10 * (1.0 + v.norm()));
        let one = free_action(&s, i, &linalg::identity(factors[i].gns_dim())).unwrap();
        let full = on_zone(&s, 3, &mut r, 1);
        assert!((one.apply(&full) - &full).norm() < 1e-12);
    }
}

#[test]
fn column_of_free_symmetries() {
    for (n, len) in [(4usize, 3usize), (9, 3), (16, 2)] {
        let rep = build_noncb_rep(n, len, CAP).unwrap();
        let x = rep.column_part();
        let mut r = rng(n as u64);
        let v = on_zone(&rep.space, len - 1, &mut r, n + 1);
        // x^* x = N (x) e_00
        let got = x.apply_adjoint(&x.apply(&v));
        let mut want = CMat::zeros(v.nrows(), n + 1);
        want.column_mut(0).copy_from(&(v.column(0) * linalg::r(n as f64)));
        assert!((got - want).norm() < 1e-12 * (1.0 + v.norm()));
        for dom in 0..len {
            let e = compression_norm(&rep.space, &x, dom, &opts()).unwrap();
            assert!((e.value - (n as f64).sqrt()).abs() < 1e-10, "N={n} dom={dom}: {}", e.value);
        }
    }
}

#[test]
fn sum_of_four_free_symmetries() {
    let (s, u) = z2_symmetries(4, 6);
    let terms: Vec<(C64, &FreeOperator)> = u.iter().map(|op| (ONE, op)).collect();
    let x = AmplifiedOperator::scalar_sum(&terms);
    let profile = compression_profile(&s, &x, &[0, 1, 2, 3, 4, 5], &opts()).unwrap();
    let values: Vec<f64> = profile.iter().map(|e| e.value).collect();
    assert!(values.windows(2).all(|w| w[1] >= w[0] - 1e-12), "{values:?}");
    let top = values[5];
    assert!(top >= 3.2 && top <= 2.0 * 3f64.sqrt() + 1e-9, "{top}");
    // the value is attained by the returned vector
    let e = &profile[5];
    assert!((x.apply(&e.vector).norm() - e.value).abs() < 1e-12);
    assert!((e.vector.norm() - 1.0).abs() < 1e-12);
    assert!(e.vector.rows(e.domain_dim, s.dim() - e.domain_dim).norm() == 0.0);
}

#[test]
fn compression_requires_room() {
    let (s, u) = z2_symmetries(2, 2);
    let x = AmplifiedOperator::from_operator(&u[0]);
    assert!(matches!(
        compression_norm(&s, &x, 2, &opts()),
        Err(QgError::Exactness { .. })
    ));
    let tight = NormOptions { max_iter: 1, ..opts() };
    let (s, u) = z2_symmetries(4, 4);
    let terms: Vec<(C64, &FreeOperator)> = u.iter().map(|op| (ONE, op)).collect();
    let sum = AmplifiedOperator::scalar_sum(&terms);
    assert!(matches!(
        compression_norm(&s, &sum, 3, &NormOptions { krylov: 2, ..tight }),
        Err(QgError::NoConvergence { .. })
    ));
}

#[test]
fn khintchine_scalar_symmetries() {
    let (s, _) = z2_symmetries(4, 5);
    let u = FreeFactor::z2().element(&[ONE, -ONE]).unwrap();
    let terms: Vec<KhintchineTerm> = (0..4)
        .map(|i| KhintchineTerm { a: linalg::identity(1), factor: i, x: u.clone() })
        .collect();
    let rep = khintchine_check(&s, &terms, &opts()).unwrap();
    assert!((rep.rhs_max - 2.0).abs() < 1e-12);
    assert!(rep.lhs_cert >= 2.0 - 1e-9 && rep.lhs_cert <= 6.0);
    assert!(rep.upper_holds);
}

#[test]
fn khintchine_single_term_collapses() {
    let mut r = rng(53);
    let f = FreeFactor::matrix_trace(2);
    let s = FockSpace::copies(&f, 2, 3, CAP).unwrap();
    let x = f.random_centred(&mut r);
    let a = linalg::random_matrix(&mut r, 2, 2);
    let rep = khintchine_check(&s, &[KhintchineTerm { a: a.clone(), factor: 1, x: x.clone() }], &opts()).unwrap();
    let want = linalg::op_norm(&a) * linalg::op_norm(&x);
    assert!((rep.max_single - want).abs() < 1e-10 * want);
    assert!((rep.lhs_cert - want).abs() < 1e-6 * want, "{} vs {want}", rep.lhs_cert);
    assert!(rep.rhs_max >= want - 1e-12);
}

#[test]
fn khintchine_matrix_coefficients() {
    let mut r = rng(54);
    let (s, _) = z2_symmetries(3, 5);
    let u = FreeFactor::z2().element(&[ONE, -ONE]).unwrap();
    let a: Vec<CMat> = (0..3).map(|_| linalg::random_matrix(&mut r, 2, 2)).collect();
    let terms: Vec<KhintchineTerm> = a
        .iter()
        .enumerate()
        .map(|(i, a)| KhintchineTerm { a: a.clone(), factor: i, x: u.clone() })
        .collect();
    let rep = khintchine_check(&s, &terms, &opts()).unwrap();
    // phi(u^* u) = phi(u u^*) = 1
    let col: CMat = a.iter().map(|m| m.adjoint() * m).fold(CMat::zeros(2, 2), |acc, m| acc + m);
    let row: CMat = a.iter().map(|m| m * m.adjoint()).fold(CMat::zeros(2, 2), |acc, m| acc + m);
    assert!((rep.column - linalg::op_norm(&col).sqrt()).abs() < 1e-10);
    assert!((rep.row - linalg::op_norm(&row).sqrt()).abs() < 1e-10);
    assert!(rep.upper_holds);
    assert!(rep.lhs_cert <= KHINTCHINE_CONSTANT * rep.rhs_max + 1e-8);
    assert!(rep.ratio > 0.0 && rep.ratio <= KHINTCHINE_CONSTANT);
}

#[test]
fn khintchine_input_checks() {
    let (s, _) = z2_symmetries(2, 3);
    let f = FreeFactor::z2();
    let u = f.element(&[ONE, -ONE]).unwrap();
    let one = linalg::identity(2);
    let dup = vec![
        KhintchineTerm { a: linalg::identity(1), factor: 0, x: u.clone() },
        KhintchineTerm { a: linalg::identity(1), factor: 0, x: u.clone() },
    ];
    assert!(matches!(khintchine_check(&s, &dup, &opts()), Err(QgError::Structural(_))));
    let uncentred = vec![KhintchineTerm { a: linalg::identity(1), factor: 1, x: one }];
    assert!(matches!(
        khintchine_check(&s, &uncentred, &opts()),
        Err(QgError::NotCentred { factor: 1, .. })
    ));
}

#[test]
fn norm_equivalence_for_characters() {
    let (s, _) = z2_symmetries(4, 4);
    let u = FreeFactor::z2().element(&[ONE, -ONE]).unwrap();
    let rep = norm_equivalence(&s, &[u.clone()], 100, 7, &opts()).unwrap();
    assert!((rep.c1 - 1.0).abs() < 1e-12 && (rep.c2 - 1.0).abs() < 1e-12);
    assert_eq!(rep.bound, 3.0);
    assert!(rep.lower_holds);
    assert!(rep.max_ratio <= 3.0 + 1e-6);
    assert!(rep.min_ratio >= 1.0 - 1e-10);
    // a single symmetry has ||u Omega|| = 1 = ||u||
    let (s1, _) = z2_symmetries(1, 2);
    let single = norm_equivalence(&s1, &[u], 5, 1, &opts()).unwrap();
    assert!(single.ratios.iter().all(|r| (r - 1.0).abs() < 1e-10));
}

#[test]
fn noncb_single_copy() {
    let rep = build_noncb_rep(1, 3, CAP).unwrap();
    let probe = cb_vs_bounded_probe(&rep, 2, 1, &opts()).unwrap();
    // u (x) (e_11 + e_10) with u a symmetry: the norm is that of [[0,0],[1,1]]
    let m = CMat::from_row_slice(2, 2, &[ZERO, ZERO, ONE, ONE]);
    let want = linalg::op_norm(&m);
    assert!((probe.cb_lower - want).abs() < 1e-10);
    assert!(probe.cb_lower <= 2.0);
}

#[test]
fn noncb_four_copies() {
    let n = 4;
    let rep = build_noncb_rep(n, 4, CAP).unwrap();
    let probe = cb_vs_bounded_probe(&rep, 4, 3, &opts()).unwrap();
    // V^* V = 1 (x) M with M = [[N, 1^T], [1, I]]
    let mut m = linalg::identity(n + 1);
    m[(0, 0)] = linalg::r(n as f64);
    for i in 1..=n {
        m[(0, i)] = ONE;
        m[(i, 0)] = ONE;
    }
    let exact = linalg::op_norm(&m).sqrt();
    assert!((probe.cb_lower - exact).abs() < 1e-8, "{} vs {exact}", probe.cb_lower);
    assert!(probe.cb_lower >= (n as f64).sqrt() - 1.0 - 1e-6);
    assert!((probe.column_norm - 2.0).abs() < 1e-10);
    assert!((probe.diagonal_norm - 1.0).abs() < 1e-10);
    assert_eq!(probe.bounded_upper, BOUNDED_UPPER);
    assert!(probe.bounded_lower > 0.0 && probe.bounded_lower <= 6.0 + 1e-6);
    assert!(probe.multiplicativity_residual <= 1e-9);
    assert!(probe.theta_hom_residual <= 1e-12);
    assert!((probe.multiplier_factorization - (2.0 * n as f64).sqrt()).abs() < 1e-8);
}

#[test]
fn theta_zero_is_homomorphism() {
    let mut r = rng(55);
    let a = linalg::random_vector(&mut r, 5);
    let b = linalg::random_vector(&mut r, 5);
    let ab: Vec<C64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
    assert!((theta0(&ab) - theta0(&a) * theta0(&b)).norm() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn profile_is_monotone(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let (s, u) = z2_symmetries(n, 5);
        let terms: Vec<(C64, &FreeOperator)> = u
            .iter()
            .map(|op| (linalg::gaussian(&mut r), op))
            .collect();
        let x = AmplifiedOperator::scalar_sum(&terms);
        let p = compression_profile(&s, &x, &[0, 1, 2, 3, 4], &opts()).unwrap();
        for w in p.windows(2) {
            prop_assert!(w[1].value >= w[0].value - 1e-12);
        }
        // certified: never above the triangle inequality
        let l1: f64 = terms.iter().map(|(z, _)| z.norm()).sum();
        prop_assert!(p[4].value <= l1 + 1e-9);
    }

    #[test]
    fn vacuum_freeness_random(seed in any::<u64>()) {
        let mut r = rng(seed);
        let factors = vec![FreeFactor::matrix_trace(2), FreeFactor::matrix_trace(2)];
        let s = FockSpace::build_with_cap(factors.clone(), 4, CAP).unwrap();
        let ops: Vec<FreeOperator> = (0..4)
            .map(|k| free_action(&s, k % 2, &factors[k % 2].random_centred(&mut r)).unwrap())
            .collect();
        let refs: Vec<&FreeOperator> = ops.iter().collect();
        prop_assert!(vacuum_state(&s, &refs).value.norm() <= 1e-10);
    }
}
