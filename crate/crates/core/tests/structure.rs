mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use qglab::linalg::{self, C64, ONE, ZERO};
use qglab::{json, AlgebraElement, FiniteQuantumGroup, GroupTable, QgError};

fn s3_table() -> GroupTable {
    GroupTable::s3()
}

#[test]
fn every_builtin_validates() {
    for g in all_builtins() {
        let rep = g.validate(1e-10);
        assert!(rep.passed, "{}: {:?}", g.name(), rep.failures());
        assert!(rep.max_violation() <= 1e-10);
    }
}

#[test]
fn z2_function_algebra_matches_definition() {
    let g = builtin("c_z2");
    let e = 0;
    // delta_e (x) delta_e + delta_g (x) delta_g and the mixed terms
    let want = |i: usize, j: usize, k: usize| {
        let hit = if i == e { j == k } else { j != k };
        if hit {
            ONE
        } else {
            ZERO
        }
    };
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                assert_eq!(g.coproduct_coeff(i, j, k), want(i, j, k));
            }
        }
    }
    assert_eq!(g.haar(), &[c(0.5), c(0.5)]);
    assert_eq!(g.antipode_matrix(), &linalg::identity(2));
}

#[test]
fn non_invariant_haar_fails_only_invariance() {
    let g = FiniteQuantumGroup::builtin("c_z2").unwrap();
    let bad = g.with_haar(vec![ONE, ZERO]).unwrap();
    let rep = bad.validate(1e-10);
    assert!(!rep.passed);
    assert!(!rep.check("haar_invariant").unwrap().passed);
    assert!(rep.check("mult_associative").unwrap().passed);
}

#[test]
fn structural_mismatch_is_not_an_axiom_failure() {
    let g = FiniteQuantumGroup::builtin("c_z2").unwrap();
    let mut data = g.data().clone();
    data.haar.push(ZERO);
    assert!(matches!(
        FiniteQuantumGroup::new(data),
        Err(QgError::Structural(_))
    ));
}

#[test]
fn z2_character_arithmetic() {
    let g = builtin("c_z2");
    let de = AlgebraElement::basis(&g, 0).unwrap();
    let dg = AlgebraElement::basis(&g, 1).unwrap();
    assert!(de.multiply(&dg).unwrap().coeff_norm() < 1e-15);
    let u = de.sub(&dg).unwrap();
    let uu = u.multiply(&u).unwrap();
    assert!(linalg::diff_norm(uu.coeffs(), g.unit()) < 1e-15);
    assert!(u.apply_haar().norm() < 1e-15);
    assert!((u.operator_norm().unwrap() - 1.0).abs() < 1e-12);
    assert!((AlgebraElement::unit(&g).operator_norm().unwrap() - 1.0).abs() < 1e-12);
    // sup of |values| of delta_e + 2 delta_g
    let x = de.add(&dg.scale(c(2.0))).unwrap();
    assert!((x.operator_norm().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn function_algebra_coproduct_is_group_law() {
    let t = s3_table();
    let g = FiniteQuantumGroup::from_function_algebra(&t);
    let n = t.order();
    for a in 0..n {
        for b in 0..n {
            for k in 0..n {
                let want = if t.mul(a, b) == k { ONE } else { ZERO };
                assert_eq!(g.coproduct_coeff(k, a, b), want);
            }
            let want = if a == b { ONE } else { ZERO };
            assert_eq!(g.mult_coeff(a, a, b), want);
        }
    }
    assert!(g.is_commutative(1e-12));
    assert!(!g.is_cocommutative(1e-12));
}

#[test]
fn group_algebra_is_group_law() {
    let t = s3_table();
    let g = FiniteQuantumGroup::from_group_algebra(&t);
    let n = t.order();
    for a in 0..n {
        for b in 0..n {
            for k in 0..n {
                let want = if t.mul(a, b) == k { ONE } else { ZERO };
                assert_eq!(g.mult_coeff(a, b, k), want);
                let grouplike = if a == k && b == k { ONE } else { ZERO };
                assert_eq!(g.coproduct_coeff(k, a, b), grouplike);
            }
        }
        let inv = g.adjoint(&g.basis_vector(a));
        assert!(linalg::diff_norm(&inv, &g.basis_vector(t.inv(a))) < 1e-15);
        let h = if a == t.identity() { ONE } else { ZERO };
        assert_eq!(g.haar()[a], h);
    }
    assert!(!g.is_commutative(1e-12));
    assert!(g.is_cocommutative(1e-12));
}

#[test]
fn group_algebra_left_action_is_regular_representation() {
    let g = builtin("cg_z2");
    let gns = g.gns().unwrap();
    assert_eq!(gns.gns_dim, 2);
    let l = gns.left_action(&g.basis_vector(1));
    // orthonormal basis Lambda(lambda_e), Lambda(lambda_g) up to phases
    let sv = linalg::singular_values(&l);
    assert!(sv.iter().all(|s| (s - 1.0).abs() < 1e-12));
    assert!((l.trace()).norm() < 1e-12);
    assert!(((&l * &l) - linalg::identity(2)).norm() < 1e-12);
}

#[test]
fn function_algebra_left_action_is_diagonal() {
    let g = builtin("c_z2");
    let gns = g.gns().unwrap();
    for i in 0..2 {
        let l = gns.left_action(&g.basis_vector(i));
        assert!(l[(0, 1)].norm() < 1e-14 && l[(1, 0)].norm() < 1e-14);
    }
}

#[test]
fn invalid_group_table_rejected() {
    let labels = vec!["a".to_string(), "b".to_string()];
    let err = GroupTable::new("bad", labels, vec![vec![0, 0], vec![1, 1]]);
    assert!(matches!(err, Err(QgError::InvalidGroupTable(_))));
}

#[test]
fn kac_paljutkin_hand_checks() {
    let g = builtin("kac_paljutkin");
    assert_eq!(g.dim(), 8);
    assert!(!g.is_commutative(1e-10));
    assert!(!g.is_cocommutative(1e-10));
    // traciality straight from the stored tensors
    let n = g.dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut ij = ZERO;
            let mut ji = ZERO;
            for k in 0..n {
                ij += g.mult_coeff(i, j, k) * g.haar()[k];
                ji += g.mult_coeff(j, i, k) * g.haar()[k];
            }
            worst = worst.max((ij - ji).norm());
        }
    }
    assert!(worst < 1e-12);
    let gns = g.gns().unwrap();
    let mut r = rng(8);
    for _ in 0..5 {
        let v = linalg::to_cvec(&linalg::random_vector(&mut r, n));
        assert!((gns.apply_j(&gns.apply_j(&v)) - &v).norm() < 1e-10 * v.norm());
    }
    let mut sizes = g.blocks().unwrap().sizes();
    sizes.sort();
    assert_eq!(sizes, vec![1, 1, 1, 1, 2]);
}

#[test]
fn block_sizes() {
    let mut s = builtin("cg_s3").blocks().unwrap().sizes();
    s.sort();
    assert_eq!(s, vec![1, 1, 2]);
    assert_eq!(builtin("c_z2").blocks().unwrap().sizes(), vec![1, 1]);
    for g in all_builtins() {
        let b = g.blocks().unwrap();
        let total: usize = b.sizes().iter().map(|s| s * s).sum();
        assert_eq!(total, g.dim());
        let fb = &b.forward * &b.backward;
        assert!((fb - linalg::identity(g.dim())).norm() < 1e-9);
    }
}

#[test]
fn json_roundtrip_is_bit_exact() {
    for g in all_builtins() {
        let s = json::to_string(&g);
        let back = json::from_str(&s).unwrap();
        assert_eq!(back.data(), g.data());
        assert_eq!(json::to_string(&back), s);
    }
}

#[test]
fn truncated_json_names_field() {
    let g = builtin("c_z2");
    let mut v = json::to_value(&g);
    v.as_object_mut().unwrap().remove("coproduct");
    match json::from_value(&v) {
        Err(QgError::Schema { field, .. }) => assert_eq!(field, "coproduct"),
        other => panic!("expected schema error, got {other:?}"),
    }
}

#[test]
fn nonfinite_json_rejected() {
    let g = builtin("c_z2");
    let s = json::to_string(&g).replacen("0.5", "1e400", 1);
    assert!(json::from_str(&s).is_err());
}

#[test]
fn owner_mismatch() {
    let a = builtin("c_z2");
    let b = builtin("c_z2");
    let x = AlgebraElement::unit(&a);
    let y = AlgebraElement::unit(&b);
    assert_eq!(x.multiply(&y).unwrap_err(), QgError::OwnerMismatch);
}

fn instance_names() -> impl Strategy<Value = &'static str> {
    proptest::sample::select(FiniteQuantumGroup::builtin_names().to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn operator_norm_is_c_star(name in instance_names(), seed in any::<u64>()) {
        let g = builtin(name);
        let mut r = rng(seed);
        let a = random_element(&g, &mut r);
        let b = random_element(&g, &mut r);
        let na = a.operator_norm().unwrap();
        let nb = b.operator_norm().unwrap();
        let ab = a.multiply(&b).unwrap().operator_norm().unwrap();
        prop_assert!(ab <= na * nb * (1.0 + 1e-8));
        prop_assert!((a.adjoint().operator_norm().unwrap() - na).abs() <= 1e-8 * na);
        let asa = a.adjoint().multiply(&a).unwrap().operator_norm().unwrap();
        prop_assert!((asa - na * na).abs() <= 1e-8 * na * na);
        let h = a.adjoint().multiply(&a).unwrap().apply_haar();
        prop_assert!(h.re >= 0.0 && h.im.abs() <= 1e-10 * h.re.max(1.0));
    }

    #[test]
    fn haar_is_tracial_and_invariant(name in instance_names(), seed in any::<u64>()) {
        let g = builtin(name);
        let mut r = rng(seed);
        let a = random_element(&g, &mut r);
        let b = random_element(&g, &mut r);
        let ab = a.multiply(&b).unwrap().apply_haar();
        let ba = b.multiply(&a).unwrap().apply_haar();
        prop_assert!((ab - ba).norm() <= 1e-10 * (1.0 + ab.norm()));
        let d = a.apply_coproduct();
        let h = a.apply_haar();
        let want: Vec<C64> = g.unit().iter().map(|u| u * h).collect();
        let right = g.slice_right(&d, g.haar());
        let left = g.slice_left(&d, g.haar());
        prop_assert!(linalg::diff_norm(&right, &want) <= 1e-10 * (1.0 + a.coeff_norm()));
        prop_assert!(linalg::diff_norm(&left, &want) <= 1e-10 * (1.0 + a.coeff_norm()));
    }

    #[test]
    fn antipode_is_involutive(name in instance_names(), seed in any::<u64>()) {
        let g = builtin(name);
        let a = random_element(&g, &mut rng(seed));
        let back = a.apply_antipode().apply_antipode();
        prop_assert!(linalg::diff_norm(back.coeffs(), a.coeffs()) <= 1e-12 * (1.0 + a.coeff_norm()));
    }

    #[test]
    fn blocks_are_multiplicative(name in instance_names(), seed in any::<u64>()) {
        let g = builtin(name);
        let blocks = g.blocks().unwrap();
        let mut r = rng(seed);
        let a = random_element(&g, &mut r);
        let b = random_element(&g, &mut r);
        let ab = blocks.to_blocks(a.multiply(&b).unwrap().coeffs());
        let fa = blocks.to_blocks(a.coeffs());
        let fb = blocks.to_blocks(b.coeffs());
        let fs = blocks.to_blocks(a.adjoint().coeffs());
        for k in 0..ab.len() {
            prop_assert!((&ab[k] - &fa[k] * &fb[k]).norm() <= 1e-8 * (1.0 + ab[k].norm()));
            prop_assert!((&fs[k] - fa[k].adjoint()).norm() <= 1e-8 * (1.0 + fa[k].norm()));
        }
        let back = blocks.from_blocks(&fa);
        prop_assert!(linalg::diff_norm(&back, a.coeffs()) <= 1e-9 * (1.0 + a.coeff_norm()));
    }

    #[test]
    fn gns_is_faithful_star_representation(name in instance_names(), seed in any::<u64>()) {
        let g = builtin(name);
        let gns = g.gns().unwrap();
        let mut r = rng(seed);
        let a = random_element(&g, &mut r);
        let b = random_element(&g, &mut r);
        let la = gns.left_action(a.coeffs());
        // (Lambda(x) | Lambda(y)) = h(y^* x)
        let inner = gns.lambda(b.coeffs()).dotc(&gns.lambda(a.coeffs()));
        let h = b.adjoint().multiply(&a).unwrap().apply_haar();
        prop_assert!((inner - h).norm() <= 1e-10 * (1.0 + h.norm()));
        let ls = gns.left_action(a.adjoint().coeffs());
        prop_assert!((ls - la.adjoint()).norm() <= 1e-10 * (1.0 + la.norm()));
        // J lambda(x) J is right multiplication by x^*
        let v = gns.lambda(b.coeffs());
        let jlj = gns.apply_j(&(&la * gns.apply_j(&v)));
        let right = gns.right_action(a.adjoint().coeffs()) * &v;
        prop_assert!((jlj - right).norm() <= 1e-9 * (1.0 + la.norm() * v.norm()));
    }
}

#[test]
fn builtins_share_no_owner() {
    let a = builtin("c_z2");
    let b = builtin("c_z2");
    assert!(!Arc::ptr_eq(&a, &b));
    assert_eq!(*a, *b);
}
