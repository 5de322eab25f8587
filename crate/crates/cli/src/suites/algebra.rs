use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qglab::corep::{random_invertible_corep, random_invertible_corep_parts, random_unitary_element, Variant};
use qglab::duality::{biduality, pairing_identity_residual, MultiplicativeUnitary};
use qglab::linalg::{self, CMat, C64};
use qglab::multiplier::{multiplier_from_coefficient, multiplier_in_basis};
use qglab::{AlgebraElement, Corepresentation, Functional, Qg, Result};

use super::Collector;
use crate::config::{Instance, SuiteConfig};
use crate::report::{digest, sub_seed, Record};

fn rng_for(cfg: &SuiteConfig, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(sub_seed(cfg.seed, label))
}

fn unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    linalg::random_unit_vector(rng, n)
}

fn functional(g: &Qg, rng: &mut ChaCha8Rng) -> Result<Functional> {
    Functional::new(g, unit_vector(rng, g.dim()))
}

fn element(g: &Qg, rng: &mut ChaCha8Rng) -> Result<AlgebraElement> {
    AlgebraElement::new(g, unit_vector(rng, g.dim()))
}

fn axiom_anchor(name: &str) -> &'static str {
    match name {
        "mult_associative" => "A is an associative algebra",
        "unit_two_sided" => "A is a unital algebra",
        "counit_multiplicative" => "the counit is a *-character",
        "coassociative" => "(Δ⊗ι)Δ = (ι⊗Δ)Δ",
        "counit_law" => "(ε⊗ι)Δ = ι = (ι⊗ε)Δ",
        "coproduct_unital_homomorphism" => "Δ: M → M⊗M is a unital normal *-homomorphism",
        "coproduct_star_preserving" => "Δ: M → M⊗M is a unital normal *-homomorphism",
        "antipode_law" => "m(S⊗ι)Δ = ε(·)1 = m(ι⊗S)Δ",
        "star_involutive" => "A is a *-algebra",
        "star_antimultiplicative" => "A is a *-algebra",
        "antipode_star_compatible" => "S(S(x)*)* = x",
        "kac_antipode_involutive" => "S² = ι",
        "haar_normalized" => "h is a state",
        "haar_antipode_invariant" => "h∘S = h",
        "haar_tracial" => "h(xy) = h(yx)",
        "haar_faithful_positive" => "h is faithful",
        "haar_invariant" => "(ι⊗h)Δ(x) = h(x)1 = (h⊗ι)Δ(x)",
        _ => "finite quantum group axioms",
    }
}

pub(super) fn validate(cfg: &SuiteConfig, inst: &Instance, out: &mut Collector) -> Result<()> {
    let l = &inst.label;
    let dg = digest(&[&inst.json, "validate", &cfg.tol.axioms.to_string()]);
    out.group(&format!("validate/{l}/error"), "finite quantum group axioms", &dg, || {
        let rep = inst.group.validate(cfg.tol.axioms);
        Ok(rep
            .checks
            .iter()
            .map(|c| {
                Record::at_most(
                    format!("validate/{l}/{}", c.name),
                    axiom_anchor(&c.name),
                    &dg,
                    c.violation,
                    cfg.tol.axioms,
                )
            })
            .collect())
    })
}

const PENTAGON: &str = "W₁₂W₁₃W₂₃ = W₂₃W₁₂";
const COPRODUCT_W: &str = "Δ(x) = W*(1⊗x)W";
const LAMBDA: &str = "the left regular representation λ becomes a *-homomorphism";
const BIDUALITY: &str = "the dual of Ĝ is G";
const PAIRING: &str = "Λ(λ̂(ω̂)) = Λ̂(λ((xω₁)ω₂))";

pub(super) fn duality(cfg: &SuiteConfig, inst: &Instance, out: &mut Collector) -> Result<()> {
    let l = &inst.label;
    let g = &inst.group;
    let t = &cfg.tol;
    let dg = digest(&[&inst.json, "duality", &cfg.seed.to_string(), &cfg.trials.to_string()]);
    out.group(&format!("duality/{l}/multiplicative_unitary"), PENTAGON, &dg, || {
        let w = MultiplicativeUnitary::build(g)?;
        Ok(vec![
            Record::at_most(format!("duality/{l}/w_unitary"), "W is unitary", &dg, w.unitarity_residual(), t.pentagon),
            Record::at_most(format!("duality/{l}/pentagon"), PENTAGON, &dg, w.pentagon_residual(), t.pentagon),
            Record::at_most(
                format!("duality/{l}/coproduct_via_w"),
                COPRODUCT_W,
                &dg,
                w.coproduct_residual(g)?,
                t.coproduct_w,
            ),
        ])
    })?;
    out.group(&format!("duality/{l}/lambda"), LAMBDA, &dg, || {
        let dual = g.dual()?;
        let mut rng = rng_for(cfg, &format!("duality/{l}/lambda"));
        let (mut sharp, mut hom, mut contraction): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for _ in 0..cfg.trials {
            let a = functional(g, &mut rng)?;
            let b = functional(g, &mut rng)?;
            let la = dual.lambda(a.coeffs());
            let lb = dual.lambda(b.coeffs());
            sharp = sharp.max(linalg::op_norm(&(dual.lambda(a.sharp().coeffs()) - la.adjoint())));
            hom = hom.max(linalg::op_norm(&(dual.lambda(a.convolve(&b)?.coeffs()) - &la * &lb)));
            contraction = contraction.max(linalg::op_norm(&la) / a.norm_l1()? - 1.0);
        }
        Ok(vec![
            Record::at_most(format!("duality/{l}/lambda_sharp"), "λ(ω♯) = λ(ω)*", &dg, sharp, t.lambda),
            Record::at_most(format!("duality/{l}/lambda_multiplicative"), LAMBDA, &dg, hom, t.pentagon),
            Record::at_most(
                format!("duality/{l}/lambda_contractive"),
                "‖λ(ω)‖ ≤ ‖ω‖",
                &dg,
                contraction,
                t.pentagon,
            ),
        ])
    })?;
    out.group(&format!("duality/{l}/dual"), BIDUALITY, &dg, || {
        let dual = g.dual()?;
        let rep = dual.dual.validate(t.pentagon);
        let bi = biduality(g)?;
        Ok(vec![
            Record::at_most(
                format!("duality/{l}/dual_axioms"),
                "the dual is again a finite quantum group",
                &dg,
                rep.max_violation(),
                t.pentagon,
            ),
            Record::at_most(format!("duality/{l}/biduality"), BIDUALITY, &dg, bi.violation, t.biduality)
                .with_note(bi.map),
        ])
    })?;
    out.group(&format!("duality/{l}/pairing"), PAIRING, &dg, || {
        let mut rng = rng_for(cfg, &format!("duality/{l}/pairing"));
        let mut worst: f64 = 0.0;
        for _ in 0..2 * cfg.trials {
            let x = element(g, &mut rng)?;
            let w1 = functional(g, &mut rng)?;
            let w2 = functional(g, &mut rng)?;
            worst = worst.max(pairing_identity_residual(&x, &w1, &w2)?);
        }
        Ok(vec![Record::at_most(format!("duality/{l}/pairing"), PAIRING, &dg, worst, t.pairing)])
    })
}

/// `max ||pi(a b) - pi(a) pi(b)||` over pairs of point functionals.
fn basis_multiplicativity(v: &Corepresentation) -> Result<f64> {
    let g = v.owner();
    let points: Vec<Functional> = (0..g.dim()).map(|i| Functional::point(g, i)).collect::<Result<_>>()?;
    let pis: Vec<CMat> = points.iter().map(|p| v.pi(p)).collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    for (a, pa) in points.iter().zip(&pis) {
        for (b, pb) in points.iter().zip(&pis) {
            let lhs = v.pi(&a.convolve(b)?)?;
            worst = worst.max(linalg::op_norm(&(lhs - pa * pb)));
        }
    }
    Ok(worst)
}

/// `||Delta(T_{alpha,beta}) - sum_k T_{f_k,beta} (x) T_{alpha,f_k}||`.
fn coefficient_coproduct_residual(v: &Corepresentation, alpha: &[C64], beta: &[C64]) -> Result<f64> {
    let n = v.owner().dim();
    let d = v.dim();
    let lhs = v.coefficient(alpha, beta)?.apply_coproduct();
    let mut rhs = vec![linalg::ZERO; n * n];
    for k in 0..d {
        let mut f = vec![linalg::ZERO; d];
        f[k] = linalg::ONE;
        let left = v.coefficient(&f, beta)?;
        let right = v.coefficient(alpha, &f)?;
        for (j, a) in left.coeffs().iter().enumerate() {
            for (m, b) in right.coeffs().iter().enumerate() {
                rhs[j * n + m] += a * b;
            }
        }
    }
    Ok(linalg::diff_norm(&lhs, &rhs))
}

const DICHOTOMY: &str = "π is a homomorphism if and only if (Δ⊗ι)V_π = V_{π,13}V_{π,23}";
const GENERATORS: &str = "V_π* = V_{π̃}";
const ANTIPODE_COEFF: &str = "S(T^{π*}_{α,β})* = T^π_{β,α}";
const INVERSE: &str = "(S⊗ι)(V_π) = V_π⁻¹";
const ANTI_HOM: &str = "Then π̌ is a completely bounded anti-homomorphism";
const ISOMETRY: &str = "Then U is unitary";
const ESSENTIAL: &str = "V_{π̌}V_π = V_πV_{π̌} is a (not necessarily orthogonal) projection";

pub(super) fn corep(cfg: &SuiteConfig, inst: &Instance, out: &mut Collector) -> Result<()> {
    let l = &inst.label;
    let g = &inst.group;
    let t = &cfg.tol;
    let dg = digest(&[&inst.json, "corep", &cfg.seed.to_string(), &cfg.trials.to_string()]);
    out.group(&format!("corep/{l}/dichotomy"), DICHOTOMY, &dg, || {
        let mut rng = rng_for(cfg, &format!("corep/{l}/random_tensors"));
        let (mut passing, mut identity): (f64, f64) = (0.0, 0.0);
        let mut detected = f64::INFINITY;
        let mut misclassified = 0usize;
        for trial in 0..cfg.trials {
            let d = 1 + trial % 3;
            let v = random_invertible_corep(g, d, sub_seed(cfg.seed, &format!("corep/{l}/{trial}")))?;
            let check = v.is_corep(t.corep);
            misclassified += !check.is_corep as usize;
            identity = identity.max(check.corep_violation);
            passing = passing.max(basis_multiplicativity(&v)?);
            let entries = (0..d * d).map(|_| unit_vector(&mut rng, g.dim())).collect();
            let w = Corepresentation::new(g, d, entries)?;
            misclassified += w.is_corep(t.corep).is_corep as usize;
            detected = detected.min(basis_multiplicativity(&w)?);
        }
        Ok(vec![
            Record::at_most(format!("corep/{l}/corep_identity"), DICHOTOMY, &dg, identity, t.corep),
            Record::at_most(format!("corep/{l}/multiplicativity"), DICHOTOMY, &dg, passing, t.corep),
            Record::at_least(format!("corep/{l}/non_corep_detected"), DICHOTOMY, &dg, detected, 1e-6),
            Record::at_most(format!("corep/{l}/misclassified"), DICHOTOMY, &dg, misclassified as f64, 0.0),
        ])
    })?;
    out.group(&format!("corep/{l}/identities"), GENERATORS, &dg, || {
        let mut rng = rng_for(cfg, &format!("corep/{l}/identities"));
        let (mut generators, mut antipode, mut coproduct, mut inverse, mut anti_corep, mut anti_hom, mut bounded) =
            (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, f64::NEG_INFINITY);
        for trial in 0..cfg.trials {
            let d = 1 + trial % 3;
            let seed = sub_seed(cfg.seed, &format!("corep/{l}/{trial}"));
            let v = random_invertible_corep(g, d, seed)?;
            let tilde = v.generator(Variant::Tilde);
            let star = v.generator(Variant::Star);
            let check = v.generator(Variant::Check);
            generators = generators.max(tilde.distance(&v.adjoint())?);
            generators = generators.max(star.distance(&check.adjoint())?);
            let w1 = functional(g, &mut rng)?;
            let w2 = functional(g, &mut rng)?;
            for (variant, gen) in [(Variant::Tilde, &tilde), (Variant::Star, &star), (Variant::Check, &check)] {
                let direct = v.pi_variant(variant, &w1)?;
                generators = generators.max(linalg::op_norm(&(direct - gen.pi(&w1)?)));
            }
            let alpha = unit_vector(&mut rng, d);
            let beta = unit_vector(&mut rng, d);
            antipode = antipode.max(v.antipode_coeff_check(&alpha, &beta)?);
            coproduct = coproduct.max(coefficient_coproduct_residual(&v, &alpha, &beta)?);
            let inv = v.inverse_corep()?;
            inverse = inverse.max(inv.inverse_residual).max(inv.matrix_inverse_residual);
            anti_corep = anti_corep.max(inv.anti_violation);
            let lhs = v.pi_check(&w1.convolve(&w2)?)?;
            let rhs = v.pi_check(&w2)? * v.pi_check(&w1)?;
            anti_hom = anti_hom.max(linalg::op_norm(&(lhs - rhs)));
            if trial % 5 == 0 {
                let lower = v.bounded_norm_lower(2, seed)?;
                bounded = bounded.max(lower - v.cb_norm()?);
            }
        }
        Ok(vec![
            Record::at_most(format!("corep/{l}/generator_identities"), GENERATORS, &dg, generators, 1e-10),
            Record::at_most(format!("corep/{l}/antipode_coefficient"), ANTIPODE_COEFF, &dg, antipode, t.coefficient),
            Record::at_most(
                format!("corep/{l}/coefficient_coproduct"),
                "Δ(T^π_{α,β}) = Σᵢ T^π_{fᵢ,β}⊗T^π_{α,fᵢ}",
                &dg,
                coproduct,
                t.coefficient,
            ),
            Record::at_most(format!("corep/{l}/inverse"), INVERSE, &dg, inverse, t.inverse),
            Record::at_most(format!("corep/{l}/inverse_anti_corep"), "V_π⁻¹ = V_{π̌}", &dg, anti_corep, t.inverse),
            Record::at_most(format!("corep/{l}/check_anti_multiplicative"), ANTI_HOM, &dg, anti_hom, t.inverse),
            Record::at_most(
                format!("corep/{l}/bounded_below_cb"),
                "‖π‖ ≤ ‖π‖_cb = ‖V_π‖",
                &dg,
                bounded,
                1e-8,
            ),
        ])
    })?;
    out.group(&format!("corep/{l}/isometry_unitary"), ISOMETRY, &dg, || {
        let mut rng = rng_for(cfg, &format!("corep/{l}/isometry"));
        let mut worst: f64 = 0.0;
        for trial in 0..cfg.trials.min(10) {
            let v = random_unitary_element(g, 1 + trial % 3, &mut rng)?;
            let (a, b) = v.unitarity_residuals()?;
            worst = worst.max(a).max(b);
        }
        Ok(vec![Record::at_most(format!("corep/{l}/isometry_unitary"), ISOMETRY, &dg, worst, 1e-10)])
    })?;
    out.group(&format!("corep/{l}/degenerate"), ESSENTIAL, &dg, || {
        let mut rng = rng_for(cfg, &format!("corep/{l}/degenerate"));
        let (mut dim_err, mut idem, mut absorb): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for trial in 0..cfg.trials.min(10) {
            let d0 = 1 + trial % 2;
            let v0 = random_invertible_corep(g, d0, sub_seed(cfg.seed, &format!("corep/{l}/degenerate/{trial}")))?;
            let v = v0.with_zero_block(1 + trial % 2);
            let e = v.essential_data()?;
            dim_err = dim_err.max((e.essential_dim as f64 - d0 as f64).abs());
            idem = idem
                .max(e.idempotent_residual)
                .max(e.commutation_residual)
                .max(e.q_idempotent_residual);
            absorb = absorb.max(e.absorption_residual);
            let w = functional(g, &mut rng)?;
            let pw = v.pi(&w)?;
            absorb = absorb.max(linalg::op_norm(&(&pw * &e.q - &pw)));
        }
        Ok(vec![
            Record::at_most(format!("corep/{l}/essential_dim"), "π(a)Q = π(a)", &dg, dim_err, 0.0),
            Record::at_most(format!("corep/{l}/essential_idempotent"), ESSENTIAL, &dg, idem, t.essential),
            Record::at_most(format!("corep/{l}/essential_absorption"), "π(a)Q = π(a)", &dg, absorb, 1e-10),
        ])
    })
}

const UNITARIZE: &str = "V = (1⊗T^{1/2}) V_π (1⊗T^{-1/2})";

pub(super) fn unitarize(cfg: &SuiteConfig, inst: &Instance, out: &mut Collector) -> Result<()> {
    let l = &inst.label;
    let g = &inst.group;
    let tol = cfg.tol.unitary;
    let dg = digest(&[&inst.json, "unitarize", &cfg.seed.to_string(), &cfg.trials.to_string()]);
    out.group(&format!("unitarize/{l}/error"), UNITARIZE, &dg, || {
        let mut rng = rng_for(cfg, &format!("unitarize/{l}"));
        let (mut unitary, mut corep, mut star, mut recovered) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        let mut floor = f64::INFINITY;
        for trial in 0..cfg.trials {
            let d = 2 + trial % 2;
            let (v, _, _) =
                random_invertible_corep_parts(g, d, sub_seed(cfg.seed, &format!("unitarize/{l}/{trial}")))?;
            let u = v.unitarize()?;
            let (a, b) = u.v.unitarity_residuals()?;
            unitary = unitary.max(a).max(b);
            corep = corep.max(u.v.is_corep(tol).corep_violation);
            let w = functional(g, &mut rng)?;
            star = star.max(linalg::op_norm(&(u.v.pi(&w.sharp())? - u.v.pi(&w)?.adjoint())));
            floor = floor.min(u.t_min_eigenvalue - u.epsilon);
            // a unitary input is left alone
            let again = u.v.unitarize()?;
            recovered = recovered.max(linalg::op_norm(&(again.t - linalg::identity(d))));
        }
        Ok(vec![
            Record::at_most(format!("unitarize/{l}/unitary"), UNITARIZE, &dg, unitary, tol),
            Record::at_most(format!("unitarize/{l}/corep"), UNITARIZE, &dg, corep, tol),
            Record::at_most(format!("unitarize/{l}/star_property"), LAMBDA, &dg, star, tol),
            Record::at_least(format!("unitarize/{l}/averaging_floor"), "V_π*V_π ≥ ε1", &dg, floor, -tol),
            Record::at_most(format!("unitarize/{l}/unitary_fixed"), "T = (m⊗ι)(V_π* V_π)", &dg, recovered, tol),
        ])
    })
}

const MULTIPLIER: &str = "‖L‖_cb ≤ ‖π‖_cb‖π*‖_cb‖α‖‖β‖";

pub(super) fn multiplier(cfg: &SuiteConfig, inst: &Instance, out: &mut Collector) -> Result<()> {
    let l = &inst.label;
    let g = &inst.group;
    let t = &cfg.tol;
    let dg = digest(&[&inst.json, "multiplier", &cfg.seed.to_string(), &cfg.trials.to_string()]);
    out.group(&format!("multiplier/{l}/error"), MULTIPLIER, &dg, || {
        let mut rng = rng_for(cfg, &format!("multiplier/{l}"));
        let (mut residual, mut w_hat, mut coproduct, mut basis) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        let mut slack = f64::NEG_INFINITY;
        for trial in 0..cfg.trials {
            let d = 1 + trial % 3;
            let v = random_invertible_corep(g, d, sub_seed(cfg.seed, &format!("multiplier/{l}/{trial}")))?;
            let alpha = unit_vector(&mut rng, d);
            let beta = unit_vector(&mut rng, d);
            let m = multiplier_from_coefficient(&v, &alpha, &beta)?;
            residual = residual.max(m.residual);
            w_hat = w_hat.max(m.w_hat_residual);
            coproduct = coproduct.max(m.coproduct_residual);
            slack = slack.max(m.norm_bound - m.cor_bound);
            if d > 1 {
                let rot = multiplier_in_basis(&v, &alpha, &beta, &linalg::random_unitary(&mut rng, d))?;
                basis = basis.max(linalg::op_norm(&(&m.lstar - &rot.lstar)));
            }
        }
        Ok(vec![
            Record::at_most(
                format!("multiplier/{l}/left_multiplier"),
                "λ̂(Lω̂) = T^{π̃}_{α,β}λ̂(ω̂)",
                &dg,
                residual,
                t.multiplier,
            ),
            Record::at_most(format!("multiplier/{l}/w_hat"), "(L*⊗ι)(Ŵ) = (1⊗x)Ŵ", &dg, w_hat, t.multiplier),
            Record::at_most(
                format!("multiplier/{l}/coproduct_factorization"),
                "Δ(T^π_{α,β}) = Σᵢ T^π_{fᵢ,β}⊗T^π_{α,fᵢ}",
                &dg,
                coproduct,
                t.multiplier,
            ),
            Record::at_most(format!("multiplier/{l}/norm_bound"), MULTIPLIER, &dg, slack, t.bound_slack),
            Record::at_most(format!("multiplier/{l}/basis_invariance"), MULTIPLIER, &dg, basis, t.multiplier),
        ])
    })
}
