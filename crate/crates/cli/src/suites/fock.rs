use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use qglab::fock::khintchine::KHINTCHINE_CONSTANT;
use qglab::fock::noncb::BOUNDED_UPPER;
use qglab::fock::{
    build_noncb_rep, cb_vs_bounded_probe, compression_norm, compression_profile, free_action, khintchine_check,
    norm_equivalence, vacuum_state, AmplifiedOperator, FockSpace, FreeFactor, FreeOperator, KhintchineTerm,
    NormOptions,
};
use qglab::linalg::{self, C64, ONE};
use qglab::Result;

use super::{elapsed_ms, Collector};
use crate::config::SuiteConfig;
use crate::report::{digest, sub_seed, FockSummary, Record};

const KHINTCHINE: &str = "‖Σ aᵢ⊗xᵢ‖ ≤ 3 max(‖Σ aᵢ*aᵢ‖^{1/2}, ‖Σ aᵢaᵢ*‖^{1/2}, max‖aᵢ⊗xᵢ‖)";
const FREENESS: &str = "φ(x₁⋯xₙ) = 0 for centred alternating xᵢ";
const COLUMN: &str = "‖Σᵢ uᵢ⊗e_{i0}‖ = √N";
const NONCB: &str = "which is not completely bounded";
const NO_MULTIPLIER: &str = "does not induce a bounded left multiplier";

/// Largest M2 configuration in the grid.
pub const M2_MAX_COPIES: usize = 6;
pub const M2_MAX_LENGTH: usize = 4;

fn options(cfg: &SuiteConfig, label: &str) -> NormOptions {
    NormOptions {
        seed: sub_seed(cfg.seed, label),
        ..NormOptions::default()
    }
}

fn map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn symmetry() -> Result<qglab::linalg::CMat> {
    FreeFactor::z2().element(&[ONE, -ONE])
}

/// Khintchine grid, column norm, monotonicity and freeness on `copies`
/// free factors with words of length at most `length`.
pub(crate) fn khintchine_suite(cfg: &SuiteConfig, out: &mut Collector) -> Result<()> {
    let n = cfg.copies;
    let len = cfg.length;
    let tag = format!("N{n}_L{len}");
    let dg = digest(&[
        "khintchine",
        &cfg.seed.to_string(),
        &n.to_string(),
        &len.to_string(),
        &cfg.trials.to_string(),
    ]);
    let start = Instant::now();
    let z2 = FreeFactor::z2();
    let space = FockSpace::copies(&z2, n, len, cfg.dim_cap)?;
    let u = symmetry()?;
    let ops: Vec<FreeOperator> = (0..n).map(|i| free_action(&space, i, &u)).collect::<Result<_>>()?;
    let mut summary = FockSummary {
        name: format!("khintchine/{tag}"),
        config: map(json!({
            "copies": n,
            "length": len,
            "dim_cap": cfg.dim_cap,
            "fock_dim": space.dim(),
            "domain_len": len - 1,
            "seed": cfg.seed,
            "m2_copies": n.min(M2_MAX_COPIES),
            "m2_length": len.min(M2_MAX_LENGTH),
        })),
        certified_lower: Map::new(),
        analytic_bounds: Map::new(),
        ratios: Map::new(),
        runtime_ms: 0.0,
    };

    let scalar: Vec<KhintchineTerm> = (0..n)
        .map(|i| KhintchineTerm {
            a: linalg::identity(1),
            factor: i,
            x: u.clone(),
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(cfg.seed, "khintchine/coefficients"));
    let matrix: Vec<KhintchineTerm> = (0..n)
        .map(|i| KhintchineTerm {
            a: linalg::random_matrix(&mut rng, 2, 2),
            factor: i,
            x: u.clone(),
        })
        .collect();
    for (kind, terms) in [("scalar", &scalar), ("matrix", &matrix)] {
        let name = format!("khintchine/z2/{tag}/{kind}");
        let opts = options(cfg, &name);
        let mut got = None;
        out.group(&name, KHINTCHINE, &dg, || {
            let rep = khintchine_check(&space, terms, &opts)?;
            let limit = KHINTCHINE_CONSTANT * rep.rhs_max + 1e-8;
            let rec = Record::at_most(name.clone(), KHINTCHINE, &dg, rep.lhs_cert, limit);
            got = Some(rep);
            Ok(vec![rec])
        })?;
        if let Some(rep) = got {
            summary.certified_lower.insert(format!("z2_{kind}"), json!(rep.lhs_cert));
            summary.analytic_bounds.insert(format!("z2_{kind}_rhs_max"), json!(rep.rhs_max));
            summary.ratios.insert(format!("z2_{kind}"), json!(rep.ratio));
        }
    }
    summary.analytic_bounds.insert("khintchine_constant".into(), json!(KHINTCHINE_CONSTANT));

    let m2_n = n.min(M2_MAX_COPIES);
    let m2_len = len.min(M2_MAX_LENGTH);
    let m2 = FreeFactor::matrix_trace(2);
    let m2_space = FockSpace::copies(&m2, m2_n, m2_len, cfg.dim_cap)?;
    let name = format!("khintchine/m2/N{m2_n}_L{m2_len}/matrix");
    let opts = options(cfg, &name);
    let mut m2_rep = None;
    out.group(&name, KHINTCHINE, &dg, || {
        let terms: Vec<KhintchineTerm> = (0..m2_n)
            .map(|i| KhintchineTerm {
                a: linalg::random_matrix(&mut rng, 2, 2),
                factor: i,
                x: m2.random_centred(&mut rng),
            })
            .collect();
        let rep = khintchine_check(&m2_space, &terms, &opts)?;
        let limit = KHINTCHINE_CONSTANT * rep.rhs_max + 1e-8;
        let rec = Record::at_most(name.clone(), KHINTCHINE, &dg, rep.lhs_cert, limit);
        m2_rep = Some(rep);
        Ok(vec![rec])
    })?;
    if let Some(rep) = m2_rep {
        summary.certified_lower.insert("m2_matrix".into(), json!(rep.lhs_cert));
        summary.analytic_bounds.insert("m2_matrix_rhs_max".into(), json!(rep.rhs_max));
        summary.ratios.insert("m2_matrix".into(), json!(rep.ratio));
    }

    let name = format!("khintchine/m2/N{m2_n}_L{m2_len}/freeness");
    out.group(&name, FREENESS, &dg, || {
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.trials.min(20) {
            // alternating factor indices, one word per trial
            let mut word: Vec<usize> = Vec::with_capacity(m2_len);
            for _ in 0..m2_len {
                let mut i = rand::Rng::random_range(&mut rng, 0..m2_n);
                if m2_n > 1 {
                    while word.last() == Some(&i) {
                        i = rand::Rng::random_range(&mut rng, 0..m2_n);
                    }
                } else if !word.is_empty() {
                    break;
                }
                word.push(i);
            }
            let ops: Vec<FreeOperator> = word
                .iter()
                .map(|&i| free_action(&m2_space, i, &m2.random_centred(&mut rng)))
                .collect::<Result<_>>()?;
            let refs: Vec<&FreeOperator> = ops.iter().collect();
            let v = vacuum_state(&m2_space, &refs);
            worst = worst.max(if v.exact { v.value.norm() } else { f64::INFINITY });
        }
        Ok(vec![Record::at_most(name.clone(), FREENESS, &dg, worst, cfg.tol.freeness)])
    })?;

    let name = format!("khintchine/z2/{tag}/column");
    let opts = options(cfg, &name);
    let mut column = None;
    out.group(&name, COLUMN, &dg, || {
        let rep = build_noncb_rep(n, len, cfg.dim_cap)?;
        let e = compression_norm(&rep.space, &rep.column_part(), len - 1, &opts)?;
        column = Some(e.value);
        Ok(vec![Record::at_most(
            name.clone(),
            COLUMN,
            &dg,
            (e.value - (n as f64).sqrt()).abs(),
            cfg.tol.column,
        )])
    })?;
    if let Some(c) = column {
        summary.certified_lower.insert("column".into(), json!(c));
        summary.analytic_bounds.insert("column".into(), json!((n as f64).sqrt()));
    }

    let name = format!("khintchine/z2/{tag}/monotone");
    let opts = options(cfg, &name);
    let mut profile = Vec::new();
    out.group(&name, "compression norms increase with the word length", &dg, || {
        let terms: Vec<(C64, &FreeOperator)> = ops.iter().map(|op| (ONE, op)).collect();
        let x = AmplifiedOperator::scalar_sum(&terms);
        let lens: Vec<usize> = (0..len).collect();
        let est = compression_profile(&space, &x, &lens, &opts)?;
        profile = est.iter().map(|e| e.value).collect();
        let drop = profile.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
        Ok(vec![Record::at_most(
            name.clone(),
            "compression norms increase with the word length",
            &dg,
            drop,
            1e-12,
        )])
    })?;
    if let Some(last) = profile.last() {
        summary.certified_lower.insert("symmetry_sum".into(), json!(last));
        summary.certified_lower.insert("symmetry_sum_profile".into(), json!(profile));
        summary
            .analytic_bounds
            .insert("symmetry_sum".into(), json!(2.0 * ((n as f64) - 1.0).max(0.0).sqrt()));
    }

    let name = format!("khintchine/z2/{tag}/norm_equivalence");
    let opts = options(cfg, &name);
    let mut eq = None;
    out.group(&name, "‖x‖ ≤ 3 max(C₁, C₂) ‖xΩ‖", &dg, || {
        let rep = norm_equivalence(&space, &[u.clone()], cfg.trials, sub_seed(cfg.seed, &name), &opts)?;
        let recs = vec![
            Record::at_most(name.clone(), "‖x‖ ≤ 3 max(C₁, C₂) ‖xΩ‖", &dg, rep.max_ratio, rep.bound + 1e-8),
            Record::at_least(format!("{name}_lower"), "‖xΩ‖ ≤ ‖x‖", &dg, rep.min_ratio, 1.0 - 1e-10),
        ];
        eq = Some(rep);
        Ok(recs)
    })?;
    if let Some(rep) = eq {
        summary.ratios.insert("norm_equivalence_max".into(), json!(rep.max_ratio));
        summary.ratios.insert("norm_equivalence_min".into(), json!(rep.min_ratio));
        summary.analytic_bounds.insert("norm_equivalence".into(), json!(rep.bound));
    }
    summary.runtime_ms = elapsed_ms(start);
    out.fock.push(summary);
    Ok(())
}

/// Certified lower bounds for `||pi||_cb` against the constant bound on `||pi||`.
pub(crate) fn noncb_suite(cfg: &SuiteConfig, out: &mut Collector) -> Result<()> {
    let n = cfg.copies;
    let len = cfg.length;
    let tag = format!("N{n}_L{len}");
    let dg = digest(&["noncb", &cfg.seed.to_string(), &n.to_string(), &len.to_string()]);
    let start = Instant::now();
    let rep = build_noncb_rep(n, len, cfg.dim_cap)?;
    let name = format!("noncb/{tag}");
    let opts = options(cfg, &name);
    let floor = (n as f64).sqrt() - 1.0;
    let mut probe = None;
    out.group(&format!("{name}/error"), NONCB, &dg, || {
        let p = cb_vs_bounded_probe(&rep, 4, sub_seed(cfg.seed, &name), &opts)?;
        let s = cfg.tol.search;
        let recs = vec![
            Record::at_least(format!("{name}/cb_lower"), NONCB, &dg, p.cb_lower, floor - s),
            Record::at_least(format!("{name}/cb_floor"), NONCB, &dg, p.cb_floor, floor - s),
            Record::at_most(format!("{name}/bounded_lower"), NONCB, &dg, p.bounded_lower, BOUNDED_UPPER + s),
            Record::at_most(
                format!("{name}/multiplicativity"),
                "π(ω₁ω₂) = π(ω₁)π(ω₂)",
                &dg,
                p.multiplicativity_residual,
                cfg.tol.corep,
            ),
            Record::at_most(format!("{name}/theta_hom"), "θ₀ is a *-homomorphism", &dg, p.theta_hom_residual, 1e-10),
            Record::at_least(
                format!("{name}/multiplier_factorization"),
                NO_MULTIPLIER,
                &dg,
                p.multiplier_factorization,
                (2.0 * n as f64).sqrt() - s,
            ),
        ];
        probe = Some(p);
        Ok(recs)
    })?;
    let mut summary = FockSummary {
        name,
        config: map(json!({
            "copies": n,
            "length": len,
            "dim_cap": cfg.dim_cap,
            "fock_dim": rep.space.dim(),
            "domain_len": len - 1,
            "seed": cfg.seed,
        })),
        certified_lower: Map::new(),
        analytic_bounds: map(json!({
            "cb_floor": floor,
            "cb_exact": ((n + 1) as f64).sqrt(),
            "bounded_upper": BOUNDED_UPPER,
        })),
        ratios: Map::new(),
        runtime_ms: 0.0,
    };
    if let Some(p) = probe {
        summary.certified_lower = map(json!({
            "cb_lower": p.cb_lower,
            "cb_floor": p.cb_floor,
            "column": p.column_norm,
            "diagonal": p.diagonal_norm,
            "bounded_lower": p.bounded_lower,
        }));
        summary.ratios = map(json!({
            "cb_lower_over_bounded_upper": p.cb_lower / BOUNDED_UPPER,
            "multiplier_factorization": p.multiplier_factorization,
            "multiplier_row": p.multiplier_row,
            "multiplier_column": p.multiplier_column,
        }));
    }
    summary.runtime_ms = elapsed_ms(start);
    out.fock.push(summary);
    Ok(())
}
