use std::path::PathBuf;
use std::sync::Arc;

use qglab::fock::DEFAULT_DIM_CAP;
use qglab::{json, FiniteQuantumGroup, Qg, QgError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Validate,
    Duality,
    Corep,
    Unitarize,
    Multiplier,
    Khintchine,
    Noncb,
    All,
}

impl Suite {
    pub fn includes(self, other: Suite) -> bool {
        self == other || self == Suite::All
    }
}

/// Pinned tolerances. Every entry can be overridden by `key=value`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    pub axioms: f64,
    pub pentagon: f64,
    pub coproduct_w: f64,
    pub lambda: f64,
    pub biduality: f64,
    pub pairing: f64,
    pub corep: f64,
    pub coefficient: f64,
    pub inverse: f64,
    pub unitary: f64,
    pub essential: f64,
    pub multiplier: f64,
    pub bound_slack: f64,
    pub freeness: f64,
    pub column: f64,
    pub search: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            axioms: 1e-10,
            pentagon: 1e-9,
            coproduct_w: 1e-9,
            lambda: 1e-10,
            biduality: 1e-8,
            pairing: 1e-8,
            corep: 1e-9,
            coefficient: 1e-8,
            inverse: 1e-8,
            unitary: 1e-8,
            essential: 1e-8,
            multiplier: 1e-8,
            bound_slack: 1e-6,
            freeness: 1e-10,
            column: 1e-10,
            search: 1e-6,
        }
    }
}

impl Tolerances {
    pub const KEYS: &'static [&'static str] = &[
        "axioms",
        "pentagon",
        "coproduct_w",
        "lambda",
        "biduality",
        "pairing",
        "corep",
        "coefficient",
        "inverse",
        "unitary",
        "essential",
        "multiplier",
        "bound_slack",
        "freeness",
        "column",
        "search",
    ];

    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "axioms" => &mut self.axioms,
            "pentagon" => &mut self.pentagon,
            "coproduct_w" => &mut self.coproduct_w,
            "lambda" => &mut self.lambda,
            "biduality" => &mut self.biduality,
            "pairing" => &mut self.pairing,
            "corep" => &mut self.corep,
            "coefficient" => &mut self.coefficient,
            "inverse" => &mut self.inverse,
            "unitary" => &mut self.unitary,
            "essential" => &mut self.essential,
            "multiplier" => &mut self.multiplier,
            "bound_slack" => &mut self.bound_slack,
            "freeness" => &mut self.freeness,
            "column" => &mut self.column,
            "search" => &mut self.search,
            _ => return None,
        })
    }

    /// Applies `value` (axiom tolerance) or `key=value`.
    pub fn apply_override(&mut self, arg: &str) -> Result<()> {
        let (key, raw) = match arg.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => ("axioms", arg.trim()),
        };
        let value: f64 = raw
            .parse()
            .map_err(|_| QgError::Structural(format!("tolerance `{raw}` is not a number")))?;
        if !(value.is_finite() && value > 0.0) {
            return Err(QgError::Structural(format!("tolerance {key} must be positive, got {raw}")));
        }
        let slot = self.slot(key).ok_or_else(|| {
            QgError::Structural(format!("unknown tolerance `{key}` (known: {})", Self::KEYS.join(", ")))
        })?;
        *slot = value;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum InstanceSource {
    Builtin(String),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub group: Qg,
    /// Canonical JSON, the input digest is taken over it.
    pub json: String,
}

impl Instance {
    pub fn new(group: FiniteQuantumGroup) -> Self {
        let json = json::to_string(&group);
        Self {
            label: group.name().to_string(),
            group: Arc::new(group),
            json,
        }
    }

    pub fn load(source: &InstanceSource) -> Result<Self> {
        match source {
            InstanceSource::Builtin(name) => Ok(Self::new(FiniteQuantumGroup::builtin(name)?)),
            InstanceSource::File(path) => Ok(Self::new(json::load(path)?)),
        }
    }
}

/// Loads every source; with none given, the builtin corpus.
pub fn load_instances(sources: &[InstanceSource]) -> Result<Vec<Instance>> {
    let mut out: Vec<Instance> = if sources.is_empty() {
        FiniteQuantumGroup::builtin_names()
            .iter()
            .map(|n| Instance::load(&InstanceSource::Builtin(n.to_string())))
            .collect::<Result<_>>()?
    } else {
        sources.iter().map(Instance::load).collect::<Result<_>>()?
    };
    // labels name the records, keep them distinct
    for k in 1..out.len() {
        let base = out[k].label.clone();
        let mut label = base.clone();
        let mut n = 2;
        while out[..k].iter().any(|i| i.label == label) {
            label = format!("{base}#{n}");
            n += 1;
        }
        out[k].label = label;
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub instances: Vec<Instance>,
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    pub copies: usize,
    pub length: usize,
    pub dim_cap: usize,
    pub tol: Tolerances,
}

impl SuiteConfig {
    pub fn new(instances: Vec<Instance>, suite: Suite) -> Self {
        Self {
            instances,
            suite,
            seed: 1,
            trials: 50,
            copies: 4,
            length: 4,
            dim_cap: DEFAULT_DIM_CAP,
            tol: Tolerances::default(),
        }
    }

    pub fn check(&self) -> Result<()> {
        for (what, v) in [
            ("trials", self.trials),
            ("copies", self.copies),
            ("length", self.length),
            ("dim-cap", self.dim_cap),
        ] {
            if v == 0 {
                return Err(QgError::Structural(format!("{what} must be positive")));
            }
        }
        if self.length < 2 && (self.suite.includes(Suite::Khintchine) || self.suite.includes(Suite::Noncb)) {
            return Err(QgError::Structural("length must be at least 2 for Fock probes".into()));
        }
        Ok(())
    }
}
