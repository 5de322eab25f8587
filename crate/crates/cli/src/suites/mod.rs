//! Suite orchestration. Records are named `suite/instance/check`.

mod algebra;
mod fock;

use std::time::Instant;

use qglab::{QgError, Result};

use crate::config::{Suite, SuiteConfig};
use crate::report::{FockSummary, Record, SuiteReport};

use fock::{khintchine_suite, noncb_suite};

/// Errors that abort a run instead of failing a single check.
pub fn is_fatal(e: &QgError) -> bool {
    matches!(
        e,
        QgError::Budget { .. }
            | QgError::Structural(_)
            | QgError::Schema { .. }
            | QgError::Io(_)
            | QgError::InvalidInstance(_)
            | QgError::DimensionMismatch { .. }
            | QgError::OwnerMismatch
            | QgError::IndexOutOfRange { .. }
    )
}

pub(crate) struct Collector {
    pub records: Vec<Record>,
    pub fock: Vec<FockSummary>,
}

impl Collector {
    fn new() -> Self {
        Self {
            records: Vec::new(),
            fock: Vec::new(),
        }
    }

    /// Runs one group of checks. A non-fatal error turns into a failing
    /// record named `fallback`.
    pub fn group(
        &mut self,
        fallback: &str,
        anchor: &str,
        digest: &str,
        f: impl FnOnce() -> Result<Vec<Record>>,
    ) -> Result<()> {
        let start = Instant::now();
        let out = f();
        let ms = elapsed_ms(start);
        match out {
            Ok(mut recs) => {
                for r in &mut recs {
                    r.runtime_ms = ms;
                }
                self.records.extend(recs);
                Ok(())
            }
            Err(e) if is_fatal(&e) => Err(e),
            Err(e) => {
                let mut r = Record::failed(fallback, anchor, digest, e.to_string());
                r.runtime_ms = ms;
                self.records.push(r);
                Ok(())
            }
        }
    }
}

pub(crate) fn elapsed_ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Runs the selected suites in a fixed order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.check()?;
    let mut out = Collector::new();
    for inst in &cfg.instances {
        if cfg.suite.includes(Suite::Validate) {
            algebra::validate(cfg, inst, &mut out)?;
        }
        if cfg.suite.includes(Suite::Duality) {
            algebra::duality(cfg, inst, &mut out)?;
        }
        if cfg.suite.includes(Suite::Corep) {
            algebra::corep(cfg, inst, &mut out)?;
        }
        if cfg.suite.includes(Suite::Unitarize) {
            algebra::unitarize(cfg, inst, &mut out)?;
        }
        if cfg.suite.includes(Suite::Multiplier) {
            algebra::multiplier(cfg, inst, &mut out)?;
        }
    }
    if cfg.suite.includes(Suite::Khintchine) {
        khintchine_suite(cfg, &mut out)?;
    }
    if cfg.suite.includes(Suite::Noncb) {
        noncb_suite(cfg, &mut out)?;
    }
    Ok(SuiteReport::from_parts(out.records, out.fock))
}
