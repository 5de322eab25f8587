use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qglab::fock::space::DIM_CAP_ENV;
use qglab::fock::DEFAULT_DIM_CAP;
use qglab::{json, QgError};
use qglab_cli::{load_instances, run_suite, InstanceSource, Suite, SuiteConfig, SuiteReport};

const EXIT_FAIL: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "qglab", version, about = "Finite quantum group laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Hopf *-algebra and Haar state axioms.
    Validate(Common),
    /// Write the dual instance as JSON, or run the duality checks with --report.
    Dual {
        #[command(flatten)]
        common: Common,
        /// Run the duality suite instead of emitting the dual.
        #[arg(long)]
        report: bool,
    },
    /// Corepresentation identities, inverses and the degenerate case.
    CorepSuite(Common),
    /// Coefficient-induced left multipliers of the dual.
    MultiplierSuite(Common),
    /// Unitarization of similarity-twisted unitary corepresentations.
    Unitarize(Common),
    /// Khintchine-type inequalities on the truncated free product.
    Khintchine(Common),
    /// Completely bounded versus bounded norm of the free representation.
    Noncb(Common),
    /// Every suite.
    All(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Args)]
struct Common {
    /// Instance JSON file (repeatable).
    #[arg(long = "instance", value_name = "PATH")]
    instances: Vec<PathBuf>,
    /// Builtin instance name (repeatable). Without any instance, the whole corpus.
    #[arg(long = "builtin", value_name = "NAME")]
    builtins: Vec<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Axiom tolerance, or KEY=VALUE for a named tolerance (repeatable).
    #[arg(long = "tol", value_name = "TOL")]
    tol: Vec<String>,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Number of free copies for the Fock probes.
    #[arg(long, default_value_t = 4)]
    copies: usize,
    /// Maximal word length of the truncated Fock space.
    #[arg(long, default_value_t = 4)]
    length: usize,
    /// Fock space dimension budget.
    #[arg(long, env = DIM_CAP_ENV, default_value_t = DEFAULT_DIM_CAP)]
    dim_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn sources(&self) -> Vec<InstanceSource> {
        self.builtins
            .iter()
            .map(|b| InstanceSource::Builtin(b.clone()))
            .chain(self.instances.iter().map(|p| InstanceSource::File(p.clone())))
            .collect()
    }

    fn config(&self, suite: Suite) -> Result<SuiteConfig, QgError> {
        let needs_instances = !matches!(suite, Suite::Khintchine | Suite::Noncb);
        let instances = if needs_instances {
            load_instances(&self.sources())?
        } else {
            Vec::new()
        };
        let mut cfg = SuiteConfig::new(instances, suite);
        cfg.seed = self.seed;
        cfg.trials = self.trials;
        cfg.copies = self.copies;
        cfg.length = self.length;
        cfg.dim_cap = self.dim_cap;
        for t in &self.tol {
            cfg.tol.apply_override(t)?;
        }
        Ok(cfg)
    }

    fn emit(&self, text: &str) -> Result<(), QgError> {
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                stdout.write_all(b"\n")?;
            }
        }
        Ok(())
    }
}

fn render(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    }
}

fn run_report(common: &Common, suite: Suite) -> Result<u8, QgError> {
    let cfg = common.config(suite)?;
    let report = run_suite(&cfg)?;
    common.emit(&render(&report, common.format))?;
    Ok(if report.pass { 0 } else { EXIT_FAIL })
}

fn emit_dual(common: &Common) -> Result<u8, QgError> {
    let instances = load_instances(&common.sources())?;
    let [inst] = instances.as_slice() else {
        return Err(QgError::Structural(format!(
            "dual expects exactly one instance, got {}",
            instances.len()
        )));
    };
    let dual = &inst.group.dual()?.dual;
    common.emit(&json::to_string(dual))?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(c) => run_report(c, Suite::Validate),
        Command::Dual { common, report: true } => run_report(common, Suite::Duality),
        Command::Dual { common, report: false } => emit_dual(common),
        Command::CorepSuite(c) => run_report(c, Suite::Corep),
        Command::MultiplierSuite(c) => run_report(c, Suite::Multiplier),
        Command::Unitarize(c) => run_report(c, Suite::Unitarize),
        Command::Khintchine(c) => run_report(c, Suite::Khintchine),
        Command::Noncb(c) => run_report(c, Suite::Noncb),
        Command::All(c) => run_report(c, Suite::All),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qglab: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
