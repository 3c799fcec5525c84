//! `qheis`: command line front-end. Every command prints JSON lines (or text with `--text`)
//! and exits 0 iff no check failed.

mod commands;
mod out;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qheis", version, about = "Exact computations in O_q(b_{m,n}), U_q(b_{m,n}) and their Heisenberg double")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraName {
    #[value(name = "Oq")]
    Oq,
    #[value(name = "Uq")]
    Uq,
    #[value(name = "Dq")]
    Dq,
    #[value(name = "S")]
    S,
    #[value(name = "torus")]
    Torus,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Algebra the expressions live in (defaults depend on the command).
    #[arg(long, global = true, value_enum)]
    pub algebra: Option<AlgebraName>,
    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true)]
    pub m: i64,
    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true)]
    pub n: i64,
    /// Generator order of S, e.g. `Ep,Fp,bp,cp`.
    #[arg(long, global = true, default_value = "Ep,Fp,bp,cp")]
    pub order: String,
    /// Truncation degree: ideal bound, module multiplier degree or growth range.
    #[arg(long, global = true)]
    pub deg: Option<u32>,
    /// Weight-module truncation window |t| <= I.
    #[arg(long, global = true)]
    pub window: Option<i64>,
    #[arg(long, global = true, env = "QHEIS_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Evaluate printed scalars at this rational value of q (e.g. `3/2`).
    #[arg(long, global = true)]
    pub q: Option<String>,
    /// JSON-lines output (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Human-readable output.
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of an expression.
    Nf { expr: String },
    /// Commutator xy - yx.
    Comm { x: String, y: String },
    /// Coproduct in O_q or U_q.
    Delta { expr: String },
    Counit { expr: String },
    Antipode { expr: String },
    /// Pairing <u, x> with u in U_q and x in O_q.
    Pair { u: String, x: String },
    /// Left action u . x of U_q on O_q.
    Act { u: String, x: String },
    /// Cross relations of D_q recovered from the action.
    Smash,
    #[command(subcommand)]
    Ideal(IdealCommand),
    #[command(subcommand)]
    Spec(SpecCommand),
    #[command(subcommand)]
    Module(ModuleCommand),
    #[command(subcommand)]
    Aut(AutCommand),
    /// Run verification suites.
    Verify {
        /// Suite name, comma separated list, or `all`; repeatable.
        #[arg(long, required = true, value_delimiter = ',')]
        suite: Vec<String>,
        /// Run the confluence suite on the deliberately broken D_q fixture.
        #[arg(long)]
        corrupted: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct IdealArgs {
    /// Catalog name (`0`, `I1`, `I2`, `I3`, `J1`, `J2`) or `custom` with `--gen`.
    pub name: String,
    /// Parameter z of J1(z), J2(z).
    #[arg(long, default_value = "1")]
    pub z: String,
    /// Generators of a custom ideal.
    #[arg(long = "gen")]
    pub gens: Vec<String>,
    /// Left ideal instead of two-sided.
    #[arg(long)]
    pub left: bool,
}

#[derive(Subcommand, Debug)]
pub enum IdealCommand {
    /// Dimension of the truncated span.
    Span {
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Membership with a replayable certificate.
    Member {
        #[command(flatten)]
        ideal: IdealArgs,
        expr: String,
    },
    /// Containment of the first ideal in a second catalog ideal.
    Contain {
        #[command(flatten)]
        ideal: IdealArgs,
        target: String,
        #[arg(long, default_value = "1")]
        target_z: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpecCommand {
    /// Dimensions and avoidance probes of the catalog ideals.
    Catalog {
        #[arg(long, value_delimiter = ',', default_values_t = ["1".to_string(), "q".to_string(), "-2".to_string()])]
        z: Vec<String>,
    },
    /// Containment edges between catalog ideals.
    Diagram {
        #[arg(long, value_delimiter = ',', default_values_t = ["1".to_string(), "q".to_string(), "-2".to_string()])]
        z: Vec<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ModuleArgs {
    #[arg(long, default_value = "J1")]
    pub family: String,
    #[arg(long, default_value = "0")]
    pub sigma: String,
    #[arg(long, default_value = "0")]
    pub tau: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Weight {
    K,
    A,
}

#[derive(Subcommand, Debug)]
pub enum ModuleCommand {
    /// s . (w . v) for S-expressions s and w.
    Act {
        #[command(flatten)]
        module: ModuleArgs,
        s: String,
        #[arg(default_value = "1")]
        w: String,
    },
    /// Whether v lies in S w, using multipliers up to `--deg`.
    Probe {
        #[command(flatten)]
        module: ModuleArgs,
        w: String,
    },
    /// Filtration dimensions and fitted growth exponent up to `--deg`.
    Growth {
        #[command(flatten)]
        module: ModuleArgs,
        /// Use the induced weight module instead of the base module.
        #[arg(long, value_enum)]
        weight: Option<Weight>,
    },
    /// Truncated weight support of the induced module.
    Support {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, value_enum, default_value = "k")]
        kind: Weight,
        #[arg(long, default_value = "1")]
        lambda: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum AutCommand {
    /// Check that a family member is an algebra morphism.
    Check {
        /// tau, xi, zeta, zeta-dq, rho, xi-primed, xi-primed-literal, swap-bc, iso, embedding.
        #[arg(long)]
        family: String,
        /// Entries a,b,c,d of an SL_2(Z) matrix for rho.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        matrix: Option<Vec<i64>>,
        /// Scalars of the family, comma separated expressions in q.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        scalars: Option<Vec<String>>,
        /// Index of xi_i.
        #[arg(long, allow_negative_numbers = true)]
        i: Option<i64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.finish(cli.global.text));
            if out.failures() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
