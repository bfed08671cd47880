//! `gradstar`: command-line access to graded content ideals, star
//! operations, Nagata / Kronecker predicates, suites and falsifiers.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "gradstar", version, about = "Star operations and content ideals over graded monoid algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Shipped ring name or path to a ring JSON file.
    #[arg(long, global = true, default_value = "poly_q2")]
    pub ring: String,
    /// d, v, t, w, star_a:N or star_a:<s>:N.
    #[arg(long, global = true)]
    pub star: Option<String>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Print a `report_v1` JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include intermediate data (Gröbner bases, Dedekind-Mertens steps).
    #[arg(long, global = true)]
    pub trace: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the ring registry.
    Ring {
        #[command(subcommand)]
        cmd: RingCmd,
    },
    /// Parse and normalize an expression.
    Eval { expr: String },
    /// Ideal arithmetic on literals such as "(x, y)" or "(x^2, y)/x".
    Ideal {
        #[arg(value_enum)]
        op: IdealOp,
        /// Operands: one or two ideal literals; `member` takes an element first.
        args: Vec<String>,
    },
    /// Homogeneous content A_f (C(a) when f has no X).
    Content {
        #[arg(long)]
        f: String,
    },
    /// Least m with A_f^{m+1} A_g = A_f^m A_fg.
    Dm {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = gradstar_core::content::DEFAULT_DM_CAP)]
        cap: u32,
    },
    /// Compare A_f A_g with A_fg, optionally under --star.
    Gauss {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Use classical (coefficient) contents instead of homogeneous ones.
        #[arg(long)]
        classical: bool,
    },
    /// Apply a star operation to an ideal literal.
    Star { ideal: String },
    Nagata {
        #[command(subcommand)]
        cmd: NagataCmd,
    },
    Kron {
        #[command(subcommand)]
        cmd: KronCmd,
    },
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
    /// Exhaustive search for a counterexample to an identity.
    Falsify {
        /// classical-gauss, graded-gauss, square-identity, na-vs-classical-nagata
        identity: String,
        #[arg(long, default_value_t = 1)]
        max_x_degree: usize,
        #[arg(long, default_value_t = 2)]
        max_terms: usize,
        #[arg(long, default_value_t = 4)]
        max_coef: i64,
    },
}

#[derive(Subcommand)]
enum RingCmd {
    List,
    /// Show a ring (defaults to --ring).
    Show { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum IdealOp {
    Show,
    Member,
    Equals,
    Sum,
    Product,
    Colon,
    Inverse,
    Intersect,
}

#[derive(Subcommand)]
enum NagataCmd {
    /// f ∈ N(⋆).
    Member {
        #[arg(long)]
        f: String,
    },
    /// ⋆-invertibility of a homogeneous ideal.
    Invert { ideal: String },
    /// Single polynomial whose content is the sum of the given contents.
    Pic {
        #[arg(long = "f", required = true)]
        fs: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Eab,
    General,
}

#[derive(Subcommand)]
enum KronCmd {
    /// f/g ∈ Kr(R, ⋆).
    Member {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Catalog degree for general mode.
        #[arg(long, default_value_t = gradstar_core::star::DEFAULT_CATALOG_DEGREE)]
        bound: u32,
    },
    /// Collapse f1/g and f2/g to a single generator.
    Combine {
        #[arg(long = "f", required = true, num_args = 1)]
        fs: Vec<String>,
        #[arg(long)]
        g: String,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = gradstar_core::star::DEFAULT_CATALOG_DEGREE)]
        bound: u32,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    List,
    Run { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match cli.cmd {
        Command::Ring { cmd: RingCmd::List } => commands::ring_list(g),
        Command::Ring { cmd: RingCmd::Show { name } } => commands::ring_show(g, name.as_deref()),
        Command::Eval { expr } => commands::eval(g, &expr),
        Command::Ideal { op, args } => commands::ideal(g, op, &args),
        Command::Content { f } => commands::content(g, &f),
        Command::Dm { f, g: gg, cap } => commands::dm(g, &f, &gg, cap),
        Command::Gauss { f, g: gg, classical } => commands::gauss(g, &f, &gg, classical),
        Command::Star { ideal } => commands::star(g, &ideal),
        Command::Nagata { cmd: NagataCmd::Member { f } } => commands::nagata_member(g, &f),
        Command::Nagata { cmd: NagataCmd::Invert { ideal } } => commands::nagata_invert(g, &ideal),
        Command::Nagata { cmd: NagataCmd::Pic { fs } } => commands::nagata_pic(g, &fs),
        Command::Kron { cmd: KronCmd::Member { f, g: gg, mode, bound } } => {
            commands::kron_member(g, &f, &gg, mode, bound)
        }
        Command::Kron { cmd: KronCmd::Combine { fs, g: gg, mode, bound } } => {
            commands::kron_combine(g, &fs, &gg, mode, bound)
        }
        Command::Suite { cmd: SuiteCmd::List } => commands::suite_list(g),
        Command::Suite { cmd: SuiteCmd::Run { name } } => commands::suite_run(g, &name),
        Command::Falsify { identity, max_x_degree, max_terms, max_coef } => {
            commands::falsify(g, &identity, max_x_degree, max_terms, max_coef)
        }
    };
    match result {
        Ok(out) => out.emit(g.json),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
