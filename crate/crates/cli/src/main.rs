//! `olab`: command-line access to the lattice, character and orbifold checks.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;

#[derive(Parser)]
#[command(
    name = "olab",
    version,
    about = "Exact checks for fourvolution orbifolds of lattice VOAs"
)]
struct Cli {
    /// q-series precision (highest weight computed)
    #[arg(long, global = true, default_value_t = 4)]
    prec: u64,
    /// Enumeration worker threads; 0 uses every core
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice invariants and short vectors
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Isometry checks
    #[command(subcommand)]
    Isom(IsomCmd),
    /// Codes, catalog lattices and fourvolutions
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Characters and graded traces
    #[command(subcommand)]
    Char(CharCmd),
    /// Discriminant forms, orthogonal groups and shape arithmetic
    #[command(subcommand)]
    Qform(QformCmd),
    /// The weight <= 2 model
    #[command(subcommand)]
    Voa(VoaCmd),
    /// Run a verification suite
    Suite {
        #[arg(value_parser = ["lemma24", "case1", "case2", "case3", "thm44", "sqrt2e8", "bw16", "shapes", "all"])]
        name: String,
        #[arg(long, default_value = "text", value_parser = ["json", "tsv", "text"])]
        format: String,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    Info {
        file: PathBuf,
    },
    Shells {
        file: PathBuf,
        #[arg(long)]
        max_norm: u64,
    },
    CosetShells {
        file: PathBuf,
        /// Representative in lattice coordinates, e.g. `1/2,0,1`
        #[arg(long)]
        rep: String,
        #[arg(long)]
        max_norm: u64,
    },
}

#[derive(Subcommand)]
enum IsomCmd {
    Verify { lattice: PathBuf, matrix: PathBuf },
    Chain { lattice: PathBuf, matrix: PathBuf },
    Coinvariant { lattice: PathBuf, matrix: PathBuf },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Construction B of a doubly even code
    B {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    Catalog {
        #[arg(long)]
        name: String,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    Fourvolution {
        #[arg(long)]
        name: String,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// The A1^n frame of a catalog lattice or of Construction B of a code
    Frame {
        #[arg(long, conflicts_with = "code")]
        name: Option<String>,
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CharCmd {
    Dims {
        lattice: PathBuf,
    },
    Trace {
        lattice: PathBuf,
        isom: PathBuf,
        #[arg(long)]
        power: u32,
    },
    Eigdim {
        lattice: PathBuf,
        isom: PathBuf,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        m: u64,
    },
    Twisted {
        lattice: PathBuf,
        isom: PathBuf,
        #[arg(long)]
        s: u32,
    },
    Case3Scan {
        #[arg(long)]
        max: usize,
    },
}

#[derive(Subcommand)]
enum QformCmd {
    Disc {
        lattice: PathBuf,
    },
    IrrBw16 {
        lattice: PathBuf,
        isom: PathBuf,
    },
    Ogroup {
        qform: PathBuf,
    },
    Shape {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        claimed: String,
    },
}

#[derive(Subcommand)]
enum VoaCmd {
    Witness {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        isom: PathBuf,
        #[arg(long)]
        frame: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context::new(cli.prec, cli.workers);
    let result = match cli.command {
        Command::Lattice(c) => match c {
            LatticeCmd::Info { file } => ctx.lattice_info(&file),
            LatticeCmd::Shells { file, max_norm } => ctx.lattice_shells(&file, max_norm),
            LatticeCmd::CosetShells {
                file,
                rep,
                max_norm,
            } => ctx.coset_shells(&file, &rep, max_norm),
        },
        Command::Isom(c) => match c {
            IsomCmd::Verify { lattice, matrix } => ctx.isom_verify(&lattice, &matrix),
            IsomCmd::Chain { lattice, matrix } => ctx.isom_chain(&lattice, &matrix),
            IsomCmd::Coinvariant { lattice, matrix } => ctx.isom_coinvariant(&lattice, &matrix),
        },
        Command::Construct(c) => match c {
            ConstructCmd::B { code, emit } => ctx.construct_b(&code, emit.as_deref()),
            ConstructCmd::Catalog { name, emit } => ctx.construct_catalog(&name, emit.as_deref()),
            ConstructCmd::Fourvolution { name, emit } => {
                ctx.construct_fourvolution(&name, emit.as_deref())
            }
            ConstructCmd::Frame { name, code, emit } => {
                ctx.construct_frame(name.as_deref(), code.as_deref(), emit.as_deref())
            }
        },
        Command::Char(c) => match c {
            CharCmd::Dims { lattice } => ctx.char_dims(&lattice),
            CharCmd::Trace {
                lattice,
                isom,
                power,
            } => ctx.char_trace(&lattice, &isom, power),
            CharCmd::Eigdim {
                lattice,
                isom,
                j,
                m,
            } => ctx.char_eigdim(&lattice, &isom, j, m),
            CharCmd::Twisted { lattice, isom, s } => ctx.char_twisted(&lattice, &isom, s),
            CharCmd::Case3Scan { max } => ctx.case3_scan(max),
        },
        Command::Qform(c) => match c {
            QformCmd::Disc { lattice } => ctx.qform_disc(&lattice),
            QformCmd::IrrBw16 { lattice, isom } => ctx.qform_irr(&lattice, &isom),
            QformCmd::Ogroup { qform } => ctx.qform_ogroup(&qform),
            QformCmd::Shape { expr, claimed } => ctx.qform_shape(&expr, &claimed),
        },
        Command::Voa(VoaCmd::Witness {
            lattice,
            isom,
            frame,
        }) => ctx.voa_witness(&lattice, &isom, &frame),
        Command::Suite { name, format } => ctx.suite(&name, &format),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("olab: {}", e);
            ExitCode::from(1)
        }
    }
}
