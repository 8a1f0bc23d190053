use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod report;

use report::{Pipeline, Report};

#[derive(Parser, Debug)]
#[command(name = "toricdef", version, about = "Degree -R deformation data of affine toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON file with `rays`, `R` and optionally `generator_order`.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Total degree bound for the toric ideal search.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    max_degree: u32,

    /// Largest k for W_k and T²(-kR).
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    kmax: u32,

    /// Extra power-sum degrees used to confirm the base ideal truncation.
    #[arg(long, global = true, default_value_t = 1)]
    extra_truncation: u32,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Vertices, edges and components of Q.
    CrossSection,
    /// V(Q), its orthogonal complement and C(Q).
    Summands,
    /// Generators of the base ideal and dim W_k.
    BaseSpace,
    /// v(c), λ^c and η̄*(c) for the generators.
    EtaTable,
    /// Hilbert basis of σ∨ ∩ M.
    Hilbert,
    /// Binomial generators f of the toric ideal.
    ToricIdeal,
    /// Liftings F of the toric equations.
    Lift,
    /// dim T¹(-R), computed from V and from E.
    T1,
    /// dim T²(-kR) for k = 1..kmax.
    T2,
    /// Degrees R with nontrivial V(Q(R))/1, and the Gorenstein companion.
    Degrees,
    /// Every stage in order.
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

fn run(cli: &Cli) -> toric_versal::Result<Report> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| toric_versal::Error::Input("--input is required".into()))?;
    let src = std::fs::read_to_string(path)
        .map_err(|e| toric_versal::Error::Input(format!("cannot read {}: {}", path.display(), e)))?;
    let p = Pipeline::new(&src, cli.max_degree, cli.kmax, cli.extra_truncation)?;
    let mut r = Report::default();
    match cli.command {
        Command::CrossSection => r.push(p.cross_section_section()?),
        Command::Summands => r.push(p.summands_section()?),
        Command::BaseSpace => r.push(p.base_space_section()?),
        Command::EtaTable => r.push(p.eta_table_section()?),
        Command::Hilbert => r.push(p.hilbert_section()?),
        Command::ToricIdeal => r.push(p.toric_ideal_section()?),
        Command::Lift => r.push(p.lift_section()?),
        Command::T1 => r.push(p.t1_section()?),
        Command::T2 => r.push(p.t2_section()?),
        Command::Degrees => r.push(p.degrees_section()?),
        Command::All => {
            r.push(p.cross_section_section()?);
            r.push(p.summands_section()?);
            r.push(p.base_space_section()?);
            r.push(p.hilbert_section()?);
            r.push(p.eta_table_section()?);
            r.push(p.toric_ideal_section()?);
            r.push(p.lift_section()?);
            r.push(p.t1_section()?);
            r.push(p.t2_section()?);
            if p.rank() == 3 {
                r.push(p.degrees_section()?);
            }
        }
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            let out = match cli.format {
                Format::Text => r.text(),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&r.json()).expect("report serializes")),
            };
            // a closed pipe (e.g. `| head`) is not an error worth a panic
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("toricdef: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
