use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sgkink::dislocation::MassConvention;
use sgkink::lattice::RelaxationConfig;
use sgkink::material::{bundled_materials, load_materials};
use sgkink::report::{self, CenterClass, Format, OutputOptions, RTie};
use sgkink::spectral::GridSpec;
use sgkink::{Material, ModelMode, Result};

#[derive(Parser)]
#[command(name = "sgkink", version, about = "Sine-Gordon kink energies from crystal data")]
struct Cli {
    /// Material database (defaults to the bundled one).
    #[arg(long, global = true)]
    db: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Abort the table on the first failing material.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true)]
    full_precision: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Crowdion,
    Dislocation,
}

impl From<ModeArg> for ModelMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Crowdion => ModelMode::Crowdion,
            ModeArg::Dislocation => ModelMode::Dislocation,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MassArg {
    Defining,
    Alternative,
}

#[derive(Clone, Copy, ValueEnum)]
enum TieArg {
    Epsilon,
    Spectral,
}

#[derive(Clone, Copy, ValueEnum)]
enum CenterArg {
    Site,
    Bond,
}

fn pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected two comma-separated numbers")?;
    let a: f64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

#[derive(Subcommand)]
enum Command {
    /// List the database with derived wavenumbers.
    Materials,
    /// Crowdion and dislocation kink energies for every material.
    Table {
        #[arg(long, value_enum, default_value = "defining")]
        mass: MassArg,
    },
    /// Classical energy, one-loop correction and the regularized E_q.
    Correction {
        material: String,
        #[arg(long, value_enum, default_value = "crowdion")]
        mode: ModeArg,
        /// Time scale T, s.
        #[arg(long = "T", default_value_t = 1e-12)]
        t: f64,
        /// Multiply the tied r by this factor.
        #[arg(long)]
        untie_r: Option<f64>,
        #[arg(long, value_enum, default_value = "epsilon")]
        tie: TieArg,
    },
    /// Second-level parameters and dislocation kink energy.
    Dislocation { material: String },
    /// Peierls-Nabarro amplitude from two relaxed chains.
    PnBarrier {
        material: String,
        #[arg(long, value_enum, default_value = "dislocation")]
        mode: ModeArg,
    },
    /// Sampled static solution φ(x′) and potential U(x′).
    Profile {
        material: String,
        #[arg(long, value_enum, default_value = "crowdion")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        /// lo,hi in lattice constants.
        #[arg(long, value_parser = pair, default_value = "-10,10", allow_hyphen_values = true)]
        range: (f64, f64),
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Finite-difference heat trace against erf(m√t).
    SpectrumCheck {
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        /// L,h
        #[arg(long, value_parser = pair, default_value = "30,0.01")]
        grid: (f64, f64),
    },
    /// Per-site displacements of a relaxed kink.
    RelaxDump {
        material: String,
        #[arg(long, value_enum, default_value = "dislocation")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "site")]
        center: CenterArg,
    },
}

fn run(cli: Cli) -> Result<()> {
    let materials: Vec<Material> = match &cli.db {
        Some(path) => load_materials(path)?,
        None => bundled_materials(),
    };
    let opts = OutputOptions {
        format: match cli.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        },
        full_precision: cli.full_precision,
    };
    let cfg = RelaxationConfig::default();
    let text = match cli.command {
        Command::Materials => report::cmd_materials(&materials, opts),
        Command::Table { mass } => {
            let mass = match mass {
                MassArg::Defining => MassConvention::Defining,
                MassArg::Alternative => MassConvention::Alternative,
            };
            let out = report::cmd_table(&materials, &cfg, mass, cli.strict, opts)?;
            print!("{}", out.text);
            if let Some((name, err)) = out.failures.first() {
                for (name, err) in &out.failures {
                    eprintln!("error: {name}: {err}");
                }
                return Err(sgkink::Error::Instability(format!("{name}: {err}")));
            }
            return Ok(());
        }
        Command::Correction {
            material,
            mode,
            t,
            untie_r,
            tie,
        } => {
            let tie = match tie {
                TieArg::Epsilon => RTie::Epsilon,
                TieArg::Spectral => RTie::Spectral,
            };
            report::cmd_correction(&materials, &material, mode.into(), t, untie_r, tie, opts)?
        }
        Command::Dislocation { material } => report::cmd_dislocation(&materials, &material, &cfg, opts)?,
        Command::PnBarrier { material, mode } => report::cmd_pn_barrier(&materials, &material, mode.into(), &cfg, opts)?,
        Command::Profile {
            material,
            mode,
            k,
            range,
            samples,
        } => report::cmd_profile(&materials, &material, mode.into(), k, range, samples, opts)?,
        Command::SpectrumCheck { m, grid } => report::cmd_spectrum_check(m, GridSpec::new(grid.0, grid.1)?, opts)?,
        Command::RelaxDump { material, mode, center } => {
            let center = match center {
                CenterArg::Site => CenterClass::Site,
                CenterArg::Bond => CenterClass::Bond,
            };
            report::cmd_relax_dump(&materials, &material, mode.into(), center, &cfg, opts)?
        }
    };
    print!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
