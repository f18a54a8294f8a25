//! `movslab`: reflection, transmission and quantum noise of a moving slab.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use movslab::observables::parse_ratio;
use movslab::sweep::selftest::run_selftest;
use movslab::sweep::{run_sweep, write_rows, OutputFormat, Preset, SweepConfig};
use movslab::{
    CoherentInput, LorentzParams, ObservablePoint, Polarization, ScatteringResult, SlabGeometry,
    SlabModel, ThermalEnvironment,
};
use serde_json::json;

const EXIT_CONFIG: u8 = 1;
const EXIT_SELFTEST: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "movslab",
    version,
    about = "Light scattering from a uniformly moving lossy slab"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reflection and transmission at a single point
    Coeffs(PointArgs),
    /// Noise and photon statistics at a single point
    Observables {
        #[command(flatten)]
        point: PointArgs,
        /// Ratio hbar*w0/(k_B*T); `inf` for zero temperature
        #[arg(long, default_value = "inf", value_parser = parse_ratio)]
        temp_ratio: f64,
        /// Mean photon number of the incident coherent state
        #[arg(long, default_value_t = 0.0)]
        alpha_sq: f64,
    },
    /// Grid sweep described by a JSON configuration
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Built-in sweep reproducing one of the reference figures
    Figure {
        /// fig2, fig3, fig4 or fig5
        preset: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the internal consistency suites
    Selftest,
}

#[derive(Args, Debug)]
struct PointArgs {
    /// Frequency in units of the resonance frequency
    #[arg(long)]
    w: f64,
    /// Slab speed in units of c
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    beta: f64,
    #[arg(long, default_value = "x")]
    pol: Polarization,
    /// Take material and thickness from a sweep configuration
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    material: MaterialArgs,
}

#[derive(Args, Debug)]
struct MaterialArgs {
    #[arg(long)]
    eps_inf: Option<f64>,
    #[arg(long)]
    mu_inf: Option<f64>,
    #[arg(long)]
    omega_pe: Option<f64>,
    #[arg(long)]
    omega_pm: Option<f64>,
    #[arg(long)]
    gamma_e: Option<f64>,
    #[arg(long)]
    gamma_m: Option<f64>,
    /// Slab thickness in units of c/w0
    #[arg(long)]
    thickness: Option<f64>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// csv or json; overrides the configuration
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Output file; standard output if omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Config(String),
    Io(String),
    Selftest,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Config(_) => EXIT_CONFIG,
            Self::Io(_) => EXIT_IO,
            Self::Selftest => EXIT_SELFTEST,
        }
    }
}

fn config_error(e: impl std::fmt::Display) -> Failure {
    Failure::Config(e.to_string())
}

fn io_error(path: Option<&Path>, e: io::Error) -> Failure {
    match path {
        Some(p) => Failure::Io(format!("{}: {e}", p.display())),
        None => Failure::Io(e.to_string()),
    }
}

fn load_config(path: &Path) -> Result<SweepConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(Some(path), e))?;
    SweepConfig::from_json_str(&text).map_err(config_error)
}

fn resolve_material(args: &PointArgs) -> Result<(LorentzParams, SlabGeometry), Failure> {
    let (mut material, mut thickness) = match &args.config {
        Some(path) => {
            let c = load_config(path)?;
            (c.material, c.thickness)
        }
        None => (LorentzParams::REFERENCE, 1.0),
    };
    let m = &args.material;
    let overrides = [
        (&mut material.eps_inf, m.eps_inf),
        (&mut material.mu_inf, m.mu_inf),
        (&mut material.omega_pe, m.omega_pe),
        (&mut material.omega_pm, m.omega_pm),
        (&mut material.gamma_e, m.gamma_e),
        (&mut material.gamma_m, m.gamma_m),
        (&mut thickness, m.thickness),
    ];
    for (slot, value) in overrides {
        if let Some(v) = value {
            *slot = v;
        }
    }
    material.validate().map_err(config_error)?;
    let geometry = SlabGeometry::new(thickness).map_err(config_error)?;
    Ok((material, geometry))
}

fn evaluate_point(args: &PointArgs) -> Result<(SlabModel, ScatteringResult), Failure> {
    let (material, geometry) = resolve_material(args)?;
    let model = SlabModel::new(&material, args.w, args.beta).map_err(config_error)?;
    let s = model.scatter(&geometry, args.pol).map_err(config_error)?;
    Ok((model, s))
}

fn coefficients_json(s: &ScatteringResult) -> serde_json::Value {
    json!({
        "w": s.w,
        "beta": s.beta,
        "pol": s.pol.as_str(),
        "n_eff": [s.n_eff.re, s.n_eff.im],
        "R": [s.reflection.re, s.reflection.im],
        "T": [s.transmission.re, s.transmission.im],
        "R2": s.reflectance,
        "T2": s.transmittance,
        "A": s.absorptance,
    })
}

fn print_json(value: &serde_json::Value) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Failure::Io(e.to_string()))?;
    writeln!(out).map_err(|e| io_error(None, e))
}

fn emit(config: &SweepConfig, output: &OutputArgs) -> Result<(), Failure> {
    let format = output.format.unwrap_or(config.format);
    let rows = run_sweep(config);
    match &output.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| io_error(Some(path), e))?;
            let mut w = BufWriter::new(file);
            write_rows(&rows, format, &mut w).map_err(|e| io_error(Some(path), e))?;
            w.flush().map_err(|e| io_error(Some(path), e))
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            match write_rows(&rows, format, &mut w).and_then(|()| w.flush()) {
                // a closed downstream pipe is not an error
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                other => other.map_err(|e| io_error(None, e)),
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Coeffs(point) => {
            let (_, s) = evaluate_point(&point)?;
            print_json(&coefficients_json(&s))
        }
        Command::Observables {
            point,
            temp_ratio,
            alpha_sq,
        } => {
            let env = ThermalEnvironment::new(temp_ratio).map_err(config_error)?;
            let input = CoherentInput::new(alpha_sq, point.pol).map_err(config_error)?;
            let (model, s) = evaluate_point(&point)?;
            let obs = ObservablePoint::evaluate(&s, model.kinematics.gamma, env, &input);
            let mut value = coefficients_json(&s);
            let map = value.as_object_mut().expect("object literal");
            map.insert("N".into(), json!(obs.occupation));
            map.insert("noise_flux".into(), json!(obs.noise_flux));
            map.insert("S_X".into(), json!(obs.s_x));
            map.insert("S_Y".into(), json!(obs.s_y));
            map.insert("Q".into(), json!(obs.q));
            print_json(&value)
        }
        Command::Sweep { config, output } => emit(&load_config(&config)?, &output),
        Command::Figure { preset, output } => {
            let preset: Preset = preset.parse().map_err(config_error)?;
            emit(&preset.config(), &output)
        }
        Command::Selftest => {
            let report = run_selftest();
            println!("{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Selftest)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Config(msg) => eprintln!("error: {msg}"),
                Failure::Io(msg) => eprintln!("I/O error: {msg}"),
                Failure::Selftest => eprintln!("self-test failed"),
            }
            ExitCode::from(failure.code())
        }
    }
}
