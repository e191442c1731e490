use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use apjackson::approximation::fmt_float;
use apjackson::inverse::ClassConstants;
use apjackson::jackson::JacksonCertificate;
use apjackson::orlicz::ORACLE_MAX_SUPPORT;
use apjackson::report::{bundled_sources, write_outputs, OUTPUT_DIR_ENV};
use apjackson::{
    bari_condition_check, class_membership_report, dual_sup_oracle, jackson_integral, modulus, orlicz_norm, parse_signal,
    run_suite, sharp_constant_lp, sharpness_ratio_scan, verify_inverse, verify_theorem1, ApPolynomial, BestApproxProfile,
    Error, InverseForm, Majorant, ModulusRequest, OrliczFamily, PhiFunction, RunConfig, Spectrum, WeightFunction,
};

#[derive(Parser)]
#[command(name = "apjackson", version, about = "Orlicz norms, moduli of smoothness and approximation bounds for almost-periodic polynomials")]
struct Cli {
    /// Run configuration (JSON); also supplies the default family.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FamilyArg {
    /// `linear`, `stepanets_power:p`, `power_scaled:c:p`, inline JSON, or a JSON file.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Musielak–Orlicz norm of a signal's coefficients.
    Norm {
        #[arg(long)]
        signal: PathBuf,
        #[command(flatten)]
        family: FamilyArg,
        /// Also run the dual-supremum oracle (small supports only).
        #[arg(long)]
        dual: bool,
    },
    /// Generalized modulus of smoothness at one step size.
    Modulus {
        #[arg(long)]
        signal: PathBuf,
        #[arg(long, default_value = "sine_power:2")]
        phi: String,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Best-approximation profile as CSV.
    Bestapprox {
        #[arg(long)]
        signal: PathBuf,
        #[command(flatten)]
        family: FamilyArg,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Jackson integral, constants, LP-optimal constant, and certificates for a signal.
    Jackson {
        #[arg(long, default_value = "sine_power:2")]
        phi: String,
        /// `one_minus_cos`, `identity`, `power:m` or `grid:<file>`.
        #[arg(long, default_value = "one_minus_cos")]
        weight: String,
        #[arg(long, default_value_t = PI)]
        tau: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k_window: Option<usize>,
        /// Solve the sharp-constant LP on this many grid points.
        #[arg(long)]
        lp_grid: Option<usize>,
        /// `integers:K`, `powers:K:p` or `list:…`; defaults to the signal's spectrum.
        #[arg(long)]
        spectrum: Option<String>,
        #[arg(long)]
        signal: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Inverse bounds for a signal, or a sharpness-ratio scan.
    Inverse {
        #[arg(long, conflicts_with = "phi")]
        alpha: Option<f64>,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        signal: Option<PathBuf>,
        /// Spectral gap constant for the gap form.
        #[arg(long)]
        gap: Option<f64>,
        /// Comma-separated n values for the sharpness scan of e^{iλ_{k0}x}.
        #[arg(long, value_delimiter = ',')]
        scan: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1)]
        k0: usize,
        #[arg(long, default_value = "integers:1000")]
        spectrum: String,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Bari-type condition for a majorant, and class evidence for a signal.
    Classes {
        /// `power:r`.
        #[arg(long)]
        majorant: String,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value = "integers:1000")]
        spectrum: String,
        #[arg(long)]
        signal: Option<PathBuf>,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long, default_value_t = 10.0)]
        c_modulus: f64,
        #[arg(long, default_value_t = 10.0)]
        c_approx: f64,
        #[arg(long)]
        gap: Option<f64>,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Run the configured verification suite (bundled fixtures when no signals
    /// are configured) and write report.csv (and plots).
    VerifyAll {
        /// Output directory (overridden by the environment variable).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_signal(path: &Path) -> apjackson::Result<ApPolynomial> {
    parse_signal(&fs::read_to_string(path)?)
}

fn resolve_family(arg: &FamilyArg, config: Option<&RunConfig>) -> apjackson::Result<OrliczFamily> {
    match &arg.family {
        Some(spec) if Path::new(spec).is_file() => OrliczFamily::from_json(&fs::read_to_string(spec)?),
        Some(spec) => OrliczFamily::parse(spec),
        None => Ok(config.map(|c| c.family.clone()).unwrap_or_else(OrliczFamily::linear)),
    }
}

fn weight_from_arg(spec: &str, tau: f64) -> apjackson::Result<WeightFunction> {
    match spec.strip_prefix("grid:") {
        Some(file) => WeightFunction::from_grid_text(&fs::read_to_string(file)?),
        None => WeightFunction::parse(spec, tau),
    }
}

fn print_certificates(certs: &[JacksonCertificate]) {
    println!("theorem,n,lhs,rhs,margin,pass");
    for c in certs {
        println!("{},{},{},{},{},{}", c.theorem, c.n, fmt_float(c.lhs), fmt_float(c.rhs), fmt_float(c.margin), c.pass);
    }
}

fn run(cli: Cli) -> apjackson::Result<ExitCode> {
    let config = cli.config.as_deref().map(RunConfig::load).transpose()?;
    match cli.command {
        Command::Norm { signal, family, dual } => {
            let f = read_signal(&signal)?;
            let fam = resolve_family(&family, config.as_ref())?;
            println!("norm {}", fmt_float(orlicz_norm(&f, &fam)?));
            if dual {
                let d = dual_sup_oracle(&f.magnitudes(), &fam, ORACLE_MAX_SUPPORT)?;
                println!("dual {}", fmt_float(d.value));
            }
        }
        Command::Modulus { signal, phi, delta, grid, family } => {
            let f = read_signal(&signal)?;
            let fam = resolve_family(&family, config.as_ref())?;
            let phi = PhiFunction::parse(&phi)?;
            let mut req = ModulusRequest::new(&f, &phi, delta, &fam);
            req.h_grid_points = grid;
            let m = modulus(&req)?;
            println!("lower {}\nupper {}\nargmax {}", fmt_float(m.lower), fmt_float(m.upper), fmt_float(m.argmax));
        }
        Command::Bestapprox { signal, family, out } => {
            let f = read_signal(&signal)?;
            let fam = resolve_family(&family, config.as_ref())?;
            let csv = BestApproxProfile::compute(&f, &fam, signal.display().to_string())?.to_csv();
            match out {
                Some(p) => fs::write(p, csv)?,
                None => print!("{csv}"),
            }
        }
        Command::Jackson { phi, weight, tau, n, k_window, lp_grid, spectrum, signal, family } => {
            let phi = PhiFunction::parse(&phi)?;
            let v = weight_from_arg(&weight, tau)?;
            let f = signal.as_deref().map(read_signal).transpose()?;
            let spec = match (&spectrum, &f) {
                (Some(s), _) => Spectrum::parse(s)?,
                (None, Some(f)) => f.spectrum().clone(),
                (None, None) => return Err(Error::InvalidArgument("jackson needs --spectrum or --signal".into())),
            };
            let i = jackson_integral(n, &phi, &v, &spec, k_window)?;
            println!("integral {} (argmin k = {})", fmt_float(i.value), i.argmin);
            println!("constant {}", fmt_float(v.total_variation() / i.value));
            if let Some(g) = lp_grid {
                let sc = sharp_constant_lp(n, &phi, v.tau(), &spec, g, k_window)?;
                println!("lp_constant {}", fmt_float(sc.value));
                for (label, r) in &sc.preset_ratios {
                    println!("preset {label} {}", fmt_float(*r));
                }
            }
            if let Some(f) = f {
                let fam = resolve_family(&family, config.as_ref())?;
                print_certificates(&verify_theorem1(&f, n, &phi, &v, &fam, k_window)?);
            }
        }
        Command::Inverse { alpha, phi, n, signal, gap, scan, k0, spectrum, family } => {
            let fam = resolve_family(&family, config.as_ref())?;
            if let Some(ns) = scan {
                let a = alpha.unwrap_or(2.0);
                println!("n,ratio");
                for (n, r) in sharpness_ratio_scan(k0, a, &Spectrum::parse(&spectrum)?, &fam, &ns)? {
                    println!("{n},{}", fmt_float(r));
                }
                return Ok(ExitCode::SUCCESS);
            }
            let (Some(signal), Some(n)) = (signal, n) else {
                return Err(Error::InvalidArgument("inverse needs --signal and --n (or --scan)".into()));
            };
            let f = read_signal(&signal)?;
            let form = match phi {
                Some(p) => InverseForm::Phi(PhiFunction::parse(&p)?),
                None => InverseForm::Alpha(alpha.unwrap_or(2.0)),
            };
            let cert = verify_inverse(&f, n, &form, &fam, gap)?;
            println!("theorem,n,lhs,rhs,margin,pass");
            for b in &cert.bounds {
                println!("{},{},{},{},{},{}", b.name, n, fmt_float(cert.lhs), fmt_float(b.rhs), fmt_float(b.margin), b.pass);
            }
            if !cert.pass {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Classes { majorant, s, n_max, spectrum, signal, alpha, c_modulus, c_approx, gap, family } => {
            let omega = Majorant::parse(&majorant)?;
            let s = s.unwrap_or(alpha);
            match signal {
                None => {
                    let b = bari_condition_check(&omega, &Spectrum::parse(&spectrum)?, s, n_max)?;
                    println!("sup_ratio {}", fmt_float(b.sup_ratio));
                    println!("last_ratio {}", fmt_float(b.ratios.last().map_or(0.0, |r| r.1)));
                    println!("bounded_heuristic {}", b.bounded);
                }
                Some(path) => {
                    let f = read_signal(&path)?;
                    let fam = resolve_family(&family, config.as_ref())?;
                    let consts = ClassConstants { modulus: c_modulus, approximation: c_approx };
                    let rep = class_membership_report(&f, alpha, &omega, &fam, n_max, consts, gap)?;
                    println!("class {}", rep.class_tag);
                    println!("sup_modulus_ratio {} (within {c_modulus}: {})", fmt_float(rep.sup_modulus_ratio), rep.modulus_within);
                    println!(
                        "sup_approximation_ratio {} (within {c_approx}: {})",
                        fmt_float(rep.sup_approximation_ratio),
                        rep.approximation_within
                    );
                    println!("converse_applicable {}", rep.converse_applicable);
                    println!("note: finite-range evidence over n = 1..={n_max}");
                }
            }
        }
        Command::VerifyAll { out } => {
            let mut cfg = config.unwrap_or_else(RunConfig::new);
            if cfg.signals.is_empty() {
                cfg.signals = bundled_sources();
            }
            let report = run_suite(&cfg)?;
            let dir = match (std::env::var_os(OUTPUT_DIR_ENV), out) {
                (Some(d), _) if !d.is_empty() => PathBuf::from(d),
                (_, Some(o)) => o,
                _ => cfg.output_dir(),
            };
            for p in write_outputs(&report, &dir)? {
                eprintln!("wrote {}", p.display());
            }
            for e in &report.errors {
                eprintln!("error: {}: {}", e.signal, e.message);
            }
            for s in &report.skipped {
                eprintln!("skipped: {s}");
            }
            let sm = &report.summary;
            println!("{} checks, {} passed, {} failed, {} warnings", sm.total, sm.passed, sm.failed, sm.warnings);
            return Ok(ExitCode::from(report.exit_code() as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
