//! sqdisc: exact discriminants of integer polynomials, certified
//! square-discriminant root approximation, and root-cloud renders.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 computation error. Identical argv always yields identical stdout
//! bytes and identical output files.

mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use sqdisc_core::{
    approximate_square_disc, discriminant, find_all_roots, rasterize, resultant, write_artifacts,
    ApproxCertificate, CoeffSet, Complex64, ConstructionCase, IntPolynomial, RenderConfig,
};

#[derive(Parser)]
#[command(
    name = "sqdisc",
    version,
    about = "Exact discriminants, square-discriminant root certification, and root-cloud atlases \
             for polynomials with constrained integer coefficients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact discriminant of a polynomial and whether it is a
    /// perfect square (zero counts as square).
    Disc {
        /// Coefficients, constant term first, e.g. 1,-1,1 for 1 - X + X^2
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        poly: IntPolynomial,
    },
    /// Print the exact resultant of two polynomials.
    Resultant {
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        f: IntPolynomial,
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        g: IntPolynomial,
    },
    /// Approximate a chosen root of a polynomial by a root of a
    /// square-discriminant polynomial over the given coefficient set, and
    /// write a verifiable certificate.
    Approx {
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        poly: IntPolynomial,
        /// Index into the roots sorted by (|z| ascending, arg ascending).
        /// Roots outside the open unit disk are targeted via the reversed
        /// polynomial; the certificate records the inversion.
        #[arg(long)]
        root_index: usize,
        /// Required approximation accuracy (> 0)
        #[arg(long)]
        eps: f64,
        /// Coefficient set: pm1, zo, zpm1, or a comma list like -2,-1,1,2
        #[arg(long, value_parser = parse_set)]
        set: CoeffSet,
        /// Construction to use: auto, i (negation-closed), ii
        /// (multiplication-closed), iii ({-1,1} run insertion)
        #[arg(long, default_value = "auto", value_parser = parse_case)]
        case: CaseChoice,
        /// Certificate output path
        #[arg(long)]
        out: PathBuf,
    },
    /// Render the root cloud of every polynomial over a coefficient set up
    /// to a degree bound: PPM image plus CSV of classified roots.
    Render {
        #[arg(long, value_parser = parse_set)]
        set: CoeffSet,
        #[arg(long)]
        max_degree: usize,
        /// PPM image output path
        #[arg(long)]
        out: PathBuf,
        /// CSV output path
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value_t = 512)]
        width: usize,
        #[arg(long, default_value_t = 512)]
        height: usize,
        /// Window center as re,im
        #[arg(long, default_value = "0,0", value_parser = parse_center, allow_hyphen_values = true)]
        center: Complex64,
        #[arg(long, default_value_t = 2.0)]
        half_width: f64,
        /// Render only the square-discriminant channel instead of the red
        /// overlay on the full cloud
        #[arg(long)]
        square_only: bool,
    },
    /// Re-check every invariant of a certificate written by approx.
    /// Exit 0 iff all pass.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Run the built-in property suites on fixed seeds.
    Selftest,
}

#[derive(Clone)]
struct CaseChoice(Option<ConstructionCase>);

fn parse_poly(s: &str) -> Result<IntPolynomial, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_set(s: &str) -> Result<CoeffSet, String> {
    let r = match s {
        "pm1" => CoeffSet::new([-1, 1]),
        "zo" => CoeffSet::new([0, 1]),
        "zpm1" => CoeffSet::new([-1, 0, 1]),
        _ => CoeffSet::parse_list(s),
    };
    r.map_err(|e| format!("{e}"))
}

fn parse_case(s: &str) -> Result<CaseChoice, String> {
    match s {
        "auto" => Ok(CaseChoice(None)),
        "i" => Ok(CaseChoice(Some(ConstructionCase::Negation))),
        "ii" => Ok(CaseChoice(Some(ConstructionCase::Multiplicative))),
        "iii" => Ok(CaseChoice(Some(ConstructionCase::PlusMinusOne))),
        _ => Err("expected one of: auto, i, ii, iii".into()),
    }
}

fn parse_center(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or("expected re,im")?;
    let re: f64 = re.trim().parse().map_err(|e| format!("real part: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("imaginary part: {e}"))?;
    if !(re.is_finite() && im.is_finite()) {
        return Err("center must be finite".into());
    }
    Ok(Complex64::new(re, im))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}

const USAGE: u8 = 2;

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Disc { poly } => {
            eprintln!("config: disc poly={poly}");
            let d = discriminant(&poly)?;
            println!("{}", d.value);
            println!("square: {}", d.is_square);
            Ok(ExitCode::SUCCESS)
        }
        Command::Resultant { f, g } => {
            eprintln!("config: resultant f={f} g={g}");
            println!("{}", resultant(&f, &g)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Approx { poly, root_index, eps, set, case, out } => {
            let case_name = case.0.map_or("auto", |c| c.name());
            eprintln!(
                "config: approx poly={poly} root-index={root_index} eps={eps} set={} case={case_name} out={}",
                set.to_list_string(),
                out.display()
            );
            let roots = find_all_roots(&poly)?;
            let mut sorted = roots.roots().to_vec();
            sorted.sort_by(|a, b| {
                (a.norm(), a.arg()).partial_cmp(&(b.norm(), b.arg())).expect("finite roots")
            });
            let Some(&picked) = sorted.get(root_index) else {
                eprintln!(
                    "error: root index {root_index} out of range for degree {} polynomial",
                    sorted.len()
                );
                return Ok(ExitCode::from(USAGE));
            };
            let (f_used, target, inverted) = if picked.norm() >= 1.0 {
                let reversed = poly
                    .reverse()
                    .context("cannot invert a root of a polynomial divisible by X")?;
                (reversed, picked.finv(), true)
            } else {
                (poly, picked, false)
            };
            let mut cert = approximate_square_disc(&f_used, target, eps, &set, case.0)?;
            cert.inverted = inverted;
            let doc = cert.to_document();
            std::fs::write(&out, &doc)
                .with_context(|| format!("writing certificate to {}", out.display()))?;
            print!("{doc}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Render {
            set,
            max_degree,
            out,
            csv,
            width,
            height,
            center,
            half_width,
            square_only,
        } => {
            let mut config = RenderConfig::new(set, max_degree, center, half_width, width, height)?;
            config.square_only = square_only;
            eprintln!(
                "config: render set={} max-degree={max_degree} width={width} height={height} \
                 center={},{} half-width={half_width} square-only={square_only} out={} csv={}",
                config.set.to_list_string(),
                center.re,
                center.im,
                out.display(),
                csv.display()
            );
            let (raster, records, skipped) = rasterize(&config)?;
            write_artifacts(&config, &raster, &records, &out, &csv)?;
            let polynomials =
                sqdisc_core::enumerate_polynomials(&config.set, config.max_degree).count();
            println!("polynomials = {polynomials}");
            println!("roots = {}", records.len());
            println!("skipped = {skipped}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { cert } => {
            eprintln!("config: verify cert={}", cert.display());
            let text = std::fs::read_to_string(&cert)
                .with_context(|| format!("reading certificate {}", cert.display()))?;
            let parsed = match ApproxCertificate::parse(&text) {
                Ok(parsed) => parsed,
                Err(err) => {
                    println!("invalid certificate: {err}");
                    return Ok(ExitCode::from(1));
                }
            };
            let violations = parsed.verify();
            if violations.is_empty() {
                println!("certificate ok");
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &violations {
                    println!("violation: {v}");
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Selftest => {
            eprintln!("config: selftest");
            if selftest::run_all() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}
