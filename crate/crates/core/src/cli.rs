//! Command-line front end.
//!
//! | exit | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | not PSD (witness printed) or certificate rejected |
//! | 2 | parse, I/O, usage or dimension error |
//! | 3 | no scalar certificate for some `a_i` |
//! | 4 | internal verification failure |
//! | 5 | matrix not diagonalizable |
//! | 6 | minimal polynomial has the wrong shape, or `b` is not invertible mod `p` |

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::exactarith::{four_squares_rational, parse_rational, BigRat};
use crate::matrixcert::{
    certificate_from_json, certificate_to_json, certify, verify_matrix_cert, CertError, CertifyOptions,
    VerifyOptions,
};
use crate::multipoly::{print_poly, VarSet};
use crate::polymatrix::{
    minimal_polynomial, parse_matrix_file, principal_minors, psd_sample_check, MatrixError, PsdReport,
    SymbolicMatrix,
};
use crate::scalarsos::{parse_store, CertStore};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SCALAR_UNAVAILABLE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_NOT_DIAGONALIZABLE: i32 = 5;
pub const EXIT_LEMMA: i32 = 6;

#[derive(Debug, Parser)]
#[command(name = "matsos", version, about = "Exact sum-of-squares certificates for PSD polynomial matrices")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Matrix file (`vars:`, `dim:`, `entry i j:` lines).
    #[arg(long = "input", global = true, value_name = "PATH")]
    pub input_path: Option<PathBuf>,
    /// Certificate JSON file.
    #[arg(long = "cert", global = true, value_name = "PATH")]
    pub cert_path: Option<PathBuf>,
    /// Store of user-supplied scalar certificates.
    #[arg(long = "store", global = true, value_name = "PATH")]
    pub store_path: Option<PathBuf>,
    /// Where `certify` writes the certificate.
    #[arg(long = "output", global = true, value_name = "PATH")]
    pub output_path: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and self-check a certificate for the input matrix.
    Certify,
    /// Check a certificate against the input matrix.
    Verify,
    /// Print the minimal polynomial coefficients a_d, ..., a_0.
    Minpoly,
    /// Print every principal minor.
    Minors,
    /// Look for a point where some principal minor is negative.
    CheckPsd,
    /// Write a nonnegative rational as a sum of four squares.
    FourSquares { value: String },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (program name first) and runs the command. Output goes to
/// `out`, diagnostics to `err`; the return value is the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &config.command {
        Command::Certify => cmd_certify(&config, out),
        Command::Verify => cmd_verify(&config, out),
        Command::Minpoly => cmd_minpoly(&config, out),
        Command::Minors => cmd_minors(&config, out),
        Command::CheckPsd => cmd_check_psd(&config, out),
        Command::FourSquares { value } => cmd_four_squares(value, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: Option<&Path>, flag: &str) -> Result<String, Failure> {
    let path = path.ok_or_else(|| Failure::new(EXIT_INPUT, format!("--{flag} is required")))?;
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_matrix(config: &RunConfig) -> Result<(VarSet, SymbolicMatrix), Failure> {
    let text = read(config.input_path.as_deref(), "input")?;
    parse_matrix_file(&text).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))
}

fn emit(out: &mut dyn Write, line: String) -> CmdResult {
    writeln!(out, "{line}").map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))
}

fn named_point(vars: &VarSet, point: &[BigRat]) -> String {
    let parts: Vec<String> = vars
        .names()
        .iter()
        .zip(point)
        .map(|(n, v)| format!("{n} = {v}"))
        .collect();
    parts.join(", ")
}

fn named_minor(minor: &[usize]) -> String {
    let idx: Vec<String> = minor.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", idx.join(","))
}

fn cert_failure(e: CertError, vars: &VarSet) -> Failure {
    let code = match &e {
        CertError::Input(_) => EXIT_INPUT,
        CertError::NotPsd { .. } => EXIT_REFUTED,
        CertError::NotDiagonalizable => EXIT_NOT_DIAGONALIZABLE,
        CertError::Lemma(_) | CertError::NotCoprime => EXIT_LEMMA,
        CertError::ScalarSosUnavailable { .. } => EXIT_SCALAR_UNAVAILABLE,
        CertError::MissingScalarCert(_) | CertError::VerificationFailed(_) => EXIT_INTERNAL,
    };
    let message = match &e {
        CertError::NotPsd { point, minor, value } => format!(
            "not PSD: principal minor {} = {value} at {}",
            named_minor(minor),
            named_point(vars, point)
        ),
        CertError::ScalarSosUnavailable { index, source } => {
            format!("no sum-of-squares certificate for a{index}: {source}")
        }
        other => other.to_string(),
    };
    Failure::new(code, message)
}

fn cmd_certify(config: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let (vars, a) = load_matrix(config)?;
    let store = match &config.store_path {
        None => CertStore::default(),
        Some(p) => {
            let text = read(Some(p), "store")?;
            parse_store(&text, &vars).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", p.display())))?
        }
    };
    let options = CertifyOptions {
        samples: config.samples,
        seed: config.seed,
    };
    let cert = certify(&a, &vars, &store, options).map_err(|e| cert_failure(e, &vars))?;
    if let Some(path) = &config.output_path {
        fs::write(path, certificate_to_json(&cert))
            .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    }
    emit(out, format!("d = {}", cert.minpoly.degree()))?;
    emit(out, format!("square_count = {}", cert.square_count))?;
    emit(out, format!("providers: {}", cert.provider_summary()))
}

fn cmd_verify(config: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let (vars, a) = load_matrix(config)?;
    let text = read(config.cert_path.as_deref(), "cert")?;
    let cert = certificate_from_json(&text).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
    if cert.dim != a.dim() || cert.vars != vars {
        return Err(Failure::new(
            EXIT_INPUT,
            format!(
                "certificate is {}x{} over ({}), matrix is {}x{} over ({})",
                cert.dim,
                cert.dim,
                cert.vars,
                a.dim(),
                a.dim(),
                vars
            ),
        ));
    }
    let options = VerifyOptions {
        scalar_certs: true,
        ..VerifyOptions::default()
    };
    let report = verify_matrix_cert(&a, &cert, options);
    if !report.passed() {
        return Err(Failure::new(EXIT_REFUTED, report.to_string()));
    }
    emit(out, format!("verified: {} squares", cert.squares.len()))
}

fn cmd_minpoly(config: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let (vars, a) = load_matrix(config)?;
    let mp = minimal_polynomial(&a).map_err(|e| match e {
        MatrixError::NotDiagonalizable => Failure::new(EXIT_NOT_DIAGONALIZABLE, e.to_string()),
        other => Failure::new(EXIT_INPUT, other.to_string()),
    })?;
    let d = mp.degree();
    emit(out, format!("d = {d}"))?;
    for i in (0..d).rev() {
        emit(out, format!("a{i} = {}", print_poly(&mp.coeff(i), &vars)))?;
    }
    Ok(())
}

fn cmd_minors(config: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let (vars, a) = load_matrix(config)?;
    let minors = principal_minors(&a).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
    for (idx, m) in minors {
        emit(out, format!("{} = {}", named_minor(&idx), print_poly(&m, &vars)))?;
    }
    Ok(())
}

fn cmd_check_psd(config: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let (vars, a) = load_matrix(config)?;
    a.require_symmetric().map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
    match psd_sample_check(&a, config.samples, config.seed).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))? {
        PsdReport::Pass { samples } => emit(out, format!("no negative principal minor at {samples} sample points")),
        PsdReport::Refuted { point, minor, value } => Err(Failure::new(
            EXIT_REFUTED,
            format!(
                "not PSD: principal minor {} = {value} at {}",
                named_minor(&minor),
                named_point(&vars, &point)
            ),
        )),
    }
}

fn cmd_four_squares(value: &str, out: &mut dyn Write) -> CmdResult {
    let q = parse_rational(value).map_err(|e| Failure::new(EXIT_INPUT, format!("`{value}`: {e}")))?;
    let fs = four_squares_rational(&q).map_err(|e| Failure::new(EXIT_INPUT, format!("`{value}`: {e}")))?;
    emit(out, format!("{q} = {fs}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("matsos").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn four_squares_output() {
        assert_eq!(run_capture(&["four-squares", "7"]), (0, "7 = 2^2 + 1^2 + 1^2 + 1^2\n".into(), String::new()));
        assert_eq!(run_capture(&["four-squares", "-1"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["four-squares", "abc"]).0, EXIT_INPUT);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["bogus"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["minpoly"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }
}
