//! Command line front end: spectra of single graphs, family instantiation,
//! exhaustive enumeration, characterization verification, and the open-case
//! scan.
//!
//! Exit codes: 0 success (and verdict "equal"), 1 failed verdict or failed
//! exact confirmation, 2 usage and parse problems (including running a
//! characterization below its starting order), 3 violated domain
//! preconditions (disconnected input, family constraints), 4 incomplete
//! input data.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dlspec::enumerate::{enumerate_connected, EnumError, GraphStream};
use dlspec::family::{FamilyError, FamilySpec};
use dlspec::graph::Graph;
use dlspec::spectral::{
    distance_matrix, exact_integer_multiplicity, format_eigenvalue, laplacian,
    numeric_spectrum_with_tol, IntegerSymmetricMatrix, SpectrumNumeric, INTEGER_SNAP_TOL,
};
use dlspec::verify::{
    case_of, classify_with, explore_open_cases, verify_theorem, MultiplicityProfile, TheoremId,
    Verdict, VerifyError, VerifyOptions,
};
use dlspec::{canonical_form, distance_laplacian};

#[derive(Parser)]
#[command(
    name = "dlspec",
    version,
    about = "Distance Laplacian spectra of small connected graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format. Not every command supports csv.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Write the output to a file instead of stdout.
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Absolute eigenvalue grouping tolerance. Defaults to a tolerance
    /// scaled to the spectral radius; the DLSPEC_TOL environment variable
    /// supplies a fallback value.
    #[arg(long, global = true, value_name = "EPS")]
    tol: Option<f64>,

    /// Worker threads for the scanning commands. Defaults to all cores.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the spectrum of one graph supplied in graph6 form.
    Spectrum {
        /// The graph, graph6 encoded.
        #[arg(long, value_name = "G6")]
        graph6: String,
        /// Which matrix to use.
        #[arg(long, value_enum, default_value_t = MatrixKind::Dl)]
        matrix: MatrixKind,
        /// Confirm the multiplicity of every integer eigenvalue by exact
        /// rank computation; fails (exit 1) on any disagreement.
        #[arg(long)]
        exact_int: bool,
    },
    /// Scan all connected graphs of an order and compare the set realizing
    /// a characterization's spectrum shape against its predicted families.
    Verify {
        /// Characterization to check: t31a, t31b, t41, t42a, t42b, t42c.
        #[arg(long)]
        theorem: TheoremId,
        /// Order to scan.
        #[arg(long)]
        n: usize,
        /// Read the graphs from a graph6 file (one per line) instead of
        /// generating them. The file must cover every connected class.
        #[arg(long, value_name = "PATH")]
        corpus: Option<PathBuf>,
        /// Run below the characterization's claimed starting order.
        #[arg(long)]
        force: bool,
    },
    /// Build a named family instance and print its graph6 form.
    Family {
        /// Family identifier, e.g. F13 or F13:SK_n_4_plus_e.
        #[arg(long)]
        id: String,
        /// Order, for families parameterized by it.
        #[arg(long)]
        n: Option<usize>,
        /// Part sizes for the complete multipartite family, e.g. 3,2,1.
        #[arg(long, value_delimiter = ',', value_name = "SIZES")]
        parts: Option<Vec<usize>>,
        /// Independent set size for the complete split family.
        #[arg(long)]
        alpha: Option<usize>,
        /// Clique size for the kite.
        #[arg(long)]
        omega: Option<usize>,
    },
    /// List all connected graphs of an order, one graph6 line each.
    Enumerate {
        /// Order to enumerate (1 through 9).
        #[arg(long)]
        n: usize,
    },
    /// Scan an order for graphs whose largest eigenvalue group has
    /// multiplicity n - 4 in a configuration no characterization covers.
    ExploreOpen {
        /// Order to scan.
        #[arg(long)]
        n: usize,
        /// Read the graphs from a graph6 file instead of generating them.
        #[arg(long, value_name = "PATH")]
        corpus: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    /// Distance Laplacian.
    Dl,
    /// Laplacian.
    L,
    /// Distance matrix.
    D,
}

impl MatrixKind {
    fn as_str(self) -> &'static str {
        match self {
            MatrixKind::Dl => "dl",
            MatrixKind::L => "l",
            MatrixKind::D => "d",
        }
    }
}

/// A command failure: exit code plus message for stderr.
struct Failure(u8, String);

impl Failure {
    fn usage(msg: impl Into<String>) -> Failure {
        Failure(2, msg.into())
    }

    fn domain(msg: impl Into<String>) -> Failure {
        Failure(3, msg.into())
    }
}

fn enum_error_failure(e: EnumError) -> Failure {
    let code = match &e {
        EnumError::CorpusDisconnected { .. } => 3,
        _ => 2,
    };
    Failure(code, e.to_string())
}

fn verify_error_failure(e: VerifyError) -> Failure {
    match e {
        VerifyError::BelowThreshold { .. } => Failure(2, e.to_string()),
        VerifyError::IncompleteCorpus { .. } => Failure(4, e.to_string()),
        VerifyError::Enum(inner) => enum_error_failure(inner),
    }
}

fn family_error_failure(e: FamilyError) -> Failure {
    match e {
        FamilyError::Constraint { .. } => Failure(3, e.to_string()),
        FamilyError::UnknownId(_) | FamilyError::MissingParam { .. } => Failure(2, e.to_string()),
    }
}

fn effective_tol(cli_tol: Option<f64>) -> Result<Option<f64>, Failure> {
    let tol = match cli_tol {
        Some(t) => Some(t),
        None => match std::env::var("DLSPEC_TOL") {
            Ok(raw) => Some(
                raw.trim()
                    .parse::<f64>()
                    .map_err(|e| Failure::usage(format!("DLSPEC_TOL {raw:?}: {e}")))?,
            ),
            Err(std::env::VarError::NotPresent) => None,
            Err(e) => return Err(Failure::usage(format!("DLSPEC_TOL: {e}"))),
        },
    };
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Failure::usage(format!(
                "grouping tolerance must be a positive number, got {t}"
            )));
        }
    }
    Ok(tol)
}

fn load_stream(n: usize, corpus: Option<&Path>) -> Result<GraphStream, Failure> {
    match corpus {
        Some(path) => GraphStream::from_corpus(path, n).map_err(enum_error_failure),
        None => GraphStream::generated(n).map_err(enum_error_failure),
    }
}

fn spectrum_json(spectrum: &SpectrumNumeric) -> serde_json::Value {
    serde_json::json!(spectrum.entries())
}

fn csv_spectrum_cell(spectrum: &SpectrumNumeric) -> String {
    spectrum
        .entries()
        .iter()
        .map(|&(v, m)| {
            let value = format_eigenvalue(v);
            if m > 1 {
                format!("{value}^{m}")
            } else {
                value
            }
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn profile_csv_row(graph6: &str, profile: &MultiplicityProfile, case: Option<&str>) -> String {
    format!(
        "{graph6},{},{},{},{},{}",
        profile.order,
        csv_spectrum_cell(&profile.spectrum),
        profile.m_radius,
        profile.m_n_exact,
        case.unwrap_or("")
    )
}

const CSV_HEADER: &str = "graph6,n,spectrum,m_partial1,m_n_exact,case_label";

fn cmd_spectrum(
    graph6: &str,
    matrix: MatrixKind,
    exact_int: bool,
    format: Format,
    tol: Option<f64>,
) -> Result<String, Failure> {
    let g = Graph::from_graph6(graph6).map_err(|e| Failure::usage(format!("graph6: {e}")))?;
    let m: IntegerSymmetricMatrix = match matrix {
        MatrixKind::Dl => distance_laplacian(&g).map_err(|e| Failure::domain(e.to_string()))?,
        MatrixKind::L => laplacian(&g),
        MatrixKind::D => distance_matrix(&g).map_err(|e| Failure::domain(e.to_string()))?,
    };
    let spectrum = numeric_spectrum_with_tol(&m, tol)
        .map_err(|e| Failure::domain(e.to_string()))?;

    // Exact confirmation: every integer-snapped group must have its numeric
    // multiplicity reproduced by exact rank computation.
    let mut all_integer = true;
    let mut mismatches = Vec::new();
    if exact_int {
        for &(v, mult) in spectrum.entries() {
            if (v - v.round()).abs() <= INTEGER_SNAP_TOL {
                let exact = exact_integer_multiplicity(&m, v.round() as i64);
                if exact != mult {
                    mismatches.push((v.round() as i64, mult, exact));
                }
            } else {
                all_integer = false;
            }
        }
        if !mismatches.is_empty() {
            let detail: Vec<String> = mismatches
                .iter()
                .map(|(v, num, ex)| format!("{v} grouped as x{num} but exact rank gives x{ex}"))
                .collect();
            return Err(Failure(1, format!("exact confirmation failed: {}", detail.join("; "))));
        }
    }
    let confirmed = exact_int && all_integer;

    Ok(match format {
        Format::Plain => {
            if confirmed {
                format!("{spectrum} (exact)")
            } else {
                spectrum.to_string()
            }
        }
        Format::Json => {
            let value = serde_json::json!({
                "graph6": graph6,
                "n": g.order(),
                "matrix": matrix.as_str(),
                "spectrum": spectrum_json(&spectrum),
                "exact_confirmed": if exact_int { serde_json::json!(confirmed) } else { serde_json::Value::Null },
            });
            serde_json::to_string_pretty(&value).expect("reports serialize")
        }
        Format::Csv => {
            if !matches!(matrix, MatrixKind::Dl) {
                return Err(Failure::usage(
                    "csv output is defined for the distance Laplacian only",
                ));
            }
            let profile = classify_with(&g, tol);
            let case = case_of(&profile).map(|c| c.as_str());
            format!("{CSV_HEADER}\n{}", profile_csv_row(graph6, &profile, case))
        }
    })
}

fn cmd_verify(
    theorem: TheoremId,
    n: usize,
    corpus: Option<&Path>,
    force: bool,
    format: Format,
    tol: Option<f64>,
) -> Result<(String, u8), Failure> {
    let stream = load_stream(n, corpus)?;
    let options = VerifyOptions { tol, force };
    let report = verify_theorem(theorem, &stream, &options).map_err(verify_error_failure)?;
    let code = if report.verdict == Verdict::Equal { 0 } else { 1 };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize"),
        Format::Plain => {
            let mut lines = vec![format!(
                "theorem {} at n = {}: scanned {} classes, {} satisfying, {} predicted",
                report.theorem,
                report.n,
                report.counts.scanned,
                report.counts.satisfying,
                report.counts.predicted
            )];
            for f in &report.families {
                lines.push(format!("  family {} -> {}", f.id, f.graph6));
            }
            for c in &report.counterexamples {
                let cell = c
                    .spectrum
                    .iter()
                    .map(|&(v, m)| {
                        let value = format_eigenvalue(v);
                        if m > 1 {
                            format!("{value}^{m}")
                        } else {
                            value
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(", ");
                lines.push(format!("  counterexample {} with spectrum {}", c.graph6, cell));
            }
            lines.push(format!(
                "verdict: {}",
                if report.verdict == Verdict::Equal { "equal" } else { "not_equal" }
            ));
            lines.join("\n")
        }
        Format::Csv => {
            return Err(Failure::usage(
                "csv output is not defined for verify; use json or plain",
            ))
        }
    };
    Ok((text, code))
}

fn cmd_family(
    id: &str,
    n: Option<usize>,
    parts: Option<Vec<usize>>,
    alpha: Option<usize>,
    omega: Option<usize>,
    format: Format,
) -> Result<String, Failure> {
    let spec = FamilySpec::from_cli(id, n, parts, alpha, omega).map_err(family_error_failure)?;
    let g = spec.instantiate().map_err(family_error_failure)?;
    // Canonical form where the order permits it; the deterministic
    // constructed labeling otherwise.
    let (graph6, canonical) = match canonical_form(&g) {
        Ok(form) => (form.into_string(), true),
        Err(_) => (g.to_graph6(), false),
    };
    Ok(match format {
        Format::Plain => graph6,
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "id": spec.id(),
            "n": g.order(),
            "graph6": graph6,
            "canonical": canonical,
        }))
        .expect("reports serialize"),
        Format::Csv => {
            return Err(Failure::usage(
                "csv output is not defined for family; use json or plain",
            ))
        }
    })
}

fn cmd_enumerate(n: usize, format: Format) -> Result<String, Failure> {
    let graphs = enumerate_connected(n).map_err(enum_error_failure)?;
    Ok(match format {
        Format::Plain => {
            let lines: Vec<String> = graphs.iter().map(|g| g.to_graph6()).collect();
            lines.join("\n")
        }
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "n": n,
            "count": graphs.len(),
            "graphs": graphs.iter().map(|g| g.to_graph6()).collect::<Vec<_>>(),
        }))
        .expect("reports serialize"),
        Format::Csv => {
            return Err(Failure::usage(
                "csv output is not defined for enumerate; use json or plain",
            ))
        }
    })
}

fn cmd_explore_open(
    n: usize,
    corpus: Option<&Path>,
    format: Format,
    tol: Option<f64>,
) -> Result<String, Failure> {
    let stream = load_stream(n, corpus)?;
    let options = VerifyOptions { tol, force: false };
    let rows = explore_open_cases(&stream, &options).map_err(verify_error_failure)?;
    Ok(match format {
        Format::Csv => {
            let mut lines = vec![CSV_HEADER.to_string()];
            for row in &rows {
                lines.push(profile_csv_row(&row.graph6, &row.profile, Some(row.case.as_str())));
            }
            lines.join("\n")
        }
        Format::Plain => {
            if rows.is_empty() {
                format!("no open configurations at n = {n}")
            } else {
                rows.iter()
                    .map(|row| {
                        format!(
                            "{} case={} spectrum={} m_n={}",
                            row.graph6,
                            row.case.as_str(),
                            row.profile.spectrum,
                            row.profile.m_n_exact
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            }
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "graph6": row.graph6,
                        "n": row.profile.order,
                        "spectrum": spectrum_json(&row.profile.spectrum),
                        "m_partial1": row.profile.m_radius,
                        "m_n_exact": row.profile.m_n_exact,
                        "case": row.case.as_str(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&serde_json::json!(items)).expect("reports serialize")
        }
    })
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    let mut content = text.to_string();
    if !content.ends_with('\n') {
        content.push('\n');
    }
    match output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::usage(format!("writing {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            match out.write_all(content.as_bytes()).and_then(|()| out.flush()) {
                Ok(()) => Ok(()),
                // A consumer like `head` closing the pipe early is a normal
                // way for a run to end, not an error.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(e) => Err(Failure::usage(format!("writing output: {e}"))),
            }
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::usage(format!("thread pool: {e}")))?;
    }
    let tol = effective_tol(cli.tol)?;
    let (text, code) = match cli.command {
        Command::Spectrum { ref graph6, matrix, exact_int } => {
            (cmd_spectrum(graph6, matrix, exact_int, cli.format, tol)?, 0)
        }
        Command::Verify { theorem, n, ref corpus, force } => {
            cmd_verify(theorem, n, corpus.as_deref(), force, cli.format, tol)?
        }
        Command::Family { ref id, n, ref parts, alpha, omega } => {
            (cmd_family(id, n, parts.clone(), alpha, omega, cli.format)?, 0)
        }
        Command::Enumerate { n } => (cmd_enumerate(n, cli.format)?, 0),
        Command::ExploreOpen { n, ref corpus } => {
            (cmd_explore_open(n, corpus.as_deref(), cli.format, tol)?, 0)
        }
    };
    emit(cli.output.as_deref(), &text)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
