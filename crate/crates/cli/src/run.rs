use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use corona_core::corona::corona;
use corona_core::metrics::{
    kf_edge_corona_regular, kf_vertex_corona, kf_vertex_corona_regular, kirchhoff_oracle, resistance_oracle_with,
    CoronaResistance, KirchhoffResult, ResistanceMatrix,
};
use corona_core::report::{format_f64, serialize_f64, serialize_opt_f64, serialize_rows};
use corona_core::verify::{builtin_corpus, verify, CorpusPair};
use corona_core::{CoronaKind, Graph, Tolerances};
use clap::ValueEnum;
use serde::Serialize;

use crate::args::{BuildArgs, Command, Corpus, Format, Formula, Inputs, Kind, KirchhoffArgs, Method, OutputArgs, ResistanceArgs, VerifyArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: corona_core::Error },
    #[error("{0}")]
    Core(#[from] corona_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => ExitCode::from(2),
            CliError::Input { source, .. } | CliError::Core(source) => {
                if source.is_parse() {
                    ExitCode::from(2)
                } else if source.is_precondition() {
                    ExitCode::from(3)
                } else {
                    ExitCode::from(1)
                }
            }
        }
    }
}

/// How a command that ran to completion ended.
#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// Two computations that must agree did not.
    Mismatch(String),
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Build(a) => build(a),
        Command::Resistance(a) => resistance(a),
        Command::Kirchhoff(a) => kirchhoff(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Graph::parse_edge_list(&text).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn read_inputs(inputs: &Inputs) -> Result<(Graph, Graph), CliError> {
    Ok((read_graph(&inputs.g1)?, read_graph(&inputs.g2)?))
}

fn tolerances(over: Option<f64>) -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    if let Some(t) = over {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Usage(format!("--tolerance must be positive, got {t}")));
        }
        tol.entry = t;
        tol.residual = t;
    }
    Ok(tol)
}

fn write_to(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), CliError> {
    write_to(output.out.as_deref(), text)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn build(a: &BuildArgs) -> Result<Outcome, CliError> {
    let (g1, g2) = read_inputs(&a.inputs)?;
    let layout = corona(a.kind.into(), &g1, &g2)?;
    write_to(a.out.as_deref(), &layout.product.to_edge_list())?;
    let manifest = a.manifest.clone().or_else(|| {
        a.out.as_ref().map(|o| {
            let mut s = o.clone().into_os_string();
            s.push(".manifest.json");
            PathBuf::from(s)
        })
    });
    if let Some(path) = manifest {
        write_to(Some(&path), &to_json(&layout.manifest()))?;
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct ResistanceReport {
    kind: &'static str,
    method: &'static str,
    n: usize,
    #[serde(serialize_with = "serialize_rows")]
    resistance: Vec<Vec<f64>>,
    #[serde(serialize_with = "serialize_opt_f64")]
    deviation: Option<f64>,
}

fn resistance(a: &ResistanceArgs) -> Result<Outcome, CliError> {
    let (g1, g2) = read_inputs(&a.inputs)?;
    let tol = tolerances(a.tolerance)?;
    let layout = corona(a.kind.into(), &g1, &g2)?;
    let closed = || -> Result<ResistanceMatrix, CliError> {
        Ok(CoronaResistance::new(&layout, &tol)?.matrix()?)
    };
    let (matrix, deviation) = match a.method {
        Method::Oracle => (resistance_oracle_with(&layout.product, &tol)?, None),
        Method::ClosedForm => (closed()?, None),
        Method::Both => {
            let c = closed()?;
            let o = resistance_oracle_with(&layout.product, &tol)?;
            let d = c.max_abs_diff(&o);
            (c, Some(d))
        }
    };
    let method = match a.method {
        Method::Oracle => "oracle",
        Method::ClosedForm => "closed-form",
        Method::Both => "closed-form-vs-oracle",
    };
    let text = match a.output.format {
        Format::Json => to_json(&ResistanceReport {
            kind: CoronaKind::from(a.kind).label(),
            method,
            n: matrix.size(),
            resistance: matrix.matrix.to_rows(),
            deviation,
        }),
        Format::Csv => matrix_csv(&matrix),
    };
    emit(&a.output, &text)?;
    match deviation {
        Some(d) if d.is_nan() || d > tol.entry => Ok(Outcome::Mismatch(format!(
            "closed form and oracle differ by {} (tolerance {})",
            format_f64(d),
            format_f64(tol.entry)
        ))),
        Some(d) => {
            eprintln!("max deviation {}", format_f64(d));
            Ok(Outcome::Success)
        }
        None => Ok(Outcome::Success),
    }
}

fn matrix_csv(m: &ResistanceMatrix) -> String {
    let mut out = String::new();
    for row in m.matrix.to_rows() {
        let cells: Vec<String> = row.iter().map(|&x| format_f64(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct KirchhoffReport {
    kind: &'static str,
    method: &'static str,
    #[serde(serialize_with = "serialize_f64")]
    value: f64,
    #[serde(serialize_with = "serialize_f64")]
    oracle: f64,
    #[serde(serialize_with = "serialize_f64")]
    deviation: f64,
}

fn kirchhoff(a: &KirchhoffArgs) -> Result<Outcome, CliError> {
    let kind = match (a.formula.kind(), a.kind) {
        (Some(implied), Some(given)) if implied != given => {
            return Err(CliError::Usage(format!(
                "--formula {} applies to --kind {}, not {}",
                flag(a.formula),
                flag(implied),
                flag(given)
            )))
        }
        (Some(k), _) => k,
        (None, Some(k)) => k,
        (None, None) => Kind::Vertex,
    };
    let (g1, g2) = read_inputs(&a.inputs)?;
    let tol = tolerances(a.tolerance)?;
    let layout = corona(kind.into(), &g1, &g2)?;
    let result: KirchhoffResult = match a.formula {
        Formula::VertexGeneral => kf_vertex_corona(&g1, &g2, &tol)?,
        Formula::VertexRegular => kf_vertex_corona_regular(&g1, &g2, &tol)?,
        Formula::EdgeRegular => kf_edge_corona_regular(&g1, &g2, &tol)?,
        Formula::Oracle => kirchhoff_oracle(&layout.product, &tol)?,
    };
    let oracle = kirchhoff_oracle(&layout.product, &tol)?.value;
    let report = KirchhoffReport {
        kind: CoronaKind::from(kind).label(),
        method: result.method.label(),
        value: result.value,
        oracle,
        deviation: (result.value - oracle).abs(),
    };
    let text = match a.output.format {
        Format::Json => to_json(&report),
        Format::Csv => format!(
            "kind,method,value,oracle,deviation\n{},{},{},{},{}\n",
            report.kind,
            report.method,
            format_f64(report.value),
            format_f64(report.oracle),
            format_f64(report.deviation)
        ),
    };
    emit(&a.output, &text)?;
    if report.deviation <= tol.kirchhoff(oracle) {
        Ok(Outcome::Success)
    } else {
        Ok(Outcome::Mismatch(format!(
            "formula and oracle differ by {}",
            format_f64(report.deviation)
        )))
    }
}

fn flag(v: impl ValueEnum) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn file_stem(p: &Path) -> String {
    p.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| p.display().to_string())
}

fn verify_cmd(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let tol = tolerances(a.tolerance)?;
    let mut pairs = match a.corpus {
        Corpus::Builtin => builtin_corpus(),
        Corpus::None => Vec::new(),
    };
    for (k, chunk) in a.pair.chunks(2).enumerate() {
        let [p1, p2] = chunk else {
            return Err(CliError::Usage("--pair takes two paths".into()));
        };
        let id = format!("user{}:{}:{}", k + 1, file_stem(p1), file_stem(p2));
        pairs.push(CorpusPair::new(id, read_graph(p1)?, read_graph(p2)?));
    }
    if pairs.is_empty() {
        return Err(CliError::Usage("nothing to verify: use --corpus builtin or --pair".into()));
    }
    let report = verify(&pairs, &tol);
    let text = match a.output.format {
        Format::Json => report.to_json(),
        Format::Csv => {
            let mut s = String::from("pair,case,status,closed_form,oracle,deviation,tolerance,count\n");
            let opt = |x: Option<f64>| x.map(format_f64).unwrap_or_default();
            for p in &report.pairs {
                for c in &p.checks {
                    let status = serde_json::to_value(c.status).expect("status serializes");
                    s.push_str(&format!(
                        "{},{},{},{},{},{},{},{}\n",
                        p.pair,
                        c.case,
                        status.as_str().unwrap_or_default(),
                        opt(c.closed_form),
                        opt(c.oracle),
                        opt(c.deviation),
                        opt(c.tolerance),
                        c.count
                    ));
                }
            }
            s
        }
    };
    emit(&a.output, &text)?;
    if report.passed {
        Ok(Outcome::Success)
    } else {
        Ok(Outcome::Mismatch(format!("{} check(s) failed", report.failures)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_must_be_positive() {
        assert!(matches!(tolerances(Some(0.0)), Err(CliError::Usage(_))));
        assert!(matches!(tolerances(Some(f64::NAN)), Err(CliError::Usage(_))));
        let t = tolerances(Some(1e-6)).unwrap();
        assert_eq!((t.entry, t.residual), (1e-6, 1e-6));
    }

    #[test]
    fn exit_codes_by_error_class() {
        let parse = CliError::Core(corona_core::Error::Parse { line: 2, message: "x".into() });
        assert_eq!(parse.exit_code(), ExitCode::from(2));
        let pre = CliError::Core(corona_core::Error::NotRegular);
        assert_eq!(pre.exit_code(), ExitCode::from(3));
        let num = CliError::Core(corona_core::Error::NoConvergence(100));
        assert_eq!(num.exit_code(), ExitCode::from(1));
    }

    #[test]
    fn csv_matrix_rows() {
        let m = resistance_oracle_with(&Graph::complete(2), &Tolerances::default()).unwrap();
        assert_eq!(
            matrix_csv(&m),
            "0.0000000000000000e0,1.0000000000000000e0\n1.0000000000000000e0,0.0000000000000000e0\n"
        );
    }
}
