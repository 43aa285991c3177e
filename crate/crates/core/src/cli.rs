//! Command-line front end. Exit codes: 0 success, 1 a certificate or check
//! failed, 2 bad usage or parameters. Every failure writes one JSON
//! diagnostic line to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::achromatic::{achromatic_coloring, grundy_coloring};
use crate::bounds::{bounds_csv, bounds_table};
use crate::coloring::{verify_coloring, Check, Coloring, ColoringFile};
use crate::designs::{
    c4_free_one_factorization, construct_design_21_5_1, construct_kts, construct_one_factorization, construct_sts,
    verify_design, DesignFile, DEFAULT_SWAP_BUDGET,
};
use crate::error::Error;
use crate::geometry::{
    build_dv, convex_position_points, dv_achromatic_coloring, dvnk_lower_coloring, random_points, thrackle_max_edges,
    triangle_pair_check, PointSet,
};
use crate::graph::Graph;
use crate::kneser::KneserGraph;
use crate::oracle::{run_oracle, Param};
use crate::pseudo::{kneser_matching_coloring, psi_lower_coloring_seeded, psi_tight_coloring};

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "KNESER_THREADS";

#[derive(Parser, Debug)]
#[command(name = "kneser", version, about = "Complete colorings of Kneser graphs")]
pub struct Cli {
    /// Seed for every randomized search
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: $KNESER_THREADS, else all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a certified coloring and write it as JSON
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring file against a graph
    Verify {
        #[arg(long, value_enum, default_value_t = GraphKind::Kneser)]
        graph: GraphKind,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        coloring: PathBuf,
        /// Comma-separated: proper, complete, grundy, dominating
        #[arg(long, default_value = "proper,complete")]
        checks: String,
        /// Point set JSON for `--graph dv`
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Layout::Convex)]
        layout: Layout,
    },
    /// Bound formulas as CSV
    Bounds {
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 2)]
        k_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact value of a coloring parameter on K(n,k)
    Oracle {
        #[arg(long)]
        param: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Build and verify a block design
    Design {
        #[arg(long, value_enum)]
        kind: DesignKind,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Disjointness graphs of planar point sets
    Geom {
        #[arg(long, value_enum)]
        op: GeomOp,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_enum, default_value_t = Layout::Convex)]
        layout: Layout,
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a colored graph in another format
    Export {
        #[arg(long, default_value = "dot")]
        format: String,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Kn2Achromatic,
    Kn2PsiLower,
    Kn2PsiTight,
    Kn2Grundy,
    KneserMatching,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Kneser,
    Dv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Layout {
    Convex,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DesignKind {
    Sts,
    Kts,
    Plane,
    OneFactorization,
    C4Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeomOp {
    Points,
    DvColoring,
    Thrackle,
    Dvnk,
    TrianglePairs,
}

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Library(Error),
    Io(String),
    /// A requested check failed; the report is still written to stdout.
    Rejected(serde_json::Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 2,
            Failure::Rejected(_) => 1,
            Failure::Library(e) => match e {
                Error::Certificate(_) | Error::SearchExhausted(_) => 1,
                _ => 2,
            },
        }
    }

    pub fn diagnostic(&self) -> serde_json::Value {
        match self {
            Failure::Usage(m) => json!({"error": "usage", "message": m}),
            Failure::Io(m) => json!({"error": "io", "message": m}),
            Failure::Rejected(detail) => json!({"error": "verification_failed", "detail": detail}),
            Failure::Library(e) => {
                let kind = match e {
                    Error::Domain(_) => "domain",
                    Error::ForeignVertex(_) => "foreign_vertex",
                    Error::Coverage(_) => "coverage",
                    Error::Certificate(_) => "certificate",
                    Error::SearchExhausted(_) => "search_exhausted",
                    Error::Size(_) => "size",
                    Error::Shape(_) => "shape",
                    Error::GeneralPosition(_) => "general_position",
                };
                json!({"error": kind, "message": e.to_string()})
            }
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Output goes to `stdout` unless `--out` names a file.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let f = Failure::Usage(e.to_string());
            let _ = writeln!(stderr, "{}", f.diagnostic());
            return f.exit_code();
        }
    };
    let threads = match thread_count(cli.threads) {
        Ok(t) => t,
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.diagnostic());
            return f.exit_code();
        }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build();
    let result = match pool {
        Ok(pool) => pool.install(|| execute(&cli)),
        Err(e) => Err(Failure::Usage(format!("thread pool: {e}"))),
    };
    match result {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(f) => {
            if let Failure::Rejected(detail) = &f {
                let _ = writeln!(stdout, "{}", pretty(detail));
            }
            let _ = writeln!(stderr, "{}", f.diagnostic());
            f.exit_code()
        }
    }
}

/// `--threads`, else `KNESER_THREADS`, else 0 (one per core).
fn thread_count(flag: Option<usize>) -> std::result::Result<usize, Failure> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{THREADS_ENV}={v:?} is not a thread count"))),
        Err(_) => Ok(0),
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn need(value: Option<u32>, flag: &str) -> std::result::Result<u32, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required here")))
}

fn emit(text: String, out: &Option<PathBuf>) -> Outcome {
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> std::result::Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Library(Error::Shape(format!("{}: {e}", path.display()))))
}

fn point_set(n: Option<u32>, layout: Layout, points: &Option<PathBuf>, seed: u64) -> std::result::Result<PointSet, Failure> {
    if let Some(path) = points {
        return read_json(path);
    }
    let n = need(n, "n")? as usize;
    Ok(match layout {
        Layout::Convex => convex_position_points(n)?,
        Layout::Random => random_points(n, seed)?,
    })
}

fn execute(cli: &Cli) -> Outcome {
    let seed = cli.seed;
    match &cli.command {
        Command::Construct { family, n, k, out } => {
            let (g, c) = match family {
                Family::KneserMatching => kneser_matching_coloring(need(*k, "k")?)?,
                _ => {
                    let n = need(*n, "n")?;
                    let c = match family {
                        Family::Kn2Achromatic => achromatic_coloring(n)?,
                        Family::Kn2PsiLower => psi_lower_coloring_seeded(n, seed)?,
                        Family::Kn2PsiTight => psi_tight_coloring(n)?,
                        Family::Kn2Grundy => grundy_coloring(n)?,
                        Family::KneserMatching => unreachable!(),
                    };
                    (KneserGraph::new(n, 2)?, c)
                }
            };
            let file = ColoringFile::from_coloring(&g, g.n(), g.k(), &c)?;
            emit(pretty(&file), out)
        }
        Command::Verify { graph, n, k, coloring, checks, points, layout } => {
            let file: ColoringFile = read_json(coloring)?;
            if n.is_some_and(|n| n != file.n) || k.is_some_and(|k| k != file.k) {
                return Err(Failure::Usage(format!(
                    "coloring file is for K({},{}); flags ask for n={n:?}, k={k:?}",
                    file.n, file.k
                )));
            }
            let checks: Vec<Check> = checks.split(',').map(str::parse).collect::<Result<_, _>>()?;
            let c = file.to_coloring()?;
            let report = match graph {
                GraphKind::Kneser => verify_coloring(&KneserGraph::new(file.n, file.k)?, &c, &checks)?,
                GraphKind::Dv => {
                    let ps = point_set(Some(file.n), *layout, points, seed)?;
                    if ps.len() != file.n as usize {
                        return Err(Failure::Usage(format!("{} points for a coloring on n={}", ps.len(), file.n)));
                    }
                    verify_coloring(&build_dv(&ps, file.k)?, &c, &checks)?
                }
            };
            if report.passed() {
                Ok(pretty(&report))
            } else {
                Err(Failure::Rejected(serde_json::to_value(&report).expect("serializable")))
            }
        }
        Command::Bounds { n_max, k_max, out } => emit(bounds_csv(&bounds_table(*n_max, *k_max)?)?, out),
        Command::Oracle { param, n, k, cap } => {
            let param: Param = param.parse()?;
            Ok(pretty(&run_oracle(param, *n, *k, *cap)?))
        }
        Command::Design { kind, n, out } => {
            let file = match kind {
                DesignKind::Sts => {
                    let d = construct_sts(need(*n, "n")?)?;
                    let rep = verify_design(&d);
                    if !rep.passed() {
                        return Err(Failure::Rejected(serde_json::to_value(&rep).expect("serializable")));
                    }
                    DesignFile::from(&d)
                }
                DesignKind::Kts => {
                    let r = construct_kts(need(*n, "n")?)?;
                    r.verify().map_err(|m| Failure::Rejected(json!({"resolution": m})))?;
                    DesignFile::from(&r)
                }
                DesignKind::Plane => {
                    if n.is_some_and(|n| n != 21) {
                        return Err(Failure::Library(Error::Domain("the plane of order 4 has n = 21".into())));
                    }
                    let d = construct_design_21_5_1();
                    let rep = verify_design(&d);
                    if !rep.passed() {
                        return Err(Failure::Rejected(serde_json::to_value(&rep).expect("serializable")));
                    }
                    DesignFile::from(&d)
                }
                DesignKind::OneFactorization | DesignKind::C4Free => {
                    let order = need(*n, "n")?;
                    let f = if *kind == DesignKind::C4Free {
                        c4_free_one_factorization(order, seed, DEFAULT_SWAP_BUDGET)?
                    } else {
                        construct_one_factorization(order)?
                    };
                    f.verify().map_err(|m| Failure::Rejected(json!({"factorization": m})))?;
                    DesignFile::from(&f)
                }
            };
            emit(pretty(&file), out)
        }
        Command::Geom { op, n, k, layout, points, out } => {
            let ps = point_set(*n, *layout, points, seed)?;
            let text = match op {
                GeomOp::Points => pretty(&ps),
                GeomOp::Thrackle => pretty(&json!({"n": ps.len(), "max_edges": thrackle_max_edges(&ps)?})),
                GeomOp::TrianglePairs => {
                    let rep = triangle_pair_check(&ps)?;
                    if !rep.passed() {
                        return Err(Failure::Rejected(serde_json::to_value(&rep).expect("serializable")));
                    }
                    pretty(&rep)
                }
                GeomOp::DvColoring | GeomOp::Dvnk => {
                    let (k, c) = match op {
                        GeomOp::DvColoring => (2, dv_achromatic_coloring(&ps)?),
                        _ => {
                            let k = need(*k, "k")?;
                            (k, dvnk_lower_coloring(&ps, k)?)
                        }
                    };
                    let g = KneserGraph::new(ps.len() as u32, k)?;
                    let file = ColoringFile::from_coloring(&g, g.n(), k, &c)?;
                    pretty(&json!({"points": ps.points, "coloring": file}))
                }
            };
            emit(text, out)
        }
        Command::Export { format, coloring, out } => {
            if format != "dot" {
                return Err(Failure::Usage(format!("unknown export format {format:?}; only dot is supported")));
            }
            let file: ColoringFile = read_json(coloring)?;
            let c = file.to_coloring()?;
            let g = KneserGraph::new(file.n, file.k)?;
            emit(dot(&g, &c)?, out)
        }
    }
}

/// Graphviz text; each vertex carries its 1-based color.
pub fn dot(g: &KneserGraph, c: &Coloring) -> Result<String, Error> {
    let color = c.assignment(g.order())?;
    let mut s = format!("graph \"K({},{})\" {{\n", g.n(), g.k());
    for (v, col) in color.iter().enumerate() {
        s += &format!("  {v} [label=\"{}\", color={}];\n", g.vertex(v), col + 1);
    }
    for (u, v) in g.edges() {
        s += &format!("  {u} -- {v};\n");
    }
    s += "}\n";
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["kneser"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn parses_documented_invocations() {
        let cli = Cli::try_parse_from(["kneser", "construct", "--family", "kn2-achromatic", "--n", "13", "--out", "c.json"]).unwrap();
        assert!(matches!(cli.command, Command::Construct { family: Family::Kn2Achromatic, n: Some(13), .. }));
        let cli = Cli::try_parse_from([
            "kneser", "verify", "--graph", "kneser", "--n", "13", "--k", "2", "--coloring", "c.json", "--checks",
            "proper,complete,grundy",
        ])
        .unwrap();
        assert!(matches!(cli.command, Command::Verify { .. }));
        let cli = Cli::try_parse_from(["kneser", "oracle", "--param", "alpha", "--n", "5", "--k", "2"]).unwrap();
        assert!(matches!(cli.command, Command::Oracle { n: 5, k: 2, .. }));
    }

    #[test]
    fn exit_codes() {
        let (code, _, err) = call(&["construct", "--family", "nope", "--n", "5"]);
        assert_eq!(code, 2);
        assert!(err.contains("\"error\":\"usage\""));
        let (code, _, err) = call(&["construct", "--family", "kn2-psi-lower", "--n", "5"]);
        assert_eq!(code, 2);
        assert!(err.contains("\"error\":\"domain\""));
        let (code, out, _) = call(&["bounds", "--n-max", "10", "--k-max", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 10);
    }
}
