//! The `morsecraft` command line. Exit codes: 0 success, 1 error or a
//! proven negative answer, 2 search budget exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::assembly::{build_local_construction, compose_boundary_critical, glue, handle_pipeline};
use crate::complex::{SimplicialComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::homology::betti_gf2;
use crate::io::{self, MatchingCertificate};
use crate::lift::lift_matching;
use crate::morse::{
    collapse_depth, collapses_onto, is_lc, optimal_morse, random_boundary_critical, random_morse, MorseMatching,
    Outcome, SearchBudget,
};
use crate::simplex::Simplex;
use crate::subdivision::{bistellar_flip, derived_subdivision, star_face};

#[derive(Parser, Debug)]
#[command(name = "morsecraft", version, about = "Discrete Morse matchings, collapses and subdivisions")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunFlags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunFlags {
    /// Node expansions allowed per exhaustive search.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Random restarts before exhaustive search.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=100_000))]
    pub restarts: u32,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
}

impl RunFlags {
    fn search_budget(&self) -> SearchBudget {
        SearchBudget::default().with_nodes(self.budget).with_restarts(self.restarts).with_seed(self.seed)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// f-vector, Betti numbers and manifold checks.
    Info { file: PathBuf },
    /// A Morse matching: random restarts, or exhaustive with --exhaustive.
    Morse {
        file: PathBuf,
        #[arg(long)]
        exhaustive: bool,
        /// Keep every boundary face critical.
        #[arg(long)]
        boundary_critical: bool,
    },
    /// An elementary collapse sequence onto a subcomplex (default: the smallest vertex).
    Collapse {
        file: PathBuf,
        #[arg(long)]
        onto: Option<PathBuf>,
    },
    /// Collapse depth with its certificate.
    Cdepth {
        file: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Local constructibility certificate (depth at least 2).
    Lc { file: PathBuf },
    /// Derived subdivision (--derived N) or starring of one face (--star FACE).
    Subdivide {
        file: PathBuf,
        #[arg(long, conflicts_with = "star", value_parser = clap::value_parser!(u32).range(0..=6))]
        derived: Option<u32>,
        #[arg(long)]
        star: Option<Simplex>,
        /// Where to write the subdivision map JSON.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Bistellar flip replacing star(s) = s * ∂t by ∂s * t.
    Flip { file: PathBuf, s: Simplex, t: Simplex },
    /// Lifts a matching through the starring of a face.
    Lift {
        file: PathBuf,
        matching: PathBuf,
        face: Simplex,
        /// Where to write the subdivided complex.
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Glues two complexes along boundary parts.
    Glue { spec: PathBuf },
    /// Combines boundary-critical matchings on two pieces and their interface.
    Compose {
        spec: PathBuf,
        f: PathBuf,
        g: PathBuf,
        h: PathBuf,
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Builds a complex from a local construction trace.
    BuildLc { trace: PathBuf },
    /// Boundary-critical matching from a handle decomposition.
    Pipeline {
        decomposition: PathBuf,
        #[arg(long)]
        complex: Option<PathBuf>,
    },
}

/// What a command produced: the text for the main output, plus whether
/// the answer was conclusive.
enum Done {
    Output(String),
    Inconclusive(String),
    Negative(String),
}

#[derive(Serialize)]
struct InfoReport {
    dim: isize,
    facets: usize,
    f_vector: Vec<usize>,
    euler: i64,
    betti: Vec<usize>,
    pure: bool,
    pseudomanifold: bool,
    manifold: bool,
    closed: Option<bool>,
    problems: Vec<String>,
    complex_hash: String,
}

#[derive(Serialize)]
struct DepthOutput {
    depth: usize,
    exact: bool,
    c_int: Option<Vec<usize>>,
}

fn certificate_json(v: &MorseMatching) -> Result<String> {
    let cert = MatchingCertificate::from_matching(v)?;
    // reload as a consumer would before anything leaves the process
    cert.to_matching(v.complex())?;
    io::to_json(&cert)
}

fn load_matching(path: &Path, k: &SimplicialComplex) -> Result<MorseMatching> {
    io::read_json::<MatchingCertificate>(path)?.to_matching(k)
}

fn write_side(path: &Path, text: &str) -> Result<()> {
    Ok(std::fs::write(path, text)?)
}

fn outcome_text<T>(o: Outcome<T>, what: &str, f: impl FnOnce(T) -> Result<String>) -> Result<Done> {
    Ok(match o {
        Outcome::Found(t) => Done::Output(f(t)?),
        Outcome::Impossible => Done::Negative(format!("{what}: proven impossible")),
        Outcome::Inconclusive => Done::Inconclusive(format!("{what}: search budget exhausted")),
    })
}

fn execute(cmd: &Command, flags: &RunFlags) -> Result<Done> {
    let budget = flags.search_budget();
    match cmd {
        Command::Info { file } => {
            let k = io::read_facets(file)?;
            let report = k.manifold_check()?;
            let pseudo = k.is_pseudomanifold();
            let info = InfoReport {
                dim: k.dim(),
                facets: k.facets().len(),
                f_vector: k.f_vector()?,
                euler: k.euler_characteristic()?,
                betti: betti_gf2(&k)?,
                pure: k.is_pure(),
                pseudomanifold: pseudo,
                manifold: report.passes(),
                closed: if pseudo { Some(k.boundary_subcomplex()?.is_empty()) } else { None },
                problems: report.problems.clone(),
                complex_hash: io::complex_hash(&k),
            };
            Ok(Done::Output(io::to_json(&info)?))
        }
        Command::Morse { file, exhaustive, boundary_critical } => {
            let k = io::read_facets(file)?;
            if *exhaustive && *boundary_critical {
                return Err(Error::InvalidArgument("--exhaustive and --boundary-critical are exclusive".into()));
            }
            if *exhaustive {
                let (v, complete) = optimal_morse(&k, &budget)?;
                let text = certificate_json(&v)?;
                if complete {
                    Ok(Done::Output(text))
                } else {
                    Ok(Done::Inconclusive(text))
                }
            } else if *boundary_critical {
                Ok(Done::Output(certificate_json(&random_boundary_critical(&k, flags.seed, flags.restarts)?)?))
            } else {
                Ok(Done::Output(certificate_json(&random_morse(&k, flags.seed, flags.restarts)?)?))
            }
        }
        Command::Collapse { file, onto } => {
            let k = io::read_facets(file)?;
            let target = match onto {
                Some(p) => {
                    let l = io::read_facets(p)?;
                    Subcomplex::generated_by(k.clone(), l.facets())?
                }
                None => {
                    let v = Simplex::vertex(k.vertices()[0]);
                    Subcomplex::generated_by(k.clone(), [&v])?
                }
            };
            outcome_text(collapses_onto(&k, &target, &budget)?, "collapse", |seq| {
                seq.verify_onto(&k, &target)?;
                io::to_json(&seq)
            })
        }
        Command::Cdepth { file, certificate } => {
            let k = io::read_facets(file)?;
            let r = collapse_depth(&k, &budget)?;
            if let Some(p) = certificate {
                write_side(p, &certificate_json(&r.certificate)?)?;
            }
            let c_int = r.certificate.morse_vector()?.c_int;
            Ok(Done::Output(io::to_json(&DepthOutput { depth: r.depth, exact: r.exact, c_int })?))
        }
        Command::Lc { file } => {
            let k = io::read_facets(file)?;
            outcome_text(is_lc(&k, &budget)?, "local constructibility", |v| certificate_json(&v))
        }
        Command::Subdivide { file, derived, star, map } => {
            let k = io::read_facets(file)?;
            let (out, m) = match (derived, star) {
                (Some(n), None) => derived_subdivision(&k, *n as usize)?,
                (None, Some(s)) => star_face(&k, s)?,
                _ => return Err(Error::InvalidArgument("give exactly one of --derived N or --star FACE".into())),
            };
            m.verify()?;
            if let Some(p) = map {
                write_side(p, &io::to_json(&m)?)?;
            }
            Ok(Done::Output(io::format_facets(&out)))
        }
        Command::Flip { file, s, t } => {
            let k = io::read_facets(file)?;
            Ok(Done::Output(io::format_facets(&bistellar_flip(&k, s, t)?)))
        }
        Command::Lift { file, matching, face, complex } => {
            let k = io::read_facets(file)?;
            let v = load_matching(matching, &k)?;
            let l = lift_matching(&k, &v, face)?;
            if l.matching.morse_vector()?.c != v.morse_vector()?.c {
                return Err(Error::Construction("lift changed the Morse vector".into()));
            }
            if let Some(p) = complex {
                io::write_facets(p, &l.complex)?;
            }
            Ok(Done::Output(certificate_json(&l.matching)?))
        }
        Command::Glue { spec } => {
            let g = glue(&io::read_gluing_spec(spec)?)?;
            Ok(Done::Output(io::format_facets(&g.complex)))
        }
        Command::Compose { spec, f, g, h, complex } => {
            let spec = io::read_gluing_spec(spec)?;
            let glued = glue(&spec)?;
            let fm = load_matching(f, &spec.left)?;
            let gm = load_matching(g, &spec.right)?;
            let hm = load_matching(h, &glued.shared.to_complex())?;
            let c = compose_boundary_critical(&spec, &fm, &gm, &hm, &budget)?;
            if let Some(p) = complex {
                io::write_facets(p, &c.glued.complex)?;
            }
            Ok(Done::Output(certificate_json(&c.matching)?))
        }
        Command::BuildLc { trace } => {
            let lc = build_local_construction(&io::read_trace(trace)?)?;
            Ok(Done::Output(io::format_facets(&lc.complex)))
        }
        Command::Pipeline { decomposition, complex } => {
            let r = handle_pipeline(&io::read_handle_decomposition(decomposition)?, &budget)?;
            if let Some(p) = complex {
                io::write_facets(p, &r.complex)?;
            }
            Ok(Done::Output(certificate_json(&r.matching)?))
        }
    }
}

fn emit(flags: &RunFlags, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &flags.out {
        Some(p) => write_side(p, text),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = execute(&cli.command, &cli.run).and_then(|done| match done {
        Done::Output(text) => emit(&cli.run, &text, stdout).map(|_| 0),
        Done::Inconclusive(text) => {
            if text.starts_with('{') {
                emit(&cli.run, &text, stdout)?;
                let _ = writeln!(stderr, "search budget exhausted; best matching found so far written");
            } else {
                let _ = writeln!(stderr, "{text}");
            }
            Ok(2)
        }
        Done::Negative(msg) => {
            let _ = writeln!(stderr, "{msg}");
            Ok(1)
        }
    });
    match result {
        Ok(code) => code,
        Err(Error::Inconclusive(msg)) => {
            let _ = writeln!(stderr, "inconclusive: {msg}");
            2
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}
