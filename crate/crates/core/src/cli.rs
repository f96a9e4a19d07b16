//! Command-line front end. `run` is separate from `main` so tests can drive it
//! in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::escalator::{
    certify_universal, escalation_tree, truant_hermitian, CertMode, DedupRelation, ResultCache, TreeOptions,
    TRUANT_LIMIT,
};
use crate::hlattice::HermitianLattice;
use crate::quadring::QuadIntField;
use crate::tables::{run_table, TableId, VERSION};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

pub const CACHE_ENV: &str = "HERMLAT_CACHE";
const DEFAULT_CACHE: &str = ".hermlat-cache.json";

#[derive(Debug, Parser)]
#[command(name = "hermlat", version, about = "Universal Hermitian lattices over imaginary quadratic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct LatticeArgs {
    /// Square-free m > 0; the field is Q(sqrt(-m)).
    #[arg(long)]
    m: i64,
    /// Gram rows separated by ';', entries by ','. `w` is the ring generator,
    /// a leading `c` conjugates (e.g. "1,0;0,2").
    #[arg(long)]
    gram: String,
    /// Read `--gram` as diagonal entries, e.g. "1;1;2".
    #[arg(long)]
    diag: bool,
}

impl LatticeArgs {
    fn lattice(&self) -> Result<HermitianLattice> {
        let field = QuadIntField::new(self.m)?;
        if self.diag {
            let d = self
                .gram
                .split([';', ','])
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<i64>().map_err(|_| Error::Parse(format!("bad diagonal entry '{}'", s))))
                .collect::<Result<Vec<_>>>()?;
            HermitianLattice::diagonal(field, &d)
        } else {
            HermitianLattice::parse_rows(field, &self.gram)
        }
    }

    fn echo(&self) -> Value {
        json!({"m": self.m, "gram": self.gram, "diag": self.diag})
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Smallest positive integer the lattice does not represent.
    Truant {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, default_value_t = TRUANT_LIMIT)]
        limit: u64,
        #[arg(long)]
        json: bool,
    },
    /// Build the escalation tree from <1>.
    Escalate {
        #[arg(long)]
        m: i64,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 20000)]
        max_nodes: usize,
        /// Integers checked before a node counts as universal.
        #[arg(long, default_value_t = crate::escalator::CERTIFY_BOUND)]
        bound: u64,
        #[arg(long, default_value_t = TRUANT_LIMIT)]
        limit: u64,
        /// Deduplicate up to Z-isometry of associated forms instead of O-isometry.
        #[arg(long)]
        z_dedup: bool,
        /// Reuse and update the result cache.
        #[arg(long)]
        resume: bool,
        /// Cache file; defaults to $HERMLAT_CACHE, then .hermlat-cache.json.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Recompute a table and diff it against the embedded values.
    Tables {
        /// binary, truants, conditions, critical, ranks or counts.
        id: String,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[arg(long)]
        json: bool,
    },
    /// Certify universality; prints a JSON certificate.
    Check {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// critical, empirical or inherited.
        #[arg(long)]
        mode: String,
        #[arg(long, default_value_t = crate::escalator::CERTIFY_BOUND)]
        bound: u64,
    },
}

fn header(command: &str, input: Value) -> Value {
    json!({"tool": "hermlat", "version": VERSION, "command": command, "input": input})
}

fn merge(mut doc: Value, extra: Value) -> Value {
    if let (Some(d), Value::Object(e)) = (doc.as_object_mut(), extra) {
        d.extend(e);
    }
    doc
}

/// Runs the CLI with `args` (including the program name). Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let _ = write!(err, "{}", e.render());
            return EXIT_INPUT;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            match e {
                Error::ResourceLimit(_) => EXIT_LIMIT,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("write failed: {}", e));
    match cmd {
        Command::Truant { lattice, limit, json } => {
            let l = lattice.lattice()?;
            let t = truant_hermitian(&l, limit);
            if json {
                let mut input = lattice.echo();
                input["limit"] = json!(limit);
                let doc = merge(header("truant", input), json!({"lattice": l.to_string(), "truant": t}));
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).map_err(io)?;
            } else {
                writeln!(out, "lattice: {}", l).map_err(io)?;
                match t {
                    Some(k) => {
                        writeln!(out, "truant: {}", k).map_err(io)?;
                        if k > 1 {
                            writeln!(out, "represents 1..{}", k - 1).map_err(io)?;
                        }
                    }
                    None => writeln!(out, "universal up to {}", limit).map_err(io)?,
                }
            }
            Ok(EXIT_OK)
        }
        Command::Escalate { m, depth, max_nodes, bound, limit, z_dedup, resume, cache, json } => {
            let opts = TreeOptions {
                max_depth: depth,
                truant_limit: limit,
                certify_bound: bound,
                dedup: if z_dedup { DedupRelation::ZForm } else { DedupRelation::Hermitian },
                max_nodes,
                ..TreeOptions::default()
            };
            let cache_path = cache
                .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE));
            let mut rc = if resume { Some(ResultCache::load(&cache_path)?) } else { None };
            let tree = escalation_tree(m, &opts, rc.as_mut())?;
            if let Some(c) = &rc {
                c.save(&cache_path)?;
            }
            if json {
                let input = json!({
                    "m": m, "depth": depth, "max_nodes": max_nodes, "bound": bound, "limit": limit,
                    "z_dedup": z_dedup, "resume": resume,
                    "cache": if resume { Some(cache_path.display().to_string()) } else { None },
                });
                let doc = merge(header("escalate", input), tree.to_json());
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).map_err(io)?;
            } else {
                writeln!(out, "hermlat {} escalate m={} depth={}", VERSION, m, depth).map_err(io)?;
                for n in &tree.nodes {
                    let t = n.truant.map_or("-".to_string(), |t| t.to_string());
                    writeln!(
                        out,
                        "{:>5} parent={:<5} depth={} {:?} truant={} {}",
                        n.id,
                        n.parent.map_or("-".to_string(), |p| p.to_string()),
                        n.depth,
                        n.status,
                        t,
                        n.lattice
                    )
                    .map_err(io)?;
                }
                let ts: Vec<String> = tree.truants.iter().map(|(k, c)| format!("{} (x{})", k, c)).collect();
                writeln!(out, "truants: {}", ts.join(", ")).map_err(io)?;
                writeln!(out, "certified: {}", tree.certified().count()).map_err(io)?;
                if let Some(why) = &tree.limit_hit {
                    writeln!(out, "incomplete: {}", why).map_err(io)?;
                }
            }
            Ok(if tree.limit_hit.is_some() { EXIT_LIMIT } else { EXIT_OK })
        }
        Command::Tables { id, csv, json } => {
            let id: TableId = id.parse()?;
            let report = run_table(id)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report.to_json()).unwrap()).map_err(io)?;
            } else if csv {
                write!(out, "{}", report.to_csv()).map_err(io)?;
            } else {
                write!(out, "{}", report).map_err(io)?;
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Check { lattice, mode, bound } => {
            let mode: CertMode = mode.parse()?;
            let l = lattice.lattice()?;
            let mut input = lattice.echo();
            input["mode"] = json!(mode);
            input["bound"] = json!(bound);
            let (body, code) = match certify_universal(&l, mode, bound) {
                Ok(c) => (json!({"certified": true, "certificate": c.to_json()}), EXIT_OK),
                Err(f) => (json!({"certified": false, "failure": f}), EXIT_FAIL),
            };
            let doc = merge(header("check", input), body);
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).map_err(io)?;
            Ok(code)
        }
    }
}
