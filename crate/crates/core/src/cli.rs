//! Command line surface. `run` is separated from process exit for testing.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classgroup::{to_i64, ClassGroup, ToricCone};
use crate::consistency::check_consistency;
use crate::corpus::Corpus;
use crate::dimer::DimerModel;
use crate::error::{Error, Result};
use crate::exchange::TypeStudy;
use crate::generators::vertex_ideal_table;
use crate::io::{parse_dimer, serialize_dimer};
use crate::matching::{
    aligned_extremals, convex_hull, enumerate_matchings, extremal_matchings, pm_polygon, translation_onto,
};
use crate::mutation::{mutate_dimer, mutate_qp};
use crate::verify::{all_passed, type_study, verify_type, Check};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "dimer-mm", version, about = "Dimer models, QP mutation, class groups and exchange graphs")]
pub struct Cli {
    /// Directory with types.json, corpus/ and expected/ replacing the bundled data.
    #[arg(long, global = true)]
    pub corpus_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Accepted for compatibility; nothing is random.
    #[arg(long, global = true)]
    pub seedless: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct DimerArg {
    /// A dimer JSON file, or `corpus:NAME` for a bundled one.
    pub dimer: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One perfect matching per line, as sorted edge ids.
    Matchings(DimerArg),
    /// Lattice points of the matching polygon: x, y, multiplicity, hull vertex.
    Polygon(DimerArg),
    /// Non-degeneracy and R-charge report with an exact witness.
    Consistency(DimerArg),
    /// Mutate at one vertex or a sequence of vertices and print the dimer.
    Mutate {
        #[command(flatten)]
        input: DimerArg,
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long, value_delimiter = ',')]
        steps: Vec<String>,
        /// Print the quiver with potential instead of the dimer.
        #[arg(long)]
        show_qp: bool,
    },
    /// Rank, invariants and projection of Cl(R) for a polygon.
    Classgroup {
        /// Type name such as `4a`, or vertices `x,y;x,y;...` in cyclic order.
        #[arg(long)]
        polygon: String,
    },
    /// T_ij for a fixed i: j, raw matching values, class and a representative.
    TiltingTable {
        #[command(flatten)]
        input: DimerArg,
        #[arg(long)]
        vertex: String,
        /// Polygon vertices `x,y;...` fixing the extremal order.
        #[arg(long)]
        order: Option<String>,
        /// Coordinates allowed to be nonzero in the representative, e.g. `3,4`.
        #[arg(long, value_delimiter = ',')]
        support: Vec<usize>,
    },
    /// Exchange graph of a type, or of given dimers over a polygon.
    ExchangeGraph {
        #[arg(long = "type", conflicts_with_all = ["polygon", "dimers"])]
        kind: Option<String>,
        #[arg(long, requires = "dimers")]
        polygon: Option<String>,
        #[arg(long, num_args = 1..)]
        dimers: Vec<String>,
    },
    /// Run the verification battery for a type or for every type.
    Verify {
        #[arg(long = "type", conflicts_with = "all")]
        kind: Option<String>,
        #[arg(long)]
        all: bool,
    },
}

/// Process entry point; returns the exit code.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` and runs the command: 0 ok, 1 verification mismatch, 2 input error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Contract(_) => 1,
                _ => 2,
            }
        }
    }
}

fn corpus(cli: &Cli) -> Result<Corpus> {
    match &cli.corpus_dir {
        Some(dir) => Corpus::from_dir(dir),
        None => Ok(Corpus::embedded()),
    }
}

/// A loaded dimer with its type polygon and support when it comes from the corpus.
struct Loaded {
    dimer: DimerModel,
    cone: Option<Vec<[i64; 2]>>,
    support: Option<Vec<usize>>,
}

fn load(corpus: &Corpus, spec: &str) -> Result<Loaded> {
    if let Some(name) = spec.strip_prefix("corpus:") {
        let dimer = corpus.dimer(name)?;
        let te = corpus.entry(name).map(|(t, _)| corpus.polygon(t)).transpose()?;
        return Ok(Loaded { dimer, cone: te.map(|t| t.cone.clone()), support: te.map(|t| t.support.clone()) });
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    Ok(Loaded { dimer: parse_dimer(&text)?, cone: None, support: None })
}

pub fn parse_polygon(s: &str) -> Result<Vec<[i64; 2]>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let xy: Vec<i64> = p
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coordinate in `{p}`"))))
                .collect::<Result<_>>()?;
            match xy[..] {
                [x, y] => Ok([x, y]),
                _ => Err(Error::Parse(format!("expected `x,y`, got `{p}`"))),
            }
        })
        .collect()
}

/// Name, cone and support coordinates of a polygon argument.
type PolygonArg = (String, Vec<[i64; 2]>, Option<Vec<usize>>);

fn polygon_arg(corpus: &Corpus, s: &str) -> Result<PolygonArg> {
    if let Some(te) = corpus.types.get(s) {
        return Ok((s.to_string(), te.cone.clone(), Some(te.support.clone())));
    }
    Ok(("polygon".into(), parse_polygon(s)?, None))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let corpus = corpus(cli)?;
    match &cli.command {
        Command::Matchings(a) => {
            let d = load(&corpus, &a.dimer)?.dimer;
            let mut lines: Vec<String> = enumerate_matchings(&d)
                .iter()
                .map(|p| {
                    let mut ids = d.edge_ids(&p.0);
                    ids.sort();
                    ids.join("\t")
                })
                .collect();
            lines.sort();
            for l in lines {
                writeln!(out, "{l}")?;
            }
        }
        Command::Polygon(a) => {
            let loaded = load(&corpus, &a.dimer)?;
            let d = &loaded.dimer;
            let pms = enumerate_matchings(d);
            let p0 = pms.first().ok_or_else(|| Error::Polygon("no perfect matchings".into()))?;
            let poly = pm_polygon(d, p0)?;
            // corpus dimers are shown in the position of their type polygon when it is a translate
            let t = loaded.cone.and_then(|c| translation_onto(&poly.hull, &c)).unwrap_or([0, 0]);
            for (p, m) in &poly.multiplicity {
                let hull = poly.is_hull_vertex(*p);
                writeln!(out, "{}\t{}\t{m}\t{hull}", p[0] + t[0], p[1] + t[1])?;
            }
        }
        Command::Consistency(a) => {
            let d = load(&corpus, &a.dimer)?.dimer;
            let r = check_consistency(&d)?;
            writeln!(out, "nondegenerate\t{}", r.nondegenerate)?;
            writeln!(out, "rcharge\t{}", r.rcharge.is_some())?;
            writeln!(out, "hull_multiplicities_one\t{}", r.hull_multiplicities_one)?;
            writeln!(out, "consistent\t{}", r.consistent())?;
            if let Some(rc) = &r.rcharge {
                for (e, v) in rc {
                    writeln!(out, "{e}\t{}\t{}", v.numer(), v.denom())?;
                }
            }
            return Ok(if r.consistent() { 0 } else { 1 });
        }
        Command::Mutate { input, vertex, steps, show_qp } => {
            let mut seq: Vec<String> = vertex.iter().cloned().collect();
            seq.extend(steps.iter().cloned());
            if seq.is_empty() {
                return Err(Error::Parse("give --vertex or --steps".into()));
            }
            let mut d = load(&corpus, &input.dimer)?.dimer;
            if *show_qp {
                let mut q = d.dual_qp()?;
                for k in &seq {
                    q = mutate_qp(&q, k)?;
                }
                write!(out, "{q}")?;
            } else {
                for k in &seq {
                    d = mutate_dimer(&d, k)?;
                }
                write!(out, "{}", serialize_dimer(&d))?;
            }
        }
        Command::Classgroup { polygon } => {
            let (_, pts, _) = polygon_arg(&corpus, polygon)?;
            let cl = ClassGroup::new(&ToricCone::from_polygon(&pts)?)?;
            writeln!(out, "group\t{}", cl.describe())?;
            writeln!(out, "rank\t{}", cl.rank())?;
            let inv: Vec<String> = cl.invariants().iter().map(|d| d.to_string()).collect();
            writeln!(out, "invariants\t{}", inv.join(","))?;
            for (j, c) in cl.projection().iter().enumerate() {
                let coords: Vec<String> = c.free.iter().chain(&c.torsion).map(|x| x.to_string()).collect();
                writeln!(out, "I_{}\t{}", j + 1, coords.join("\t"))?;
            }
        }
        Command::TiltingTable { input, vertex, order, support } => {
            let loaded = load(&corpus, &input.dimer)?;
            let d = &loaded.dimer;
            let qp = d.dual_qp()?;
            let (cone, ext) = match (order, &loaded.cone) {
                (Some(o), _) => {
                    let cone = parse_polygon(o)?;
                    let ext = aligned_extremals(d, &cone)?;
                    (cone, ext)
                }
                (None, Some(c)) => (c.clone(), aligned_extremals(d, c)?),
                (None, None) => {
                    let pms = enumerate_matchings(d);
                    let p0 = pms.first().ok_or_else(|| Error::Polygon("no perfect matchings".into()))?;
                    let hull = pm_polygon(d, p0)?.hull;
                    let ext = extremal_matchings(d, p0, &hull)?;
                    (hull, ext)
                }
            };
            let cl = ClassGroup::new(&ToricCone::from_polygon(&cone)?)?;
            let support = match (support.is_empty(), loaded.support) {
                (false, _) => support.clone(),
                (true, Some(s)) if order.is_none() => s,
                _ => (cone.len() - cl.rank().max(1)..cone.len()).collect(),
            };
            writeln!(out, "j\traw\tclass\trepresentative")?;
            for e in vertex_ideal_table(d, &qp, vertex, &ext, &cl)? {
                let raw: Vec<String> = e.raw.iter().map(|x| x.to_string()).collect();
                let rep = match cl.representative(&e.class, &support)?.and_then(|u| to_i64(&u)) {
                    Some(u) => format!("T({})", u.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
                    None => "-".into(),
                };
                writeln!(out, "{}\t{}\t{}\t{rep}", e.vertex, raw.join(","), e.class)?;
            }
        }
        Command::ExchangeGraph { kind, polygon, dimers } => {
            let study = match (kind, polygon) {
                (Some(k), _) => type_study(&corpus, k)?,
                (None, Some(p)) => {
                    let (name, cone, _) = polygon_arg(&corpus, p)?;
                    let mut ds = Vec::new();
                    for (i, spec) in dimers.iter().enumerate() {
                        let tag = ((b'A' + (i % 26) as u8) as char).to_string();
                        ds.push((spec.clone(), tag, load(&corpus, spec)?.dimer));
                    }
                    TypeStudy::new(&name, &convex_ordered(&cone), ds)?
                }
                (None, None) => return Err(Error::Parse("give --type or --polygon with --dimers".into())),
            };
            let connected = study.graph.is_connected();
            if cli.format == Some(Format::Tsv) {
                for n in &study.graph.nodes {
                    let classes: Vec<String> = n.multiset.iter().map(|c| c.to_string()).collect();
                    writeln!(out, "node\t{}\t{}", n.label, classes.join(" "))?;
                }
                for &(a, b) in &study.graph.edges {
                    writeln!(out, "edge\t{}\t{}", study.graph.nodes[a].label, study.graph.nodes[b].label)?;
                }
                writeln!(out, "connected\t{connected}")?;
            } else {
                write!(out, "{}", study.graph.to_dot(&study.kind))?;
                writeln!(out, "// connected: {connected}")?;
            }
            return Ok(if connected { 0 } else { 1 });
        }
        Command::Verify { kind, all } => {
            let kinds: Vec<String> = match (kind, all) {
                (Some(k), _) => vec![k.clone()],
                (None, true) => corpus.types.keys().cloned().collect(),
                (None, false) => return Err(Error::Parse("give --type or --all".into())),
            };
            let mut checks: Vec<Check> = Vec::new();
            for k in &kinds {
                checks.extend(verify_type(&corpus, k)?);
            }
            for c in &checks {
                writeln!(out, "{c}")?;
            }
            return Ok(if all_passed(&checks) { 0 } else { 1 });
        }
    }
    Ok(0)
}

/// Keeps a user-given cyclic order when it is already convex, else the hull order.
fn convex_ordered(pts: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let hull = convex_hull(pts);
    if hull.len() == pts.len() {
        pts.to_vec()
    } else {
        hull
    }
}
