//! Command-line front end. [`run`] parses arguments, writes the result to
//! `out` and returns the exit code: 0 on success, 1 when a verification
//! fails, 2 on bad input.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::configs::{veronese_config, Configuration, Param};
use crate::error::{Error, Result};
use crate::exactlin::{format_rat, parse_rat, Rat};
use crate::fcurves::{cont2_predicate, enumerate_sym_fcurves, fakhruddin_degree, SymFPartition};
use crate::gale::{dual_linearization, gale_involution_check, gale_transform, goppa_witness, self_association_matrix};
use crate::gitstab::{semistability, symcont_predicate, walls, CertificateKind, ContractionCertificate, Linearization};
use crate::json::{self, ConfigJson, TreeJson};
use crate::nefcone::{intersection_matrix, rho, verify_theorem_cb, TheoremReport};
use crate::sample;
use crate::trees::{
    default_aux, degree_map_solve, limit_config, semistable_partitions, verify_piecewise_map, AuxDivisor,
    DegreePartition, StableTree, VertexMap,
};

#[derive(Parser, Debug)]
#[command(name = "qv", about = "Exact computations on quasi-Veronese configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree of D_k on a symmetric F-curve, or the whole table as CSV.
    Fakhruddin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Leg sizes, e.g. 1,1,1,3.
        #[arg(long)]
        partition: Option<String>,
        /// Emit n,k,partition,degree rows for every k and curve.
        #[arg(long)]
        all: bool,
    },
    /// Compare the GIT contraction criterion with the degree of D_{d+1}.
    ContractCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        partition: Option<String>,
    },
    /// GIT stability of a configuration.
    Stability {
        #[command(flatten)]
        config: ConfigInput,
        /// Weights x_1,…,x_n summing to d+1; symmetric when omitted.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Walls of the hypersimplex through a linearization.
    Walls {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        weights: String,
    },
    /// Images of the marks for a degree partition.
    LimitConfig {
        /// Stable tree as a JSON file or inline JSON.
        #[arg(long)]
        tree: String,
        #[arg(long)]
        degrees: String,
        /// Aux points per component, components separated by ';'.
        #[arg(long)]
        aux: Option<String>,
    },
    /// Degree partitions giving a semistable limit configuration.
    SemistablePartitions {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        weights: Option<String>,
    },
    /// Count degree-e maps from the caterpillar tree with random generic
    /// subspace constraints.
    CountMaps {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        e: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Gale transform of a configuration.
    Gale {
        #[command(flatten)]
        config: ConfigInput,
    },
    /// Explicit Gale dual of points on a rational normal curve.
    GoppaVerify {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        params: String,
    },
    /// Self-association matrix of 2m points on a degree m-1 curve.
    SelfAssoc {
        #[arg(long)]
        params: String,
    },
    /// Consistency report for the D_{d+1} ray and the symmetric GIT quotients.
    NefconeReport {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Run every n from 4 up to this bound and every valid d.
        #[arg(long)]
        sweep: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct ConfigInput {
    /// Configuration as a JSON file or inline JSON.
    #[arg(long)]
    config: Option<String>,
    /// Veronese configuration of this degree (with --params).
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    params: Option<String>,
}

impl ConfigInput {
    fn load(&self) -> Result<Configuration> {
        match (&self.config, self.d, &self.params) {
            (Some(src), None, None) => json::parse_config(&read_source(src)?),
            (None, Some(d), Some(p)) => veronese_config(d, &parse_params(p)?),
            _ => Err(Error::Precondition("give either --config or both --d and --params".into())),
        }
    }
}

fn read_source(src: &str) -> Result<String> {
    if src.trim_start().starts_with('{') {
        Ok(src.to_string())
    } else {
        std::fs::read_to_string(src).map_err(|e| Error::Parse(format!("{src}: {e}")))
    }
}

fn parse_list<T>(s: &str, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(|x| f(x.trim())).collect()
}

fn parse_rats(s: &str) -> Result<Vec<Rat>> {
    parse_list(s, parse_rat)
}

fn parse_params(s: &str) -> Result<Vec<Param>> {
    parse_list(s, Param::parse)
}

fn parse_usizes(s: &str) -> Result<Vec<usize>> {
    parse_list(s, |x| x.parse().map_err(|_| Error::Parse(format!("{x:?} is not a nonnegative integer"))))
}

fn parse_sym(s: &str) -> Result<SymFPartition> {
    let v = parse_usizes(s)?;
    let arr: [usize; 4] = v
        .try_into()
        .map_err(|_| Error::InvalidPartition(format!("{s:?} does not have four parts")))?;
    SymFPartition::from_unsorted(arr)
}

fn linearization(d: usize, n: usize, weights: &Option<String>) -> Result<Linearization> {
    match weights {
        Some(w) => Linearization::new(d, n, parse_rats(w)?),
        None => Linearization::symmetric(d, n),
    }
}

fn certificate(c: &Option<ContractionCertificate>) -> Value {
    match c {
        None => Value::Null,
        Some(c) => json!({
            "kind": match c.kind {
                CertificateKind::AlphaFamily => "alpha",
                CertificateKind::BetaFamily => "beta",
            },
            "vector": c.vector,
        }),
    }
}

/// Outcome of a command: the text to print and whether it verified.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn json(v: Value, ok: bool) -> Self {
        Output {
            text: serde_json::to_string_pretty(&v).expect("json values serialize"),
            ok,
        }
    }
}

fn report_json(r: &TheoremReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn execute(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Fakhruddin { n, k, partition, all } => {
            if all {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::Parse(e.to_string());
                w.write_record(["n", "k", "partition", "degree"]).map_err(io)?;
                for k in 2..=n.saturating_sub(2) {
                    for f in enumerate_sym_fcurves(n) {
                        let deg = fakhruddin_degree(n, k, &f)?;
                        w.write_record([n.to_string(), k.to_string(), f.to_string(), deg.to_string()])
                            .map_err(io)?;
                    }
                }
                let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
                let text = String::from_utf8(bytes).expect("csv output is utf-8");
                return Ok(Output {
                    text: text.trim_end().to_string(),
                    ok: true,
                });
            }
            let (Some(k), Some(p)) = (k, partition) else {
                return Err(Error::Precondition("give --k and --partition, or --all".into()));
            };
            let deg = fakhruddin_degree(n, k, &parse_sym(&p)?)?;
            Ok(Output {
                text: deg.to_string(),
                ok: true,
            })
        }
        Command::ContractCheck { n, d, partition } => {
            let curves = match partition {
                Some(p) => vec![parse_sym(&p)?],
                None => enumerate_sym_fcurves(n),
            };
            let mut rows = Vec::new();
            let mut ok = true;
            for f in curves {
                let git = symcont_predicate(n, d, &f)?;
                let deg = fakhruddin_degree(n, d + 1, &f)?;
                let cont2 = cont2_predicate(n, d + 1, &f)?;
                let agree = git.is_some() == (deg == 0) && cont2.is_some() == (deg == 0);
                ok &= agree;
                rows.push(json!({
                    "partition": f.to_string(),
                    "git_certificate": certificate(&git),
                    "degree": deg,
                    "dk_certificate": certificate(&cont2),
                    "agree": agree,
                }));
            }
            Ok(Output::json(json!({ "n": n, "d": d, "curves": rows, "all_agree": ok }), ok))
        }
        Command::Stability { config, weights } => {
            let c = config.load()?;
            let l = linearization(c.d(), c.n(), &weights)?;
            Ok(Output::json(json::verdict(&semistability(&c, &l)?), true))
        }
        Command::Walls { d, weights } => {
            let x = parse_rats(&weights)?;
            let l = Linearization::new(d, x.len(), x)?;
            let ws: Vec<Value> = walls(&l).iter().map(json::wall).collect();
            let dual = dual_linearization(&l).ok().map(|dl| json::rats(dl.weights()));
            Ok(Output::json(
                json!({ "walls": ws, "chamber_interior": ws.is_empty(), "dual_weights": dual }),
                true,
            ))
        }
        Command::LimitConfig { tree, degrees, aux } => {
            let t = load_tree(&tree)?;
            let deg = DegreePartition::new(&t, parse_usizes(&degrees)?)?;
            let a = match aux {
                Some(s) => {
                    let per: Vec<&str> = s.split(';').collect();
                    AuxDivisor::new(&t, &deg, per.iter().map(|p| parse_rats(p)).collect::<Result<_>>()?)?
                }
                None => default_aux(&t, &deg)?,
            };
            let c = limit_config(&t, &deg, &a)?;
            Ok(Output::json(
                json!({
                    "degrees": deg.degrees(),
                    "aux": a.points().iter().map(|p| json::rats(p)).collect::<Vec<_>>(),
                    "configuration": ConfigJson::from(&c),
                    "rank": c.matrix().rank(),
                }),
                true,
            ))
        }
        Command::SemistablePartitions { tree, d, weights } => {
            let t = load_tree(&tree)?;
            let l = linearization(d, t.n(), &weights)?;
            let sel = semistable_partitions(&t, &l)?;
            let entries: Vec<Value> = sel
                .entries
                .iter()
                .map(|(p, v)| json!({ "degrees": p.degrees(), "verdict": json::verdict(v) }))
                .collect();
            Ok(Output::json(
                json!({
                    "partitions": entries,
                    "stable_count": sel.stable().len(),
                    "multiple": sel.is_ambiguous(),
                }),
                true,
            ))
        }
        Command::CountMaps { n, d, e, seed } => count_maps(n, d, e, seed),
        Command::Gale { config } => {
            let c = config.load()?;
            let g = gale_transform(&c)?;
            let involutive = gale_involution_check(&c)?;
            Ok(Output::json(
                json!({ "gale": ConfigJson::from(&g), "involutive": involutive }),
                involutive,
            ))
        }
        Command::GoppaVerify { n, d, params } => {
            let ts = parse_rats(&params)?;
            if let Some(n) = n {
                if n != ts.len() {
                    return Err(Error::DimensionMismatch(format!("--n {n} but {} parameters", ts.len())));
                }
            }
            let w = goppa_witness(&ts, d)?;
            let ok = w.ok();
            Ok(Output::json(
                json!({
                    "primal": ConfigJson::from(&w.primal),
                    "dual": ConfigJson::from(&w.dual),
                    "orthogonal": w.orthogonal,
                    "matches_kernel_dual": w.matches_kernel_dual,
                    "dual_on_rnc": w.dual_on_rnc,
                    "ok": ok,
                }),
                ok,
            ))
        }
        Command::SelfAssoc { params } => {
            let m = self_association_matrix(&parse_rats(&params)?)?;
            let ok = m.is_zero();
            let mut lines: Vec<String> = m
                .row_vecs()
                .iter()
                .map(|r| r.iter().map(format_rat).collect::<Vec<_>>().join(" "))
                .collect();
            lines.push(format!("self-associated: {ok}"));
            Ok(Output {
                text: lines.join("\n"),
                ok,
            })
        }
        Command::NefconeReport { n, d, sweep } => {
            let pairs: Vec<(usize, usize)> = match (n, d, sweep) {
                (None, None, Some(max)) => (4..=max).flat_map(|n| (1..=rho(n)).map(move |d| (n, d))).collect(),
                (Some(n), Some(d), None) => vec![(n, d)],
                (Some(n), None, None) => (1..=rho(n)).map(|d| (n, d)).collect(),
                _ => return Err(Error::Precondition("give --n [--d] or --sweep".into())),
            };
            let mut ns: Vec<usize> = pairs.iter().map(|p| p.0).collect();
            ns.dedup();
            let matrices = ns
                .iter()
                .map(|&n| {
                    let m = intersection_matrix(n)?;
                    Ok(json!({ "n": n, "rank": m.rank(), "matrix": m }))
                })
                .collect::<Result<Vec<_>>>()?;
            let reports = pairs
                .iter()
                .map(|&(n, d)| verify_theorem_cb(n, d))
                .collect::<Result<Vec<_>>>()?;
            let ok = reports.iter().all(TheoremReport::passed);
            Ok(Output::json(
                json!({
                    "intersection_matrices": matrices,
                    "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
                    "passed": ok,
                }),
                ok,
            ))
        }
    }
}

fn load_tree(src: &str) -> Result<StableTree> {
    json::parse_tree(&read_source(src)?)
}

fn count_maps(n: usize, d: usize, e: usize, seed: u64) -> Result<Output> {
    const RETRIES: usize = 16;
    let tree = StableTree::caterpillar(n)?;
    let mut rng = sample::rng(seed);
    for attempt in 0..RETRIES {
        let cs = sample::generic_constraints(&mut rng, n, d, e)?;
        match degree_map_solve(&tree, e, &cs) {
            Err(Error::NonGenericConstraints(_)) => continue,
            Err(err) => return Err(err),
            Ok(maps) => {
                let verified = maps.iter().all(|m| verify_piecewise_map(&tree, &cs, m, e));
                let ok = maps.len() == 1 && verified;
                let described: Vec<Value> = maps
                    .iter()
                    .map(|m| {
                        json!({
                            "components": m.vertex_maps.iter().map(|vm| match vm {
                                VertexMap::Contracted(p) => json!({ "contracted_to": json::rats(p) }),
                                VertexMap::Linear(mat) => json!({ "linear": json::mat(mat) }),
                            }).collect::<Vec<_>>(),
                            "mark_images": m.mark_images.iter().map(|p| json::rats(p)).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                return Ok(Output::json(
                    json!({
                        "tree": TreeJson::from(&tree),
                        "codims": cs.iter().map(|c| c.codim()).collect::<Vec<_>>(),
                        "constraints": cs.iter().map(|c| json::mat(c.subspace())).collect::<Vec<_>>(),
                        "resamples": attempt,
                        "count": maps.len(),
                        "maps": described,
                        "verified": verified,
                    }),
                    ok,
                ));
            }
        }
    }
    Err(Error::NonGenericConstraints(format!("no generic sample in {RETRIES} attempts")))
}

/// Runs the CLI on `args` (program name first).
pub fn run<I, S>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command) {
        Ok(o) => {
            let _ = writeln!(out, "{}", o.text);
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
