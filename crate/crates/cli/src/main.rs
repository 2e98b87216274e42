mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use tqo_core::analysis::{Caps, DmaxStrategy, SetQuery};
use tqo_core::checks::{matrix_element_agrees, random_bits};
use tqo_core::graphs::{complete, complete_bipartite, s_vector, FamilySpec, Graph};
use tqo_core::oracle::{check_graph_pair, qecc_operator_count, DEFAULT_QUBIT_CAP};
use tqo_core::{d_max, family_scan, gen_family, ldpc_embed, verify_3d_code, verify_codewords, BitString, ClassicalCode};

use report::{Format, Report, Status};

const COSTS: &str = "\
Cost model (n = qubits, d = distance, C(n,w) = binomial):
  Z(d) enumeration      sum_{w<d} C(n,w) candidates, capped by --max-candidates
  Z-perp span walk      2^min(dim, --max-span-dim) vectors, each O(n/64) words
  W(d) test for one h   up to sum_{w<d} C(n,w) candidates m
  d_max                 one emptiness probe per tested d (incremental: d = 2..;
                        bisection: about log2(n) probes)
  oracle check          sum_{w<d} C(n,w) 3^w Paulis x (codewords)^2 x 2^n amplitudes
  normalizer scan       sum_{w<=W} C(n,w) 3^w operators, each O(rank n) to test

Environment:
  TQO_BUDGET_MS         wall-clock budget per command; exhaustion exits with code 3

Exit codes: 0 ok, 1 a requested check failed, 3 budget exhausted, 4 other error.";

#[derive(Parser, Debug)]
#[command(name = "tqo", version, about = "Topological-order criteria for graph states", after_help = COSTS)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Largest weight class any enumeration may visit [default: d - 1]
    #[arg(long, global = true)]
    max_weight: Option<usize>,
    /// Largest Z-perp dimension walked exhaustively
    #[arg(long, global = true, default_value_t = 30)]
    max_span_dim: usize,
    /// Largest number of C-set members listed
    #[arg(long, global = true, default_value_t = 1024)]
    max_members: usize,
    /// Largest number of enumerated candidates per query
    #[arg(long, global = true, default_value_t = 1 << 27)]
    max_candidates: u64,
    /// Worker threads [default: all cores]; results do not depend on it
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a graph as an edge list
    Gen {
        /// Family and parameters, e.g. `toric 5`, `mstar 3 3`, `lattice 2 4 open`
        #[arg(required = true, num_args = 1..)]
        graph: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// List the C-set at distance d
    Cset {
        #[arg(required = true, num_args = 1..)]
        graph: Vec<String>,
        #[arg(short, long)]
        d: usize,
    },
    /// Largest d with a nonempty C-set
    Dmax {
        #[arg(required = true, num_args = 1..)]
        graph: Vec<String>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Incremental)]
        strategy: StrategyArg,
    },
    /// Check a set of codeword labels
    Verify {
        /// Graph; optional with --ldpc, which implies multi-star(q, m)
        graph: Vec<String>,
        #[arg(short, long)]
        d: Option<usize>,
        /// One label per line
        #[arg(long, conflicts_with_all = ["ldpc", "svec"])]
        codewords: Option<PathBuf>,
        /// Classical generator matrix, one row per line
        #[arg(long, requires = "m", conflicts_with = "svec")]
        ldpc: Option<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
        /// Base-graph vertices whose incident-edge strings are the labels
        /// (line graphs only), e.g. `0,4`
        #[arg(long, value_delimiter = ',')]
        svec: Vec<usize>,
    },
    /// Dense state-vector checks
    Oracle {
        #[arg(required = true, num_args = 1..)]
        graph: Vec<String>,
        /// Label of the second codeword
        #[arg(long, requires = "d", conflicts_with = "matrix_elements")]
        h: Option<String>,
        #[arg(short, long)]
        d: Option<usize>,
        /// Compare random graph-basis matrix elements with the closed form
        #[arg(long)]
        matrix_elements: bool,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Verify the 3D toric graph code
    Code3d {
        #[arg(short = 'L', long = "L")]
        l: usize,
        /// Scan the normalizer through weight L
        #[arg(long)]
        distance_scan: bool,
    },
    /// d_max across sizes of a family, with a power-law fit
    Scan {
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Incremental)]
        strategy: StrategyArg,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyArg {
    Incremental,
    Bisection,
}

impl From<StrategyArg> for DmaxStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Incremental => DmaxStrategy::Incremental,
            StrategyArg::Bisection => DmaxStrategy::Bisection,
        }
    }
}

impl Global {
    fn caps(&self) -> Caps {
        Caps {
            max_weight: self.max_weight,
            max_span_dim: self.max_span_dim,
            max_members: self.max_members,
            max_candidates: self.max_candidates,
            ..Caps::default()
        }
        .with_env_budget()
    }
}

fn parse_spec(words: &[String]) -> anyhow::Result<FamilySpec> {
    if let [one] = words {
        if std::path::Path::new(one).is_file() {
            return Ok(FamilySpec::Custom { path: one.clone() });
        }
    }
    Ok(FamilySpec::parse_args(words)?)
}

fn load_graph(words: &[String]) -> anyhow::Result<(FamilySpec, Graph)> {
    let spec = parse_spec(words)?;
    let g = gen_family(&spec)?;
    Ok((spec, g))
}

fn read_labels(path: &PathBuf, n: usize) -> anyhow::Result<Vec<BitString>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let h: BitString = line.parse()?;
        if h.len() != n {
            bail!("label {line} has length {}, graph has {n} vertices", h.len());
        }
        out.push(h);
    }
    Ok(out)
}

fn graph_json(spec: &FamilySpec, g: &Graph) -> Value {
    json!({
        "spec": spec,
        "name": g.name(),
        "n": g.n(),
        "edges": g.n_edges(),
        "max_degree": g.max_degree(),
    })
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let caps = cli.global.caps();
    let mut config = json!({ "caps": &caps, "seed": cli.global.seed, "threads": cli.global.threads });
    let (command, status, result) = match &cli.command {
        Command::Gen { graph, out } => {
            let (spec, g) = load_graph(graph)?;
            config["graph"] = graph_json(&spec, &g);
            let text = g.to_edge_list();
            match out {
                Some(p) => {
                    std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
                    config["out"] = json!(p);
                    ("gen", Status::Ok, json!({ "written": p, "n": g.n(), "edges": g.n_edges() }))
                }
                None => return Ok(Report::raw(text)),
            }
        }
        Command::Cset { graph, d } => {
            let (spec, g) = load_graph(graph)?;
            config["graph"] = graph_json(&spec, &g);
            config["d"] = json!(d);
            let q = SetQuery::new(&g, *d, caps.clone())?;
            let c = q.c_set()?;
            let status = if c.exhaustive { Status::Ok } else { Status::Budget };
            let result = json!({
                "empty": c.members.is_empty(),
                "n_members": c.members.len(),
                "c_set": c,
            });
            ("cset", status, result)
        }
        Command::Dmax { graph, strategy } => {
            let (spec, g) = load_graph(graph)?;
            config["graph"] = graph_json(&spec, &g);
            config["strategy"] = json!(DmaxStrategy::from(*strategy));
            let r = d_max(&g, (*strategy).into(), &caps)?;
            let status = if r.is_exact() { Status::Ok } else { Status::Budget };
            ("dmax", status, serde_json::to_value(r)?)
        }
        Command::Verify {
            graph,
            d,
            codewords,
            ldpc,
            m,
            svec,
        } => verify(&mut config, &caps, graph, *d, codewords, ldpc, *m, svec)?,
        Command::Oracle {
            graph,
            h,
            d,
            matrix_elements,
            samples,
        } => {
            let (spec, g) = load_graph(graph)?;
            config["graph"] = graph_json(&spec, &g);
            if *matrix_elements {
                config["samples"] = json!(samples);
                let mut rng = ChaCha8Rng::seed_from_u64(cli.global.seed);
                let n = g.n();
                let mut agreements = 0;
                let mut first_mismatch = None;
                for _ in 0..*samples {
                    let (hh, gg, k, l) = (
                        random_bits(n, &mut rng),
                        random_bits(n, &mut rng),
                        random_bits(n, &mut rng),
                        random_bits(n, &mut rng),
                    );
                    if matrix_element_agrees(&g, &hh, &gg, &k, &l)? {
                        agreements += 1;
                    } else if first_mismatch.is_none() {
                        first_mismatch = Some(json!({ "h": hh, "g": gg, "k": k, "l": l }));
                    }
                }
                let pass = agreements == *samples;
                (
                    "oracle",
                    Status::from_pass(pass),
                    json!({ "mode": "matrix_elements", "samples": samples, "agreements": agreements, "first_mismatch": first_mismatch }),
                )
            } else {
                let (Some(h), Some(d)) = (h, d) else {
                    bail!("oracle needs --h and --d, or --matrix-elements");
                };
                let h: BitString = h.parse()?;
                config["h"] = json!(h);
                config["d"] = json!(d);
                let verdict = check_graph_pair(&g, &h, *d, DEFAULT_QUBIT_CAP)?;
                let in_c = SetQuery::new(&g, *d, caps.clone())?.in_c(&h)?;
                (
                    "oracle",
                    Status::from_pass(verdict.pass),
                    json!({
                        "mode": "pair",
                        "operators": qecc_operator_count(g.n(), *d) as u64,
                        "verdict": verdict,
                        "in_c": in_c,
                        "agrees_with_c_set": in_c == verdict.pass,
                    }),
                )
            }
        }
        Command::Code3d { l, distance_scan } => {
            config["L"] = json!(l);
            config["distance_scan"] = json!(distance_scan);
            let r = verify_3d_code(*l, *distance_scan)?;
            let pass = r.all_pass();
            (
                "code3d",
                Status::from_pass(pass),
                json!({ "parameters": r.parameters(), "report": r }),
            )
        }
        Command::Scan {
            family,
            sizes,
            strategy,
        } => {
            let template = scan_template(family)?;
            config["family"] = json!(template);
            config["sizes"] = json!(sizes);
            config["strategy"] = json!(DmaxStrategy::from(*strategy));
            let r = family_scan(&template, sizes, (*strategy).into(), &caps);
            let status = if r.rows.iter().all(|row| row.d_max.is_some()) {
                Status::Ok
            } else {
                Status::Budget
            };
            ("scan", status, serde_json::to_value(r)?)
        }
    };
    Ok(Report::new(command, config, status, result))
}

/// Family name with or without its size parameters.
fn scan_template(words: &[String]) -> anyhow::Result<FamilySpec> {
    let mut padded = words.to_vec();
    for _ in 0..3 {
        if let Ok(spec) = parse_spec(&padded) {
            return Ok(spec);
        }
        padded.push("3".into());
    }
    parse_spec(words)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    config: &mut Value,
    caps: &Caps,
    graph: &[String],
    d: Option<usize>,
    codewords: &Option<PathBuf>,
    ldpc: &Option<PathBuf>,
    m: Option<usize>,
    svec: &[usize],
) -> anyhow::Result<(&'static str, Status, Value)> {
    let (spec, g, labels, d) = if let Some(path) = ldpc {
        let m = m.ok_or_else(|| anyhow!("--ldpc needs --m"))?;
        let code = ClassicalCode::load(path)?;
        let spec = if graph.is_empty() {
            FamilySpec::MultiStar { q: code.q(), m }
        } else {
            parse_spec(graph)?
        };
        let g = gen_family(&spec)?;
        if g.n() != code.q() * m {
            bail!("graph has {} vertices, embedding needs {}", g.n(), code.q() * m);
        }
        config["ldpc"] = json!({ "path": path, "m": m, "q": code.q(), "k": code.k() });
        let labels: Vec<BitString> = ldpc_embed(&code, m)?.into_iter().filter(|h| !h.is_zero()).collect();
        (spec, g, labels, d.unwrap_or(m))
    } else {
        if graph.is_empty() {
            bail!("verify needs a graph");
        }
        let d = d.ok_or_else(|| anyhow!("verify needs --d"))?;
        let (spec, g) = load_graph(graph)?;
        let labels = if let Some(path) = codewords {
            config["codewords"] = json!(path);
            read_labels(path, g.n())?
        } else if !svec.is_empty() {
            let base = match spec {
                FamilySpec::LineOfComplete { m } => complete(m)?,
                FamilySpec::LineOfBipartite { m } => complete_bipartite(m, m)?,
                _ => bail!("--svec needs a line_of_complete or line_of_bipartite graph"),
            };
            config["svec"] = json!(svec);
            svec.iter()
                .map(|&v| {
                    if v >= base.n() {
                        bail!("base vertex {v} out of range 0..{}", base.n());
                    }
                    Ok(s_vector(&base, v))
                })
                .collect::<anyhow::Result<_>>()?
        } else {
            bail!("verify needs --codewords, --ldpc or --svec");
        };
        (spec, g, labels, d)
    };
    config["graph"] = graph_json(&spec, &g);
    config["d"] = json!(d);
    let v = verify_codewords(&g, d, &labels, caps)?;
    Ok((
        "verify",
        Status::from_pass(v.pass),
        json!({ "labels": labels, "verdict": v }),
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(4);
        }
    }
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            report.set_elapsed(start.elapsed());
            report.print(cli.global.format);
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e.downcast_ref::<tqo_core::Error>().is_some_and(tqo_core::Error::is_budget);
            if budget && matches!(cli.global.format, Format::Json) {
                let v = json!({
                    "schema_version": report::SCHEMA_VERSION,
                    "tool": "tqo",
                    "status": "budget",
                    "budget_exhausted": true,
                    "error": format!("{e:#}"),
                });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
            }
            ExitCode::from(if budget { 3 } else { 4 })
        }
    }
}
