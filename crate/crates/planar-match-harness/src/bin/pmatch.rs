use std::collections::BTreeSet;
use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use planar_match::cuts::{gomory_hu_tree, min_odd_cut, Capacities};
use planar_match::driver::{min_weight_perfect_matching, perfect_matching, AlgorithmConfig, DriverError};
use planar_match::graph::{parse_graph, parse_weights, write_graph, EdgeId, EdgeWeights, PlanarGraph};
use planar_match::pfaffian::count_matchings;
use planar_match::Rational;
use planar_match_harness::corpus::{self, CorpusEntry};
use planar_match_harness::generators::{generate, GENERATORS};
use planar_match_harness::oracles::validate_matching;
use planar_match_harness::suite::{run_suite, SuiteLimits};

type Res<T> = Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "pmatch", version, about = "Deterministic planar perfect matching")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusName {
    Small,
    Standard,
}

impl CorpusName {
    fn entries(self) -> Vec<CorpusEntry> {
        match self {
            CorpusName::Small => corpus::small(),
            CorpusName::Standard => corpus::standard(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance in the graph text format.
    Gen {
        /// Generator name; `--list` prints the known ones.
        name: Option<String>,
        params: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
    /// Check a graph file, optionally a matching for it, or run the oracle
    /// suite over a corpus.
    Verify {
        graph: Option<PathBuf>,
        /// File of `match <edge id>` lines.
        #[arg(long)]
        matching: Option<PathBuf>,
        #[arg(long, value_enum, conflicts_with = "graph")]
        suite: Option<CorpusName>,
        #[arg(long, default_value_t = 64)]
        base_case: usize,
    },
    /// Count minimum-weight perfect matchings, in total and per edge.
    Count {
        graph: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Find a perfect matching, of minimum weight when weights are given.
    Match {
        graph: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Balance constant as `p/q`.
        #[arg(long)]
        c1: Option<String>,
        #[arg(long)]
        base_case: Option<usize>,
        /// Write metric lines here.
        #[arg(long)]
        metrics: Option<PathBuf>,
    },
    /// Print a Gomory-Hu tree; capacities are the weights, or 1 per edge.
    GomoryHu {
        graph: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Print a minimum odd cut; capacities are the weights, or 1 per edge.
    MinOddCut {
        graph: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Time the matching driver over a corpus.
    Bench {
        #[arg(long, value_enum, default_value = "small")]
        corpus: CorpusName,
        #[arg(long)]
        c1: Option<String>,
        #[arg(long, default_value_t = 64)]
        base_case: usize,
    },
}

fn read_graph(path: &Path, weights: Option<&PathBuf>) -> Res<(PlanarGraph, Option<EdgeWeights>)> {
    let file = parse_graph(&fs::read_to_string(path)?)?;
    let w = match weights {
        Some(p) => Some(parse_weights(&fs::read_to_string(p)?)?),
        None => file.weights,
    };
    Ok((file.graph, w))
}

fn capacities(g: &PlanarGraph, w: Option<&EdgeWeights>) -> Capacities {
    g.edge_ids()
        .map(|e| {
            let c = w.map_or(1, |w| w.get(&e).copied().unwrap_or(0));
            (e, Rational::from_integer(BigInt::from(c)))
        })
        .collect()
}

fn parse_c1(s: &str) -> Res<Rational> {
    let (p, q) = s.split_once('/').ok_or("c1 must look like p/q")?;
    let (p, q): (BigInt, BigInt) = (p.trim().parse()?, q.trim().parse()?);
    if q == BigInt::from(0) {
        return Err("c1 has a zero denominator".into());
    }
    Ok(Rational::new(p, q))
}

fn config(c1: Option<&String>, base_case: Option<usize>) -> Res<AlgorithmConfig> {
    let mut cfg = AlgorithmConfig::default();
    if let Some(c) = c1 {
        cfg.c1 = parse_c1(c)?;
    }
    if let Some(b) = base_case {
        cfg.base_case = b;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn read_matching(path: &Path) -> Res<BTreeSet<EdgeId>> {
    let mut out = BTreeSet::new();
    for line in fs::read_to_string(path)?.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let id = line.strip_prefix("match").ok_or_else(|| format!("bad matching line `{line}`"))?;
        out.insert(EdgeId(id.trim().parse()?));
    }
    Ok(out)
}

fn run(cli: Cli) -> Res<ExitCode> {
    match cli.command {
        Command::Gen { name, params, seed, out, list } => {
            if list {
                GENERATORS.iter().for_each(|g| println!("{g}"));
                return Ok(ExitCode::SUCCESS);
            }
            let name = name.ok_or("missing generator name")?;
            let inst = generate(&name, &params, seed)?;
            let text = write_graph(&inst.graph, inst.weights.as_ref());
            match out {
                Some(p) => fs::write(p, text)?,
                None => print!("{text}"),
            }
        }
        Command::Verify { graph, matching, suite, base_case } => {
            if let Some(c) = suite {
                let cfg = config(None, Some(base_case))?;
                let reports = run_suite(&c.entries(), &cfg, &SuiteLimits::default());
                let failed = reports.iter().filter(|r| !r.pass).count();
                for r in &reports {
                    let status = if r.pass { "pass" } else { "FAIL" };
                    println!(
                        "{status} check={} instance={} expected={} actual={}",
                        r.check, r.instance, r.expected, r.actual
                    );
                }
                println!("checks={} failed={failed}", reports.len());
                return Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE });
            }
            let path = graph.ok_or("give a graph file or --suite")?;
            let (g, _) = read_graph(&path, None)?;
            g.validate()?;
            println!("vertices={} edges={} faces={}", g.vertex_count(), g.edge_count(), g.face_count());
            if let Some(m) = matching {
                let ok = validate_matching(&g, &read_matching(&m)?);
                println!("perfect_matching={ok}");
                if !ok {
                    return Ok(ExitCode::FAILURE);
                }
            }
        }
        Command::Count { graph, weights } => {
            let (g, w) = read_graph(&graph, weights.as_ref())?;
            let c = count_matchings(&g, &w.unwrap_or_default())?;
            match c.det_degree {
                Some(d) => println!("d {d}"),
                None => println!("d none"),
            }
            println!("m {}", c.total);
            for e in g.edge_ids() {
                println!("edge {} {}", e.0, c.per_edge.get(&e).cloned().unwrap_or_default());
            }
        }
        Command::Match { graph, weights, c1, base_case, metrics } => {
            let (g, w) = read_graph(&graph, weights.as_ref())?;
            let cfg = config(c1.as_ref(), base_case)?;
            let result = match &w {
                Some(w) => min_weight_perfect_matching(&g, w, &cfg),
                None => perfect_matching(&g, &cfg),
            };
            let r = match result {
                Ok(r) => r,
                Err(DriverError::NoPerfectMatching) => {
                    eprintln!("no perfect matching");
                    return Ok(ExitCode::from(2));
                }
                Err(e) => return Err(e.into()),
            };
            for e in &r.matching {
                println!("match {}", e.0);
            }
            if let Some(p) = metrics {
                fs::write(p, r.metrics_text())?;
            }
        }
        Command::GomoryHu { graph, weights } => {
            let (g, w) = read_graph(&graph, weights.as_ref())?;
            let tree = gomory_hu_tree(&g, &capacities(&g, w.as_ref()))?;
            for (i, c) in tree.classes.iter().enumerate() {
                let vs: Vec<String> = c.iter().map(|v| v.0.to_string()).collect();
                println!("class {i} {}", vs.join(" "));
            }
            for e in &tree.edges {
                println!("tree {} {} {}", e.a, e.b, e.weight);
            }
            println!("rounds {}", tree.rounds);
        }
        Command::MinOddCut { graph, weights } => {
            let (g, w) = read_graph(&graph, weights.as_ref())?;
            let cut = min_odd_cut(&g, &capacities(&g, w.as_ref()))?;
            println!("weight {}", cut.weight);
            let vs: Vec<String> = cut.side.iter().map(|v| v.0.to_string()).collect();
            println!("side {}", vs.join(" "));
        }
        Command::Bench { corpus, c1, base_case } => {
            let cfg = config(c1.as_ref(), Some(base_case))?;
            for entry in corpus.entries() {
                let inst = entry.build()?;
                let g = &inst.graph;
                let start = Instant::now();
                let result = perfect_matching(g, &cfg);
                let ms = start.elapsed().as_secs_f64() * 1000.0;
                let head = format!("instance={entry} vertices={} edges={}", g.vertex_count(), g.edge_count());
                match result {
                    Ok(r) => println!(
                        "{head} ms={ms:.1} depth={} reduce_calls={} fallbacks={}",
                        r.profile.recursion_depth,
                        r.profile.reduce_calls.iter().sum::<usize>(),
                        r.profile.fallbacks
                    ),
                    Err(e) => println!("{head} ms={ms:.1} error=\"{e}\""),
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
