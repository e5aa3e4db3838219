use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use hypersparse::{
    build_pruned_auxiliary_graph, enumerate_connected_cuts, expander_decompose, parse_instance, parse_projection,
    polytime_sparsify, sparsify_fast, sparsify_slow, verify_sparsifier, write_instance, write_projection,
    EnumerationParams, Error, Hypergraph, PipelineConfig, SparsifierOutput, TerminalSet, VerifyMode,
};
use num_rational::Ratio;
use serde_json::json;

use crate::exit;
use crate::Method;

/// Terminal counts up to this are verified exhaustively by default.
const AUTO_EXHAUSTIVE: usize = 12;
const AUTO_SAMPLES: usize = 1000;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: exit::BAD_INPUT,
            message: message.into(),
        }
    }
}

fn lib(context: &Path, e: Error) -> Failure {
    let code = match e {
        Error::Parse { .. } | Error::InvalidInput(_) => exit::BAD_INPUT,
        Error::OracleLimit { .. } => exit::LIMIT,
        Error::ContractViolation(_) | Error::Internal(_) => exit::INTERNAL,
    };
    Failure {
        code,
        message: format!("{}: {e}", context.display()),
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<(Hypergraph, TerminalSet), Failure> {
    parse_instance(&read(path)?).map_err(|e| lib(path, e))
}

/// Accepts `a`, `a/b` or a decimal such as `0.25`.
fn parse_ratio(text: &str, what: &str) -> Result<Ratio<u64>, Failure> {
    let bad = || Failure::input(format!("cannot read {what} from '{text}'"));
    let r = if let Some((int, frac)) = text.split_once('.') {
        if frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int.checked_mul(scale).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?;
        Ratio::new(num, scale)
    } else {
        let (num, den) = text.split_once('/').unwrap_or((text, "1"));
        let (num, den) = (u64::from_str(num).map_err(|_| bad())?, u64::from_str(den).map_err(|_| bad())?);
        if den == 0 {
            return Err(bad());
        }
        Ratio::new(num, den)
    };
    Ok(r)
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub struct SparsifyArgs {
    pub input: PathBuf,
    pub c: usize,
    pub method: Method,
    pub cprime: u64,
    pub seed: u64,
    pub safe_mode: bool,
    pub precontract: bool,
    pub out: Option<PathBuf>,
    pub proj: Option<PathBuf>,
    pub stats: Option<PathBuf>,
}

fn stats_record(args: &SparsifyArgs, g: &Hypergraph, t: &TerminalSet, out: &SparsifierOutput, millis: u128) -> String {
    let method = match args.method {
        Method::Fast => "fast",
        Method::Slow => "slow",
        Method::Poly => "poly",
    };
    let rounds: Vec<_> = out
        .stats
        .rounds
        .iter()
        .map(|r| {
            json!({
                "m_before": r.m_before,
                "m_after_precontract": r.m_after_precontract,
                "m_after": r.m_after,
                "phi_inv": r.phi_inv,
                "parts": r.parts,
                "uncertified_parts": r.uncertified_parts,
                "crossing_edges": r.crossing_edges,
                "millis": r.millis as u64,
            })
        })
        .collect();
    let record = json!({
        "method": method,
        "c": args.c,
        "seed": args.seed,
        "n": g.num_vertices(),
        "m": g.num_edges(),
        "terminals": t.len(),
        "n_h": out.sparsifier.num_vertices(),
        "m_h": out.sparsifier.num_edges(),
        "iterations": rounds.len(),
        "rounds": rounds,
        "cuts_enumerated": out.stats.cuts_enumerated,
        "useful_partitions": out.stats.useful_partitions,
        "base_cases": out.stats.base_cases,
        "initial_potential": out.stats.initial_potential,
        "millis": millis as u64,
    });
    record.to_string() + "\n"
}

pub fn sparsify(args: SparsifyArgs) -> Outcome {
    let (g, t) = load_instance(&args.input)?;
    let start = Instant::now();
    let out = match args.method {
        Method::Fast => {
            let mut config = PipelineConfig::new(args.c);
            config.c_prime = args.cprime;
            config.seed = args.seed;
            config.safe_mode = args.safe_mode;
            config.precontract = args.precontract;
            sparsify_fast(&g, &t, &config)
        }
        Method::Slow => sparsify_slow(&g, &t, args.c),
        Method::Poly => polytime_sparsify(&g, &t, args.c),
    }
    .map_err(|e| lib(&args.input, e))?;
    let millis = start.elapsed().as_millis();
    let h_text = write_instance(&out.sparsifier, &out.terminals);
    match &args.out {
        Some(path) => write(path, &h_text)?,
        None => print!("{h_text}"),
    }
    if let Some(path) = &args.proj {
        write(path, &write_projection(&out.projection))?;
    }
    if let Some(path) = &args.stats {
        write(path, &stats_record(&args, &g, &t, &out, millis))?;
    }
    eprintln!(
        "sparsified n={} m={} into n={} m={} in {millis} ms",
        g.num_vertices(),
        g.num_edges(),
        out.sparsifier.num_vertices(),
        out.sparsifier.num_edges()
    );
    Ok(exit::OK)
}

fn parse_mode(text: Option<&str>, k: usize, seed: u64) -> Result<VerifyMode, Failure> {
    let Some(text) = text else {
        return Ok(if k <= AUTO_EXHAUSTIVE {
            VerifyMode::Exhaustive
        } else {
            VerifyMode::Sampled {
                count: AUTO_SAMPLES,
                seed,
            }
        });
    };
    match text {
        "exhaustive" => Ok(VerifyMode::Exhaustive),
        "all-pairs" => Ok(VerifyMode::AllPairs),
        _ => {
            let count = text
                .strip_prefix("sampled:")
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| Failure::input(format!("unknown mode '{text}'; use exhaustive, all-pairs or sampled:N")))?;
            Ok(VerifyMode::Sampled { count, seed })
        }
    }
}

pub fn verify(g_path: &Path, h_path: &Path, p_path: &Path, c: usize, mode: Option<&str>, seed: u64, lines: bool) -> Outcome {
    let (g, t) = load_instance(g_path)?;
    let (h, _) = load_instance(h_path)?;
    let pi = parse_projection(&read(p_path)?).map_err(|e| lib(p_path, e))?;
    if pi.domain_size() != g.num_vertices() || pi.image_size() != h.num_vertices() {
        return Err(Failure::input(format!(
            "projection maps {} -> {} vertices but G has {} and H has {}",
            pi.domain_size(),
            pi.image_size(),
            g.num_vertices(),
            h.num_vertices()
        )));
    }
    let mode = parse_mode(mode, t.len(), seed)?;
    let report = verify_sparsifier(&g, &t, &h, &pi, c, mode).map_err(|e| lib(g_path, e))?;
    if lines {
        print!("{}", report.to_lines());
    } else {
        println!("{report}");
    }
    Ok(if report.passed { exit::OK } else { exit::COUNTEREXAMPLE })
}

pub fn enumerate_cuts(path: &Path, c: usize, phi_inv: Option<&str>, dot: Option<&Path>) -> Outcome {
    let (g, t) = load_instance(path)?;
    let params = match phi_inv {
        Some(text) => EnumerationParams::new(c, parse_ratio(text, "phi-inv")?, g.rank()).map_err(|e| lib(path, e))?,
        None => EnumerationParams::safe(&g, c),
    };
    let cuts = enumerate_connected_cuts(&g, &params);
    println!("cuts {}", cuts.len());
    for cut in &cuts {
        println!("value={} side={}", cut.value, join(&cut.side));
    }
    if let Some(dot_path) = dot {
        let aux = build_pruned_auxiliary_graph(&g, &t, &cuts, c).map_err(|e| lib(path, e))?;
        write(dot_path, &aux.to_dot())?;
    }
    Ok(exit::OK)
}

pub fn decompose(path: &Path, phi: &str) -> Outcome {
    let (g, _) = load_instance(path)?;
    let phi = parse_ratio(phi, "phi")?;
    let d = expander_decompose(&g, phi).map_err(|e| lib(path, e))?;
    println!(
        "parts={} crossing={} phi={}",
        d.parts.len(),
        d.crossing_edges.len(),
        d.phi
    );
    for (part, certified) in d.parts.iter().zip(&d.certified) {
        println!("part certified={certified} size={} vertices={}", part.len(), join(part));
    }
    Ok(exit::OK)
}

pub fn stats(path: &Path) -> Outcome {
    let (g, t) = load_instance(path)?;
    println!(
        "n={} m={} r={} p={} terminals={}",
        g.num_vertices(),
        g.num_edges(),
        g.rank(),
        g.total_size(),
        t.len()
    );
    Ok(exit::OK)
}
