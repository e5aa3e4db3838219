//! Certification that `(H, π)` preserves every thresholded terminal mincut.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{check_limit, invalid, Result};
use crate::flow::FlowEngine;
use crate::hypergraph::{Hypergraph, ProjectionMap, TerminalSet, VertexId};

/// Default terminal limit for exhaustive verification.
pub const EXHAUSTIVE_TERMINAL_LIMIT: usize = 12;

/// Terminal limit for the scan over all disjoint pairs.
pub const PAIR_SCAN_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every nontrivial terminal bipartition.
    Exhaustive,
    /// Every pair of disjoint nonempty terminal subsets (`3^|T|` scan).
    AllPairs,
    /// Singleton-vs-rest bipartitions, then `count` random disjoint pairs.
    Sampled { count: usize, seed: u64 },
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyMode::Exhaustive => write!(f, "exhaustive"),
            VerifyMode::AllPairs => write!(f, "all-pairs"),
            VerifyMode::Sampled { count, seed } => write!(f, "sampled:{count}:seed={seed}"),
        }
    }
}

/// A terminal pair whose thresholded mincut differs between G and H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub t1: Vec<VertexId>,
    pub t2: Vec<VertexId>,
    pub value_g: usize,
    pub value_h: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub mode: VerifyMode,
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub passed: bool,
}

impl VerificationReport {
    /// One machine-readable line per report plus one per failure.
    pub fn to_lines(&self) -> String {
        let mut out = format!(
            "verify mode={} checked={} failures={} passed={}\n",
            self.mode,
            self.checked,
            self.failures.len(),
            self.passed
        );
        for f in &self.failures {
            out.push_str(&format!(
                "failure t1={} t2={} g={} h={}\n",
                join(&f.t1),
                join(&f.t2),
                f.value_g,
                f.value_h
            ));
        }
        out
    }
}

fn join(set: &[VertexId]) -> String {
    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode:     {}", self.mode)?;
        writeln!(f, "checked:  {}", self.checked)?;
        writeln!(f, "failures: {}", self.failures.len())?;
        for fl in self.failures.iter().take(10) {
            writeln!(
                f,
                "  T1={{{}}} T2={{{}}}: G={} H={}",
                join(&fl.t1),
                join(&fl.t2),
                fl.value_g,
                fl.value_h
            )?;
        }
        write!(f, "result:   {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

struct Checker<'a> {
    g: FlowEngine,
    h: FlowEngine,
    pi: &'a ProjectionMap,
    c: usize,
}

impl Checker<'_> {
    fn check(&mut self, t1: &[VertexId], t2: &[VertexId]) -> Option<Failure> {
        let vg = self.g.mincut_value(t1, t2).expect("validated terminals").clamp(self.c);
        let a = self.pi.apply_set(t1);
        let b = self.pi.apply_set(t2);
        let overlap = a.iter().any(|v| b.binary_search(v).is_ok());
        let vh = if overlap {
            self.c
        } else {
            self.h.mincut_value(&a, &b).expect("validated images").clamp(self.c)
        };
        (vg != vh).then(|| Failure {
            t1: t1.to_vec(),
            t2: t2.to_vec(),
            value_g: vg,
            value_h: vh,
        })
    }
}

fn split(tv: &[VertexId], mask: u64) -> (Vec<VertexId>, Vec<VertexId>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, &v) in tv.iter().enumerate() {
        if mask >> i & 1 == 1 {
            a.push(v);
        } else {
            b.push(v);
        }
    }
    (a, b)
}

fn run_checks(
    g: &Hypergraph,
    h: &Hypergraph,
    pi: &ProjectionMap,
    c: usize,
    pairs: Vec<(Vec<VertexId>, Vec<VertexId>)>,
) -> (usize, Vec<Failure>) {
    let base_g = FlowEngine::new(g, c);
    let base_h = FlowEngine::new(h, c);
    let checked = pairs.len();
    let failures = pairs
        .into_par_iter()
        .map_init(
            || Checker {
                g: base_g.clone(),
                h: base_h.clone(),
                pi,
                c,
            },
            |ck, (a, b)| ck.check(&a, &b),
        )
        .flatten()
        .collect();
    (checked, failures)
}

/// Checks `min(mincut_G(T1,T2), c) == min(mincut_H(π(T1),π(T2)), c)`. When
/// `π(T1)` and `π(T2)` share a vertex the H side counts as `c`.
pub fn verify_sparsifier(
    g: &Hypergraph,
    t: &TerminalSet,
    h: &Hypergraph,
    pi: &ProjectionMap,
    c: usize,
    mode: VerifyMode,
) -> Result<VerificationReport> {
    if pi.domain_size() != g.num_vertices() || pi.image_size() != h.num_vertices() {
        return invalid(format!(
            "projection maps {} -> {} but the graphs have {} and {} vertices",
            pi.domain_size(),
            pi.image_size(),
            g.num_vertices(),
            h.num_vertices()
        ));
    }
    t.validate(g.num_vertices())?;
    let tv = t.to_vec();
    let k = tv.len();
    let mut pairs = Vec::new();
    match mode {
        VerifyMode::Exhaustive => {
            check_limit("terminal count", k, EXHAUSTIVE_TERMINAL_LIMIT)?;
            if k >= 2 {
                // the smallest terminal always sits in T1
                for mask in (1..(1u64 << k)).step_by(2) {
                    if mask != (1u64 << k) - 1 {
                        pairs.push(split(&tv, mask));
                    }
                }
            }
        }
        VerifyMode::AllPairs => {
            check_limit("terminal count", k, PAIR_SCAN_LIMIT)?;
            let total = 3usize.pow(k as u32);
            for code in 0..total {
                let (mut a, mut b) = (Vec::new(), Vec::new());
                let mut x = code;
                for &v in &tv {
                    match x % 3 {
                        1 => a.push(v),
                        2 => b.push(v),
                        _ => {}
                    }
                    x /= 3;
                }
                if !a.is_empty() && !b.is_empty() {
                    pairs.push((a, b));
                }
            }
        }
        VerifyMode::Sampled { count, seed } => {
            if k >= 2 {
                for &v in &tv {
                    pairs.push((vec![v], tv.iter().copied().filter(|&w| w != v).collect()));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                while pairs.len() < k + count {
                    let (mut a, mut b) = (Vec::new(), Vec::new());
                    for &v in &tv {
                        match rng.gen_range(0..3) {
                            0 => a.push(v),
                            1 => b.push(v),
                            _ => {}
                        }
                    }
                    if !a.is_empty() && !b.is_empty() {
                        pairs.push((a, b));
                    }
                }
            }
        }
    }
    let (checked, failures) = run_checks(g, h, pi, c, pairs);
    Ok(VerificationReport {
        mode,
        checked,
        passed: failures.is_empty(),
        failures,
    })
}
