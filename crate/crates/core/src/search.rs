//! Exhaustive and randomized sweeps over balanced bipartite digraphs.
//!
//! A sweep filters every generated digraph through strong connectivity, then
//! a premise, then checks a conclusion, counting at each stage and keeping
//! every digraph where the premise holds but the conclusion fails. Work is
//! split into `workers` shards by residue class (of the arc code in
//! exhaustive mode, of the sample index in random mode); shard results are
//! merged by adding counters and sorting the collected digraphs by arc code,
//! so the final report does not depend on the worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{is_isomorphic, match_exception, build_exception, ExceptionName};
use crate::conditions::{
    satisfies_bk, satisfies_dom_pairs_3a, satisfies_nonadjacent_3a, satisfies_sharp_premise,
};
use crate::digraph::{ArcCode, BalancedBipartiteDigraph, VertexRef};
use crate::error::{Error, Result};
use crate::factors::{cycle_factor, perfect_matching, MatchingDirection};
use crate::format;
use crate::ham::{has_cycle_at_least, is_hamiltonian, DP_MAX_ORDER};

/// Version tag carried by every serialized report.
pub const SCHEMA_VERSION: u32 = 1;

/// Largest order accepted by exhaustive enumeration (`2^(2a²)` digraphs).
pub const EXHAUSTIVE_MAX_ORDER: usize = 3;

/// Default arc probabilities for the sweep generator.
pub const DEFAULT_PROBABILITIES: [f64; 4] = [0.3, 0.5, 0.7, 0.9];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    /// Condition `B_1` implies Hamiltonian.
    Main,
    /// The `(2a-2, a+1)` premise implies Hamiltonian or one of the catalog digraphs.
    Sharp,
    /// Non-adjacent degree sums `>= 3a` imply Hamiltonian.
    Adamus3a,
    /// Dominating/dominated pair sums `>= 3a` imply a cycle factor.
    Prop1,
    /// The `(2a-2, a+1)` premise, away from `H2`, implies perfect matchings both ways.
    Lemma1,
    /// The `(2a-2, a+1)` premise with `a >= 3` implies a cycle of length `>= 4`.
    Lemma3,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::Main,
        TheoremId::Sharp,
        TheoremId::Adamus3a,
        TheoremId::Prop1,
        TheoremId::Lemma1,
        TheoremId::Lemma3,
    ];

    fn min_order(self) -> usize {
        match self {
            TheoremId::Lemma3 => 3,
            _ => 2,
        }
    }

    /// The premise, not including strong connectivity.
    pub fn premise(self, d: &BalancedBipartiteDigraph) -> bool {
        let holds = |r: Result<crate::conditions::ConditionReport>| r.is_ok_and(|r| r.holds);
        match self {
            TheoremId::Main => holds(satisfies_bk(d, 1)),
            TheoremId::Sharp | TheoremId::Lemma3 => holds(satisfies_sharp_premise(d)),
            TheoremId::Adamus3a => holds(satisfies_nonadjacent_3a(d)),
            TheoremId::Prop1 => holds(satisfies_dom_pairs_3a(d)),
            TheoremId::Lemma1 => holds(satisfies_sharp_premise(d)) && h2_family(d).is_none(),
        }
    }

    pub fn conclusion(self, d: &BalancedBipartiteDigraph) -> Result<bool> {
        Ok(match self {
            TheoremId::Main | TheoremId::Adamus3a => is_hamiltonian(d)?.is_some(),
            TheoremId::Sharp => is_hamiltonian(d)?.is_some() || match_exception(d).is_some(),
            TheoremId::Prop1 => cycle_factor(d).is_some(),
            TheoremId::Lemma1 => MatchingDirection::BOTH
                .iter()
                .all(|&dir| perfect_matching(d, dir).is_some()),
            TheoremId::Lemma3 => has_cycle_at_least(d, 4)?,
        })
    }
}

fn h2_family(d: &BalancedBipartiteDigraph) -> Option<ExceptionName> {
    [ExceptionName::H2, ExceptionName::H2X]
        .into_iter()
        .find(|&n| is_isomorphic(d, &build_exception(n)).is_some())
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremId::Main => "main",
            TheoremId::Sharp => "sharp",
            TheoremId::Adamus3a => "adamus3a",
            TheoremId::Prop1 => "prop1",
            TheoremId::Lemma1 => "lemma1",
            TheoremId::Lemma3 => "lemma3",
        })
    }
}

impl std::str::FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown theorem `{s}` (expected main, sharp, adamus3a, prop1, lemma1 or lemma3)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorProfile {
    /// Independent arcs at each probability of the grid in turn.
    Sweep,
    /// Start complete and delete arcs in random order while the digraph
    /// stays strong and the premise keeps holding.
    Biased,
    /// Even samples sweep, odd samples biased.
    Mixed,
}

impl std::str::FromStr for GeneratorProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sweep" => Ok(GeneratorProfile::Sweep),
            "biased" => Ok(GeneratorProfile::Biased),
            "mixed" => Ok(GeneratorProfile::Mixed),
            _ => Err(Error::InvalidInput(format!(
                "unknown generator profile `{s}` (expected sweep, biased or mixed)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub samples: u64,
    pub seed: u64,
    pub profile: GeneratorProfile,
    pub probabilities: Vec<f64>,
}

impl RandomSpec {
    pub fn new(samples: u64, seed: u64) -> Self {
        RandomSpec {
            samples,
            seed,
            profile: GeneratorProfile::Mixed,
            probabilities: DEFAULT_PROBABILITIES.to_vec(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.probabilities.is_empty() {
            return Err(Error::InvalidInput("probability grid is empty".into()));
        }
        self.probabilities.iter().try_for_each(|&p| check_probability(p))
    }

    /// The sample generator for index `i`: an independent ChaCha stream.
    fn rng(&self, i: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(i);
        rng
    }

    fn sample(
        &self,
        a: usize,
        i: u64,
        premise: &dyn Fn(&BalancedBipartiteDigraph) -> bool,
    ) -> BalancedBipartiteDigraph {
        let mut rng = self.rng(i);
        let biased = match self.profile {
            GeneratorProfile::Sweep => false,
            GeneratorProfile::Biased => true,
            GeneratorProfile::Mixed => i % 2 == 1,
        };
        if biased {
            biased_digraph(a, &mut rng, premise)
        } else {
            let slot = match self.profile {
                GeneratorProfile::Mixed => i / 2,
                _ => i,
            };
            let p = self.probabilities[(slot % self.probabilities.len() as u64) as usize];
            random_digraph_with(a, p, &mut rng)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random(RandomSpec),
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("arc probability {p} is outside [0, 1]")))
    }
}

/// Every digraph of order `a`, in increasing arc-code order.
pub fn enumerate_all(a: usize) -> Result<impl Iterator<Item = BalancedBipartiteDigraph>> {
    let total = exhaustive_count(a)?;
    Ok((0..total).map(move |c| BalancedBipartiteDigraph::from_code(a, c).expect("code in range")))
}

fn exhaustive_count(a: usize) -> Result<u64> {
    if a == 0 || a > EXHAUSTIVE_MAX_ORDER {
        return Err(Error::Capacity(format!(
            "exhaustive enumeration supports 1 <= a <= {EXHAUSTIVE_MAX_ORDER} \
             (2^(2a^2) digraphs); use random mode for a = {a}"
        )));
    }
    Ok(1u64 << (2 * a * a))
}

/// Each of the `2a²` arcs independently with probability `p`.
pub fn random_digraph(a: usize, p: f64, seed: u64) -> Result<BalancedBipartiteDigraph> {
    if a < 2 {
        return Err(Error::InvalidInput(format!("random digraphs need a >= 2, got {a}")));
    }
    check_probability(p)?;
    BalancedBipartiteDigraph::empty(a)?;
    Ok(random_digraph_with(a, p, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn random_digraph_with(a: usize, p: f64, rng: &mut impl Rng) -> BalancedBipartiteDigraph {
    let mut d = BalancedBipartiteDigraph::empty(a).expect("order checked");
    for (u, v) in all_arcs(a) {
        if rng.gen_bool(p) {
            d.insert_arc(u, v).expect("cross arc");
        }
    }
    d
}

fn all_arcs(a: usize) -> Vec<(VertexRef, VertexRef)> {
    let mut arcs = Vec::with_capacity(2 * a * a);
    for i in 0..a {
        for j in 0..a {
            arcs.push((VertexRef::x(i), VertexRef::y(j)));
        }
    }
    for i in 0..a {
        for j in 0..a {
            arcs.push((VertexRef::y(i), VertexRef::x(j)));
        }
    }
    arcs
}

/// Deletes arcs of the complete digraph in random order, keeping each
/// deletion only if the result is still strong and satisfies `premise`,
/// until a random number of deletions has been made.
fn biased_digraph(
    a: usize,
    rng: &mut impl Rng,
    premise: &dyn Fn(&BalancedBipartiteDigraph) -> bool,
) -> BalancedBipartiteDigraph {
    let mut d = BalancedBipartiteDigraph::complete(a).expect("order checked");
    let mut arcs = all_arcs(a);
    arcs.shuffle(rng);
    let target = rng.gen_range(0..=arcs.len());
    let mut deleted = 0;
    for (u, v) in arcs {
        if deleted == target {
            break;
        }
        d.remove_arc(u, v).expect("cross arc");
        if d.is_strong() && premise(&d) {
            deleted += 1;
        } else {
            d.insert_arc(u, v).expect("cross arc");
        }
    }
    d
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub theorem: TheoremId,
    pub a: usize,
    pub mode: Mode,
    pub generated: u64,
    pub strong_count: u64,
    pub premise_count: u64,
    pub checked: u64,
    /// Strong premise-satisfying digraphs isomorphic to a catalog entry
    /// (`sharp`: the non-Hamiltonian exceptions; `lemma1`: the excluded `H2` family).
    pub exception_matches: BTreeMap<ExceptionName, u64>,
    /// Counterexamples in BBD text, sorted by arc code, without duplicates.
    pub counterexamples: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Default)]
struct Tally {
    generated: u64,
    strong: u64,
    premise: u64,
    checked: u64,
    exceptions: BTreeMap<ExceptionName, u64>,
    hits: Vec<(ArcCode, String)>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.generated += other.generated;
        self.strong += other.strong;
        self.premise += other.premise;
        self.checked += other.checked;
        for (k, v) in other.exceptions {
            *self.exceptions.entry(k).or_default() += v;
        }
        self.hits.extend(other.hits);
        self
    }

    fn sorted_hits(&mut self) -> Vec<String> {
        let mut hits = std::mem::take(&mut self.hits);
        hits.sort_by(|x, y| x.0.cmp(&y.0));
        hits.dedup_by(|x, y| x.0 == y.0);
        hits.into_iter().map(|(_, s)| s).collect()
    }

    fn record(&mut self, d: &BalancedBipartiteDigraph) {
        self.hits.push((d.arc_code(), format::render(d)));
    }
}

fn evaluate(theorem: TheoremId, d: &BalancedBipartiteDigraph, tally: &mut Tally) -> Result<()> {
    tally.generated += 1;
    if !d.is_strong() {
        return Ok(());
    }
    tally.strong += 1;
    if theorem == TheoremId::Lemma1 {
        if let Some(name) = h2_family(d) {
            if satisfies_sharp_premise(d)?.holds {
                *tally.exceptions.entry(name).or_default() += 1;
            }
            return Ok(());
        }
    }
    if !theorem.premise(d) {
        return Ok(());
    }
    tally.premise += 1;
    tally.checked += 1;
    if theorem == TheoremId::Sharp && is_hamiltonian(d)?.is_none() {
        match match_exception(d) {
            Some(name) => *tally.exceptions.entry(name).or_default() += 1,
            None => tally.record(d),
        }
        return Ok(());
    }
    if !theorem.conclusion(d)? {
        tally.record(d);
    }
    Ok(())
}

/// Runs `shard(w)` for `w` in `0..workers` and returns the results in shard order.
fn run_sharded<T: Send>(workers: usize, shard: impl Fn(usize) -> T + Sync + Send) -> Result<Vec<T>> {
    if workers == 0 {
        return Err(Error::InvalidInput("worker count must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidInput(format!("cannot start worker pool: {e}")))?;
        Ok(pool.install(|| (0..workers).into_par_iter().map(&shard).collect()))
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok((0..workers).map(shard).collect())
    }
}

fn merge_shards(parts: Vec<Result<Tally>>) -> Result<Tally> {
    parts
        .into_iter()
        .try_fold(Tally::default(), |acc, part| Ok(acc.merge(part?)))
}

/// Checks a theorem over every digraph of order `a` (exhaustive) or over
/// seeded random samples.
pub fn verify(theorem: TheoremId, a: usize, mode: &Mode, workers: usize) -> Result<VerificationReport> {
    if a < theorem.min_order() {
        return Err(Error::InvalidInput(format!(
            "{theorem} needs a >= {}, got {a}",
            theorem.min_order()
        )));
    }
    let start = Instant::now();
    let w = workers as u64;
    let parts = match mode {
        Mode::Exhaustive => {
            let total = exhaustive_count(a)?;
            run_sharded(workers, |shard| {
                let mut tally = Tally::default();
                let mut code = shard as u64;
                while code < total {
                    let d = BalancedBipartiteDigraph::from_code(a, code)?;
                    evaluate(theorem, &d, &mut tally)?;
                    code += w;
                }
                Ok(tally)
            })?
        }
        Mode::Random(spec) => {
            check_random_order(a)?;
            spec.validate()?;
            let premise = |d: &BalancedBipartiteDigraph| theorem.premise(d);
            run_sharded(workers, |shard| {
                let mut tally = Tally::default();
                let mut i = shard as u64;
                while i < spec.samples {
                    let d = spec.sample(a, i, &premise);
                    evaluate(theorem, &d, &mut tally)?;
                    i += w;
                }
                Ok(tally)
            })?
        }
    };
    let mut tally = merge_shards(parts)?;
    Ok(VerificationReport {
        schema: SCHEMA_VERSION,
        theorem,
        a,
        mode: mode.clone(),
        generated: tally.generated,
        strong_count: tally.strong,
        premise_count: tally.premise,
        checked: tally.checked,
        exception_matches: std::mem::take(&mut tally.exceptions),
        counterexamples: tally.sorted_hits(),
        elapsed: start.elapsed(),
    })
}

fn check_random_order(a: usize) -> Result<()> {
    if a > DP_MAX_ORDER {
        return Err(Error::Capacity(format!(
            "random mode supports a <= {DP_MAX_ORDER}, got a = {a}"
        )));
    }
    Ok(())
}

/// Re-checks a serialized counterexample from scratch: strong, premise holds,
/// conclusion fails.
pub fn reverify_counterexample(theorem: TheoremId, bbd: &str) -> Result<bool> {
    let d = format::parse(bbd)?;
    Ok(d.is_strong() && theorem.premise(&d) && !theorem.conclusion(&d)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplorationReport {
    pub schema: u32,
    pub a: usize,
    pub k: usize,
    pub samples: u64,
    pub seed: u64,
    pub profile: GeneratorProfile,
    pub probabilities: Vec<f64>,
    pub generated: u64,
    pub strong_count: u64,
    pub premise_count: u64,
    /// Strong, `B_k`-satisfying, non-Hamiltonian digraphs in BBD text.
    pub found: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Samples digraphs of order `a >= 4` looking for strong non-Hamiltonian
/// digraphs satisfying `B_k` with `2 <= k <= a/2`. Reports what it finds and
/// draws no conclusion.
pub fn explore_problem1(a: usize, k: usize, spec: &RandomSpec, workers: usize) -> Result<ExplorationReport> {
    if a < 4 {
        return Err(Error::InvalidInput(format!("exploration needs a >= 4, got {a}")));
    }
    if k < 2 || 2 * k > a {
        return Err(Error::InvalidInput(format!(
            "k must satisfy 2 <= k <= a/2, got k = {k} with a = {a}"
        )));
    }
    check_random_order(a)?;
    spec.validate()?;
    let start = Instant::now();
    let premise = |d: &BalancedBipartiteDigraph| satisfies_bk(d, k).is_ok_and(|r| r.holds);
    let w = workers as u64;
    let parts = run_sharded(workers, |shard| {
        let mut tally = Tally::default();
        let mut i = shard as u64;
        while i < spec.samples {
            let d = spec.sample(a, i, &premise);
            tally.generated += 1;
            if d.is_strong() {
                tally.strong += 1;
                if premise(&d) {
                    tally.premise += 1;
                    if is_hamiltonian(&d)?.is_none() {
                        tally.record(&d);
                    }
                }
            }
            i += w;
        }
        Ok(tally)
    })?;
    let mut tally = merge_shards(parts)?;
    Ok(ExplorationReport {
        schema: SCHEMA_VERSION,
        a,
        k,
        samples: spec.samples,
        seed: spec.seed,
        profile: spec.profile,
        probabilities: spec.probabilities.clone(),
        generated: tally.generated,
        strong_count: tally.strong,
        premise_count: tally.premise,
        found: tally.sorted_hits(),
        elapsed: start.elapsed(),
    })
}

/// Re-checks an exploration candidate from scratch: strong, `B_k` holds,
/// no Hamiltonian cycle.
pub fn reverify_candidate(k: usize, bbd: &str) -> Result<bool> {
    let d = format::parse(bbd)?;
    Ok(d.is_strong() && satisfies_bk(&d, k)?.holds && is_hamiltonian(&d)?.is_none())
}
