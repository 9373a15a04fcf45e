//! The divide-and-conquer matching algorithm: balanced viable sets found by
//! alternately cleaning up the graph and reducing it through even walks,
//! with the minimum-weight variant obtained from composite weights.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{EdgeId, EdgeWeights, PlanarGraph, VertexId, VertexMap};
use crate::observer::{BlockingEvent, NoopObserver, Observer, ReduceEvent};
use crate::pfaffian::{avg_point_with_counts, count_min_weight, CountError};
use crate::polytope::{circulation, EvenWalk, FractionalPoint};
use crate::uncross::{find_blocking_odd_set_toward, Direction, EarlyExit, TightOddSet, UncrossContext};
use crate::walks::find_even_walks;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DriverError {
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("edge weight {weight} exceeds the bound {bound}")]
    WeightTooLarge { weight: u64, bound: u64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("no even walks in the reduced graph")]
    FallbackRequired,
    #[error("graph has {0} vertices, not more than the base case size")]
    TooSmall(usize),
    #[error(transparent)]
    Count(#[from] CountError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgorithmConfig {
    /// Balance constant: viable sets hold between `c1` and `1 - c1` of the
    /// vertices.
    pub c1: Rational,
    /// Graphs with at most this many vertices are solved by self-reduction.
    pub base_case: usize,
    /// Weights for the minimum-weight variant must be at most `|V|^k`.
    pub weight_exponent: u32,
    /// Reduce calls per balanced-viable-set search are expected to stay
    /// below `reduce_budget * log2 |E|`; exceeding it is only reported.
    pub reduce_budget: usize,
    /// Record metric lines.
    pub metrics: bool,
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        AlgorithmConfig {
            c1: Rational::new(BigInt::one(), BigInt::from(8)),
            base_case: 64,
            weight_exponent: 3,
            reduce_budget: 4,
            metrics: true,
        }
    }
}

impl AlgorithmConfig {
    pub fn validate(&self) -> Result<(), DriverError> {
        let zero = Rational::zero();
        let one = Rational::one();
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let c1 = &self.c1;
        if c1 <= &zero {
            return Err(DriverError::InvalidConfig("c1 must be positive".into()));
        }
        if Rational::from_integer(BigInt::from(3)) * c1 > &one - c1 {
            return Err(DriverError::InvalidConfig("need 3 c1 <= 1 - c1".into()));
        }
        if c1 + &half >= &one - c1 {
            return Err(DriverError::InvalidConfig("need c1 + 1/2 < 1 - c1".into()));
        }
        let min_base = (one / c1).ceil().to_integer();
        if BigInt::from(self.base_case) < min_base {
            return Err(DriverError::InvalidConfig(format!("base case size must be at least {min_base}")));
        }
        Ok(())
    }
}

/// One line of instrumentation, printed as `key=value` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricLine {
    pub phase: &'static str,
    pub round: usize,
    pub fields: Vec<(&'static str, String)>,
}

impl fmt::Display for MetricLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phase={} round={}", self.phase, self.round)?;
        for (k, v) in &self.fields {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// Where a viable set came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViableSource {
    Guard,
    MakeConnected,
    DegreeTwo,
    OddSet,
    Uncross,
    Fallback,
}

impl ViableSource {
    fn name(self) -> &'static str {
        match self {
            ViableSource::Guard => "guard",
            ViableSource::MakeConnected => "make-connected",
            ViableSource::DegreeTwo => "degree-two",
            ViableSource::OddSet => "odd-set",
            ViableSource::Uncross => "uncross",
            ViableSource::Fallback => "fallback",
        }
    }
}

/// Round counts and shrink statistics of one run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DepthProfile {
    pub recursion_depth: usize,
    /// Number of rounds per phase name, summed over all subproblems.
    pub phase_rounds: BTreeMap<&'static str, usize>,
    /// Reduce calls of each balanced-viable-set search, in recursion order.
    pub reduce_calls: Vec<usize>,
    /// `(edges before, edges after)` for every reduce call.
    pub shrink: Vec<(usize, usize)>,
    /// Subproblems finished by self-reduction above the base case size.
    pub fallbacks: usize,
}

impl DepthProfile {
    fn absorb(&mut self, other: DepthProfile) {
        self.recursion_depth = self.recursion_depth.max(other.recursion_depth);
        for (k, v) in other.phase_rounds {
            *self.phase_rounds.entry(k).or_default() += v;
        }
        self.reduce_calls.extend(other.reduce_calls);
        self.shrink.extend(other.shrink);
        self.fallbacks += other.fallbacks;
    }

    fn bump(&mut self, phase: &'static str) {
        *self.phase_rounds.entry(phase).or_default() += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    pub matching: BTreeSet<EdgeId>,
    pub profile: DepthProfile,
    pub metrics: Vec<MetricLine>,
}

impl MatchingResult {
    pub fn metrics_text(&self) -> String {
        self.metrics.iter().map(|l| format!("{l}\n")).collect()
    }
}

/// Whether `m` covers every vertex of `g` exactly once using edges of `g`.
pub fn is_perfect_matching(g: &PlanarGraph, m: &BTreeSet<EdgeId>) -> bool {
    let mut covered = BTreeSet::new();
    for &e in m {
        let Some([u, v]) = g.try_endpoints(e) else { return false };
        if !covered.insert(u) || !covered.insert(v) {
            return false;
        }
    }
    covered.len() == g.vertex_count()
}

/// Smallest `k` with `n (1 - c1)^k <= 1`, plus two.
pub fn depth_bound(n: usize, c1: &Rational) -> usize {
    let shrink = Rational::one() - c1;
    let mut size = Rational::from_integer(BigInt::from(n));
    let mut k = 0;
    while size > Rational::one() {
        size *= &shrink;
        k += 1;
    }
    k + 2
}

/// Finds a perfect matching.
pub fn perfect_matching(g: &PlanarGraph, cfg: &AlgorithmConfig) -> Result<MatchingResult, DriverError> {
    perfect_matching_observed(g, cfg, &NoopObserver)
}

pub fn perfect_matching_observed(
    g: &PlanarGraph,
    cfg: &AlgorithmConfig,
    observer: &dyn Observer,
) -> Result<MatchingResult, DriverError> {
    run(g, &EdgeWeights::new(), cfg, observer)
}

/// Finds a perfect matching of minimum total weight. Weights must be at
/// most `|V|^k` for the configured exponent `k`.
pub fn min_weight_perfect_matching(
    g: &PlanarGraph,
    weights: &EdgeWeights,
    cfg: &AlgorithmConfig,
) -> Result<MatchingResult, DriverError> {
    min_weight_perfect_matching_observed(g, weights, cfg, &NoopObserver)
}

pub fn min_weight_perfect_matching_observed(
    g: &PlanarGraph,
    weights: &EdgeWeights,
    cfg: &AlgorithmConfig,
    observer: &dyn Observer,
) -> Result<MatchingResult, DriverError> {
    let bound = (g.vertex_count() as u64).checked_pow(cfg.weight_exponent).unwrap_or(u64::MAX);
    if let Some(&weight) = weights.values().find(|&&w| w > bound) {
        return Err(DriverError::WeightTooLarge { weight, bound });
    }
    run(g, weights, cfg, observer)
}

fn run(
    g: &PlanarGraph,
    weights: &EdgeWeights,
    cfg: &AlgorithmConfig,
    observer: &dyn Observer,
) -> Result<MatchingResult, DriverError> {
    cfg.validate()?;
    if g.vertex_count() % 2 == 1 {
        return Err(DriverError::NoPerfectMatching);
    }
    let solver = Solver::new(g.vertex_count(), weights, cfg, observer)?;
    if !count_min_weight(g, &EdgeWeights::new())?.has_matching() {
        return Err(DriverError::NoPerfectMatching);
    }
    let out = solver.solve(g, 0);
    assert!(is_perfect_matching(g, &out.matching), "driver produced an invalid matching");
    let bound = depth_bound(g.vertex_count(), &cfg.c1);
    assert!(out.profile.recursion_depth <= bound, "recursion depth {} exceeds {bound}", out.profile.recursion_depth);
    Ok(MatchingResult { matching: out.matching, profile: out.profile, metrics: out.metrics })
}

/// Finds a balanced viable set of a graph with more than `base_case`
/// vertices, or reports that the walk machinery ran dry.
pub fn balanced_viable_set(
    g: &PlanarGraph,
    weights: &EdgeWeights,
    cfg: &AlgorithmConfig,
) -> Result<BTreeSet<VertexId>, DriverError> {
    cfg.validate()?;
    if g.vertex_count() <= cfg.base_case {
        return Err(DriverError::TooSmall(g.vertex_count()));
    }
    let solver = Solver::new(g.vertex_count(), weights, cfg, &NoopObserver)?;
    let mut out = Output::default();
    match solver.find_viable(g, 0, &mut out) {
        Search::Found(s, _) => Ok(s),
        Search::Fallback(..) => Err(DriverError::FallbackRequired),
    }
}

/// One cleanup phase on a contracted graph: drops edges outside every
/// minimum-weight perfect matching, then contracts small components and
/// runs of degree-two vertices.
pub fn preprocess(
    g: &PlanarGraph,
    f: &VertexMap,
    weights: &EdgeWeights,
    cfg: &AlgorithmConfig,
) -> Result<(PlanarGraph, VertexMap), Exit> {
    let solver = Solver::new(f.original_count(), weights, cfg, &NoopObserver).expect("weights fit");
    solver.preprocess(g, f, 0, 0, &mut Output::default())
}

/// One reduction phase on a contracted graph. `Ok(None)` means no even
/// walks were found.
pub fn reduce(
    g: &PlanarGraph,
    f: &VertexMap,
    weights: &EdgeWeights,
    cfg: &AlgorithmConfig,
    observer: &dyn Observer,
) -> Result<Option<(PlanarGraph, VertexMap)>, Exit> {
    let solver = Solver::new(f.original_count(), weights, cfg, observer).expect("weights fit");
    solver.reduce(g, f, 0, 0, &mut Output::default())
}

/// Tight odd sets blocking each walk, made at most half the original size
/// and then uncrossed into a disjoint family. Every walk must keep all its
/// edges in the support of `x`, which minimizes the outer weights first and
/// the walks' first edges second.
#[allow(clippy::too_many_arguments)]
pub fn disjoint_odd_sets(
    g: &PlanarGraph,
    f: &VertexMap,
    x: &FractionalPoint,
    walks: &[EvenWalk],
    m: &BigUint,
    weights: &EdgeWeights,
    cfg: &AlgorithmConfig,
    observer: &dyn Observer,
) -> Result<Vec<TightOddSet>, Exit> {
    let solver = Solver::new(f.original_count(), weights, cfg, observer).expect("weights fit");
    solver.disjoint_odd_sets(g, f, x, walks, m)
}

/// Minimum-weight perfect matching by repeatedly fixing the smallest edge
/// that lies in some minimum-weight perfect matching.
pub fn self_reduce(g: &PlanarGraph, w: &EdgeWeights) -> Result<BTreeSet<EdgeId>, DriverError> {
    let mut g = g.clone();
    let mut matching = BTreeSet::new();
    while g.vertex_count() > 0 {
        let x = match avg_point_with_counts(&g, w) {
            Ok((x, _)) => x,
            Err(CountError::NoPerfectMatching) => return Err(DriverError::NoPerfectMatching),
            Err(e) => return Err(e.into()),
        };
        let e = *x.support().iter().next().ok_or(DriverError::NoPerfectMatching)?;
        let [u, v] = g.endpoints(e);
        matching.insert(e);
        let zero: BTreeSet<EdgeId> = g.edge_ids().filter(|&f| !x.in_support(f)).collect();
        let keep: BTreeSet<VertexId> = g.vertices().filter(|&t| t != u && t != v).collect();
        g = g.remove_edges(&zero).induced(&keep);
    }
    Ok(matching)
}

/// Result of one subproblem, merged in recursion order.
#[derive(Default)]
struct Output {
    matching: BTreeSet<EdgeId>,
    profile: DepthProfile,
    metrics: Vec<MetricLine>,
}

impl Output {
    fn absorb(&mut self, other: Output) {
        self.matching.extend(other.matching);
        self.profile.absorb(other.profile);
        self.metrics.extend(other.metrics);
    }
}

enum Search {
    Found(BTreeSet<VertexId>, ViableSource),
    Fallback(PlanarGraph, VertexMap),
}

/// Early end of a phase: a balanced viable set, as vertices of the original
/// graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exit(pub BTreeSet<VertexId>, pub ViableSource);

struct Solver<'a> {
    cfg: &'a AlgorithmConfig,
    weights: &'a EdgeWeights,
    /// Multiplier of the outer weights; exceeds the number of edges of any
    /// perfect matching.
    scale: u64,
    observer: &'a dyn Observer,
}

impl<'a> Solver<'a> {
    fn new(
        original: usize,
        weights: &'a EdgeWeights,
        cfg: &'a AlgorithmConfig,
        observer: &'a dyn Observer,
    ) -> Result<Self, DriverError> {
        let scale = original as u64 / 2 + 1;
        for &w in weights.values() {
            if w.checked_mul(scale).and_then(|v| v.checked_add(scale)).is_none() {
                return Err(DriverError::WeightTooLarge { weight: w, bound: u64::MAX / scale - 1 });
            }
        }
        Ok(Solver { cfg, weights, scale, observer })
    }

    /// Outer weights on the edges of `g`.
    fn outer(&self, g: &PlanarGraph) -> EdgeWeights {
        g.edge_ids().map(|e| (e, self.weights.get(&e).copied().unwrap_or(0))).collect()
    }

    /// `scale * W_e + low(e)` on the edges of `g`.
    fn composite(&self, g: &PlanarGraph, scale: u64, low: impl Fn(EdgeId) -> u64) -> EdgeWeights {
        g.edge_ids().map(|e| (e, scale * self.weights.get(&e).copied().unwrap_or(0) + low(e))).collect()
    }

    /// Average of the perfect matchings minimizing `scale * W + low`, their
    /// number, and the `low` weight they share.
    ///
    /// Only edges of minimum-W perfect matchings can appear, so the count may
    /// run on that subgraph. If all its perfect matchings have the same W,
    /// the outer weights drop out and the numbers stay small.
    fn lex_avg(&self, g: &PlanarGraph, low: impl Fn(EdgeId) -> u64) -> (FractionalPoint, BigUint, u64) {
        let outer = self.outer(g);
        let (h, flat) = if outer.values().all(|&w| w == 0) {
            (g.clone(), true)
        } else {
            let xw = avg_point_with_counts(g, &outer).expect("current graph has a perfect matching").0;
            let zero: BTreeSet<EdgeId> = g.edge_ids().filter(|&e| !xw.in_support(e)).collect();
            let h = g.remove_edges(&zero);
            let all = count_min_weight(&h, &EdgeWeights::new()).expect("counting succeeds").total;
            let best = count_min_weight(&h, &self.outer(&h)).expect("counting succeeds").total;
            (h, all == best)
        };
        // any multiplier above the largest low weight of a perfect matching
        // keeps the two parts apart
        let lows = h.edge_ids().filter(|&e| low(e) > 0).count() as u64;
        let scale = self.scale.min(h.vertex_count() as u64 / 2 + 1).min(lows + 1);
        let w = if flat { h.edge_ids().map(|e| (e, low(e))).collect() } else { self.composite(&h, scale, &low) };
        let (x, counts) = avg_point_with_counts(&h, &w).expect("current graph has a perfect matching");
        let min = counts.min_weight.expect("matching exists");
        (x, counts.total, if flat { min } else { min % scale })
    }

    fn metric(&self, out: &mut Output, phase: &'static str, round: usize, fields: Vec<(&'static str, String)>) {
        if self.cfg.metrics {
            out.metrics.push(MetricLine { phase, round, fields });
        }
    }

    fn solve(&self, g: &PlanarGraph, depth: usize) -> Output {
        let mut out = Output::default();
        out.profile.recursion_depth = depth;
        let n = g.vertex_count();
        if n == 0 {
            return out;
        }
        if n <= self.cfg.base_case {
            out.profile.bump("base");
            self.metric(
                &mut out,
                "base",
                0,
                vec![("depth", depth.to_string()), ("vertices", n.to_string()), ("edges", g.edge_count().to_string())],
            );
            out.matching = self.base(g);
            return out;
        }
        let (side, source) = match self.find_viable(g, depth, &mut out) {
            Search::Found(s, source) => (s, source),
            Search::Fallback(gc, f) => (self.lift(&gc, &f), ViableSource::Fallback),
        };
        let cut: BTreeSet<EdgeId> = g.cut_edges(&side).into_iter().collect();
        let (x, _, crossings) = self.lex_avg(g, |e| cut.contains(&e) as u64);
        self.metric(
            &mut out,
            "viable",
            0,
            vec![
                ("depth", depth.to_string()),
                ("vertices", n.to_string()),
                ("edges", g.edge_count().to_string()),
                ("side", side.len().to_string()),
                ("source", source.name().to_string()),
                ("crossings", crossings.to_string()),
            ],
        );
        let balanced = {
            let s = Rational::from_integer(BigInt::from(side.len()));
            let total = Rational::from_integer(BigInt::from(n));
            s >= &self.cfg.c1 * &total && s <= (Rational::one() - &self.cfg.c1) * total
        };
        if crossings != 1 || !balanced {
            // the set failed the final viability check
            out.profile.fallbacks += 1;
            self.metric(&mut out, "fallback", 0, vec![("depth", depth.to_string()), ("vertices", n.to_string())]);
            out.matching = self.base(g);
            return out;
        }
        let e = *cut.iter().find(|&&e| x.in_support(e)).expect("a viable set has a cut edge with positive mass");
        let [a, b] = g.endpoints(e);
        let (inside, outside) = if side.contains(&a) { (a, b) } else { (b, a) };
        let left: BTreeSet<VertexId> = side.iter().copied().filter(|&v| v != inside).collect();
        let right: BTreeSet<VertexId> = g.vertices().filter(|v| !side.contains(v) && *v != outside).collect();
        let (g1, g2) = (g.induced(&left), g.induced(&right));
        let (o1, o2) = rayon::join(|| self.solve(&g1, depth + 1), || self.solve(&g2, depth + 1));
        out.matching.insert(e);
        out.absorb(o1);
        out.absorb(o2);
        out
    }

    fn base(&self, g: &PlanarGraph) -> BTreeSet<EdgeId> {
        self_reduce(g, &self.outer(g)).expect("subproblems have perfect matchings")
    }

    fn threshold(&self, f: &VertexMap) -> Rational {
        &self.cfg.c1 * Rational::from_integer(BigInt::from(f.original_count()))
    }

    fn large(&self, f: &VertexMap, s: &BTreeSet<VertexId>) -> bool {
        Rational::from_integer(BigInt::from(f.set_preimage_size(s))) >= self.threshold(f)
    }

    fn find_viable(&self, g0: &PlanarGraph, depth: usize, out: &mut Output) -> Search {
        let mut g = g0.clone();
        let mut f = VertexMap::identity(g0);
        let mut calls = 0;
        let budget = self.cfg.reduce_budget * (usize::BITS - g0.edge_count().max(2).leading_zeros()) as usize;
        let result = loop {
            if let Some(v) = g.vertices().find(|&v| self.large(&f, &BTreeSet::from([v]))) {
                break Search::Found(f.preimage(v).clone(), ViableSource::Guard);
            }
            match self.preprocess(&g, &f, depth, calls, out) {
                Ok((g2, f2)) => (g, f) = (g2, f2),
                Err(Exit(s, source)) => break Search::Found(s, source),
            }
            calls += 1;
            match self.reduce(&g, &f, depth, calls, out) {
                Ok(Some((g2, f2))) => (g, f) = (g2, f2),
                Ok(None) => break Search::Fallback(g, f),
                Err(Exit(s, source)) => break Search::Found(s, source),
            }
        };
        out.profile.reduce_calls.push(calls);
        self.metric(
            out,
            "search",
            calls,
            vec![
                ("depth", depth.to_string()),
                ("vertices", g0.vertex_count().to_string()),
                ("budget", budget.to_string()),
                ("within_budget", (calls <= budget).to_string()),
            ],
        );
        result
    }

    /// Balanced viable set from a minimum-weight perfect matching of the
    /// contracted graph: one vertex plus whole matched pairs, so exactly one
    /// matching edge leaves the set.
    fn lift(&self, g: &PlanarGraph, f: &VertexMap) -> BTreeSet<VertexId> {
        let m = self.base(g);
        let a = g.vertices().next().expect("nonempty graph");
        let mut s = BTreeSet::from([a]);
        for &e in &m {
            if self.large(f, &s) {
                break;
            }
            let [u, v] = g.endpoints(e);
            if u != a && v != a {
                s.insert(u);
                s.insert(v);
            }
        }
        f.lift(&s)
    }

    fn contract(
        &self,
        g: &PlanarGraph,
        f: &VertexMap,
        x: &FractionalPoint,
        s: &BTreeSet<VertexId>,
    ) -> (PlanarGraph, VertexMap) {
        let (g2, f2, fresh) = g.contract_set(s, f).expect("tight odd sets contract");
        assert!(x.degree_value(&g2, fresh).is_one(), "point leaves the polytope after contraction");
        (g2, f2)
    }

    fn preprocess(
        &self,
        g: &PlanarGraph,
        f: &VertexMap,
        depth: usize,
        round: usize,
        out: &mut Output,
    ) -> Result<(PlanarGraph, VertexMap), Exit> {
        out.profile.bump("preprocess");
        let (edges_before, vertices_before) = (g.edge_count(), g.vertex_count());
        let (x, _) = avg_point_with_counts(g, &self.outer(g)).expect("current graph has a perfect matching");
        let zero: BTreeSet<EdgeId> = g.edge_ids().filter(|&e| !x.in_support(e)).collect();
        let mut g = g.remove_edges(&zero);
        let mut f = f.clone();
        let mut contracted = 0;
        // make connected
        let mut comps = g.components();
        if comps.len() > 1 {
            comps.sort_by_key(|c| (f.set_preimage_size(&c.iter().copied().collect()), c[0]));
            let v = comps.last().unwrap()[0];
            let mut s = BTreeSet::from([v]);
            for c in &comps[..comps.len() - 1] {
                s.extend(c.iter().copied());
                if self.large(&f, &s) {
                    return Err(Exit(f.lift(&s), ViableSource::MakeConnected));
                }
            }
            (g, f) = self.contract(&g, &f, &x, &s);
            contracted += 1;
        }
        // shrink degree-two vertices
        while 2 * g.vertices().filter(|&v| g.degree(v) == 2).count() > g.vertex_count() {
            out.profile.bump("shrink-degree-two");
            let sets = degree_two_sets(&g);
            let mut used = BTreeSet::new();
            let mut any = false;
            for chain in sets {
                if chain.iter().any(|v| used.contains(v)) {
                    continue;
                }
                used.extend(chain.iter().copied());
                let mut s = BTreeSet::from([chain[0]]);
                let mut last = None;
                for pair in chain[1..].chunks(2) {
                    if pair.len() < 2 {
                        break;
                    }
                    s.insert(pair[0]);
                    s.insert(pair[1]);
                    assert!(x.cut_value(&g, &s).is_one(), "degree-two prefix is not tight");
                    if self.large(&f, &s) {
                        return Err(Exit(f.lift(&s), ViableSource::DegreeTwo));
                    }
                    last = Some(s.clone());
                }
                if let Some(s) = last {
                    if s.len() < g.vertex_count() {
                        (g, f) = self.contract(&g, &f, &x, &s);
                        contracted += 1;
                        any = true;
                    }
                }
            }
            if !any {
                break;
            }
        }
        self.metric(
            out,
            "preprocess",
            round,
            vec![
                ("depth", depth.to_string()),
                ("edges", edges_before.to_string()),
                ("vertices", vertices_before.to_string()),
                ("removed", zero.len().to_string()),
                ("contracted", contracted.to_string()),
                ("edges_after", g.edge_count().to_string()),
                ("vertices_after", g.vertex_count().to_string()),
            ],
        );
        Ok((g, f))
    }

    /// `Ok(None)` when no even walks exist.
    fn reduce(
        &self,
        g: &PlanarGraph,
        f: &VertexMap,
        depth: usize,
        round: usize,
        out: &mut Output,
    ) -> Result<Option<(PlanarGraph, VertexMap)>, Exit> {
        out.profile.bump("reduce");
        let edges_before = g.edge_count();
        let walks = match find_even_walks(g) {
            Ok(w) if !w.is_empty() => w,
            _ => {
                self.metric(
                    out,
                    "reduce",
                    round,
                    vec![
                        ("depth", depth.to_string()),
                        ("edges", edges_before.to_string()),
                        ("vertices", g.vertex_count().to_string()),
                        ("walks", "0".into()),
                    ],
                );
                return Ok(None);
            }
        };
        let first: BTreeSet<EdgeId> = walks.iter().map(EvenWalk::first_edge).collect();
        let (x, total, _) = self.lex_avg(g, |e| first.contains(&e) as u64);
        let removed: BTreeSet<EdgeId> = g.edge_ids().filter(|&e| !x.in_support(e)).collect();
        let gr = g.remove_edges(&removed);
        let surviving: Vec<EvenWalk> =
            walks.iter().filter(|wk| wk.edge_set().iter().all(|&e| x.in_support(e))).cloned().collect();
        let sets = self.disjoint_odd_sets(&gr, f, &x, &surviving, &total);
        let report = |sets: &[TightOddSet], edges_after: usize, ended_early: bool| {
            self.observer.reduce(&ReduceEvent {
                graph: &gr,
                point: &x,
                walks_found: walks.len(),
                surviving: &surviving,
                removed: &removed,
                sets,
                edges_before,
                edges_after,
                ended_early,
            })
        };
        let sets = match sets {
            Ok(s) => s,
            Err(exit) => {
                report(&[], gr.edge_count(), true);
                return Err(exit);
            }
        };
        let (mut g2, mut f2) = (gr.clone(), f.clone());
        for s in sets.iter().filter(|s| s.set.len() > 1) {
            (g2, f2) = self.contract(&g2, &f2, &x, &s.set);
        }
        report(&sets, g2.edge_count(), false);
        assert!(g2.edge_count() < edges_before, "reduce must remove an edge");
        out.profile.shrink.push((edges_before, g2.edge_count()));
        self.metric(
            out,
            "reduce",
            round,
            vec![
                ("depth", depth.to_string()),
                ("edges", edges_before.to_string()),
                ("vertices", g.vertex_count().to_string()),
                ("walks", walks.len().to_string()),
                ("surviving", surviving.len().to_string()),
                ("removed", removed.len().to_string()),
                ("sets", sets.len().to_string()),
                ("edges_after", g2.edge_count().to_string()),
                ("vertices_after", g2.vertex_count().to_string()),
            ],
        );
        Ok(Some((g2, f2)))
    }

    /// The rotation that lowers `scale * W + low`. The walk's own first edge
    /// has coefficient -1, so only a positive outer circulation flips it.
    fn direction(&self, g: &PlanarGraph, walk: &EvenWalk) -> Direction {
        if circulation(&self.outer(g), walk) > Rational::zero() {
            Direction::Backward
        } else {
            Direction::Forward
        }
    }

    fn disjoint_odd_sets(
        &self,
        g: &PlanarGraph,
        f: &VertexMap,
        x: &FractionalPoint,
        walks: &[EvenWalk],
        m: &BigUint,
    ) -> Result<Vec<TightOddSet>, Exit> {
        let found: Vec<TightOddSet> = walks
            .par_iter()
            .map(|wk| {
                let direction = self.direction(g, wk);
                let s = find_blocking_odd_set_toward(g, x, wk, m, direction)
                    .expect("surviving walks are blocked by a tight odd set");
                self.observer.blocking_set(&BlockingEvent {
                    graph: g,
                    point: x,
                    walk: wk,
                    direction,
                    count: m,
                    set: &s,
                });
                s
            })
            .collect();
        let all = g.vertex_set();
        let half = f.original_count();
        let mut sets = Vec::with_capacity(found.len());
        for s in found {
            let s = if 2 * f.set_preimage_size(&s.set) > half {
                let set: BTreeSet<VertexId> = all.difference(&s.set).copied().collect();
                TightOddSet { certificate: x.cut_value(g, &set), set }
            } else {
                s
            };
            if self.large(f, &s.set) {
                return Err(Exit(f.lift(&s.set), ViableSource::OddSet));
            }
            sets.push(s);
        }
        let ctx = UncrossContext { g, x, f, c1: self.cfg.c1.clone(), observer: self.observer };
        ctx.uncross(sets).map_err(|e: EarlyExit| Exit(e.original, ViableSource::Uncross))
    }
}

/// For every maximal run of degree-two vertices, the vertex sequence
/// starting at one end of the run: `v0, v1, ..., vk, v(k+1)`. The end
/// `v(k+1)` is omitted when it coincides with `v0`. A graph that is a single
/// cycle yields the cycle starting at its smallest vertex.
fn degree_two_sets(g: &PlanarGraph) -> Vec<Vec<VertexId>> {
    let deg2: BTreeSet<VertexId> = g.vertices().filter(|&v| g.degree(v) == 2).collect();
    let mut seen = BTreeSet::new();
    let mut chains = Vec::new();
    for &start in &deg2 {
        if seen.contains(&start) {
            continue;
        }
        // walk to one end of the run
        let mut prev_edge = g.incident(start).next().unwrap();
        let mut cur = start;
        let mut cyclic = false;
        loop {
            let e = g.incident(cur).find(|&e| e != prev_edge).unwrap_or(prev_edge);
            let next = g.other_end(e, cur);
            if !deg2.contains(&next) {
                break;
            }
            if next == start {
                cyclic = true;
                break;
            }
            prev_edge = e;
            cur = next;
        }
        // cur is now an end of the run (or the run is a cycle)
        if cyclic {
            let mut seq = vec![start];
            let mut prev_edge = g.incident(start).next().unwrap();
            let mut v = g.other_end(prev_edge, start);
            while v != start {
                seq.push(v);
                let e = g.incident(v).find(|&e| e != prev_edge).unwrap();
                prev_edge = e;
                v = g.other_end(e, v);
            }
            seen.extend(seq.iter().copied());
            let min_pos = seq.iter().enumerate().min_by_key(|(_, v)| **v).unwrap().0;
            seq.rotate_left(min_pos);
            chains.push(seq);
            continue;
        }
        let end_edge = g
            .incident(cur)
            .find(|&e| !deg2.contains(&g.other_end(e, cur)))
            .expect("a run that is not a cycle has an end");
        let v0 = g.other_end(end_edge, cur);
        let mut seq = vec![v0, cur];
        let mut prev_edge = end_edge;
        let mut v = cur;
        loop {
            let e = g.incident(v).find(|&e| e != prev_edge).unwrap();
            let next = g.other_end(e, v);
            if !deg2.contains(&next) {
                if next != v0 {
                    seq.push(next);
                }
                break;
            }
            seq.push(next);
            prev_edge = e;
            v = next;
        }
        seen.extend(seq.iter().copied().filter(|v| deg2.contains(v)));
        chains.push(seq);
    }
    chains.sort();
    chains
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn small_base() -> AlgorithmConfig {
        AlgorithmConfig { base_case: 8, ..AlgorithmConfig::default() }
    }

    // minimum weight over all perfect matchings, by backtracking
    fn brute_min(g: &PlanarGraph, w: &EdgeWeights) -> Option<u64> {
        fn go(g: &PlanarGraph, w: &EdgeWeights, left: &mut BTreeSet<VertexId>) -> Option<u64> {
            let Some(&v) = left.iter().next() else { return Some(0) };
            let mut best: Option<u64> = None;
            for e in g.incident(v).collect::<Vec<_>>() {
                let u = g.other_end(e, v);
                if !left.contains(&u) || u == v {
                    continue;
                }
                left.remove(&v);
                left.remove(&u);
                if let Some(rest) = go(g, w, left) {
                    let c = rest + w.get(&e).copied().unwrap_or(0);
                    best = Some(best.map_or(c, |b| b.min(c)));
                }
                left.insert(v);
                left.insert(u);
            }
            best
        }
        go(g, w, &mut g.vertex_set())
    }

    #[test]
    fn config_validation() {
        assert!(AlgorithmConfig::default().validate().is_ok());
        let bad = AlgorithmConfig { c1: Rational::new(BigInt::one(), BigInt::from(4)), ..AlgorithmConfig::default() };
        assert!(bad.validate().is_err());
        let bad = AlgorithmConfig { base_case: 7, ..AlgorithmConfig::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn depth_bound_values() {
        let c1 = Rational::new(BigInt::one(), BigInt::from(8));
        assert_eq!(depth_bound(1, &c1), 2);
        // (7/8)^5 * 2 > 1 >= (7/8)^6 * 2
        assert_eq!(depth_bound(2, &c1), 8);
    }

    #[test]
    fn single_edge_and_cycle() {
        let g = fixtures::path(2);
        assert_eq!(perfect_matching(&g, &small_base()).unwrap().matching, BTreeSet::from([EdgeId(0)]));
        let g = fixtures::cycle(4);
        let m = perfect_matching(&g, &small_base()).unwrap().matching;
        assert!(is_perfect_matching(&g, &m));
    }

    #[test]
    fn no_matching_detected() {
        assert_eq!(perfect_matching(&fixtures::path(3), &small_base()), Err(DriverError::NoPerfectMatching));
        assert_eq!(perfect_matching(&fixtures::bowtie(), &small_base()), Err(DriverError::NoPerfectMatching));
    }

    #[test]
    fn self_reduce_examples() {
        let g = fixtures::cycle(4);
        assert_eq!(self_reduce(&g, &EdgeWeights::new()).unwrap().len(), 2);
        let w = fixtures::weights(&[(3, 1)]);
        assert_eq!(self_reduce(&g, &w).unwrap(), BTreeSet::from([EdgeId(0), EdgeId(2)]));
        let m = self_reduce(&fixtures::prism(), &EdgeWeights::new()).unwrap();
        assert!(is_perfect_matching(&fixtures::prism(), &m));
    }

    #[test]
    fn recursion_on_larger_graphs() {
        for g in [
            fixtures::grid(4, 4),
            fixtures::grid(6, 6),
            fixtures::grid(3, 8),
            fixtures::triangulated_grid(4, 6),
            fixtures::cycle(24),
            fixtures::path(20),
        ] {
            let r = perfect_matching(&g, &small_base()).unwrap();
            assert!(is_perfect_matching(&g, &r.matching));
            assert!(r.profile.recursion_depth >= 1);
        }
    }

    #[test]
    fn balanced_viable_set_is_balanced() {
        let cfg = small_base();
        let g = fixtures::grid(4, 6);
        let s = balanced_viable_set(&g, &EdgeWeights::new(), &cfg).unwrap();
        assert!(s.len() % 2 == 1 && 8 * s.len() >= 24 && 8 * s.len() <= 7 * 24);
        assert_eq!(balanced_viable_set(&fixtures::cycle(4), &EdgeWeights::new(), &cfg), Err(DriverError::TooSmall(4)));
    }

    #[test]
    fn min_weight_matches_brute_force() {
        let cfg = small_base();
        let g = fixtures::cycle(4);
        let w = fixtures::weights(&[(3, 1)]);
        assert_eq!(min_weight_perfect_matching(&g, &w, &cfg).unwrap().matching, BTreeSet::from([EdgeId(0), EdgeId(2)]));
        let mut seed = 7u64;
        for g in [fixtures::grid(4, 4), fixtures::triangulated_grid(3, 4), fixtures::prism()] {
            for _ in 0..3 {
                let n = g.vertex_count() as u64;
                let w: EdgeWeights = g
                    .edge_ids()
                    .map(|e| {
                        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        (e, (seed >> 33) % (n * n + 1))
                    })
                    .collect();
                let m = min_weight_perfect_matching(&g, &w, &cfg).unwrap().matching;
                assert!(is_perfect_matching(&g, &m));
                let cost: u64 = m.iter().map(|e| w[e]).sum();
                assert_eq!(Some(cost), brute_min(&g, &w));
            }
        }
    }

    #[test]
    fn weight_bound_enforced() {
        let g = fixtures::cycle(4);
        let w = fixtures::weights(&[(0, 65)]);
        assert_eq!(
            min_weight_perfect_matching(&g, &w, &AlgorithmConfig::default()),
            Err(DriverError::WeightTooLarge { weight: 65, bound: 64 })
        );
    }

    #[test]
    fn degree_two_runs() {
        let g = fixtures::cycle(6);
        let runs = degree_two_sets(&g);
        assert_eq!(runs.len(), 1);
        assert_eq!(runs[0][0], VertexId(0));
        assert_eq!(runs[0].iter().copied().collect::<BTreeSet<_>>(), (0..6).map(VertexId).collect());
        let g = fixtures::path(5);
        let runs = degree_two_sets(&g);
        assert_eq!(runs.len(), 1);
        assert_eq!(runs[0].len(), 5);
    }
}
