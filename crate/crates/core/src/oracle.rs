//! Brute-force ground truth on explicit small hosts: copies of `H`, perfect
//! `H`-factors, their discrepancies, exhaustive template search over blowup
//! sizes, and factor validation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::coloring::{enumerate_homomorphisms, Homomorphism};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph};
use crate::template::{is_template, Frame, TemplateDecision};
use crate::witness::{build_factor, BlowupSpec, ExplicitFactor};

/// Default search-node budget for factor enumeration.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Largest host handled by the bitmask search.
pub const MAX_HOST: usize = 64;

/// All automorphisms of `h`, as vertex maps.
pub fn automorphisms(h: &Graph) -> Vec<Vec<usize>> {
    let adj = h.adjacency_masks();
    embeddings(h, &adj, h.n())
        .into_iter()
        .collect()
}

/// Injective edge-preserving maps `h → host` given host adjacency masks.
/// Vertices are placed in an order that keeps each new vertex attached to
/// already placed ones where possible.
fn embeddings(h: &Graph, host_adj: &[u64], host_n: usize) -> Vec<Vec<usize>> {
    let n = h.n();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let attached = h.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (attached, h.degree(v), usize::MAX - v)
            })
            .expect("some vertex left");
        placed[v] = true;
        order.push(v);
    }
    let all = if host_n == 64 { u64::MAX } else { (1u64 << host_n) - 1 };
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    fn rec(
        depth: usize,
        used: u64,
        order: &[usize],
        h: &Graph,
        host_adj: &[u64],
        all: u64,
        map: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == order.len() {
            out.push(map.clone());
            return;
        }
        let v = order[depth];
        let mut cand = all & !used;
        for &w in h.neighbors(v) {
            if map[w] != usize::MAX {
                cand &= host_adj[map[w]];
            }
        }
        while cand != 0 {
            let x = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            map[v] = x;
            rec(depth + 1, used | 1 << x, order, h, host_adj, all, map, out);
        }
        map[v] = usize::MAX;
    }
    rec(0, 0, &order, h, host_adj, all, &mut map, &mut out);
    out
}

/// A copy of `H` in a host, as a canonical embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HostCopy {
    pub embedding: Vec<usize>,
    pub mask: u64,
    pub discrepancy: i64,
}

fn embedding_discrepancy(h: &Graph, host: &ColoredGraph, emb: &[usize]) -> i64 {
    h.edges()
        .iter()
        .map(|&(u, v)| host.color(emb[u], emb[v]).expect("embedding edge").value())
        .sum()
}

/// Every copy of `H` in `host` exactly once: embeddings are kept only when
/// lexicographically smallest among their compositions with `Aut(H)`.
pub fn canonical_copies(h: &Graph, host: &ColoredGraph) -> Result<Vec<HostCopy>> {
    if host.n() > MAX_HOST {
        return Err(Error::contract(format!("hosts are limited to {MAX_HOST} vertices")));
    }
    let auts = automorphisms(h);
    let adj = host.graph().adjacency_masks();
    let mut out = Vec::new();
    for emb in embeddings(h, &adj, host.n()) {
        let canonical = auts.iter().all(|a| {
            let img: Vec<usize> = a.iter().map(|&x| emb[x]).collect();
            emb <= img
        });
        if canonical {
            let mask = emb.iter().fold(0u64, |m, &x| m | 1 << x);
            let discrepancy = embedding_discrepancy(h, host, &emb);
            out.push(HostCopy {
                embedding: emb,
                mask,
                discrepancy,
            });
        }
    }
    Ok(out)
}

struct Level {
    candidates: Vec<usize>,
    next: usize,
}

/// Lazy stream of the perfect `H`-factors of a host, each yielded once.
///
/// The search is an exact cover over canonical copies that always branches
/// on the uncovered vertex with the fewest compatible copies. Enumeration
/// stops after `budget` search nodes; [`PerfectFactors::truncated`] then
/// reports that the stream is incomplete.
pub struct PerfectFactors {
    copies: Vec<HostCopy>,
    by_vertex: Vec<Vec<usize>>,
    full: u64,
    covered: u64,
    chosen: Vec<usize>,
    stack: Vec<Level>,
    nodes: u64,
    budget: u64,
    truncated: bool,
    started: bool,
}

impl PerfectFactors {
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn copies(&self) -> &[HostCopy] {
        &self.copies
    }

    fn push_level(&mut self) {
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut rest = self.full & !self.covered;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let cands: Vec<usize> = self.by_vertex[v]
                .iter()
                .copied()
                .filter(|&c| self.copies[c].mask & self.covered == 0)
                .collect();
            if best.as_ref().map_or(true, |(n, _)| cands.len() < *n) {
                let empty = cands.is_empty();
                best = Some((cands.len(), cands));
                if empty {
                    break;
                }
            }
        }
        let candidates = best.map(|(_, c)| c).unwrap_or_default();
        self.stack.push(Level { candidates, next: 0 });
    }

    /// Advance to the next perfect factor, returning the chosen copy indices.
    fn advance(&mut self) -> Option<Vec<usize>> {
        if !self.started {
            self.started = true;
            if self.full == 0 {
                return Some(Vec::new());
            }
            self.push_level();
        }
        loop {
            let top = self.stack.last_mut()?;
            if top.next < top.candidates.len() {
                let c = top.candidates[top.next];
                top.next += 1;
                self.nodes += 1;
                if self.nodes > self.budget {
                    self.truncated = true;
                    self.stack.clear();
                    return None;
                }
                self.covered |= self.copies[c].mask;
                self.chosen.push(c);
                if self.covered == self.full {
                    let found = self.chosen.clone();
                    self.chosen.pop();
                    self.covered &= !self.copies[c].mask;
                    return Some(found);
                }
                self.push_level();
            } else {
                self.stack.pop();
                if let Some(c) = self.chosen.pop() {
                    self.covered &= !self.copies[c].mask;
                }
            }
        }
    }
}

impl Iterator for PerfectFactors {
    type Item = ExplicitFactor;

    fn next(&mut self) -> Option<ExplicitFactor> {
        self.advance().map(|idx| ExplicitFactor {
            copies: idx.into_iter().map(|c| self.copies[c].embedding.clone()).collect(),
        })
    }
}

/// Start enumerating the perfect `H`-factors of `host`.
pub fn enumerate_perfect_factors(h: &Graph, host: &ColoredGraph, budget: u64) -> Result<PerfectFactors> {
    if h.n() == 0 || host.n() % h.n() != 0 {
        return Err(Error::refused(format!(
            "host order {} is not divisible by |H| = {}",
            host.n(),
            h.n()
        )));
    }
    let copies = canonical_copies(h, host)?;
    let mut by_vertex = vec![Vec::new(); host.n()];
    for (i, c) in copies.iter().enumerate() {
        for &x in &c.embedding {
            by_vertex[x].push(i);
        }
    }
    let full = if host.n() == 64 { u64::MAX } else { (1u64 << host.n()) - 1 };
    Ok(PerfectFactors {
        copies,
        by_vertex,
        full,
        covered: 0,
        chosen: Vec::new(),
        stack: Vec::new(),
        nodes: 0,
        budget,
        truncated: false,
        started: false,
    })
}

/// The discrepancies of all enumerated perfect factors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancySummary {
    /// Discrepancy value → number of factors attaining it.
    pub values: BTreeMap<i64, u64>,
    pub factor_count: u64,
    /// The budget ran out, so further values may exist.
    pub truncated: bool,
}

impl DiscrepancySummary {
    pub fn distinct(&self) -> Vec<i64> {
        self.values.keys().copied().collect()
    }
}

/// Enumerate perfect factors and tally their discrepancies.
pub fn discrepancy_multiset(h: &Graph, host: &ColoredGraph, budget: u64) -> Result<DiscrepancySummary> {
    let mut it = enumerate_perfect_factors(h, host, budget)?;
    let mut s = DiscrepancySummary::default();
    while let Some(idx) = it.advance() {
        let d: i64 = idx.iter().map(|&c| it.copies[c].discrepancy).sum();
        *s.values.entry(d).or_insert(0) += 1;
        s.factor_count += 1;
    }
    s.truncated = it.truncated;
    Ok(s)
}

/// Result of [`verify_factor`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorCheck {
    pub valid: bool,
    /// Sum of host colors over the image edges of all copies.
    pub discrepancy: i64,
    /// The first defect found, when invalid.
    pub problem: Option<String>,
}

/// Check that `f` is a perfect `H`-factor of `host` and compute its
/// discrepancy.
pub fn verify_factor(h: &Graph, host: &ColoredGraph, f: &ExplicitFactor) -> FactorCheck {
    let fail = |msg: String| FactorCheck {
        valid: false,
        discrepancy: 0,
        problem: Some(msg),
    };
    let mut seen = vec![false; host.n()];
    let mut disc = 0i64;
    for (i, copy) in f.copies.iter().enumerate() {
        if copy.len() != h.n() {
            return fail(format!("copy {i} has {} vertices, expected {}", copy.len(), h.n()));
        }
        for &x in copy {
            if x >= host.n() {
                return fail(format!("copy {i} uses vertex {x} outside the host"));
            }
            if seen[x] {
                return fail(format!("vertex {x} is used twice"));
            }
            seen[x] = true;
        }
        for &(u, v) in h.edges() {
            match host.color(copy[u], copy[v]) {
                Some(c) => disc += c.value(),
                None => {
                    return fail(format!(
                        "copy {i} maps edge ({u},{v}) to the non-edge ({},{})",
                        copy[u], copy[v]
                    ))
                }
            }
        }
    }
    if let Some(x) = seen.iter().position(|s| !s) {
        return fail(format!("vertex {x} is not covered"));
    }
    FactorCheck {
        valid: true,
        discrepancy: disc,
        problem: None,
    }
}

/// A blowup with two perfect factors of different discrepancy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteforceWitness {
    pub spec: BlowupSpec,
    pub factor_a: ExplicitFactor,
    pub factor_b: ExplicitFactor,
    pub disc_a: i64,
    pub disc_b: i64,
}

/// Outcome of [`bruteforce_is_template`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BruteforceOutcome {
    TemplateFound(Box<BruteforceWitness>),
    NoneUpToBound { max_total: usize, blowups_checked: u64 },
}

impl BruteforceOutcome {
    pub fn is_template(&self) -> bool {
        matches!(self, BruteforceOutcome::TemplateFound(_))
    }
}

/// Achievable factor discrepancies per cluster-size vector.
///
/// Clusters of a blowup are independent sets of twins, so a perfect factor
/// of the blowup with sizes `s` is the same thing as a multiset of
/// homomorphisms `H → F` whose fiber sizes add up to `s`. Each factor
/// contains a copy meeting the first nonempty cluster, which gives the
/// recursion `D(s) = ∪ { g(φ) + D(s − a(φ)) : a(φ) ≤ s, a(φ)_first > 0 }`.
struct DiscrepancyTable {
    columns: Vec<(Vec<u16>, i64, Homomorphism)>,
    memo: HashMap<Vec<u16>, Rc<BTreeSet<i64>>>,
}

impl DiscrepancyTable {
    fn new(frame: &Frame, h: &Graph) -> Result<Self> {
        let mut cols: BTreeMap<(Vec<u16>, i64), Homomorphism> = BTreeMap::new();
        for phi in enumerate_homomorphisms(h, frame.graph())? {
            let mut a = vec![0u16; frame.n()];
            for &x in &phi.map {
                a[x] += 1;
            }
            let g: i64 = h
                .edges()
                .iter()
                .map(|&(u, v)| frame.colored.color(phi.map[u], phi.map[v]).expect("edge").value())
                .sum();
            cols.entry((a, g)).or_insert(phi);
        }
        Ok(DiscrepancyTable {
            columns: cols.into_iter().map(|((a, g), phi)| (a, g, phi)).collect(),
            memo: HashMap::new(),
        })
    }

    fn usable(&self, s: &[u16]) -> impl Iterator<Item = usize> + '_ {
        let first = s.iter().position(|&x| x > 0);
        let s = s.to_vec();
        self.columns.iter().enumerate().filter_map(move |(i, (a, _, _))| {
            let f = first?;
            (a[f] > 0 && a.iter().zip(&s).all(|(x, y)| x <= y)).then_some(i)
        })
    }

    fn achievable(&mut self, s: &[u16]) -> Rc<BTreeSet<i64>> {
        if s.iter().all(|&x| x == 0) {
            return Rc::new(BTreeSet::from([0]));
        }
        if let Some(d) = self.memo.get(s) {
            return d.clone();
        }
        let mut out = BTreeSet::new();
        let usable: Vec<usize> = self.usable(s).collect();
        for i in usable {
            let (a, g) = (self.columns[i].0.clone(), self.columns[i].1);
            let rest: Vec<u16> = s.iter().zip(&a).map(|(x, y)| x - y).collect();
            for d in self.achievable(&rest).iter() {
                out.insert(d + g);
            }
        }
        let out = Rc::new(out);
        self.memo.insert(s.to_vec(), out.clone());
        out
    }

    /// A weighted plan of homomorphisms realizing discrepancy `d` at sizes `s`.
    fn realize(&mut self, s: &[u16], d: i64) -> Vec<(Homomorphism, usize)> {
        let mut plan: Vec<(Homomorphism, usize)> = Vec::new();
        let mut s = s.to_vec();
        let mut d = d;
        while s.iter().any(|&x| x > 0) {
            let usable: Vec<usize> = self.usable(&s).collect();
            let (i, rest) = usable
                .into_iter()
                .find_map(|i| {
                    let (a, g) = (&self.columns[i].0, self.columns[i].1);
                    let rest: Vec<u16> = s.iter().zip(a).map(|(x, y)| x - y).collect();
                    let rest_set = self.achievable(&rest);
                    rest_set.contains(&(d - g)).then_some((i, rest))
                })
                .expect("value is achievable");
            d -= self.columns[i].1;
            s = rest;
            plan.push((self.columns[i].2.clone(), 1));
        }
        plan
    }
}

/// All vectors of `k` nonnegative entries summing to `total`, in
/// lexicographic order.
fn compositions(total: usize, k: usize, out: &mut Vec<Vec<u16>>, cur: &mut Vec<u16>) {
    if cur.len() + 1 == k {
        cur.push(total as u16);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for x in 0..=total {
        cur.push(x as u16);
        compositions(total - x, k, out, cur);
        cur.pop();
    }
}

/// Search every blowup of `frame` with at most `max_total` vertices (and a
/// multiple of `|H|`) for two perfect `H`-factors of different discrepancy.
/// Blowups are visited by total order, then lexicographically.
pub fn bruteforce_is_template(frame: &Frame, h: &Graph, max_total: usize) -> Result<BruteforceOutcome> {
    if h.n() == 0 || frame.n() == 0 {
        return Err(Error::contract("H and the frame must be nonempty"));
    }
    if max_total > u16::MAX as usize {
        return Err(Error::contract("max_total is too large"));
    }
    let mut table = DiscrepancyTable::new(frame, h)?;
    let mut checked = 0u64;
    for total in (h.n()..=max_total).step_by(h.n()) {
        let mut sizes = Vec::new();
        compositions(total, frame.n(), &mut sizes, &mut Vec::new());
        for s in sizes {
            checked += 1;
            let set = table.achievable(&s);
            if set.len() >= 2 {
                let mut it = set.iter();
                let (da, db) = (*it.next().expect("two"), *it.next().expect("two"));
                let spec = BlowupSpec::new(frame.clone(), s.iter().map(|&x| x as usize).collect())?;
                let plan_a = table.realize(&s, da);
                let plan_b = table.realize(&s, db);
                let factor_a = build_factor(&spec, &plan_a)?;
                let factor_b = build_factor(&spec, &plan_b)?;
                return Ok(BruteforceOutcome::TemplateFound(Box::new(BruteforceWitness {
                    spec,
                    factor_a,
                    factor_b,
                    disc_a: da,
                    disc_b: db,
                })));
            }
        }
    }
    Ok(BruteforceOutcome::NoneUpToBound {
        max_total,
        blowups_checked: checked,
    })
}

/// The LP verdict next to the brute-force verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub lp: TemplateDecision,
    pub oracle: BruteforceOutcome,
    /// False when the LP certificate is larger than the searched bound and
    /// the oracle found nothing, so agreement could not be tested.
    pub conclusive: bool,
}

/// Run both deciders and fail with [`Error::Contradiction`] when they
/// disagree: the oracle finds a witness for an LP non-template, or finds
/// none although the LP certificate fits within `max_total`.
pub fn cross_check_template(frame: &Frame, h: &Graph, max_total: usize) -> Result<CrossCheck> {
    let lp = is_template(frame, h)?;
    let oracle = bruteforce_is_template(frame, h, max_total)?;
    let mut conclusive = true;
    match (&lp.certificate, &oracle) {
        (None, BruteforceOutcome::TemplateFound(w)) => {
            return Err(Error::contradiction(format!(
                "LP says non-template but sizes {:?} give discrepancies {} and {}",
                w.spec.sizes, w.disc_a, w.disc_b
            )));
        }
        (Some(cert), BruteforceOutcome::NoneUpToBound { .. }) => {
            let total: num_bigint::BigInt = cert.part_sizes.iter().sum();
            if total <= num_bigint::BigInt::from(max_total) {
                return Err(Error::contradiction(format!(
                    "LP certificate of total {total} has no brute-force witness up to {max_total}"
                )));
            }
            conclusive = false;
        }
        _ => {}
    }
    Ok(CrossCheck {
        lp,
        oracle,
        conclusive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::Sign;
    use crate::template::{frame_catalog, FrameSpec, KrColoring};
    use crate::witness::{balanced_blowup_factor, blowup};

    fn host(spec: &str, sizes: Vec<usize>) -> ColoredGraph {
        let f = frame_catalog(&spec.parse().unwrap()).unwrap();
        blowup(&BlowupSpec::new(f, sizes).unwrap()).unwrap()
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&Graph::complete(4)).len(), 24);
        assert_eq!(automorphisms(&families::k4_minus_edge()).len(), 4);
        assert_eq!(automorphisms(&families::path(3)).len(), 2);
    }

    #[test]
    fn factor_counts() {
        let k3 = Graph::complete(3);
        let one = enumerate_perfect_factors(&k3, &host("mono:3,+", vec![1, 1, 1]), DEFAULT_BUDGET).unwrap();
        assert_eq!(one.count(), 1);
        for spec in ["mono:3,+", "star:3,-", "kr:3,1"] {
            let s = discrepancy_multiset(&k3, &host(spec, vec![2, 2, 2]), DEFAULT_BUDGET).unwrap();
            assert_eq!(s.factor_count, 4);
        }
        let k4 = ColoredGraph::monochromatic(Graph::complete(4), Sign::Plus);
        assert!(matches!(enumerate_perfect_factors(&k3, &k4, 10), Err(Error::Refused(_))));
    }

    #[test]
    fn multiset_examples() {
        let k3 = Graph::complete(3);
        let s = discrepancy_multiset(&k3, &host("star:3,+", vec![2, 2, 2]), DEFAULT_BUDGET).unwrap();
        assert_eq!(s.values, BTreeMap::from([(2, 4)]));
        let s = discrepancy_multiset(&k3, &host("mono:3,+", vec![2, 2, 2]), DEFAULT_BUDGET).unwrap();
        assert_eq!(s.distinct(), vec![6]);
        let k4 = Graph::complete(4);
        let s = discrepancy_multiset(&k4, &host("star:4,+", vec![2, 2, 2, 2]), DEFAULT_BUDGET).unwrap();
        assert_eq!(s.distinct(), vec![0]);
        assert!(!s.truncated);
    }

    #[test]
    fn budget_truncates() {
        let k3 = Graph::complete(3);
        let s = discrepancy_multiset(&k3, &host("mono:3,+", vec![3, 3, 3]), 5).unwrap();
        assert!(s.truncated);
    }

    #[test]
    fn verify_examples() {
        let k3 = Graph::complete(3);
        let (spec, f) = balanced_blowup_factor(&k3, KrColoring { r: 3, mask: 7 }).unwrap();
        let g = blowup(&spec).unwrap();
        let c = verify_factor(&k3, &g, &f);
        assert!(c.valid);
        assert_eq!(c.discrepancy, 18);
        let mut bad = f.clone();
        bad.copies[1][0] = bad.copies[0][0];
        assert!(!verify_factor(&k3, &g, &bad).valid);
    }

    #[test]
    fn bruteforce_examples() {
        let h = families::path(3).disjoint_union(&Graph::complete(2));
        let f = frame_catalog(&FrameSpec::EdgePair(Sign::Plus, Sign::Minus)).unwrap();
        let out = bruteforce_is_template(&f, &h, 30).unwrap();
        let BruteforceOutcome::TemplateFound(w) = out else { panic!("expected a witness") };
        let g = blowup(&w.spec).unwrap();
        assert_eq!(verify_factor(&h, &g, &w.factor_a).discrepancy, w.disc_a);
        assert_eq!(verify_factor(&h, &g, &w.factor_b).discrepancy, w.disc_b);
        assert_ne!(w.disc_a, w.disc_b);

        let star = frame_catalog(&"star:3,+".parse().unwrap()).unwrap();
        assert!(!bruteforce_is_template(&star, &families::k4_minus_edge(), 24).unwrap().is_template());
        let k2 = frame_catalog(&"mono:2,+".parse().unwrap()).unwrap();
        assert!(!bruteforce_is_template(&k2, &families::cycle(4), 24).unwrap().is_template());
    }

    #[test]
    fn bruteforce_agrees_with_explicit_enumeration() {
        // For one small blowup, the table's discrepancy set must match the
        // set obtained by enumerating explicit perfect factors.
        let h = families::path(3);
        let f = frame_catalog(&"clique_pair:2,1,+-".parse().unwrap()).unwrap();
        let mut table = DiscrepancyTable::new(&f, &h).unwrap();
        for sizes in [vec![1u16, 2, 3], vec![2, 2, 2], vec![0, 3, 3]] {
            let set: Vec<i64> = table.achievable(&sizes).iter().copied().collect();
            let g = blowup(&BlowupSpec::new(f.clone(), sizes.iter().map(|&x| x as usize).collect()).unwrap()).unwrap();
            let s = discrepancy_multiset(&h, &g, DEFAULT_BUDGET).unwrap();
            assert_eq!(set, s.distinct(), "sizes {sizes:?}");
        }
    }
}
