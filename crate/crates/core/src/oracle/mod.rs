//! Exhaustive breadth-first search over `FS(X, Y)` for small `n`.
//!
//! States are configurations encoded by the Lehmer rank of their placement.
//! Whole-space queries index flat arrays by rank; pair queries run a
//! bidirectional search over hash maps and so reach somewhat larger `n`.

mod diameter;

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Configuration, Move};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub use diameter::{all_pairs_diameter, bounding_diameter, Csr};

/// Limits on how much of the state space a query may touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Largest `n!` for whole-space enumeration.
    pub state_budget: u64,
    /// Largest number of states a pair query may visit.
    pub pair_budget: u64,
    /// Components up to this size get all-sources BFS; larger ones use
    /// eccentricity bounding, which is also exact.
    pub all_pairs_cap: usize,
    pub parallel: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            state_budget: factorial(9),
            pair_budget: factorial(11),
            all_pairs_cap: 5_000,
            parallel: true,
        }
    }
}

impl OracleOptions {
    /// Defaults, with `FS_STATE_BUDGET` overriding the whole-space budget.
    pub fn from_env() -> Self {
        let mut o = OracleOptions::default();
        if let Some(b) = std::env::var("FS_STATE_BUDGET").ok().and_then(|v| v.trim().parse().ok()) {
            o.state_budget = b;
        }
        o
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Lehmer rank of a permutation of `0..n`, `n <= 20`.
pub fn rank_perm(p: &[usize]) -> u64 {
    let n = p.len();
    let mut r = 0u64;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&q| q < p[i]).count() as u64;
        r = r * (n - i) as u64 + smaller;
    }
    r
}

/// Inverse of [`rank_perm`], writing into `out`.
pub fn unrank_perm(mut r: u64, out: &mut [usize]) {
    let n = out.len();
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = (n - i) as u64;
        digits[i] = (r % base) as usize;
        r /= base;
    }
    let mut free: Vec<usize> = (0..n).collect();
    for i in 0..n {
        out[i] = free.remove(digits[i]);
    }
}

pub fn rank(c: &Configuration) -> u64 {
    rank_perm(c.placement())
}

pub fn unrank(n: usize, r: u64) -> Configuration {
    let mut p = vec![0; n];
    unrank_perm(r, &mut p);
    Configuration::new(p).expect("unrank yields a permutation")
}

/// The move graph of `FS(X, Y)` with a fast path when `X` is a star.
pub struct StateSpace<'a> {
    x: &'a Graph,
    y: &'a Graph,
    n: usize,
    star_center: Option<usize>,
    y_edges: Vec<(usize, usize)>,
}

impl<'a> StateSpace<'a> {
    pub fn new(x: &'a Graph, y: &'a Graph) -> Result<Self> {
        if x.n() != y.n() {
            return Err(Error::precondition("X and Y must have the same vertex count"));
        }
        if x.n() > 20 {
            return Err(Error::precondition("state ranks need n <= 20"));
        }
        let n = x.n();
        let star_center = (0..n).find(|&c| n >= 2 && x.degree(c) == n - 1 && x.edge_count() == n - 1);
        Ok(StateSpace { x, y, n, star_center, y_edges: y.edges().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> u64 {
        factorial(self.n)
    }

    /// Legal moves from a placement, in a fixed order.
    pub fn legal_moves(&self, placement: &[usize], occupant: &[usize], out: &mut Vec<Move>) {
        out.clear();
        match self.star_center {
            Some(c) => {
                let at = placement[c];
                out.extend(self.y.neighbors(at).iter().map(|&b| Move::new(at, b)));
            }
            None => {
                for &(a, b) in &self.y_edges {
                    if self.x.has_edge(occupant[a], occupant[b]) {
                        out.push(Move::new(a, b));
                    }
                }
            }
        }
    }

    /// Ranks of all states one friendly swap from `r`.
    pub fn neighbors(&self, r: u64) -> Vec<u64> {
        let mut placement = vec![0; self.n];
        unrank_perm(r, &mut placement);
        let mut out = Vec::new();
        self.neighbors_of(&mut placement, &mut Vec::new(), &mut out);
        out
    }

    fn neighbors_of(&self, placement: &mut [usize], moves: &mut Vec<Move>, out: &mut Vec<u64>) {
        let mut occupant = vec![0; self.n];
        for (p, &y) in placement.iter().enumerate() {
            occupant[y] = p;
        }
        self.legal_moves(placement, &occupant, moves);
        out.clear();
        for m in moves.iter() {
            let (pa, pb) = (occupant[m.a], occupant[m.b]);
            placement.swap(pa, pb);
            out.push(rank_perm(placement));
            placement.swap(pa, pb);
        }
    }

    fn check_budget(&self, budget: u64) -> Result<()> {
        if self.total() > budget {
            return Err(Error::StateBudgetExceeded { budget });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub component_id: usize,
    pub size: u64,
    pub diameter: u64,
    /// Smallest rank in the component.
    pub representative: u64,
}

/// Component label of every state, ids ordered by smallest member rank.
#[derive(Clone, Debug)]
pub struct ComponentMap {
    pub n: usize,
    pub label: Vec<u32>,
    pub count: usize,
}

impl ComponentMap {
    pub fn same(&self, a: &Configuration, b: &Configuration) -> bool {
        self.label[rank(a) as usize] == self.label[rank(b) as usize]
    }

    pub fn sizes(&self) -> Vec<u64> {
        let mut s = vec![0u64; self.count];
        for &l in &self.label {
            s[l as usize] += 1;
        }
        s
    }
}

pub fn component_map(x: &Graph, y: &Graph, opts: &OracleOptions) -> Result<ComponentMap> {
    let space = StateSpace::new(x, y)?;
    space.check_budget(opts.state_budget)?;
    let total = space.total() as usize;
    let mut label = vec![u32::MAX; total];
    let mut count = 0;
    let mut queue = VecDeque::new();
    let mut placement = vec![0; space.n];
    let (mut moves, mut nbrs) = (Vec::new(), Vec::new());
    for root in 0..total {
        if label[root] != u32::MAX {
            continue;
        }
        label[root] = count as u32;
        queue.push_back(root as u64);
        while let Some(r) = queue.pop_front() {
            unrank_perm(r, &mut placement);
            space.neighbors_of(&mut placement, &mut moves, &mut nbrs);
            for &w in &nbrs {
                if label[w as usize] == u32::MAX {
                    label[w as usize] = count as u32;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    Ok(ComponentMap { n: space.n, label, count })
}

/// Every component with its exact diameter.
pub fn components(x: &Graph, y: &Graph, opts: &OracleOptions) -> Result<Vec<ComponentSummary>> {
    let space = StateSpace::new(x, y)?;
    space.check_budget(opts.state_budget)?;
    let total = space.total() as usize;
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    for root in 0..total {
        if seen[root] {
            continue;
        }
        let csr = explore(&space, root as u64, |r| {
            let fresh = !seen[r as usize];
            seen[r as usize] = true;
            fresh
        });
        let diameter = component_diameter(&csr, opts);
        out.push(ComponentSummary {
            component_id: out.len(),
            size: csr.len() as u64,
            diameter,
            representative: root as u64,
        });
    }
    Ok(out)
}

/// The component containing `start`, explored with a hash map so it works
/// for any `n` whose component fits the pair budget.
pub fn component_of(x: &Graph, y: &Graph, start: &Configuration, opts: &OracleOptions) -> Result<Csr> {
    let space = StateSpace::new(x, y)?;
    let mut seen = std::collections::HashSet::new();
    let budget = opts.pair_budget;
    let mut over = false;
    let csr = explore(&space, rank(start), |r| {
        if seen.len() as u64 >= budget {
            over = true;
            return false;
        }
        seen.insert(r)
    });
    if over {
        return Err(Error::StateBudgetExceeded { budget });
    }
    Ok(csr)
}

/// BFS from `root`, numbering states in discovery order. `claim` returns
/// true the first time it sees a rank.
fn explore(space: &StateSpace<'_>, root: u64, mut claim: impl FnMut(u64) -> bool) -> Csr {
    let mut index: HashMap<u64, u32> = HashMap::new();
    let mut ranks = vec![root];
    claim(root);
    index.insert(root, 0);
    let mut offsets = vec![0u32];
    let mut targets = Vec::new();
    let mut placement = vec![0; space.n];
    let (mut moves, mut nbrs) = (Vec::new(), Vec::new());
    let mut head = 0;
    while head < ranks.len() {
        let r = ranks[head];
        head += 1;
        unrank_perm(r, &mut placement);
        space.neighbors_of(&mut placement, &mut moves, &mut nbrs);
        for &w in &nbrs {
            let id = match index.get(&w) {
                Some(&id) => id,
                None => {
                    if !claim(w) {
                        continue;
                    }
                    let id = ranks.len() as u32;
                    index.insert(w, id);
                    ranks.push(w);
                    id
                }
            };
            targets.push(id);
        }
        offsets.push(targets.len() as u32);
    }
    Csr { ranks, offsets, targets }
}

pub fn component_diameter(csr: &Csr, opts: &OracleOptions) -> u64 {
    if csr.len() <= opts.all_pairs_cap {
        all_pairs_diameter(csr, opts.parallel)
    } else {
        bounding_diameter(csr)
    }
}

/// Exact distance by bidirectional BFS; `None` when unreachable.
pub fn distance(x: &Graph, y: &Graph, a: &Configuration, b: &Configuration, opts: &OracleOptions) -> Result<Option<usize>> {
    Ok(shortest_path(x, y, a, b, opts)?.map(|p| p.len()))
}

/// A shortest move sequence from `a` to `b`, by bidirectional BFS.
pub fn shortest_path(
    x: &Graph,
    y: &Graph,
    a: &Configuration,
    b: &Configuration,
    opts: &OracleOptions,
) -> Result<Option<Vec<Move>>> {
    let space = StateSpace::new(x, y)?;
    let (ra, rb) = (rank(a), rank(b));
    if ra == rb {
        return Ok(Some(Vec::new()));
    }
    // parent maps: state -> predecessor on its own side
    let mut side: [HashMap<u64, u64>; 2] = [HashMap::from([(ra, ra)]), HashMap::from([(rb, rb)])];
    let mut frontier: [Vec<u64>; 2] = [vec![ra], vec![rb]];
    let mut placement = vec![0; space.n];
    let (mut moves, mut nbrs) = (Vec::new(), Vec::new());
    loop {
        if frontier[0].is_empty() || frontier[1].is_empty() {
            return Ok(None);
        }
        let s = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        let mut next = Vec::new();
        let mut meet = None;
        for &r in &frontier[s] {
            unrank_perm(r, &mut placement);
            space.neighbors_of(&mut placement, &mut moves, &mut nbrs);
            for &w in &nbrs {
                if side[s].contains_key(&w) {
                    continue;
                }
                side[s].insert(w, r);
                if side[1 - s].contains_key(&w) {
                    meet = Some(w);
                    break;
                }
                next.push(w);
            }
            if meet.is_some() {
                break;
            }
        }
        if let Some(m) = meet {
            let chain = |map: &HashMap<u64, u64>, mut r: u64| {
                let mut out = vec![r];
                while map[&r] != r {
                    r = map[&r];
                    out.push(r);
                }
                out
            };
            let mut states = chain(&side[0], m);
            states.reverse();
            states.extend(chain(&side[1], m).into_iter().skip(1));
            return Ok(Some(moves_between(space.n, &states)));
        }
        if (side[0].len() + side[1].len()) as u64 > opts.pair_budget {
            return Err(Error::StateBudgetExceeded { budget: opts.pair_budget });
        }
        frontier[s] = next;
    }
}

/// Recovers the position pairs swapped along a path of ranks.
fn moves_between(n: usize, states: &[u64]) -> Vec<Move> {
    let mut prev = vec![0; n];
    let mut cur = vec![0; n];
    unrank_perm(states[0], &mut prev);
    let mut out = Vec::with_capacity(states.len() - 1);
    for &r in &states[1..] {
        unrank_perm(r, &mut cur);
        let moved: Vec<usize> = (0..n).filter(|&p| prev[p] != cur[p]).collect();
        debug_assert_eq!(moved.len(), 2);
        out.push(Move::new(prev[moved[0]], prev[moved[1]]));
        std::mem::swap(&mut prev, &mut cur);
    }
    out
}

/// Largest component diameter of `FS(X_n, Y_n)` for each `n`.
pub fn diameter_sweep(
    build: impl Fn(usize) -> Result<(Graph, Graph)>,
    ns: impl IntoIterator<Item = usize>,
    opts: &OracleOptions,
) -> Result<Vec<(usize, u64)>> {
    ns.into_iter()
        .map(|n| {
            let (x, y) = build(n)?;
            let comps = components(&x, &y, opts)?;
            Ok((n, comps.iter().map(|c| c.diameter).max().unwrap_or(0)))
        })
        .collect()
}

pub const CSV_HEADER: &str = "n,component_id,size,diameter";

pub fn components_csv(n: usize, comps: &[ComponentSummary]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for c in comps {
        out.push_str(&format!("{n},{},{},{}\n", c.component_id, c.size, c.diameter));
    }
    out
}

/// Serial and parallel map over sources share this helper so both paths
/// produce the same numbers.
pub(crate) fn max_over<F>(count: usize, parallel: bool, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync,
{
    if parallel {
        (0..count).into_par_iter().map(&f).max().unwrap_or(0)
    } else {
        (0..count).map(f).max().unwrap_or(0)
    }
}
