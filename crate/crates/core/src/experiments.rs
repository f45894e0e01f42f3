//! Random-graph trials and the exact growth campaigns.
//!
//! Randomness is ChaCha8 from `rand_chacha` 0.3, seeded with
//! `seed_from_u64` and split into numbered streams, so a trial is fixed by
//! its seed alone. Bump [`GENERATOR_VERSION`] whenever a draw order changes.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{replay_moves, Configuration, Move};
use crate::dense::{exchange, plan_friend_swaps};
use crate::error::{Error, Result};
use crate::graph::{Family, Graph};
use crate::oracle::{self, OracleOptions};

pub const GENERATOR_VERSION: &str = "chacha8-v1";

const STREAM_X: u64 = 0;
const STREAM_Y: u64 = 1;
const STREAM_PAIR: u64 = 2;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn gnp(n: usize, p: f64, r: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("pairs are distinct and in range")
}

/// `G(n, p)`: pairs `u < v` in lexicographic order, each kept when a
/// uniform draw in `[0, 1)` falls below `p`.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Graph {
    gnp(n, p, &mut rng(seed, STREAM_X))
}

/// A connected graph with minimum degree at least `d`: a random spanning
/// path, then random extra edges at every vertex still below `d`.
pub fn sample_min_degree(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if n == 0 || d >= n.max(2) {
        return Err(Error::precondition(format!("no graph on {n} vertices has minimum degree {d}")));
    }
    let mut r = rng(seed, STREAM_X);
    let mut adj = vec![vec![false; n]; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut r);
    for w in order.windows(2) {
        adj[w[0]][w[1]] = true;
        adj[w[1]][w[0]] = true;
    }
    for &v in &order {
        let mut others: Vec<usize> = (0..n).filter(|&u| u != v && !adj[v][u]).collect();
        others.shuffle(&mut r);
        let deg = adj[v].iter().filter(|&&b| b).count();
        for &u in others.iter().take(d.saturating_sub(deg)) {
            adj[v][u] = true;
            adj[u][v] = true;
        }
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| adj[u][v]);
    Ok(Graph::new(n, edges.collect::<Vec<_>>())?)
}

/// A uniformly random configuration.
pub fn sample_configuration(n: usize, r: &mut impl Rng) -> Configuration {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(r);
    Configuration::new(p).expect("shuffled identity is a permutation")
}

/// Which part of the Wilsonian definition a graph fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WilsonClause {
    NotBiconnected,
    Bipartite,
    Cycle,
    Theta122,
}

impl WilsonClause {
    pub fn as_str(&self) -> &'static str {
        match self {
            WilsonClause::NotBiconnected => "not-biconnected",
            WilsonClause::Bipartite => "bipartite",
            WilsonClause::Cycle => "cycle",
            WilsonClause::Theta122 => "theta122",
        }
    }
}

/// `Ok` for Wilsonian graphs, otherwise the first clause that fails in the
/// order biconnected, not a cycle on 4 or more vertices, not θ(1,2,2),
/// non-bipartite.
pub fn check_wilsonian(g: &Graph) -> std::result::Result<(), WilsonClause> {
    if !g.is_biconnected() {
        Err(WilsonClause::NotBiconnected)
    } else if g.n() >= 4 && g.is_cycle_graph() {
        Err(WilsonClause::Cycle)
    } else if crate::classify::is_theta_122(g) {
        Err(WilsonClause::Theta122)
    } else if g.is_bipartite() {
        Err(WilsonClause::Bipartite)
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub p: f64,
    pub q: f64,
    pub trials: usize,
    pub seed: u64,
    /// Pass criterion `length <= budget_k * n^budget_d`.
    pub budget_k: u64,
    pub budget_d: u32,
}

impl ExperimentConfig {
    /// `p = q = sqrt(c ln n / n)`, so `pq = c ln n / n`, capped at 1.
    pub fn relaxed(n: usize, c: f64, trials: usize, seed: u64) -> Self {
        let p = (c * (n as f64).ln() / n as f64).sqrt().min(1.0);
        ExperimentConfig { n, p, q: p, trials, seed, budget_k: crate::constants::Constants::get().k_dense, budget_d: 6 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) || !(0.0..=1.0).contains(&self.q) {
            return Err(Error::precondition("edge probabilities must lie in [0, 1]"));
        }
        if self.trials == 0 {
            return Err(Error::precondition("need at least one trial"));
        }
        Ok(())
    }

    pub fn length_budget(&self) -> u64 {
        self.budget_k.saturating_mul((self.n as u64).saturating_pow(self.budget_d))
    }

    /// The single-trial config of trial `i`.
    pub fn trial(&self, i: usize) -> ExperimentConfig {
        ExperimentConfig { seed: self.trial_seed(i), trials: 1, ..self.clone() }
    }

    /// Seed of trial `i`.
    pub fn trial_seed(&self, i: usize) -> u64 {
        self.seed.wrapping_add(i as u64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Solved,
    Unsolved,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub condition_checks: BTreeMap<String, bool>,
    pub outcome: Outcome,
    pub cause: Option<String>,
    pub length: usize,
    /// The route, complete when solved.
    #[serde(skip)]
    pub moves: Vec<Move>,
}

/// Every vertex degree within `[(1-ε)m, (1+ε)m]` for `m = (n-1)p` and
/// `ε = sqrt(10 ln n / m)`.
pub fn degrees_in_band(x: &Graph, p: f64) -> bool {
    let n = x.n() as f64;
    let m = (n - 1.0) * p;
    if m <= 0.0 {
        return x.edge_count() == 0;
    }
    let eps = (10.0 * n.ln() / m).sqrt();
    (0..x.n()).all(|v| {
        let d = x.degree(v) as f64;
        d >= (1.0 - eps) * m && d <= (1.0 + eps) * m
    })
}

/// `X ~ G(n, p)` and `Y ~ G(n, q)` for the config's seed.
pub fn trial_hosts(cfg: &ExperimentConfig) -> (Graph, Graph) {
    (gnp(cfg.n, cfg.p, &mut rng(cfg.seed, STREAM_X)), gnp(cfg.n, cfg.q, &mut rng(cfg.seed, STREAM_Y)))
}

/// The start and target configurations for the config's seed.
pub fn trial_pair(cfg: &ExperimentConfig) -> (Configuration, Configuration) {
    let mut r = rng(cfg.seed, STREAM_PAIR);
    let from = sample_configuration(cfg.n, &mut r);
    (from, sample_configuration(cfg.n, &mut r))
}

/// One trial: samples `X ~ G(n, p)` and `Y ~ G(n, q)` from the config's
/// seed, plans swaps of friends in `FS(X, K_n)` and realises each by a star
/// routing on the positions of the first person's closed neighbourhood.
/// A step whose host is not Wilsonian ends the trial as unsolved.
pub fn run_random_exchange_trial(cfg: &ExperimentConfig, from: &Configuration, to: &Configuration) -> TrialRecord {
    let n = cfg.n;
    let (x, y) = trial_hosts(cfg);
    let mut checks = BTreeMap::new();
    checks.insert("biconnected_x".to_string(), x.is_biconnected());
    checks.insert("degrees_in_band".to_string(), degrees_in_band(&x, cfg.p));
    let mut record = |outcome, cause: Option<String>, moves: &[Move], all_steps: Option<bool>| {
        if let Some(b) = all_steps {
            checks.insert("neighborhood_wilsonian_all_steps".to_string(), b);
        }
        TrialRecord {
            seed: cfg.seed,
            condition_checks: checks.clone(),
            outcome,
            cause,
            length: moves.len(),
            moves: moves.to_vec(),
        }
    };
    if from.n() != n || to.n() != n {
        return record(Outcome::Skipped, Some("configuration size differs from n".into()), &[], None);
    }
    if !x.is_connected() {
        return record(Outcome::Skipped, Some("X is disconnected".into()), &[], None);
    }
    let plan = match plan_friend_swaps(&x, from, to) {
        Ok(p) => p,
        Err(e) => return record(Outcome::Skipped, Some(e.to_string()), &[], None),
    };
    let mut cur = from.clone();
    let mut moves = Vec::new();
    for (step, &(p, q)) in plan.iter().enumerate() {
        let region: Vec<usize> = x.closed_neighborhood(p).iter().map(|&t| cur.position_of(t)).collect();
        let host = match y.induced_subgraph(&region) {
            Ok((h, _)) => h,
            Err(e) => return record(Outcome::Unsolved, Some(e.to_string()), &moves, Some(false)),
        };
        if let Err(clause) = check_wilsonian(&host) {
            let cause = format!("step {step}: neighbourhood host {}", clause.as_str());
            return record(Outcome::Unsolved, Some(cause), &moves, Some(false));
        }
        match exchange(&x, &y, &cur, p, q) {
            Ok(ms) => {
                for m in ms {
                    cur.swap_positions(m.a, m.b);
                    moves.push(m);
                }
            }
            Err(e) => return record(Outcome::Unsolved, Some(format!("step {step}: {e}")), &moves, Some(true)),
        }
    }
    match replay_moves(&x, &y, from, &moves) {
        Ok(end) if end == *to => {}
        Ok(_) => return record(Outcome::Unsolved, Some("replay missed the target".into()), &moves, Some(true)),
        Err(e) => return record(Outcome::Unsolved, Some(format!("replay failed: {e}")), &moves, Some(true)),
    }
    if moves.len() as u64 > cfg.length_budget() {
        return record(Outcome::Unsolved, Some("length over budget".into()), &moves, Some(true));
    }
    record(Outcome::Solved, None, &moves, Some(true))
}

/// `cfg.trials` independent trials, in parallel, in trial order. Trial `i`
/// uses seed `cfg.trial_seed(i)` for its graphs and its random pair.
pub fn run_random_campaign(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    Ok((0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let trial = cfg.trial(i);
            let (from, to) = trial_pair(&trial);
            run_random_exchange_trial(&trial, &from, &to)
        })
        .collect())
}

pub fn campaign_header(cfg: &ExperimentConfig, c: Option<f64>) -> String {
    let c = c.map_or("none".to_string(), |c| c.to_string());
    format!(
        "# generator={GENERATOR_VERSION} n={} p={} q={} c={c} trials={} seed={} budget={}*n^{}",
        cfg.n, cfg.p, cfg.q, cfg.trials, cfg.seed, cfg.budget_k, cfg.budget_d
    )
}

pub const TRIAL_CSV_HEADER: &str = "trial,seed,biconnected_x,degrees_in_band,neighborhood_wilsonian_all_steps,outcome,cause,length";

pub fn trials_csv(records: &[TrialRecord]) -> String {
    let mut out = format!("{TRIAL_CSV_HEADER}\n");
    for (i, r) in records.iter().enumerate() {
        let flag = |k: &str| r.condition_checks.get(k).map_or(String::new(), |b| b.to_string());
        let outcome = match r.outcome {
            Outcome::Solved => "solved",
            Outcome::Unsolved => "unsolved",
            Outcome::Skipped => "skipped",
        };
        out.push_str(&format!(
            "{i},{},{},{},{},{outcome},{},{}\n",
            r.seed,
            flag("biconnected_x"),
            flag("degrees_in_band"),
            flag("neighborhood_wilsonian_all_steps"),
            r.cause.as_deref().unwrap_or("").replace(',', ";"),
            r.length
        ));
    }
    out
}

/// Exact largest component diameter of `FS(Star_n, B_n)` for each `n`.
pub fn bn_campaign(ns: impl IntoIterator<Item = usize>, opts: &OracleOptions) -> Result<Vec<(usize, u64)>> {
    oracle::diameter_sweep(|n| Ok((Family::Star.build(n)?, Family::Bn.build(n)?)), ns, opts)
}

/// Exact distance from the reversal to the identity in `FS(K_n, Path_n)`.
pub fn reversal_campaign(ns: impl IntoIterator<Item = usize>, opts: &OracleOptions) -> Result<Vec<(usize, u64)>> {
    ns.into_iter()
        .map(|n| {
            let (x, y) = (Family::Complete.build(n)?, Family::Path.build(n)?);
            let d = oracle::distance(&x, &y, &Configuration::reversal(n), &Configuration::identity(n), opts)?
                .ok_or_else(|| Error::internal("reversal unreachable on a path"))?;
            Ok((n, d as u64))
        })
        .collect()
}

pub fn growth_csv(value: &str, rows: &[(usize, u64)]) -> String {
    let mut out = format!("n,{value}\n");
    for (n, v) in rows {
        out.push_str(&format!("{n},{v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ThetaParams;
    use crate::token::binom2;

    #[test]
    fn gnp_extremes_and_determinism() {
        assert_eq!(sample_gnp(9, 0.0, 1).edge_count(), 0);
        assert_eq!(sample_gnp(9, 1.0, 1).edge_count(), 36);
        assert_eq!(sample_gnp(30, 0.3, 7), sample_gnp(30, 0.3, 7));
        assert_ne!(sample_gnp(30, 0.3, 7), sample_gnp(30, 0.3, 8));
    }

    #[test]
    fn gnp_edge_count_concentrates() {
        // Binomial(19900, 1/2): sd is about 70.5.
        let mean = binom2(200) as f64 / 2.0;
        let sd = (binom2(200) as f64 / 4.0).sqrt();
        for seed in 0..100 {
            let m = sample_gnp(200, 0.5, seed).edge_count() as f64;
            assert!((m - mean).abs() <= 4.0 * sd, "seed {seed}: {m}");
        }
    }

    #[test]
    fn min_degree_sampler() {
        for seed in 0..20 {
            let g = sample_min_degree(12, 7, seed).unwrap();
            assert!(g.min_degree() >= 7 && g.is_connected());
        }
        assert!(sample_min_degree(5, 5, 0).is_err());
    }

    #[test]
    fn wilsonian_examples() {
        assert_eq!(check_wilsonian(&Family::Complete.build(5).unwrap()), Ok(()));
        assert_eq!(check_wilsonian(&Family::Cycle.build(6).unwrap()), Err(WilsonClause::Cycle));
        assert_eq!(check_wilsonian(&Family::Grid.build(9).unwrap()), Err(WilsonClause::Bipartite));
        assert_eq!(check_wilsonian(&Family::Path.build(4).unwrap()), Err(WilsonClause::NotBiconnected));
        assert_eq!(check_wilsonian(&Family::Cycle.build(7).unwrap()), Err(WilsonClause::Cycle));
        assert_eq!(check_wilsonian(&ThetaParams { i: 1, j: 2, k: 2 }.graph()), Err(WilsonClause::Theta122));
        assert_eq!(check_wilsonian(&Family::Cycle.build(3).unwrap()), Ok(()));
    }

    #[test]
    fn complete_graphs_always_solve() {
        let cfg = ExperimentConfig { n: 12, p: 1.0, q: 1.0, trials: 4, seed: 5, budget_k: 200, budget_d: 6 };
        for r in run_random_campaign(&cfg).unwrap() {
            assert_eq!(r.outcome, Outcome::Solved, "{:?}", r.cause);
        }
    }

    #[test]
    fn reversal_matches_binomial() {
        let rows = reversal_campaign(4..=6, &OracleOptions::default()).unwrap();
        assert_eq!(rows, vec![(4, 6), (5, 10), (6, 15)]);
    }
}
