//! Routing in `FS(K_n, Y)`, where every pair of people are friends and any
//! swap across an edge of `Y` is allowed.

use crate::config::{Configuration, Move, SolveReport};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const SOLVER_ID: &str = "kn";

pub fn binom2(n: usize) -> u64 {
    (n as u64) * (n as u64).saturating_sub(1) / 2
}

/// True when every component of `y` holds the same people in both
/// configurations, which is exactly reachability in `FS(K_n, Y)`.
pub fn same_people_per_component(y: &Graph, from: &Configuration, to: &Configuration) -> bool {
    y.components().iter().all(|comp| {
        let mut a: Vec<usize> = comp.iter().map(|&v| from.occupant_of(v)).collect();
        let mut b: Vec<usize> = comp.iter().map(|&v| to.occupant_of(v)).collect();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    })
}

/// Freezes positions one at a time. Each round takes the smallest-label
/// vertex `v` whose removal keeps the unfrozen part of its component
/// connected, walks the person who belongs on `v` there along a shortest
/// path through unfrozen positions, then freezes `v`. A round in a region
/// of `r` positions costs at most `r - 1` swaps, so the total is at most
/// `n(n-1)/2`.
pub fn solve_kn(y: &Graph, from: &Configuration, to: &Configuration) -> Result<SolveReport> {
    check_sizes(y, from, to)?;
    let budget = binom2(y.n());
    if !same_people_per_component(y, from, to) {
        return Ok(SolveReport::unreachable(budget, SOLVER_ID));
    }
    let (moves, _) = route(y, from, to)?;
    Ok(SolveReport::found(from.clone(), moves, budget, SOLVER_ID))
}

fn check_sizes(y: &Graph, from: &Configuration, to: &Configuration) -> Result<()> {
    if from.n() != y.n() || to.n() != y.n() {
        return Err(Error::InvalidConfiguration("configuration size must match Y".into()));
    }
    Ok(())
}

/// The freezing procedure; also returns how many rounds routed anyone.
fn route(y: &Graph, from: &Configuration, to: &Configuration) -> Result<(Vec<Move>, usize)> {
    let mut cur = from.clone();
    let mut moves = Vec::new();
    let mut rounds = 0;
    for comp in y.components() {
        let mut alive = vec![false; y.n()];
        for &v in &comp {
            alive[v] = true;
        }
        let mut remaining = comp.clone();
        while remaining.len() > 1 {
            let (sub, map) = y.induced_subgraph(&remaining)?;
            let v = map[sub.removable_vertex()?];
            let person = to.occupant_of(v);
            let u = cur.position_of(person);
            if u != v {
                let path = y
                    .bfs_path_where(u, |w| w == v, |w| !alive[w])
                    .ok_or_else(|| Error::internal("residual region disconnected"))?;
                for w in path.windows(2) {
                    moves.push(Move::new(w[0], w[1]));
                    cur.swap_positions(w[0], w[1]);
                }
                rounds += 1;
            }
            alive[v] = false;
            remaining.retain(|&w| w != v);
        }
    }
    debug_assert_eq!(&cur, to);
    Ok((moves, rounds))
}

/// Consecutive plan moves taken two at a time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanPair {
    pub first: Move,
    pub second: Move,
}

impl PlanPair {
    /// Good pairs swap across two edges sharing a vertex.
    pub fn is_good(&self) -> bool {
        self.first.touches(&self.second)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnPlan {
    pub moves: Vec<Move>,
    /// `None` when the plan has odd length and cannot be paired.
    pub pairs: Option<Vec<PlanPair>>,
    /// Rounds of the freezing procedure that moved someone.
    pub phases: usize,
}

impl KnPlan {
    pub fn odd_length(&self) -> bool {
        self.pairs.is_none()
    }

    pub fn bad_pairs(&self) -> usize {
        self.pairs.as_ref().map_or(0, |p| p.iter().filter(|q| !q.is_good()).count())
    }
}

/// The `solve_kn` moves chunked into pairs. Within one round the moves walk
/// a single path, so consecutive moves share a vertex; only pairs that
/// straddle two rounds can be bad, hence at most one bad pair per round.
pub fn solve_kn_plan(y: &Graph, from: &Configuration, to: &Configuration) -> Result<KnPlan> {
    check_sizes(y, from, to)?;
    if !y.is_connected() {
        return Err(Error::precondition("solve_kn_plan needs a connected graph"));
    }
    let (moves, phases) = route(y, from, to)?;
    let pairs = (moves.len() % 2 == 0).then(|| {
        moves
            .chunks(2)
            .map(|c| PlanPair { first: c[0], second: c[1] })
            .collect()
    });
    Ok(KnPlan { moves, pairs, phases })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::replay_moves;
    use crate::graph::Family;

    #[test]
    fn path_reversal_costs_exactly_binomial() {
        for n in 3..=9 {
            let y = Family::Path.build(n).unwrap();
            let x = Family::Complete.build(n).unwrap();
            let from = Configuration::reversal(n);
            let to = Configuration::identity(n);
            let r = solve_kn(&y, &from, &to).unwrap();
            assert_eq!(r.length as u64, binom2(n));
            assert_eq!(replay_moves(&x, &y, &from, r.moves()).unwrap(), to);
        }
    }

    #[test]
    fn identical_configurations_need_nothing() {
        let y = Family::Cycle.build(5).unwrap();
        let c = Configuration::new(vec![3, 1, 4, 0, 2]).unwrap();
        let r = solve_kn(&y, &c, &c).unwrap();
        assert!(r.reachable);
        assert_eq!(r.length, 0);
        let plan = solve_kn_plan(&y, &c, &c).unwrap();
        assert_eq!(plan.pairs, Some(vec![]));
        assert_eq!(plan.bad_pairs(), 0);
    }

    #[test]
    fn disconnected_hosts() {
        let y = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let from = Configuration::identity(6);
        let to = Configuration::new(vec![2, 0, 1, 5, 3, 4]).unwrap();
        let r = solve_kn(&y, &from, &to).unwrap();
        assert!(r.reachable && r.length <= 6);
        let across = Configuration::new(vec![3, 1, 2, 0, 4, 5]).unwrap();
        assert!(!solve_kn(&y, &from, &across).unwrap().reachable);
    }

    #[test]
    fn plan_on_p3() {
        let y = Family::Path.build(3).unwrap();
        let plan = solve_kn_plan(&y, &Configuration::new(vec![2, 1, 0]).unwrap(), &Configuration::identity(3)).unwrap();
        assert!(plan.moves.len() <= 3);
        assert!(plan.odd_length());
    }
}
