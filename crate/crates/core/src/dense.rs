//! Routers for friendship and movement graphs of large minimum degree.
//!
//! Both plan in `FS(X, K_n)`: a route there is a list of swaps of two
//! friends, wherever they stand. `dense3` realises each swap with three
//! friendly swaps through a witness, `dense-exchange` by a star routing on
//! the positions of the first person's friends.

use crate::config::{invert_moves, invert_roles, replay_moves, Configuration, Move, SolveReport};
use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::star::solve_star;
use crate::token::{binom2, solve_kn};

pub const SOLVER_3SWAP: &str = "dense3";
pub const SOLVER_EXCHANGE: &str = "dense-exchange";

/// `δ(X) + δ(Y) ≥ 3n/2`.
pub fn three_halves_condition(x: &Graph, y: &Graph) -> bool {
    2 * (x.min_degree() + y.min_degree()) >= 3 * x.n()
}

/// `min(δ(X), δ(Y)) + 2 max(δ(X), δ(Y)) ≥ 2n`.
pub fn exchange_condition(x: &Graph, y: &Graph) -> bool {
    let (a, b) = (x.min_degree(), y.min_degree());
    a.min(b) + 2 * a.max(b) >= 2 * x.n()
}

/// `δ(X), δ(Y) > n/2` and `2 min + 3 max ≥ 3n`. Only checked, no router.
pub fn wide_condition(x: &Graph, y: &Graph) -> bool {
    let n = x.n();
    let (a, b) = (x.min_degree(), y.min_degree());
    2 * a > n && 2 * b > n && 2 * a.min(b) + 3 * a.max(b) >= 3 * n
}

fn check(x: &Graph, y: &Graph, from: &Configuration, to: &Configuration, cond: fn(&Graph, &Graph) -> bool, name: &str) -> Result<()> {
    let n = x.n();
    if y.n() != n || from.n() != n || to.n() != n {
        return Err(Error::InvalidConfiguration("X, Y and both configurations must have the same size".into()));
    }
    if !x.is_connected() || !y.is_connected() {
        return Err(Error::DegreeConditionViolated("X and Y must be connected".into()));
    }
    if !cond(x, y) {
        return Err(Error::DegreeConditionViolated(format!(
            "{name} fails with δ(X) = {}, δ(Y) = {}, n = {n}",
            x.min_degree(),
            y.min_degree()
        )));
    }
    Ok(())
}

/// Swaps of two friends taking `from` to `to` when positions do not
/// matter, from the token router run with the roles of `X` and `Y` swapped.
pub fn plan_friend_swaps(x: &Graph, from: &Configuration, to: &Configuration) -> Result<Vec<(usize, usize)>> {
    let r = solve_kn(x, &from.inverse(), &to.inverse())?;
    if !r.reachable {
        return Err(Error::precondition("X must be connected"));
    }
    Ok(r.moves().iter().map(|m| (m.a, m.b)).collect())
}

/// Smallest position `r`, other than where `p` and `q` stand, adjacent in
/// `Y` to both of their positions and occupied by a friend of both.
pub fn find_witness(x: &Graph, y: &Graph, c: &Configuration, p: usize, q: usize) -> Option<usize> {
    let (a, b) = (c.position_of(p), c.position_of(q));
    (0..y.n()).find(|&r| {
        let t = c.occupant_of(r);
        r != a && r != b && y.has_edge(r, a) && y.has_edge(r, b) && x.has_edge(t, p) && x.has_edge(t, q)
    })
}

/// Every planned swap of friends costs three friendly swaps through a
/// witness, so the route has at most `3n(n-1)/2` moves.
pub fn solve_dense_3swap(x: &Graph, y: &Graph, from: &Configuration, to: &Configuration) -> Result<SolveReport> {
    check(x, y, from, to, three_halves_condition, "δ(X) + δ(Y) ≥ 3n/2")?;
    let mut cur = from.clone();
    let mut moves = Vec::new();
    for (p, q) in plan_friend_swaps(x, from, to)? {
        let r = find_witness(x, y, &cur, p, q)
            .ok_or_else(|| Error::internal(format!("no witness for the swap of {p} and {q}")))?;
        let (a, b) = (cur.position_of(p), cur.position_of(q));
        for m in [Move::new(r, a), Move::new(r, b), Move::new(a, r)] {
            cur.swap_positions(m.a, m.b);
            moves.push(m);
        }
    }
    if cur != *to {
        return Err(Error::internal("three-swap route missed the target"));
    }
    Ok(SolveReport::found(from.clone(), moves, 3 * binom2(x.n()), SOLVER_3SWAP))
}

/// Moves that exchange friends `p` and `q` and fix everyone else, by
/// routing `Star` with `p` as center on the positions of `p`'s closed
/// neighbourhood.
pub fn exchange(x: &Graph, y: &Graph, c: &Configuration, p: usize, q: usize) -> Result<Vec<Move>> {
    if !x.has_edge(p, q) {
        return Err(Error::precondition(format!("{p} and {q} are not friends")));
    }
    let persons = x.closed_neighborhood(p);
    let mut region: Vec<usize> = persons.iter().map(|&t| c.position_of(t)).collect();
    region.sort_unstable();
    let (sub, map) = y.induced_subgraph(&region)?;
    let local_pos = |v: usize| map.iter().position(|&w| w == v).expect("position in the region");
    // Local person 0 is p; the others keep their order.
    let mut local: Vec<usize> = vec![p];
    local.extend(persons.iter().copied().filter(|&t| t != p));
    let mut start = vec![0; local.len()];
    let mut goal = vec![0; local.len()];
    for (i, &t) in local.iter().enumerate() {
        start[i] = local_pos(c.position_of(t));
        let want = if t == p { q } else if t == q { p } else { t };
        goal[i] = local_pos(c.position_of(want));
    }
    let r = solve_star(&sub, &Configuration::new(start)?, &Configuration::new(goal)?)?;
    if !r.reachable {
        return Err(Error::internal(format!("star subproblem for exchanging {p} and {q} is unsolvable")));
    }
    Ok(r.moves().iter().map(|m| Move::new(map[m.a], map[m.b])).collect())
}

/// Every planned swap of friends becomes an exchange; at most `n(n-1)/2`
/// exchanges of `O(n^4)` moves each.
///
/// The star subproblem is only guaranteed solvable when the movement graph
/// has the larger minimum degree (`X = K_n`, `Y = C_n` meets the condition
/// but no star routing on a cycle swaps two people), so otherwise the
/// route is built with the roles of `X` and `Y` exchanged and translated
/// back.
pub fn solve_dense_exchange(x: &Graph, y: &Graph, from: &Configuration, to: &Configuration) -> Result<SolveReport> {
    check(x, y, from, to, exchange_condition, "min + 2 max ≥ 2n")?;
    let moves = if x.min_degree() > y.min_degree() {
        let (dx, dy, dfrom) = invert_roles(x, y, from);
        let dual = exchange_route(&dx, &dy, &dfrom, &to.inverse())?;
        invert_moves(&dfrom, &dual)
    } else {
        exchange_route(x, y, from, to)?
    };
    if replay_moves(x, y, from, &moves)? != *to {
        return Err(Error::internal("exchange route missed the target"));
    }
    Ok(SolveReport::found(from.clone(), moves, Constants::get().dense_budget(x.n()), SOLVER_EXCHANGE))
}

fn exchange_route(x: &Graph, y: &Graph, from: &Configuration, to: &Configuration) -> Result<Vec<Move>> {
    let mut cur = from.clone();
    let mut moves = Vec::new();
    for (p, q) in plan_friend_swaps(x, from, to)? {
        for m in exchange(x, y, &cur, p, q)? {
            cur.swap_positions(m.a, m.b);
            moves.push(m);
        }
    }
    Ok(moves)
}
