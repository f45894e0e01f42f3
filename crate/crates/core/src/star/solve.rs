//! The router for `FS(Star_n, Y)`: forests and cycles directly, θ(1,2,2)
//! by exhaustive search, other biconnected hosts by compiling a token
//! swapping plan into gadgets, and everything else by splitting at a cut
//! vertex.

use super::gadgets::Gadgets;
use super::walk::{Walker, CENTER};
use crate::config::{Configuration, Move, SolveReport};
use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::classify::is_theta_122;
use crate::graph::{Family, Graph};
use crate::oracle::{self, OracleOptions};
use crate::token::solve_kn_plan;

pub const SOLVER_ID: &str = "star";

fn check_sizes(y: &Graph, from: &Configuration, to: &Configuration) -> Result<()> {
    if from.n() != y.n() || to.n() != y.n() {
        return Err(Error::InvalidConfiguration("configuration size must match Y".into()));
    }
    Ok(())
}

fn report(y: &Graph, from: &Configuration, moves: Option<Vec<Move>>) -> SolveReport {
    let budget = Constants::get().star_budget(y.n());
    match moves {
        Some(m) => SolveReport::found(from.clone(), m, budget, SOLVER_ID),
        None => SolveReport::unreachable(budget, SOLVER_ID),
    }
}

/// Routes person 0 (the star center) and everyone else from `from` to `to`
/// on any `Y`.
pub fn solve_star(y: &Graph, from: &Configuration, to: &Configuration) -> Result<SolveReport> {
    check_sizes(y, from, to)?;
    Ok(report(y, from, route(y, from, to, true)?))
}

/// As [`solve_star`], for a biconnected `Y` (a single edge or vertex counts).
pub fn solve_star_biconnected(y: &Graph, from: &Configuration, to: &Configuration) -> Result<SolveReport> {
    check_sizes(y, from, to)?;
    if y.n() > 2 && !y.is_biconnected() {
        return Err(Error::precondition("solve_star_biconnected needs a biconnected graph"));
    }
    Ok(report(y, from, biconnected(y, from, to, true)?))
}

/// Whether `to` is reachable from `from` in `FS(Star_n, Y)`, without
/// building the moves for the gadget-based cases.
pub fn star_reachable(y: &Graph, from: &Configuration, to: &Configuration) -> Result<bool> {
    check_sizes(y, from, to)?;
    Ok(route(y, from, to, false)?.is_some())
}

/// With `compile` off the general biconnected case answers `Some(vec![])`
/// once the parity test passes, so only the verdict is meaningful.
fn route(y: &Graph, from: &Configuration, to: &Configuration, compile: bool) -> Result<Option<Vec<Move>>> {
    if from == to {
        return Ok(Some(Vec::new()));
    }
    let home = from.position_of(CENTER);
    let comps = y.components();
    if comps.len() > 1 {
        let mine = comps.iter().find(|c| c.contains(&home)).expect("every vertex has a component");
        let frozen = (0..y.n()).filter(|v| !mine.contains(v)).all(|v| from.occupant_of(v) == to.occupant_of(v));
        if !frozen {
            return Ok(None);
        }
        return on_region(y, mine, from, |p| to.position_of(p), compile);
    }
    if y.is_forest() {
        return Ok(tree(y, from, to));
    }
    if y.n() <= 2 || y.is_biconnected() {
        return biconnected(y, from, to, compile);
    }
    cut(y, from, to, compile)
}

/// Solves on the subgraph induced by `region`, for the people currently on
/// it, with person `p` wanted at `want(p)`. `None` if some wanted position
/// is outside the region or the sub-instance is unreachable.
fn on_region(
    y: &Graph,
    region: &[usize],
    cur: &Configuration,
    want: impl Fn(usize) -> usize,
    compile: bool,
) -> Result<Option<Vec<Move>>> {
    let (sub, map) = y.induced_subgraph(region)?;
    let mut local = vec![usize::MAX; y.n()];
    for (i, &v) in map.iter().enumerate() {
        local[v] = i;
    }
    let mut persons: Vec<usize> = region.iter().map(|&v| cur.occupant_of(v)).collect();
    persons.sort_unstable();
    if persons.first() != Some(&CENTER) {
        return Err(Error::internal("region without the center"));
    }
    let from = cur.restrict(&persons, &map)?;
    let mut placement = Vec::with_capacity(persons.len());
    for &p in &persons {
        let at = local[want(p)];
        if at == usize::MAX {
            return Ok(None);
        }
        placement.push(at);
    }
    let Ok(to) = Configuration::new(placement) else { return Ok(None) };
    Ok(route(&sub, &from, &to, compile)?.map(|moves| moves.iter().map(|m| Move::new(map[m.a], map[m.b])).collect()))
}

/// In a tree every hole position has exactly one configuration.
fn tree(y: &Graph, from: &Configuration, to: &Configuration) -> Option<Vec<Move>> {
    let path = y.bfs_path(from.position_of(CENTER), to.position_of(CENTER))?;
    let mut w = Walker::new(y, from);
    w.walk(&path).ok()?;
    (w.configuration() == *to).then(|| w.into_moves())
}

fn cycle_order(y: &Graph) -> Vec<usize> {
    let mut order = vec![0];
    let mut prev = usize::MAX;
    let mut cur = 0;
    while order.len() < y.n() {
        let next = *y.neighbors(cur).iter().find(|&&v| v != prev).expect("cycle vertices have degree two");
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

fn biconnected(y: &Graph, from: &Configuration, to: &Configuration, compile: bool) -> Result<Option<Vec<Move>>> {
    if from == to {
        return Ok(Some(Vec::new()));
    }
    if y.n() <= 2 {
        return Ok(tree(y, from, to));
    }
    if y.is_cycle_graph() {
        let cyc = cycle_order(y);
        let mut w = Walker::new(y, from);
        let found = w.slide_until(&cyc, |w| w.occupants() == to.occupants())?;
        return Ok(found.then(|| w.into_moves()));
    }
    if is_theta_122(y) {
        let x = Family::Star.build(y.n())?;
        return oracle::shortest_path(&x, y, from, to, &OracleOptions::default());
    }
    let g = Gadgets::new(y)?;
    let mut w = Walker::new(y, from);
    let home = to.position_of(CENTER);
    let path = y.bfs_path(w.hole(), home).ok_or_else(|| Error::internal("biconnected graph is disconnected"))?;
    w.walk(&path)?;
    let cur = w.configuration();
    let bipartite = y.is_bipartite();
    if bipartite && cur.parity(Some(CENTER)) != to.parity(Some(CENTER)) {
        return Ok(None);
    }
    if !compile {
        return Ok(Some(Vec::new()));
    }
    let (rest, map) = y.without_vertex(home)?;
    let persons: Vec<usize> = (1..y.n()).collect();
    let plan = solve_kn_plan(&rest, &cur.restrict(&persons, &map)?, &to.restrict(&persons, &map)?)?;
    let global = |m: Move| (map[m.a], map[m.b]);
    if bipartite {
        let pairs = plan
            .pairs
            .ok_or_else(|| Error::internal("odd token plan between configurations of equal parity"))?;
        for pair in pairs {
            let (a, b) = global(pair.first);
            let (c, d) = global(pair.second);
            if (a.min(b), a.max(b)) == (c.min(d), c.max(d)) {
                continue;
            }
            if pair.is_good() {
                // Swap a-b, then the edge sharing a vertex with it: the
                // occupant of the outer end of the first edge ends up on the
                // outer end of the second.
                let shared = if a == c || a == d { a } else { b };
                let u = if shared == a { b } else { a };
                let v = if shared == c { d } else { c };
                g.three_cycle(&mut w, u, v, shared)?;
            } else {
                g.double_transposition(&mut w, (a, b), (c, d))?;
            }
        }
    } else {
        for m in plan.moves {
            let (a, b) = global(m);
            g.transposition(&mut w, a, b)?;
        }
    }
    if w.configuration() != *to {
        return Err(Error::internal("gadget compilation missed the target"));
    }
    Ok(Some(w.into_moves()))
}

/// Splits at the smallest cut vertex `v` into the smallest piece of `Y - v`
/// plus `v` and the rest plus `v`. People cannot cross `v` except the
/// center, so with the center parked on `v` the two sides are solved one
/// after the other.
fn cut(y: &Graph, from: &Configuration, to: &Configuration, compile: bool) -> Result<Option<Vec<Move>>> {
    let v = *y.cut_vertices().first().ok_or_else(|| Error::internal("separable graph without a cut vertex"))?;
    let (rest, map) = y.without_vertex(v)?;
    let pieces = rest.components();
    let small = pieces.iter().min_by_key(|c| (c.len(), c[0])).expect("cut vertex splits the graph");
    let mut side_a: Vec<usize> = small.iter().map(|&i| map[i]).chain([v]).collect();
    side_a.sort_unstable();
    let mut side_b: Vec<usize> = (0..y.n()).filter(|u| *u == v || !side_a.contains(u)).collect();
    side_b.sort_unstable();

    let mut moves = Vec::new();
    let home = from.position_of(CENTER);
    let mine = if side_a.contains(&home) { &side_a } else { &side_b };
    let (local, lmap) = y.induced_subgraph(mine)?;
    let at = |u: usize| lmap.iter().position(|&x| x == u).expect("vertex of the side");
    let path = local.bfs_path(at(home), at(v)).ok_or_else(|| Error::internal("side is disconnected"))?;
    let path: Vec<usize> = path.into_iter().map(|i| lmap[i]).collect();
    let mut w = Walker::new(y, from);
    w.walk(&path)?;
    moves.extend_from_slice(w.moves());
    let mut cur = w.configuration();

    // The side that does not hold the center's target inside it goes first,
    // with the center wanted back on `v`.
    let dest = to.position_of(CENTER);
    let (first, second) = if dest != v && side_a.contains(&dest) { (&side_b, &side_a) } else { (&side_a, &side_b) };
    let park = |p: usize| if p == CENTER { v } else { to.position_of(p) };
    for (side, want) in [(first, &park as &dyn Fn(usize) -> usize), (second, &|p| to.position_of(p))] {
        let Some(part) = on_region(y, side, &cur, want, compile)? else { return Ok(None) };
        let mut placement = cur.placement().to_vec();
        for &u in side.iter() {
            let p = cur.occupant_of(u);
            placement[p] = want(p);
        }
        cur = Configuration::new(placement)?;
        moves.extend(part);
    }
    Ok((cur == *to).then_some(moves))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::replay_moves;

    fn star(n: usize) -> Graph {
        Family::Star.build(n).unwrap()
    }

    fn occ(v: &[usize]) -> Configuration {
        Configuration::from_occupants(v.to_vec()).unwrap()
    }

    fn solved(y: &Graph, from: &Configuration, to: &Configuration) -> SolveReport {
        let r = solve_star(y, from, to).unwrap();
        if r.reachable {
            assert_eq!(replay_moves(&star(y.n()), y, from, r.moves()).unwrap(), *to);
            assert!(r.length as u64 <= r.bound_budget);
        }
        r
    }

    #[test]
    fn grid_parity_decides() {
        let y = Family::Grid.build(9).unwrap();
        let from = Configuration::identity(9);
        let even = occ(&[0, 2, 3, 1, 4, 5, 6, 7, 8]);
        let odd = occ(&[0, 2, 1, 3, 4, 5, 6, 7, 8]);
        assert!(solved(&y, &from, &even).reachable);
        assert!(!solved(&y, &from, &odd).reachable);
    }

    #[test]
    fn fifteen_puzzle_round_trip() {
        let y = Family::Grid.build(16).unwrap();
        let from = Configuration::identity(16);
        let mut o: Vec<usize> = (0..16).collect();
        o.swap(5, 9);
        o.swap(14, 15);
        o.swap(1, 2);
        o.swap(3, 7);
        let r = solved(&y, &from, &occ(&o));
        assert!(r.reachable);
    }

    #[test]
    fn tree_walks_the_center() {
        let y = Family::Path.build(5).unwrap();
        let from = Configuration::identity(5);
        let to = occ(&[1, 2, 3, 0, 4]);
        let r = solved(&y, &from, &to);
        assert!(r.reachable);
        assert_eq!(r.length, 3);
        assert!(!solved(&y, &from, &occ(&[2, 1, 3, 0, 4])).reachable);
    }

    #[test]
    fn cycle_rotation() {
        let y = Family::Cycle.build(5).unwrap();
        let from = Configuration::identity(5);
        assert!(solved(&y, &from, &occ(&[0, 2, 3, 4, 1])).reachable);
        assert!(!solved(&y, &from, &occ(&[0, 2, 1, 3, 4])).reachable);
    }

    #[test]
    fn two_triangles_at_a_cut_vertex() {
        let y = Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let from = Configuration::identity(5);
        // The center visits both triangles; people stay on their side.
        assert!(solved(&y, &from, &occ(&[1, 0, 2, 4, 3])).reachable);
        assert!(!solved(&y, &from, &occ(&[3, 1, 2, 0, 4])).reachable);
    }

    #[test]
    fn disconnected_needs_frozen_rest() {
        let y = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let from = Configuration::identity(4);
        assert!(solved(&y, &from, &occ(&[1, 0, 2, 3])).reachable);
        assert!(!solved(&y, &from, &occ(&[1, 0, 3, 2])).reachable);
    }
}
