//! Carrying three people who stand on a path of two edges onto three
//! given positions, using only moves of the center.
//!
//! The working invariant on a cycle `C` is: the center is on `C`, the three
//! people are on `C`, and they are consecutive once the center's vertex is
//! skipped. Walking the center around `C` then places the block anywhere on
//! `C` with the center anywhere else.

use std::collections::{HashMap, HashSet, VecDeque};

use super::walk::{consecutive_on, Walker, CENTER};
use crate::error::{Error, Result};
use crate::graph::{cycle_edges, two_disjoint_paths, Graph};

type Triple = [usize; 3];

fn norm((a, b): (usize, usize)) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn edge_set(cyc: &[usize]) -> HashSet<(usize, usize)> {
    cycle_edges(cyc).map(norm).collect()
}

fn triple_positions(w: &Walker, persons: &Triple) -> Triple {
    persons.map(|p| w.position(p))
}

/// The invariant above, in terms of positions only.
fn invariant_at(cyc: &[usize], hole: usize, tpos: &[usize]) -> bool {
    if !cyc.contains(&hole) || !tpos.iter().all(|v| cyc.contains(v)) {
        return false;
    }
    let rest: Vec<usize> = cyc.iter().copied().filter(|&v| v != hole).collect();
    consecutive_on(&rest, tpos)
}

fn holds(w: &Walker, cyc: &[usize], persons: &Triple) -> bool {
    invariant_at(cyc, w.hole(), &triple_positions(w, persons))
}

/// Walks `cyc` from `from` to `to`, leaving `from` in the direction that
/// does not start with `not_first`.
fn arc(cyc: &[usize], from: usize, to: usize, not_first: usize) -> Vec<usize> {
    let l = cyc.len();
    let i = cyc.iter().position(|&v| v == from).expect("arc start on cycle");
    let dir = if cyc[(i + 1) % l] == not_first { l - 1 } else { 1 };
    let mut out = vec![from];
    let mut j = i;
    while cyc[j] != to {
        j = (j + dir) % l;
        out.push(cyc[j]);
    }
    out
}

/// Three consecutive vertices of `cyc` occupied by `tpos`, middle first.
fn run_of(cyc: &[usize], tpos: &Triple) -> Option<(usize, usize, usize)> {
    let l = cyc.len();
    (0..l).find_map(|i| {
        let (a, b, c) = (cyc[i], cyc[(i + 1) % l], cyc[(i + 2) % l]);
        let mut s = [a, b, c];
        s.sort_unstable();
        let mut t = *tpos;
        t.sort_unstable();
        (s == t).then_some((b, a, c))
    })
}

fn without_edge(y: &Graph, e: (usize, usize)) -> Graph {
    let e = norm(e);
    Graph::new(y.n(), y.edges().filter(|&f| f != e)).expect("subgraph of a simple graph")
}

/// A cycle of at least four vertices through the two edges of the path
/// the triple occupies; any of the three may serve as the middle when they
/// form a triangle.
pub(crate) fn first_cycle(y: &Graph, tpos: &Triple) -> Result<Vec<usize>> {
    for m in 0..3 {
        let (x, mid, z) = (tpos[(m + 1) % 3], tpos[m], tpos[(m + 2) % 3]);
        if !y.has_edge(x, mid) || !y.has_edge(mid, z) {
            continue;
        }
        let host = if y.has_edge(x, z) { without_edge(y, (x, z)) } else { y.clone() };
        if let Ok(c) = host.cycle_through_two_edges((x, mid), (mid, z)) {
            return Ok(c);
        }
    }
    Err(Error::internal("no cycle of length four or more through the triple"))
}

/// A cycle of at least four vertices sharing an edge with both `a` and `b`.
fn bridge_cycle(y: &Graph, a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
    for e in cycle_edges(a) {
        for f in cycle_edges(b) {
            if norm(e) == norm(f) {
                continue;
            }
            let Ok(c) = y.cycle_through_two_edges(e, f) else { continue };
            if c.len() >= 4 {
                return Ok(c);
            }
            // A triangle: e and f share a vertex; drop the closing edge.
            let Some(mid) = [e.0, e.1].into_iter().find(|&v| v == f.0 || v == f.1) else { continue };
            let u = if e.0 == mid { e.1 } else { e.0 };
            let v = if f.0 == mid { f.1 } else { f.0 };
            let third = (u, v);
            if let Ok(c) = without_edge(y, third).cycle_through_two_edges(e, f) {
                return Ok(c);
            }
        }
    }
    Err(Error::internal("no cycle of length four or more joins the two cycles"))
}

/// Breadth-first search over (center, triple positions) inside `allowed`,
/// ignoring who everybody else is. Replays the shortest route on `w`.
fn local_search(
    w: &mut Walker,
    persons: &Triple,
    allowed: &[bool],
    goal: impl Fn(usize, &Triple) -> bool,
    cap: usize,
) -> Result<bool> {
    let y = w.y;
    let pack = |h: usize, t: &Triple| -> u64 {
        let mut s = *t;
        s.sort_unstable();
        (h as u64) << 48 | (s[0] as u64) << 32 | (s[1] as u64) << 16 | s[2] as u64
    };
    let unpack = |k: u64| -> (usize, Triple) {
        let f = |sh: u32| ((k >> sh) & 0xffff) as usize;
        (f(48), [f(32), f(16), f(0)])
    };
    let start = (w.hole(), triple_positions(w, persons));
    if goal(start.0, &start.1) {
        return Ok(true);
    }
    let first = pack(start.0, &start.1);
    let mut parent: HashMap<u64, u64> = HashMap::from([(first, first)]);
    let mut queue = VecDeque::from([first]);
    let mut found = None;
    'bfs: while let Some(k) = queue.pop_front() {
        let (h, t) = unpack(k);
        for &v in y.neighbors(h) {
            if !allowed[v] {
                continue;
            }
            let t2 = t.map(|p| if p == v { h } else { p });
            let k2 = pack(v, &t2);
            if parent.contains_key(&k2) {
                continue;
            }
            parent.insert(k2, k);
            if goal(v, &t2) {
                found = Some(k2);
                break 'bfs;
            }
            if parent.len() > cap {
                return Err(Error::StateBudgetExceeded { budget: cap as u64 });
            }
            queue.push_back(k2);
        }
    }
    let Some(mut k) = found else { return Ok(false) };
    let mut holes = Vec::new();
    while k != first {
        holes.push(unpack(k).0);
        k = parent[&k];
    }
    holes.reverse();
    w.steps(&holes)?;
    Ok(true)
}

/// Establishes the invariant on `cyc` when the triple already occupies three
/// consecutive vertices of it.
fn board(w: &mut Walker, cyc: &[usize], persons: &Triple) -> Result<()> {
    if holds(w, cyc, persons) {
        return Ok(());
    }
    let y = w.y;
    let tpos = triple_positions(w, persons);
    let (mid, _, _) = run_of(cyc, &tpos).ok_or_else(|| Error::internal("triple not consecutive on the cycle"))?;
    let h = w.hole();
    if cyc.contains(&h) {
        return Err(Error::internal("center on the cycle but the block is split"));
    }
    let on_cycle: Vec<bool> = (0..y.n()).map(|v| cyc.contains(&v)).collect();
    if let Some(path) = y.bfs_path_where(h, |v| on_cycle[v], |v| tpos.contains(&v)) {
        return w.walk(&path);
    }
    // Every route to the cycle enters it through the triple. Two routes
    // meeting only at the center: run them from a clone of its vertex.
    let n = y.n();
    let mut edges: Vec<(usize, usize)> = y.edges().collect();
    edges.extend(y.neighbors(h).iter().map(|&u| (u, n)));
    let (t1, t2) = (n + 1, n + 2);
    for &v in cyc {
        edges.push((v, t1));
        edges.push((v, t2));
    }
    let g = Graph::new(n + 3, edges)?;
    let [mut p1, mut p2] = two_disjoint_paths(&g, &[h, n], &[t1, t2], |_| false)
        .ok_or_else(|| Error::internal("no fan from the center to the cycle"))?;
    for p in [&mut p1, &mut p2] {
        let cut = p.iter().position(|&v| v < n && on_cycle[v]).expect("fan reaches the cycle");
        p.truncate(cut + 1);
        if p[0] == n {
            p[0] = h;
        }
    }
    let (a, b) = (*p1.last().unwrap(), *p2.last().unwrap());
    let start = w.mark();
    let attempt = (|| -> Result<bool> {
        if a == mid || b == mid {
            let (pm, po) = if a == mid { (&p1, &p2) } else { (&p2, &p1) };
            let other = *po.last().unwrap();
            w.walk(pm)?;
            w.step(other)?;
            // The center now stands on `other`; close a cycle through the
            // far side of `cyc`.
            let mut z = po.clone();
            z.extend(&arc(cyc, other, mid, mid)[1..]);
            z.extend(pm[1..pm.len() - 1].iter().rev());
            w.slide_until(&z, |w| holds(w, cyc, persons))
        } else {
            let mut z = p1.clone();
            z.push(mid);
            z.push(b);
            z.extend(p2[1..p2.len() - 1].iter().rev());
            let mut c2 = p1.clone();
            c2.extend(&arc(cyc, a, b, mid)[1..]);
            c2.extend(p2[1..p2.len() - 1].iter().rev());
            Ok(w.slide_until(&z, |w| holds(w, &c2, persons))? && w.slide_until(&c2, |w| holds(w, cyc, persons))?)
        }
    })();
    if matches!(attempt, Ok(true)) {
        return Ok(());
    }
    w.rewind(start);
    let mut allowed = vec![false; n];
    for v in p1.iter().chain(&p2).chain(cyc) {
        allowed[*v] = true;
    }
    if local_search(w, persons, &allowed, |h, t| invariant_at(cyc, h, t), 2_000_000)? {
        Ok(())
    } else {
        Err(Error::internal("could not bring the center onto the cycle"))
    }
}

/// From the invariant on `cur` to the invariant on `next`.
fn advance(w: &mut Walker, cur: &[usize], next: &[usize], persons: &Triple, depth: usize) -> Result<()> {
    if depth > 4 {
        return Err(Error::internal("cycle hop did not converge"));
    }
    if holds(w, next, persons) || w.slide_until(cur, |w| holds(w, next, persons))? {
        return Ok(());
    }
    let shared = edge_set(next);
    let l = cur.len();
    let in_next: Vec<bool> = (0..l).map(|i| shared.contains(&norm((cur[i], cur[(i + 1) % l])))).collect();
    // Longest run of consecutive shared edges, as a vertex path.
    let mut best: Vec<usize> = Vec::new();
    for i in 0..l {
        if !in_next[i] || in_next[(i + l - 1) % l] {
            continue;
        }
        let mut run = vec![cur[i]];
        let mut j = i;
        while in_next[j] && run.len() <= l {
            j = (j + 1) % l;
            run.push(cur[j]);
        }
        if run.len() > best.len() {
            best = run;
        }
    }
    if best.len() >= 3 {
        let run = best;
        let ok = w.slide_until(cur, |w| {
            let tpos = triple_positions(w, persons);
            run.windows(3).any(|win| tpos.iter().all(|v| win.contains(v)))
        })?;
        if !ok {
            return Err(Error::internal("could not park the triple on the shared path"));
        }
        return board(w, next, persons);
    }
    // Only isolated shared edges: detour through an ear of `next`. The
    // detour must have room for the triple and the center.
    let via = (0..l).filter(|&i| in_next[i]).map(|i| detour(cur, next, i)).find(|v| v.len() >= 4);
    if let Some(via) = via {
        advance(w, cur, &via, persons, depth + 1)?;
        return advance(w, &via, next, persons, depth + 1);
    }
    let mut allowed = vec![false; w.y.n()];
    for &v in cur.iter().chain(next) {
        allowed[v] = true;
    }
    if local_search(w, persons, &allowed, |h, t| invariant_at(next, h, t), 2_000_000)? {
        Ok(())
    } else {
        Err(Error::internal("no way from one cycle to the next"))
    }
}

/// The cycle made of an ear of `next` leaving `cur` at the shared edge
/// `cur[i] cur[i+1]` and the arc of `cur` that closes it.
fn detour(cur: &[usize], next: &[usize], i: usize) -> Vec<usize> {
    let l = cur.len();
    let (a, b) = (cur[i], cur[(i + 1) % l]);
    let ear = arc(next, b, a, a);
    let stop = ear[1..].iter().position(|v| cur.contains(v)).expect("ear returns to the cycle") + 1;
    let ear = &ear[..=stop];
    let c = ear[stop];
    if c == a {
        let mut f = arc(cur, b, a, a);
        f.extend(ear[1..stop].iter().rev());
        f
    } else {
        let back = arc(cur, c, a, b);
        let back = if back.contains(&b) { arc(cur, c, a, back[1]) } else { back };
        let mut e = ear.to_vec();
        e.extend(&back[1..]);
        e
    }
}

/// Moves the people `persons`, who stand on a path of two edges, onto the
/// positions `slots` (in some order) with the center ending on `pivot`.
/// `d` is a cycle with `slots` consecutive on it and `pivot` elsewhere on it.
pub fn transport(w: &mut Walker, persons: &Triple, d: &[usize], slots: &Triple, pivot: usize) -> Result<()> {
    if persons.contains(&CENTER) {
        return Err(Error::precondition("the center cannot be part of the triple"));
    }
    let tpos = triple_positions(w, persons);
    if !(0..3).any(|m| w.y.has_edge(tpos[m], tpos[(m + 1) % 3]) && w.y.has_edge(tpos[m], tpos[(m + 2) % 3])) {
        return Err(Error::precondition("triple must stand on a path of two edges"));
    }
    let done = |w: &Walker| {
        let mut t = triple_positions(w, persons);
        t.sort_unstable();
        let mut s = *slots;
        s.sort_unstable();
        t == s && w.hole() == pivot
    };
    if done(w) {
        return Ok(());
    }
    let start = w.mark();
    let chain = (|| -> Result<bool> {
        let c1 = if run_of(d, &tpos).is_some() { d.to_vec() } else { first_cycle(w.y, &tpos)? };
        board(w, &c1, persons)?;
        if c1 != d {
            let sd = edge_set(d);
            if !cycle_edges(&c1).any(|e| sd.contains(&norm(e))) {
                let c2 = bridge_cycle(w.y, &c1, d)?;
                advance(w, &c1, &c2, persons, 0)?;
                advance(w, &c2, d, persons, 0)?;
            } else {
                advance(w, &c1, d, persons, 0)?;
            }
        }
        w.slide_until(d, done)
    })();
    if matches!(chain, Ok(true)) {
        return Ok(());
    }
    w.rewind(start);
    let slots = *slots;
    let allowed = vec![true; w.y.n()];
    let found = local_search(
        w,
        persons,
        &allowed,
        |h, t| {
            let mut t = *t;
            t.sort_unstable();
            let mut s = slots;
            s.sort_unstable();
            h == pivot && t == s
        },
        4_000_000,
    )?;
    if found {
        Ok(())
    } else {
        Err(Error::internal(format!("transport failed: {:?}", chain.err())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Configuration;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_biconnected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
        loop {
            let p = rng.gen_range(0.3..0.8);
            let edges: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
            let g = Graph::new(n, edges).unwrap();
            if g.is_biconnected() && !g.is_cycle_graph() {
                return g;
            }
        }
    }

    /// A random two-edge path avoiding `hole`, as (end, middle, end).
    fn random_path(rng: &mut ChaCha8Rng, y: &Graph, hole: usize) -> Option<Triple> {
        let mut mids: Vec<usize> = (0..y.n()).filter(|&v| v != hole).collect();
        mids.shuffle(rng);
        for m in mids {
            let nb: Vec<usize> = y.neighbors(m).iter().copied().filter(|&v| v != hole).collect();
            if nb.len() >= 2 {
                let pick: Vec<usize> = nb.choose_multiple(rng, 2).copied().collect();
                return Some([pick[0], m, pick[1]]);
            }
        }
        None
    }

    #[test]
    fn random_transports_land_on_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..1000 {
            let n = rng.gen_range(4..=8);
            let y = random_biconnected(&mut rng, n);
            let mut place: Vec<usize> = (0..n).collect();
            place.shuffle(&mut rng);
            let c = Configuration::new(place).unwrap();
            let mut w = Walker::new(&y, &c);
            let Some(src) = random_path(&mut rng, &y, w.hole()) else { continue };
            let persons = src.map(|v| w.occupant(v));
            // Any cycle with a consecutive triple and a fourth vertex.
            let d = first_cycle(&y, &random_path(&mut rng, &y, usize::MAX).unwrap()).unwrap();
            let slots = [d[0], d[1], d[2]];
            let pivot = d[3 % d.len()];
            transport(&mut w, &persons, &d, &slots, pivot).unwrap_or_else(|e| panic!("trial {trial}: {e}"));
            let mut got = persons.map(|p| w.position(p));
            got.sort_unstable();
            let mut want = slots;
            want.sort_unstable();
            assert_eq!(got, want, "trial {trial}");
            assert_eq!(w.hole(), pivot);
            assert!(w.moves().len() <= 4 * n * n + 20, "trial {trial}: {} moves", w.moves().len());
        }
    }
}
