//! Three-cycles, transpositions and double transpositions of occupants,
//! each built from one θ rotation moved into place by a transport.

use std::collections::VecDeque;

use super::theta::{theta_rotate, RotationPlan};
use super::transport::{first_cycle, transport};
use super::walk::Walker;
use crate::config::{Configuration, Move};
use crate::error::{Error, Result};
use crate::graph::{Graph, ThetaFrame};

/// A rotation site in a biconnected host that is not a cycle. Built once
/// per host and shared by every gadget call.
#[derive(Clone, Debug)]
pub struct Gadgets {
    pub frame: ThetaFrame,
    pub plan: RotationPlan,
}

impl Gadgets {
    /// Bipartite hosts take the first θ subgraph; the rest need one with an
    /// odd cycle that is not θ(1,2,2).
    pub fn new(y: &Graph) -> Result<Self> {
        if !y.is_biconnected() || y.is_cycle_graph() {
            return Err(Error::precondition("gadgets need a biconnected host that is not a cycle"));
        }
        let frame = y.find_theta_subgraph(!y.is_bipartite())?;
        let plan = theta_rotate(&frame)?;
        Ok(Gadgets { frame, plan })
    }

    /// Whether transpositions are available: the rotated positions sit on
    /// an odd cycle through the pivot.
    pub fn has_odd_site(&self) -> bool {
        self.plan.host_cycle.len() % 2 == 1
    }

    fn rotate(&self, w: &mut Walker, times: usize) -> Result<()> {
        for _ in 0..times {
            w.replay(&self.plan.moves)?;
        }
        Ok(())
    }

    /// Sends the occupant of `a` to `b`, that of `b` to `c` and that of `c`
    /// to `a`. `a-b-c` need not be in order, but the three positions must
    /// form a path of two edges avoiding the center.
    pub fn three_cycle(&self, w: &mut Walker, a: usize, b: usize, c: usize) -> Result<()> {
        let hole = w.hole();
        if [a, b, c].contains(&hole) {
            return Err(Error::precondition("three-cycle positions must avoid the center"));
        }
        let want = [(b, w.occupant(a)), (c, w.occupant(b)), (a, w.occupant(c))];
        let persons = [w.occupant(a), w.occupant(b), w.occupant(c)];
        let m0 = w.mark();
        transport(w, &persons, &self.plan.host_cycle, &self.plan.cycle, self.plan.pivot)?;
        let m1 = w.mark();
        for times in [1, 2] {
            self.rotate(w, times)?;
            w.append_inverse(m0, m1);
            if want.iter().all(|&(v, p)| w.occupant(v) == p) {
                return Ok(());
            }
            w.rewind(m1);
        }
        Err(Error::internal("rotation did not cycle the triple"))
    }

    /// Swaps the occupants of the adjacent positions `a` and `b`. Needs an
    /// odd rotation site.
    pub fn transposition(&self, w: &mut Walker, a: usize, b: usize) -> Result<()> {
        if !w.y.has_edge(a, b) {
            return Err(Error::precondition("transposition needs an edge"));
        }
        let hole = w.hole();
        if hole == a || hole == b {
            return w.step(if hole == a { b } else { a });
        }
        if !self.has_odd_site() {
            return self.triangle_transposition(w, a, b);
        }
        let third = |w: &Walker| {
            let h = w.hole();
            let beyond_b = w.y.neighbors(b).iter().find(|&&z| z != a && z != h).map(|&z| [a, b, z]);
            beyond_b.or_else(|| w.y.neighbors(a).iter().find(|&&z| z != b && z != h).map(|&z| [z, a, b]))
        };
        // a and b only see each other and the center: step the center aside
        // so its old vertex becomes the third position.
        let mut aside = None;
        if third(w).is_none() {
            let s = *w.y.neighbors(hole).iter().find(|&&v| v != a && v != b).ok_or_else(|| {
                Error::precondition("transposition needs a fourth vertex next to the center")
            })?;
            w.step(s)?;
            aside = Some(hole);
        }
        let path = third(w).ok_or_else(|| Error::internal("no third position for the transposition"))?;
        let (pa, pb) = (w.occupant(a), w.occupant(b));
        let before = w.occupants().to_vec();
        self.swap_on_site(w, pa, pb, path.map(|v| w.occupant(v)))?;
        let ok = (0..before.len()).all(|v| {
            let want = if v == a { pb } else if v == b { pa } else { before[v] };
            w.occupant(v) == want
        });
        if !ok {
            return Err(Error::internal("transposition gadget left a wrong configuration"));
        }
        if let Some(h) = aside {
            w.step(h)?;
        }
        Ok(())
    }

    /// Transposition for hosts whose odd cycles are all too short for a
    /// site: the center loops once round a triangle, which swaps the other
    /// two corners, and an even fix-up moves everyone else back.
    fn triangle_transposition(&self, w: &mut Walker, a: usize, b: usize) -> Result<()> {
        let y = w.y;
        let hole = w.hole();
        let mut target = w.occupants().to_vec();
        target.swap(a, b);
        let triangles = y.edges().flat_map(|(u, v)| {
            y.neighbors(u).iter().filter(move |&&z| y.has_edge(v, z)).map(move |&z| (u, v, z))
        });
        let approach = triangles
            .filter(|&(u, v, _)| u != hole && v != hole)
            .find_map(|(u, v, z)| y.bfs_path_where(hole, |x| x == z, |x| x == u || x == v).map(|p| (u, v, p)))
            .ok_or_else(|| Error::precondition("no triangle for the transposition"))?;
        let (u, v, path) = approach;
        let m = w.mark();
        w.walk(&path)?;
        let z = w.hole();
        w.steps(&[u, v, z])?;
        w.append_inverse(m, m + path.len() - 1);
        let off: Vec<usize> = (0..y.n()).filter(|&p| w.occupant(p) != target[p]).collect();
        match off.len() {
            0 => Ok(()),
            3 => {
                let next = |p: usize| off.iter().copied().find(|&q| target[q] == w.occupant(p)).expect("three positions");
                let p1 = next(off[0]);
                let p2 = next(p1);
                self.three_cycle(w, off[0], p1, p2)
            }
            4 => self.double_transposition(w, (a, b), (u, v)),
            _ => Err(Error::internal("triangle swap left an odd difference")),
        }
    }

    /// Carries `triple` (containing `pa` and `pb`) to the site, swaps `pa`
    /// and `pb` by jumping `pa` two places round the odd cycle `k/2` times,
    /// and carries everyone back.
    fn swap_on_site(&self, w: &mut Walker, pa: usize, pb: usize, triple: [usize; 3]) -> Result<()> {
        let plan = &self.plan;
        let m0 = w.mark();
        transport(w, &triple, &plan.host_cycle, &plan.cycle, plan.pivot)?;
        let m1 = w.mark();
        // The cycle from the pivot, and the three positions in its order.
        let h = &plan.host_cycle;
        let at = h.iter().position(|&v| v == plan.pivot).expect("pivot on the host cycle");
        let cyc: Vec<usize> = (0..h.len()).map(|d| h[(at + d) % h.len()]).collect();
        let mut site: Vec<usize> = cyc.iter().copied().filter(|v| plan.cycle.contains(v)).collect();
        if site.len() != 3 {
            return Err(Error::internal("rotation site is not on its host cycle"));
        }
        // Put pb in the middle of the site.
        let mut e = 0;
        while w.occupant(site[1]) != pb {
            if e == 2 {
                return Err(Error::internal("rotation never brings the second person to the middle"));
            }
            self.rotate(w, 1)?;
            e += 1;
        }
        let forward = w.occupant(site[0]) == pa;
        if !forward {
            site.reverse();
        }
        let setup: Vec<usize> = cyc.iter().map(|&v| w.occupant(v)).collect();
        // Power of the rotation taking site[0] to site[2].
        let idx = |v: usize| plan.cycle.iter().position(|&x| x == v).expect("site position");
        let jump = if (idx(site[0]) + 1) % 3 == idx(site[2]) { 1 } else { 2 };
        let l = cyc.len();
        // Two loops move everyone two places towards site[0].
        let loop_path: Vec<usize> = if forward {
            (1..=l).map(|d| cyc[d % l]).collect()
        } else {
            (1..=l).map(|d| cyc[(l - d) % l]).collect()
        };
        for _ in 0..(l - 1) / 2 {
            self.rotate(w, jump)?;
            w.steps(&loop_path)?;
            w.steps(&loop_path)?;
        }
        let target: Vec<usize> = setup
            .iter()
            .map(|&p| if p == pa { pb } else if p == pb { pa } else { p })
            .collect();
        let pivot = plan.pivot;
        let reached = w.slide_until(&cyc, |w| w.hole() == pivot && cyc.iter().zip(&target).all(|(&v, &p)| w.occupant(v) == p))?;
        if !reached {
            return Err(Error::internal("odd-cycle jumps did not swap the pair"));
        }
        self.rotate(w, (3 - e) % 3)?;
        w.append_inverse(m0, m1);
        Ok(())
    }

    /// Swaps the occupants across two vertex-disjoint edges at once, by a
    /// chain of three-cycles along a path joining them.
    pub fn double_transposition(&self, w: &mut Walker, ab: (usize, usize), cd: (usize, usize)) -> Result<()> {
        let (a, b) = ab;
        let (c, d) = cd;
        let hole = w.hole();
        let ends = [a, b, c, d];
        if !w.y.has_edge(a, b) || !w.y.has_edge(c, d) {
            return Err(Error::precondition("double transposition needs two edges"));
        }
        if ends.contains(&hole) || (0..4).any(|i| (i + 1..4).any(|j| ends[i] == ends[j])) {
            return Err(Error::precondition("double transposition needs disjoint edges off the center"));
        }
        let path = link(w.y, [a, b], [c, d], hole)
            .ok_or_else(|| Error::internal("no path between the edges avoiding the center"))?;
        let first = path[0];
        let last = *path.last().expect("nonempty path");
        let mut seq = vec![if first == a { b } else { a }];
        seq.extend(&path);
        seq.push(if last == c { d } else { c });
        for i in 0..seq.len() - 2 {
            self.three_cycle(w, seq[i], seq[i + 2], seq[i + 1])?;
        }
        Ok(())
    }
}

/// Shortest path from `from` to `to` (both sets of two vertices) avoiding
/// `hole`, lowest labels first.
fn link(y: &Graph, from: [usize; 2], to: [usize; 2], hole: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; y.n()];
    let mut queue = VecDeque::new();
    let mut starts = from;
    starts.sort_unstable();
    for s in starts {
        parent[s] = s;
        queue.push_back(s);
    }
    parent[hole] = hole;
    while let Some(v) = queue.pop_front() {
        if to.contains(&v) {
            let mut path = vec![v];
            let mut u = v;
            while parent[u] != u {
                u = parent[u];
                path.push(u);
            }
            path.reverse();
            return Some(path);
        }
        for &x in y.neighbors(v) {
            if parent[x] == usize::MAX {
                parent[x] = v;
                queue.push_back(x);
            }
        }
    }
    None
}

fn run(y: &Graph, c: &Configuration, body: impl FnOnce(&Gadgets, &mut Walker) -> Result<()>) -> Result<Vec<Move>> {
    let g = Gadgets::new(y)?;
    let mut w = Walker::new(y, c);
    body(&g, &mut w)?;
    Ok(w.into_moves())
}

/// Moves that send the occupant of `a` to `b`, of `b` to `cpos` and of
/// `cpos` to `a`, fixing everyone else.
pub fn elementary_3cycle(y: &Graph, c: &Configuration, a: usize, b: usize, cpos: usize) -> Result<Vec<Move>> {
    run(y, c, |g, w| g.three_cycle(w, a, b, cpos))
}

/// Moves that swap the occupants of the adjacent positions `a` and `b`.
pub fn elementary_transposition(y: &Graph, c: &Configuration, a: usize, b: usize) -> Result<Vec<Move>> {
    run(y, c, |g, w| g.transposition(w, a, b))
}

/// Moves that swap the occupants across both edges.
pub fn elementary_double_transposition(
    y: &Graph,
    c: &Configuration,
    ab: (usize, usize),
    cd: (usize, usize),
) -> Result<Vec<Move>> {
    run(y, c, |g, w| g.double_transposition(w, ab, cd))
}

/// Moves that carry the people `persons` (on a path of two edges) onto the
/// positions `target` (also a path of two edges), in some order.
pub fn transport_triple(y: &Graph, c: &Configuration, persons: [usize; 3], target: [usize; 3]) -> Result<Vec<Move>> {
    let cyc = first_cycle(y, &target)?;
    let pivot = *cyc.iter().find(|v| !target.contains(v)).ok_or_else(|| Error::internal("cycle of three"))?;
    let mut w = Walker::new(y, c);
    transport(&mut w, &persons, &cyc, &target, pivot)?;
    Ok(w.into_moves())
}
