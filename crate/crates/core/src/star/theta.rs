//! Three-cycles inside a θ frame, driven only by the center.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use super::walk::{consecutive_on, Walker, CENTER};
use crate::config::{Configuration, Move};
use crate::error::{Error, Result};
use crate::graph::{Family, Graph, PathId, ThetaFrame, ThetaParams};
use crate::oracle::{self, OracleOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RotationCase {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

impl RotationCase {
    pub fn of(t: ThetaParams) -> Result<RotationCase> {
        use RotationCase::*;
        Ok(match (t.i, t.j, t.k) {
            (1, 2, 2) => return Err(Error::UnsupportedInstance("theta(1,2,2) has no rotation".into())),
            (0, 1, 1) => II,
            (0, _, _) => I,
            (1, 1, 1) => III,
            (1, 1, _) => IV,
            (1, 2, _) => V,
            (2, 2, k) if k < 6 => VII,
            (2, 2, _) => VIII,
            _ => VI,
        })
    }

    pub fn label(self) -> &'static str {
        use RotationCase::*;
        match self {
            I => "i",
            II => "ii",
            III => "iii",
            IV => "iv",
            V => "v",
            VI => "vi",
            VII => "vii",
            VIII => "viii",
        }
    }
}

/// A center-only script on a frame that cycles the occupants of `cycle`
/// (the occupant of `cycle[0]` goes to `cycle[1]`, and so on) and returns
/// the center to `pivot`. `host_cycle` is a frame cycle through the three
/// positions, where they sit consecutively, and through the pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationPlan {
    pub case_id: RotationCase,
    pub pivot: usize,
    pub cycle: [usize; 3],
    pub host_cycle: Vec<usize>,
    pub moves: Vec<Move>,
}

impl RotationPlan {
    /// Persons `(x, y, z)` of `c` on the rotated positions; the script moves
    /// `x` to `y`'s place, `y` to `z`'s and `z` to `x`'s.
    pub fn target_cycle(&self, c: &Configuration) -> [usize; 3] {
        self.cycle.map(|v| c.occupant_of(v))
    }
}

/// The vertices the center visits on a type-AB move: out along `a` from
/// `endp1`, back along `b`.
pub fn type_ab_path(frame: &ThetaFrame, a: PathId, b: PathId) -> Vec<usize> {
    let pa = frame.path(a);
    let pb = frame.path(b);
    pa[1..].iter().chain(pb[..pb.len() - 1].iter().rev()).copied().collect()
}

/// Runs a type-AB move on `w`, whose center must be on `endp1`.
pub fn type_ab_move(w: &mut Walker, frame: &ThetaFrame, a: PathId, b: PathId) -> Result<()> {
    if w.hole() != frame.endp1 {
        return Err(Error::precondition("type-AB move needs the center on endp1"));
    }
    if a == b {
        return Err(Error::precondition("type-AB move needs two different paths"));
    }
    w.steps(&type_ab_path(frame, a, b))
}

/// Moves the center along `path` from wherever it is.
pub fn move_s_along_path(y: &Graph, c: &Configuration, path: &[usize]) -> Result<Vec<Move>> {
    let mut w = Walker::new(y, c);
    w.walk(path)?;
    Ok(w.into_moves())
}

use PathId::{P, Q, R};

fn ab_script(frame: &ThetaFrame, pairs: &[(PathId, PathId)]) -> Vec<usize> {
    pairs.iter().flat_map(|&(a, b)| type_ab_path(frame, a, b)).collect()
}

fn repeat(pairs: &[(PathId, PathId)], times: usize) -> Vec<(PathId, PathId)> {
    pairs.iter().copied().cycle().take(pairs.len() * times).collect()
}

/// Builds the rotation for `frame`. The script is simulated on an identity
/// configuration and rejected unless exactly three positions change and the
/// center is back on the pivot.
pub fn theta_rotate(frame: &ThetaFrame) -> Result<RotationPlan> {
    let t = frame.params();
    let case_id = RotationCase::of(t)?;
    let host = frame.host.clone();
    let (e1, e2) = (frame.endp1, frame.endp2);
    let mut pivot = e1;
    let steps: Vec<usize> = match case_id {
        RotationCase::I => ab_script(frame, &[(Q, R), (P, R), (P, Q), (R, P), (Q, P), (R, Q)]),
        RotationCase::II => {
            pivot = frame.r[1];
            vec![e2, frame.q[1], e1, pivot]
        }
        RotationCase::III => {
            pivot = frame.q[1];
            vec![e2, frame.p[1], e1, pivot]
        }
        RotationCase::IV => ab_script(frame, &[(P, R), (Q, R), (P, Q), (R, Q), (R, P)]),
        RotationCase::V => window_word(frame, &repeat(&[(Q, P), (R, P)], 3), 4)?,
        RotationCase::VI => {
            let s1 = [(Q, R), (Q, R), (P, R), (P, Q), (R, Q), (Q, P)];
            let switch = [(Q, P), (Q, R), (P, Q), (R, Q), (R, P), (R, Q), (P, R), (Q, R)];
            let mut script = ab_script(frame, &s1);
            script.extend(ab_script(frame, &repeat(&switch, 4)));
            let inverse: Vec<(PathId, PathId)> = s1.iter().rev().map(|&(a, b)| (b, a)).collect();
            script.extend(ab_script(frame, &inverse));
            script
        }
        RotationCase::VII => return local_rotation(frame, case_id),
        RotationCase::VIII => window_word(frame, &repeat(&[(Q, P), (R, P), (R, P)], 3), 7)?,
    };
    let start = identity_with_center(host.n(), pivot)?;
    let mut w = Walker::new(&host, &start);
    w.steps(&steps)?;
    let plan = finish(frame, case_id, pivot, &start, w)?;
    if frame.has_odd_cycle() && plan.host_cycle.len() % 2 == 0 {
        if let Some(moved) = odd_site(frame, &plan, &start)? {
            return Ok(moved);
        }
    }
    Ok(plan)
}

/// Conjugates `plan` by loops of the center around its host cycle until the
/// three positions sit consecutively on an odd frame cycle through the
/// pivot. `None` when no shift does it (θ(0,1,1) only).
fn odd_site(frame: &ThetaFrame, plan: &RotationPlan, start: &Configuration) -> Result<Option<RotationPlan>> {
    let odd: Vec<Vec<usize>> = [(P, Q), (P, R), (Q, R)]
        .into_iter()
        .map(|(x, y)| frame.cycle(x, y))
        .filter(|c| c.len() % 2 == 1 && c.contains(&plan.pivot) && c.len() >= 5)
        .collect();
    let h = &plan.host_cycle;
    let at = h.iter().position(|&v| v == plan.pivot).expect("pivot on host cycle");
    let l = h.len();
    let fwd: Vec<usize> = (1..=l).map(|d| h[(at + d) % l]).collect();
    let back = inverse_script(plan.pivot, &fwd);
    let steps: Vec<usize> = plan.moves.iter().map(|m| m.b).collect();
    for m in 1..l {
        for (there, home) in [(&fwd, &back), (&back, &fwd)] {
            let mut word: Vec<usize> = there.repeat(m);
            word.extend_from_slice(&steps);
            word.extend(home.repeat(m));
            let mut w = Walker::new(&frame.host, start);
            w.steps(&word)?;
            let changed: Vec<usize> = (0..start.n()).filter(|&v| w.occupant(v) != start.occupant_of(v)).collect();
            if odd.iter().any(|c| consecutive_on(c, &changed)) {
                return finish(frame, plan.case_id, plan.pivot, start, w).map(Some);
            }
        }
    }
    Ok(None)
}

/// Identity occupants, except that the center sits on `pivot`.
fn identity_with_center(n: usize, pivot: usize) -> Result<Configuration> {
    let mut occ: Vec<usize> = (0..n).collect();
    occ.swap(0, pivot);
    Configuration::from_occupants(occ)
}

/// Slides the center around `cyc` until it is back on `pivot`, nothing off
/// the cycle has moved and exactly `changed` cycle positions differ from
/// `start`. Returns the full step list including `steps`.
fn settle(host: &Graph, start: &Configuration, pivot: usize, steps: &[usize], cyc: &[usize], changed: usize) -> Result<Option<Vec<usize>>> {
    let mut w = Walker::new(host, start);
    w.steps(steps)?;
    let ok = w.slide_until(cyc, |w| {
        w.hole() == pivot
            && (0..host.n()).all(|v| cyc.contains(&v) || w.occupant(v) == start.occupant_of(v))
            && cyc.iter().filter(|&&v| w.occupant(v) != start.occupant_of(v)).count() == changed
    })?;
    Ok(ok.then(|| w.moves().iter().map(|m| m.b).collect()))
}

fn inverse_script(pivot: usize, steps: &[usize]) -> Vec<usize> {
    let mut path = vec![pivot];
    path.extend_from_slice(steps);
    path.iter().rev().skip(1).copied().collect()
}

/// Cases (v) and (viii). Operation 1 followed by a slide moves `window`
/// consecutive people of the P-R cycle one place round; so does its copy
/// shifted by a loop of the center. A four-letter word in these two and
/// their inverses leaves a three-cycle on consecutive positions, checked by
/// simulation.
fn window_word(frame: &ThetaFrame, op1: &[(PathId, PathId)], window: usize) -> Result<Vec<usize>> {
    let host = &frame.host;
    let e1 = frame.endp1;
    let cyc = frame.cycle(P, R);
    let start = identity_with_center(host.n(), e1)?;
    let op1 = ab_script(frame, op1);
    let f = settle(host, &start, e1, &op1, &cyc, window)?
        .ok_or_else(|| Error::internal(format!("operation 1 does not settle into a {window}-cycle")))?;
    let fwd: Vec<usize> = cyc[1..].iter().chain([&e1]).copied().collect();
    let back = inverse_script(e1, &fwd);
    let g: Vec<usize> = fwd.iter().chain(&f).chain(&back).copied().collect();
    let letters = [f.clone(), inverse_script(e1, &f), g.clone(), inverse_script(e1, &g)];
    for word in 0..letters.len().pow(4) {
        let mut steps = Vec::new();
        let mut rest = word;
        for _ in 0..4 {
            steps.extend_from_slice(&letters[rest % 4]);
            rest /= 4;
        }
        let mut w = Walker::new(host, &start);
        w.steps(&steps)?;
        let changed: Vec<usize> = (0..host.n()).filter(|&v| w.occupant(v) != start.occupant_of(v)).collect();
        if w.hole() == e1 && changed.len() == 3 && consecutive_on(&cyc, &changed) {
            return Ok(steps);
        }
    }
    Err(Error::internal("no window word gives a consecutive three-cycle"))
}

fn finish(frame: &ThetaFrame, case_id: RotationCase, pivot: usize, start: &Configuration, w: Walker) -> Result<RotationPlan> {
    let changed: Vec<usize> = (0..start.n()).filter(|&v| w.occupant(v) != start.occupant_of(v)).collect();
    if w.hole() != pivot || changed.len() != 3 {
        return Err(Error::internal(format!(
            "rotation case {} moved {:?} and left the center at {}",
            case_id.label(),
            changed,
            w.hole()
        )));
    }
    let a = changed[0];
    let b = w.position(start.occupant_of(a));
    let c = w.position(start.occupant_of(b));
    let cycle = [a, b, c];
    let mut cycles: Vec<Vec<usize>> = [(P, Q), (P, R), (Q, R)].into_iter().map(|(x, y)| frame.cycle(x, y)).collect();
    cycles.sort_by_key(|c| c.len() % 2 == 0);
    let host_cycle = cycles
        .into_iter()
        .find(|cyc| cyc.contains(&pivot) && consecutive_on(cyc, &cycle))
        .ok_or_else(|| Error::internal("rotated positions are not consecutive on a frame cycle"))?;
    Ok(RotationPlan { case_id, pivot, cycle, host_cycle, moves: w.into_moves() })
}

type LocalCache = Mutex<HashMap<ThetaParams, Vec<Move>>>;

fn local_cache() -> &'static LocalCache {
    static CACHE: OnceLock<LocalCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Case (vii): a shortest script on the canonical θ(2,2,k) found by
/// bidirectional search, cycling `(r_{k-1}, r_k, endp2)`, then carried over
/// to `frame` by matching vertex order.
fn local_rotation(frame: &ThetaFrame, case_id: RotationCase) -> Result<RotationPlan> {
    let t = frame.params();
    let canon = t.canonical_frame();
    let script = {
        let mut cache = local_cache().lock().map_err(|_| Error::internal("rotation cache poisoned"))?;
        match cache.get(&t) {
            Some(s) => s.clone(),
            None => {
                let s = search_local(&canon)?;
                cache.insert(t, s.clone());
                s
            }
        }
    };
    let map = frame.vertices();
    let moves: Vec<Move> = script.iter().map(|m| Move::new(map[m.a], map[m.b])).collect();
    let host = frame.host.clone();
    let start = identity_with_center(host.n(), frame.endp1)?;
    let mut w = Walker::new(&host, &start);
    w.replay(&moves)?;
    finish(frame, case_id, frame.endp1, &start, w)
}

fn search_local(canon: &ThetaFrame) -> Result<Vec<Move>> {
    let n = canon.host.n();
    let x = Family::Star.build(n)?;
    let from = Configuration::identity(n);
    let r = &canon.r;
    let (a, b, c) = (r[r.len() - 3], r[r.len() - 2], canon.endp2);
    let mut occ = from.occupants().to_vec();
    let (pa, pb, pc) = (occ[a], occ[b], occ[c]);
    occ[b] = pa;
    occ[c] = pb;
    occ[a] = pc;
    debug_assert_eq!(occ[canon.endp1], CENTER);
    let to = Configuration::from_occupants(occ)?;
    oracle::shortest_path(&x, &canon.host, &from, &to, &OracleOptions::default())?
        .ok_or_else(|| Error::internal("canonical theta rotation unreachable"))
}
