use crate::config::{Configuration, Move};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// The star center is always person 0.
pub const CENTER: usize = 0;

/// Live configuration for `FS(Star_n, Y)` that records every swap of the
/// center with a neighbour.
#[derive(Clone, Debug)]
pub struct Walker<'a> {
    pub y: &'a Graph,
    occ: Vec<usize>,
    pos: Vec<usize>,
    moves: Vec<Move>,
}

impl<'a> Walker<'a> {
    pub fn new(y: &'a Graph, c: &Configuration) -> Self {
        Walker { y, occ: c.occupants().to_vec(), pos: c.placement().to_vec(), moves: Vec::new() }
    }

    /// Everybody on their own label.
    pub fn identity(y: &'a Graph) -> Self {
        Walker::new(y, &Configuration::identity(y.n()))
    }

    pub fn hole(&self) -> usize {
        self.pos[CENTER]
    }

    pub fn occupant(&self, v: usize) -> usize {
        self.occ[v]
    }

    pub fn position(&self, person: usize) -> usize {
        self.pos[person]
    }

    pub fn occupants(&self) -> &[usize] {
        &self.occ
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn into_moves(self) -> Vec<Move> {
        self.moves
    }

    pub fn configuration(&self) -> Configuration {
        Configuration::new(self.pos.clone()).expect("walker keeps a bijection")
    }

    fn exchange(&mut self, a: usize, b: usize) {
        let (pa, pb) = (self.occ[a], self.occ[b]);
        self.occ.swap(a, b);
        self.pos[pa] = b;
        self.pos[pb] = a;
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.exchange(a, b);
        self.moves.push(Move::new(a, b));
    }

    pub fn step(&mut self, to: usize) -> Result<()> {
        let h = self.hole();
        if !self.y.has_edge(h, to) {
            return Err(Error::internal(format!("center at {h} cannot step to {to}")));
        }
        self.swap(h, to);
        Ok(())
    }

    /// Moves the center along `path`, which must start at its position.
    pub fn walk(&mut self, path: &[usize]) -> Result<()> {
        match path.first() {
            Some(&v) if v == self.hole() => {}
            Some(&v) => return Err(Error::internal(format!("walk starts at {v}, center is at {}", self.hole()))),
            None => return Ok(()),
        }
        for &v in &path[1..] {
            self.step(v)?;
        }
        Ok(())
    }

    /// Steps through `targets` in order, each a neighbour of the previous.
    pub fn steps(&mut self, targets: &[usize]) -> Result<()> {
        for &v in targets {
            self.step(v)?;
        }
        Ok(())
    }

    pub fn mark(&self) -> usize {
        self.moves.len()
    }

    /// Replays the moves made since `mark` backwards, undoing them.
    pub fn undo_since(&mut self, mark: usize) {
        self.append_inverse(mark, self.moves.len());
    }

    /// Takes back the moves made since `mark` and forgets them.
    pub fn rewind(&mut self, mark: usize) {
        while self.moves.len() > mark {
            let m = self.moves.pop().expect("length checked");
            self.exchange(m.a, m.b);
        }
    }

    /// Appends the moves `mark..end` in reverse order, undoing their effect
    /// if nothing happened in between.
    pub fn append_inverse(&mut self, mark: usize, end: usize) {
        let tail: Vec<Move> = self.moves[mark..end].iter().rev().copied().collect();
        for m in tail {
            self.swap(m.a, m.b);
        }
    }

    /// Replays `moves` as given.
    pub fn replay(&mut self, moves: &[Move]) -> Result<()> {
        for m in moves {
            let h = self.hole();
            let to = if m.a == h {
                m.b
            } else if m.b == h {
                m.a
            } else {
                return Err(Error::internal("scripted move does not involve the center"));
            };
            self.step(to)?;
        }
        Ok(())
    }

    /// Walks the center around `cycle` (which must contain it) until `done`
    /// holds, in whichever direction gets there first. Every state of the
    /// cycle is reached within `L(L-1)` steps, so `None` means never.
    pub fn slide_until(&mut self, cycle: &[usize], done: impl Fn(&Walker) -> bool) -> Result<bool> {
        let l = cycle.len();
        let Some(start) = cycle.iter().position(|&v| v == self.hole()) else {
            return Err(Error::internal("slide on a cycle that misses the center"));
        };
        if done(self) {
            return Ok(true);
        }
        let limit = l * l;
        let mut best: Option<(usize, isize)> = None;
        for dir in [1isize, -1] {
            let mut probe = Walker { y: self.y, occ: self.occ.clone(), pos: self.pos.clone(), moves: Vec::new() };
            let mut i = start as isize;
            for steps in 1..=limit {
                if best.is_some_and(|(b, _)| steps >= b) {
                    break;
                }
                i = (i + dir).rem_euclid(l as isize);
                probe.swap(probe.hole(), cycle[i as usize]);
                if done(&probe) {
                    best = Some((steps, dir));
                    break;
                }
            }
        }
        let Some((steps, dir)) = best else { return Ok(false) };
        let mut i = start as isize;
        for _ in 0..steps {
            i = (i + dir).rem_euclid(l as isize);
            self.step(cycle[i as usize])?;
        }
        Ok(true)
    }
}

/// Consecutive vertices of `cycle` (cyclically) that are all in `set`, as
/// a run of exactly `set.len()` vertices.
pub fn consecutive_on(cycle: &[usize], set: &[usize]) -> bool {
    let l = cycle.len();
    if set.is_empty() || set.len() > l {
        return false;
    }
    (0..l).any(|i| (0..set.len()).all(|d| set.contains(&cycle[(i + d) % l])))
}

/// Whether the people `persons` sit on consecutive vertices of `cycle`
/// once the center's vertex is skipped.
pub fn block_on_cycle(w: &Walker, cycle: &[usize], persons: &[usize]) -> bool {
    let order: Vec<usize> = cycle.iter().map(|&v| w.occupant(v)).filter(|&p| p != CENTER).collect();
    consecutive_on(&order, persons)
}
