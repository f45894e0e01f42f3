//! Configurations, friendly swaps and move sequences.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Adjacency, Error, Result};
use crate::graph::Graph;

/// A bijection from people (vertices of X) to positions (vertices of Y).
/// `placement[x]` is the position of person `x`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Configuration {
    placement: Vec<usize>,
    occupant: Vec<usize>,
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration{:?}", self.placement)
    }
}

impl Configuration {
    pub fn new(placement: Vec<usize>) -> Result<Self> {
        let n = placement.len();
        if n == 0 {
            return Err(Error::InvalidConfiguration("empty placement".into()));
        }
        let mut occupant = vec![usize::MAX; n];
        for (person, &pos) in placement.iter().enumerate() {
            if pos >= n {
                return Err(Error::InvalidConfiguration(format!("position {pos} out of range")));
            }
            if occupant[pos] != usize::MAX {
                return Err(Error::InvalidConfiguration(format!("position {pos} used twice")));
            }
            occupant[pos] = person;
        }
        Ok(Configuration { placement, occupant })
    }

    pub fn identity(n: usize) -> Self {
        Configuration { placement: (0..n).collect(), occupant: (0..n).collect() }
    }

    /// Person `x` at position `n - 1 - x`.
    pub fn reversal(n: usize) -> Self {
        let p: Vec<usize> = (0..n).rev().collect();
        Configuration { placement: p.clone(), occupant: p }
    }

    /// Builds a configuration from its occupant list: `occupant[y]` is the
    /// person standing on position `y`.
    pub fn from_occupants(occupant: Vec<usize>) -> Result<Self> {
        Ok(Configuration::new(occupant)?.inverse())
    }

    pub fn n(&self) -> usize {
        self.placement.len()
    }

    #[inline]
    pub fn position_of(&self, person: usize) -> usize {
        self.placement[person]
    }

    #[inline]
    pub fn occupant_of(&self, position: usize) -> usize {
        self.occupant[position]
    }

    pub fn placement(&self) -> &[usize] {
        &self.placement
    }

    pub fn occupants(&self) -> &[usize] {
        &self.occupant
    }

    /// The inverse bijection, read as a placement of positions onto people.
    pub fn inverse(&self) -> Configuration {
        Configuration { placement: self.occupant.clone(), occupant: self.placement.clone() }
    }

    /// Exchanges the occupants of two positions with no legality check.
    #[inline]
    pub fn swap_positions(&mut self, a: usize, b: usize) {
        let (pa, pb) = (self.occupant[a], self.occupant[b]);
        self.occupant.swap(a, b);
        self.placement[pa] = b;
        self.placement[pb] = a;
    }

    /// Why `m` is not a friendly swap here, if it is not.
    pub fn check_move(&self, x: &Graph, y: &Graph, m: Move) -> Result<()> {
        if !y.has_edge(m.a, m.b) {
            return Err(Error::IllegalMove { a: m.a, b: m.b, failed: Adjacency::Positions });
        }
        if !x.has_edge(self.occupant[m.a], self.occupant[m.b]) {
            return Err(Error::IllegalMove { a: m.a, b: m.b, failed: Adjacency::Persons });
        }
        Ok(())
    }

    /// Parity of the permutation formed by everyone except `ignore`, with
    /// positions compared by label.
    pub fn parity(&self, ignore: Option<usize>) -> Parity {
        let seq: Vec<usize> = (0..self.n())
            .filter(|&p| Some(p) != ignore)
            .map(|p| self.placement[p])
            .collect();
        if count_inversions(&seq) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Pairs `i > j` with `placement[i] < placement[j]`.
    pub fn inversions(&self) -> u64 {
        count_inversions(&self.placement)
    }

    /// Restricts to the people standing on `positions` (which must be closed
    /// under occupancy: every person listed stands on one of them), relabeled
    /// through the given maps.
    pub fn restrict(&self, persons: &[usize], positions: &[usize]) -> Result<Configuration> {
        let mut local_pos = std::collections::HashMap::new();
        for (i, &y) in positions.iter().enumerate() {
            local_pos.insert(y, i);
        }
        let placement = persons
            .iter()
            .map(|&x| {
                local_pos
                    .get(&self.placement[x])
                    .copied()
                    .ok_or_else(|| Error::InvalidConfiguration(format!("person {x} is outside the region")))
            })
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(placement)
    }
}

impl TryFrom<Vec<usize>> for Configuration {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Configuration::new(v)
    }
}

impl From<Configuration> for Vec<usize> {
    fn from(c: Configuration) -> Self {
        c.placement
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.placement.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let line = s
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .ok_or_else(|| Error::Parse("empty configuration".into()))?;
        let placement = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(placement)
    }
}

fn count_inversions(seq: &[usize]) -> u64 {
    // Fenwick tree over values; seq is a permutation of a subset of 0..max.
    let size = seq.iter().max().map_or(0, |m| m + 1);
    let mut tree = vec![0u64; size + 1];
    let mut inv = 0u64;
    for (seen, &v) in seq.iter().enumerate() {
        let mut le = 0;
        let mut i = v + 1;
        while i > 0 {
            le += tree[i];
            i &= i - 1;
        }
        inv += seen as u64 - le;
        let mut i = v + 1;
        while i <= size {
            tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }
    inv
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A friendly swap, recorded as the two Y-positions whose occupants trade.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub a: usize,
    pub b: usize,
}

impl Move {
    pub fn new(a: usize, b: usize) -> Self {
        Move { a, b }
    }

    /// Whether two moves share a position.
    pub fn touches(&self, other: &Move) -> bool {
        self.a == other.a || self.a == other.b || self.b == other.a || self.b == other.b
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSequence {
    pub start: Configuration,
    pub moves: Vec<Move>,
}

impl MoveSequence {
    pub fn new(start: Configuration, moves: Vec<Move>) -> Self {
        MoveSequence { start, moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

/// Applies one friendly swap, rejecting it when either adjacency fails.
pub fn apply_move(x: &Graph, y: &Graph, c: &Configuration, m: Move) -> Result<Configuration> {
    c.check_move(x, y, m)?;
    let mut next = c.clone();
    next.swap_positions(m.a, m.b);
    Ok(next)
}

/// Replays `moves` from `start`; the error names the first illegal move.
pub fn replay_moves(x: &Graph, y: &Graph, start: &Configuration, moves: &[Move]) -> Result<Configuration> {
    if x.n() != start.n() || y.n() != start.n() {
        return Err(Error::InvalidConfiguration(format!(
            "configuration has {} people but X has {} and Y has {} vertices",
            start.n(),
            x.n(),
            y.n()
        )));
    }
    let mut c = start.clone();
    for (index, &m) in moves.iter().enumerate() {
        c.check_move(x, y, m)
            .map_err(|e| Error::IllegalMoveAt { index, source: Box::new(e) })?;
        c.swap_positions(m.a, m.b);
    }
    Ok(c)
}

pub fn replay(x: &Graph, y: &Graph, seq: &MoveSequence) -> Result<Configuration> {
    replay_moves(x, y, &seq.start, &seq.moves)
}

/// The same instance seen from the other side: people and positions trade
/// roles, so `Y` becomes the friendship graph and the placement is inverted.
pub fn invert_roles(x: &Graph, y: &Graph, c: &Configuration) -> (Graph, Graph, Configuration) {
    (y.clone(), x.clone(), c.inverse())
}

/// Translates moves of `FS(X, Y)` starting at `start` into moves of the
/// role-inverted instance: each swap of positions `a, b` becomes a swap of
/// the two people who stood on them.
pub fn invert_moves(start: &Configuration, moves: &[Move]) -> Vec<Move> {
    let mut c = start.clone();
    moves
        .iter()
        .map(|&m| {
            let dual = Move::new(c.occupant_of(m.a), c.occupant_of(m.b));
            c.swap_positions(m.a, m.b);
            dual
        })
        .collect()
}

/// `moves k` followed by one `a b` line per move.
pub fn format_moves(moves: &[Move]) -> String {
    let mut out = format!("moves {}\n", moves.len());
    for m in moves {
        out.push_str(&format!("{} {}\n", m.a, m.b));
    }
    out
}

pub fn parse_moves(text: &str) -> Result<Vec<Move>> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("missing 'moves k' header".into()))?;
    let k = header
        .strip_prefix("moves")
        .and_then(|r| r.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
    let moves = lines
        .map(|l| {
            let mut it = l.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) => Ok(Move::new(a, b)),
                _ => Err(Error::Parse(format!("bad move line {l:?}"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if moves.len() != k {
        return Err(Error::Parse(format!("header announces {k} moves, found {}", moves.len())));
    }
    Ok(moves)
}

/// Outcome of a routing request.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub reachable: bool,
    pub sequence: Option<MoveSequence>,
    pub length: usize,
    /// The solver's advertised worst-case length for this instance.
    pub bound_budget: u64,
    pub solver_id: String,
}

impl SolveReport {
    pub fn found(start: Configuration, moves: Vec<Move>, bound_budget: u64, solver_id: &str) -> Self {
        SolveReport {
            reachable: true,
            length: moves.len(),
            sequence: Some(MoveSequence::new(start, moves)),
            bound_budget,
            solver_id: solver_id.to_string(),
        }
    }

    pub fn unreachable(bound_budget: u64, solver_id: &str) -> Self {
        SolveReport {
            reachable: false,
            sequence: None,
            length: 0,
            bound_budget,
            solver_id: solver_id.to_string(),
        }
    }

    pub fn moves(&self) -> &[Move] {
        self.sequence.as_ref().map_or(&[], |s| &s.moves)
    }
}
