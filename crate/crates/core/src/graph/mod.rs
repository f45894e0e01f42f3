//! Immutable simple undirected graphs and the structural queries the
//! solvers rely on.

pub mod catalog;
mod connectivity;
mod iso;
mod paths;
mod theta;

use std::fmt;
use std::str::FromStr;

pub use connectivity::{Bipartition, OddCycle};
pub use paths::{cycle_edges, is_simple_cycle, two_disjoint_paths};
pub use theta::{PathId, ThetaFrame, ThetaParams};

use crate::error::GraphError;

/// A simple undirected graph on the vertices `0..n`.
///
/// Adjacency lists are kept sorted so that every traversal visits
/// neighbours in ascending label order; all the deterministic tie-breaking
/// in the solvers falls out of that.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    words: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let words = n.div_ceil(64);
        let mut g = Graph {
            n,
            adj: vec![Vec::new(); n],
            words,
            bits: vec![0; n * words],
        };
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.set_bit(u, v);
            g.set_bit(v, u);
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// The graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, std::iter::empty())
    }

    fn set_bit(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `N[v]`: `v` together with its neighbours, sorted.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.adj[v].clone();
        let at = out.partition_point(|&w| w < v);
        out.insert(at, v);
        out
    }

    /// Subgraph induced by `vertices`. Local vertex `i` is `vertices[i]`
    /// in `self`; the returned map is exactly that list.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            if local[v] != usize::MAX {
                return Err(GraphError::DuplicateVertex(v));
            }
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Ok((Graph::new(vertices.len(), edges)?, vertices.to_vec()))
    }

    /// The graph with vertex `v` deleted; vertices above `v` shift down by one.
    pub fn without_vertex(&self, v: usize) -> Result<(Graph, Vec<usize>), GraphError> {
        let keep: Vec<usize> = (0..self.n).filter(|&w| w != v).collect();
        self.induced_subgraph(&keep)
    }

    pub fn family(kind: &Family, n: usize) -> Result<Graph, GraphError> {
        kind.build(n)
    }

    /// Parses the edge-list text format: a header `n m`, then `m` lines
    /// `u v` with `u < v`. Lines starting with `#` are comments.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(GraphError::Parse {
            line: 0,
            message: "missing header".into(),
        })?;
        let (n, m) = parse_pair(header, line)?;
        let mut edges = Vec::with_capacity(m);
        for (line, text) in lines {
            let (u, v) = parse_pair(text, line)?;
            if u >= v {
                return Err(GraphError::Parse {
                    line,
                    message: format!("edge {u} {v} must satisfy u < v"),
                });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: 0,
                message: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }
}

fn parse_pair(text: &str, line: usize) -> Result<(usize, usize), GraphError> {
    let mut it = text.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(GraphError::Parse {
            line,
            message: format!("expected two non-negative integers, got {text:?}"),
        }),
    }
}

/// Named graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Path,
    Cycle,
    /// Centre is vertex 0.
    Star,
    Complete,
    Theta(ThetaParams),
    /// `side x side` grid, row-major.
    Grid,
    /// The n-cycle `0..n` plus the chord `(0, 2)`.
    Bn,
}

impl Family {
    pub fn build(&self, n: usize) -> Result<Graph, GraphError> {
        let bad = |message: String| Err(GraphError::Parameter(message));
        if n == 0 {
            return bad("graph families need n >= 1".into());
        }
        match *self {
            Family::Path => Graph::new(n, (1..n).map(|i| (i - 1, i))),
            Family::Cycle => {
                if n < 3 {
                    return bad(format!("cycle needs n >= 3, got {n}"));
                }
                Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Family::Star => Graph::new(n, (1..n).map(|i| (0, i))),
            Family::Complete => {
                Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
            Family::Theta(t) => {
                if t.vertex_count() != n {
                    return bad(format!(
                        "theta({},{},{}) has {} vertices, not {n}",
                        t.i,
                        t.j,
                        t.k,
                        t.vertex_count()
                    ));
                }
                Ok(t.graph())
            }
            Family::Grid => {
                let side = (n as f64).sqrt().round() as usize;
                if side * side != n {
                    return bad(format!("grid needs a square vertex count, got {n}"));
                }
                let mut edges = Vec::new();
                for r in 0..side {
                    for c in 0..side {
                        let v = r * side + c;
                        if c + 1 < side {
                            edges.push((v, v + 1));
                        }
                        if r + 1 < side {
                            edges.push((v, v + side));
                        }
                    }
                }
                Graph::new(n, edges)
            }
            Family::Bn => {
                if n < 4 {
                    return bad(format!("B_n needs n >= 4, got {n}"));
                }
                Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).chain([(0, 2)]))
            }
        }
    }
}

impl FromStr for Family {
    type Err = GraphError;

    /// Accepts `path`, `cycle`, `star`, `complete`, `grid`, `bn` and
    /// `theta:i,j,k`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        Ok(match s.as_str() {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "star" => Family::Star,
            "complete" | "kn" => Family::Complete,
            "grid" => Family::Grid,
            "bn" => Family::Bn,
            _ => {
                let rest = s
                    .strip_prefix("theta:")
                    .or_else(|| s.strip_prefix("theta"))
                    .ok_or_else(|| GraphError::Parameter(format!("unknown family {s:?}")))?;
                let parts: Vec<usize> = rest
                    .trim_matches(|c| c == '(' || c == ')')
                    .split(',')
                    .map(|p| p.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| GraphError::Parameter(format!("bad theta parameters {rest:?}")))?;
                match parts[..] {
                    [i, j, k] => Family::Theta(ThetaParams::new(i, j, k)?),
                    _ => return Err(GraphError::Parameter(format!("theta needs i,j,k: {rest:?}"))),
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(g: &Graph) -> Vec<(usize, usize)> {
        g.edges().collect()
    }

    #[test]
    fn star_family_is_centred_at_zero() {
        let g = Family::Star.build(4).unwrap();
        assert_eq!(edges(&g), vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn bn_is_cycle_plus_chord() {
        let g = Family::Bn.build(6).unwrap();
        assert_eq!(
            edges(&g),
            vec![(0, 1), (0, 2), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)]
        );
        assert!(Family::Bn.build(3).is_err());
    }

    #[test]
    fn theta_011_is_k4_minus_an_edge() {
        let t = ThetaParams::new(0, 1, 1).unwrap();
        let g = Family::Theta(t).build(4).unwrap();
        assert_eq!(g.edge_count(), 5);
        let k4 = Family::Complete.build(4).unwrap();
        let missing: Vec<_> = k4.edges().filter(|&(u, v)| !g.has_edge(u, v)).collect();
        assert_eq!(missing.len(), 1);
        // the missing edge joins the two degree-2 vertices
        let (u, v) = missing[0];
        assert_eq!((g.degree(u), g.degree(v)), (2, 2));
        assert!(Family::Theta(t).build(5).is_err());
    }

    #[test]
    fn grid_needs_square() {
        let g = Family::Grid.build(9).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert!(Family::Grid.build(8).is_err());
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1))));
        assert!(matches!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(Graph::new(0, []).is_err());
    }

    #[test]
    fn closed_neighborhood_and_induced() {
        let star = Family::Star.build(4).unwrap();
        assert_eq!(star.closed_neighborhood(0), vec![0, 1, 2, 3]);
        assert_eq!(star.closed_neighborhood(2), vec![0, 2]);
        let c5 = Family::Cycle.build(5).unwrap();
        let (p3, map) = c5.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(p3, Family::Path.build(3).unwrap());
        assert_eq!(map, vec![0, 1, 2]);
        assert!(c5.induced_subgraph(&[]).is_err());
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let text = "# a comment\n4 3\n0 1\n1 2\n# inline\n2 3\n";
        let g = Graph::parse_edge_list(text).unwrap();
        assert_eq!(g, Family::Path.build(4).unwrap());
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(Graph::parse_edge_list("3 2\n0 1\n").is_err());
        assert!(Graph::parse_edge_list("3 1\n2 1\n").is_err());
        assert!(Graph::parse_edge_list("3 1\n0 x\n").is_err());
    }

    #[test]
    fn family_names_parse() {
        assert_eq!("star".parse::<Family>().unwrap(), Family::Star);
        assert_eq!(
            "theta:1,2,2".parse::<Family>().unwrap(),
            Family::Theta(ThetaParams::new(1, 2, 2).unwrap())
        );
        assert!("theta:2,1,1".parse::<Family>().is_err());
        assert!("wheel".parse::<Family>().is_err());
    }
}
