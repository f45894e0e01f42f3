use std::collections::VecDeque;

use super::Graph;
use crate::error::GraphError;

/// A 2-colouring, or a simple odd cycle proving none exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartition {
    Coloring(Vec<u8>),
    OddCycle(OddCycle),
}

/// Vertices of a simple cycle of odd length, in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCycle(pub Vec<usize>);

impl Graph {
    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for root in 0..self.n() {
            if comp[root] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![root];
            comp[root] = id;
            let mut head = 0;
            while head < members.len() {
                let v = members[head];
                head += 1;
                for &w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// BFS tree from `root`: `(dist, parent)`, unreachable vertices at
    /// `usize::MAX`.
    pub(crate) fn bfs_tree(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let mut dist = vec![usize::MAX; self.n()];
        let mut parent = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::from([root]);
        dist[root] = 0;
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    pub fn bipartition(&self) -> Bipartition {
        let mut color = vec![u8::MAX; self.n()];
        for root in 0..self.n() {
            if color[root] != u8::MAX {
                continue;
            }
            let (dist, parent) = self.bfs_tree(root);
            for v in 0..self.n() {
                if dist[v] != usize::MAX {
                    color[v] = (dist[v] % 2) as u8;
                }
            }
            for v in 0..self.n() {
                if dist[v] == usize::MAX {
                    continue;
                }
                for &w in self.neighbors(v) {
                    if v < w && dist[v] == dist[w] {
                        return Bipartition::OddCycle(OddCycle(tree_cycle(&parent, &dist, v, w)));
                    }
                }
            }
        }
        Bipartition::Coloring(color)
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartition::Coloring(_))
    }

    /// Articulation points in ascending order.
    pub fn cut_vertices(&self) -> Vec<usize> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbour index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (v, p, i) = *top;
                if let Some(&w) = self.neighbors(v).get(i) {
                    top.2 += 1;
                    if w == p {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if p != usize::MAX {
                        low[p] = low[p].min(low[v]);
                        if p != root && low[v] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Biconnected components as sorted vertex sets, bridges and isolated
    /// vertices included. Cut vertices appear in every block they join.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut time = 0;
        let mut out = Vec::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            if self.degree(root) == 0 {
                out.push(vec![root]);
                continue;
            }
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (v, p, i) = *top;
                if let Some(&w) = self.neighbors(v).get(i) {
                    top.2 += 1;
                    if w == p {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        edges.push((v, w));
                        stack.push((w, v, 0));
                    } else if disc[w] < disc[v] {
                        edges.push((v, w));
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if p != usize::MAX {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            let mut block = Vec::new();
                            while let Some((a, b)) = edges.pop() {
                                block.extend([a, b]);
                                if (a, b) == (p, v) {
                                    break;
                                }
                            }
                            block.sort_unstable();
                            block.dedup();
                            out.push(block);
                        }
                    }
                }
            }
        }
        out
    }

    /// Connected with no cut vertex. A single vertex or a single edge counts
    /// as biconnected so that cut-vertex recursion bottoms out uniformly.
    pub fn is_biconnected(&self) -> bool {
        self.is_connected() && self.cut_vertices().is_empty()
    }

    /// Smallest-label vertex whose deletion leaves the graph connected. Such
    /// a vertex is a leaf of some spanning tree.
    pub fn removable_vertex(&self) -> Result<usize, GraphError> {
        if self.n() < 2 {
            return Err(GraphError::Precondition("removable_vertex needs n >= 2".into()));
        }
        if !self.is_connected() {
            return Err(GraphError::Precondition("removable_vertex needs a connected graph".into()));
        }
        let cuts = self.cut_vertices();
        (0..self.n())
            .find(|v| cuts.binary_search(v).is_err())
            .ok_or_else(|| GraphError::Internal("connected graph without a non-cut vertex".into()))
    }

    /// Connected, `n >= 3`, every vertex of degree 2.
    pub fn is_cycle_graph(&self) -> bool {
        self.n() >= 3 && (0..self.n()).all(|v| self.degree(v) == 2) && self.is_connected()
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.is_forest() && self.is_connected()
    }
}

/// The cycle closed by the non-tree edge `(v, w)` in a BFS tree.
pub(crate) fn tree_cycle(parent: &[usize], dist: &[usize], v: usize, w: usize) -> Vec<usize> {
    let (mut a, mut b) = (v, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while dist[a] > dist[b] {
        a = parent[a];
        left.push(a);
    }
    while dist[b] > dist[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}
