use super::Graph;

impl Graph {
    /// Backtracking isomorphism test, pruned by degree. Meant for graphs of
    /// at most 16 vertices; larger inputs still work but may be slow.
    pub fn is_isomorphic_small(&self, other: &Graph) -> bool {
        let n = self.n();
        if n != other.n() || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut da: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut db: Vec<usize> = (0..n).map(|v| other.degree(v)).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return false;
        }
        // Map high-degree vertices first; they constrain the search most.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_iso(other, &order, 0, &mut map, &mut used)
    }

    fn extend_iso(
        &self,
        other: &Graph,
        order: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        for w in 0..other.n() {
            if used[w] || other.degree(w) != self.degree(v) {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| self.has_edge(u, v) == other.has_edge(map[u], w));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if self.extend_iso(other, order, depth + 1, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }

    /// Upper-triangle adjacency bits, pair `(u, v)` with `u < v` at the
    /// index of its position in lexicographic order. Needs `n <= 11`.
    pub fn adjacency_mask(&self) -> u64 {
        let n = self.n();
        assert!(n <= 11, "adjacency mask supports at most 11 vertices");
        let mut mask = 0u64;
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if self.has_edge(u, v) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        mask
    }

    /// Smallest adjacency mask over all relabelings: equal for two graphs
    /// exactly when they are isomorphic. Brute force, so `n <= 8`.
    pub fn canonical_mask(&self) -> u64 {
        let n = self.n();
        assert!(n <= 8, "canonical mask is brute force; n <= 8");
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        loop {
            let mut mask = 0u64;
            for (u, v) in self.edges() {
                let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
                mask |= 1 << (a * (2 * n - a - 1) / 2 + (b - a - 1));
            }
            best = best.min(mask);
            if !next_permutation(&mut perm) {
                return best;
            }
        }
    }
}

/// Lexicographic successor; false once `p` was the last permutation.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
