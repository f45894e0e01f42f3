use std::collections::VecDeque;

use super::max_over;

/// One component of the state graph in compressed adjacency form. Local
/// index `i` is the state with rank `ranks[i]`; index 0 is the BFS root.
#[derive(Clone, Debug)]
pub struct Csr {
    pub ranks: Vec<u64>,
    pub offsets: Vec<u32>,
    pub targets: Vec<u32>,
}

impl Csr {
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    /// Fills `dist` with hop distances from `src`; returns the eccentricity.
    pub fn bfs(&self, src: usize, dist: &mut [u32]) -> u32 {
        dist.fill(u32::MAX);
        dist[src] = 0;
        let mut queue = VecDeque::from([src as u32]);
        let mut ecc = 0;
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize];
            ecc = d;
            for &w in self.neighbors(v as usize) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        ecc
    }
}

/// Maximum eccentricity by one BFS per state.
pub fn all_pairs_diameter(csr: &Csr, parallel: bool) -> u64 {
    max_over(csr.len(), parallel, |src| {
        let mut dist = vec![0u32; csr.len()];
        csr.bfs(src, &mut dist) as u64
    })
}

/// Exact diameter by eccentricity bounding: every BFS tightens lower and
/// upper eccentricity bounds of all states, and states whose upper bound
/// cannot beat the best eccentricity seen are dropped. Sources alternate
/// between the largest upper bound and the smallest lower bound.
pub fn bounding_diameter(csr: &Csr) -> u64 {
    let n = csr.len();
    if n <= 1 {
        return 0;
    }
    let mut lo = vec![0u32; n];
    let mut hi = vec![u32::MAX; n];
    let mut active: Vec<u32> = (0..n as u32).collect();
    let mut dist = vec![0u32; n];
    let (mut best_lo, mut best_hi) = (0u32, u32::MAX);
    let mut pick_high = true;
    while best_lo < best_hi && !active.is_empty() {
        let v = if pick_high {
            *active.iter().max_by_key(|&&v| (hi[v as usize], std::cmp::Reverse(v))).unwrap()
        } else {
            *active.iter().min_by_key(|&&v| (lo[v as usize], v)).unwrap()
        } as usize;
        pick_high = !pick_high;
        let ecc = csr.bfs(v, &mut dist);
        lo[v] = ecc;
        hi[v] = ecc;
        best_lo = best_lo.max(ecc);
        for &w in &active {
            let w = w as usize;
            let d = dist[w];
            lo[w] = lo[w].max(d.max(ecc - d));
            hi[w] = hi[w].min(ecc + d);
        }
        active.retain(|&w| w as usize != v && hi[w as usize] > best_lo);
        if let Some(m) = active.iter().map(|&w| hi[w as usize]).max() {
            best_hi = m.max(best_lo);
        }
    }
    best_lo as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Csr {
        let mut offsets = vec![0];
        let mut targets = Vec::new();
        for v in 0..n {
            targets.push(((v + n - 1) % n) as u32);
            targets.push(((v + 1) % n) as u32);
            offsets.push(targets.len() as u32);
        }
        Csr { ranks: (0..n as u64).collect(), offsets, targets }
    }

    fn path(n: usize) -> Csr {
        let mut offsets = vec![0];
        let mut targets = Vec::new();
        for v in 0..n {
            if v > 0 {
                targets.push((v - 1) as u32);
            }
            if v + 1 < n {
                targets.push((v + 1) as u32);
            }
            offsets.push(targets.len() as u32);
        }
        Csr { ranks: (0..n as u64).collect(), offsets, targets }
    }

    #[test]
    fn bounding_matches_all_pairs() {
        for n in 1..40 {
            let c = cycle(n.max(3));
            assert_eq!(bounding_diameter(&c), all_pairs_diameter(&c, false));
            let p = path(n);
            assert_eq!(bounding_diameter(&p), (n - 1) as u64);
            assert_eq!(all_pairs_diameter(&p, true), (n - 1) as u64);
        }
    }
}
