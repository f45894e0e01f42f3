//! Measures the length constants in `constants.toml`: the largest observed
//! `length / n^d` for each gadget and router, times a margin.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constants::Constants;
use crate::dense::solve_dense_exchange;
use crate::error::Result;
use crate::experiments::{sample_configuration, sample_min_degree};
use crate::graph::{Graph, ThetaParams};
use crate::star::{
    elementary_3cycle, elementary_double_transposition, elementary_transposition, solve_star, theta_rotate,
    transport_triple,
};

/// Powers of n each constant multiplies, in `Constants` field order.
pub const EXPONENTS: [(&str, u32); 7] =
    [("c_rot", 2), ("c_tt", 2), ("c_et", 3), ("c_3c", 2), ("c_dt", 3), ("k_star", 4), ("k_dense", 6)];

/// Frozen constant = ceil(margin * observed ratio).
pub const MARGIN: f64 = 2.0;

#[derive(Clone, Debug, Default)]
pub struct Observed {
    /// Largest `length / n^d` seen per constant, in `EXPONENTS` order.
    pub ratio: [f64; 7],
    pub samples: [usize; 7],
}

impl Observed {
    fn record(&mut self, k: usize, n: usize, len: usize) {
        let r = len as f64 / (n as f64).powi(EXPONENTS[k].1 as i32);
        self.ratio[k] = self.ratio[k].max(r);
        self.samples[k] += 1;
    }

    pub fn constants(&self) -> Constants {
        let c = |k: usize| ((self.ratio[k] * MARGIN).ceil() as u64).max(1);
        Constants { c_rot: c(0), c_tt: c(1), c_et: c(2), c_3c: c(3), c_dt: c(4), k_star: c(5), k_dense: c(6) }
    }

    pub fn report(&self) -> String {
        let mut out = String::from("constant,exponent,samples,max_ratio\n");
        for (k, (name, d)) in EXPONENTS.iter().enumerate() {
            out.push_str(&format!("{name},{d},{},{:.3}\n", self.samples[k], self.ratio[k]));
        }
        out
    }
}

fn biconnected_host(r: &mut ChaCha8Rng, n: usize) -> Graph {
    let theta = ThetaParams { i: 1, j: 2, k: 2 }.graph();
    loop {
        let p = r.gen_range(0.25..0.7);
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| r.gen_bool(p)).collect();
        let g = Graph::new(n, edges).expect("valid pairs");
        if g.is_biconnected() && !g.is_cycle_graph() && !(n == 7 && g.is_isomorphic_small(&theta)) {
            return g;
        }
    }
}

fn connected_host(r: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let p = r.gen_range(0.15..0.6);
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| r.gen_bool(p)).collect();
        let g = Graph::new(n, edges).expect("valid pairs");
        if g.is_connected() {
            return g;
        }
    }
}

/// Two positions adjacent to a common third, none of them `avoid`.
fn two_edge_path(y: &Graph, r: &mut ChaCha8Rng, avoid: usize) -> Option<[usize; 3]> {
    let mut mids: Vec<usize> = (0..y.n()).filter(|&v| v != avoid).collect();
    mids.shuffle(r);
    for m in mids {
        let mut nb: Vec<usize> = y.neighbors(m).iter().copied().filter(|&v| v != avoid).collect();
        if nb.len() >= 2 {
            nb.shuffle(r);
            return Some([nb[0], m, nb[1]]);
        }
    }
    None
}

/// Runs every measurement with `samples` instances per kind and size.
pub fn measure(seed: u64, samples: usize) -> Result<Observed> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut obs = Observed::default();
    for n in 4..=16usize {
        for i in 0..n {
            for j in i.max(1)..n {
                if i + j + 2 > n || n - i - j - 2 < j {
                    continue;
                }
                let t = ThetaParams::new(i, j, n - i - j - 2)?;
                if (t.i, t.j, t.k) == (1, 2, 2) {
                    continue;
                }
                obs.record(0, n, theta_rotate(&t.canonical_frame())?.moves.len());
            }
        }
    }
    for n in 5..=12usize {
        for _ in 0..samples {
            let y = biconnected_host(&mut r, n);
            let c = sample_configuration(n, &mut r);
            let hole = c.position_of(0);
            let (Some(a), Some(b)) = (two_edge_path(&y, &mut r, hole), two_edge_path(&y, &mut r, hole)) else { continue };
            let persons = a.map(|v| c.occupant_of(v));
            obs.record(1, n, transport_triple(&y, &c, persons, b)?.len());
            obs.record(3, n, elementary_3cycle(&y, &c, a[0], a[1], a[2])?.len());
            if !y.is_bipartite() {
                obs.record(2, n, elementary_transposition(&y, &c, a[0], a[1])?.len());
            }
            let e = (a[0], a[1]);
            let f = (b[1], b[2]);
            let disjoint = ![e.0, e.1].iter().any(|v| *v == f.0 || *v == f.1);
            if disjoint {
                obs.record(4, n, elementary_double_transposition(&y, &c, e, f)?.len());
            }
        }
    }
    for n in 5..=9usize {
        for _ in 0..samples {
            let y = connected_host(&mut r, n);
            let a = sample_configuration(n, &mut r);
            let b = sample_configuration(n, &mut r);
            let rep = solve_star(&y, &a, &b)?;
            if rep.reachable {
                obs.record(5, n, rep.length);
            }
        }
    }
    for n in 8..=12usize {
        for _ in 0..samples.div_ceil(4) {
            let big = r.gen_range((2 * n).div_ceil(3)..=n - 1);
            let small = (2 * n).saturating_sub(2 * big).max(1);
            let x = sample_min_degree(n, small, r.gen())?;
            let y = sample_min_degree(n, big, r.gen())?;
            let (a, b) = (sample_configuration(n, &mut r), sample_configuration(n, &mut r));
            obs.record(6, n, solve_dense_exchange(&x, &y, &a, &b)?.length);
        }
    }
    Ok(obs)
}

/// Text of `constants.toml` for `c`.
pub fn constants_file(c: &Constants, seed: u64, samples: usize) -> String {
    format!(
        "# Length budgets, as multiples of a power of n. Written by `fsroute bench --seed {seed} --samples {samples}`.\n{}",
        c.to_toml()
    )
}

/// Whether every constant in `c` covers what `obs` saw.
pub fn covers(c: &Constants, obs: &Observed) -> bool {
    let v = [c.c_rot, c.c_tt, c.c_et, c.c_3c, c.c_dt, c.k_star, c.k_dense];
    v.iter().zip(obs.ratio).all(|(&k, r)| k as f64 >= r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[ignore]
    fn print_measurement() {
        let obs = measure(1, 40).unwrap();
        println!("{}{}", obs.report(), obs.constants().to_toml());
    }

    #[test]
    fn shipped_constants_cover_a_fresh_sample() {
        let obs = measure(99, 6).unwrap();
        assert!(covers(&Constants::built_in(), &obs), "{}", obs.report());
    }

    #[test]
    fn path_helper_avoids_the_hole() {
        let y = crate::graph::Family::Complete.build(5).unwrap();
        let mut r = ChaCha8Rng::seed_from_u64(1);
        let p = two_edge_path(&y, &mut r, 2).unwrap();
        assert!(!p.contains(&2));
    }
}
