use fsroute::config::{apply_move, invert_moves, invert_roles, replay_moves, Configuration, Move};
use fsroute::constants::Constants;
use fsroute::dense::{exchange, solve_dense_exchange};
use fsroute::experiments::{degrees_in_band, sample_configuration, sample_gnp, sample_min_degree};
use fsroute::graph::catalog::from_mask;
use fsroute::graph::ThetaParams;
use fsroute::oracle::{self, component_map, distance, factorial, rank, unrank, OracleOptions, StateSpace};
use fsroute::star::{
    elementary_3cycle, elementary_double_transposition, elementary_transposition, solve_star, theta_rotate,
    transport_triple,
};
use fsroute::token::{binom2, same_people_per_component, solve_kn};
use fsroute::{Family, Graph, Parity};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph(n: usize, mask: u64) -> Graph {
    from_mask(n, mask & ((1u64 << binom2(n)) - 1))
}

fn config(n: usize, seed: u64) -> Configuration {
    sample_configuration(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn legal_moves(x: &Graph, y: &Graph, c: &Configuration) -> Vec<Move> {
    y.edges().filter(|&(a, b)| x.has_edge(c.occupant_of(a), c.occupant_of(b))).map(|(a, b)| Move::new(a, b)).collect()
}

/// Biconnected, not a cycle, not θ(1,2,2): a host every gadget accepts.
fn gadget_host(n: usize, r: &mut ChaCha8Rng) -> Graph {
    let theta = ThetaParams::new(1, 2, 2).unwrap().graph();
    loop {
        let p = r.gen_range(0.3..0.8);
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| r.gen_bool(p)).collect();
        let g = Graph::new(n, edges).unwrap();
        if g.is_biconnected() && !g.is_cycle_graph() && !g.is_isomorphic_small(&theta) {
            return g;
        }
    }
}

/// Biconnected and bipartite, sides of size at least two. Not a cycle, not θ(1,2,2).
fn bipartite_host(n: usize, r: &mut ChaCha8Rng) -> Graph {
    let left = r.gen_range(2..=n - 2);
    let theta = ThetaParams::new(1, 2, 2).unwrap().graph();
    loop {
        let edges: Vec<(usize, usize)> =
            (0..left).flat_map(|u| (left..n).map(move |v| (u, v))).filter(|_| r.gen_bool(0.7)).collect();
        let g = Graph::new(n, edges).unwrap();
        if g.is_biconnected() && !g.is_cycle_graph() && !g.is_isomorphic_small(&theta) {
            return g;
        }
    }
}

/// A path `a - m - b` avoiding `hole`.
fn two_edge_path(y: &Graph, hole: usize, r: &mut ChaCha8Rng) -> Option<[usize; 3]> {
    let mut mids: Vec<usize> = (0..y.n()).filter(|&v| v != hole).collect();
    mids.shuffle(r);
    mids.into_iter().find_map(|m| {
        let mut nb: Vec<usize> = y.neighbors(m).iter().copied().filter(|&v| v != hole).collect();
        nb.shuffle(r);
        (nb.len() >= 2).then(|| [nb[0], m, nb[1]])
    })
}

fn fixed_outside(before: &Configuration, after: &Configuration, support: &[usize]) -> bool {
    (0..before.n()).filter(|v| !support.contains(v)).all(|v| before.occupant_of(v) == after.occupant_of(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn apply_move_is_an_involution(n in 2usize..8, mask in any::<u64>(), xmask in any::<u64>(), seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let (x, y) = (graph(n, xmask), graph(n, mask));
        let c = config(n, seed);
        let legal = legal_moves(&x, &y, &c);
        prop_assume!(!legal.is_empty());
        let m = *pick.get(&legal);
        let once = apply_move(&x, &y, &c, m).unwrap();
        prop_assert_ne!(&once, &c);
        prop_assert_eq!(apply_move(&x, &y, &once, m).unwrap(), c);
    }

    #[test]
    fn closed_walks_keep_parity_on_bipartite_hosts(n in 3usize..9, mask in any::<u64>(), seed in any::<u64>()) {
        let y = graph(n, mask);
        prop_assume!(y.is_bipartite() && y.edge_count() > 0);
        let x = Family::Star.build(n).unwrap();
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let start = sample_configuration(n, &mut r);
        let mut c = start.clone();
        for _ in 0..r.gen_range(0..60) {
            let legal = legal_moves(&x, &y, &c);
            let m = *legal.choose(&mut r).unwrap_or(&Move::new(0, 0));
            if m.a != m.b {
                c = apply_move(&x, &y, &c, m).unwrap();
            }
        }
        // Walk the center home along a shortest path.
        let path = y.bfs_path(c.position_of(0), start.position_of(0));
        prop_assume!(path.is_some());
        for w in path.unwrap().windows(2) {
            c = apply_move(&x, &y, &c, Move::new(w[0], w[1])).unwrap();
        }
        prop_assert_eq!(c.parity(Some(0)), start.parity(Some(0)));
    }

    #[test]
    fn inverted_roles_replay_in_the_dual(n in 2usize..8, mask in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let y = graph(n, mask);
        let x = Family::Complete.build(n).unwrap();
        let (a, b) = (config(n, s1), config(n, s2));
        let rep = solve_kn(&y, &a, &b).unwrap();
        prop_assume!(rep.reachable);
        let (dx, dy, da) = invert_roles(&x, &y, &a);
        let dual = invert_moves(&a, rep.moves());
        prop_assert_eq!(dual.len(), rep.length);
        prop_assert_eq!(replay_moves(&dx, &dy, &da, &dual).unwrap(), b.inverse());
    }

    #[test]
    fn kn_router_matches_the_oracle(n in 1usize..7, mask in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let y = graph(n, mask);
        let x = Family::Complete.build(n).unwrap();
        let (a, b) = (config(n, s1), config(n, s2));
        let rep = solve_kn(&y, &a, &b).unwrap();
        let map = component_map(&x, &y, &OracleOptions::default()).unwrap();
        prop_assert_eq!(rep.reachable, map.same(&a, &b));
        prop_assert_eq!(rep.reachable, same_people_per_component(&y, &a, &b));
        prop_assert!(rep.length as u64 <= binom2(n));
        if rep.reachable {
            prop_assert_eq!(replay_moves(&x, &y, &a, rep.moves()).unwrap(), b);
        }
    }

    #[test]
    fn star_routes_on_bipartite_hosts_have_even_closed_length(n in 5usize..9, seed in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let y = bipartite_host(n, &mut r);
        let a = config(n, s1);
        // Center back where it started, everyone else an even shuffle.
        let mut b = config(n, s2).placement().to_vec();
        let home = a.position_of(0);
        let who = b.iter().position(|&p| p == home).unwrap();
        b.swap(0, who);
        let mut b = Configuration::new(b.clone()).unwrap();
        if b.parity(Some(0)) != a.parity(Some(0)) {
            let mut v = b.placement().to_vec();
            v.swap(1, 2);
            b = Configuration::new(v).unwrap();
        }
        let rep = solve_star(&y, &a, &b).unwrap();
        prop_assert!(rep.reachable);
        prop_assert_eq!(rep.length % 2, 0);
    }

    #[test]
    fn gadgets_fix_bystanders_within_budget(n in 5usize..11, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let y = gadget_host(n, &mut r);
        let c = sample_configuration(n, &mut r);
        let x = Family::Star.build(n).unwrap();
        let k = Constants::get();
        let hole = c.position_of(0);
        let (Some(p), Some(q)) = (two_edge_path(&y, hole, &mut r), two_edge_path(&y, hole, &mut r)) else {
            return Ok(());
        };
        let run = |moves: Vec<Move>| replay_moves(&x, &y, &c, &moves).map(|end| (end, moves.len()));

        let (end, len) = run(elementary_3cycle(&y, &c, p[0], p[1], p[2]).unwrap()).unwrap();
        prop_assert!(fixed_outside(&c, &end, &p));
        prop_assert_eq!(end.occupant_of(p[1]), c.occupant_of(p[0]));
        prop_assert!(len as u64 <= k.three_cycle_budget(n));

        if !y.is_bipartite() {
            let (end, len) = run(elementary_transposition(&y, &c, p[0], p[1]).unwrap()).unwrap();
            prop_assert!(fixed_outside(&c, &end, &p[..2]));
            prop_assert_eq!(end.occupant_of(p[0]), c.occupant_of(p[1]));
            prop_assert!(len as u64 <= k.transposition_budget(n));
        }

        let (e, f) = ((p[0], p[1]), (q[1], q[2]));
        if ![e.0, e.1].iter().any(|&v| v == f.0 || v == f.1) {
            let (end, len) = run(elementary_double_transposition(&y, &c, e, f).unwrap()).unwrap();
            prop_assert!(fixed_outside(&c, &end, &[e.0, e.1, f.0, f.1]));
            prop_assert_eq!(end.occupant_of(e.0), c.occupant_of(e.1));
            prop_assert_eq!(end.occupant_of(f.0), c.occupant_of(f.1));
            prop_assert!(len as u64 <= k.double_transposition_budget(n));
        }

        let persons = p.map(|v| c.occupant_of(v));
        let (end, len) = run(transport_triple(&y, &c, persons, q).unwrap()).unwrap();
        let mut landed: Vec<usize> = q.iter().map(|&v| end.occupant_of(v)).collect();
        let mut want = persons.to_vec();
        landed.sort_unstable();
        want.sort_unstable();
        prop_assert_eq!(landed, want);
        prop_assert!(len as u64 <= k.transport_budget(n));
    }

    #[test]
    fn exchange_touches_only_the_pair(n in 8usize..12, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let x = Family::Complete.build(n).unwrap();
        let y = sample_min_degree(n, n / 2 + 1, r.gen()).unwrap();
        let c = sample_configuration(n, &mut r);
        let (p, q) = (r.gen_range(0..n), r.gen_range(0..n));
        prop_assume!(p != q);
        let moves = exchange(&x, &y, &c, p, q).unwrap();
        let end = replay_moves(&x, &y, &c, &moves).unwrap();
        prop_assert!(fixed_outside(&c, &end, &[c.position_of(p), c.position_of(q)]));
        prop_assert_eq!(end.position_of(p), c.position_of(q));
        let rep = solve_dense_exchange(&x, &y, &c, &end).unwrap();
        prop_assert!(rep.length as u64 <= Constants::get().dense_budget(n));
    }

    #[test]
    fn oracle_neighbors_match_a_naive_scan(n in 2usize..8, mask in any::<u64>(), xmask in any::<u64>(), seed in any::<u64>()) {
        let (x, y) = (graph(n, xmask), graph(n, mask));
        let space = StateSpace::new(&x, &y).unwrap();
        let c = config(n, seed);
        let mut got = space.neighbors(rank(&c));
        let mut want: Vec<u64> = legal_moves(&x, &y, &c).into_iter().map(|m| rank(&apply_move(&x, &y, &c, m).unwrap())).collect();
        got.sort_unstable();
        want.sort_unstable();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn oracle_distances_are_a_metric(n in 3usize..7, mask in any::<u64>(), s in any::<[u64; 3]>()) {
        let y = graph(n, mask);
        let x = Family::Star.build(n).unwrap();
        let o = OracleOptions::default();
        let [a, b, c] = s.map(|s| config(n, s));
        let d = |u: &Configuration, v: &Configuration| distance(&x, &y, u, v, &o).unwrap();
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        if let (Some(ab), Some(bc)) = (d(&a, &b), d(&b, &c)) {
            prop_assert!(d(&a, &c).unwrap() <= ab + bc);
        }
    }

    #[test]
    fn serial_and_parallel_oracles_agree(n in 3usize..7, mask in any::<u64>(), xmask in any::<u64>()) {
        let (x, y) = (graph(n, xmask), graph(n, mask));
        let par = OracleOptions { parallel: true, all_pairs_cap: 50, ..OracleOptions::default() };
        let ser = OracleOptions { parallel: false, ..par };
        let a = oracle::components(&x, &y, &par).unwrap();
        prop_assert_eq!(&a, &oracle::components(&x, &y, &ser).unwrap());
        prop_assert_eq!(a.iter().map(|c| c.size).sum::<u64>(), factorial(n));
    }

    #[test]
    fn gnp_is_reproducible(n in 1usize..40, p in 0.0f64..=1.0, seed in any::<u64>()) {
        prop_assert_eq!(sample_gnp(n, p, seed).to_edge_list(), sample_gnp(n, p, seed).to_edge_list());
    }
}

#[test]
fn rank_is_a_bijection_up_to_eight() {
    for n in 1..=8 {
        let mut seen = vec![false; factorial(n) as usize];
        for r in 0..factorial(n) {
            let c = unrank(n, r);
            assert_eq!(rank(&c), r);
            assert!(!std::mem::replace(&mut seen[r as usize], true));
        }
    }
}

#[test]
fn kn_reversal_on_paths_is_binomial() {
    for n in 3..=9 {
        let y = Family::Path.build(n).unwrap();
        let r = solve_kn(&y, &Configuration::reversal(n), &Configuration::identity(n)).unwrap();
        assert_eq!(r.length as u64, binom2(n));
    }
}

#[test]
fn rotations_fit_their_budget() {
    let k = Constants::get();
    for n in 4..=12usize {
        for i in 0..=n - 2 {
            for j in i.max(1)..=n - 2 - i {
                let kk = n - 2 - i - j;
                if kk < j || (i, j, kk) == (1, 2, 2) {
                    continue;
                }
                let plan = theta_rotate(&ThetaParams::new(i, j, kk).unwrap().canonical_frame()).unwrap();
                assert!(plan.moves.len() as u64 <= k.rotation_budget(n), "theta({i},{j},{kk})");
            }
        }
    }
}

#[test]
fn degree_band_holds_at_two_hundred() {
    let hits = (0..500u64).filter(|&s| degrees_in_band(&sample_gnp(200, 0.5, s), 0.5)).count();
    assert!(hits >= 495, "{hits}/500");
}

#[test]
fn parity_is_reported_both_ways() {
    let c = Configuration::identity(4);
    assert_eq!(c.parity(Some(0)), Parity::Even);
}
