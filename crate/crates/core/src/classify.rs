//! Deciding whether two configurations lie in the same component of
//! `FS(X, Y)` without searching the state space, for `X` complete or a star.

use serde::Serialize;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::{Graph, ThetaParams};
use crate::oracle::{self, factorial, OracleOptions};
use crate::star::{star_reachable, CENTER};
use crate::token::same_people_per_component;

/// What settled a [`same_component`] query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Identical,
    /// `X = K_n`: the same people on every component of `Y`.
    KnComponents,
    /// The center cannot reach some component of `Y` whose people differ.
    Frozen,
    /// The center's component of `Y` is a tree.
    Tree,
    /// A cycle: the circular order of everyone but the center is fixed.
    CycleOrder,
    /// θ(1,2,2), looked up by search over its 5040 states.
    Theta122,
    /// Biconnected and bipartite: parity without the center.
    Parity,
    /// Biconnected, not bipartite, not a cycle, not θ(1,2,2).
    Wilsonian,
    /// Split at cut vertices and decided block by block.
    CutVertex,
    /// Exhaustive search.
    Oracle,
}

impl CertificateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertificateKind::Identical => "identical",
            CertificateKind::KnComponents => "kn-components",
            CertificateKind::Frozen => "frozen",
            CertificateKind::Tree => "tree",
            CertificateKind::CycleOrder => "cycle-order",
            CertificateKind::Theta122 => "theta122",
            CertificateKind::Parity => "parity",
            CertificateKind::Wilsonian => "wilsonian",
            CertificateKind::CutVertex => "cut-vertex",
            CertificateKind::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub same: bool,
    pub certificate: CertificateKind,
}

/// The center of `x` if it is a star on at least three vertices.
pub fn star_center(x: &Graph) -> Option<usize> {
    let n = x.n();
    if n < 3 || x.edge_count() != n - 1 {
        return None;
    }
    (0..n).find(|&v| x.degree(v) == n - 1)
}

pub fn is_complete(x: &Graph) -> bool {
    x.edge_count() == x.n() * x.n().saturating_sub(1) / 2
}

/// Exchanges persons `0` and `c`.
fn recenter(c: &Configuration, center: usize) -> Result<Configuration> {
    let mut p = c.placement().to_vec();
    p.swap(0, center);
    Configuration::new(p)
}

pub fn is_theta_122(y: &Graph) -> bool {
    y.n() == 7 && y.edge_count() == 8 && y.is_isomorphic_small(&ThetaParams { i: 1, j: 2, k: 2 }.graph())
}

fn star_certificate(y: &Graph, from: &Configuration, to: &Configuration) -> Result<CertificateKind> {
    let home = from.position_of(CENTER);
    let comps = y.components();
    let mine = comps.iter().find(|c| c.contains(&home)).expect("every vertex has a component");
    if mine.len() < y.n() && (0..y.n()).any(|v| !mine.contains(&v) && from.occupant_of(v) != to.occupant_of(v)) {
        return Ok(CertificateKind::Frozen);
    }
    let (h, _) = y.induced_subgraph(mine)?;
    Ok(if h.is_forest() || h.n() <= 2 {
        CertificateKind::Tree
    } else if !h.is_biconnected() {
        CertificateKind::CutVertex
    } else if h.is_cycle_graph() {
        CertificateKind::CycleOrder
    } else if is_theta_122(&h) {
        CertificateKind::Theta122
    } else if h.is_bipartite() {
        CertificateKind::Parity
    } else {
        CertificateKind::Wilsonian
    })
}

/// Whether `b` is reachable from `a` in `FS(X, Y)`. Complete and star
/// friendship graphs are decided structurally; anything else falls back to
/// the oracle while `n!` fits its pair budget.
pub fn same_component(x: &Graph, y: &Graph, a: &Configuration, b: &Configuration, opts: &OracleOptions) -> Result<Classification> {
    let n = y.n();
    if x.n() != n || a.n() != n || b.n() != n {
        return Err(Error::InvalidConfiguration("X, Y and both configurations must have the same size".into()));
    }
    if a == b {
        return Ok(Classification { same: true, certificate: CertificateKind::Identical });
    }
    if is_complete(x) {
        return Ok(Classification { same: same_people_per_component(y, a, b), certificate: CertificateKind::KnComponents });
    }
    if let Some(c) = star_center(x) {
        let (a, b) = (recenter(a, c)?, recenter(b, c)?);
        let certificate = star_certificate(y, &a, &b)?;
        return Ok(Classification { same: star_reachable(y, &a, &b)?, certificate });
    }
    if factorial(n) > opts.pair_budget {
        return Err(Error::UnsupportedInstance(format!(
            "no structural classification for this X and n = {n} exceeds the oracle budget"
        )));
    }
    let same = oracle::distance(x, y, a, b, opts)?.is_some();
    Ok(Classification { same, certificate: CertificateKind::Oracle })
}

/// Order of the group of rearrangements a block allows with the center
/// returning to where it started, for a block on `m` vertices.
fn block_group_order(block: &Graph) -> u64 {
    let m = block.n();
    if m <= 2 {
        1
    } else if block.is_cycle_graph() {
        m as u64 - 1
    } else if is_theta_122(block) {
        120
    } else if block.is_bipartite() {
        factorial(m - 1) / 2
    } else {
        factorial(m - 1)
    }
}

/// Number of components of `FS(Star_n, Y)`, from the block structure of
/// `Y`. Nobody but the center crosses a cut vertex, so the rearrangements
/// available with the center at home multiply over blocks.
pub fn star_component_count(y: &Graph) -> Result<u64> {
    let n = y.n();
    let mut total = 0;
    for comp in y.components() {
        let (h, _) = y.induced_subgraph(&comp)?;
        let mut order = 1u64;
        for block in h.blocks() {
            let (b, _) = h.induced_subgraph(&block)?;
            order *= block_group_order(&b);
        }
        total += factorial(n - 1) / order;
    }
    Ok(total)
}

/// Number of components of `FS(K_n, Y)`: one per way of sharing the people
/// out among the components of `Y`.
pub fn kn_component_count(y: &Graph) -> u64 {
    let sizes: Vec<usize> = y.components().iter().map(Vec::len).collect();
    sizes.iter().fold(factorial(y.n()), |acc, &s| acc / factorial(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Configuration;
    use crate::graph::Family;

    fn occ(v: &[usize]) -> Configuration {
        Configuration::from_occupants(v.to_vec()).unwrap()
    }

    #[test]
    fn theta_122_transposition_is_separate() {
        let y = ThetaParams { i: 1, j: 2, k: 2 }.graph();
        let x = Family::Star.build(7).unwrap();
        let a = Configuration::identity(7);
        let b = occ(&[0, 2, 1, 3, 4, 5, 6]);
        let r = same_component(&x, &y, &a, &b, &OracleOptions::default()).unwrap();
        assert_eq!(r, Classification { same: false, certificate: CertificateKind::Theta122 });
    }

    #[test]
    fn cycle_rotation_is_reachable() {
        let y = Family::Cycle.build(5).unwrap();
        let x = Family::Star.build(5).unwrap();
        let a = Configuration::identity(5);
        let b = occ(&[0, 2, 3, 4, 1]);
        let r = same_component(&x, &y, &a, &b, &OracleOptions::default()).unwrap();
        assert_eq!(r, Classification { same: true, certificate: CertificateKind::CycleOrder });
    }

    #[test]
    fn complete_on_path_reaches_reversal() {
        let y = Family::Path.build(4).unwrap();
        let x = Family::Complete.build(4).unwrap();
        let r = same_component(&x, &y, &Configuration::identity(4), &Configuration::reversal(4), &OracleOptions::default()).unwrap();
        assert_eq!(r, Classification { same: true, certificate: CertificateKind::KnComponents });
    }

    #[test]
    fn star_with_another_center() {
        // Star centered on person 2; on the path 0-1-2 only the center moves.
        let x = Graph::new(3, [(2, 0), (2, 1)]).unwrap();
        let y = Family::Path.build(3).unwrap();
        let a = occ(&[0, 1, 2]);
        let b = occ(&[0, 2, 1]);
        let c = occ(&[1, 0, 2]);
        let o = OracleOptions::default();
        assert!(same_component(&x, &y, &a, &b, &o).unwrap().same);
        assert!(!same_component(&x, &y, &a, &c, &o).unwrap().same);
    }

    #[test]
    fn component_counts_for_named_shapes() {
        assert_eq!(star_component_count(&Family::Cycle.build(6).unwrap()).unwrap(), 24);
        assert_eq!(star_component_count(&ThetaParams { i: 1, j: 2, k: 2 }.graph()).unwrap(), 6);
        assert_eq!(star_component_count(&Family::Path.build(5).unwrap()).unwrap(), 24);
        assert_eq!(kn_component_count(&Graph::new(4, [(0, 1), (2, 3)]).unwrap()), 6);
    }
}
