//! Routing in `FS(Star_n, Y)`: the center (person 0) is a hole that may
//! trade places with any neighbour.

pub mod gadgets;
pub mod solve;
pub mod theta;
pub mod transport;
pub mod walk;

pub use solve::{solve_star, solve_star_biconnected, star_reachable};
pub use theta::{theta_rotate, type_ab_move, move_s_along_path, RotationCase, RotationPlan};
pub use gadgets::{
    elementary_3cycle, elementary_double_transposition, elementary_transposition, transport_triple, Gadgets,
};
pub use walk::{Walker, CENTER};
