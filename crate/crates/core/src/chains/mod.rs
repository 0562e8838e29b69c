//! m-chains relative to v_inf: intersection index, standard chains, circles,
//! central stabilizers, the β apparatus and generic intersections.

mod beta;
mod circle;
mod generic;
mod rational_point;
mod stabilizer;
mod standard;
mod usub;

pub use beta::*;
pub use circle::*;
pub use generic::*;
pub use rational_point::{norm_root, rational_chart_point, two_squares};
pub use stabilizer::*;
pub use standard::*;
pub use usub::*;

use crate::shilov::{MChain, ShilovPoint};

/// `dim(x ∩ V_T)`
pub fn intersection_index(x: &ShilovPoint, t: &MChain) -> usize {
    x.subspace()
        .intersect(t.subspace())
        .map(|s| s.dim())
        .unwrap_or(0)
}

/// Index at v_inf.
pub fn vinf_index(t: &MChain) -> usize {
    intersection_index(&ShilovPoint::v_inf(t.space()), t)
}
