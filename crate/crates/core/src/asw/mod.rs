//! Artin-Schreier-Witt cokernels `W_n(A) / P(W_n(A))` for `A = F_q[x, 1/h]`,
//! truncated to a degree window.

mod cokernel;
mod reduce;

use thiserror::Error;

use crate::algebra::{AlgebraError, CoordinateRing, RingElem};
use crate::witt::{WittError, WittVector};

pub use cokernel::{
    abelianization_report, cokernel_basis, cokernel_grid, cokernel_grid_with, count_cyclic_covers,
    prime_to_p_rank, verschiebung_embedding_check, AbelianizationReport, CokernelStructure,
    CoverCount, VerschiebungReport,
};
pub use reduce::{reduce_representative, Pos, Reducer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AswError {
    #[error("component {component} has order {order}, beyond the working bound {bound}")]
    NotInWindow { component: usize, order: usize, bound: usize },
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Degree window `Win(d)`: polynomial part of degree `<= d` and pole order
/// `<= d` at every finite puncture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    pub d: usize,
}

impl Window {
    pub fn new(d: usize) -> Window {
        Window { d }
    }

    /// `1 + d (1 + s)` over `F_q`.
    pub fn dim(&self, ring: &CoordinateRing) -> usize {
        1 + self.d * (1 + ring.s())
    }
}

/// `a` for length one, `(a, b, ...)` otherwise.
pub fn format_witt(ring: &CoordinateRing, v: &WittVector<RingElem>) -> String {
    let parts: Vec<String> = v.components().iter().map(|c| ring.format(c)).collect();
    if parts.len() == 1 {
        parts.into_iter().next().unwrap()
    } else {
        format!("({})", parts.join(", "))
    }
}
