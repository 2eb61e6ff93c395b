//! Exact polynomial analysis: dominance between signature classes, the optimal
//! win probability as a piecewise polynomial, and the size tables.

mod algebraic;
mod dominance;
mod poly;
mod psi;
mod tables;

pub use algebraic::{real_roots, AlgebraicNumber};
pub use dominance::{
    crossing_width, dominance, dominance_graph, dominance_on, sign_on, Dominance, DominanceGraph,
    FIVE_PLAYER_CLASSES,
};
pub use poly::ProbPoly;
pub use psi::{
    nasopt_at, nasopt_count, psi_closed_form, psi_curve, psi_solver, NasoptReport, PiecewisePsi,
    PsiPiece, PsiRow,
};
pub use tables::{
    binomial, complexity_row, complexity_table, covering_check, display_count, k_value, scientific,
    ComplexityRow, CoveringReport, COVERING_COMPUTE_MAX_N, K_TABLE,
};

/// Loss polynomial of a signature class.
pub fn signature_poly(sig: &crate::adequate::Signature) -> ProbPoly {
    ProbPoly::from_signature(sig)
}
