//! Exact computations with Rees algebras over polynomial rings in
//! characteristic zero and positive characteristic.
//!
//! A Rees algebra `⊕ I_k W^k` is presented by finitely many weighted
//! generators `g_i W^{n_i}`. The crate builds Diff-closures with Hasse
//! derivatives, singular loci, coefficient algebras along coordinate
//! retractions, the one-dimensional invariant `λ`, and monomial-curve probes
//! that refute (or fail to refute) equality of integral closures.

pub mod closure;
pub mod coeff;
pub mod error;
pub mod field;
pub mod grobner;
pub mod parse;
pub mod poly;
pub mod probe;
pub mod rees;
pub mod ring;
pub mod sing;
pub mod transform;

pub use closure::{diff_close, is_diff_closed, ClosureOptions, Variant};
pub use coeff::{
    coefficient_algebra, integral_member_1d, lambda, same_closure_1d, sl, CoeffAlgebra, LambdaValue, Recipe, Split,
};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use grobner::{buchberger, ideal_member, member_bounded, GroebnerBasis, MonomialOrder};
pub use parse::parse_poly;
pub use poly::{Poly, VanishingOrder};
pub use probe::{
    curve_pullback, equal_closure_probe, halfspace_check, main_theorem_check, newton_support, FinitePair,
    MonomialCurve, ProbeVerdict,
};
pub use rees::{
    graded_piece, integral_witness, piece_member, saturate_weights, veronese, PieceMode, ReesAlgebra, WeightedGen,
};
pub use ring::{ExpVector, PolyRing, Ring};
pub use sing::{in_sing, sing_points, sing_presentation, SingPresentation};
pub use transform::{total_transform, RingMap};
