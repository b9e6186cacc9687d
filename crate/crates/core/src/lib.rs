//! Generalized Fermat curves `a x^n + b y^m = 1` and
//! `a x^n y^m + b x^n + c y^m = 1` over finite fields: classicality with
//! respect to lines and conics, rational point counts and upper bounds.

pub mod bipoly;
pub mod classify;
pub mod counting;
pub mod curve;
pub mod error;
pub mod field;
pub mod funcfield;
pub mod json;
pub mod poly;
pub mod scan;
pub mod verify;
pub mod wronskian;

pub use bipoly::BiPoly;
pub use classify::{
    classify, classify_conics, classify_lines, identity_check, identity_polynomial, CaseLabel,
    ClassificationRecord, Method, Verdict,
};
pub use counting::{
    count_affine, count_formula, count_formula_with, count_smooth_model, generic_bounds,
    hasse_weil_upper, sv_bound, BoundReport, CountMethod, CountReport, SquareReading,
};
pub use curve::{Curve, CurveSpec, Family, InfinityProfile};
pub use error::{Error, Result};
pub use field::{Fe, FieldSpec, GaloisField};
pub use funcfield::{FfElem, FunctionField};
pub use poly::Poly;
pub use wronskian::{
    frobenius_incidence_scan, frobenius_incidence_scan_ext, is_classical_det,
    is_frobenius_classical_det, osculating_conic, Conic, DetReport, LinearSystem, WronskianOracle,
};
