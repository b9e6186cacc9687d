//! Fixtures shared by the benchmarks.

use genfermat::{Curve, CurveSpec, Fe, GaloisField};

/// `x^n + y^n = 1` over F_{p^h}.
pub fn fermat(p: u64, h: u32, n: u32) -> Curve {
    let f = GaloisField::new(p, h, None).expect("valid field");
    CurveSpec::two_term(&f, n, n, Fe::ONE, Fe::ONE)
        .validate()
        .expect("valid curve")
}

/// `x^n y^m + x^n + y^m = 1` over F_{p^h}.
pub fn three_term(p: u64, h: u32, n: u32, m: u32) -> Curve {
    let f = GaloisField::new(p, h, None).expect("valid field");
    CurveSpec::three_term(&f, n, m, Fe::ONE, Fe::ONE, Fe::ONE)
        .validate()
        .expect("valid curve")
}
