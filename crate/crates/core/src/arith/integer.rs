//! Integer helpers: gcd of sets and Bézout coefficients.

use num_integer::Integer;

/// gcd of two machine integers; `gcd(0, 0) = 0`.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// gcd of a collection. The empty collection and all-zero collections give 0.
pub fn gcd_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(0, gcd_u64)
}

/// Bézout coefficients for a list of nonnegative integers, folded left to
/// right with the extended Euclidean algorithm.
///
/// Returns `(g, x)` with `g = gcd(values)` and `Σ x_i·values_i = g`.
/// Zero entries receive coefficient 0.
pub fn bezout_fold(values: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut coeffs = vec![0i64; values.len()];
    for (i, &v) in values.iter().enumerate() {
        if v == 0 {
            continue;
        }
        if g == 0 {
            g = v;
            coeffs[i] = 1;
            continue;
        }
        let e = g.extended_gcd(&v);
        // e.gcd = e.x·g + e.y·v; rescale the running coefficients by e.x.
        for c in coeffs.iter_mut().take(i) {
            *c *= e.x;
        }
        coeffs[i] = e.y;
        g = e.gcd;
    }
    if g < 0 {
        g = -g;
        for c in coeffs.iter_mut() {
            *c = -*c;
        }
    }
    (g, coeffs)
}
