//! Rational Gaussian elimination: reduced row echelon form, rank and kernel.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{lcm_of_denominators, Rational};

/// Reduced row echelon form of `m` (which has `ncols` columns).
/// Returns the nonzero rows and the pivot column of each.
pub fn rref(m: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        let prow = a[row].clone();
        for (i, r) in a.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, y) in r.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    a.truncate(row);
    (a, pivots)
}

/// Rank of `m`.
pub fn rank(m: &[Vec<Rational>], ncols: usize) -> usize {
    rref(m, ncols).1.len()
}

/// A basis of `{v : m v = 0}`, one vector per free column of the RREF.
///
/// `ncols` is needed because `m` may have no rows.
pub fn kernel_basis(m: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = -&row[f];
            }
            v
        })
        .collect()
}

/// Scale a nonzero vector to the primitive integer vector on the same ray
/// whose first nonzero entry is positive.
pub fn primitive_integer_direction(v: &[Rational]) -> Vec<Rational> {
    let l = lcm_of_denominators(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x.clone() * Rational::from(l.clone())).to_bigint().expect("integral"))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let first_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if first_negative { -g } else { g };
    ints.into_iter()
        .map(|x| Rational::from(x / &g))
        .collect()
}

/// Matrix-vector product `m v`.
pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// True if `v` lies in the span of `basis` (vectors of equal length).
pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    rank(basis, v.len()) == rank(&with, v.len())
}

/// `1` if all denominators are one.
pub fn is_integral(v: &[Rational]) -> bool {
    lcm_of_denominators(v).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = vec![ints(&[1, 0]), ints(&[0, 1])];
        assert!(kernel_basis(&m, 2).is_empty());
    }

    #[test]
    fn antisymmetric_row() {
        let m = vec![ints(&[1, -1])];
        let k = kernel_basis(&m, 2);
        assert_eq!(k.len(), 1);
        assert_eq!(primitive_integer_direction(&k[0]), ints(&[1, 1]));
    }

    #[test]
    fn kernel_vectors_are_in_kernel_and_independent() {
        let m = vec![ints(&[1, 2, 3, 4]), ints(&[2, 4, 6, 8]), ints(&[0, 1, -1, 2])];
        let k = kernel_basis(&m, 4);
        assert_eq!(k.len(), 4 - rank(&m, 4));
        for v in &k {
            assert!(mat_vec(&m, v).iter().all(Rational::is_zero));
        }
        assert_eq!(rank(&k, 4), k.len());
    }

    #[test]
    fn empty_matrix_kernel_is_everything() {
        assert_eq!(kernel_basis(&[], 3).len(), 3);
    }

    #[test]
    fn span_membership() {
        let b = vec![ints(&[1, 0, 1]), ints(&[0, 1, 1])];
        assert!(in_span(&b, &ints(&[2, 3, 5])));
        assert!(!in_span(&b, &ints(&[1, 1, 1])));
    }
}
