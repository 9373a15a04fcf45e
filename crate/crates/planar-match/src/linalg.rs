//! Fraction-free (Bareiss) integer elimination.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Exact determinant by fraction-free Gaussian elimination with row pivoting.
pub fn bareiss_determinant(mut a: IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&p| !a[p][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        if k + 1 == n {
            break;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let mut v = pivot * &row[j];
                if !factor.is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Fraction-free Gauss-Jordan on `[A | I]`. Returns `(d, X)` with
/// `d = ±det(A)` and `X = d · A⁻¹`, or `None` when `A` is singular.
pub fn bareiss_inverse(a: &IntMatrix) -> Option<(BigInt, IntMatrix)> {
    let n = a.len();
    if n == 0 {
        return Some((BigInt::one(), Vec::new()));
    }
    let mut m: IntMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let p = (k + 1..n).find(|&p| !m[p][k].is_zero())?;
            m.swap(k, p);
        }
        let pivot_row = m[k].clone();
        let pivot = &pivot_row[k];
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let mut v = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[k] = BigInt::zero();
        }
        prev = pivot_row[k].clone();
    }
    let d = prev;
    let x = m.into_iter().map(|row| row[n..].to_vec()).collect();
    Some((d, x))
}

/// Exact integer square root, if `v` is a perfect square.
pub fn exact_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(bareiss_determinant(m(&[&[0, 1], &[-1, 0]])), BigInt::from(1));
        assert_eq!(bareiss_determinant(m(&[&[2, 3], &[4, 5]])), BigInt::from(-2));
        assert_eq!(bareiss_determinant(m(&[&[1, 2], &[2, 4]])), BigInt::from(0));
        let a = m(&[&[0, 2, -1, 3], &[1, 0, 4, -2], &[3, 1, 0, 5], &[-2, 6, 1, 0]]);
        // value cross-checked with an independent CAS
        assert_eq!(bareiss_determinant(a), BigInt::from(-71));
    }

    #[test]
    fn inverse_matches_rational() {
        let a = m(&[&[0, 2, -1, 3], &[1, 0, 4, -2], &[3, 1, 0, 5], &[-2, 6, 1, 0]]);
        let (d, x) = bareiss_inverse(&a).unwrap();
        assert_eq!(d.abs(), BigInt::from(71));
        // A · X = d · I
        for (i, row) in a.iter().enumerate() {
            for j in 0..4 {
                let s: BigInt = row.iter().zip(&x).map(|(aik, xk)| aik * &xk[j]).sum();
                let want = if i == j { d.clone() } else { BigInt::zero() };
                assert_eq!(s, want, "entry {i},{j}");
            }
        }
        let r = BigRational::new(x[0][0].clone(), d);
        assert!(r.denom() > &BigInt::zero());
    }

    #[test]
    fn singular_inverse() {
        assert!(bareiss_inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }
}
