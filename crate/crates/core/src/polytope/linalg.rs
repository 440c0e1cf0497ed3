//! Exact linear algebra over the integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det_bareiss(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let value = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = value / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn det_i64(matrix: &[Vec<i64>]) -> BigInt {
    let big: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    det_bareiss(&big)
}

/// Rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = &a[i][c] / &pivot;
            for j in c..cols {
                let delta = &factor * &a[r][j];
                a[i][j] -= delta;
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Solves the square system `m x = b`; `None` when `m` is singular.
pub fn solve(m: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().zip(b).map(|(row, rhs)| row.iter().cloned().chain(std::iter::once(rhs.clone())).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for j in c..=n {
            a[c][j] = &a[c][j] / &pivot;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in c..=n {
                    let delta = &factor * &a[c][j];
                    a[i][j] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    normalize(ints)
}

/// Divides an integer vector by the gcd of its entries.
pub fn normalize(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x = &*x / &g;
        }
    }
    v
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
