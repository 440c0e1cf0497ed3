//! Double description method for pointed polyhedral cones
//! `{x : a_i . x >= 0}`, in exact integer arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::bitset::BitSet;
use super::linalg::{dot, normalize, primitive, rank, solve};
use crate::error::PolytopeError;

/// An extreme ray with the set of constraints it makes tight.
#[derive(Clone, Debug)]
pub struct Ray {
    pub vector: Vec<BigInt>,
    pub tight: BitSet,
}

/// Extreme rays of `{x : rows[i] . x >= 0 for all i}`.
///
/// The cone must be pointed, i.e. the rows must span the ambient space;
/// otherwise `Degenerate` is returned.
pub fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Result<Vec<Ray>, PolytopeError> {
    if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
        return Err(PolytopeError::DimensionMismatch { expected: dim, found: bad.len() });
    }
    let to_q = |r: &Vec<BigInt>| r.iter().cloned().map(BigRational::from_integer).collect::<Vec<_>>();

    // greedy basis of the row space
    let mut basis: Vec<usize> = Vec::new();
    let mut basis_rows: Vec<Vec<BigRational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        basis_rows.push(to_q(row));
        if rank(&basis_rows) == basis_rows.len() {
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        } else {
            basis_rows.pop();
        }
    }
    if basis.len() < dim {
        return Err(PolytopeError::Degenerate);
    }

    // the simplicial cone cut out by the basis rows
    let mut rays = Vec::with_capacity(dim);
    for k in 0..dim {
        let rhs: Vec<BigRational> =
            (0..dim).map(|i| BigRational::from_integer(BigInt::from(i32::from(i == k)))).collect();
        let x = solve(&basis_rows, &rhs).expect("basis rows are independent");
        let mut tight = BitSet::new(rows.len());
        for (i, &b) in basis.iter().enumerate() {
            if i != k {
                tight.insert(b);
            }
        }
        rays.push(Ray { vector: primitive(&x), tight });
    }

    let mut done = BitSet::new(rows.len());
    for &b in &basis {
        done.insert(b);
    }
    for (i, row) in rows.iter().enumerate() {
        if done.contains(i) {
            continue;
        }
        done.insert(i);
        rays = add_constraint(rays, i, row, dim);
    }
    Ok(rays)
}

fn add_constraint(rays: Vec<Ray>, index: usize, row: &[BigInt], dim: usize) -> Vec<Ray> {
    let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.vector)).collect();
    let positive: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
    let negative: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
    if negative.is_empty() {
        return rays
            .into_iter()
            .zip(values)
            .map(|(mut r, v)| {
                if v.is_zero() {
                    r.tight.insert(index);
                }
                r
            })
            .collect();
    }

    let mut created = Vec::new();
    for &p in &positive {
        for &q in &negative {
            let common = rays[p].tight.intersection(&rays[q].tight);
            if common.len() + 2 < dim {
                continue;
            }
            // combinatorial adjacency: no third ray is tight on all of `common`
            let adjacent = rays.iter().enumerate().all(|(k, r)| k == p || k == q || !common.is_subset(&r.tight));
            if !adjacent {
                continue;
            }
            let vp = &values[p];
            let vq = -&values[q];
            let vector: Vec<BigInt> =
                rays[p].vector.iter().zip(&rays[q].vector).map(|(a, b)| a * &vq + b * vp).collect();
            let mut tight = common;
            tight.insert(index);
            created.push(Ray { vector: normalize(vector), tight });
        }
    }

    let mut kept: Vec<Ray> = rays
        .into_iter()
        .zip(values)
        .filter(|(_, v)| !v.is_negative())
        .map(|(mut r, v)| {
            if v.is_zero() {
                r.tight.insert(index);
            }
            r
        })
        .collect();
    kept.extend(created);
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(data: &[&[i64]]) -> Vec<Vec<BigInt>> {
        data.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn orthant_has_coordinate_rays() {
        let r = extreme_rays(&rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3).unwrap();
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn square_cone() {
        // homogenised unit square: t >= 0 plus 0 <= x, y <= t
        let r = extreme_rays(&rows(&[&[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1]]), 3).unwrap();
        let mut v: Vec<Vec<i64>> =
            r.iter().map(|ray| ray.vector.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
        v.sort();
        assert_eq!(v, vec![vec![1, 0, 0], vec![1, 0, 1], vec![1, 1, 0], vec![1, 1, 1]]);
    }

    #[test]
    fn non_pointed_cone_is_rejected() {
        assert!(matches!(extreme_rays(&rows(&[&[1, 0, 0], &[0, 1, 0]]), 3), Err(PolytopeError::Degenerate)));
    }
}
