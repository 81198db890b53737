//! Small exact linear algebra over the integers and rationals.

use alloc::vec;
use alloc::vec::Vec;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::Q;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend_from_slice(row);
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<i64>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.data[i * c + j] = v;
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == i64::from(i == j)))
    }
}

type R = Ratio<i128>;

fn eliminate(mut a: Vec<Vec<R>>) -> (Vec<Vec<R>>, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..cols {
                    let t = a[r][j] * f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank over Q of an integer matrix given by rows.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let a = rows
        .iter()
        .map(|r| r.iter().map(|&x| R::from_integer(x as i128)).collect())
        .collect();
    eliminate(a).1.len()
}

/// Basis of the rational kernel of an integer matrix, scaled to primitive integer vectors.
pub fn kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let a: Vec<Vec<R>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| R::from_integer(x as i128)).collect())
        .collect();
    let (red, pivots) = if a.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        eliminate(a)
    };
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::new();
    for &f in &free {
        let mut v = vec![R::zero(); ncols];
        v[f] = R::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -red[i][f];
        }
        let den = v
            .iter()
            .fold(1i128, |acc, x| num_integer::lcm(acc, *x.denom()));
        let ints: Vec<i128> = v
            .iter()
            .map(|x| (x * R::from_integer(den)).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(0i128, |acc, &x| num_integer::gcd(acc, x))
            .max(1);
        out.push(ints.iter().map(|&x| (x / g) as i64).collect());
    }
    out
}

/// Solves a square nonsingular rational system `a x = b`.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..=n {
                    let t = m[c][j] * f;
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n]).collect())
}

/// Inverse of a square nonsingular rational matrix.
pub fn inverse(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Q> = (0..n)
            .map(|i| if i == j { Q::one() } else { Q::zero() })
            .collect();
        cols.push(solve(a, &e)?);
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i]).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6]];
        assert_eq!(rank(&rows), 1);
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert_eq!(v[0] + 2 * v[1] + 3 * v[2], 0);
        }
    }

    #[test]
    fn solve_two_by_two() {
        let a = vec![vec![Q::from(-3), Q::from(1)], vec![Q::from(1), Q::from(-2)]];
        let x = solve(&a, &[Q::from(1), Q::from(0)]).unwrap();
        assert_eq!(x, vec![Q::new(-2, 5), Q::new(-1, 5)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][1], Q::new(-1, 5));
    }

    #[test]
    fn matrix_product() {
        let a = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(a.mul(&a).is_identity());
        assert_eq!(a.mul_vec(&[3, 4]), vec![4, 3]);
    }
}
