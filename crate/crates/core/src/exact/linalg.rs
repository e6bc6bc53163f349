//! Gaussian elimination over exact fields (Q and Q(ζ_m)).

use rug::Rational;

use crate::error::{Error, Result};
use crate::exact::cyclotomic::Cyclotomic;

pub trait ExactField: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_el(&self) -> bool;
    fn f_add(&self, o: &Self) -> Self;
    fn f_sub(&self, o: &Self) -> Self;
    fn f_mul(&self, o: &Self) -> Self;
    /// Inverse of a nonzero element.
    fn f_inv(&self) -> Self;
}

impl ExactField for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn one_like(&self) -> Self {
        Rational::from(1)
    }
    fn is_zero_el(&self) -> bool {
        *self == 0
    }
    fn f_add(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn f_sub(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn f_mul(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn f_inv(&self) -> Self {
        Rational::from(self.recip_ref())
    }
}

impl ExactField for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic::zero(self.order())
    }
    fn one_like(&self) -> Self {
        Cyclotomic::one(self.order())
    }
    fn is_zero_el(&self) -> bool {
        self.is_zero()
    }
    fn f_add(&self, o: &Self) -> Self {
        self + o
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn f_inv(&self) -> Self {
        self.inverse().expect("inverse of nonzero cyclotomic")
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<T: ExactField>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero_el()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].f_inv();
        for j in c..cols {
            m[r][j] = m[r][j].f_mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero_el() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = f.f_mul(&m[r][j]);
                    m[i][j] = m[i][j].f_sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Unique solution of the square system a·x = b.
pub fn solve_exact<T: ExactField>(a: &[Vec<T>], b: &[T]) -> Result<Vec<T>> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return Err(Error::Singular);
    }
    Ok(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Solution of a possibly rectangular consistent system with a unique
/// solution; errors when inconsistent or underdetermined.
pub fn solve_unique<T: ExactField>(a: &[Vec<T>], b: &[T]) -> Result<Vec<T>> {
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return Err(Error::Unsolvable("inconsistent system".into()));
    }
    if pivots.len() != n {
        return Err(Error::Unsolvable("underdetermined system".into()));
    }
    Ok((0..n).map(|i| aug[i][n].clone()).collect())
}

/// Basis of the right kernel {x : a·x = 0}; `ncols` is needed when `a` has no rows.
pub fn nullspace<T: ExactField>(a: &[Vec<T>], ncols: usize, unit: &T) -> Vec<Vec<T>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![unit.zero_like(); ncols];
        v[f] = unit.one_like();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = m[r][f].zero_like().f_sub(&m[r][f]);
        }
        basis.push(v);
    }
    basis
}

pub fn inverse_exact<T: ExactField>(a: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let n = a.len();
    let unit = a[0][0].one_like();
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { unit.clone() } else { unit.zero_like() });
            }
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Singular);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    #[test]
    fn solve_and_inverse() {
        let a = vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(3, 1)]];
        let x = solve_exact(&a, &[q(3, 1), q(5, 1)]).unwrap();
        assert_eq!(x, vec![q(4, 5), q(7, 5)]);
        let inv = inverse_exact(&a).unwrap();
        assert_eq!(inv[0][0], q(3, 5));
        let sing = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert!(solve_exact(&sing, &[q(1, 1), q(1, 1)]).is_err());
    }

    #[test]
    fn kernel() {
        let a = vec![vec![q(1, 1), q(2, 1), q(3, 1)]];
        let ns = nullspace(&a, 3, &q(1, 1));
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s = (&v[0] + &v[1] * q(2, 1)) + &v[2] * q(3, 1);
            assert_eq!(s, 0);
        }
    }
}
