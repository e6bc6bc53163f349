//! Square matrices with entries affine in `a` over cyclotomic fields.

use std::fmt;

use rug::Rational;

use crate::error::{Error, Result};
use crate::exact::cyclotomic::Cyclotomic;
use crate::exact::param::{APoly, ParamPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamMatrix {
    n: usize,
    entries: Vec<Vec<ParamPoly>>,
}

impl ParamMatrix {
    pub fn from_entries(entries: Vec<Vec<ParamPoly>>) -> Self {
        let n = entries.len();
        assert!(entries.iter().all(|r| r.len() == n), "matrix must be square");
        ParamMatrix { n, entries }
    }

    /// Builds a matrix from rows of `ParamPoly::parse` strings.
    pub fn parse_rows(rows: &[&[&str]]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| ParamPoly::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("matrix rows must form a square".into()));
        }
        Ok(ParamMatrix { n, entries })
    }

    pub fn from_cyclotomic(rows: Vec<Vec<Cyclotomic>>) -> Self {
        Self::from_entries(
            rows.into_iter().map(|r| r.into_iter().map(ParamPoly::constant).collect()).collect(),
        )
    }

    pub fn from_rational(rows: &[Vec<Rational>]) -> Self {
        Self::from_entries(
            rows.iter()
                .map(|r| r.iter().map(|x| ParamPoly::constant_rat(x.clone())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { ParamPoly::one() } else { ParamPoly::zero() }).collect())
            .collect();
        ParamMatrix { n, entries }
    }

    /// Identity plus `c` at 1-based position (i, j).
    pub fn elementary(n: usize, i: usize, j: usize, c: ParamPoly) -> Self {
        let mut m = Self::identity(n);
        m.entries[i - 1][j - 1] = m.entries[i - 1][j - 1].add(&c);
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// 1-based entry access.
    pub fn at(&self, i: usize, j: usize) -> &ParamPoly {
        &self.entries[i - 1][j - 1]
    }

    pub fn entries(&self) -> &[Vec<ParamPoly>] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entries[j][i].clone()).collect())
            .collect();
        ParamMatrix { n: self.n, entries }
    }

    pub fn add(&self, o: &Self) -> Self {
        let entries = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entries[i][j].add(&o.entries[i][j])).collect())
            .collect();
        ParamMatrix { n: self.n, entries }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let entries = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entries[i][j].sub(&o.entries[i][j])).collect())
            .collect();
        ParamMatrix { n: self.n, entries }
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|r| r.iter().map(|e| e.neg()).collect()).collect();
        ParamMatrix { n: self.n, entries }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_a_free(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.c1.is_zero())
    }

    pub fn specialize(&self, a: &Rational) -> Vec<Vec<Cyclotomic>> {
        self.entries.iter().map(|r| r.iter().map(|e| e.specialize(a)).collect()).collect()
    }

    pub fn specialize_matrix(&self, a: &Rational) -> ParamMatrix {
        ParamMatrix::from_cyclotomic(self.specialize(a))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::identity(self.n);
        for _ in 0..e {
            acc = mat_mul(&acc, self)?;
        }
        Ok(acc)
    }

    /// Smallest k in 1..=max with self^k = I.
    pub fn order(&self, max: u32) -> Result<Option<u32>> {
        let mut acc = self.clone();
        for k in 1..=max {
            if acc.is_identity() {
                return Ok(Some(k));
            }
            acc = mat_mul(&acc, self)?;
        }
        Ok(None)
    }

    /// Rows of display strings, the exact-matrix serialization format.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
    }

    fn to_apoly(&self) -> Vec<Vec<APoly>> {
        self.entries.iter().map(|r| r.iter().map(APoly::from_param).collect()).collect()
    }
}

impl fmt::Display for ParamMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_string_rows() {
            writeln!(f, "[ {} ]", row.join(" | "))?;
        }
        Ok(())
    }
}

pub fn mat_mul(a: &ParamMatrix, b: &ParamMatrix) -> Result<ParamMatrix> {
    assert_eq!(a.n, b.n, "dimension mismatch");
    let n = a.n;
    let mut entries = vec![vec![ParamPoly::zero(); n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let mut acc = ParamPoly::zero();
            for k in 0..n {
                let (x, y) = (&a.entries[i][k], &b.entries[k][j]);
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                acc = acc.add(&x.mul(y)?);
            }
            *slot = acc;
        }
    }
    Ok(ParamMatrix { n, entries })
}

/// Product of a list of matrices, left to right.
pub fn mat_product(ms: &[&ParamMatrix]) -> Result<ParamMatrix> {
    let mut acc = ParamMatrix::identity(ms[0].dim());
    for m in ms {
        acc = mat_mul(&acc, m)?;
    }
    Ok(acc)
}

/// Exact inverse of I + N with N nilpotent, as the finite Neumann series.
pub fn mat_inverse_unipotent(a: &ParamMatrix) -> Result<ParamMatrix> {
    let n = a.n;
    let id = ParamMatrix::identity(n);
    let nil = a.sub(&id);
    // N^n must vanish.
    let mut p = nil.clone();
    for _ in 1..n {
        p = mat_mul(&p, &nil).map_err(|_| Error::NonUnipotent)?;
    }
    if p.entries.iter().flatten().any(|e| !e.is_zero()) {
        return Err(Error::NonUnipotent);
    }
    let neg = nil.neg();
    let mut acc = id.clone();
    let mut term = id;
    for _ in 1..n {
        term = mat_mul(&term, &neg)?;
        acc = acc.add(&term);
    }
    Ok(acc)
}

fn standard_form(n: usize) -> Vec<Vec<APoly>> {
    let one = APoly::from_param(&ParamPoly::one());
    let mone = APoly::from_param(&ParamPoly::one().neg());
    let mut j = vec![vec![APoly::zero(); n]; n];
    if n == 4 {
        j[0][3] = one.clone();
        j[1][2] = one;
        j[3][0] = mone.clone();
        j[2][1] = mone;
    }
    j
}

fn apoly_mul(a: &[Vec<APoly>], b: &[Vec<APoly>]) -> Vec<Vec<APoly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(APoly::zero(), |acc, k| acc.add(&a[i][k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

/// True iff AᵀJA = J identically in `a`, with J[1,4] = J[2,3] = 1.
pub fn symplectic_check(a: &ParamMatrix) -> bool {
    if a.n != 4 {
        return false;
    }
    let j = standard_form(4);
    let m = a.to_apoly();
    let mt = a.transpose().to_apoly();
    let lhs = apoly_mul(&apoly_mul(&mt, &j), &m);
    (0..4).all(|r| (0..4).all(|c| lhs[r][c].sub(&j[r][c]).is_zero()))
}

/// Exact equality of two products computed without the degree cap;
/// used for identities whose intermediate steps are quadratic in `a`.
pub fn uncapped_product(ms: &[&ParamMatrix]) -> Result<ParamMatrix> {
    let mut acc = ParamMatrix::identity(ms[0].dim()).to_apoly();
    for m in ms {
        acc = apoly_mul(&acc, &m.to_apoly());
    }
    let entries = acc
        .into_iter()
        .map(|r| r.into_iter().map(|e| e.to_param()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(ParamMatrix::from_entries(entries))
}

/// Smallest k in 1..=max with A^k = I identically in `a`, with powers
/// computed without the degree cap.
pub fn uncapped_order(a: &ParamMatrix, max: u32) -> Option<u32> {
    let n = a.n;
    let base = a.to_apoly();
    let one = APoly::from_param(&ParamPoly::one());
    let is_identity = |m: &[Vec<APoly>]| {
        (0..n).all(|i| (0..n).all(|j| if i == j { m[i][j].sub(&one).is_zero() } else { m[i][j].is_zero() }))
    };
    let mut acc = base.clone();
    for k in 1..=max {
        if is_identity(&acc) {
            return Some(k);
        }
        acc = apoly_mul(&acc, &base);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    fn quintic_l() -> ParamMatrix {
        ParamMatrix::parse_rows(&[
            &["1", "1", "5/2 + a", "0"],
            &["0", "1", "5", "0"],
            &["0", "0", "1", "0"],
            &["0", "0", "0", "1"],
        ])
        .unwrap()
    }

    #[test]
    fn unipotent_inverse() {
        let l = quintic_l();
        let li = mat_inverse_unipotent(&l).unwrap();
        assert!(mat_mul(&li, &l).unwrap().is_identity());
        assert!(mat_mul(&l, &li).unwrap().is_identity());
        let m = ParamMatrix::parse_rows(&[&["2", "0"], &["0", "1"]]).unwrap();
        assert_eq!(mat_inverse_unipotent(&m), Err(Error::NonUnipotent));
    }

    #[test]
    fn symplectic_basics() {
        assert!(symplectic_check(&ParamMatrix::identity(4)));
        let bad = ParamMatrix::elementary(4, 1, 2, ParamPoly::one());
        assert!(!symplectic_check(&bad));
        let kr = ParamMatrix::elementary(4, 4, 1, ParamPoly::one());
        assert!(symplectic_check(&kr));
    }

    #[test]
    fn orders() {
        let swap = ParamMatrix::parse_rows(&[&["0", "1"], &["1", "0"]]).unwrap();
        assert_eq!(uncapped_order(&swap, 5), Some(2));
        assert_eq!(uncapped_order(&quintic_l(), 30), None);
        assert_eq!(uncapped_order(&ParamMatrix::identity(3), 3), Some(1));
    }

    #[test]
    fn specialization_commutes() {
        let l = quintic_l();
        let l2 = mat_mul(&l, &l).unwrap();
        let a = q(7, 2);
        let direct = mat_mul(&l.specialize_matrix(&a), &l.specialize_matrix(&a)).unwrap();
        assert_eq!(l2.specialize_matrix(&a), direct);
    }
}
