//! Exact monodromy and Stokes data: M_0 and L from the log structure at the
//! origin, K_R̄ and K_R from the connection identities of the holomorphic
//! basis f_k under z ↦ e^{−2πi}z.

use rug::Rational;

use crate::bases::hatw::{field_order, hat_w_coefficients};
use crate::bases::periods::monodromy_at;
use crate::error::{Error, Result};
use crate::exact::cyclotomic::Cyclotomic;
use crate::exact::linalg::{inverse_exact, solve_unique};
use crate::exact::matrix::ParamMatrix;
use crate::exact::param::ParamPoly;
use crate::exact::rational::qi;
use crate::models::ModelData;

/// Rebuilds an affine-in-a matrix from its values at a = 0 and a = 1 and
/// checks the result at a = 2.
pub fn interpolate_affine<F>(n: usize, mut at: F) -> Result<ParamMatrix>
where
    F: FnMut(&Rational) -> Result<Vec<Vec<Cyclotomic>>>,
{
    let v0 = at(&qi(0))?;
    let v1 = at(&qi(1))?;
    let entries: Vec<Vec<ParamPoly>> = (0..n)
        .map(|i| (0..n).map(|j| ParamPoly::new(v0[i][j].clone(), &v1[i][j] - &v0[i][j])).collect())
        .collect();
    let out = ParamMatrix::from_entries(entries);
    let v2 = at(&qi(2))?;
    if out.specialize(&qi(2)) != v2 {
        return Err(Error::Relation("matrix is not affine in a".into()));
    }
    Ok(out)
}

fn rational_rows(m: Vec<Vec<Rational>>) -> Vec<Vec<Cyclotomic>> {
    m.into_iter().map(|r| r.into_iter().map(|x| Cyclotomic::rational(x, 1)).collect()).collect()
}

/// M_0 with Π(e^{2πi}x) = Π(x)·M_0 on the symplectic period basis.
pub fn monodromy_origin(m: &ModelData) -> Result<ParamMatrix> {
    interpolate_affine(4, |a| monodromy_at(m, a).map(rational_rows))
}

/// L with Ψ(e^{−2πi}z) = Ψ(z)·L: g_1..g_3 inherit the log shift of
/// Π_γ1..Π_γ3, and g_4 has no logarithms.
pub fn l_matrix(m: &ModelData) -> Result<ParamMatrix> {
    let m0 = monodromy_origin(m)?;
    let mut rows: Vec<Vec<ParamPoly>> = m0.entries().to_vec();
    for (i, row) in rows.iter_mut().enumerate() {
        row[3] = if i == 3 { ParamPoly::one() } else { ParamPoly::zero() };
    }
    if (0..3).any(|j| !rows[3][j].is_zero()) {
        return Err(Error::Relation("Π_γ4 enters the monodromy of Π_γ1..Π_γ3".into()));
    }
    Ok(ParamMatrix::from_entries(rows))
}

/// T with ŵ_sel(e^{−2πi}z) = ŵ_sel(z)·T, from φ_k(e^{−2πi}z) = α^k φ_k(z)
/// and the resulting shift ŵ_m ↦ ŵ_{m−1}.
pub fn selection_shift(m: &ModelData) -> Result<Vec<Vec<Cyclotomic>>> {
    let w = hat_w_coefficients(m);
    let d = m.d as usize;
    let sel: Vec<usize> = m.hat_w_selection.iter().map(|&s| s as usize).collect();
    // Columns of `a` are the φ-coordinates of the selected ŵ.
    let a: Vec<Vec<Cyclotomic>> = (0..4).map(|s| sel.iter().map(|&r| w[r][s].clone()).collect()).collect();
    let mut cols = Vec::with_capacity(4);
    for &r in &sel {
        let target: Vec<Cyclotomic> = w[(r + d - 1) % d].clone();
        let x = solve_unique(&a, &target)
            .map_err(|_| Error::Unsolvable(format!("ŵ_{} outside the span of the selection", (r + d - 1) % d)))?;
        cols.push(x);
    }
    Ok((0..4).map(|i| (0..4).map(|j| cols[j][i].clone()).collect()).collect())
}

fn cyc_mul(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Cyclotomic::zero(1), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

/// M = N^{-1}·T·N with f(e^{−2πi}z) = f(z)·M, at a given a.
pub fn holomorphic_monodromy_at(m: &ModelData, t: &[Vec<Cyclotomic>], a: &Rational) -> Result<Vec<Vec<Cyclotomic>>> {
    let n = m.n.specialize(a);
    let n_lift: Vec<Vec<Cyclotomic>> = n.iter().map(|r| r.iter().map(|c| c.lift(field_order(m))).collect()).collect();
    let ni = inverse_exact(&n_lift)?;
    Ok(cyc_mul(&cyc_mul(&ni, t), &n_lift))
}

/// (K_R, K_R̄) from (f_1 f_2 f_3 f_4(z')) = f(z)·K_R̄ and
/// f(z') = f(z)·K_R̄·L·K_R with z' = e^{−2πi}z.
pub fn stokes_matrices(m: &ModelData) -> Result<(ParamMatrix, ParamMatrix)> {
    let t = selection_shift(m)?;
    let l = l_matrix(m)?;
    let kbar = interpolate_affine(4, |a| {
        let mm = holomorphic_monodromy_at(m, &t, a)?;
        Ok((0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        if j == 3 {
                            mm[i][3].clone()
                        } else if i == j {
                            Cyclotomic::one(1)
                        } else {
                            Cyclotomic::zero(1)
                        }
                    })
                    .collect()
            })
            .collect())
    })?;
    let kr = interpolate_affine(4, |a| {
        let mm = holomorphic_monodromy_at(m, &t, a)?;
        let kl = cyc_mul(&kbar.specialize(a), &l.specialize(a));
        Ok(cyc_mul(&inverse_exact(&kl)?, &mm))
    })?;
    Ok((normalize(kr)?, normalize(kbar)?))
}

/// Drops the cyclotomic embedding when every entry is rational.
fn normalize(p: ParamMatrix) -> Result<ParamMatrix> {
    let entries = p
        .entries()
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| match (e.c0.as_rational(), e.c1.as_rational()) {
                    (Some(x), Some(y)) => Ok(ParamPoly::rat(x, y)),
                    _ => Err(Error::Relation(format!("irrational Stokes entry {e}"))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ParamMatrix::from_entries(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::mat_mul;
    use crate::models::ModelId;

    #[test]
    fn quintic_origin_monodromy() {
        let m = ModelId::Y5.data();
        let want = ParamMatrix::parse_rows(&[
            &["1", "1", "5/2 + a", "-5"],
            &["0", "1", "5", "-5/2 + a"],
            &["0", "0", "1", "-1"],
            &["0", "0", "0", "1"],
        ])
        .unwrap();
        assert_eq!(monodromy_origin(&m).unwrap(), want);
    }

    #[test]
    fn l_matches_catalog() {
        for id in ModelId::ALL {
            let m = id.data();
            assert_eq!(l_matrix(&m).unwrap(), m.l, "{id}");
        }
    }

    #[test]
    fn stokes_matrices_match_catalog() {
        for id in ModelId::ALL {
            let m = id.data();
            let (kr, kbar) = stokes_matrices(&m).unwrap();
            assert_eq!(kbar, m.k_rbar, "{id} K_Rbar");
            assert_eq!(kr, ParamMatrix::elementary(4, 4, 1, ParamPoly::one()), "{id} K_R");
            assert_eq!(mat_mul(&kbar, &m.l).unwrap(), monodromy_origin(&m).unwrap(), "{id}");
        }
    }

    #[test]
    fn shift_has_order_d() {
        let m = ModelId::Y6.data();
        let t = selection_shift(&m).unwrap();
        let mut acc = t.clone();
        for _ in 1..m.d {
            acc = cyc_mul(&acc, &t);
        }
        for (i, row) in acc.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(*e == Cyclotomic::one(1), i == j);
                assert!(i == j || e.is_zero());
            }
        }
    }
}
