//! Catalog of the four one-parameter models Y(5), Y(6), Y(8), Y(10).
//!
//! Each entry records the weighted-projective data (d; ω) with a weight-1
//! coordinate last, the Picard-Fuchs constant C and offsets m_i, the
//! constants (K_d, C_d), the Frobenius constants d_k, the ŵ weight factors,
//! and the reference matrices K_R̄, L, N. Published values (the
//! g_4 coefficients and c_N) are kept as reference data for comparison.

use std::fmt;

use rug::Rational;

use crate::error::{Error, Result};
use crate::exact::rational::{q, qi};
use crate::exact::ParamMatrix;
use crate::numerics::GammaProduct;
use crate::operators::poly::QPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelId {
    Y5,
    Y6,
    Y8,
    Y10,
}

impl ModelId {
    pub const ALL: [ModelId; 4] = [ModelId::Y5, ModelId::Y6, ModelId::Y8, ModelId::Y10];

    pub fn degree(self) -> u32 {
        match self {
            ModelId::Y5 => 5,
            ModelId::Y6 => 6,
            ModelId::Y8 => 8,
            ModelId::Y10 => 10,
        }
    }

    /// Accepts `Y5`, `Y(5)`, `y5` or `5`.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !matches!(c, '(' | ')' | ' ')).collect();
        let t = t.trim_start_matches(['Y', 'y']);
        match t {
            "5" => Ok(ModelId::Y5),
            "6" => Ok(ModelId::Y6),
            "8" => Ok(ModelId::Y8),
            "10" => Ok(ModelId::Y10),
            _ => Err(Error::UnknownModel(s.to_string())),
        }
    }

    pub fn data(self) -> ModelData {
        ModelData::new(self)
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y{}", self.degree())
    }
}

#[derive(Clone, Debug)]
pub struct ModelData {
    pub id: ModelId,
    pub d: u32,
    /// Weights ω_1..ω_5 with a weight-1 entry last.
    pub weights: [u32; 5],
    pub k_d: i64,
    pub c_d: i64,
    /// C in θ^4 − C·x·Π(dθ + m_i).
    pub pf_constant: i64,
    /// The offsets m_i; the Frobenius exponents at z = 0 are −m_i/d.
    pub offsets: [u32; 4],
    /// d_k keyed by the offset k.
    pub d_consts: Vec<(u32, GammaProduct)>,
    /// Factors (1 − α^{m k})^p of the ŵ weights, as (m, p).
    pub hat_w_factors: Vec<(u32, u32)>,
    /// Indices m of ŵ_m entering the holomorphic basis.
    pub hat_w_selection: [u32; 4],
    /// Radicand r of the √r in the g_4 prefactor.
    pub g4_radicand: u32,
    pub k_rbar: ParamMatrix,
    pub l: ParamMatrix,
    pub n: ParamMatrix,
    /// a-value that simplifies K_R̄ (entry (2,4) vanishes).
    pub a_preferred: Rational,
    /// a-value used in earlier literature on these models.
    pub a_legacy: Rational,
    /// Printed leading coefficients C_1, C_2 of the g_4 series.
    pub g4_printed: [i64; 2],
    /// Printed normalization constant c_N (truncated decimal).
    pub c_n_printed: &'static str,
}

fn gp(num: i64, den: i64, gammas: &[((i64, i64), i32)]) -> GammaProduct {
    GammaProduct::new(q(num, den), gammas.iter().map(|((a, b), e)| (q(*a, *b), *e)).collect())
}

fn mat(rows: [[&str; 4]; 4]) -> ParamMatrix {
    let r: Vec<&[&str]> = rows.iter().map(|r| r.as_slice()).collect();
    ParamMatrix::parse_rows(&r).expect("catalog matrix literal")
}

impl ModelData {
    pub fn new(id: ModelId) -> Self {
        match id {
            ModelId::Y5 => ModelData {
                id,
                d: 5,
                weights: [1, 1, 1, 1, 1],
                k_d: 5,
                c_d: 50,
                pf_constant: 5,
                offsets: [1, 2, 3, 4],
                d_consts: vec![
                    (1, gp(1, 30, &[((4, 5), 4)])),
                    (2, gp(1, 10, &[((3, 5), 4)])),
                    (3, gp(1, 5, &[((2, 5), 4)])),
                    (4, gp(1, 5, &[((1, 5), 4)])),
                ],
                hat_w_factors: vec![(1, 3)],
                hat_w_selection: [0, 1, 2, 4],
                g4_radicand: 5,
                k_rbar: mat([
                    ["1", "0", "0", "-5"],
                    ["0", "1", "0", "a - 5/2"],
                    ["0", "0", "1", "-1"],
                    ["0", "0", "0", "1"],
                ]),
                l: mat([
                    ["1", "1", "a + 5/2", "0"],
                    ["0", "1", "5", "0"],
                    ["0", "0", "1", "0"],
                    ["0", "0", "0", "1"],
                ]),
                n: mat([
                    ["1", "-2/5", "-2/5*a - 2", "1"],
                    ["0", "2/5", "2/5*a - 2", "-1"],
                    ["0", "1/5", "1/5*a - 1/2", "0"],
                    ["0", "-1/5", "-1/5*a - 1/2", "0"],
                ]),
                a_preferred: q(5, 2),
                a_legacy: q(11, 2),
                g4_printed: [-4375, 32031250],
                c_n_printed: "-0.00342934921",
            },
            ModelId::Y6 => ModelData {
                id,
                d: 6,
                weights: [2, 1, 1, 1, 1],
                k_d: 3,
                c_d: 42,
                pf_constant: 9,
                offsets: [1, 2, 4, 5],
                // d_1 carries the cube on Γ(5/6) forced by the series itself.
                d_consts: vec![
                    (1, gp(1, 108, &[((2, 3), 1), ((5, 6), 3)])),
                    (2, gp(1, 54, &[((1, 3), 1), ((2, 3), 3)])),
                    (4, gp(1, 2, &[((1, 3), 3), ((5, 3), 1)])),
                    (5, gp(1, 1, &[((1, 6), 3), ((4, 3), 1)])),
                ],
                hat_w_factors: vec![(2, 1), (1, 2)],
                hat_w_selection: [0, 1, 2, 5],
                g4_radicand: 3,
                k_rbar: mat([
                    ["1", "0", "0", "-4"],
                    ["0", "1", "0", "a - 3/2"],
                    ["0", "0", "1", "-1"],
                    ["0", "0", "0", "1"],
                ]),
                l: mat([
                    ["1", "1", "a + 3/2", "0"],
                    ["0", "1", "3", "0"],
                    ["0", "0", "1", "0"],
                    ["0", "0", "0", "1"],
                ]),
                n: mat([
                    ["1", "-1/3", "-1/3*a - 3/2", "1"],
                    ["0", "1/3", "1/3*a - 3/2", "-1"],
                    ["0", "1/3", "1/3*a - 1/2", "0"],
                    ["0", "-1/3", "-1/3*a - 1/2", "0"],
                ]),
                a_preferred: q(3, 2),
                a_legacy: q(9, 2),
                g4_printed: [-15876, 428354568],
                c_n_printed: "-0.00201572",
            },
            ModelId::Y8 => ModelData {
                id,
                d: 8,
                weights: [4, 1, 1, 1, 1],
                k_d: 2,
                c_d: 44,
                pf_constant: 16,
                offsets: [1, 3, 5, 7],
                d_consts: vec![
                    (1, gp(1, 768, &[((1, 2), 1), ((7, 8), 3)])),
                    (3, gp(1, 64, &[((1, 2), 1), ((5, 8), 3)])),
                    (5, gp(1, 8, &[((1, 2), 1), ((3, 8), 3)])),
                    (7, gp(1, 2, &[((1, 2), 1), ((1, 8), 3)])),
                ],
                hat_w_factors: vec![(4, 1), (1, 2)],
                hat_w_selection: [0, 1, 2, 7],
                g4_radicand: 2,
                k_rbar: mat([
                    ["1", "0", "0", "-4"],
                    ["0", "1", "0", "a - 1"],
                    ["0", "0", "1", "-1"],
                    ["0", "0", "0", "1"],
                ]),
                l: mat([
                    ["1", "1", "a + 1", "0"],
                    ["0", "1", "2", "0"],
                    ["0", "0", "1", "0"],
                    ["0", "0", "0", "1"],
                ]),
                n: mat([
                    ["1", "-1/2", "-1/2*a - 3/2", "1"],
                    ["0", "1/2", "1/2*a - 3/2", "-1"],
                    ["0", "1/2", "1/2*a - 1/2", "0"],
                    ["0", "-1/2", "-1/2*a - 1/2", "0"],
                ]),
                a_preferred: qi(1),
                a_legacy: qi(3),
                g4_printed: [-88064, 13272875008],
                c_n_printed: "-0.001316833",
            },
            ModelId::Y10 => ModelData {
                id,
                d: 10,
                weights: [5, 2, 1, 1, 1],
                k_d: 1,
                c_d: 34,
                pf_constant: 80,
                offsets: [1, 3, 7, 9],
                d_consts: vec![
                    (1, gp(1, 15360, &[((9, 10), 2), ((4, 5), 1), ((1, 2), 1)])),
                    (3, gp(1, 1920, &[((7, 10), 2), ((2, 5), 1), ((1, 2), 1)])),
                    (7, gp(1, 8, &[((3, 10), 2), ((3, 5), 1), ((1, 2), 1)])),
                    (9, gp(1, 2, &[((1, 10), 2), ((1, 5), 1), ((1, 2), 1)])),
                ],
                hat_w_factors: vec![(5, 1), (2, 1), (1, 1)],
                hat_w_selection: [0, 1, 2, 9],
                g4_radicand: 1,
                k_rbar: mat([
                    ["1", "0", "0", "-3"],
                    ["0", "1", "0", "a - 1/2"],
                    ["0", "0", "1", "-1"],
                    ["0", "0", "0", "1"],
                ]),
                l: mat([
                    ["1", "1", "a + 1/2", "0"],
                    ["0", "1", "1", "0"],
                    ["0", "0", "1", "0"],
                    ["0", "0", "0", "1"],
                ]),
                n: mat([
                    ["1", "0", "-1", "1"],
                    ["0", "0", "-1", "-1"],
                    ["0", "1", "a - 1/2", "0"],
                    ["0", "-1", "-a - 1/2", "0"],
                ]),
                a_preferred: q(1, 2),
                a_legacy: q(1, 2),
                g4_printed: [-1040000, 1884800000000],
                c_n_printed: "-0.0001304601",
            },
        }
    }

    pub fn name(&self) -> String {
        format!("Y({})", self.d)
    }

    /// Conifold location x_c = 1/(C·d^4).
    pub fn x_c(&self) -> Rational {
        let d4 = i64::from(self.d).pow(4);
        q(1, self.pf_constant * d4)
    }

    /// Frobenius exponent ρ_k = −k/d at z = 0.
    pub fn rho(&self, k: u32) -> Result<Rational> {
        if !self.offsets.contains(&k) {
            return Err(Error::InvalidExponent { model: self.name(), k });
        }
        Ok(q(-i64::from(k), i64::from(self.d)))
    }

    pub fn exponents(&self) -> Vec<Rational> {
        self.offsets.iter().map(|&k| q(-i64::from(k), i64::from(self.d))).collect()
    }

    pub fn d_const(&self, k: u32) -> Result<&GammaProduct> {
        self.d_consts
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::InvalidExponent { model: self.name(), k })
    }

    /// χ(O_X, O_X(1)) = K_d/6 + C_d/12.
    pub fn chi(&self) -> Rational {
        q(self.k_d, 6) + q(self.c_d, 12)
    }

    /// Order of α = e^{2πi/d}.
    pub fn alpha_order(&self) -> u32 {
        self.d
    }

    /// Π_{j=1}^{d}(dθ+j)·(θ+1)^4 / Π_i Π_{m=1}^{ω_i}(ω_i θ + m), which must
    /// reduce to C·Π(dθ + m_i).
    pub fn pf_polynomial_from_weights(&self) -> Result<QPoly> {
        let d = i64::from(self.d);
        let mut num = QPoly::from_ints(&[1, 1]).pow(4);
        for j in 1..=d {
            num = num.mul(&QPoly::from_ints(&[j, d]));
        }
        let mut den = QPoly::one();
        for &w in &self.weights {
            for m in 1..=i64::from(w) {
                den = den.mul(&QPoly::from_ints(&[m, i64::from(w)]));
            }
        }
        num.exact_div(&den)
            .ok_or_else(|| Error::Relation(format!("{}: weights do not divide", self.name())))
    }

    /// C·Π(dθ + m_i) from the stored constants.
    pub fn pf_polynomial(&self) -> QPoly {
        let d = i64::from(self.d);
        let mut p = QPoly::constant(qi(self.pf_constant));
        for &m in &self.offsets {
            p = p.mul(&QPoly::from_ints(&[i64::from(m), d]));
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ids() {
        assert_eq!(ModelId::parse("Y(6)").unwrap(), ModelId::Y6);
        assert_eq!(ModelId::parse("y10").unwrap(), ModelId::Y10);
        assert!(matches!(ModelId::parse("Y7"), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn catalog_consistency() {
        for id in ModelId::ALL {
            let m = id.data();
            assert_eq!(m.pf_polynomial_from_weights().unwrap(), m.pf_polynomial(), "{id}");
            assert_eq!(m.weights.iter().sum::<u32>(), m.d);
            assert_eq!(m.weights[4], 1);
            assert!(m.chi().denom() == &1u32);
        }
        assert_eq!(ModelId::Y5.data().x_c(), q(1, 3125));
        assert_eq!(ModelId::Y6.data().x_c(), q(1, 16 * 729));
        assert_eq!(ModelId::Y8.data().x_c(), q(1, 65536));
        assert_eq!(ModelId::Y10.data().x_c(), q(1, 256 * 3125));
    }
}
