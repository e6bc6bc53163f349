//! The relation suite tying Stokes matrices to monodromy, the Euler-pairing
//! reading of the specialized Stokes matrices, and report serialization.

use rug::{Float, Integer, Rational};
use serde::Serialize;

use super::conifold::monodromy_conifold;
use super::exact::{l_matrix, monodromy_origin, stokes_matrices};
use super::matching::{default_cn_samples, match_cn, verify_asymptotics, AsymptoticRow};
use crate::error::{Error, Result};
use crate::exact::matrix::{mat_inverse_unipotent, symplectic_check, uncapped_order, uncapped_product, ParamMatrix};
use crate::exact::param::ParamPoly;
use crate::models::{ModelData, ModelId};
use crate::numerics::{fmt_real, working_bits};

/// Largest power tried when computing the order of M_∞.
pub const MAX_ORDER: u32 = 24;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Digits for the conifold loop and for c_N matching.
    pub precision: u32,
    /// Also match c_N and tabulate the asymptotic residuals.
    pub match_cn: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { precision: 60, match_cn: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct StokesReport {
    pub model: ModelId,
    pub precision: u32,
    pub c_n: Option<Float>,
    pub k_r: ParamMatrix,
    pub k_rbar: ParamMatrix,
    pub l: ParamMatrix,
    pub n: ParamMatrix,
    pub m_0: ParamMatrix,
    pub m_con: ParamMatrix,
    pub m_inf: ParamMatrix,
    /// Smallest k ≤ MAX_ORDER with M_∞^k = I.
    pub m_inf_order: Option<u32>,
    pub m_con_residual: Float,
    pub asymptotics: Vec<AsymptoticRow>,
    pub checks: Vec<RelationCheck>,
}

impl StokesReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    /// Err naming the first failed identity.
    pub fn ensure(&self) -> Result<()> {
        match self.failed().first() {
            Some(name) => Err(Error::Relation(format!("{}: {name}", self.model))),
            None => Ok(()),
        }
    }

    /// The same report with every matrix specialized at `a`.
    pub fn specialized(&self, a: &Rational) -> StokesReport {
        let s = |m: &ParamMatrix| m.specialize_matrix(a);
        StokesReport {
            k_r: s(&self.k_r),
            k_rbar: s(&self.k_rbar),
            l: s(&self.l),
            n: s(&self.n),
            m_0: s(&self.m_0),
            m_con: s(&self.m_con),
            m_inf: s(&self.m_inf),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        let decimal = |x: &Float| DecimalDoc { value: fmt_real(x, self.precision as usize), digits: self.precision };
        let doc = ReportDoc {
            model: self.model.to_string(),
            c_n: self.c_n.as_ref().map(decimal),
            matrices: [
                ("K_R", &self.k_r),
                ("K_Rbar", &self.k_rbar),
                ("L", &self.l),
                ("N", &self.n),
                ("M_0", &self.m_0),
                ("M_Con", &self.m_con),
                ("M_inf", &self.m_inf),
            ]
            .iter()
            .map(|(name, m)| MatrixDoc { name: name.to_string(), rows: m.to_string_rows() })
            .collect(),
            m_inf_order: self.m_inf_order,
            m_con_residual: DecimalDoc { value: fmt_real(&self.m_con_residual, 6), digits: 6 },
            asymptotics: self
                .asymptotics
                .iter()
                .map(|r| AsymptoticDoc {
                    k: r.k,
                    arg_over_pi: r.arg_over_pi.to_string(),
                    relative_residual: DecimalDoc { value: fmt_real(&r.relative_residual, 6), digits: 6 },
                    bound: DecimalDoc { value: fmt_real(&r.bound, 6), digits: 6 },
                    passed: r.passes(),
                })
                .collect(),
            checks: self.checks.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    /// Markdown with the d | K_R̄ | L | N row, followed by the monodromy
    /// matrices and the relation flags.
    pub fn to_markdown(&self) -> String {
        let cell = |m: &ParamMatrix| m.to_string_rows().iter().map(|r| format!("({})", r.join(", "))).collect::<Vec<_>>().join("<br>");
        let mut out = format!("## {}\n\n", self.model);
        out.push_str("| d | K_R̄ | L | N |\n|---|---|---|---|\n");
        out.push_str(&format!("| {} | {} | {} | {} |\n\n", self.model.degree(), cell(&self.k_rbar), cell(&self.l), cell(&self.n)));
        out.push_str("| K_R | M_0 | M_Con | M_∞ |\n|---|---|---|---|\n");
        out.push_str(&format!("| {} | {} | {} | {} |\n\n", cell(&self.k_r), cell(&self.m_0), cell(&self.m_con), cell(&self.m_inf)));
        if let Some(c) = &self.c_n {
            out.push_str(&format!("c_N = {} ({} digits)\n\n", fmt_real(c, 30), self.precision));
        }
        match self.m_inf_order {
            Some(k) => out.push_str(&format!("order of M_∞: {k}\n\n")),
            None => out.push_str(&format!("order of M_∞: > {MAX_ORDER}\n\n")),
        }
        if !self.asymptotics.is_empty() {
            out.push_str("| k | arg z / π | relative residual | bound | ok |\n|---|---|---|---|---|\n");
            for r in &self.asymptotics {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    r.k,
                    r.arg_over_pi,
                    fmt_real(&r.relative_residual, 4),
                    fmt_real(&r.bound, 4),
                    if r.passes() { "yes" } else { "NO" }
                ));
            }
            out.push('\n');
        }
        for c in &self.checks {
            out.push_str(&format!("- [{}] {}\n", if c.passed { "x" } else { " " }, c.name));
        }
        out
    }
}

#[derive(Serialize)]
struct DecimalDoc {
    value: String,
    digits: u32,
}

#[derive(Serialize)]
struct MatrixDoc {
    name: String,
    rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct AsymptoticDoc {
    k: usize,
    arg_over_pi: String,
    relative_residual: DecimalDoc,
    bound: DecimalDoc,
    passed: bool,
}

#[derive(Serialize)]
struct ReportDoc {
    model: String,
    c_n: Option<DecimalDoc>,
    matrices: Vec<MatrixDoc>,
    m_inf_order: Option<u32>,
    m_con_residual: DecimalDoc,
    asymptotics: Vec<AsymptoticDoc>,
    checks: Vec<RelationCheck>,
}

/// Π_{k=0}^{n−1} L^k·K_R̄·L·K_R·L^{−k−1}, computed without telescoping.
pub fn turn_product(kr: &ParamMatrix, kbar: &ParamMatrix, l: &ParamMatrix, n: u32) -> Result<ParamMatrix> {
    let li = mat_inverse_unipotent(l)?;
    let mut factors: Vec<&ParamMatrix> = Vec::new();
    for k in 0..n {
        factors.extend(std::iter::repeat_n(l, k as usize));
        factors.extend([kbar, l, kr]);
        factors.extend(std::iter::repeat_n(&li, k as usize + 1));
    }
    uncapped_product(&factors)
}

/// Every exact relation between K_R, K_R̄, L, M_0, M_Con and M_∞, with
/// M_Con from the numerical conifold loop.
pub fn relation_suite(m: &ModelData, opts: &SuiteOptions) -> Result<StokesReport> {
    let p = opts.precision;
    let (k_r, k_rbar) = stokes_matrices(m)?;
    let l = l_matrix(m)?;
    let m_0 = monodromy_origin(m)?;
    let con = monodromy_conifold(m, p)?;
    let m_con = con.matrix;
    let m_inf = uncapped_product(&[&m_con, &m_0])?;
    let m_inf_order = uncapped_order(&m_inf, MAX_ORDER);

    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool| checks.push(RelationCheck { name: name.to_string(), passed });
    check("K_R = M_Con", k_r == m_con);
    check("K_R̄·L = M_0", uncapped_product(&[&k_rbar, &l])? == m_0);
    check("K_R = I + E_41", k_r == ParamMatrix::elementary(4, 4, 1, ParamPoly::one()));
    check("K_R̄ matches the catalog", k_rbar == m.k_rbar);
    check("L matches the catalog", l == m.l);
    check("M_0 is symplectic", symplectic_check(&m_0));
    check("M_Con is symplectic", symplectic_check(&m_con));
    if m.id == ModelId::Y5 {
        check("M_∞^5 = I", m_inf_order == Some(5));
        let l5 = uncapped_product(&[&l; 5])?;
        let collapsed = mat_inverse_unipotent(&l5)?;
        check("Π L^k·K_R̄·L·K_R·L^(−k−1) over five turns = L^(−5)", turn_product(&k_r, &k_rbar, &l, 5)? == collapsed);
    }

    let (c_n, asymptotics) = if opts.match_cn {
        let prec = working_bits(p) + 32;
        let samples = default_cn_samples(m, prec);
        let mat = match_cn(m, &samples, p)?;
        let zabs = Rational::from(120) / m.x_c();
        let rows = verify_asymptotics(m, &mat.c_n, &zabs, p)?;
        check("f_k ∼ g_k on all sample rays", rows.iter().all(AsymptoticRow::passes));
        (Some(mat.c_n), rows)
    } else {
        (None, Vec::new())
    };

    Ok(StokesReport {
        model: m.id,
        precision: p,
        c_n,
        k_r,
        k_rbar,
        l,
        n: m.n.clone(),
        m_0,
        m_con,
        m_inf,
        m_inf_order,
        m_con_residual: con.residual,
        asymptotics,
        checks,
    })
}

/// χ(O_X,O_p), χ(O_X,O_X(1)) and the Stokes matrices written in terms of them.
#[derive(Clone, Debug)]
pub struct EulerPairing {
    pub chi_pp: Integer,
    pub chi_oh: Integer,
    /// I + χ(O_X,O_p)·E_41.
    pub k_r: ParamMatrix,
    /// I with column 4 = (−χ(O_X,O_X(1)), 0, −1, 1).
    pub k_rbar: ParamMatrix,
    /// The computed Stokes matrices specialized at a equal these shapes.
    pub matches: bool,
}

/// Riemann-Roch χ(O_X,O_X(1)) = K_d/6 + C_d/12; χ(O_X,O_p) = 1.
pub fn euler_pairing(m: &ModelData, a: &Rational) -> Result<EulerPairing> {
    let chi = Rational::from((m.k_d, 6)) + Rational::from((m.c_d, 12));
    if *chi.denom() != 1 {
        return Err(Error::Relation(format!("χ(O_X,O_X(1)) = {chi} is not an integer")));
    }
    let chi_oh = chi.numer().clone();
    let chi_pp = Integer::from(1);
    let k_r = ParamMatrix::elementary(4, 4, 1, ParamPoly::constant_rat(Rational::from(&chi_pp)));
    let mut rows: Vec<Vec<ParamPoly>> = ParamMatrix::identity(4).entries().to_vec();
    rows[0][3] = ParamPoly::constant_rat(Rational::from(-&chi_oh));
    rows[2][3] = ParamPoly::constant_rat(Rational::from(-1));
    let k_rbar = ParamMatrix::from_entries(rows);
    let (kr, kbar) = stokes_matrices(m)?;
    let matches = kr.specialize_matrix(a) == k_r && kbar.specialize_matrix(a) == k_rbar;
    Ok(EulerPairing { chi_pp, chi_oh, k_r, k_rbar, matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    #[test]
    fn quintic_suite() {
        let m = ModelId::Y5.data();
        let r = relation_suite(&m, &SuiteOptions { precision: 30, match_cn: false }).unwrap();
        assert!(r.all_passed(), "{:?}", r.failed());
        assert_eq!(r.m_inf_order, Some(5));
        let j: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(j["matrices"][1]["rows"][1][3], "-5/2 + a");
        assert!(r.to_markdown().contains("| 5 |"));
    }

    #[test]
    fn turn_product_telescopes_without_stokes_factors() {
        let m = ModelId::Y5.data();
        let id = ParamMatrix::identity(4);
        assert!(turn_product(&id, &id, &m.l, 5).unwrap().is_identity());
    }

    #[test]
    fn pairing_values() {
        let want = [(ModelId::Y5, 5), (ModelId::Y6, 4), (ModelId::Y8, 4), (ModelId::Y10, 3)];
        for (id, chi) in want {
            let m = id.data();
            let e = euler_pairing(&m, &m.a_preferred).unwrap();
            assert_eq!(e.chi_oh, chi, "{id}");
            assert!(e.matches, "{id}");
        }
        let m = ModelId::Y5.data();
        assert!(!euler_pairing(&m, &q(11, 2)).unwrap().matches);
    }
}
