//! One function per subcommand and model. Each returns the text to print and
//! the names of failed checks; library errors become failures.

use std::fmt::Write as _;
use std::path::Path;

use rug::{Float, Rational};
use stokesforge::bases::{conifold_basis, period_basis};
use stokesforge::models::{ModelData, ModelId};
use stokesforge::numerics::{fmt_real, ten_pow_neg, working_bits, BigComplex};
use stokesforge::operators::{factor_left, gkz_from_toric, laplace_nu, laplace_pf, laplace_star, pf_operator, ToricData};
use stokesforge::stokes::{
    default_cn_samples, euler_pairing, l_matrix, match_cn, matches_printed, monodromy_conifold, ray_geometry, rays_svg,
    relation_suite, stokes_matrices, vanishing_check, SuiteOptions,
};
use stokesforge::exact::ParamMatrix;
use stokesforge::Result;

use crate::config::{AMode, RunConfig};

#[derive(Debug, Default)]
pub struct Section {
    pub text: String,
    pub failures: Vec<String>,
}

impl Section {
    fn fail(&mut self, name: impl Into<String>) {
        let name = name.into();
        let _ = writeln!(self.text, "FAILED: {name}");
        self.failures.push(name);
    }

    fn check(&mut self, name: &str, ok: bool) {
        let _ = writeln!(self.text, "{} {name}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures.push(name.to_string());
        }
    }

    /// Runs `body`, turning an error into a named failure.
    fn run(name: &str, body: impl FnOnce(&mut Section) -> Result<()>) -> Section {
        let mut s = Section::default();
        if let Err(e) = body(&mut s) {
            s.fail(format!("{name}: {e}"));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    All,
    Pf,
    Laplace,
    GkzStar,
    GkzNu,
}

fn matrix_block(out: &mut String, name: &str, m: &ParamMatrix) {
    let rows = m.to_string_rows();
    let width = rows.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
    let _ = writeln!(out, "{name} =");
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "  ( {} )", cells.join(", "));
    }
}

fn a_value(m: &ModelData, mode: &AMode) -> Rational {
    match mode {
        AMode::Value(a) => a.clone(),
        _ => m.a_preferred.clone(),
    }
}

/// Operator displays: the Picard-Fuchs operator, its Laplace transform and
/// both GKZ reductions. The weight-1 coordinate is the last toric point.
pub fn derive(id: ModelId, which: Which) -> Section {
    Section::run("derive", |s| {
        let m = id.data();
        let out = &mut s.text;
        let _ = writeln!(out, "[{id}] derive");
        let pf = pf_operator(&m);
        let lap = laplace_pf(&pf)?;
        if matches!(which, Which::All | Which::Pf) {
            let _ = writeln!(out, "pf       = {}", pf.pretty());
        }
        if matches!(which, Which::All | Which::Laplace) {
            let _ = writeln!(out, "laplace  = {}", lap.pretty());
        }
        if matches!(which, Which::All | Which::GkzStar | Which::GkzNu) {
            let sys = gkz_from_toric(&ToricData::weighted_projective(m.d, &m.weights)?)?;
            if matches!(which, Which::All | Which::GkzStar) {
                let star = laplace_star(&sys)?;
                let _ = writeln!(out, "gkz-star = {}; {}", star.invariant_coordinate(), star.operator.pretty());
            }
            if matches!(which, Which::All | Which::GkzNu) {
                let nu = laplace_nu(&sys, 5)?;
                let _ = writeln!(out, "gkz-nu   = {}; {}", nu.invariant_coordinate(), nu.operator.pretty());
                let (g, right) = factor_left(&nu.operator)?;
                let _ = writeln!(out, "gkz-nu   = ({})·laplace", g.display_in("T"));
                if right != lap {
                    s.fail("gkz-nu reduction does not factor through the Laplace transform");
                }
            }
        }
        Ok(())
    })
}

/// K_R̄, L and N, all exact in a.
pub fn table1(id: ModelId) -> Section {
    Section::run("table1", |s| {
        let m = id.data();
        let (_, kbar) = stokes_matrices(&m)?;
        let l = l_matrix(&m)?;
        let _ = writeln!(s.text, "[{id}] d = {}", m.d);
        matrix_block(&mut s.text, "K_Rbar", &kbar);
        matrix_block(&mut s.text, "L", &l);
        matrix_block(&mut s.text, "N", &m.n);
        if kbar != m.k_rbar {
            s.fail("computed K_Rbar differs from the catalog");
        }
        if l != m.l {
            s.fail("computed L differs from the catalog");
        }
        Ok(())
    })
}

/// Leading coefficients of Π_γ1..Π_γ4 and JSON dumps of the full series.
pub fn periods(id: ModelId, cfg: &RunConfig) -> Section {
    Section::run("periods", |s| {
        let m = id.data();
        let a = a_value(&m, &cfg.a_mode);
        let prec = working_bits(cfg.precision) + 32;
        let basis = period_basis(&m, cfg.series_order, prec).specialize(&a);
        let dir = cfg.output_dir.join(id.to_string());
        let _ = writeln!(s.text, "[{id}] periods at a = {a}, order {}", cfg.series_order);
        for (k, pi) in basis.iter().enumerate() {
            let _ = writeln!(s.text, "Pi_{}: log depth {}", k + 1, pi.log_depth());
            for (j, row) in pi.coeffs.iter().enumerate() {
                let lead: Vec<String> = row.iter().take(3).map(|c| c.to_string()).collect();
                let _ = writeln!(s.text, "  log^{j}: {}", lead.join(" "));
            }
            let name = format!("Pi_{}", k + 1);
            match write_file(&dir.join(format!("{name}.json")), &pi.to_json(&id.to_string(), &name, 30)) {
                Ok(()) => {}
                Err(e) => s.fail(e),
            }
        }
        let _ = writeln!(s.text, "wrote {}", dir.display());
        Ok(())
    })
}

/// Exact local basis at x_c, numerical M_Con and the vanishing of Π_γ4.
pub fn conifold(id: ModelId, cfg: &RunConfig) -> Section {
    Section::run("conifold", |s| {
        let m = id.data();
        let p = cfg.precision;
        let b = conifold_basis(&m, cfg.series_order)?;
        let _ = writeln!(s.text, "[{id}] conifold point x_c = {}", m.x_c());
        let roots: Vec<String> = b.indicial_roots.iter().map(|(r, k)| format!("{r} (x{k})")).collect();
        let _ = writeln!(s.text, "indicial roots: {}", roots.join(", "));
        let v = b.vanishing();
        let coeffs: Vec<String> = (1..v.order()).take(6).map(|n| v.coeff(0, n).to_string()).collect();
        let _ = writeln!(s.text, "vanishing solution, coefficients of t^1, t^2, ...: {}", coeffs.join(", "));
        let con = monodromy_conifold(&m, p)?;
        matrix_block(&mut s.text, "M_Con", &con.matrix);
        let _ = writeln!(s.text, "rounding residual {}", fmt_real(&con.residual, 4));
        let a = a_value(&m, &cfg.a_mode);
        let rep = vanishing_check(&m, &a, p)?;
        for (k, v) in rep.values_at_xc.iter().enumerate() {
            let _ = writeln!(s.text, "|Pi_{}(x_c)| = {}", k + 1, fmt_real(v, 6));
        }
        let _ = writeln!(s.text, "lambda = {} (expected {})", rep.lambda, rep.lambda_expected);
        let tol = ten_pow_neg(p / 2, rep.values_at_xc[3].prec());
        s.check("Pi_4 vanishes at x_c", rep.values_at_xc[3] < tol);
        let dl = rep.lambda.sub(&rep.lambda_expected).abs();
        s.check("Pi_4 = lambda·varpi with the expected lambda", dl < Float::with_val(dl.prec(), rep.lambda.abs() * &tol));
        Ok(())
    })
}

/// Parsed sample points, or the defaults 120/x_c and 130/x_c.
pub fn sample_points(m: &ModelData, z: &[String], p: u32) -> std::result::Result<Vec<BigComplex>, String> {
    let prec = working_bits(p) + 32;
    if z.is_empty() {
        return Ok(default_cn_samples(m, prec));
    }
    z.iter()
        .map(|s| {
            Float::parse(s.trim())
                .map(|v| BigComplex::from_real(Float::with_val(prec, v)))
                .map_err(|_| format!("z sample `{s}` is not a decimal number"))
        })
        .collect()
}

pub fn match_cn_cmd(id: ModelId, cfg: &RunConfig, z: Vec<BigComplex>) -> Section {
    Section::run("match-cn", |s| {
        let m = id.data();
        let r = match_cn(&m, &z, cfg.precision)?;
        let _ = writeln!(s.text, "[{id}] c_N = {}", fmt_real(&r.c_n, 40));
        for smp in &r.samples {
            let _ = writeln!(
                s.text,
                "  z = {} k = {}: ratio {} (truncation {})",
                fmt_real(&smp.z.re, 12),
                smp.k,
                fmt_real(&smp.ratio.re, 30),
                fmt_real(&smp.rel_error, 3)
            );
        }
        let _ = writeln!(s.text, "spread {} imaginary part {}", fmt_real(&r.spread, 3), fmt_real(&r.imag, 3));
        let ok = matches_printed(&r.c_n, m.c_n_printed)?;
        let _ = writeln!(s.text, "printed {}: {}", m.c_n_printed, if ok { "all digits agree" } else { "differs" });
        Ok(())
    })
}

/// Relation suite with c_N; matrices specialized according to the a mode.
pub fn stokes(id: ModelId, cfg: &RunConfig) -> Section {
    Section::run("stokes", |s| {
        let m = id.data();
        let report = relation_suite(&m, &SuiteOptions { precision: cfg.precision, match_cn: true })?;
        let shown = match &cfg.a_mode {
            AMode::Symbolic => report.clone(),
            mode => report.specialized(&a_value(&m, mode)),
        };
        let md = shown.to_markdown();
        s.text.push_str(&md);
        if cfg.a_mode == AMode::Preferred {
            let e = euler_pairing(&m, &m.a_preferred)?;
            let _ = writeln!(s.text, "\nchi(O_X,O_p) = {}, chi(O_X,O_X(1)) = {} at a = {}", e.chi_pp, e.chi_oh, m.a_preferred);
            if !e.matches {
                s.fail("specialized Stokes matrices do not take the Euler-pairing form");
            }
        }
        let dir = cfg.output_dir.join(id.to_string());
        for (name, body) in [("stokes.json", shown.to_json()), ("stokes.md", md)] {
            if let Err(e) = write_file(&dir.join(name), &body) {
                s.fail(e);
            }
        }
        for f in report.failed() {
            s.failures.push(f.to_string());
        }
        Ok(())
    })
}

/// Every check the engine can make for one model.
pub fn verify(id: ModelId, cfg: &RunConfig) -> Section {
    Section::run("verify", |s| {
        let m = id.data();
        let _ = writeln!(s.text, "[{id}] verify at {} digits", cfg.precision);
        let report = relation_suite(&m, &SuiteOptions { precision: cfg.precision, match_cn: true })?;
        for c in &report.checks {
            s.check(&c.name, c.passed);
        }
        if let Some(c) = &report.c_n {
            s.check(&format!("c_N = {} reproduces the printed {}", fmt_real(c, 15), m.c_n_printed), matches_printed(c, m.c_n_printed)?);
        }
        let e = euler_pairing(&m, &m.a_preferred)?;
        s.check(&format!("chi(O_X,O_X(1)) = {} and the Euler-pairing form at a = {}", e.chi_oh, m.a_preferred), e.matches);
        let v = vanishing_check(&m, &m.a_preferred, cfg.precision)?;
        s.check("Pi_4 vanishes at x_c", v.values_at_xc[3] < ten_pow_neg(cfg.precision / 2, 64));
        Ok(())
    })
}

/// One SVG with a panel per model.
pub fn plot_rays(models: &[ModelId], out: &Path) -> std::result::Result<String, String> {
    let panels: Vec<(String, _)> = models.iter().map(|id| (id.to_string(), ray_geometry(&id.data()))).collect();
    let svg = rays_svg(&panels);
    write_file(out, &svg)?;
    Ok(svg)
}

fn write_file(path: &Path, body: &str) -> std::result::Result<(), String> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    }
    std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))
}
