//! GKZ systems from toric data, their Laplace transforms in one variable
//! a_k, and reduction to an ordinary operator in the torus-invariant
//! coordinate.
//!
//! Reduction: the transformed Euler operators read A·θ + b on the remaining
//! variables (a_i for i ≠ k, and z). A solution of the form
//! Π v^{λ_v}·F(z̃) with z̃ = ±Π v^{u_v} requires A·u = 0 and A·λ = −b.
//! On such functions θ_v acts as λ_v + u_v·θ̃, which turns each box operator
//! into Σ z̃^k Q_k(θ̃) after a monomial left factor is removed.

use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;

use super::poly::QPoly;
use super::theta::ThetaOperator;
use crate::error::{Error, Result};
use crate::exact::linalg::{nullspace, solve_unique};
use crate::exact::rational::{fmt_rational, is_integer};

/// Integral points ν_0 = 0, ν_1, …, ν_p of Δ*, generators of the lattice
/// of relations L, and the exponent β = (−1, 0, …, 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricData {
    pub points: Vec<Vec<i64>>,
    pub lattice_gens: Vec<Vec<i64>>,
    pub beta: Vec<i64>,
}

impl ToricData {
    pub fn new(points: Vec<Vec<i64>>, lattice_gens: Vec<Vec<i64>>) -> Result<Self> {
        let n = points.first().map(|p| p.len()).unwrap_or(0);
        let mut beta = vec![0; n + 1];
        beta[0] = -1;
        let t = ToricData { points, lattice_gens, beta };
        t.validate()?;
        Ok(t)
    }

    /// Vertices of Δ* for a degree-d hypersurface in P^4(ω) with ω_5 = 1:
    /// ν_i = e_i for i = 1..4 and ν_5 = −(ω_1, …, ω_4), with the single
    /// relation l = (−d; ω_1, …, ω_5).
    pub fn weighted_projective(d: u32, weights: &[u32; 5]) -> Result<Self> {
        if weights[4] != 1 {
            return Err(Error::InconsistentToric("last weight must be 1".into()));
        }
        let mut points = vec![vec![0; 4]];
        for i in 0..4 {
            let mut e = vec![0; 4];
            e[i] = 1;
            points.push(e);
        }
        points.push(weights[..4].iter().map(|&w| -i64::from(w)).collect());
        let mut l = vec![-i64::from(d)];
        l.extend(weights.iter().map(|&w| i64::from(w)));
        Self::new(points, vec![l])
    }

    pub fn dim(&self) -> usize {
        self.points.first().map(|p| p.len()).unwrap_or(0)
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let bad = |m: &str| Err(Error::InconsistentToric(m.into()));
        if self.points.is_empty() || self.points.iter().any(|p| p.len() != n) {
            return bad("points must be nonempty and of equal dimension");
        }
        if self.points[0].iter().any(|&x| x != 0) {
            return bad("ν_0 must be the origin");
        }
        if self.beta.len() != n + 1 || self.beta[0] != -1 || self.beta[1..].iter().any(|&x| x != 0) {
            return bad("β must be (−1, 0, …, 0)");
        }
        for l in &self.lattice_gens {
            if l.len() != self.points.len() {
                return bad("lattice generator length differs from the number of points");
            }
            let s0: i64 = l.iter().sum();
            if s0 != 0 {
                return Err(Error::InconsistentToric(format!("Σ l_i = {s0} for l = {l:?}")));
            }
            for j in 0..n {
                let s: i64 = l.iter().zip(&self.points).map(|(li, p)| li * p[j]).sum();
                if s != 0 {
                    return Err(Error::InconsistentToric(format!("Σ l_i ν_i[{j}] = {s} for l = {l:?}")));
                }
            }
        }
        Ok(())
    }
}

/// Monomial key: per variable (exponent, θ-power), meaning v^e θ_v^b.
type Key = Vec<(i64, u32)>;

/// Polynomial in commuting families {a_i, θ_{a_i}} and {z, θ_z}, each in
/// normal order v^e θ_v^b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiOp {
    nvars: usize,
    terms: BTreeMap<Key, Rational>,
}

impl MultiOp {
    pub fn zero(nvars: usize) -> Self {
        MultiOp { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut m = Self::zero(nvars);
        m.add_term(vec![(0, 0); nvars], c);
        m
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::from(1))
    }

    pub fn theta(nvars: usize, v: usize) -> Self {
        let mut k = vec![(0, 0); nvars];
        k[v] = (0, 1);
        let mut m = Self::zero(nvars);
        m.add_term(k, Rational::from(1));
        m
    }

    /// ∂_v = v^{−1}·θ_v.
    pub fn partial(nvars: usize, v: usize) -> Self {
        let mut k = vec![(0, 0); nvars];
        k[v] = (-1, 1);
        let mut m = Self::zero(nvars);
        m.add_term(k, Rational::from(1));
        m
    }

    /// A one-variable operator placed on variable v.
    pub fn embed(nvars: usize, v: usize, op: &ThetaOperator) -> Self {
        let mut m = Self::zero(nvars);
        for ((a, b), c) in op.terms() {
            let mut k = vec![(0, 0); nvars];
            k[v] = (*a, *b);
            m.add_term(k, c.clone());
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Key, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: Key, c: Rational) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(k.clone()).or_default();
        *e += c;
        if *e == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), Rational::from(c * r));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                // Per variable: v^e θ^b · v^f θ^g = v^{e+f} (θ+f)^b θ^g.
                let mut partial: Vec<(Key, Rational)> = vec![(Vec::with_capacity(self.nvars), Rational::from(c1 * c2))];
                for v in 0..self.nvars {
                    let (e, b) = k1[v];
                    let (f, g) = k2[v];
                    let poly = QPoly::x().pow(b).shift(&Rational::from(f));
                    let mut next = Vec::new();
                    for (key, c) in &partial {
                        for (j, pc) in poly.coeffs().iter().enumerate() {
                            if *pc == 0 {
                                continue;
                            }
                            let mut nk = key.clone();
                            nk.push((e + f, j as u32 + g));
                            next.push((nk, Rational::from(c * pc)));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    out.add_term(k, c);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Text form with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = Vec::new();
        for (k, c) in &self.terms {
            let mut s = fmt_rational(c);
            for (v, (e, b)) in k.iter().enumerate() {
                if *e != 0 {
                    s.push_str(&format!(" * {}^{}", names[v], e));
                }
                if *b != 0 {
                    s.push_str(&format!(" * T_{}^{}", names[v], b));
                }
            }
            out.push(s);
        }
        out.join(" + ")
    }
}

/// Box operators and Euler operators, on variables a_0..a_p plus a slot
/// for the Laplace variable z (unused before a transform).
#[derive(Clone, Debug)]
pub struct GkzSystem {
    pub toric: ToricData,
    pub boxes: Vec<MultiOp>,
    pub euler: Vec<MultiOp>,
}

impl GkzSystem {
    pub fn nvars(&self) -> usize {
        self.toric.num_points() + 1
    }

    pub fn z_index(&self) -> usize {
        self.toric.num_points()
    }

    pub fn var_names(&self) -> Vec<String> {
        let mut v: Vec<String> = (0..self.toric.num_points()).map(|i| format!("a{i}")).collect();
        v.push("z".into());
        v
    }
}

/// □_l for each lattice generator followed by the Euler operators Z_0..Z_n.
pub fn gkz_from_toric(t: &ToricData) -> Result<GkzSystem> {
    t.validate()?;
    let np = t.num_points();
    let nv = np + 1;
    let mut boxes = Vec::new();
    for l in &t.lattice_gens {
        let mut pos = MultiOp::one(nv);
        let mut neg = MultiOp::one(nv);
        for (i, &li) in l.iter().enumerate() {
            let d = MultiOp::partial(nv, i);
            if li > 0 {
                pos = pos.mul(&d.pow(li as u32));
            } else if li < 0 {
                neg = neg.mul(&d.pow((-li) as u32));
            }
        }
        boxes.push(if l.iter().all(|&x| x == 0) { MultiOp::zero(nv) } else { pos.sub(&neg) });
    }
    let mut euler = Vec::new();
    for j in 0..=t.dim() {
        let mut z = MultiOp::constant(nv, Rational::from(-t.beta[j]));
        for (i, p) in t.points.iter().enumerate() {
            let w = if j == 0 { 1 } else { p[j - 1] };
            if w != 0 {
                z = z.add(&MultiOp::theta(nv, i).scale(&Rational::from(w)));
            }
        }
        euler.push(z);
    }
    Ok(GkzSystem { toric: t.clone(), boxes, euler })
}

fn falling(m: u32) -> QPoly {
    (0..m).fold(QPoly::one(), |acc, j| acc.mul(&QPoly::from_ints(&[-i64::from(j), 1])))
}

/// Laplace transform in variable k: ∂_k → z, a_k → −∂_z, θ_k → −θ_z − 1.
pub fn laplace_in_var(op: &MultiOp, k: usize, z: usize) -> Result<MultiOp> {
    let nv = op.nvars();
    // Group by the other variables and the a_k exponent to get p(θ_k).
    let mut groups: BTreeMap<(Key, i64), Vec<Rational>> = BTreeMap::new();
    for (key, c) in op.terms() {
        if key[z] != (0, 0) {
            return Err(Error::Reduction("operator already involves z".into()));
        }
        let (e, b) = key[k];
        let mut rest = key.clone();
        rest[k] = (0, 0);
        let v = groups.entry((rest, e)).or_default();
        if v.len() <= b as usize {
            v.resize(b as usize + 1, Rational::new());
        }
        v[b as usize] += c;
    }
    let m1 = Rational::from(-1);
    let mut out = MultiOp::zero(nv);
    for ((rest, e), coeffs) in groups {
        let p = QPoly::new(coeffs);
        let zop = if e < 0 {
            let m = (-e) as u32;
            let qp = p.exact_div(&falling(m)).ok_or_else(|| {
                Error::Reduction(format!("a_{k}^{e} part is not a multiple of ∂^{m}"))
            })?;
            ThetaOperator::z_times_poly(i64::from(m), &qp.compose_linear(&m1, &m1))
        } else {
            let sign = if e % 2 == 0 { Rational::from(1) } else { m1.clone() };
            let de = ThetaOperator::z_times_poly(-e, &falling(e as u32)).scale(&sign);
            de.mul(&ThetaOperator::z_times_poly(0, &p.compose_linear(&m1, &m1)))
        };
        let mut base_key = rest;
        base_key[z] = (0, 0);
        let mut base = MultiOp::zero(nv);
        base.add_term(base_key, Rational::from(1));
        out = out.add(&base.mul(&MultiOp::embed(nv, z, &zop)));
    }
    Ok(out)
}

/// Outcome of a reduction to one variable.
#[derive(Clone, Debug)]
pub struct GkzReduction {
    /// Normalized operator in z̃.
    pub operator: ThetaOperator,
    /// Variables that remain after the transform, in order.
    pub variables: Vec<String>,
    /// Exponents of z̃ = sign·Π v^{u_v}; u_z = 1.
    pub u: Vec<Rational>,
    /// Exponents of the prefactor Π v^{λ_v}; λ_z = 0.
    pub lambda: Vec<Rational>,
    pub sign: i64,
    /// Transformed Euler operators.
    pub euler: Vec<MultiOp>,
    /// Transformed box operators.
    pub boxes: Vec<MultiOp>,
}

impl GkzReduction {
    /// z̃ as a monomial, e.g. `z~ = -a0^5*a1^-1*a2^-1*a3^-1*a4^-1*z`.
    pub fn invariant_coordinate(&self) -> String {
        let mut parts = Vec::new();
        for (name, u) in self.variables.iter().zip(&self.u) {
            if *u == 0 {
                continue;
            }
            if *u == 1 {
                parts.push(name.clone());
            } else {
                parts.push(if is_integer(u) { format!("{name}^{}", fmt_rational(u)) } else { format!("{name}^({})", fmt_rational(u)) });
            }
        }
        let sign = if self.sign < 0 { "-" } else { "" };
        format!("z~ = {sign}{}", parts.join("*"))
    }
}

/// Reads a first-order operator Σ A_v θ_v + b over the given variables.
fn linear_form(op: &MultiOp, active: &[usize]) -> Result<(Vec<Rational>, Rational)> {
    let mut a = vec![Rational::new(); active.len()];
    let mut b = Rational::new();
    for (key, c) in op.terms() {
        let nz: Vec<usize> = (0..key.len()).filter(|&v| key[v] != (0, 0)).collect();
        match nz.as_slice() {
            [] => b += c,
            [v] if key[*v] == (0, 1) => {
                let pos = active
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| Error::Reduction("Euler operator involves an eliminated variable".into()))?;
                a[pos] += c;
            }
            _ => return Err(Error::Reduction("Euler operator is not first order".into())),
        }
    }
    Ok((a, b))
}

fn reduce(sys: &GkzSystem, k: usize, sign_from_u0: bool) -> Result<GkzReduction> {
    let nv = sys.nvars();
    let z = sys.z_index();
    let names = sys.var_names();
    let boxes: Vec<MultiOp> = sys.boxes.iter().map(|b| laplace_in_var(b, k, z)).collect::<Result<_>>()?;
    let euler: Vec<MultiOp> = sys.euler.iter().map(|e| laplace_in_var(e, k, z)).collect::<Result<_>>()?;
    let active: Vec<usize> = (0..nv).filter(|&v| v != k).collect();
    let variables: Vec<String> = active.iter().map(|&v| names[v].clone()).collect();
    let zpos = active.len() - 1;

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for e in &euler {
        if e.is_zero() {
            continue;
        }
        let (a, b) = linear_form(e, &active)?;
        rows.push(a);
        rhs.push(-b);
    }

    if boxes.iter().all(|b| b.is_zero()) {
        // No box relation: the Euler operators themselves must reduce to z.
        for (row, r) in rows.iter().zip(&rhs) {
            if row.iter().enumerate().any(|(i, c)| i != zpos && *c != 0) {
                return Err(Error::Reduction("Euler relation involves a_i with no box operator".into()));
            }
            let p = QPoly::linear(row[zpos].clone(), Rational::from(-r));
            if p.is_zero() {
                continue;
            }
            let op = ThetaOperator::z_times_poly(0, &p).normalize();
            let mut u = vec![Rational::new(); active.len()];
            u[zpos] = Rational::from(1);
            return Ok(GkzReduction {
                operator: op,
                variables,
                u,
                lambda: vec![Rational::new(); active.len()],
                sign: 1,
                euler,
                boxes,
            });
        }
        return Err(Error::Reduction("no relation to reduce".into()));
    }

    let ker = nullspace(&rows, active.len(), &Rational::from(1));
    if ker.len() != 1 {
        return Err(Error::Reduction(format!("torus-invariant directions: {} (need 1)", ker.len())));
    }
    let uz = ker[0][zpos].clone();
    if uz == 0 {
        return Err(Error::Reduction("invariant coordinate does not involve z".into()));
    }
    let u: Vec<Rational> = ker[0].iter().map(|x| Rational::from(x / &uz)).collect();
    let rows_noz: Vec<Vec<Rational>> =
        rows.iter().map(|r| r.iter().enumerate().filter(|(i, _)| *i != zpos).map(|(_, c)| c.clone()).collect()).collect();
    let mut lambda = if rows_noz.is_empty() || rows_noz[0].is_empty() {
        Vec::new()
    } else {
        solve_unique(&rows_noz, &rhs)?
    };
    lambda.push(Rational::new());

    let sign = if sign_from_u0 {
        let u0 = &u[0];
        if !is_integer(u0) {
            return Err(Error::Reduction("a_0 exponent of z̃ is not an integer".into()));
        }
        if u0.numer().is_odd() {
            -1
        } else {
            1
        }
    } else {
        1
    };

    let mut result = ThetaOperator::zero();
    for bx in &boxes {
        let mut by_exp: BTreeMap<Vec<i64>, QPoly> = BTreeMap::new();
        for (key, c) in bx.terms() {
            let exps: Vec<i64> = active.iter().map(|&v| key[v].0).collect();
            let mut poly = QPoly::constant(c.clone());
            for (i, &v) in active.iter().enumerate() {
                let b = key[v].1;
                if b > 0 {
                    poly = poly.mul(&QPoly::linear(u[i].clone(), lambda[i].clone()).pow(b));
                }
            }
            let e = by_exp.entry(exps).or_default();
            *e = e.add(&poly);
        }
        let Some(reference) = by_exp.keys().next().cloned() else { continue };
        let mut shifted: Vec<(i64, QPoly)> = Vec::new();
        for (exps, poly) in by_exp {
            let kz = Rational::from(exps[zpos] - reference[zpos]);
            for i in 0..active.len() {
                let want = Rational::from(&kz * &u[i]);
                if exps[i] - reference[i] != want {
                    return Err(Error::Reduction(format!(
                        "residual dependence on {} after substitution",
                        variables[i]
                    )));
                }
            }
            shifted.push((kz.numer().to_i64().expect("small exponent"), poly));
        }
        let kmin = shifted.iter().map(|(k, _)| *k).min().unwrap_or(0);
        let mut op = ThetaOperator::zero();
        for (kk, poly) in shifted {
            op = op.add(&ThetaOperator::z_times_poly(kk - kmin, &poly));
        }
        if !op.is_zero() {
            result = op;
            break;
        }
    }
    let result = result.rescale_z(&Rational::from(sign)).normalize();
    Ok(GkzReduction { operator: result, variables, u, lambda, sign, euler, boxes })
}

/// Transform in the interior point a_0 and reduce in z̃ = Π a_i^{u_i}·z.
pub fn laplace_star(sys: &GkzSystem) -> Result<GkzReduction> {
    reduce(sys, 0, false)
}

/// Transform in the point a_ν (ν ≠ 0) and reduce in
/// z̃ = (−1)^{u_0}·Π v^{u_v}, where u_0 = d for the catalog models.
pub fn laplace_nu(sys: &GkzSystem, nu: usize) -> Result<GkzReduction> {
    if nu == 0 || nu >= sys.toric.num_points() {
        return Err(Error::Reduction(format!("ν must index a nonzero point, got {nu}")));
    }
    reduce(sys, nu, true)
}

impl fmt::Display for GkzReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}", self.invariant_coordinate(), self.operator)
    }
}
