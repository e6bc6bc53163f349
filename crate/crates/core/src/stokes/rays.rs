//! Stokes rays of the formal basis, the cut of the logarithms and the
//! angular region Ξ_l, with a static SVG rendering.

use std::fmt::Write as _;

use rug::Rational;

use crate::models::ModelData;

/// A half line arg z = angle_over_pi·π labelled (i, j) for R_ij.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub angle_over_pi: Rational,
    pub label: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayConfig {
    pub rays: Vec<Ray>,
    /// Direction of the cut of the logarithms, in units of π.
    pub cut_over_pi: Rational,
    /// Ξ_l = Ξ(lo, hi), in units of π.
    pub xi: (Rational, Rational),
}

/// Rays for exponential parts Λ_k(z) = c_k·z with real c_k. Each pair with
/// c_i ≠ c_j gives R_ij and R_ji on the line Re((c_i − c_j)z) = 0, with R_ij
/// the half line whose counterclockwise rotation enters Re(Λ_i − Λ_j) > 0.
pub fn rays_from_exponents(c: &[Rational]) -> Vec<Ray> {
    let mut rays = Vec::new();
    for i in 0..c.len() {
        for j in 0..c.len() {
            if i == j || c[i] == c[j] {
                continue;
            }
            // d/dθ Re(c e^{iθ}) = −c sin θ, positive at θ = π/2 iff c < 0.
            let diff = Rational::from(&c[i] - &c[j]);
            let angle = if diff < 0 { Rational::from((1, 2)) } else { Rational::from((-1, 2)) };
            rays.push(Ray { angle_over_pi: angle, label: (i + 1, j + 1) });
        }
    }
    rays
}

/// Λ_1 = Λ_2 = Λ_3 = 0 and Λ_4 = −x_c·z: R_4i at π/2, R_i4 at −π/2,
/// Ξ_l = Ξ(−π/2, 3π/2) and the cut along its boundary direction −π/2.
pub fn ray_geometry(m: &ModelData) -> RayConfig {
    let zero = Rational::new();
    let c = [zero.clone(), zero.clone(), zero, -m.x_c()];
    RayConfig {
        rays: rays_from_exponents(&c),
        cut_over_pi: Rational::from((-1, 2)),
        xi: (Rational::from((-1, 2)), Rational::from((3, 2))),
    }
}

impl RayConfig {
    /// Distinct ray directions with their labels grouped.
    pub fn directions(&self) -> Vec<(Rational, Vec<(usize, usize)>)> {
        let mut out: Vec<(Rational, Vec<(usize, usize)>)> = Vec::new();
        for r in &self.rays {
            match out.iter_mut().find(|(a, _)| *a == r.angle_over_pi) {
                Some((_, labels)) => labels.push(r.label),
                None => out.push((r.angle_over_pi.clone(), vec![r.label])),
            }
        }
        out
    }
}

const PANEL: f64 = 220.0;
const RADIUS: f64 = 90.0;

fn point(cx: f64, cy: f64, r: f64, angle_over_pi: f64) -> (f64, f64) {
    let t = angle_over_pi * std::f64::consts::PI;
    (cx + r * t.cos(), cy - r * t.sin())
}

fn panel(out: &mut String, title: &str, cfg: &RayConfig, ox: f64) {
    let (cx, cy) = (ox + PANEL / 2.0, PANEL / 2.0 + 10.0);
    let _ = writeln!(out, r#"  <g id="{title}">"#);
    let _ = writeln!(out, r#"    <text x="{:.1}" y="16" text-anchor="middle" font-size="13">{title}</text>"#, cx);
    let _ = writeln!(
        out,
        r##"    <line x1="{:.1}" y1="{cy:.1}" x2="{:.1}" y2="{cy:.1}" stroke="#bbb" stroke-width="0.5"/>"##,
        cx - RADIUS,
        cx + RADIUS
    );
    for (angle, labels) in cfg.directions() {
        let (x, y) = point(cx, cy, RADIUS, angle.to_f64());
        let (lx, ly) = point(cx, cy, RADIUS + 12.0, angle.to_f64());
        let name = if labels.iter().all(|&(i, _)| i == labels[0].0) && labels.len() > 1 {
            format!("R_{}i", labels[0].0)
        } else if labels.iter().all(|&(_, j)| j == labels[0].1) && labels.len() > 1 {
            format!("R_i{}", labels[0].1)
        } else {
            format!("R_{}{}", labels[0].0, labels[0].1)
        };
        let _ = writeln!(out, r#"    <line x1="{cx:.1}" y1="{cy:.1}" x2="{x:.1}" y2="{y:.1}" stroke="black" stroke-width="1.5"/>"#);
        let _ = writeln!(out, r#"    <text x="{lx:.1}" y="{:.1}" text-anchor="middle" font-size="10">{name}</text>"#, ly + 3.0);
    }
    // The cut is drawn parallel to its direction, offset so it stays visible
    // next to a coinciding ray.
    let cut = cfg.cut_over_pi.to_f64();
    let (nx, ny) = point(0.0, 0.0, 5.0, cut + 0.5);
    let (x, y) = point(cx, cy, RADIUS, cut);
    let _ = writeln!(
        out,
        r#"    <line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black" stroke-dasharray="2,3"/>"#,
        cx + nx,
        cy + ny,
        x + nx,
        y + ny
    );
    // Ξ_l as a counterclockwise arc just inside its bounding directions.
    let (lo, hi) = (cfg.xi.0.to_f64() + 0.03, cfg.xi.1.to_f64() - 0.03);
    let r = 30.0;
    let (x0, y0) = point(cx, cy, r, lo);
    let (x1, y1) = point(cx, cy, r, hi);
    let large = if hi - lo > 1.0 { 1 } else { 0 };
    let _ = writeln!(
        out,
        r##"    <path d="M {x0:.1} {y0:.1} A {r:.1} {r:.1} 0 {large} 0 {x1:.1} {y1:.1}" fill="none" stroke="#36c"/>"##
    );
    let (tx, ty) = point(cx, cy, r + 10.0, 0.25);
    let _ = writeln!(out, r##"    <text x="{tx:.1}" y="{ty:.1}" font-size="10" fill="#36c">Ξ_l</text>"##);
    out.push_str("  </g>\n");
}

/// SVG 1.1 with one panel per configuration, side by side.
pub fn rays_svg(panels: &[(String, RayConfig)]) -> String {
    let width = PANEL * panels.len().max(1) as f64;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{h:.0}" viewBox="0 0 {width:.0} {h:.0}">"#,
        h = PANEL + 20.0
    );
    for (i, (title, cfg)) in panels.iter().enumerate() {
        panel(&mut out, title, cfg, i as f64 * PANEL);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ModelId;

    #[test]
    fn quintic_rays() {
        let cfg = ray_geometry(&ModelId::Y5.data());
        let dirs = cfg.directions();
        assert_eq!(dirs.len(), 2);
        assert_eq!(dirs[0], (Rational::from((-1, 2)), vec![(1, 4), (2, 4), (3, 4)]));
        assert_eq!(dirs[1], (Rational::from((1, 2)), vec![(4, 1), (4, 2), (4, 3)]));
    }

    #[test]
    fn svg_is_deterministic() {
        let cfg = ray_geometry(&ModelId::Y8.data());
        let a = rays_svg(&[("Y8".into(), cfg.clone())]);
        let b = rays_svg(&[("Y8".into(), cfg)]);
        assert_eq!(a, b);
        assert!(a.contains("stroke-dasharray") && a.contains("R_4i") && a.contains("R_i4"));
    }
}
