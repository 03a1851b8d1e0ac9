//! SVG schematics for two-criterion instances: the shaded region
//! `x_k + E`, the outline of `x_k + E^ε̄`, generator arrows, the
//! alternatives, and optionally a sampled value-function field.

use std::fmt::Write as _;

use crate::cones::{FacetCone, GeneratorCone, MembershipClass};
use crate::error::{Error, Result};
use crate::instance::PreferenceInstance;
use crate::linalg::dot;
use crate::valuefn::ValueFunction;

#[derive(Debug, Clone)]
pub struct PlotOptions {
    /// Side length of the square image, in pixels.
    pub size: u32,
    /// Half-width of the displayed window around `x_k`; derived from the
    /// data when `None`.
    pub half_width: Option<f64>,
    /// Outline `x_k + E^ε̄` for this ε̄.
    pub epsilon_bar: Option<f64>,
    /// Value function to paint as a background field.
    pub field: Option<ValueFunction>,
    /// Field cells per side.
    pub grid: usize,
}

impl Default for PlotOptions {
    fn default() -> Self {
        Self {
            size: 480,
            half_width: None,
            epsilon_bar: None,
            field: None,
            grid: 48,
        }
    }
}

/// Viewport in criterion space, centered on the reference alternative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub center: [f64; 2],
    pub half_width: f64,
    pub size: f64,
}

impl Viewport {
    pub fn for_instance(inst: &PreferenceInstance, half_width: Option<f64>, size: u32) -> Self {
        let xk = inst.reference();
        let center = [xk[0], xk[1]];
        let half_width = half_width.unwrap_or_else(|| {
            let spread = inst
                .alternatives
                .iter()
                .flat_map(|a| [(a[0] - xk[0]).abs(), (a[1] - xk[1]).abs()])
                .fold(0.0, f64::max);
            (spread * 1.4).max(1.0)
        });
        Self {
            center,
            half_width,
            size: size as f64,
        }
    }

    pub fn to_pixel(&self, x: [f64; 2]) -> [f64; 2] {
        let s = self.size / (2.0 * self.half_width);
        [
            (x[0] - self.center[0] + self.half_width) * s,
            (self.center[1] + self.half_width - x[1]) * s,
        ]
    }

    pub fn to_criteria(&self, px: [f64; 2]) -> [f64; 2] {
        let s = (2.0 * self.half_width) / self.size;
        [
            self.center[0] - self.half_width + px[0] * s,
            self.center[1] + self.half_width - px[1] * s,
        ]
    }
}

/// Unit directions of the boundary rays of a 2D cone given by its facets.
/// A half-plane yields both directions of its boundary line.
pub fn boundary_rays_2d(facets: &FacetCone) -> Vec<[f64; 2]> {
    let mut out: Vec<[f64; 2]> = Vec::new();
    for a in &facets.facet_normals {
        for dir in [[-a[1] + 0.0, a[0] + 0.0], [a[1] + 0.0, -a[0] + 0.0]] {
            let inside = facets.facet_normals.iter().all(|b| dot(b, &dir) >= -1e-9);
            let fresh = out.iter().all(|o| (o[0] - dir[0]).abs() + (o[1] - dir[1]).abs() > 1e-9);
            if inside && fresh {
                out.push(dir);
            }
        }
    }
    out
}

/// Clips the square `[-h, h]²` to `{y : a·y ≥ 0}` for every facet normal.
pub fn clip_square(facets: &FacetCone, h: f64) -> Vec<[f64; 2]> {
    let mut poly = vec![[-h, -h], [h, -h], [h, h], [-h, h]];
    for a in &facets.facet_normals {
        let f = |p: &[f64; 2]| a[0] * p[0] + a[1] * p[1];
        let mut next = Vec::with_capacity(poly.len() + 1);
        for i in 0..poly.len() {
            let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
            let (fp, fq) = (f(&p), f(&q));
            if fp >= 0.0 {
                next.push(p);
            }
            if (fp >= 0.0) != (fq >= 0.0) {
                let t = fp / (fp - fq);
                next.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
            }
        }
        poly = next;
        if poly.is_empty() {
            break;
        }
    }
    poly
}

fn polygon_points(view: &Viewport, poly: &[[f64; 2]]) -> String {
    poly.iter()
        .map(|p| {
            let px = view.to_pixel([p[0] + view.center[0], p[1] + view.center[1]]);
            format!("{:.2},{:.2}", px[0], px[1])
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn field_color(v: f64, scale: f64) -> String {
    let t = (v / scale).clamp(-1.0, 1.0);
    let (r, g, b) = if t >= 0.0 {
        (255.0 - 155.0 * t, 255.0 - 55.0 * t, 255.0 - 155.0 * t)
    } else {
        (255.0 + 20.0 * t, 255.0 + 155.0 * t, 255.0 + 155.0 * t)
    };
    format!("rgb({},{},{})", r as u8, g as u8, b as u8)
}

pub fn plot2d(inst: &PreferenceInstance, opts: &PlotOptions) -> Result<String> {
    inst.validated()?;
    if inst.dim() != 2 {
        return Err(Error::UnsupportedDimension(inst.dim()));
    }
    let view = Viewport::for_instance(inst, opts.half_width, opts.size);
    let size = view.size;
    let h = view.half_width * 1.5;
    let cone = GeneratorCone::from_instance(inst, 0.0);
    let facets = cone.facets()?;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{size}" height="{size}" fill="white"/>"#);

    if let Some(f) = &opts.field {
        let n = opts.grid.max(2);
        let cell = size / n as f64;
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let c = view.to_criteria([(j as f64 + 0.5) * cell, (i as f64 + 0.5) * cell]);
                values.push(f.evaluate(&c)?);
            }
        }
        let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-12);
        let _ = writeln!(svg, r#"<g class="field" data-function="{}">"#, f.kind().as_str());
        for i in 0..n {
            for j in 0..n {
                let _ = writeln!(
                    svg,
                    r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                    j as f64 * cell,
                    i as f64 * cell,
                    cell + 0.5,
                    cell + 0.5,
                    field_color(values[i * n + j], scale)
                );
            }
        }
        let _ = writeln!(svg, "</g>");
    }

    let shade_opacity = if opts.field.is_some() { 0.15 } else { 0.35 };
    if facets.is_whole_space {
        let _ = writeln!(
            svg,
            r#"<rect class="cone-region whole-space" width="{size}" height="{size}" fill="steelblue" fill-opacity="{shade_opacity}"/>"#
        );
        let _ = writeln!(svg, r#"<text class="annotation" x="10" y="20">E = ℝ²</text>"#);
    } else {
        let poly = clip_square(&facets, h);
        let _ = writeln!(
            svg,
            r#"<polygon class="cone-region" points="{}" fill="steelblue" fill-opacity="{shade_opacity}" stroke="none"/>"#,
            polygon_points(&view, &poly)
        );
        let origin = view.to_pixel(view.center);
        for dir in boundary_rays_2d(&facets) {
            let end = view.to_pixel([view.center[0] + dir[0] * h * 2.0, view.center[1] + dir[1] * h * 2.0]);
            let _ = writeln!(
                svg,
                r#"<line class="boundary-ray" data-direction="{:.6},{:.6}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="steelblue" stroke-width="2"/>"#,
                dir[0], dir[1], origin[0], origin[1], end[0], end[1]
            );
        }
        let _ = writeln!(svg, r#"<text class="annotation" x="10" y="20">x_k + E</text>"#);
    }

    if let Some(eps) = opts.epsilon_bar {
        let perturbed = GeneratorCone::from_instance(inst, eps).facets()?;
        if !perturbed.is_whole_space {
            let poly = clip_square(&perturbed, h);
            let _ = writeln!(
                svg,
                r#"<polygon class="perturbed-region" data-epsilon="{eps}" points="{}" fill="none" stroke="darkorange" stroke-width="1.5" stroke-dasharray="6,4"/>"#,
                polygon_points(&view, &poly)
            );
        }
    }

    let _ = writeln!(
        svg,
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"black\"/></marker></defs>"
    );
    let xk = inst.reference();
    let origin = view.to_pixel([xk[0], xk[1]]);
    for (g, j) in inst.generators(0.0).iter().zip(&inst.preferred_indices) {
        let end = view.to_pixel([xk[0] + g[0], xk[1] + g[1]]);
        let _ = writeln!(
            svg,
            r#"<line class="generator" data-index="{j}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" marker-end="url(#arrow)"/>"#,
            origin[0], origin[1], end[0], end[1]
        );
    }

    for (i, alt) in inst.alternatives.iter().enumerate() {
        let px = view.to_pixel([alt[0], alt[1]]);
        let (class, fill) = if i == inst.reference_index {
            ("reference", "crimson")
        } else if inst.preferred_indices.contains(&i) {
            ("preferred", "black")
        } else {
            ("other", "gray")
        };
        let _ = writeln!(
            svg,
            r#"<circle class="{class}" cx="{:.2}" cy="{:.2}" r="4" fill="{fill}"/><text x="{:.2}" y="{:.2}">x{i}</text>"#,
            px[0],
            px[1],
            px[0] + 6.0,
            px[1] - 6.0
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Membership of `x − x_k` in `E`, for hover/click readouts.
pub fn membership(inst: &PreferenceInstance, x: [f64; 2]) -> Result<Option<MembershipClass>> {
    let facets = GeneratorCone::from_instance(inst, 0.0).facets()?;
    if facets.is_whole_space {
        return Ok(None);
    }
    let xk = inst.reference();
    crate::cones::classify(&[x[0] - xk[0], x[1] - xk[1]], &facets).map(Some)
}
