//! Two-dimensional sections of unit balls, traced along rays and drawn as
//! SVG polygons.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::Path;

use renorm_core::{norm_ball_gauge, CoordVector, NormOracle};

use crate::error::{io_err, CliError, Result};

/// Bisection accuracy of each traced radius.
const TRACE_TOL: f64 = 1e-12;
/// Allowed `|norm(vertex) - 1|` for every emitted vertex.
pub const SELF_CHECK_TOL: f64 = 1e-3;

const FILLS: [&str; 4] = ["#d0d0d0", "#6e6e6e", "#a0c4e8", "#f0c080"];
const SIZE: f64 = 480.0;

/// Plane `{s p1 + t p2}` spanned by two independent vectors.
#[derive(Debug, Clone)]
pub struct Plane {
    p1: CoordVector,
    p2: CoordVector,
}

impl Plane {
    pub fn new(p1: CoordVector, p2: CoordVector) -> Result<Self> {
        if p1.dim() != p2.dim() {
            return Err(CliError::Config(format!(
                "plane vectors have dimensions {} and {}",
                p1.dim(),
                p2.dim()
            )));
        }
        let (a, b, c) = (p1.dot(&p1), p2.dot(&p2), p1.dot(&p2));
        if !(a * b - c * c > 1e-12 * a * b) {
            return Err(CliError::Config("degenerate section plane: vectors are dependent".into()));
        }
        Ok(Self { p1, p2 })
    }

    pub fn point(&self, s: f64, t: f64) -> CoordVector {
        self.p1.scaled(s).add_scaled(t, &self.p2)
    }

    pub fn dim(&self) -> usize {
        self.p1.dim()
    }
}

/// Traced boundary of one norm's section; `radii[k]` is along angle
/// `2πk / resolution` in plane coordinates.
#[derive(Debug, Clone)]
pub struct Boundary {
    pub label: String,
    pub radii: Vec<f64>,
    /// Largest `|norm(vertex) - 1|`.
    pub worst_self_check: f64,
}

impl Boundary {
    pub fn vertices(&self) -> Vec<(f64, f64)> {
        let m = self.radii.len();
        self.radii
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let a = TAU * k as f64 / m as f64;
                (r * a.cos(), r * a.sin())
            })
            .collect()
    }

    pub fn self_check_pass(&self) -> bool {
        self.worst_self_check <= SELF_CHECK_TOL
    }
}

#[derive(Debug, Clone)]
pub struct SectionRender {
    pub boundaries: Vec<Boundary>,
    pub svg: String,
}

impl SectionRender {
    pub fn worst_self_check(&self) -> f64 {
        self.boundaries.iter().fold(0.0, |m, b| m.max(b.worst_self_check))
    }
}

pub fn trace_boundary(norm: &NormOracle, plane: &Plane, resolution: usize) -> Result<Boundary> {
    if plane.dim() != norm.dim() {
        return Err(CliError::Config(format!(
            "plane of dimension {} for a norm on R^{}",
            plane.dim(),
            norm.dim()
        )));
    }
    let mut radii = Vec::with_capacity(resolution);
    let mut worst = 0.0f64;
    for k in 0..resolution {
        let a = TAU * k as f64 / resolution as f64;
        let u = plane.point(a.cos(), a.sin());
        let r = 1.0 / norm_ball_gauge(norm, &u, TRACE_TOL)?;
        worst = worst.max((norm.eval(&u.scaled(r)) - 1.0).abs());
        radii.push(r);
    }
    Ok(Boundary {
        label: norm.label().to_string(),
        radii,
        worst_self_check: worst,
    })
}

/// Traces every norm and draws them in order, so later norms sit on top.
/// `guides` are extra closed outlines in plane coordinates, drawn dashed.
pub fn render_section(
    norms: &[NormOracle],
    plane: &Plane,
    resolution: usize,
    guides: &[(&str, Vec<(f64, f64)>)],
) -> Result<SectionRender> {
    if resolution < 3 {
        return Err(CliError::Config(format!("section resolution {resolution} below 3")));
    }
    let boundaries = norms
        .iter()
        .map(|n| trace_boundary(n, plane, resolution))
        .collect::<Result<Vec<_>>>()?;
    let extent = boundaries
        .iter()
        .flat_map(|b| b.vertices())
        .chain(guides.iter().flat_map(|(_, g)| g.iter().copied()))
        .fold(0.0f64, |m, (x, y)| m.max(x.abs()).max(y.abs()))
        * 1.1;
    let scale = SIZE / (2.0 * extent);
    let px = |(x, y): (f64, f64)| (SIZE / 2.0 + x * scale, SIZE / 2.0 - y * scale);
    let points = |vs: &[(f64, f64)]| {
        vs.iter()
            .map(|&v| {
                let (a, b) = px(v);
                format!("{a:.3},{b:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let c = SIZE / 2.0;
    let _ = writeln!(
        svg,
        r##"<path d="M0,{c} H{SIZE} M{c},0 V{SIZE}" stroke="#999" stroke-width="0.5"/>"##
    );
    for (i, b) in boundaries.iter().enumerate() {
        let _ = writeln!(
            svg,
            r##"<polygon data-label="{}" points="{}" fill="{}" stroke="#000" stroke-width="0.8"/>"##,
            b.label,
            points(&b.vertices()),
            FILLS[i % FILLS.len()]
        );
    }
    for (label, g) in guides {
        let _ = writeln!(
            svg,
            r##"<polygon data-label="{label}" points="{}" fill="none" stroke="#c00" stroke-width="0.8" stroke-dasharray="4 3"/>"##,
            points(g)
        );
    }
    for (i, b) in boundaries.iter().enumerate() {
        let _ = writeln!(
            svg,
            r##"<text x="8" y="{}" font-family="sans-serif" font-size="12" fill="{}">{}</text>"##,
            16 + 14 * i,
            if i == 0 { "#444" } else { "#000" },
            b.label
        );
    }
    svg.push_str("</svg>\n");
    Ok(SectionRender { boundaries, svg })
}

/// [`render_section`] without guides, written to `path`.
pub fn render_section_svg(norms: &[NormOracle], plane: &Plane, resolution: usize, path: &Path) -> Result<SectionRender> {
    let r = render_section(norms, plane, resolution, &[])?;
    std::fs::write(path, &r.svg).map_err(io_err(path))?;
    Ok(r)
}

/// Axis-aligned square `[-a, a]²` as a closed outline.
pub fn square(a: f64) -> Vec<(f64, f64)> {
    vec![(a, a), (-a, a), (-a, -a), (a, -a)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane2() -> Plane {
        Plane::new(CoordVector::basis(2, 1), CoordVector::basis(2, 2)).unwrap()
    }

    #[test]
    fn linf_section_is_the_square() {
        let b = trace_boundary(&NormOracle::linf(2), &plane2(), 8).unwrap();
        assert!(b.self_check_pass());
        assert!((b.radii[0] - 1.0).abs() < 1e-11);
        assert!((b.radii[1] - 2f64.sqrt()).abs() < 1e-11);
        let v = b.vertices()[1];
        assert!((v.0 - 1.0).abs() < 1e-11 && (v.1 - 1.0).abs() < 1e-11);
    }

    #[test]
    fn degenerate_plane_rejected() {
        let e1 = CoordVector::basis(3, 1);
        assert!(Plane::new(e1.clone(), e1.scaled(-2.0)).is_err());
        assert!(Plane::new(e1, CoordVector::basis(2, 2)).is_err());
    }

    #[test]
    fn svg_layers_in_order() {
        let r = render_section(
            &[NormOracle::l1(2), NormOracle::l2(2)],
            &plane2(),
            64,
            &[("unit", square(1.0))],
        )
        .unwrap();
        let a = r.svg.find(r#"data-label="l1""#).unwrap();
        let b = r.svg.find(r#"data-label="l2""#).unwrap();
        assert!(a < b && r.svg.contains("stroke-dasharray"));
        assert!(r.worst_self_check() < 1e-9);
        let dir = std::env::temp_dir().join("renorm-svg-test.svg");
        render_section_svg(&[NormOracle::l2(2)], &plane2(), 16, &dir).unwrap();
        assert!(std::fs::read_to_string(&dir).unwrap().starts_with("<svg"));
    }
}
