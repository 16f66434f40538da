//! Deterministic SVG figures: the grid as circles (filled for 1-points,
//! hollow for 0-points), the 1-set's hull outlined, the edge-relaxation gain
//! region shaded, and essential points starred.

use std::fmt::Write as _;

use clap::ValueEnum;
use num::ToPrimitive;
use teachset::geometry::{
    clip_halfplanes, convex_hull_2d, edge_system, perimeter_and_min_angle, Halfplane, PolygonKind,
};
use teachset::{Error, GridFunction, LatticePoint, Result};

/// One grid unit in pixels.
const UNIT: f64 = 32.0;
/// Canvas margin around the outermost grid points, in pixels.
const MARGIN: f64 = 24.0;

/// Drawable layers, bottom to top: the shaded relaxation region, the hull
/// outline, then 0-points, 1-points, and essential-point stars.
#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Layer {
    Ones,
    Zeros,
    Hull,
    Delta,
    Essential,
}

pub const ALL_LAYERS: [Layer; 5] = [
    Layer::Ones,
    Layer::Zeros,
    Layer::Hull,
    Layer::Delta,
    Layer::Essential,
];

/// Render the function to a standalone SVG document. Pure: identical inputs
/// yield identical bytes.
pub fn render_svg(f: &GridFunction, layers: &[Layer], essential: &[LatticePoint]) -> Result<String> {
    let grid = f.grid();
    if grid.d() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: grid.d(),
        });
    }
    if grid.n() > 64 {
        return Err(Error::Precondition(
            "figures are limited to grid sides up to 64".into(),
        ));
    }
    let n = grid.n() as f64;
    let span = UNIT * (n - 1.0) + 2.0 * MARGIN;
    let px = |x: i64| MARGIN + UNIT * x as f64;
    let py = |y: i64| MARGIN + UNIT * ((n - 1.0) - y as f64);
    let pxf = |x: f64| MARGIN + UNIT * x;
    let pyf = |y: f64| MARGIN + UNIT * ((n - 1.0) - y);
    let want = |l: Layer| layers.contains(&l);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{span:.0}" height="{span:.0}" viewBox="0 0 {span:.0} {span:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="{span:.0}" height="{span:.0}" fill="white"/>"#);

    let ones = f.ones_points();
    let hull = if ones.is_empty() {
        None
    } else {
        Some(convex_hull_2d(&ones)?)
    };

    if want(Layer::Delta) {
        if let Some(hull) = hull.as_ref().filter(|h| h.kind() == PolygonKind::Polygon) {
            let (_, min_angle) = perimeter_and_min_angle(hull)?;
            let relaxed: Vec<Halfplane> =
                edge_system(hull)?.iter().map(Halfplane::relaxed).collect();
            let pad = (n + 2.0 / min_angle.sin() + 8.0).ceil() as i64;
            let ring = clip_halfplanes(&relaxed, pad);
            if ring.len() >= 3 {
                // even-odd fill of the outer relaxed ring against the hull
                // leaves exactly the gained band shaded
                let mut path = String::new();
                for (i, (x, y)) in ring.iter().enumerate() {
                    let cmd = if i == 0 { 'M' } else { 'L' };
                    let _ = write!(
                        path,
                        "{cmd}{:.2},{:.2} ",
                        pxf(x.to_f64().unwrap_or(0.0)),
                        pyf(y.to_f64().unwrap_or(0.0))
                    );
                }
                path.push_str("Z ");
                for (i, v) in hull.vertices().iter().enumerate() {
                    let cmd = if i == 0 { 'M' } else { 'L' };
                    let _ = write!(path, "{cmd}{:.2},{:.2} ", px(v.0), py(v.1));
                }
                path.push('Z');
                let _ = writeln!(
                    out,
                    r##"<path d="{path}" fill="#9db4d4" fill-opacity="0.35" fill-rule="evenodd" stroke="none"/>"##
                );
            }
        }
    }

    if want(Layer::Hull) {
        if let Some(hull) = hull.as_ref() {
            match hull.kind() {
                PolygonKind::Polygon | PolygonKind::Segment => {
                    let pts: Vec<String> = hull
                        .vertices()
                        .iter()
                        .map(|v| format!("{:.2},{:.2}", px(v.0), py(v.1)))
                        .collect();
                    let _ = writeln!(
                        out,
                        r##"<polygon class="hull" points="{}" fill="none" stroke="#1f3a63" stroke-width="2"/>"##,
                        pts.join(" ")
                    );
                }
                PolygonKind::Point => {}
            }
        }
    }

    if want(Layer::Zeros) {
        for p in f.zeros_points() {
            let (x, y) = p.as_xy()?;
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="7" fill="white" stroke="black" stroke-width="1.5"/>"#,
                px(x),
                py(y)
            );
        }
    }

    if want(Layer::Ones) {
        for p in &ones {
            let (x, y) = p.as_xy()?;
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="7" fill="black" stroke="black" stroke-width="1.5"/>"#,
                px(x),
                py(y)
            );
        }
    }

    if want(Layer::Essential) {
        for p in essential {
            let (x, y) = p.as_xy()?;
            let _ = writeln!(out, "{}", star(px(x), py(y)));
        }
    }

    out.push_str("</svg>\n");
    Ok(out)
}

/// Five-pointed star centered on the given pixel.
fn star(cx: f64, cy: f64) -> String {
    let mut pts = Vec::with_capacity(10);
    for i in 0..10 {
        let r = if i % 2 == 0 { 12.0 } else { 5.0 };
        let angle = -std::f64::consts::FRAC_PI_2 + i as f64 * std::f64::consts::PI / 5.0;
        pts.push(format!(
            "{:.2},{:.2}",
            cx + r * angle.cos(),
            cy + r * angle.sin()
        ));
    }
    format!(
        r##"<polygon class="star" points="{}" fill="#e0a93d" stroke="black" stroke-width="1"/>"##,
        pts.join(" ")
    )
}
