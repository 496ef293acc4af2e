//! Contour data for plane curves and their osculating conics.
//!
//! Grid signs are computed by exact rational evaluation; only the crossing
//! positions are linearly interpolated in floating point. This is the one
//! deliberately approximate computation in the crate, confined to plot
//! artifacts (CSV and SVG); no float ever feeds back into the algebra.

use num::{BigRational, FromPrimitive, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::point::ProjPoint;
use crate::polar::polar_cycle;
use crate::poly::Poly;
use crate::rat::Rat;

#[derive(Clone, Copy, Debug)]
pub struct PlotConfig {
    /// Cells per side of the sampling grid (2 gives the degenerate but
    /// valid 4-cell output).
    pub resolution: usize,
    /// Which variable is set to 1, fixing the affine chart.
    pub chart: usize,
}

impl Default for PlotConfig {
    fn default() -> Self {
        PlotConfig {
            resolution: 128,
            chart: 2,
        }
    }
}

/// One drawable object: a polyline soup of contour segments.
#[derive(Clone, Debug)]
pub struct PlotObject {
    pub id: String,
    pub segments: Vec<[(f64, f64); 2]>,
}

#[derive(Clone, Debug)]
pub struct PlotData {
    /// `(xmin, xmax, ymin, ymax)` of the sampled window.
    pub window: (f64, f64, f64, f64),
    pub objects: Vec<PlotObject>,
    /// Base points, in chart coordinates.
    pub markers: Vec<(f64, f64)>,
}

/// Samples the curve and the degree-2 polar cycles at the given points of
/// the curve, and extracts contour segments by marching squares. Every
/// point must lie on `V(F)` exactly and the second polar map must be
/// defined there.
pub fn plot_data(f: &Poly, points: &[ProjPoint], config: &PlotConfig) -> Result<PlotData> {
    if f.nvars() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: f.nvars(),
        });
    }
    if config.chart > 2 {
        return Err(Error::OutOfRange {
            what: "chart variable",
            value: config.chart as i64,
            min: 0,
            max: 2,
        });
    }
    if config.resolution < 2 {
        return Err(Error::OutOfRange {
            what: "resolution",
            value: config.resolution as i64,
            min: 2,
            max: i64::MAX,
        });
    }

    let mut objects: Vec<(String, Poly)> = vec![("curve".into(), f.clone())];
    let mut markers = Vec::new();
    for (i, point) in points.iter().enumerate() {
        if !f.evaluate(point.coords())?.is_zero() {
            return Err(Error::Precondition(format!(
                "point {} does not lie on the curve",
                point
            )));
        }
        let cycle = polar_cycle(f, 2, point)?;
        objects.push((format!("conic{}", i), cycle.form));
        if let Some(xy) = chart_coords(point, config.chart) {
            markers.push(xy);
        }
    }

    let window = fit_window(&objects, config.chart);
    let data_objects = objects
        .iter()
        .map(|(id, poly)| PlotObject {
            id: id.clone(),
            segments: march(poly, config.chart, window, config.resolution),
        })
        .collect();

    Ok(PlotData {
        window,
        objects: data_objects,
        markers,
    })
}

fn chart_coords(point: &ProjPoint, chart: usize) -> Option<(f64, f64)> {
    let c = &point.coords()[chart];
    if c.is_zero() {
        return None;
    }
    let (u, v) = chart_axes(chart);
    let x = (&point.coords()[u] / c).to_f64()?;
    let y = (&point.coords()[v] / c).to_f64()?;
    Some((x, y))
}

/// The two affine axes of a chart, in ascending variable order.
fn chart_axes(chart: usize) -> (usize, usize) {
    match chart {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Exact sign of the chart polynomial at rational chart coordinates.
fn sign_at(poly: &Poly, chart: usize, x: &Rat, y: &Rat) -> i8 {
    let (u, v) = chart_axes(chart);
    let mut coords = vec![Rat::zero(); 3];
    coords[chart] = Rat::from_integer(1.into());
    coords[u] = x.clone();
    coords[v] = y.clone();
    let value = poly.evaluate(&coords).expect("3 coordinates");
    if value.is_zero() {
        0
    } else if value.is_negative() {
        -1
    } else {
        1
    }
}

/// Coarse presample: bounding box of the sign changes of all objects on a
/// wide grid, padded by 10 percent; a fixed fallback window when nothing
/// crosses.
fn fit_window(objects: &[(String, Poly)], chart: usize) -> (f64, f64, f64, f64) {
    const COARSE: usize = 48;
    const SPAN: f64 = 8.0;
    let step = 2.0 * SPAN / COARSE as f64;
    let mut found = false;
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for (_, poly) in objects {
        let mut signs = vec![vec![0i8; COARSE + 1]; COARSE + 1];
        for i in 0..=COARSE {
            for j in 0..=COARSE {
                let x = rat_from_f64(-SPAN + i as f64 * step);
                let y = rat_from_f64(-SPAN + j as f64 * step);
                signs[i][j] = sign_at(poly, chart, &x, &y);
            }
        }
        for i in 0..COARSE {
            for j in 0..COARSE {
                let cell = [signs[i][j], signs[i + 1][j], signs[i][j + 1], signs[i + 1][j + 1]];
                let has_nonneg = cell.iter().any(|&s| s >= 0);
                let has_nonpos = cell.iter().any(|&s| s <= 0);
                if has_nonneg && has_nonpos && cell.iter().any(|&s| s != 0) {
                    found = true;
                    let x0 = -SPAN + i as f64 * step;
                    let y0 = -SPAN + j as f64 * step;
                    xmin = xmin.min(x0);
                    xmax = xmax.max(x0 + step);
                    ymin = ymin.min(y0);
                    ymax = ymax.max(y0 + step);
                }
            }
        }
    }
    if !found {
        return (-1.0, 1.0, -1.0, 1.0);
    }
    let margin_x = 0.1 * (xmax - xmin).max(1e-6);
    let margin_y = 0.1 * (ymax - ymin).max(1e-6);
    (
        xmin - margin_x,
        xmax + margin_x,
        ymin - margin_y,
        ymax + margin_y,
    )
}

fn rat_from_f64(v: f64) -> Rat {
    BigRational::from_f64(v).expect("finite float")
}

/// Marching squares with exact corner signs and interpolated crossings.
/// Zero values count as nonnegative; ambiguous saddles split by the exact
/// sign at the cell center.
fn march(poly: &Poly, chart: usize, window: (f64, f64, f64, f64), resolution: usize) -> Vec<[(f64, f64); 2]> {
    let (xmin, xmax, ymin, ymax) = window;
    let nx = resolution;
    let ny = resolution;
    let dx = (xmax - xmin) / nx as f64;
    let dy = (ymax - ymin) / ny as f64;

    // exact values at grid nodes
    let mut values: Vec<Vec<Rat>> = Vec::with_capacity(nx + 1);
    for i in 0..=nx {
        let mut column = Vec::with_capacity(ny + 1);
        let x = rat_from_f64(xmin + i as f64 * dx);
        for j in 0..=ny {
            let y = rat_from_f64(ymin + j as f64 * dy);
            let (u, v) = chart_axes(chart);
            let mut coords = vec![Rat::zero(); 3];
            coords[chart] = Rat::from_integer(1.into());
            coords[u] = x.clone();
            coords[v] = y;
            column.push(poly.evaluate(&coords).expect("3 coordinates"));
        }
        values.push(column);
    }
    let inside = |r: &Rat| -> bool { !r.is_negative() };

    // linear interpolation along an edge with a sign change
    let cross = |a: &Rat, b: &Rat| -> f64 {
        let fa = a.to_f64().unwrap_or(0.0);
        let fb = b.to_f64().unwrap_or(0.0);
        if (fb - fa).abs() < f64::MIN_POSITIVE {
            0.5
        } else {
            (0.0 - fa) / (fb - fa)
        }
    };

    let mut segments = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            let x0 = xmin + i as f64 * dx;
            let y0 = ymin + j as f64 * dy;
            let v00 = &values[i][j];
            let v10 = &values[i + 1][j];
            let v01 = &values[i][j + 1];
            let v11 = &values[i + 1][j + 1];
            let mut case = 0u8;
            if inside(v00) {
                case |= 1;
            }
            if inside(v10) {
                case |= 2;
            }
            if inside(v11) {
                case |= 4;
            }
            if inside(v01) {
                case |= 8;
            }
            if case == 0 || case == 15 {
                continue;
            }
            // edge crossing points: bottom, right, top, left
            let bottom = || (x0 + cross(v00, v10) * dx, y0);
            let right = || (x0 + dx, y0 + cross(v10, v11) * dy);
            let top = || (x0 + cross(v01, v11) * dx, y0 + dy);
            let left = || (x0, y0 + cross(v00, v01) * dy);
            match case {
                1 | 14 => segments.push([left(), bottom()]),
                2 | 13 => segments.push([bottom(), right()]),
                4 | 11 => segments.push([right(), top()]),
                8 | 7 => segments.push([top(), left()]),
                3 | 12 => segments.push([left(), right()]),
                6 | 9 => segments.push([bottom(), top()]),
                5 | 10 => {
                    // saddle: decide connectivity by the exact center sign
                    let cx = rat_from_f64(x0 + dx / 2.0);
                    let cy = rat_from_f64(y0 + dy / 2.0);
                    let center_in = sign_at(poly, chart, &cx, &cy) >= 0;
                    let same_as_corner = (case == 5) == center_in;
                    if same_as_corner {
                        segments.push([left(), top()]);
                        segments.push([bottom(), right()]);
                    } else {
                        segments.push([left(), bottom()]);
                        segments.push([right(), top()]);
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    segments
}

/// CSV artifact: header `object_id,x,y,segment_id`, two rows per segment
/// (its endpoints), segments numbered per object.
pub fn to_csv(data: &PlotData) -> String {
    let mut out = String::from("object_id,x,y,segment_id\n");
    for object in &data.objects {
        for (sid, seg) in object.segments.iter().enumerate() {
            for (x, y) in seg {
                out.push_str(&format!("{},{:.6},{:.6},{}\n", object.id, x, y, sid));
            }
        }
    }
    out
}

/// Static SVG 1.1: the curve in red, the osculating conics in black, base
/// points marked as filled circles.
pub fn to_svg(data: &PlotData) -> String {
    let (xmin, xmax, ymin, ymax) = data.window;
    let width = 640.0;
    let height = 640.0;
    let sx = width / (xmax - xmin);
    let sy = height / (ymax - ymin);
    let map = |x: f64, y: f64| -> (f64, f64) {
        ((x - xmin) * sx, height - (y - ymin) * sy)
    };
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">\n",
        width, height, width, height
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for object in &data.objects {
        let color = if object.id == "curve" { "red" } else { "black" };
        for seg in &object.segments {
            let (x1, y1) = map(seg[0].0, seg[0].1);
            let (x2, y2) = map(seg[1].0, seg[1].1);
            out.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{}\" stroke-width=\"1.2\"/>\n",
                x1, y1, x2, y2, color
            ));
        }
    }
    for (x, y) in &data.markers {
        let (cx, cy) = map(*x, *y);
        out.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"blue\"/>\n",
            cx, cy
        ));
    }
    out.push_str("</svg>\n");
    out
}
