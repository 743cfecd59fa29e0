//! 2D diagrams: lattice points in green, relevant vectors circled in red,
//! the Voronoi cell, the cell `P`, its `3 x 3` block and the shaded domain
//! `D = P ⊕ V`. The viewport is fixed; the drawing is scaled to fit.

use std::fmt::Write;

use latcover::{domain_outline_2d, relevant_vectors, voronoi_cell, Basis, CartPoint, FracPoint};

use crate::error::CliError;
use crate::output::round12;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 30.0;
const LEGEND_H: f64 = 90.0;

struct View {
    min: [f64; 2],
    scale: f64,
}

impl View {
    fn fit(points: &[[f64; 2]]) -> View {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
        let pad = 0.08 * span;
        let scale = (SIZE - 2.0 * MARGIN) / (span + 2.0 * pad);
        // centre the shorter side
        let min = [lo[0] - pad - 0.5 * (span - (hi[0] - lo[0])), lo[1] - pad - 0.5 * (span - (hi[1] - lo[1]))];
        View { min, scale }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        let x = MARGIN + (p[0] - self.min[0]) * self.scale;
        let y = MARGIN + (p[1] - self.min[1]) * self.scale;
        (r(x), r(SIZE - y))
    }

    fn inside(&self, p: [f64; 2]) -> bool {
        let (x, y) = self.map(p);
        (0.0..=SIZE).contains(&x) && (0.0..=SIZE).contains(&y)
    }

    fn polygon(&self, pts: &[[f64; 2]]) -> String {
        pts.iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x},{y}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn r(x: f64) -> f64 {
    (round12(x) * 100.0).round() / 100.0
}

fn xy(p: &CartPoint) -> [f64; 2] {
    [p.coords()[0], p.coords()[1]]
}

fn add(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] + b[0], a[1] + b[1]]
}

fn corners(cell: &Basis, origin: [f64; 2]) -> Vec<[f64; 2]> {
    let (a, b) = (cell.column(0), cell.column(1));
    let a = [a[0], a[1]];
    let b = [b[0], b[1]];
    vec![origin, add(origin, a), add(add(origin, a), b), add(origin, b)]
}

pub fn render_2d(lattice: &Basis, cell: &Basis) -> Result<String, CliError> {
    for b in [lattice, cell] {
        if b.dim() != 2 {
            return Err(CliError::UnsupportedDimension(b.dim()));
        }
    }
    let outline: Vec<[f64; 2]> = domain_outline_2d(cell, lattice)?.iter().map(xy).collect();
    let v = voronoi_cell(lattice)?;
    let mut vverts: Vec<[f64; 2]> = v.vertices().iter().map(xy).collect();
    vverts.sort_by(|a, b| a[1].atan2(a[0]).total_cmp(&b[1].atan2(b[0])));
    let rel = relevant_vectors(lattice)?;

    let block = corners(&cell.transformed(&latcover::IntMatrix::from_columns(&[vec![3, 0], vec![0, 3]]))?, {
        let c = cell.frac_to_cart(&FracPoint::new(&[-1.0, -1.0])?);
        xy(&c)
    });
    let mut extent = outline.clone();
    extent.extend(&block);
    let view = View::fit(&extent);

    let mut s = String::new();
    let h = SIZE + LEGEND_H;
    let _ =
        writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{h}" viewBox="0 0 {SIZE} {h}">"#);
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{SIZE}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<polygon class="domain" points="{}" fill="#3b6fd8" fill-opacity="0.25" stroke="#3b6fd8" stroke-width="1.5"/>"##,
        view.polygon(&outline)
    );
    let _ = writeln!(
        s,
        r##"<polygon class="block" points="{}" fill="none" stroke="#777777" stroke-dasharray="6 4"/>"##,
        view.polygon(&block)
    );
    let _ = writeln!(
        s,
        r##"<polygon class="cell" points="{}" fill="none" stroke="black" stroke-width="2"/>"##,
        view.polygon(&corners(cell, [0.0, 0.0]))
    );
    let _ = writeln!(
        s,
        r##"<polygon class="voronoi" points="{}" fill="none" stroke="#d87a00" stroke-width="1.5"/>"##,
        view.polygon(&vverts)
    );

    // lattice points in the viewport, found by searching the reduced frame
    let red = rel.reduced().basis();
    let corners_view = [[0.0, 0.0], [SIZE, 0.0], [0.0, SIZE], [SIZE, SIZE]].map(|[x, y]| {
        let wx = (x - MARGIN) / view.scale + view.min[0];
        let wy = (SIZE - y - MARGIN) / view.scale + view.min[1];
        red.cart_to_frac(&CartPoint::new(&[wx, wy]).expect("2D point"))
    });
    let mut lo = [i64::MAX; 2];
    let mut hi = [i64::MIN; 2];
    for f in &corners_view {
        for k in 0..2 {
            lo[k] = lo[k].min(f.coords()[k].floor() as i64 - 1);
            hi[k] = hi[k].max(f.coords()[k].ceil() as i64 + 1);
        }
    }
    for i in lo[0]..=hi[0] {
        for j in lo[1]..=hi[1] {
            let p = xy(&red.frac_to_cart(&FracPoint::new(&[i as f64, j as f64])?));
            if view.inside(p) {
                let (x, y) = view.map(p);
                let _ = writeln!(s, r##"<circle class="lattice" cx="{x}" cy="{y}" r="3" fill="#2e9e44"/>"##);
            }
        }
    }
    for rv in rel.vectors() {
        for sign in [1.0, -1.0] {
            let p = xy(&rv.cart);
            let p = [sign * p[0], sign * p[1]];
            if view.inside(p) {
                let (x, y) = view.map(p);
                let _ = writeln!(
                    s,
                    r##"<circle class="relevant" cx="{x}" cy="{y}" r="7" fill="none" stroke="#d62728" stroke-width="1.5"/>"##
                );
            }
        }
    }

    let legend = [
        ("#2e9e44", "lattice points"),
        ("#d62728", "relevant vectors"),
        ("#d87a00", "Voronoi cell"),
        ("black", "cell"),
        ("#3b6fd8", "domain D"),
        ("#777777", "3x3 block"),
    ];
    for (k, (color, label)) in legend.iter().enumerate() {
        let x = 20.0 + (k % 3) as f64 * 190.0;
        let y = SIZE + 25.0 + (k / 3) as f64 * 30.0;
        let _ = writeln!(s, r#"<rect x="{x}" y="{}" width="14" height="14" fill="{color}"/>"#, y - 11.0);
        let _ = writeln!(s, r#"<text x="{}" y="{y}" font-family="sans-serif" font-size="14">{label}</text>"#, x + 22.0);
    }
    s.push_str("</svg>\n");
    Ok(s)
}
