//! Static SVG figure of a disk set and its complex.
//!
//! Layers, bottom to top: translucent cells, filled triangles, edges, vertex
//! dots. A triangle's fill gets darker with the dimension of the largest
//! simplex it belongs to, so uncovered gaps show as white space. Output is a
//! pure function of the inputs.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::complex::{CechComplex, DiskSet, Simplex};
use crate::Result;

const SCALE: f64 = 100.0;
const MARGIN: f64 = 20.0;

/// Largest dimension of a simplex containing each triangle of `S_2`.
fn triangle_depth(cx: &CechComplex) -> Vec<usize> {
    let Some(top) = cx.top_dim().filter(|&t| t >= 2) else {
        return Vec::new();
    };
    let mut depth: Vec<Vec<usize>> = cx
        .levels()
        .iter()
        .enumerate()
        .map(|(k, l)| vec![k; l.len()])
        .collect();
    for k in (3..=top).rev() {
        let lower = &cx.levels()[k - 1];
        let index: HashMap<&Simplex, usize> =
            lower.iter().enumerate().map(|(i, s)| (s, i)).collect();
        for (s, &d) in cx.levels()[k].iter().zip(&depth[k].clone()) {
            for f in s.faces() {
                let i = index[&f];
                depth[k - 1][i] = depth[k - 1][i].max(d);
            }
        }
    }
    depth.swap_remove(2)
}

pub fn render_svg(ds: &DiskSet, cx: &CechComplex) -> String {
    let disks = ds.disks();
    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 1.0f64, 1.0f64);
    if !disks.is_empty() {
        x0 = f64::INFINITY;
        y0 = f64::INFINITY;
        x1 = f64::NEG_INFINITY;
        y1 = f64::NEG_INFINITY;
        for d in disks {
            x0 = x0.min(d.center.x - d.radius);
            y0 = y0.min(d.center.y - d.radius);
            x1 = x1.max(d.center.x + d.radius);
            y1 = y1.max(d.center.y + d.radius);
        }
    }
    let width = (x1 - x0) * SCALE + 2.0 * MARGIN;
    let height = (y1 - y0) * SCALE + 2.0 * MARGIN;
    // y axis points up in the plane, down in SVG
    let px = |x: f64| (x - x0) * SCALE + MARGIN;
    let py = |y: f64| (y1 - y) * SCALE + MARGIN;
    let center = |v: u32| {
        let c = disks[v as usize].center;
        (px(c.x), py(c.y))
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect class="canvas" width="100%" height="100%" fill="white"/>"#
    );

    let _ = writeln!(out, r#"<g id="cells">"#);
    for d in disks {
        let _ = writeln!(
            out,
            r##"<circle class="cell" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#3b6fd4" fill-opacity="0.15" stroke="#3b6fd4" stroke-width="1"/>"##,
            px(d.center.x),
            py(d.center.y),
            d.radius * SCALE
        );
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="simplices">"#);
    if let Some(triangles) = cx.level(2) {
        for (t, depth) in triangles.iter().zip(triangle_depth(cx)) {
            let opacity = (0.2 + 0.15 * (depth - 2) as f64).min(0.9);
            let pts: Vec<String> = t
                .vertices()
                .iter()
                .map(|&v| {
                    let (x, y) = center(v);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            let _ = writeln!(
                out,
                r##"<polygon class="simplex" data-dim="{depth}" points="{}" fill="#1a3f8f" fill-opacity="{opacity:.2}"/>"##,
                pts.join(" ")
            );
        }
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="edges">"#);
    for e in cx.level(1).unwrap_or_default() {
        let (a, b) = (center(e.vertices()[0]), center(e.vertices()[1]));
        let _ = writeln!(
            out,
            r#"<line class="edge" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-width="1"/>"#,
            a.0, a.1, b.0, b.1
        );
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="vertices">"#);
    for d in disks {
        let (x, y) = center(d.id);
        let _ = writeln!(
            out,
            r#"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="2.5" fill="black"/>"#
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

pub fn write_svg(ds: &DiskSet, cx: &CechComplex, path: &Path) -> Result<()> {
    crate::io::write_file(path, render_svg(ds, cx).as_bytes())
}
