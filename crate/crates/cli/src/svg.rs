//! Deterministic SVG drawings of two-coordinate polytopes and of the
//! chamber decomposition of the linearization segment.

use std::fmt::Write;

use kstab_core::githm::VgitChambers;
use kstab_core::rational::{fmt_q, q, to_f64};
use kstab_core::{QVec, Q};

const SIZE: f64 = 400.0;
const MARGIN: f64 = 50.0;

fn header(out: &mut String, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{height:.0}" viewBox="0 0 {w:.0} {height:.0}" font-family="monospace" font-size="12">"#,
        w = SIZE + 2.0 * MARGIN
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn plane(x: &Q, y: &Q) -> (f64, f64) {
    (MARGIN + SIZE * to_f64(x), MARGIN + SIZE * (1.0 - to_f64(y)))
}

/// Vertices in counterclockwise order around their centroid.
fn cyclic(vertices: &[QVec]) -> Vec<&QVec> {
    let n = vertices.len() as f64;
    let cx = vertices.iter().map(|v| to_f64(&v[0])).sum::<f64>() / n;
    let cy = vertices.iter().map(|v| to_f64(&v[1])).sum::<f64>() / n;
    let mut out: Vec<&QVec> = vertices.iter().collect();
    out.sort_by(|a, b| {
        let ta = (to_f64(&a[1]) - cy).atan2(to_f64(&a[0]) - cx);
        let tb = (to_f64(&b[1]) - cy).atan2(to_f64(&b[0]) - cx);
        ta.total_cmp(&tb).then_with(|| a.cmp(b))
    });
    out
}

/// A polytope in the unit square, vertices labelled with exact coordinates.
pub fn polygon(vertices: &[QVec], title: &str) -> String {
    let mut out = String::new();
    header(&mut out, SIZE + 2.0 * MARGIN);
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN:.0}" y="20">{}</text>"#,
        escape(title)
    );
    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN:.0}" y="{MARGIN:.0}" width="{SIZE:.0}" height="{SIZE:.0}" fill="none" stroke="#999"/>"##
    );
    let ordered = cyclic(vertices);
    let points: Vec<String> = ordered
        .iter()
        .map(|v| {
            let (x, y) = plane(&v[0], &v[1]);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="#9cc3e6" fill-opacity="0.6" stroke="#1f4e79" stroke-width="2"/>"##,
        points.join(" ")
    );
    for v in &ordered {
        let (x, y) = plane(&v[0], &v[1]);
        let _ = writeln!(
            out,
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="#1f4e79"/>"##
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}">({}, {})</text>"#,
            x + 5.0,
            y - 5.0,
            fmt_q(&v[0]),
            fmt_q(&v[1])
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.0}" y="{:.0}">x1</text>"#,
        MARGIN + SIZE - 10.0,
        MARGIN + SIZE + 20.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.0}" y="{:.0}">x2</text>"#,
        MARGIN - 30.0,
        MARGIN + 10.0
    );
    out.push_str("</svg>\n");
    out
}

/// `γ1 = 2γ2` style label of the wall `normal · γ = 0`.
pub fn wall_equation(normal: &[Q]) -> String {
    let zero = q(0);
    let side = |positive: bool| -> String {
        let terms: Vec<String> = normal
            .iter()
            .enumerate()
            .filter(|(_, c)| if positive { **c > zero } else { **c < zero })
            .map(|(i, c)| {
                let c = if positive { c.clone() } else { -c };
                if c == q(1) {
                    format!("γ{}", i + 1)
                } else {
                    format!("{}γ{}", fmt_q(&c), i + 1)
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    };
    format!("{} = {}", side(true), side(false))
}

/// The segment `γ1 + γ2 = 1` with wall points and chamber labels, drawn
/// from `γ = (1, 0)` on the left to `γ = (0, 1)` on the right.
pub fn segment_fan(v: &VgitChambers) -> String {
    let mut out = String::new();
    header(&mut out, 160.0);
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN:.0}" y="20">linearization segment, n = {}, degrees = {:?}</text>"#,
        v.n, v.degrees
    );
    let y = 80.0;
    let at = |g: &QVec| MARGIN + SIZE * to_f64(&g[1]);
    let _ = writeln!(
        out,
        r##"<line x1="{MARGIN:.0}" y1="{y:.0}" x2="{:.0}" y2="{y:.0}" stroke="#1f4e79" stroke-width="3"/>"##,
        MARGIN + SIZE
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.0}" y="{:.0}">(1, 0)</text>"#,
        MARGIN - 20.0,
        y + 30.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.0}" y="{:.0}">(0, 1)</text>"#,
        MARGIN + SIZE - 20.0,
        y + 30.0
    );
    let mut chamber = 0;
    for cell in &v.arrangement.cells {
        let x = at(&cell.representative);
        if cell.is_chamber() {
            chamber += 1;
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.0}">C{chamber}</text>"#,
                x - 8.0,
                y - 12.0
            );
        } else {
            let zero: Vec<usize> = cell
                .signs
                .iter()
                .enumerate()
                .filter(|(_, &s)| s == 0)
                .map(|(i, _)| i)
                .collect();
            let label: Vec<String> = zero
                .iter()
                .map(|&i| wall_equation(&v.arrangement.walls[i].normal().0))
                .collect();
            let _ = writeln!(
                out,
                r##"<line x1="{x:.2}" y1="{:.0}" x2="{x:.2}" y2="{:.0}" stroke="#c00000" stroke-width="2"/>"##,
                y - 20.0,
                y + 20.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.0}">{} ({}, {})</text>"#,
                x - 30.0,
                y + 45.0,
                escape(&label.join(", ")),
                fmt_q(&cell.representative[0]),
                fmt_q(&cell.representative[1])
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equations() {
        assert_eq!(wall_equation(&[q(1), q(-1)]), "γ1 = γ2");
        assert_eq!(wall_equation(&[q(1), q(-2)]), "γ1 = 2γ2");
        assert_eq!(wall_equation(&[q(2), q(1), q(-3)]), "2γ1 + γ2 = 3γ3");
    }

    #[test]
    fn square_is_drawn_counterclockwise() {
        let v: Vec<QVec> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|p| QVec::from_ints(p))
            .collect();
        let s = polygon(&v, "square");
        assert!(s.contains("50.00,450.00 450.00,450.00 450.00,50.00 50.00,50.00"));
        assert_eq!(s, polygon(&v, "square"));
    }
}
