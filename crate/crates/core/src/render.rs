//! Static SVG drawing of a generalized diagram.
//!
//! Top vertices sit on the upper line and bottom vertices on the lower line,
//! both numbered left to right. Through strands are straight segments and
//! caps or cups are arcs bowing into the rectangle, so two strands cross in
//! the picture exactly when their endpoints interleave on the boundary.

use std::fmt::Write;

use crate::diagram::{Block, GeneralizedDiagram, Side, Vertex};

const SPACING: f64 = 60.0;
const MARGIN: f64 = 40.0;
const HEIGHT: f64 = 160.0;

fn point(v: Vertex) -> (f64, f64) {
    let x = MARGIN + SPACING * (v.pos - 1) as f64;
    let y = match v.side {
        Side::Top => MARGIN,
        Side::Bottom => MARGIN + HEIGHT,
    };
    (x, y)
}

fn label(v: Vertex) -> String {
    match v.side {
        Side::Top => v.pos.to_string(),
        Side::Bottom => format!("{}*", v.pos),
    }
}

pub fn render_svg(diagram: &GeneralizedDiagram) -> String {
    let columns = diagram.top().max(diagram.bottom()).max(1);
    let width = 2.0 * MARGIN + SPACING * (columns - 1) as f64;
    let height = 2.0 * MARGIN + HEIGHT;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(svg, "  <title>{diagram}</title>");
    let _ = writeln!(svg, r#"  <g fill="none" stroke="black" stroke-width="2">"#);
    for block in diagram.blocks() {
        match block {
            Block::Pair(a, b) => {
                let ((x1, y1), (x2, y2)) = (point(a), point(b));
                if a.side == b.side {
                    let bow = ((x2 - x1).abs() * 0.35 + 15.0).min(HEIGHT * 0.6);
                    let cy = if a.side == Side::Top { y1 + bow } else { y1 - bow };
                    let _ = writeln!(svg, r#"    <path d="M {x1} {y1} C {x1} {cy} {x2} {cy} {x2} {y2}"/>"#);
                } else {
                    let _ = writeln!(svg, r#"    <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
                }
            }
            Block::Single(v) => {
                let (x, y) = point(v);
                let cy = if v.side == Side::Top { y + 14.0 } else { y - 14.0 };
                let _ = writeln!(svg, r#"    <circle cx="{x}" cy="{cy}" r="6"/>"#);
            }
        }
    }
    let _ = writeln!(svg, "  </g>");
    let _ = writeln!(svg, r#"  <g font-family="sans-serif" font-size="14" text-anchor="middle">"#);
    let vertices = (1..=diagram.top()).map(Vertex::top).chain((1..=diagram.bottom()).map(Vertex::bottom));
    for v in vertices {
        let (x, y) = point(v);
        let ty = if v.side == Side::Top { y - 12.0 } else { y + 24.0 };
        let _ = writeln!(svg, r#"    <circle cx="{x}" cy="{y}" r="4" fill="black"/>"#);
        let _ = writeln!(svg, r#"    <text x="{x}" y="{ty}">{}</text>"#, label(v));
    }
    let _ = writeln!(svg, "  </g>");
    svg.push_str("</svg>\n");
    svg
}
