//! Deterministic SVG drawings. Each site is a unit square of the chessboard
//! turned to a diamond; tori are drawn as their `2n x 2m` fundamental domain.

use crate::spec::Built;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use tilings::lattice::{Color, Site, Topology};

const WHITE: &str = "#ffffff";
const BLACK: &str = "#c8c8c8";
const HOLE: &str = "#3a3a3a";
const FRAME: &str = "#1f4e9c";
const LINE: &str = "#c0392b";
const MARGIN: i64 = 1;

#[derive(Clone, Copy, Debug)]
pub struct Style {
    /// Pixels per unit.
    pub scale: i64,
    /// Draw the row of deleted labels.
    pub label_row: bool,
}

fn header(out: &mut String, w: i64, h: i64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
}

pub fn render(b: &Built, style: Style) -> String {
    match b.graph.topology {
        Topology::Torus { m, n } => render_torus(b, m as i64, n as i64, style),
        Topology::Plane => render_plane(b, style),
    }
}

fn diamond(out: &mut String, cx: i64, cy: i64, s: i64, fill: &str) {
    let _ = writeln!(
        out,
        r#"<polygon points="{},{} {},{} {},{} {},{}" fill="{fill}"/>"#,
        cx,
        cy - s,
        cx + s,
        cy,
        cx,
        cy + s,
        cx - s,
        cy
    );
}

fn fill_of(p: Site) -> &'static str {
    if Color::of_row(p.1) == Color::White {
        WHITE
    } else {
        BLACK
    }
}

fn render_plane(b: &Built, style: Style) -> String {
    let s = style.scale;
    let region = b.graph.sites();
    let holes: BTreeSet<Site> = b.windows.iter().flat_map(|w| w.sites()).filter(|p| !region.contains(p)).collect();
    let all: BTreeSet<Site> = region.union(&holes).copied().collect();
    let mut out = String::new();
    if all.is_empty() {
        header(&mut out, 2 * MARGIN * s, 2 * MARGIN * s);
        out.push_str("</svg>\n");
        return out;
    }
    let x0 = all.iter().map(|p| p.0).min().unwrap() - 1 - MARGIN;
    let y0 = all.iter().map(|p| p.1).min().unwrap() - 1 - MARGIN;
    let x1 = all.iter().map(|p| p.0).max().unwrap() + 1 + MARGIN;
    let y1 = all.iter().map(|p| p.1).max().unwrap() + 1 + MARGIN;
    header(&mut out, (x1 - x0) * s, (y1 - y0) * s);
    let px = |p: Site| ((p.0 - x0) * s, (p.1 - y0) * s);

    out.push_str("<g stroke=\"#808080\" stroke-width=\"0.5\">\n");
    for &p in &region {
        let (x, y) = px(p);
        diamond(&mut out, x, y, s, fill_of(p));
    }
    out.push_str("</g>\n<g>\n");
    for &p in &holes {
        let (x, y) = px(p);
        diamond(&mut out, x, y, s, HOLE);
    }
    out.push_str("</g>\n");

    // Each side of a diamond faces one diagonal neighbour.
    let _ = writeln!(out, r#"<g stroke="{FRAME}" stroke-width="2" stroke-linecap="round">"#);
    for &p in &all {
        let (x, y) = px(p);
        let sides = [
            ((p.0 + 1, p.1 - 1), (x, y - s, x + s, y)),
            ((p.0 + 1, p.1 + 1), (x + s, y, x, y + s)),
            ((p.0 - 1, p.1 + 1), (x, y + s, x - s, y)),
            ((p.0 - 1, p.1 - 1), (x - s, y, x, y - s)),
        ];
        for (nb, (ax, ay, bx, by)) in sides {
            if !all.contains(&nb) {
                let _ = writeln!(out, r#"<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}"/>"#);
            }
        }
    }
    out.push_str("</g>\n");

    if let (true, Some(row)) = (style.label_row, b.label_row) {
        let on_row: Vec<Site> = sites_of(b).into_iter().filter(|p| p.1 == row).collect();
        if let (Some(&first), Some(&last)) = (on_row.first(), on_row.last()) {
            let ((ax, y), (bx, _)) = (px(first), px(last));
            let _ = writeln!(
                out,
                r#"<line x1="{ax}" y1="{y}" x2="{bx}" y2="{y}" stroke="{LINE}" stroke-width="1.5" stroke-dasharray="4 3"/>"#
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Graph sites and window sites together, in `(x, y)` order.
fn sites_of(b: &Built) -> Vec<Site> {
    let mut all: BTreeSet<Site> = b.graph.sites();
    all.extend(b.windows.iter().flat_map(|w| w.sites()));
    all.into_iter().collect()
}

fn render_torus(b: &Built, m: i64, n: i64, style: Style) -> String {
    let s = style.scale;
    let (w, h) = (2 * n * s, 2 * m * s);
    let topo = b.graph.topology;
    let holes: BTreeSet<Site> = b.windows.iter().flat_map(|o| o.sites()).map(|p| topo.normalize(p)).collect();
    let present = b.graph.sites();
    let mut out = String::new();
    header(&mut out, w + 2 * MARGIN * s, h + 2 * MARGIN * s);
    let _ = writeln!(out, r#"<g transform="translate({o},{o})">"#, o = MARGIN * s);
    let _ = writeln!(out, r#"<clipPath id="domain"><rect x="0" y="0" width="{w}" height="{h}"/></clipPath>"#);
    out.push_str("<g clip-path=\"url(#domain)\" stroke=\"#808080\" stroke-width=\"0.5\">\n");
    // Diamonds on the seams are drawn twice so that the clip shows both halves.
    for y in -1..=2 * m {
        for x in -1..=2 * n {
            if (x + y).rem_euclid(2) != 1 {
                continue;
            }
            let p = topo.normalize((x, y));
            let fill = if holes.contains(&p) {
                HOLE
            } else if present.contains(&p) {
                fill_of(p)
            } else {
                continue;
            };
            diamond(&mut out, x * s + s / 2, y * s + s / 2, s, fill);
        }
    }
    out.push_str("</g>\n");
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="none" stroke="{FRAME}" stroke-width="2"/>"#);
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::RegionSpec;

    const STYLE: Style = Style { scale: 10, label_row: true };

    #[test]
    fn empty_region_is_a_blank_canvas() {
        let b = RegionSpec::Sites { sites: vec![] }.build().unwrap();
        let svg = render(&b, STYLE);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("<polygon"));
    }

    #[test]
    fn diamond_has_one_square_per_site() {
        let b = RegionSpec::AztecDiamond { n: 2 }.build().unwrap();
        let svg = render(&b, STYLE);
        assert_eq!(svg.matches("<polygon").count(), 12);
        assert_eq!(render(&b, STYLE), svg);
    }
}
