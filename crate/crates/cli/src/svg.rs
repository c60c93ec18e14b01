//! SVG rendering of drawings and book embeddings. Rendering only: nothing
//! here feeds back into verification.

use std::fmt::Write;

use ktree_thickness::{BookEmbedding, Drawing};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];
const MARGIN: i64 = 20;

fn colour(c: usize) -> &'static str {
    PALETTE[(c.max(1) - 1) % PALETTE.len()]
}

/// `r` with exactly six decimals, truncated toward zero.
fn decimal(r: &BigRational) -> String {
    let million = BigInt::from(1_000_000);
    let scaled = (r.numer() * &million) / r.denom();
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let digits = format!("{digits:0>7}");
    let (int, frac) = digits.split_at(digits.len() - 6);
    format!("{}{int}.{frac}", if neg && !scaled.is_zero() { "-" } else { "" })
}

fn header(out: &mut String, w: &str, h: &str) {
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
}

/// Straight-line drawing with one group per colour. `size` is the side of
/// the square the drawing is scaled into.
pub fn drawing_svg(d: &Drawing, size: u32) -> String {
    let pts: Vec<_> = d.positions.values().collect();
    let min = |f: fn(&ktree_thickness::Point) -> &BigRational| pts.iter().map(|p| f(p)).min().cloned();
    let max = |f: fn(&ktree_thickness::Point) -> &BigRational| pts.iter().map(|p| f(p)).max().cloned();
    let zero = BigRational::zero();
    let (x0, x1) = (min(|p| &p.x).unwrap_or(zero.clone()), max(|p| &p.x).unwrap_or(zero.clone()));
    let (y0, y1) = (min(|p| &p.y).unwrap_or(zero.clone()), max(|p| &p.y).unwrap_or(zero.clone()));
    let span = std::cmp::max(&x1 - &x0, &y1 - &y0);
    let inner = BigRational::from_integer(BigInt::from(i64::from(size) - 2 * MARGIN).max(BigInt::from(1)));
    let factor = if span.is_zero() { BigRational::zero() } else { inner / span };
    let margin = BigRational::from_integer(MARGIN.into());
    let side = BigRational::from_integer(i64::from(size).into());
    // y grows downward in SVG
    let px = |v: usize| {
        let p = &d.positions[&v];
        let x = (&p.x - &x0) * &factor + &margin;
        let y = &side - ((&p.y - &y0) * &factor + &margin);
        (decimal(&x), decimal(&y))
    };

    let mut out = String::new();
    header(&mut out, &size.to_string(), &size.to_string());
    for c in 1..=d.colour_count {
        let _ = writeln!(out, "  <g id=\"colour-{c}\" stroke=\"{}\" stroke-width=\"1.5\">", colour(c));
        for e in d.class(c) {
            let ((ax, ay), (bx, by)) = (px(e.lo()), px(e.hi()));
            let _ = writeln!(out, "    <line x1=\"{ax}\" y1=\"{ay}\" x2=\"{bx}\" y2=\"{by}\"/>");
        }
        out.push_str("  </g>\n");
    }
    for &v in d.positions.keys() {
        let (x, y) = px(v);
        let _ = writeln!(out, "  <circle cx=\"{x}\" cy=\"{y}\" r=\"3\" fill=\"black\"><title>{v}</title></circle>");
    }
    out.push_str("</svg>\n");
    out
}

/// Vertices on a circle in spine order, one group of chords per page.
pub fn book_svg(emb: &BookEmbedding, size: u32) -> String {
    let n = emb.order.len().max(1) as f64;
    let r = f64::from(size) / 2.0 - MARGIN as f64;
    let c = f64::from(size) / 2.0;
    let pos = emb.positions();
    let at = |v: usize| {
        let a = std::f64::consts::TAU * pos[&v] as f64 / n;
        // clockwise from the top
        (format!("{:.6}", c + r * a.sin()), format!("{:.6}", c - r * a.cos()))
    };

    let mut out = String::new();
    header(&mut out, &size.to_string(), &size.to_string());
    let _ = writeln!(
        out,
        "  <circle cx=\"{c:.6}\" cy=\"{c:.6}\" r=\"{r:.6}\" fill=\"none\" stroke=\"#cccccc\"/>"
    );
    for p in 1..=emb.page_count {
        let _ = writeln!(out, "  <g id=\"page-{p}\" stroke=\"{}\" stroke-width=\"1.5\">", colour(p));
        for (e, _) in emb.pages.iter().filter(|(_, &q)| q == p) {
            let ((ax, ay), (bx, by)) = (at(e.lo()), at(e.hi()));
            let _ = writeln!(out, "    <line x1=\"{ax}\" y1=\"{ay}\" x2=\"{bx}\" y2=\"{by}\"/>");
        }
        out.push_str("  </g>\n");
    }
    for &v in &emb.order {
        let (x, y) = at(v);
        let _ = writeln!(out, "  <circle cx=\"{x}\" cy=\"{y}\" r=\"3\" fill=\"black\"><title>{v}</title></circle>");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ktree_thickness::book::zigzag_complete;
    use ktree_thickness::geom::draw_forests;
    use ktree_thickness::graph::random_ktree;

    #[test]
    fn decimals() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(decimal(&r(1, 3)), "0.333333");
        assert_eq!(decimal(&r(-7, 2)), "-3.500000");
        assert_eq!(decimal(&r(-1, 3_000_000)), "0.000000");
        assert_eq!(decimal(&r(42, 1)), "42.000000");
    }

    #[test]
    fn forest_drawing_of_k4() {
        let b = random_ktree(3, 4, 0).unwrap();
        let svg = drawing_svg(&draw_forests(&b).unwrap(), 400);
        assert_eq!(svg.matches("<g ").count(), 3);
        assert_eq!(svg.matches("<line ").count(), 6);
        assert_eq!(svg, drawing_svg(&draw_forests(&b).unwrap(), 400));
    }

    #[test]
    fn empty_drawing() {
        let svg = drawing_svg(&Drawing::default(), 200);
        assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<line ").count(), 0);
    }

    #[test]
    fn zigzag_book() {
        let svg = book_svg(&zigzag_complete(2).unwrap(), 300);
        assert_eq!(svg.matches("<g ").count(), 2);
        assert_eq!(svg.matches("<line ").count(), 6);
    }
}
