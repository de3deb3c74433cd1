//! Deterministic SVG rendering of regions. Floating point only; pictures
//! carry no certification.

use std::fmt::Write as _;

use pingpong_core::moebius::{GenDisk, Openness, Region};

const CANVAS: f64 = 800.0;
const SEGMENTS: usize = 128;
const COLORS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

pub struct Layer<'a> {
    pub label: String,
    pub region: &'a Region,
}

struct View {
    half_width: f64,
}

impl View {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let s = CANVAS / (2.0 * self.half_width);
        (CANVAS / 2.0 + x * s, CANVAS / 2.0 - y * s)
    }
}

fn boundary(d: &GenDisk, view: &View) -> (Vec<(f64, f64)>, bool) {
    let a = d.a().to_f64();
    let (br, bi) = (d.b().re.to_f64(), d.b().im.to_f64());
    let c = d.c().to_f64();
    if a != 0.0 {
        let (cx, cy) = (-br / a, -bi / a);
        let r = ((br * br + bi * bi - a * c) / (a * a)).sqrt();
        let pts = (0..SEGMENTS)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / SEGMENTS as f64;
                view.px(cx + r * t.cos(), cy + r * t.sin())
            })
            .collect();
        (pts, true)
    } else {
        // 2 (br x + bi y) + c = 0
        let n2 = br * br + bi * bi;
        let (x0, y0) = (-c * br / (2.0 * n2), -c * bi / (2.0 * n2));
        let n = n2.sqrt();
        let (dx, dy) = (-bi / n, br / n);
        let reach = 4.0 * view.half_width;
        (vec![view.px(x0 - reach * dx, y0 - reach * dy), view.px(x0 + reach * dx, y0 + reach * dy)], false)
    }
}

fn label_anchor(d: &GenDisk, view: &View) -> (f64, f64) {
    let (pts, closed) = boundary(d, view);
    if closed {
        pts[SEGMENTS / 8]
    } else {
        let (a, b) = (pts[0], pts[1]);
        let clamp = |v: f64| v.clamp(20.0, CANVAS - 20.0);
        (clamp((a.0 + b.0) / 2.0), clamp((a.1 + b.1) / 2.0))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Draws layers in order; open regions are dashed. `half_width` is the
/// half side of the square window centred at 0.
pub fn render(title: &str, layers: &[Layer<'_>], half_width: f64) -> String {
    let view = View { half_width };
    let mut s = String::new();
    let w = |s: &mut String, t: std::fmt::Arguments<'_>| s.write_fmt(t).expect("string write");
    w(
        &mut s,
        format_args!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{CANVAS}\" height=\"{CANVAS}\" viewBox=\"0 0 {CANVAS} {CANVAS}\">\n"
        ),
    );
    w(&mut s, format_args!("<title>{}</title>\n", escape(title)));
    w(&mut s, format_args!("<metadata>rendering only; floating point; not a certificate</metadata>\n"));
    w(&mut s, format_args!("<rect width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"white\"/>\n"));
    let (ox, oy) = view.px(0.0, 0.0);
    w(&mut s, format_args!("<line x1=\"0\" y1=\"{oy:.3}\" x2=\"{CANVAS}\" y2=\"{oy:.3}\" stroke=\"#bbbbbb\"/>\n"));
    w(&mut s, format_args!("<line x1=\"{ox:.3}\" y1=\"0\" x2=\"{ox:.3}\" y2=\"{CANVAS}\" stroke=\"#bbbbbb\"/>\n"));
    for (k, layer) in layers.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let dash = if layer.region.openness() == Openness::Open { " stroke-dasharray=\"6 4\"" } else { "" };
        w(&mut s, format_args!("<g id=\"layer{k}\" stroke=\"{color}\" fill=\"none\"{dash}>\n"));
        for d in layer.region.members() {
            let (pts, closed) = boundary(d, &view);
            let body: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
            let tag = if closed { "polygon" } else { "polyline" };
            w(&mut s, format_args!("<{tag} points=\"{}\"/>\n", body.join(" ")));
        }
        if let Some(first) = layer.region.members().first() {
            let (x, y) = label_anchor(first, &view);
            w(
                &mut s,
                format_args!(
                    "<text x=\"{x:.3}\" y=\"{y:.3}\" fill=\"{color}\" stroke=\"none\" font-size=\"14\">{}</text>\n",
                    escape(&layer.label)
                ),
            );
        }
        w(&mut s, format_args!("</g>\n"));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use pingpong_core::pingpong::PingPongTable;

    #[test]
    fn circle_has_fixed_segment_count() {
        let t = PingPongTable::mu2();
        let layers = [Layer { label: "K1".into(), region: &t.k1 }];
        let svg = render("t", &layers, 3.0);
        let poly = svg.lines().find(|l| l.starts_with("<polygon")).unwrap();
        assert_eq!(poly.matches(',').count(), SEGMENTS);
        assert_eq!(svg, render("t", &layers, 3.0));
    }

    #[test]
    fn half_planes_are_segments() {
        let t = PingPongTable::mui();
        let layers = [Layer { label: "X2".into(), region: &t.x2 }];
        let svg = render("t", &layers, 3.0);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert!(svg.contains("stroke-dasharray"));
    }
}
