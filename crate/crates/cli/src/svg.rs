use std::fmt::Write as _;

use planeweave::io::format_rat;
use planeweave::layout::ColoredDrawing;

const MARGIN: f64 = 10.0;
const STYLE: &str = ".h{stroke:#d62728}.hs{stroke:#ff7f0e}.v{stroke:#1f77b4}.vs{stroke:#2ca02c}\
polyline{fill:none;stroke-width:1}circle{fill:#222}text{font:8px monospace}";

/// SVG with one polyline per edge, classed by color, and one circle per
/// vertex. The `y` axis points up as in the drawing.
pub fn render(d: &ColoredDrawing, scale: f64, exact_labels: bool) -> String {
    let pts: Vec<(usize, (f64, f64))> = d.positions().iter().map(|(&v, p)| (v, p.to_f64())).collect();
    let fold = |f: fn(f64, f64) -> f64, init: f64, axis: fn(&(f64, f64)) -> f64| {
        pts.iter().map(|(_, p)| axis(p)).fold(init, f)
    };
    let (min_x, max_x) = (fold(f64::min, f64::INFINITY, |p| p.0), fold(f64::max, f64::NEG_INFINITY, |p| p.0));
    let (min_y, max_y) = (fold(f64::min, f64::INFINITY, |p| p.1), fold(f64::max, f64::NEG_INFINITY, |p| p.1));
    let (min_x, max_x, min_y, max_y) = if pts.is_empty() { (0.0, 0.0, 0.0, 0.0) } else { (min_x, max_x, min_y, max_y) };
    let map = |(x, y): (f64, f64)| ((x - min_x) * scale + MARGIN, (max_y - y) * scale + MARGIN);
    let width = (max_x - min_x) * scale + 2.0 * MARGIN;
    let height = (max_y - min_y) * scale + 2.0 * MARGIN;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(s, "<style>{STYLE}</style>").unwrap();
    for (&(u, w), c) in d.colors() {
        let (Some(a), Some(b)) = (d.position(u), d.position(w)) else { continue };
        let ((x1, y1), (x2, y2)) = (map(a.to_f64()), map(b.to_f64()));
        writeln!(s, r#"<polyline class="{}" points="{x1},{y1} {x2},{y2}"/>"#, c.as_str()).unwrap();
    }
    for (v, p) in &pts {
        let (x, y) = map(*p);
        writeln!(s, r#"<circle cx="{x}" cy="{y}" r="2"><title>{v}</title></circle>"#).unwrap();
        if exact_labels {
            let q = d.position(*v).expect("listed vertex");
            writeln!(s, r#"<text x="{}" y="{}">{v}: {}, {}</text>"#, x + 3.0, y - 3.0, format_rat(&q.x), format_rat(&q.y)).unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}
