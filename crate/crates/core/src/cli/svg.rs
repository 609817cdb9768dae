//! SVG drawing of a fan: rays of `sigma_n` as spokes, cones labelled by
//! their minimizing point.

use std::fmt::Write;

use higher_nash::nashfan::Fan2D;
use higher_nash::LatticePoint;

const SIZE: f64 = 520.0;
const ORIGIN: (f64, f64) = (90.0, 250.0);
const RADIUS: f64 = 200.0;

fn unit(p: &LatticePoint) -> (f64, f64) {
    let (x, y) = (p.x as f64, p.y as f64);
    let len = x.hypot(y);
    (x / len, y / len)
}

/// Screen position at distance `r` along direction `d` (y grows downward).
fn at(d: (f64, f64), r: f64) -> (f64, f64) {
    (ORIGIN.0 + r * d.0, ORIGIN.1 - r * d.1)
}

pub fn render(fan: &Fan2D) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="monospace" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="10" y="20">sigma_{} fan</text>"#, fan.n);

    for cone in &fan.cones {
        let a = unit(&fan.rays[cone.rays[0]]);
        let b = unit(&fan.rays[cone.rays[1]]);
        let (pa, pb) = (at(a, RADIUS), at(b, RADIUS));
        let _ = writeln!(
            s,
            r##"<path d="M {:.2} {:.2} L {:.2} {:.2} A {RADIUS} {RADIUS} 0 0 1 {:.2} {:.2} Z" fill="#eef3fb" stroke="none"/>"##,
            ORIGIN.0, ORIGIN.1, pa.0, pa.1, pb.0, pb.1
        );
        if let Some(m) = cone.m {
            let mid = (a.0 + b.0, a.1 + b.1);
            let len = mid.0.hypot(mid.1);
            let p = at((mid.0 / len, mid.1 / len), 0.62 * RADIUS);
            let _ = writeln!(
                s,
                r##"<text x="{:.2}" y="{:.2}" text-anchor="middle" fill="#1f4e8c">{m}</text>"##,
                p.0, p.1
            );
        }
    }
    for r in &fan.rays {
        let d = unit(r);
        let end = at(d, RADIUS);
        let label = at(d, RADIUS + 18.0);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="1.5"/>"#,
            ORIGIN.0, ORIGIN.1, end.0, end.1
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{r}</text>"#,
            label.0, label.1
        );
    }
    s.push_str("</svg>\n");
    s
}
