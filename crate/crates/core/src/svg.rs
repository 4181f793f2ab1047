//! Minimal SVG line plot of a bound sweep.

use std::fmt::Write;

use crate::bounds::{BoundEvaluation, Validity};
use crate::formats::format_significant;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn span(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

fn points(frame: &Frame, samples: &[&BoundEvaluation]) -> String {
    samples
        .iter()
        .map(|s| format!("{:.2},{:.2}", frame.px(s.alpha), frame.py(s.value)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Plots `F(alpha)` against `alpha`. Runs of valid samples are overdrawn as
/// a dashed blue line; `reference_w1`, when known, is drawn as a horizontal
/// marker.
pub fn render_sweep(samples: &[BoundEvaluation], reference_w1: Option<f64>, title: &str) -> String {
    let finite: Vec<&BoundEvaluation> = samples.iter().filter(|s| s.value.is_finite()).collect();
    let (xmin, xmax) = finite
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s.alpha), hi.max(s.alpha)));
    let (mut ymin, mut ymax) = finite
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s.value), hi.max(s.value)));
    if let Some(w) = reference_w1 {
        ymin = ymin.min(w);
        ymax = ymax.max(w);
    }
    if finite.is_empty() {
        (ymin, ymax) = (0.0, 1.0);
    }
    let (x0, x1) = if finite.is_empty() { (0.0, 1.0) } else { (xmin, xmax) };
    let (x0, x1) = if x1 > x0 { (x0, x1) } else { span(x0, x1) };
    let (y0, y1) = span(ymin, ymax);
    let frame = Frame { x0, x1, y0, y1 };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"##
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"##);
    let _ = writeln!(
        out,
        r##"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"##,
        WIDTH / 2.0,
        escape(title)
    );

    // axes and ticks
    let (ax, ay) = (LEFT, HEIGHT - BOTTOM);
    let _ = writeln!(
        out,
        r##"<path d="M{ax},{TOP} L{ax},{ay} L{:.1},{ay}" stroke="black" fill="none"/>"##,
        WIDTH - RIGHT
    );
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let xv = x0 + t * (x1 - x0);
        let yv = y0 + t * (y1 - y0);
        let (px, py) = (frame.px(xv), frame.py(yv));
        let _ = writeln!(
            out,
            r##"<line x1="{px:.2}" y1="{ay}" x2="{px:.2}" y2="{:.1}" stroke="black"/><text x="{px:.2}" y="{:.1}" text-anchor="middle">{}</text>"##,
            ay + 5.0,
            ay + 20.0,
            format_significant(xv, 4)
        );
        let _ = writeln!(
            out,
            r##"<line x1="{:.1}" y1="{py:.2}" x2="{ax}" y2="{py:.2}" stroke="black"/><text x="{:.1}" y="{:.2}" text-anchor="end">{}</text>"##,
            ax - 5.0,
            ax - 8.0,
            py + 4.0,
            format_significant(yv, 4)
        );
    }
    let _ = writeln!(
        out,
        r##"<text x="{:.1}" y="{:.1}" text-anchor="middle">alpha</text>"##,
        (LEFT + WIDTH - RIGHT) / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        out,
        r##"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">F(alpha)</text>"##,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );

    if y0 < 0.0 && y1 > 0.0 {
        let py = frame.py(0.0);
        let _ = writeln!(
            out,
            r##"<line x1="{LEFT}" y1="{py:.2}" x2="{:.1}" y2="{py:.2}" stroke="#bbbbbb"/>"##,
            WIDTH - RIGHT
        );
    }

    if !finite.is_empty() {
        let _ = writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="#444444" stroke-width="1.5"/>"##,
            points(&frame, &finite)
        );
    }

    for run in finite
        .split(|s| s.validity != Validity::Valid)
        .filter(|run| !run.is_empty())
    {
        let pts = if run.len() == 1 {
            let p = format!("{:.2},{:.2}", frame.px(run[0].alpha), frame.py(run[0].value));
            format!("{p} {p}")
        } else {
            points(&frame, run)
        };
        let _ = writeln!(
            out,
            r##"<polyline class="valid" points="{pts}" fill="none" stroke="#1f5fd6" stroke-width="3" stroke-dasharray="8 4"/>"##
        );
    }

    if let Some(w) = reference_w1 {
        let py = frame.py(w);
        let _ = writeln!(
            out,
            r##"<line class="w1" x1="{LEFT}" y1="{py:.2}" x2="{:.1}" y2="{py:.2}" stroke="#c0392b" stroke-dasharray="3 3"/><text x="{:.1}" y="{:.2}" text-anchor="end" fill="#c0392b">w1 = {}</text>"##,
            WIDTH - RIGHT,
            WIDTH - RIGHT - 4.0,
            py - 4.0,
            format_significant(w, 6)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
