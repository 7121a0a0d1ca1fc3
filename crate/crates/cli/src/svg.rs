//! Minimal static SVG line chart: axes, tick labels, three polylines and a
//! legend. No external renderer involved; the output is deterministic for a
//! given trace.

use std::fmt::Write;

use crate::pipeline::SimulationOutput;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 540.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 28.0;
const MARGIN_BOTTOM: f64 = 56.0;
const TICKS: usize = 6;

struct Series<'a> {
    label: &'a str,
    color: &'a str,
    values: &'a [f64],
}

/// Render the three occupation traces of a run as an SVG document.
pub fn render_chart(out: &SimulationOutput) -> String {
    let series = [
        Series { label: "rho_11", color: "#1f77b4", values: &out.trace.rho_11 },
        Series { label: "rho_00", color: "#ff7f0e", values: &out.trace.rho_00 },
        Series { label: "rho_-1-1", color: "#2ca02c", values: &out.trace.rho_m1m1 },
    ];
    let t_min = out.times_us.first().copied().unwrap_or(0.0);
    let t_max = out.times_us.last().copied().unwrap_or(1.0).max(t_min + f64::MIN_POSITIVE);
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let x_of = |t: f64| MARGIN_LEFT + (t - t_min) / (t_max - t_min) * plot_w;
    let y_of = |v: f64| MARGIN_TOP + (1.0 - v.clamp(0.0, 1.0)) * plot_h;

    let mut doc = String::with_capacity(out.times_us.len() * 48 + 2048);
    let _ = writeln!(
        doc,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"sans-serif\" font-size=\"14\">"
    );
    let _ = writeln!(doc, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");

    // frame
    let _ = writeln!(
        doc,
        "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{plot_w}\" height=\"{plot_h}\" \
         fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>"
    );

    // ticks and grid
    for i in 0..=TICKS {
        let frac = i as f64 / TICKS as f64;
        let t = t_min + frac * (t_max - t_min);
        let x = x_of(t);
        let _ = writeln!(
            doc,
            "<line x1=\"{x:.2}\" y1=\"{y0}\" x2=\"{x:.2}\" y2=\"{y1}\" stroke=\"#ccc\" stroke-width=\"0.5\"/>",
            y0 = MARGIN_TOP,
            y1 = MARGIN_TOP + plot_h
        );
        let _ = writeln!(
            doc,
            "<text x=\"{x:.2}\" y=\"{y}\" text-anchor=\"middle\">{t:.1}</text>",
            y = MARGIN_TOP + plot_h + 20.0
        );
        let v = frac;
        let y = y_of(v);
        let _ = writeln!(
            doc,
            "<line x1=\"{x0}\" y1=\"{y:.2}\" x2=\"{x1}\" y2=\"{y:.2}\" stroke=\"#ccc\" stroke-width=\"0.5\"/>",
            x0 = MARGIN_LEFT,
            x1 = MARGIN_LEFT + plot_w
        );
        let _ = writeln!(
            doc,
            "<text x=\"{x}\" y=\"{yy:.2}\" text-anchor=\"end\">{v:.1}</text>",
            x = MARGIN_LEFT - 8.0,
            yy = y + 5.0
        );
    }

    // axis titles
    let _ = writeln!(
        doc,
        "<text x=\"{x:.2}\" y=\"{y:.2}\" text-anchor=\"middle\">t (us)</text>",
        x = MARGIN_LEFT + plot_w / 2.0,
        y = HEIGHT - 14.0
    );
    let _ = writeln!(
        doc,
        "<text x=\"18\" y=\"{y:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {y:.2})\">occupation</text>",
        y = MARGIN_TOP + plot_h / 2.0
    );

    // traces
    for s in &series {
        let _ = write!(doc, "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.2\" points=\"", s.color);
        for (t, v) in out.times_us.iter().zip(s.values.iter()) {
            let _ = write!(doc, "{:.2},{:.2} ", x_of(*t), y_of(*v));
        }
        doc.push_str("\"/>\n");
    }

    // legend
    for (i, s) in series.iter().enumerate() {
        let y = MARGIN_TOP + 18.0 + 20.0 * i as f64;
        let x = WIDTH - MARGIN_RIGHT - 130.0;
        let _ = writeln!(
            doc,
            "<line x1=\"{x}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"{c}\" stroke-width=\"2\"/>",
            x2 = x + 26.0,
            c = s.color
        );
        let _ = writeln!(doc, "<text x=\"{tx}\" y=\"{ty}\">{label}</text>", tx = x + 34.0, ty = y + 5.0, label = s.label);
    }

    doc.push_str("</svg>\n");
    doc
}
