use super::config::ExperimentConfig;
use super::study::ConvergenceReport;
use std::fmt::Write;

fn header(out: &mut String, config: &ExperimentConfig, meta: &[(String, String)]) {
    out.push_str("# imex-relax\n");
    for (k, v) in meta {
        let _ = writeln!(out, "# {k}: {v}");
    }
    out.push_str("# config:\n");
    for line in config.to_json().lines() {
        let _ = writeln!(out, "#   {line}");
    }
}

fn num(v: f64) -> String {
    format!("{v:.10e}")
}

/// Column-per-series CSV. All columns must have the same length.
pub fn profile_csv(config: &ExperimentConfig, meta: &[(String, String)], columns: &[(&str, &[f64])]) -> String {
    let mut out = String::new();
    header(&mut out, config, meta);
    let names: Vec<&str> = columns.iter().map(|c| c.0).collect();
    out.push_str(&names.join(","));
    out.push('\n');
    let rows = columns.first().map_or(0, |c| c.1.len());
    for i in 0..rows {
        let line: Vec<String> = columns.iter().map(|c| num(c.1[i])).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn convergence_csv(config: &ExperimentConfig, reports: &[ConvergenceReport]) -> String {
    let mut out = String::new();
    let norm = reports.first().map_or("linf_relative", |r| r.norm.label());
    header(&mut out, config, &[("norm".into(), norm.into())]);
    out.push_str("tableau,N,dt,error_rho,order_rho,error_j,order_j\n");
    let opt = |o: Option<f64>| o.map(num).unwrap_or_default();
    for r in reports {
        for row in &r.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.tableau,
                row.n,
                num(row.dt),
                num(row.error_rho),
                opt(row.order_rho),
                num(row.error_j),
                opt(row.order_j)
            );
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Draw markers instead of a polyline.
    pub markers: bool,
}

impl Series {
    pub fn line(name: &str, x: &[f64], y: &[f64]) -> Self {
        Self { name: name.into(), x: x.to_vec(), y: y.to_vec(), markers: false }
    }

    pub fn points(name: &str, x: &[f64], y: &[f64]) -> Self {
        Self { markers: true, ..Self::line(name, x, y) }
    }
}

/// Minimal static line chart.
#[derive(Debug, Clone, PartialEq)]
pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

const W: f64 = 640.0;
const H: f64 = 420.0;
const M: (f64, f64, f64, f64) = (70.0, 20.0, 40.0, 50.0); // left right top bottom
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl LineChart {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        Self { title: title.into(), x_label: x_label.into(), y_label: y_label.into(), series: Vec::new() }
    }

    pub fn with(mut self, s: Series) -> Self {
        self.series.push(s);
        self
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for s in &self.series {
            for (&x, &y) in s.x.iter().zip(&s.y) {
                if x.is_finite() && y.is_finite() {
                    b = (b.0.min(x), b.1.max(x), b.2.min(y), b.3.max(y));
                }
            }
        }
        if !b.0.is_finite() {
            return (0.0, 1.0, 0.0, 1.0);
        }
        if b.1 == b.0 {
            b.1 = b.0 + 1.0;
        }
        let pad = 0.05 * (b.3 - b.2).max(1e-12);
        (b.0, b.1, b.2 - pad, b.3 + pad)
    }

    pub fn to_svg(&self) -> String {
        let (x0, x1, y0, y1) = self.bounds();
        let (pw, ph) = (W - M.0 - M.1, H - M.2 - M.3);
        let sx = |x: f64| M.0 + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| M.2 + (y1 - y) / (y1 - y0) * ph;
        let mut o = String::new();
        let _ = writeln!(o, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#);
        let _ = writeln!(o, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(o, r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, escape(&self.title));
        let _ = writeln!(o, r#"<rect x="{}" y="{}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#, M.0, M.2);
        for k in 0..=4 {
            let t = k as f64 / 4.0;
            let (xv, yv) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
            let (px, py) = (sx(xv), sy(yv));
            let _ = writeln!(o, r#"<line x1="{px:.2}" y1="{}" x2="{px:.2}" y2="{}" stroke="black"/>"#, M.2 + ph, M.2 + ph + 5.0);
            let _ = writeln!(o, r#"<text x="{px:.2}" y="{}" text-anchor="middle">{xv:.3}</text>"#, M.2 + ph + 18.0);
            let _ = writeln!(o, r#"<line x1="{}" y1="{py:.2}" x2="{}" y2="{py:.2}" stroke="black"/>"#, M.0 - 5.0, M.0);
            let _ = writeln!(o, r#"<text x="{}" y="{:.2}" text-anchor="end">{yv:.3}</text>"#, M.0 - 8.0, py + 4.0);
        }
        let _ = writeln!(o, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, M.0 + pw / 2.0, H - 10.0, escape(&self.x_label));
        let _ = writeln!(o, r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#, M.2 + ph / 2.0, M.2 + ph / 2.0, escape(&self.y_label));
        for (i, s) in self.series.iter().enumerate() {
            let c = COLORS[i % COLORS.len()];
            let pts: Vec<(f64, f64)> = s
                .x
                .iter()
                .zip(&s.y)
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .map(|(&x, &y)| (sx(x), sy(y)))
                .collect();
            if s.markers {
                for (px, py) in &pts {
                    let _ = writeln!(o, r#"<circle cx="{px:.2}" cy="{py:.2}" r="2.5" fill="none" stroke="{c}"/>"#);
                }
            } else {
                let p: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                let _ = writeln!(o, r#"<polyline points="{}" fill="none" stroke="{c}" stroke-width="1.5"/>"#, p.join(" "));
            }
            let ly = M.2 + 16.0 + 16.0 * i as f64;
            let lx = M.0 + pw - 150.0;
            let _ = writeln!(o, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{c}" stroke-width="2"/>"#, lx + 20.0);
            let _ = writeln!(o, r#"<text x="{}" y="{}">{}</text>"#, lx + 26.0, ly + 4.0, escape(&s.name));
        }
        o.push_str("</svg>\n");
        o
    }
}
