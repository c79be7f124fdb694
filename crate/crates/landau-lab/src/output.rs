//! Artifact writers: manifest, JSON, CSV and hand-drawn SVG plots.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::config::RunSettings;
use crate::error::LabError;

/// Output directory of one run.
#[derive(Debug, Clone)]
pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    /// Creates the directory.
    pub fn create(path: &Path) -> Result<Self, LabError> {
        fs::create_dir_all(path).map_err(|e| LabError::Io(format!("{}: {e}", path.display())))?;
        Ok(OutDir { root: path.to_path_buf() })
    }

    /// Path of an artifact.
    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    /// Pretty JSON with a trailing newline.
    pub fn json<T: Serialize>(&self, name: &str, value: &T) -> Result<PathBuf, LabError> {
        let p = self.path(name);
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        fs::write(&p, text)?;
        Ok(p)
    }

    /// CSV with a header row.
    pub fn csv<R: Serialize>(&self, name: &str, rows: &[R]) -> Result<PathBuf, LabError> {
        let p = self.path(name);
        let mut w = csv::Writer::from_path(&p)?;
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(p)
    }

    /// Raw text.
    pub fn text(&self, name: &str, body: &str) -> Result<PathBuf, LabError> {
        let p = self.path(name);
        fs::write(&p, body)?;
        Ok(p)
    }

    /// `manifest.json`: command, resolved config, seed and version.
    pub fn manifest<T: Serialize>(&self, command: &str, params: &T, run: &RunSettings) -> Result<PathBuf, LabError> {
        let mut config = serde_json::to_value(params)?;
        if let Some(obj) = config.as_object_mut() {
            obj.retain(|_, v| !v.is_null());
            obj.insert("seed".into(), json!(run.seed));
            obj.insert("out".into(), json!(run.out));
        }
        let m = json!({
            "command": command,
            "version": env!("CARGO_PKG_VERSION"),
            "seed": run.seed,
            "config": config,
        });
        self.json("manifest.json", &m)
    }
}

/// One series of a log-log plot.
#[derive(Debug, Clone)]
pub struct Series {
    /// Legend text.
    pub label: String,
    /// `(x, y, y_lo, y_hi)`, positive.
    pub points: Vec<(f64, f64, f64, f64)>,
    /// Optional fitted line `ln y = a + b ln x`.
    pub fit: Option<(f64, f64)>,
}

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Log-log scatter with error bars, fit lines and a caption.
pub fn loglog_svg(title: &str, xlabel: &str, ylabel: &str, series: &[Series], caption: &[String]) -> String {
    let (w, h, m) = (640.0, 440.0, 60.0);
    let pts = series.iter().flat_map(|s| s.points.iter()).filter(|p| p.0 > 0.0 && p.1 > 0.0);
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, 0.0_f64, f64::INFINITY, 0.0_f64);
    for p in pts {
        x0 = x0.min(p.0);
        x1 = x1.max(p.0);
        y0 = y0.min(if p.2 > 0.0 { p.2 } else { p.1 });
        y1 = y1.max(p.3.max(p.1));
    }
    if !(x0 < x1) {
        x0 = x0.min(1.0) * 0.5;
        x1 = x1.max(x0) * 2.0;
    }
    if !(y0 < y1) {
        y0 = y0.min(1.0) * 0.5;
        y1 = y1.max(y0) * 2.0;
    }
    let (lx0, lx1) = (x0.ln() - 0.1, x1.ln() + 0.1);
    let (ly0, ly1) = (y0.ln() - 0.1, y1.ln() + 0.1);
    let sx = |x: f64| m + (x.ln() - lx0) / (lx1 - lx0) * (w - 2.0 * m);
    let sy = |y: f64| h - m - (y.max(1e-300).ln() - ly0) / (ly1 - ly0) * (h - 2.0 * m);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#, w / 2.0, escape(title));
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="black" points="{m},{m} {m},{} {},{}"/>"#,
        h - m,
        w - m,
        h - m
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, w / 2.0, h - 20.0, escape(xlabel));
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        h / 2.0,
        h / 2.0,
        escape(ylabel)
    );
    for (v, anchor) in [(x0, "start"), (x1, "end")] {
        let _ = writeln!(s, r#"<text x="{:.1}" y="{}" text-anchor="{anchor}">{v:.3e}</text>"#, sx(v), h - m + 16.0);
    }
    for v in [y0, y1] {
        let _ = writeln!(s, r#"<text x="{}" y="{:.1}" text-anchor="end">{v:.3e}</text>"#, m - 4.0, sy(v));
    }
    for (i, ser) in series.iter().enumerate() {
        let c = COLORS[i % COLORS.len()];
        for p in ser.points.iter().filter(|p| p.0 > 0.0 && p.1 > 0.0) {
            let (px, py) = (sx(p.0), sy(p.1));
            if p.2 > 0.0 && p.3 > p.2 {
                let _ = writeln!(
                    s,
                    r#"<line x1="{px:.1}" y1="{:.1}" x2="{px:.1}" y2="{:.1}" stroke="{c}"/>"#,
                    sy(p.2),
                    sy(p.3)
                );
            }
            let _ = writeln!(s, r#"<circle cx="{px:.1}" cy="{py:.1}" r="3" fill="{c}"/>"#);
        }
        if let Some((a, b)) = ser.fit {
            let ya = (a + b * x0.ln()).exp();
            let yb = (a + b * x1.ln()).exp();
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{c}" stroke-dasharray="4 3" points="{:.1},{:.1} {:.1},{:.1}"/>"#,
                sx(x0),
                sy(ya),
                sx(x1),
                sy(yb)
            );
        }
        let _ = writeln!(s, r#"<text x="{}" y="{}" fill="{c}">{}</text>"#, w - m - 150.0, m + 16.0 * i as f64, escape(&ser.label));
    }
    for (i, line) in caption.iter().enumerate() {
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, m + 8.0, m + 16.0 * i as f64, escape(line));
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
