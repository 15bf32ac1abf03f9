//! CSV, SVG and table writers.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::analysis::ResourceReport;
use crate::engine::Trajectory;
use crate::error::{Error, Result};

/// Writes through a sibling temporary file and renames it into place, so a
/// failed run never leaves a truncated output behind.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let name = path
        .file_name()
        .ok_or_else(|| Error::Io(format!("{}: not a file path", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io)
}

/// `base` unchanged for a single series, otherwise `<stem>_<label>.<ext>`.
pub fn series_path(base: &Path, label: &str, series_count: usize) -> PathBuf {
    if series_count <= 1 {
        return base.to_path_buf();
    }
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_{label}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{label}"),
    };
    base.with_file_name(name)
}

/// Long-format CSV: `step,observable,value,trace,purity`.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from("step,observable,value,trace,purity\n");
    for r in &traj.records {
        for (name, v) in &r.values {
            let _ = writeln!(
                out,
                "{},{},{:.15e},{:.15e},{:.15e}",
                r.step, name, v, r.trace, r.purity
            );
        }
    }
    out
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

/// Minimal line plot of every observable of every series.
pub fn trajectories_svg(title: &str, series: &[(String, Trajectory)]) -> String {
    let (w, h) = (640.0, 400.0);
    let (left, right, top, bottom) = (60.0, 20.0, 40.0, 50.0);
    let pw = w - left - right;
    let ph = h - top - bottom;
    let max_step = series
        .iter()
        .map(|(_, t)| t.step_count)
        .max()
        .unwrap_or(1)
        .max(1) as f64;
    let values = series.iter().flat_map(|(_, t)| {
        t.records
            .iter()
            .flat_map(|r| r.values.iter().map(|(_, v)| *v))
    });
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let x = |s: f64| left + pw * s / max_step;
    let y = |v: f64| top + ph * (hi - v) / (hi - lo);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        w / 2.0,
        escape(title)
    );
    let _ = writeln!(
        out,
        r#"<path d="M{left} {top} V{} H{}" fill="none" stroke="black"/>"#,
        top + ph,
        left + pw
    );
    for i in 0..=4 {
        let v = lo + (hi - lo) * i as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{:.2}" text-anchor="end">{v:.2}</text>"#,
            left - 6.0,
            y(v) + 4.0
        );
        let s = max_step * i as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{}" text-anchor="middle">{s:.0}</text>"#,
            x(s),
            top + ph + 18.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">step</text>"#,
        left + pw / 2.0,
        h - 10.0
    );

    let mut color = 0;
    for (label, traj) in series {
        for name in traj.observable_names() {
            let Ok(points) = traj.series(name) else {
                continue;
            };
            let stroke = PALETTE[color % PALETTE.len()];
            let pts: Vec<String> = traj
                .records
                .iter()
                .zip(&points)
                .map(|(r, v)| format!("{:.2},{:.2}", x(r.step as f64), y(*v)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{stroke}" stroke-width="1.5" points="{}"/>"#,
                pts.join(" ")
            );
            let ly = top + 14.0 + 16.0 * color as f64;
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{ly}" fill="{stroke}" text-anchor="end">{} {}</text>"#,
                left + pw - 4.0,
                escape(label),
                escape(name)
            );
            color += 1;
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Aligned text table, one column per report.
pub fn resource_table(reports: &[(String, ResourceReport)]) -> String {
    let rows: Vec<(String, Vec<String>)> = {
        let kvs: Vec<Vec<(String, String)>> = reports
            .iter()
            .map(|(_, r)| {
                r.to_kv()
                    .lines()
                    .filter_map(|l| {
                        l.split_once(" = ")
                            .map(|(k, v)| (k.to_string(), v.to_string()))
                    })
                    .collect()
            })
            .collect();
        let keys: Vec<String> = kvs
            .first()
            .map(|k| k.iter().map(|(k, _)| k.clone()).collect())
            .unwrap_or_default();
        keys.iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), kvs.iter().map(|kv| kv[i].1.clone()).collect()))
            .collect()
    };
    let key_w = rows
        .iter()
        .map(|(k, _)| k.len())
        .max()
        .unwrap_or(0)
        .max("series".len());
    let col_w: Vec<usize> = reports
        .iter()
        .enumerate()
        .map(|(j, (label, _))| {
            rows.iter()
                .map(|(_, v)| v[j].len())
                .max()
                .unwrap_or(0)
                .max(label.len())
        })
        .collect();
    let mut out = format!("{:<key_w$}", "series");
    for ((label, _), cw) in reports.iter().zip(&col_w) {
        let _ = write!(out, "  {label:>cw$}");
    }
    out.push('\n');
    for (k, vals) in &rows {
        let _ = write!(out, "{k:<key_w$}");
        for (v, cw) in vals.iter().zip(&col_w) {
            let _ = write!(out, "  {v:>cw$}");
        }
        out.push('\n');
    }
    out
}
