//! CSV and SVG writers.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use illusion_core::Complex64;
use thiserror::Error;

use crate::config::OutputFormat;
use crate::sweep::{SweepRow, SweepTable, TableKind};

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: io::Error,
    },
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "NaN".to_string()
    }
}

fn push_complex(out: &mut Vec<String>, z: Option<Complex64>) {
    let z = z.unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    out.push(number(z.re));
    out.push(number(z.im));
}

/// Plain header-plus-rows table; cells are already formatted.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn sweep_header(kind: TableKind) -> &'static [&'static str] {
    match kind {
        TableKind::Simulate => &[
            "freq_ghz",
            "theta_deg",
            "g_act_re",
            "g_act_im",
            "g_tgt_re",
            "g_tgt_im",
            "err",
        ],
        TableKind::Reflective => &[
            "freq_ghz",
            "theta_deg",
            "g_act_re",
            "g_act_im",
            "g_tgt_re",
            "g_tgt_im",
            "rho_req_re",
            "rho_req_im",
            "eta_n_re",
            "eta_n_im",
            "passive",
            "err",
        ],
        TableKind::Transmissive => &[
            "freq_ghz",
            "theta_deg",
            "g_act_re",
            "g_act_im",
            "g_tgt_re",
            "g_tgt_im",
            "rho_req_re",
            "rho_req_im",
            "chi_e_re",
            "chi_e_im",
            "passive",
            "err",
        ],
    }
}

fn sweep_cells(kind: TableKind, row: &SweepRow) -> Vec<String> {
    let mut cells = vec![number(row.freq_ghz), number(row.theta_deg)];
    push_complex(&mut cells, row.gamma_actual);
    push_complex(&mut cells, row.gamma_target);
    if kind != TableKind::Simulate {
        push_complex(&mut cells, row.rho_required);
        push_complex(&mut cells, row.sheet);
        cells.push(match row.passive {
            Some(true) => "1".into(),
            Some(false) => "0".into(),
            None => String::new(),
        });
    }
    cells.push(row.error.unwrap_or("").to_string());
    cells
}

pub fn sweep_csv(table: &SweepTable) -> CsvTable {
    let mut csv = CsvTable::new(sweep_header(table.kind));
    csv.rows = table
        .rows
        .iter()
        .map(|r| sweep_cells(table.kind, r))
        .collect();
    csv
}

type Axis = fn(&SweepRow) -> f64;
type Column = fn(&SweepRow) -> Option<Complex64>;

struct Series {
    label: String,
    points: Vec<(f64, f64)>,
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Amplitude and phase (degrees) of the sweep's complex columns, plotted
/// against θ, or against frequency when θ is fixed.
pub fn sweep_svg(table: &SweepTable) -> String {
    let single_theta = table
        .rows
        .windows(2)
        .all(|w| w[0].theta_deg == w[1].theta_deg);
    let (x_label, x_of, group_of): (&str, Axis, Axis) = if single_theta && table.rows.len() > 1 {
        ("frequency (GHz)", |r| r.freq_ghz, |r| r.theta_deg)
    } else {
        ("incidence angle (deg)", |r| r.theta_deg, |r| r.freq_ghz)
    };
    let group_unit = if single_theta && table.rows.len() > 1 {
        "°"
    } else {
        " GHz"
    };

    let columns: Vec<(&str, Column)> = match table.kind {
        TableKind::Simulate => vec![
            ("Γ actual", |r| r.gamma_actual),
            ("Γ target", |r| r.gamma_target),
        ],
        _ => vec![("ρ required", |r| r.rho_required)],
    };

    let mut groups: Vec<f64> = table.rows.iter().map(group_of).collect();
    groups.dedup();
    let mut amplitude = Vec::new();
    let mut phase = Vec::new();
    for g in &groups {
        for (name, get) in &columns {
            let label = format!("{name} @ {}{group_unit}", g);
            let values: Vec<(f64, Complex64)> = table
                .rows
                .iter()
                .filter(|r| group_of(r) == *g)
                .filter_map(|r| get(r).map(|z| (x_of(r), z)))
                .collect();
            amplitude.push(Series {
                label: label.clone(),
                points: values.iter().map(|(x, z)| (*x, z.norm())).collect(),
            });
            phase.push(Series {
                label,
                points: values
                    .iter()
                    .map(|(x, z)| (*x, z.arg().to_degrees()))
                    .collect(),
            });
        }
    }

    let mut svg = String::new();
    let (width, height) = (900.0, 760.0);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    panel(
        &mut svg,
        &amplitude,
        40.0,
        "amplitude",
        x_label,
        Some((0.0, None)),
    );
    panel(
        &mut svg,
        &phase,
        400.0,
        "phase (deg)",
        x_label,
        Some((-180.0, Some(180.0))),
    );
    svg.push_str("</svg>\n");
    svg
}

fn panel(
    svg: &mut String,
    series: &[Series],
    top: f64,
    y_label: &str,
    x_label: &str,
    y_hint: Option<(f64, Option<f64>)>,
) {
    let (left, width, height) = (70.0, 620.0, 300.0);
    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x0 > x1 {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if let Some((lo, hi)) = y_hint {
        y0 = y0.min(lo);
        if let Some(hi) = hi {
            y1 = y1.max(hi);
        }
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| left + (x - x0) / (x1 - x0) * width;
    let sy = |y: f64| top + height - (y - y0) / (y1 - y0) * height;

    let _ = writeln!(
        svg,
        r#"<rect x="{left}" y="{top}" width="{width}" height="{height}" fill="none" stroke="black"/>"#
    );
    for i in 0..=4 {
        let fx = x0 + (x1 - x0) * i as f64 / 4.0;
        let fy = y0 + (y1 - y0) * i as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            sx(fx),
            top + height + 16.0,
            tick(fx)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            left - 6.0,
            sy(fy) + 4.0,
            tick(fy)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{x_label}</text>"#,
        left + width / 2.0,
        top + height + 34.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{y_label}</text>"#,
        top + height / 2.0,
        top + height / 2.0
    );
    for (i, s) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.2" points="{}"/>"#,
            points.join(" ")
        );
        if i < 24 {
            let y = top + 12.0 + i as f64 * 12.0;
            let _ = writeln!(
                svg,
                r#"<text x="{:.1}" y="{y:.1}" fill="{colour}">{}</text>"#,
                left + width + 10.0,
                escape(&s.label)
            );
        }
    }
}

fn tick(v: f64) -> String {
    let s = format!("{v:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Writes `content` to `path`, or to stdout when no path is given.
pub fn write_output(content: &str, path: Option<&Path>) -> Result<(), EmitError> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|source| EmitError::Write {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|source| EmitError::Write {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

pub fn emit(
    table: &SweepTable,
    format: OutputFormat,
    path: Option<&PathBuf>,
) -> Result<(), EmitError> {
    let content = match format {
        OutputFormat::Csv => sweep_csv(table).render(),
        OutputFormat::Svg => sweep_svg(table),
    };
    write_output(&content, path.map(|p| p.as_path()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> SweepRow {
        SweepRow {
            freq_ghz: 10.3,
            theta_deg: 0.5,
            gamma_actual: Some(Complex64::new(-1.0, 0.25)),
            gamma_target: Some(Complex64::new(0.1, -0.2)),
            rho_required: None,
            sheet: None,
            passive: None,
            error: Some("degenerate"),
        }
    }

    #[test]
    fn empty_table_is_header_only() {
        let table = SweepTable {
            kind: TableKind::Reflective,
            rows: vec![],
        };
        assert_eq!(
            sweep_csv(&table).render(),
            "freq_ghz,theta_deg,g_act_re,g_act_im,g_tgt_re,g_tgt_im,rho_req_re,rho_req_im,eta_n_re,eta_n_im,passive,err\n"
        );
    }

    #[test]
    fn one_row_is_two_lines() {
        let table = SweepTable {
            kind: TableKind::Reflective,
            rows: vec![row()],
        };
        let text = sweep_csv(&table).render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(
            lines[1],
            "1.0300000000000001e1,5.0000000000000000e-1,-1.0000000000000000e0,2.5000000000000000e-1,\
             1.0000000000000001e-1,-2.0000000000000001e-1,NaN,NaN,NaN,NaN,,degenerate"
        );
        assert_eq!(text, sweep_csv(&table).render());
    }

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            assert_eq!(number(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn svg_is_well_formed_enough() {
        let table = SweepTable {
            kind: TableKind::Simulate,
            rows: vec![
                row(),
                SweepRow {
                    theta_deg: 1.0,
                    ..row()
                },
            ],
        };
        let svg = sweep_svg(&table);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 4);
        assert!(svg.contains("phase (deg)"));
    }

    #[test]
    fn write_error_names_the_path() {
        let err = write_output("x", Some(Path::new("/nonexistent-dir/out.csv"))).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/out.csv"));
    }
}
