//! CSV, JSON and SVG renderings of result rows.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{CliError, Result};
use crate::sweep::ResultRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            _ => Err(CliError::Usage(format!("out: expected csv, json or svg, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Nats,
    Bits,
}

impl Units {
    pub fn factor(self) -> f64 {
        match self {
            Units::Nats => 1.0,
            Units::Bits => std::f64::consts::LOG2_E,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Units::Nats => "nats/s/Hz",
            Units::Bits => "bits/s/Hz",
        }
    }
}

impl FromStr for Units {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nats" => Ok(Units::Nats),
            "bits" => Ok(Units::Bits),
            _ => Err(CliError::Usage(format!("units: expected nats or bits, got `{s}`"))),
        }
    }
}

/// Rows with rate columns converted to `units`.
pub fn convert(rows: &[ResultRow], units: Units) -> Vec<ResultRow> {
    match units {
        Units::Nats => rows.to_vec(),
        Units::Bits => rows.iter().map(|r| r.scaled(units.factor())).collect(),
    }
}

fn nonempty(rows: &[ResultRow]) -> Result<()> {
    if rows.is_empty() {
        Err(CliError::EmptyResult)
    } else {
        Ok(())
    }
}

pub fn emit_csv(rows: &[ResultRow]) -> Result<Vec<u8>> {
    nonempty(rows)?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    w.into_inner().map_err(|e| CliError::Encode(e.to_string()))
}

pub fn emit_json(rows: &[ResultRow]) -> Result<Vec<u8>> {
    nonempty(rows)?;
    let mut v = serde_json::to_vec_pretty(rows)?;
    v.push(b'\n');
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotOptions {
    pub width: f64,
    pub height: f64,
    pub title: Option<String>,
    pub y_label: String,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions {
            width: 720.0,
            height: 480.0,
            title: None,
            y_label: format!("ESSR ({})", Units::Nats.label()),
        }
    }
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn span(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        (lo, hi)
    } else {
        let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.05 };
        (lo - pad, hi + pad)
    }
}

/// Line chart of ESSR against the swept value, one series per
/// (scheme, method) in first-appearance order.
pub fn emit_svg(rows: &[ResultRow], opts: &PlotOptions) -> Result<Vec<u8>> {
    nonempty(rows)?;
    let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for r in rows {
        let name = format!("{} {}", r.scheme.name(), r.method.name());
        match series.iter_mut().find(|s| s.0 == name) {
            Some(s) => s.1.push((r.swept_value, r.essr)),
            None => series.push((name, vec![(r.swept_value, r.essr)])),
        }
    }

    let pts = || series.iter().flat_map(|s| s.1.iter().copied());
    let (x0, x1) = span(
        pts().map(|p| p.0).fold(f64::INFINITY, f64::min),
        pts().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max),
    );
    let (y0, y1) = span(
        pts().map(|p| p.1).fold(f64::INFINITY, f64::min).min(0.0),
        pts().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max),
    );

    let (w, h) = (opts.width, opts.height);
    let (left, right, top, bottom) = (70.0, 180.0, 40.0, 55.0);
    let pw = w - left - right;
    let ph = h - top - bottom;
    let sx = |x: f64| left + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| top + ph - (y - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    if let Some(t) = &opts.title {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
            left + pw / 2.0,
            escape(t)
        );
    }
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for i in 0..=5 {
        let f = i as f64 / 5.0;
        let xv = x0 + f * (x1 - x0);
        let yv = y0 + f * (y1 - y0);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            sx(xv),
            top + ph + 18.0,
            tick(xv)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            left - 6.0,
            sy(yv) + 4.0,
            tick(yv)
        );
    }
    let _ = writeln!(
        s,
        r#"<text class="x-label" x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        left + pw / 2.0,
        h - 14.0,
        escape(rows[0].swept)
    );
    let _ = writeln!(
        s,
        r#"<text class="y-label" x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        top + ph / 2.0,
        top + ph / 2.0,
        escape(&opts.y_label)
    );

    for (k, (name, data)) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let coords: Vec<String> = data
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline data-series="{}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            escape(name),
            coords.join(" ")
        );
        let ly = top + 14.0 + 18.0 * k as f64;
        let lx = left + pw + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#,
            lx + 20.0
        );
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, lx + 26.0, ly + 4.0, escape(name));
    }
    s.push_str("</svg>\n");
    Ok(s.into_bytes())
}

fn tick(v: f64) -> String {
    let t = format!("{v:.3}");
    let t = t.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::COLUMNS;
    use nomacdrt::{Method, Scheme};

    fn row(method: Method, x: f64) -> ResultRow {
        ResultRow {
            scheme: Scheme::Proposed,
            method,
            swept: "rho_db",
            swept_value: x,
            rho_db: x,
            esr_x1: Some(0.1 + x),
            esr_x2: Some(1.0 / 3.0),
            esr_x3: Some(2.5e-17),
            esr_x4: Some(7.0),
            esr_x5: None,
            essr: 1.2345678901234567,
            stderr_essr: 0.0,
            flags: "pole_x1;low_snr_x2".into(),
        }
    }

    #[test]
    fn csv_header_and_round_trip() {
        let r = row(Method::AnalyticLb, 20.0);
        let bytes = emit_csv(std::slice::from_ref(&r)).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert_eq!(text.lines().next().unwrap(), COLUMNS.join(","));
        assert!(text.ends_with('\n') && !text.contains('\r'));

        let mut rd = csv::Reader::from_reader(bytes.as_slice());
        let rec = rd.records().next().unwrap().unwrap();
        let num = |i: usize| rec[i].parse::<f64>().unwrap();
        assert_eq!(num(3).to_bits(), r.swept_value.to_bits());
        assert_eq!(num(5).to_bits(), r.esr_x1.unwrap().to_bits());
        assert_eq!(num(6).to_bits(), r.esr_x2.unwrap().to_bits());
        assert_eq!(num(7).to_bits(), r.esr_x3.unwrap().to_bits());
        assert_eq!(&rec[9], "");
        assert_eq!(num(10).to_bits(), r.essr.to_bits());
        assert_eq!(&rec[12], "pole_x1;low_snr_x2");
    }

    #[test]
    fn json_fields_match_csv_header() {
        let bytes = emit_json(&[row(Method::SimExact, 0.0)]).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        let obj = v.as_array().unwrap()[0].as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        let mut cols = COLUMNS.to_vec();
        keys.sort();
        cols.sort();
        assert_eq!(keys, cols);
    }

    #[test]
    fn svg_has_one_polyline_per_series() {
        let rows = vec![
            row(Method::SimExact, 0.0),
            row(Method::SimExact, 10.0),
            row(Method::AnalyticLb, 0.0),
            row(Method::AnalyticLb, 10.0),
        ];
        let svg = String::from_utf8(emit_svg(&rows, &PlotOptions::default()).unwrap()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(r#"class="x-label""#) && svg.contains(">rho_db</text>"));
    }

    #[test]
    fn empty_rows_are_an_error() {
        assert!(matches!(emit_csv(&[]), Err(CliError::EmptyResult)));
        assert!(matches!(emit_json(&[]), Err(CliError::EmptyResult)));
        assert!(matches!(emit_svg(&[], &PlotOptions::default()), Err(CliError::EmptyResult)));
    }

    #[test]
    fn bits_scale_rates_only() {
        let r = row(Method::SimExact, 5.0);
        let b = &convert(std::slice::from_ref(&r), Units::Bits)[0];
        assert_eq!(b.essr, r.essr * std::f64::consts::LOG2_E);
        assert_eq!(b.esr_x4, Some(7.0 * std::f64::consts::LOG2_E));
        assert_eq!(b.esr_x5, None);
        assert_eq!(b.swept_value, r.swept_value);
        assert_eq!(b.rho_db, r.rho_db);
    }
}
