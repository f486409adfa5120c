//! CSV and JSON serialization of [`BoundReport`]s.

use algconn_core::bounds::{BoundKind, BoundReport};
use serde::Serialize;

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros dropped,
/// scientific notation outside `1e-4 <= |x| < 1e12`.
pub fn fmt_g12(x: f64) -> String {
    const PRECISION: i32 = 12;
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_fraction(mantissa), sign, exp.abs())
    } else {
        let decimals = (PRECISION - 1 - exp) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt_g12(x: Option<f64>) -> String {
    x.map(fmt_g12).unwrap_or_default()
}

pub fn csv_header() -> String {
    let mut cols: Vec<String> = [
        "n",
        "m",
        "ell",
        "s1",
        "s2",
        "s_ell",
        "diameter",
        "e_power",
        "e_complement",
        "lambda2",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    cols.extend(BoundKind::ALL.iter().map(|k| format!("bound_{}", k.name())));
    cols.extend(BoundKind::ALL.iter().map(|k| format!("slack_{}", k.name())));
    cols.join(",")
}

/// One CSV row; "not applicable" values are empty fields.
pub fn csv_row(r: &BoundReport) -> String {
    let mut cols = vec![
        r.n.to_string(),
        r.m.to_string(),
        r.ell.to_string(),
        r.s1.to_string(),
        r.s2.to_string(),
        r.s_ell.to_string(),
        r.diameter.map(|d| d.to_string()).unwrap_or_default(),
        r.e_power.to_string(),
        r.e_complement.to_string(),
        fmt_g12(r.lambda2),
    ];
    cols.extend(r.values.iter().map(|v| opt_g12(*v)));
    cols.extend(r.slacks.iter().map(|v| opt_g12(*v)));
    cols.join(",")
}

pub fn csv_document(r: &BoundReport) -> String {
    format!("{}\n{}\n", csv_header(), csv_row(r))
}

/// JSON shape of a report: the CSV columns in the same order, `null` for
/// "not applicable", and the names of tight bounds.
#[derive(Debug, Serialize)]
pub struct ReportRecord {
    pub n: usize,
    pub m: usize,
    pub ell: usize,
    pub s1: usize,
    pub s2: usize,
    pub s_ell: usize,
    pub diameter: Option<usize>,
    pub e_power: usize,
    pub e_complement: usize,
    pub lambda2: f64,
    pub bound_s1: Option<f64>,
    pub bound_s2_over_n: Option<f64>,
    pub bound_g1: Option<f64>,
    pub bound_g1_diam: Option<f64>,
    pub bound_mohar: Option<f64>,
    pub bound_g2: Option<f64>,
    pub bound_lu: Option<f64>,
    pub slack_s1: Option<f64>,
    pub slack_s2_over_n: Option<f64>,
    pub slack_g1: Option<f64>,
    pub slack_g1_diam: Option<f64>,
    pub slack_mohar: Option<f64>,
    pub slack_g2: Option<f64>,
    pub slack_lu: Option<f64>,
    pub tight: Vec<&'static str>,
}

impl From<&BoundReport> for ReportRecord {
    fn from(r: &BoundReport) -> Self {
        let [bound_s1, bound_s2_over_n, bound_g1, bound_g1_diam, bound_mohar, bound_g2, bound_lu] =
            r.values;
        let [slack_s1, slack_s2_over_n, slack_g1, slack_g1_diam, slack_mohar, slack_g2, slack_lu] =
            r.slacks;
        Self {
            n: r.n,
            m: r.m,
            ell: r.ell,
            s1: r.s1,
            s2: r.s2,
            s_ell: r.s_ell,
            diameter: r.diameter,
            e_power: r.e_power,
            e_complement: r.e_complement,
            lambda2: r.lambda2,
            bound_s1,
            bound_s2_over_n,
            bound_g1,
            bound_g1_diam,
            bound_mohar,
            bound_g2,
            bound_lu,
            slack_s1,
            slack_s2_over_n,
            slack_g1,
            slack_g1_diam,
            slack_mohar,
            slack_g2,
            slack_lu,
            tight: r.tight_kinds().into_iter().map(BoundKind::name).collect(),
        }
    }
}

pub fn json_document(r: &BoundReport) -> String {
    let mut s = serde_json::to_string_pretty(&ReportRecord::from(r)).expect("plain data");
    s.push('\n');
    s
}
