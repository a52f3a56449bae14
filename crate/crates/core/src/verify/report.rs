use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::config::Format;
use crate::error::Result;

/// `[re, im]` on the wire; non-finite parts are written as `null` and read
/// back as NaN.
mod pair {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Complex64, D::Error> {
        let [re, im] = <[Option<f64>; 2]>::deserialize(d)?;
        Ok(Complex64::new(re.unwrap_or(f64::NAN), im.unwrap_or(f64::NAN)))
    }
}

fn real_or_nan<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    #[serde(with = "pair")]
    pub value: Complex64,
}

/// Outcome of one check on one parameter instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub params: Vec<NamedValue>,
    #[serde(with = "pair")]
    pub lhs: Complex64,
    #[serde(with = "pair")]
    pub rhs: Complex64,
    #[serde(deserialize_with = "real_or_nan")]
    pub rel_residual: f64,
    pub pass: bool,
    pub runtime_ms: f64,
    /// Why the check could not be evaluated; absent for evaluated checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckReport {
    pub fn named(params: Vec<(String, Complex64)>) -> Vec<NamedValue> {
        params.into_iter().map(|(name, value)| NamedValue { name, value }).collect()
    }
}

/// `(passed, total)`.
pub fn tally(reports: &[CheckReport]) -> (usize, usize) {
    (reports.iter().filter(|r| r.pass).count(), reports.len())
}

pub fn summary_line(reports: &[CheckReport]) -> String {
    let (k, m) = tally(reports);
    format!("passed {k}/{m}")
}

fn text(reports: &[CheckReport]) -> String {
    let width = reports.iter().map(|r| r.check_id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in reports {
        let status = if r.pass { "ok  " } else { "FAIL" };
        let _ = write!(out, "{status} {:<width$}  residual {:>9.2e}", r.check_id, r.rel_residual);
        if r.runtime_ms > 0.0 {
            let _ = write!(out, "  {:>9.2} ms", r.runtime_ms);
        }
        if let Some(e) = &r.error {
            let _ = write!(out, "  error: {e}");
        }
        out.push('\n');
    }
    out.push_str(&summary_line(reports));
    out.push('\n');
    out
}

/// Text: one aligned line per check and a closing `passed K/M` line.
/// JSON: a top-level array of reports.
pub fn render_report(reports: &[CheckReport], format: Format) -> Result<Vec<u8>> {
    Ok(match format {
        Format::Text => text(reports).into_bytes(),
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(reports)?;
            bytes.push(b'\n');
            bytes
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(pass: bool) -> CheckReport {
        CheckReport {
            check_id: "core.gamma_shift".into(),
            params: CheckReport::named(vec![("z".into(), Complex64::new(0.3, -0.2))]),
            lhs: Complex64::new(1.5, 0.25),
            rhs: Complex64::new(1.5, 0.25 + 1e-15),
            rel_residual: 6.5e-16,
            pass,
            runtime_ms: 0.0,
            error: None,
        }
    }

    #[test]
    fn one_passing_check() {
        let out = String::from_utf8(render_report(&[report(true)], Format::Text).unwrap()).unwrap();
        assert!(out.contains("passed 1/1"), "{out}");
        assert!(out.lines().next().unwrap().starts_with("ok"));
    }

    #[test]
    fn json_round_trip() {
        let reports = vec![report(true), report(false)];
        let bytes = render_report(&reports, Format::Json).unwrap();
        let back: Vec<CheckReport> = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(back, reports);
        let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(v[0]["lhs"], serde_json::json!([1.5, 0.25]));
        assert!(v[0].get("error").is_none());
    }

    #[test]
    fn failures_keep_their_error_and_nan_becomes_null() {
        let mut r = report(false);
        r.lhs = Complex64::new(f64::NAN, f64::NAN);
        r.rel_residual = f64::NAN;
        r.error = Some("quadrature did not converge".into());
        let bytes = render_report(std::slice::from_ref(&r), Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(v[0]["lhs"], serde_json::json!([null, null]));
        let back: Vec<CheckReport> = serde_json::from_slice(&bytes).unwrap();
        assert!(back[0].lhs.re.is_nan() && back[0].rel_residual.is_nan());
        assert_eq!(back[0].error, r.error);
        let text = String::from_utf8(render_report(&[r], Format::Text).unwrap()).unwrap();
        assert!(text.contains("FAIL") && text.contains("passed 0/1"));
    }
}
