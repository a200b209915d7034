//! Deterministic serialization: JSON with the same 17-significant-digit
//! float rendering everywhere, small CSV writers for the diagnostic
//! artifacts, and atomic file writes (temp file + rename) so readers never
//! observe a torn file.

use std::fs;
use std::io::{self, Write as _};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::classify::{CriterionCurve, NormEquivalence, Verdict};
use crate::envelope::MonomialNormTable;
use crate::error::{Error, Result};
use crate::taylor::NormSample;

/// Render a float with 17 significant digits, enough to round-trip any
/// finite f64 bit pattern exactly.
pub fn fmt_float(x: f64) -> String {
    debug_assert!(x.is_finite(), "non-finite floats never reach serialization");
    format!("{x:.16e}")
}

/// Pretty-printing JSON formatter that pins f64 rendering to
/// [`fmt_float`], so identical inputs always produce identical bytes.
struct FixedFloatFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl FixedFloatFormatter<'_> {
    fn new() -> Self {
        FixedFloatFormatter {
            inner: PrettyFormatter::new(),
        }
    }
}

impl Formatter for FixedFloatFormatter<'_> {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_array(writer)
    }

    fn end_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object(writer)
    }

    fn end_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_object_value(writer)
    }
}

/// Serialize to pretty JSON with deterministic float rendering and a
/// trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFloatFormatter::new());
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("JSON serializer emits UTF-8"))
}

/// Write through a sibling temp file and rename into place, so a crash or
/// error mid-write never leaves a partial file under the final name.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::InvalidParameter(format!("not a writable path: {}", path.display())))?;
    let tmp = path.with_file_name(format!("{}.tmp", file_name.to_string_lossy()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// `r,log_q` rows of a criterion curve.
pub fn curve_csv(curve: &CriterionCurve) -> String {
    let mut out = String::from("r,log_q\n");
    for s in &curve.samples {
        out.push_str(&fmt_float(s[0]));
        out.push(',');
        out.push_str(&fmt_float(s[1]));
        out.push('\n');
    }
    out
}

pub fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Compact => "compact",
        Verdict::Bounded => "bounded",
        Verdict::Unbounded => "unbounded",
    }
}

/// One cell of the degree-rule comparison table.
#[derive(Debug, Clone, Copy)]
pub struct DegreeRow {
    pub alpha: f64,
    pub p: f64,
    pub degree: usize,
    pub rule_verdict: Verdict,
    pub sampled_verdict: Verdict,
}

impl DegreeRow {
    pub fn agree(&self) -> bool {
        self.rule_verdict == self.sampled_verdict
    }
}

pub fn degree_table_csv(rows: &[DegreeRow]) -> String {
    let mut out = String::from("alpha,p,degree,rule,sampled,agree\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_float(row.alpha),
            fmt_float(row.p),
            row.degree,
            verdict_label(row.rule_verdict),
            verdict_label(row.sampled_verdict),
            row.agree()
        ));
    }
    out
}

/// One draw of the norm-equivalence experiment.
#[derive(Debug, Clone)]
pub struct LpRow {
    pub label: String,
    pub degree: usize,
    pub ratios: NormEquivalence,
}

/// Largest ratio seen in either column: the empirical equivalence constant.
pub fn lp_envelope(rows: &[LpRow]) -> f64 {
    rows.iter()
        .flat_map(|r| [r.ratios.deriv_over_value, r.ratios.value_over_seminorm])
        .fold(0.0f64, f64::max)
}

pub fn lp_csv(rows: &[LpRow]) -> String {
    let mut out = String::from("label,degree,deriv_over_value,value_over_seminorm\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.label,
            row.degree,
            fmt_float(row.ratios.deriv_over_value),
            fmt_float(row.ratios.value_over_seminorm)
        ));
    }
    let dmax = rows
        .iter()
        .map(|r| r.ratios.deriv_over_value)
        .fold(0.0f64, f64::max);
    let vmax = rows
        .iter()
        .map(|r| r.ratios.value_over_seminorm)
        .fold(0.0f64, f64::max);
    out.push_str(&format!("envelope,,{},{}\n", fmt_float(dmax), fmt_float(vmax)));
    out
}

/// `r,log_v,log_v_m,gap` rows comparing a weight with its monomial envelope.
pub fn sandwich_csv(rows: &[[f64; 4]]) -> String {
    let mut out = String::from("r,log_v,log_v_m,gap\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_float(row[0]),
            fmt_float(row[1]),
            fmt_float(row[2]),
            fmt_float(row[3])
        ));
    }
    out
}

/// `n,log_norm,maximizer` rows of a monomial norm table.
pub fn table_csv(table: &MonomialNormTable) -> String {
    let mut out = String::from("n,log_norm,maximizer\n");
    for n in 0..=table.max_degree() {
        out.push_str(&format!(
            "{},{},{}\n",
            n,
            fmt_float(table.log_norm(n)),
            fmt_float(table.maximizer(n))
        ));
    }
    out
}

/// `r,log_majorant,log_weight,sum` rows of a norm objective curve.
pub fn norm_curve_csv(samples: &[NormSample]) -> String {
    let mut out = String::from("r,log_majorant,log_weight,sum\n");
    for s in samples {
        // the origin sample of a zero constant term is -inf; clamp is not
        // applied because norm curves are only emitted for nonzero rows
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_float(s.r),
            fmt_float(s.log_majorant),
            fmt_float(s.log_weight),
            fmt_float(s.sum)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::CurveForm;

    #[test]
    fn floats_round_trip_exactly() {
        for x in [
            0.1,
            -1.0 / 3.0,
            1e300,
            5e-324,
            2.0f64.powi(-40),
            std::f64::consts::PI,
        ] {
            let s = fmt_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn json_uses_fixed_float_rendering() {
        let s = to_json_string(&vec![1.0f64, 0.5]).unwrap();
        assert_eq!(s, "[\n  1.0000000000000000e0,\n  5.0000000000000000e-1\n]\n");
        assert_eq!(to_json_string(&None::<f64>).unwrap(), "null\n");
    }

    #[test]
    fn json_output_is_reproducible() {
        let curve = CriterionCurve {
            form: CurveForm::Phi,
            samples: vec![[1.0, -0.3], [2.0, -0.7]],
            r_start: 1.0,
        };
        let a = to_json_string(&curve).unwrap();
        let b = to_json_string(&curve).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"form\": \"phi\""));
        assert!(a.contains("-2.9999999999999999e-1"));
    }

    #[test]
    fn atomic_write_leaves_no_temp_file() {
        let dir = std::env::temp_dir().join(format!("report-test-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("payload.json");
        write_atomic(&path, "{\"ok\": true}\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "{\"ok\": true}\n");
        assert!(!dir.join("payload.json.tmp").exists());
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn csv_headers_and_shapes() {
        let curve = CriterionCurve {
            form: CurveForm::Mult,
            samples: vec![[1.0, 0.0]],
            r_start: 1.0,
        };
        let c = curve_csv(&curve);
        assert!(c.starts_with("r,log_q\n"));
        assert_eq!(c.lines().count(), 2);

        let rows = [DegreeRow {
            alpha: 1.0,
            p: 2.0,
            degree: 3,
            rule_verdict: Verdict::Unbounded,
            sampled_verdict: Verdict::Unbounded,
        }];
        let t = degree_table_csv(&rows);
        assert!(t.starts_with("alpha,p,degree,rule,sampled,agree\n"));
        assert!(t.contains(",3,unbounded,unbounded,true"));

        let lp = [LpRow {
            label: "poly_000".into(),
            degree: 4,
            ratios: NormEquivalence {
                deriv_over_value: 0.5,
                value_over_seminorm: 2.0,
            },
        }];
        let l = lp_csv(&lp);
        assert!(l.starts_with("label,degree,deriv_over_value,value_over_seminorm\n"));
        assert!(l.lines().last().unwrap().starts_with("envelope,,"));
        assert_eq!(lp_envelope(&lp), 2.0);
    }

    #[test]
    fn float_rendering_in_csv_matches_json() {
        let rows = [[1.5, -0.25, -0.125, 0.125]];
        let s = sandwich_csv(&rows);
        assert!(s.contains("1.5000000000000000e0,-2.5000000000000000e-1"));
    }
}
