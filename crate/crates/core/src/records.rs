//! Zero records on disk: CSV and JSON-lines with the columns
//! `t, re_s, xi, z_modulus, q_re, q_im, N, nu, iterations`.
//!
//! Floats are written with 17 significant digits so every f64 survives a
//! write/read cycle bit for bit.

use serde::{Deserialize, Serialize};

use crate::error::{Result, ZetaError};
use crate::point::{ComplexPoint, Cplx, Real};
use crate::zero_scan::ZeroRecord;
use crate::zeta_core::EvalParams;

pub const CSV_HEADER: &str = "t,re_s,xi,z_modulus,q_re,q_im,N,nu,iterations";

/// Decimal with 17 significant digits, e.g. `1.4134725141734695e1`.
pub fn format_f64(x: Real) -> String {
    format!("{x:.16e}")
}

/// serde helpers that emit floats through [`format_f64`].
pub mod sig17 {
    use serde::Serializer;
    use serde_json::value::RawValue;

    use super::format_f64;

    pub fn serialize<S: Serializer>(x: &f64, ser: S) -> Result<S::Ok, S::Error> {
        if !x.is_finite() {
            return Err(serde::ser::Error::custom("non-finite float"));
        }
        let raw = RawValue::from_string(format_f64(*x)).map_err(serde::ser::Error::custom)?;
        serde::Serialize::serialize(&raw, ser)
    }

    pub fn serialize_vec<S: Serializer>(xs: &[f64], ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&Wrap(*x))?;
        }
        seq.end()
    }

    pub struct Wrap(pub f64);

    impl serde::Serialize for Wrap {
        fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
            serialize(&self.0, ser)
        }
    }
}

/// Flat on-disk form of a [`ZeroRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroRow {
    #[serde(serialize_with = "sig17::serialize")]
    pub t: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub re_s: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub xi: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub z_modulus: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub q_re: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub q_im: Real,
    #[serde(rename = "N")]
    pub n: usize,
    pub nu: usize,
    pub iterations: usize,
}

impl From<&ZeroRecord> for ZeroRow {
    fn from(r: &ZeroRecord) -> Self {
        Self {
            t: r.t,
            re_s: r.s.re,
            xi: r.xi,
            z_modulus: r.z_modulus,
            q_re: r.q_value.re,
            q_im: r.q_value.im,
            n: r.params_used.cutoff_n,
            nu: r.params_used.tail_order_nu,
            iterations: r.refine_iterations,
        }
    }
}

impl TryFrom<ZeroRow> for ZeroRecord {
    type Error = ZetaError;

    fn try_from(row: ZeroRow) -> Result<Self> {
        let s = ComplexPoint::new(row.re_s, row.t).map_err(|e| ZetaError::Format(e.to_string()))?;
        if (row.xi - s.xi()).abs() > 1e-12 {
            return Err(ZetaError::Format(format!("xi {} disagrees with re_s {}", row.xi, row.re_s)));
        }
        let rec = ZeroRecord {
            t: row.t,
            s,
            xi: row.xi,
            z_modulus: row.z_modulus,
            q_value: Cplx::new(row.q_re, row.q_im),
            refine_iterations: row.iterations,
            params_used: EvalParams { cutoff_n: row.n, tail_order_nu: row.nu, target_eps: None },
        };
        rec.check_invariants().map_err(|e| ZetaError::Format(e.to_string()))?;
        Ok(rec)
    }
}

impl ZeroRow {
    pub fn to_csv_line(&self) -> String {
        [
            format_f64(self.t),
            format_f64(self.re_s),
            format_f64(self.xi),
            format_f64(self.z_modulus),
            format_f64(self.q_re),
            format_f64(self.q_im),
            self.n.to_string(),
            self.nu.to_string(),
            self.iterations.to_string(),
        ]
        .join(",")
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("rows hold only finite floats")
    }
}

/// Header plus one row per record, LF line endings.
pub fn write_csv(records: &[ZeroRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&ZeroRow::from(r).to_csv_line());
        out.push('\n');
    }
    out
}

pub fn write_jsonl(records: &[ZeroRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&ZeroRow::from(r).to_json_line());
        out.push('\n');
    }
    out
}

fn parse_float(field: &str, name: &str, line: usize) -> Result<Real> {
    let v: Real = field
        .trim()
        .parse()
        .map_err(|_| ZetaError::Format(format!("line {line}: bad {name} {field:?}")))?;
    if !v.is_finite() {
        return Err(ZetaError::Format(format!("line {line}: non-finite {name}")));
    }
    Ok(v)
}

fn parse_count(field: &str, name: &str, line: usize) -> Result<usize> {
    field
        .trim()
        .parse()
        .map_err(|_| ZetaError::Format(format!("line {line}: bad {name} {field:?}")))
}

/// Reads the CSV written by [`write_csv`]. A trailing CR on each line is accepted.
pub fn parse_csv(text: &str) -> Result<Vec<ZeroRecord>> {
    let mut lines = text.lines().map(|l| l.strip_suffix('\r').unwrap_or(l));
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        Some(h) => return Err(ZetaError::Format(format!("unexpected header {h:?}"))),
        None => return Err(ZetaError::Format("empty input".into())),
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 9 {
            return Err(ZetaError::Format(format!("line {lineno}: expected 9 fields, got {}", f.len())));
        }
        let row = ZeroRow {
            t: parse_float(f[0], "t", lineno)?,
            re_s: parse_float(f[1], "re_s", lineno)?,
            xi: parse_float(f[2], "xi", lineno)?,
            z_modulus: parse_float(f[3], "z_modulus", lineno)?,
            q_re: parse_float(f[4], "q_re", lineno)?,
            q_im: parse_float(f[5], "q_im", lineno)?,
            n: parse_count(f[6], "N", lineno)?,
            nu: parse_count(f[7], "nu", lineno)?,
            iterations: parse_count(f[8], "iterations", lineno)?,
        };
        out.push(ZeroRecord::try_from(row)?);
    }
    Ok(out)
}

/// Reads JSON-lines; blank lines are skipped.
pub fn parse_jsonl(text: &str) -> Result<Vec<ZeroRecord>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: ZeroRow = serde_json::from_str(line)
            .map_err(|e| ZetaError::Format(format!("line {}: {e}", i + 1)))?;
        out.push(ZeroRecord::try_from(row)?);
    }
    Ok(out)
}
