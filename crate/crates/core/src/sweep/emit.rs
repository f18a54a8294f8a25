//! CSV and JSON writers for sweep rows.

use std::io::{self, Write};

use serde::Serialize;

use super::config::OutputFormat;
use super::run::SweepRow;

pub const CSV_HEADER: &str = "w,beta,pol,R2,T2,A,S_X,Q,N,flag";

/// 17 significant digits, enough to round-trip every `f64`.
fn number(x: f64) -> String {
    format!("{x:.16e}")
}

fn optional(x: Option<f64>) -> String {
    x.map(number).unwrap_or_default()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: &mut W) -> io::Result<()> {
    out.write_all(CSV_HEADER.as_bytes())?;
    out.write_all(b"\n")?;
    for row in rows {
        let c = row.coefficients;
        let o = row.observables;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            number(row.w),
            number(row.beta),
            row.pol,
            optional(c.map(|c| c.r2)),
            optional(c.map(|c| c.t2)),
            optional(c.map(|c| c.a)),
            optional(o.map(|o| o.s_x)),
            optional(o.map(|o| o.q)),
            optional(o.map(|o| o.n)),
            csv_field(row.flag.as_deref().unwrap_or("")),
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonRow<'a> {
    w: f64,
    beta: f64,
    pol: &'a str,
    #[serde(rename = "R2")]
    r2: Option<f64>,
    #[serde(rename = "T2")]
    t2: Option<f64>,
    #[serde(rename = "A")]
    a: Option<f64>,
    #[serde(rename = "S_X")]
    s_x: Option<f64>,
    #[serde(rename = "Q")]
    q: Option<f64>,
    #[serde(rename = "N")]
    n: Option<f64>,
    flag: Option<&'a str>,
}

pub fn write_json<W: Write>(rows: &[SweepRow], out: &mut W) -> io::Result<()> {
    let json: Vec<JsonRow<'_>> = rows
        .iter()
        .map(|row| JsonRow {
            w: row.w,
            beta: row.beta,
            pol: row.pol.as_str(),
            r2: row.coefficients.map(|c| c.r2),
            t2: row.coefficients.map(|c| c.t2),
            a: row.coefficients.map(|c| c.a),
            s_x: row.observables.map(|o| o.s_x),
            q: row.observables.map(|o| o.q),
            n: row.observables.map(|o| o.n),
            flag: row.flag.as_deref(),
        })
        .collect();
    serde_json::to_writer_pretty(&mut *out, &json)?;
    out.write_all(b"\n")
}

pub fn write_rows<W: Write>(
    rows: &[SweepRow],
    format: OutputFormat,
    out: &mut W,
) -> io::Result<()> {
    match format {
        OutputFormat::Csv => write_csv(rows, out),
        OutputFormat::Json => write_json(rows, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::Polarization;
    use crate::sweep::run::{RowCoefficients, RowObservables};

    fn rows() -> Vec<SweepRow> {
        vec![
            SweepRow {
                w: 1.0,
                beta: -0.5,
                pol: Polarization::X,
                coefficients: Some(RowCoefficients {
                    r2: 0.1,
                    t2: 0.7,
                    a: 0.2,
                }),
                observables: Some(RowObservables {
                    s_x: 0.05,
                    q: 0.0,
                    n: 0.25,
                }),
                flag: None,
            },
            SweepRow {
                w: 1.0,
                beta: 0.5,
                pol: Polarization::Y,
                coefficients: None,
                observables: None,
                flag: Some("bad, point".into()),
            },
        ]
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&rows(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.split('\n').collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(
            lines[1],
            "1.0000000000000000e0,-5.0000000000000000e-1,x,1.0000000000000001e-1,6.9999999999999996e-1,\
2.0000000000000001e-1,5.0000000000000003e-2,0.0000000000000000e0,2.5000000000000000e-1,"
        );
        assert_eq!(
            lines[2],
            "1.0000000000000000e0,5.0000000000000000e-1,y,,,,,,,\"bad, point\""
        );
        assert_eq!(lines[3], "");
        assert!(!text.contains('\r'));
        for line in &lines[1..3] {
            let w: f64 = line.split(',').next().unwrap().parse().unwrap();
            assert_eq!(w, 1.0);
        }
    }

    #[test]
    fn json_layout() {
        let mut buf = Vec::new();
        write_json(&rows(), &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        assert_eq!(arr[0]["R2"], 0.1);
        assert_eq!(arr[0]["pol"], "x");
        assert!(arr[0]["flag"].is_null());
        assert!(arr[1]["S_X"].is_null());
        assert_eq!(arr[1]["flag"], "bad, point");
    }
}
