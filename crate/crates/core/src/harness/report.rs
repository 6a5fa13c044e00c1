use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::evaluation::EvalParams;
use crate::grouping::{partition, Criterion};

use super::{HarnessError, TopResult};

pub const REPORT_CSV_HEADER: &str = "m,groups,index,weight,number,duration";

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub m: usize,
    /// Grouping signature, e.g. `2x23; 2x22`.
    pub signature: String,
    /// Best evaluation per criterion. A restricted sweep leaves some out.
    pub values: BTreeMap<Criterion, f64>,
}

/// Best evaluation for every (m, criterion) cell of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub instance_name: String,
    pub n: usize,
    pub rows: Vec<ReportRow>,
    /// Evaluation parameters the values were produced with; unknown for
    /// reports read back from CSV.
    pub params: Option<EvalParams>,
}

impl SweepReport {
    pub fn m_values(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.m).collect()
    }

    /// Every populated cell, in row order then criterion order.
    pub fn cells(&self) -> impl Iterator<Item = TopResult> + '_ {
        self.rows.iter().flat_map(|row| {
            row.values.iter().map(move |(&criterion, &value)| TopResult { criterion, m: row.m, value })
        })
    }

    /// Checks every row's signature against the partition of `n` into `m`.
    pub fn check_signatures(&self) -> Result<(), HarnessError> {
        for row in &self.rows {
            let expected = partition(self.n, row.m)?.signature();
            if expected != row.signature {
                return Err(HarnessError::SignatureMismatch {
                    n: self.n,
                    m: row.m,
                    expected,
                    found: row.signature.clone(),
                });
            }
        }
        Ok(())
    }
}

/// Paper-style results table: one row per m, values to three decimals,
/// groups column quoted, blank cells for criteria the sweep skipped.
pub fn emit_report_csv(r: &SweepReport) -> String {
    let mut out = String::new();
    out.push_str(REPORT_CSV_HEADER);
    out.push('\n');
    for row in &r.rows {
        write!(out, "{},\"{}\"", row.m, row.signature).unwrap();
        for c in Criterion::ALL {
            match row.values.get(&c) {
                Some(v) => write!(out, ",{v:.3}").unwrap(),
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

/// Sum of `countxsize` terms, e.g. `12x7; 1x6` → 90.
fn events_in_signature(sig: &str) -> Option<usize> {
    sig.split(';')
        .map(|part| {
            let (count, size) = part.trim().split_once('x')?;
            Some(count.trim().parse::<usize>().ok()? * size.trim().parse::<usize>().ok()?)
        })
        .sum()
}

/// Accepts both `9.758` and the decimal-comma form `33,037`.
fn parse_value(field: &str) -> Option<f64> {
    let field = field.trim();
    let normalized = if field.contains(',') && !field.contains('.') {
        field.replace(',', ".")
    } else {
        field.to_string()
    };
    normalized.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Reads a report CSV (ours or a transcribed results table). `n` is
/// recovered from the groups column, and every row must agree with it.
pub fn parse_report_csv(text: &str, instance_name: &str) -> Result<SweepReport, HarnessError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(|h| h.to_ascii_lowercase()).collect();
    if header.join(",") != REPORT_CSV_HEADER {
        return Err(HarnessError::Report {
            line: 1,
            message: format!("expected header {REPORT_CSV_HEADER:?}, found {:?}", header.join(",")),
        });
    }

    let mut rows = Vec::new();
    let mut n: Option<usize> = None;
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let bad = |message: String| HarnessError::Report { line, message };
        if record.len() != 6 {
            return Err(bad(format!("expected 6 fields, found {}", record.len())));
        }
        let m = record[0].parse::<usize>().map_err(|_| bad(format!("bad m {:?}", &record[0])))?;
        let signature = record[1].to_string();
        let row_n = events_in_signature(&signature).ok_or_else(|| bad(format!("bad groups {signature:?}")))?;
        match n {
            None => n = Some(row_n),
            Some(n) if n != row_n => {
                return Err(bad(format!("groups {signature:?} cover {row_n} events, earlier rows cover {n}")))
            }
            Some(_) => {}
        }
        let mut values = BTreeMap::new();
        for (c, field) in Criterion::ALL.into_iter().zip(record.iter().skip(2)) {
            if field.is_empty() {
                continue;
            }
            let v = parse_value(field).ok_or_else(|| bad(format!("bad {c} value {field:?}")))?;
            values.insert(c, v);
        }
        rows.push(ReportRow { m, signature, values });
    }

    let n = n.ok_or(HarnessError::EmptyReport)?;
    let report = SweepReport { instance_name: instance_name.to_string(), n, rows, params: None };
    report.check_signatures()?;
    Ok(report)
}

/// Plot-ready `m,value` series for one criterion, ordered by m.
pub fn emit_plot_series(r: &SweepReport, c: Criterion) -> Result<String, HarnessError> {
    let mut rows: Vec<(usize, f64)> = Vec::with_capacity(r.rows.len());
    for row in &r.rows {
        let v = row.values.get(&c).ok_or(HarnessError::MissingCriterion(c))?;
        rows.push((row.m, *v));
    }
    rows.sort_by_key(|&(m, _)| m);
    let mut out = String::from("m,value\n");
    for (m, v) in rows {
        writeln!(out, "{m},{v:.3}").unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_row() -> SweepReport {
        SweepReport {
            instance_name: "x".into(),
            n: 90,
            rows: vec![ReportRow {
                m: 3,
                signature: "3x30".into(),
                values: Criterion::ALL.into_iter().zip([9.312, 6.53, 7.453, 8.002]).collect(),
            }],
            params: None,
        }
    }

    #[test]
    fn one_row_is_two_lines() {
        let csv = emit_report_csv(&one_row());
        assert_eq!(csv, "m,groups,index,weight,number,duration\n3,\"3x30\",9.312,6.530,7.453,8.002\n");
        assert_eq!(parse_report_csv(&csv, "x").unwrap(), one_row());
    }

    #[test]
    fn decimal_commas_and_blanks() {
        let text = "m,groups,index,weight,number,duration\n41,\"27x7; 14x6\",\"33,037\",\"23,989\",,24.988\n";
        let r = parse_report_csv(text, "t").unwrap();
        assert_eq!(r.n, 273);
        assert_eq!(r.rows[0].values[&Criterion::Index], 33.037);
        assert!(!r.rows[0].values.contains_key(&Criterion::Number));
        assert!(emit_plot_series(&r, Criterion::Number).is_err());
        assert_eq!(emit_plot_series(&r, Criterion::Duration).unwrap(), "m,value\n41,24.988\n");
    }

    #[test]
    fn rejects_inconsistent_reports() {
        let typo = "m,groups,index,weight,number,duration\n45,\"3x7; 42x6\",1,1,1,1\n46,\"43x6; 2x5\",1,1,1,1\n";
        assert!(matches!(parse_report_csv(typo, "t"), Err(HarnessError::Report { .. })));
        let wrong = "m,groups,index,weight,number,duration\n4,\"3x30\",1,1,1,1\n";
        assert!(matches!(parse_report_csv(wrong, "t"), Err(HarnessError::SignatureMismatch { .. })));
        let words = "m,groups,index,weight,number,duration\n46,\"43x6; 3x5\",greater than,1,1,1\n";
        assert!(matches!(parse_report_csv(words, "t"), Err(HarnessError::Report { .. })));
        assert!(matches!(parse_report_csv("m,groups\n", "t"), Err(HarnessError::Report { line: 1, .. })));
        assert!(matches!(parse_report_csv(REPORT_CSV_HEADER, "t"), Err(HarnessError::EmptyReport)));
    }
}
