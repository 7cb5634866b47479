//! CSV tables: aggregated sweep records, raw realizations and summary curves.
//!
//! Reals are written with Rust's shortest round-trip formatting, so reading a
//! file back reproduces every value bit for bit. Lines end with `\n`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiment::{Curve, RealizationRecord, SummaryCurves, SweepRecord};

pub const SWEEP_HEADER: &str = "chi_r,chi_i,n_ok,mc_mean,mc_std,neff_mean,neff_std";
pub const RAW_HEADER: &str = "chi_r,chi_i,realization,mc,neff,error";
pub const SUMMARY_HEADER: &str = "metric,curve,x,value,normalized";

pub fn format_csv(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.chi_r, r.chi_i, r.n_ok, r.mc_mean, r.mc_std, r.neff_mean, r.neff_std
        );
    }
    out
}

pub fn write_csv(records: &[SweepRecord], path: &Path) -> Result<()> {
    write_file(path, &format_csv(records))
}

pub fn parse_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim_end() == SWEEP_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                reason: format!("expected header {SWEEP_HEADER:?}"),
            })
        }
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(idx, line)| {
            let line_no = idx + 1;
            let fields: Vec<&str> = line.trim_end().split(',').collect();
            if fields.len() != 7 {
                return Err(Error::Parse {
                    line: line_no,
                    reason: format!("expected 7 fields, found {}", fields.len()),
                });
            }
            let int = |i: usize| {
                fields[i].parse::<usize>().map_err(|e| Error::Parse {
                    line: line_no,
                    reason: format!("field {i} ({:?}): {e}", fields[i]),
                })
            };
            let real = |i: usize| {
                fields[i].parse::<f64>().map_err(|e| Error::Parse {
                    line: line_no,
                    reason: format!("field {i} ({:?}): {e}", fields[i]),
                })
            };
            Ok(SweepRecord {
                chi_r: int(0)?,
                chi_i: int(1)?,
                n_ok: int(2)?,
                mc_mean: real(3)?,
                mc_std: real(4)?,
                neff_mean: real(5)?,
                neff_std: real(6)?,
            })
        })
        .collect()
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRecord>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text)
}

pub fn format_raw(rows: &[RealizationRecord]) -> String {
    let mut out = String::from(RAW_HEADER);
    out.push('\n');
    for r in rows {
        let error = r.error.as_deref().unwrap_or("").replace([',', '\n'], ";");
        let _ = writeln!(out, "{},{},{},{},{},{}", r.chi_r, r.chi_i, r.realization, r.mc, r.neff, error);
    }
    out
}

pub fn write_raw(rows: &[RealizationRecord], path: &Path) -> Result<()> {
    write_file(path, &format_raw(rows))
}

pub fn format_summary(summaries: &[SummaryCurves]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for s in summaries {
        let curves: [(&str, &Curve); 3] = [
            ("best_by_chi_i", &s.best_by_chi_i),
            ("best_by_chi_r", &s.best_by_chi_r),
            ("slice_chi_i_1", &s.slice_chi_i_1),
        ];
        for (name, curve) in curves {
            for (&(x, v), &(_, norm)) in curve.points.iter().zip(&curve.normalized) {
                let _ = writeln!(out, "{},{name},{x},{v},{norm}", s.metric);
            }
        }
    }
    out
}

pub fn write_summary(summaries: &[SummaryCurves], path: &Path) -> Result<()> {
    write_file(path, &format_summary(summaries))
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}
