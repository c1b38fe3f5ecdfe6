//! CSV table loading. Every input row either parses into a raw row or lands
//! in the rejects log with its line number and a reason; a missing required
//! column is fatal.

use std::path::Path;

use chrono::NaiveDate;
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::ingest::labels;
use crate::ingest::PersonLabels;

pub const TRIP_COLUMNS: [&str; 13] = [
    "person_id",
    "household_id",
    "wave",
    "day",
    "origin_purpose",
    "dest_purpose",
    "modes",
    "depart_hhmm",
    "arrive_hhmm",
    "duration_min",
    "distance_km",
    "n_hh_companions",
    "n_nonhh_companions",
];

pub const PERSON_COLUMNS: [&str; 7] = [
    "person_id",
    "household_id",
    "wave",
    "age_years",
    "gender",
    "income",
    "n_children",
];

/// A type-checked trips row. Purpose and mode strings stay raw here; the
/// vocabulary check is a cleaning rule, not a parse error.
#[derive(Debug, Clone)]
pub struct RawTripRow {
    pub line: u64,
    pub person_id: String,
    pub household_id: String,
    pub wave: String,
    pub day: NaiveDate,
    pub origin_purpose: String,
    pub dest_purpose: String,
    pub modes: Vec<String>,
    pub depart_min: u16,
    pub arrive_min: u16,
    pub duration_min: f64,
    /// Empty field parses to None (treated as un-geocodable downstream).
    pub distance_km: Option<f64>,
    pub n_hh_companions: u32,
    pub n_nonhh_companions: u32,
}

#[derive(Debug, Clone)]
pub struct RawPersonRow {
    pub line: u64,
    pub person_id: String,
    pub household_id: String,
    pub wave: String,
    pub labels: PersonLabels,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reject {
    pub line: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct LoadReport {
    pub rows: usize,
    pub rejects: Vec<Reject>,
    pub warnings: Vec<String>,
}

struct ColumnMap {
    indices: Vec<usize>,
}

fn map_columns(
    headers: &csv::StringRecord,
    required: &[&str],
    path: &str,
    warnings: &mut Vec<String>,
) -> Result<ColumnMap> {
    let mut indices = Vec::with_capacity(required.len());
    for col in required {
        match headers.iter().position(|h| h.trim() == *col) {
            Some(i) => indices.push(i),
            None => {
                return Err(CoreError::MissingColumn {
                    column: (*col).to_string(),
                    path: path.to_string(),
                })
            }
        }
    }
    for h in headers.iter() {
        if !required.contains(&h.trim()) {
            warnings.push(format!("ignoring unknown column '{}' in {path}", h.trim()));
        }
    }
    Ok(ColumnMap { indices })
}

impl ColumnMap {
    fn get<'r>(&self, record: &'r csv::StringRecord, idx: usize) -> &'r str {
        record.get(self.indices[idx]).unwrap_or("").trim()
    }
}

/// Parse "HH:MM" or "HHMM"/"HMM" into minutes since midnight.
fn parse_hhmm(raw: &str) -> Option<u16> {
    let (h, m) = if let Some((h, m)) = raw.split_once(':') {
        (h.parse::<u16>().ok()?, m.parse::<u16>().ok()?)
    } else {
        let digits = raw.trim();
        if digits.len() < 3 || digits.len() > 4 || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let v = digits.parse::<u16>().ok()?;
        (v / 100, v % 100)
    };
    if h < 24 && m < 60 {
        Some(h * 60 + m)
    } else {
        None
    }
}

fn parse_date(raw: &str) -> Option<NaiveDate> {
    NaiveDate::parse_from_str(raw, "%Y-%m-%d").ok()
}

/// Numbers may carry currency formatting ("$62,000").
fn parse_money(raw: &str) -> Option<f64> {
    let cleaned: String = raw.chars().filter(|c| *c != '$' && *c != ',').collect();
    cleaned.trim().parse::<f64>().ok()
}

pub fn load_trips(path: &Path) -> Result<(Vec<RawTripRow>, LoadReport)> {
    let path_str = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(true)
        .from_path(path)
        .map_err(|e| CoreError::Csv { path: path_str.clone(), source: e })?;

    let mut report = LoadReport::default();
    let headers = reader
        .headers()
        .map_err(|e| CoreError::Csv { path: path_str.clone(), source: e })?
        .clone();
    let cols = map_columns(&headers, &TRIP_COLUMNS, &path_str, &mut report.warnings)?;

    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = (i + 2) as u64; // 1-based, after the header
        report.rows += 1;
        let record = match record {
            Ok(r) => r,
            Err(_) => {
                report.rejects.push(Reject { line, reason: "malformed_row".into() });
                continue;
            }
        };
        match parse_trip_record(&cols, &record, line) {
            Ok(row) => rows.push(row),
            Err(reason) => report.rejects.push(Reject { line, reason }),
        }
    }
    Ok((rows, report))
}

fn parse_trip_record(
    cols: &ColumnMap,
    record: &csv::StringRecord,
    line: u64,
) -> std::result::Result<RawTripRow, String> {
    let person_id = cols.get(record, 0).to_string();
    if person_id.is_empty() {
        return Err("missing_person_id".into());
    }
    let household_id = cols.get(record, 1).to_string();
    if household_id.is_empty() {
        return Err("missing_household_id".into());
    }
    let wave = cols.get(record, 2).to_string();
    if wave.is_empty() {
        return Err("missing_wave".into());
    }
    let day = parse_date(cols.get(record, 3)).ok_or("bad_date")?;
    let origin_purpose = cols.get(record, 4).to_string();
    let dest_purpose = cols.get(record, 5).to_string();
    let modes: Vec<String> = cols
        .get(record, 6)
        .split('|')
        .map(|m| m.trim().to_string())
        .filter(|m| !m.is_empty())
        .collect();
    let depart_min = parse_hhmm(cols.get(record, 7)).ok_or("bad_depart")?;
    let arrive_min = parse_hhmm(cols.get(record, 8)).ok_or("bad_arrive")?;
    let duration_min = cols
        .get(record, 9)
        .parse::<f64>()
        .map_err(|_| "bad_duration")?;
    let distance_raw = cols.get(record, 10);
    let distance_km = if distance_raw.is_empty() || distance_raw.eq_ignore_ascii_case("nan") {
        None
    } else {
        Some(distance_raw.parse::<f64>().map_err(|_| "bad_distance")?)
    };
    let n_hh_companions = cols
        .get(record, 11)
        .parse::<u32>()
        .map_err(|_| "bad_companions")?;
    let n_nonhh_companions = cols
        .get(record, 12)
        .parse::<u32>()
        .map_err(|_| "bad_companions")?;

    Ok(RawTripRow {
        line,
        person_id,
        household_id,
        wave,
        day,
        origin_purpose,
        dest_purpose,
        modes,
        depart_min,
        arrive_min,
        duration_min,
        distance_km,
        n_hh_companions,
        n_nonhh_companions,
    })
}

pub fn load_persons(path: &Path) -> Result<(Vec<RawPersonRow>, LoadReport)> {
    let path_str = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(true)
        .from_path(path)
        .map_err(|e| CoreError::Csv { path: path_str.clone(), source: e })?;

    let mut report = LoadReport::default();
    let headers = reader
        .headers()
        .map_err(|e| CoreError::Csv { path: path_str.clone(), source: e })?
        .clone();
    let cols = map_columns(&headers, &PERSON_COLUMNS, &path_str, &mut report.warnings)?;

    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = (i + 2) as u64;
        report.rows += 1;
        let record = match record {
            Ok(r) => r,
            Err(_) => {
                report.rejects.push(Reject { line, reason: "malformed_row".into() });
                continue;
            }
        };
        match parse_person_record(&cols, &record, line) {
            Ok(row) => rows.push(row),
            Err(reason) => report.rejects.push(Reject { line, reason }),
        }
    }
    Ok((rows, report))
}

fn parse_person_record(
    cols: &ColumnMap,
    record: &csv::StringRecord,
    line: u64,
) -> std::result::Result<RawPersonRow, String> {
    let person_id = cols.get(record, 0).to_string();
    if person_id.is_empty() {
        return Err("missing_person_id".into());
    }
    let household_id = cols.get(record, 1).to_string();
    if household_id.is_empty() {
        return Err("missing_household_id".into());
    }
    let wave = cols.get(record, 2).to_string();
    if wave.is_empty() {
        return Err("missing_wave".into());
    }

    let age_raw = cols.get(record, 3);
    let age_years = if age_raw.is_empty() {
        None
    } else {
        Some(age_raw.parse::<f64>().map_err(|_| "bad_age")?)
    };
    if let Some(a) = age_years {
        if a < 0.0 {
            return Err("negative_age".into());
        }
    }

    let children_raw = cols.get(record, 6);
    let n_children = if children_raw.is_empty() {
        None
    } else {
        Some(children_raw.parse::<u32>().map_err(|_| "bad_children")?)
    };

    let income_raw = cols.get(record, 5);
    let income_dollars = if income_raw.is_empty() {
        None
    } else {
        parse_money(income_raw)
    };

    let labels = PersonLabels {
        age: age_years.map(labels::bin_age),
        gender: labels::bin_gender(cols.get(record, 4)),
        income: labels::bin_income(income_raw, income_dollars),
        children: n_children.map(labels::bin_children),
    };

    Ok(RawPersonRow { line, person_id, household_id, wave, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    const TRIP_HEADER: &str = "person_id,household_id,wave,day,origin_purpose,dest_purpose,modes,depart_hhmm,arrive_hhmm,duration_min,distance_km,n_hh_companions,n_nonhh_companions";

    #[test]
    fn well_formed_rows_all_parse() {
        let body = format!(
            "{TRIP_HEADER}\n\
             p1,h1,2017,2017-04-11,home,work,drive,08:00,08:30,30,12.5,0,0\n\
             p1,h1,2017,2017-04-11,work,home,drive|walk,17:10,17:55,45,12.5,1,0\n\
             p2,h2,2019,2019-03-12,home,shopping,walk,1005,1020,15,0.9,0,2\n"
        );
        let f = write_tmp(&body);
        let (rows, report) = load_trips(f.path()).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(report.rejects.is_empty());
        assert_eq!(rows[0].depart_min, 480);
        assert_eq!(rows[2].depart_min, 605);
        assert_eq!(rows[1].modes, vec!["drive".to_string(), "walk".to_string()]);
    }

    #[test]
    fn non_numeric_distance_rejects_row() {
        let body = format!(
            "{TRIP_HEADER}\n\
             p1,h1,2017,2017-04-11,home,work,drive,08:00,08:30,30,twelve,0,0\n"
        );
        let f = write_tmp(&body);
        let (rows, report) = load_trips(f.path()).unwrap();
        assert!(rows.is_empty());
        assert_eq!(report.rejects.len(), 1);
        assert_eq!(report.rejects[0].reason, "bad_distance");
        assert_eq!(report.rejects[0].line, 2);
    }

    #[test]
    fn extra_columns_ignored_with_warning() {
        let body = format!(
            "{TRIP_HEADER},weather\n\
             p1,h1,2017,2017-04-11,home,work,drive,08:00,08:30,30,12.5,0,0,rain\n"
        );
        let f = write_tmp(&body);
        let (rows, report) = load_trips(f.path()).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(report.rejects.is_empty());
        assert!(report.warnings.iter().any(|w| w.contains("weather")));
    }

    #[test]
    fn missing_required_column_is_fatal() {
        let body = "person_id,household_id,wave\np1,h1,2017\n";
        let f = write_tmp(body);
        let err = load_trips(f.path()).unwrap_err();
        assert!(matches!(err, CoreError::MissingColumn { .. }));
    }

    #[test]
    fn person_rows_parse_and_negative_age_rejects() {
        let body = "person_id,household_id,wave,age_years,gender,income,n_children\n\
                    p1,h1,2017,34,female,62000,2\n\
                    p2,h1,2017,-3,male,,0\n\
                    p3,h2,2019,70,,100k_plus,\n";
        let f = write_tmp(body);
        let (rows, report) = load_persons(f.path()).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(report.rejects.len(), 1);
        assert_eq!(report.rejects[0].reason, "negative_age");
        assert_eq!(rows[0].labels.age, Some(2));
        assert_eq!(rows[0].labels.income, Some(2));
        assert_eq!(rows[0].labels.children, Some(2));
        assert_eq!(rows[1].labels.gender, None);
        assert_eq!(rows[1].labels.income, Some(4));
        assert_eq!(rows[1].labels.children, None);
    }

    #[test]
    fn hhmm_forms() {
        assert_eq!(parse_hhmm("08:00"), Some(480));
        assert_eq!(parse_hhmm("0800"), Some(480));
        assert_eq!(parse_hhmm("800"), Some(480));
        assert_eq!(parse_hhmm("23:59"), Some(1439));
        assert_eq!(parse_hhmm("24:00"), None);
        assert_eq!(parse_hhmm("8:61"), None);
        assert_eq!(parse_hhmm(""), None);
    }
}
