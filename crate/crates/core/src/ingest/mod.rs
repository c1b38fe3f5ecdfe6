//! Trip-diary ingestion: CSV loading, exclusion rules, and label binning.

pub mod clean;
pub mod labels;
pub mod load;

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::config::CodeId;

/// One cleaned trip-diary row. Purposes and modes are canonical vocabulary
/// ids; times are minutes since local midnight.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Trip {
    pub person_id: String,
    pub household_id: String,
    pub wave: String,
    pub day: NaiveDate,
    pub origin_purpose: CodeId,
    pub dest_purpose: CodeId,
    /// Distinct mode ids used on the trip, ascending. Never empty.
    pub modes: Vec<CodeId>,
    pub depart_min: u16,
    pub arrive_min: u16,
    pub duration_min: f64,
    pub distance_km: f64,
    pub n_hh_companions: u32,
    pub n_nonhh_companions: u32,
}

impl Trip {
    /// Weekday index, 0 = Monday .. 6 = Sunday.
    pub fn weekday(&self) -> u8 {
        self.day.weekday().num_days_from_monday() as u8
    }

    pub fn is_weekend(&self) -> bool {
        self.weekday() >= 5
    }

    pub fn speed_kmh(&self) -> f64 {
        self.distance_km / (self.duration_min / 60.0)
    }
}

/// Per-task categorical labels; `None` marks a missing label.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersonLabels {
    pub age: Option<u8>,
    pub gender: Option<u8>,
    pub income: Option<u8>,
    pub children: Option<u8>,
}

/// A person's surviving trips plus ground-truth labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PersonRecord {
    pub person_id: String,
    pub household_id: String,
    pub wave: String,
    /// Sorted by (day, depart_min), stable on input order.
    pub trips: Vec<Trip>,
    pub labels: PersonLabels,
}

/// Counts every row that did not survive, by category. Nothing is dropped
/// silently: retained + parse rejects + exclusions + orphans = input rows.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CleaningReport {
    pub input_trip_rows: usize,
    pub retained_trips: usize,
    /// Exclusion category -> count (missing_purpose, missing_mode,
    /// zero_or_missing_spatial, negative_duration, zero_duration).
    pub excluded: std::collections::BTreeMap<String, usize>,
    /// Trips whose person_id has no row in the persons table.
    pub orphan_trips: usize,
    /// Persons whose trips were all excluded (dropped: they yield empty graphs).
    pub persons_dropped_no_trips: usize,
    pub persons_retained: usize,
    pub person_rows_rejected: usize,
}

impl CleaningReport {
    pub fn excluded_total(&self) -> usize {
        self.excluded.values().sum()
    }
}

/// Join cleaned trips onto person rows: trips sort by (day, depart), persons
/// with zero surviving trips are dropped and counted, orphan trips counted.
pub fn build_person_records(
    person_rows: &[load::RawPersonRow],
    trips: Vec<Trip>,
    report: &mut CleaningReport,
) -> Vec<PersonRecord> {
    use std::collections::{BTreeMap, BTreeSet};

    let known: BTreeSet<&str> = person_rows.iter().map(|p| p.person_id.as_str()).collect();

    let mut orphans = 0usize;
    let mut grouped: BTreeMap<String, Vec<Trip>> = BTreeMap::new();
    for trip in trips {
        if known.contains(trip.person_id.as_str()) {
            grouped.entry(trip.person_id.clone()).or_default().push(trip);
        } else {
            orphans += 1;
        }
    }

    let mut records = Vec::new();
    let mut dropped = 0usize;
    for row in person_rows {
        match grouped.remove(row.person_id.as_str()) {
            Some(mut trips) => {
                trips.sort_by(|a, b| (a.day, a.depart_min).cmp(&(b.day, b.depart_min)));
                records.push(PersonRecord {
                    person_id: row.person_id.clone(),
                    household_id: row.household_id.clone(),
                    wave: row.wave.clone(),
                    trips,
                    labels: row.labels,
                });
            }
            None => dropped += 1,
        }
    }
    report.orphan_trips = orphans;
    report.persons_dropped_no_trips = dropped;
    report.persons_retained = records.len();
    records
}
