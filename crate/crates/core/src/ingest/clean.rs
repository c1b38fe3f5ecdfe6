//! Exclusion rules. Exclusion is the contract, not an error: every raw row
//! either becomes a `Trip` or increments exactly one report category.

use crate::config::PipelineConfig;
use crate::ingest::load::RawTripRow;
use crate::ingest::{CleaningReport, Trip};

pub const CAT_MISSING_PURPOSE: &str = "missing_purpose";
pub const CAT_MISSING_MODE: &str = "missing_mode";
pub const CAT_SPATIAL: &str = "zero_or_missing_spatial";
pub const CAT_NEGATIVE_DURATION: &str = "negative_duration";
pub const CAT_ZERO_DURATION: &str = "zero_duration";

/// Apply the exclusion rules in order: invalid purpose, blank mode, missing
/// or zero distance, negative duration. Zero duration is excluded under its
/// own category so retained trips always support speed computation.
pub fn clean_trips(
    rows: &[RawTripRow],
    config: &PipelineConfig,
) -> (Vec<Trip>, CleaningReport) {
    let mut report = CleaningReport {
        input_trip_rows: rows.len(),
        ..CleaningReport::default()
    };
    for cat in [
        CAT_MISSING_PURPOSE,
        CAT_MISSING_MODE,
        CAT_SPATIAL,
        CAT_NEGATIVE_DURATION,
        CAT_ZERO_DURATION,
    ] {
        report.excluded.insert(cat.to_string(), 0);
    }

    let mut trips = Vec::with_capacity(rows.len());
    for row in rows {
        match classify(row, config) {
            Ok(trip) => trips.push(trip),
            Err(cat) => *report.excluded.get_mut(cat).unwrap() += 1,
        }
    }
    report.retained_trips = trips.len();
    (trips, report)
}

fn classify(row: &RawTripRow, config: &PipelineConfig) -> Result<Trip, &'static str> {
    let origin = config.purposes.resolve(&row.origin_purpose);
    let dest = config.purposes.resolve(&row.dest_purpose);
    let (origin, dest) = match (origin, dest) {
        (Some(o), Some(d)) => (o, d),
        _ => return Err(CAT_MISSING_PURPOSE),
    };

    let mut modes: Vec<usize> = row
        .modes
        .iter()
        .filter_map(|m| config.modes.resolve(m))
        .collect();
    modes.sort_unstable();
    modes.dedup();
    if modes.is_empty() {
        return Err(CAT_MISSING_MODE);
    }

    let distance = match row.distance_km {
        Some(d) if d.is_finite() && d > 0.0 => d,
        _ => return Err(CAT_SPATIAL),
    };

    if row.duration_min < 0.0 {
        return Err(CAT_NEGATIVE_DURATION);
    }
    if row.duration_min == 0.0 || !row.duration_min.is_finite() {
        return Err(CAT_ZERO_DURATION);
    }

    Ok(Trip {
        person_id: row.person_id.clone(),
        household_id: row.household_id.clone(),
        wave: row.wave.clone(),
        day: row.day,
        origin_purpose: origin,
        dest_purpose: dest,
        modes,
        depart_min: row.depart_min,
        arrive_min: row.arrive_min,
        duration_min: row.duration_min,
        distance_km: distance,
        n_hh_companions: row.n_hh_companions,
        n_nonhh_companions: row.n_nonhh_companions,
    })
}
