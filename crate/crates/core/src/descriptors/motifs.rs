//! Daily travel motifs. Each day's trips collapse into a purpose walk
//! (consecutive duplicates merged); the walk is cut into segments at each
//! return to the day's first purpose, and every segment is classified into
//! one of six canonical patterns or a residual bucket.

use chrono::NaiveDate;

use crate::config::CodeId;
use crate::ingest::Trip;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Motif {
    SingleNoReturn,
    OutAndBack,
    Chain,
    SingleCycle,
    DoubleCycle,
    CycleChain,
}

pub const CANONICAL_MOTIFS: [Motif; 6] = [
    Motif::SingleNoReturn,
    Motif::OutAndBack,
    Motif::Chain,
    Motif::SingleCycle,
    Motif::DoubleCycle,
    Motif::CycleChain,
];

impl Motif {
    pub fn index(self) -> usize {
        CANONICAL_MOTIFS.iter().position(|m| *m == self).unwrap()
    }

    pub fn name(self) -> &'static str {
        match self {
            Motif::SingleNoReturn => "single_no_return",
            Motif::OutAndBack => "out_and_back",
            Motif::Chain => "chain",
            Motif::SingleCycle => "single_cycle",
            Motif::DoubleCycle => "double_cycle",
            Motif::CycleChain => "cycle_chain",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MotifClass {
    Canonical(Motif),
    Other,
}

/// Mode set and companion counts carried by one walk step. Steps inserted to
/// bridge a gap between non-chaining trips carry no trip payload.
#[derive(Debug, Clone, Default)]
pub struct StepInfo {
    pub modes: Vec<CodeId>,
    pub n_hh_companions: u32,
    pub n_nonhh_companions: u32,
    pub from_trip: bool,
}

/// One day's collapsed purpose walk. Consecutive nodes always differ and the
/// walk has at least one edge.
#[derive(Debug, Clone)]
pub struct DaySequence {
    pub day: NaiveDate,
    pub walk: Vec<CodeId>,
    /// One entry per walk edge.
    pub steps: Vec<StepInfo>,
}

/// Collapse one day's time-ordered trips into a purpose walk. Days whose
/// trips all start and end at the same purpose collapse to a single node and
/// yield no sequence.
pub fn collapse_day(day: NaiveDate, trips: &[&Trip]) -> Option<DaySequence> {
    let mut walk: Vec<CodeId> = Vec::new();
    let mut steps: Vec<StepInfo> = Vec::new();

    for trip in trips {
        if walk.is_empty() {
            walk.push(trip.origin_purpose);
        } else if *walk.last().unwrap() != trip.origin_purpose {
            // The diary jumped locations between trips; bridge the gap so the
            // walk stays connected.
            walk.push(trip.origin_purpose);
            steps.push(StepInfo::default());
        }
        if *walk.last().unwrap() != trip.dest_purpose {
            walk.push(trip.dest_purpose);
            steps.push(StepInfo {
                modes: trip.modes.clone(),
                n_hh_companions: trip.n_hh_companions,
                n_nonhh_companions: trip.n_nonhh_companions,
                from_trip: true,
            });
        }
    }

    if walk.len() < 2 {
        return None;
    }
    Some(DaySequence { day, walk, steps })
}

/// Cut a collapsed walk at every return to its first node. Adjacent segments
/// share the boundary node, so concatenating segments (dropping each
/// follow-on segment's first node) reconstructs the walk.
pub fn segment_walk(walk: &[CodeId]) -> Vec<Vec<CodeId>> {
    if walk.len() < 2 {
        return Vec::new();
    }
    let s0 = walk[0];
    let mut segments = Vec::new();
    let mut start = 0;
    for i in 1..walk.len() {
        if walk[i] == s0 {
            segments.push(walk[start..=i].to_vec());
            start = i;
        }
    }
    if start < walk.len() - 1 {
        segments.push(walk[start..].to_vec());
    }
    segments
}

/// Classify one segment. The decision table is total: anything that does not
/// fit a canonical shape lands in the residual bucket.
pub fn classify_segment(segment: &[CodeId]) -> MotifClass {
    let n = segment.len();
    if n < 2 {
        return MotifClass::Other;
    }
    let s0 = segment[0];
    let closed = n >= 3 && segment[n - 1] == s0;
    let interior = if closed { &segment[1..n - 1] } else { &segment[1..] };

    // A well-formed segment carries its first node only at the ends.
    if interior.contains(&s0) {
        return MotifClass::Other;
    }

    let edges = n - 1;
    if !closed && edges == 1 {
        return MotifClass::Canonical(Motif::SingleNoReturn);
    }

    let mut distinct: Vec<CodeId> = segment.to_vec();
    distinct.sort_unstable();
    distinct.dedup();

    if closed && distinct.len() == 2 {
        return MotifClass::Canonical(Motif::OutAndBack);
    }
    if !closed && distinct.len() == n {
        return MotifClass::Canonical(Motif::Chain);
    }

    // Count how often each interior node repeats.
    let mut repeated: Vec<(CodeId, usize)> = Vec::new();
    let mut sorted_interior: Vec<CodeId> = interior.to_vec();
    sorted_interior.sort_unstable();
    let mut i = 0;
    while i < sorted_interior.len() {
        let mut j = i;
        while j < sorted_interior.len() && sorted_interior[j] == sorted_interior[i] {
            j += 1;
        }
        if j - i > 1 {
            repeated.push((sorted_interior[i], j - i));
        }
        i = j;
    }

    if closed && repeated.is_empty() {
        return MotifClass::Canonical(Motif::SingleCycle);
    }

    if repeated.len() == 1 && repeated[0].1 == 2 {
        let pivot = repeated[0].0;
        if closed {
            // Prefix loop s0->..->p->..->s0 wrapped around a middle loop
            // p->..->p; the exactly-twice condition already keeps the three
            // sections node-disjoint.
            return MotifClass::Canonical(Motif::DoubleCycle);
        }
        if segment[n - 1] == pivot {
            // Pendant path from s0 ending in a loop through the pivot.
            return MotifClass::Canonical(Motif::CycleChain);
        }
    }

    MotifClass::Other
}

/// Motif counts for one person over all observed days. Residual segments are
/// tallied but excluded from the canonical total and fractions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MotifTally {
    pub counts: [u64; 6],
    pub other: u64,
}

impl MotifTally {
    pub fn add_walk(&mut self, walk: &[CodeId]) {
        for segment in segment_walk(walk) {
            match classify_segment(&segment) {
                MotifClass::Canonical(m) => self.counts[m.index()] += 1,
                MotifClass::Other => self.other += 1,
            }
        }
    }

    /// Total canonical motif count.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Canonical fractions; `None` when no canonical motif was observed.
    pub fn fractions(&self) -> Option<[f64; 6]> {
        let m = self.total();
        if m == 0 {
            return None;
        }
        let mut f = [0.0; 6];
        for (i, c) in self.counts.iter().enumerate() {
            f[i] = *c as f64 / m as f64;
        }
        Some(f)
    }

    /// Shannon entropy (bits) over canonical motif fractions; `None` when no
    /// canonical motif was observed (callers treat that as missing data).
    pub fn entropy(&self) -> Option<f64> {
        let m = self.total();
        if m == 0 {
            return None;
        }
        let mut h = 0.0;
        for &c in &self.counts {
            if c > 0 {
                let p = c as f64 / m as f64;
                h -= p * p.log2();
            }
        }
        Some(h.max(0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walk(ids: &[usize]) -> Vec<CodeId> {
        ids.to_vec()
    }

    #[test]
    fn collapse_merges_consecutive_duplicates() {
        use chrono::NaiveDate;
        let day = NaiveDate::from_ymd_opt(2017, 4, 11).unwrap();
        let mk = |o: usize, d: usize| Trip {
            person_id: "p".into(),
            household_id: "h".into(),
            wave: "2017".into(),
            day,
            origin_purpose: o,
            dest_purpose: d,
            modes: vec![0],
            depart_min: 480,
            arrive_min: 490,
            duration_min: 10.0,
            distance_km: 1.0,
            n_hh_companions: 0,
            n_nonhh_companions: 0,
        };

        // home -> home -> store becomes home -> store
        let t = [mk(0, 0), mk(0, 3)];
        let refs: Vec<&Trip> = t.iter().collect();
        let seq = collapse_day(day, &refs).unwrap();
        assert_eq!(seq.walk, walk(&[0, 3]));
        assert_eq!(seq.steps.len(), 1);

        // home -> work -> home unchanged
        let t = [mk(0, 1), mk(1, 0)];
        let refs: Vec<&Trip> = t.iter().collect();
        assert_eq!(collapse_day(day, &refs).unwrap().walk, walk(&[0, 1, 0]));

        // a a a b b a  ->  a b a
        let t = [mk(0, 0), mk(0, 0), mk(0, 1), mk(1, 1), mk(1, 0)];
        let refs: Vec<&Trip> = t.iter().collect();
        assert_eq!(collapse_day(day, &refs).unwrap().walk, walk(&[0, 1, 0]));

        // all self-loops -> no sequence
        let t = [mk(0, 0), mk(0, 0)];
        let refs: Vec<&Trip> = t.iter().collect();
        assert!(collapse_day(day, &refs).is_none());
    }

    #[test]
    fn segmentation_cuts_at_returns_to_start() {
        assert_eq!(
            segment_walk(&walk(&[0, 1, 0, 2, 3, 0])),
            vec![walk(&[0, 1, 0]), walk(&[0, 2, 3, 0])]
        );
        assert_eq!(
            segment_walk(&walk(&[0, 1, 0, 2])),
            vec![walk(&[0, 1, 0]), walk(&[0, 2])]
        );
        assert_eq!(segment_walk(&walk(&[0, 1, 2])), vec![walk(&[0, 1, 2])]);
    }

    #[test]
    fn segments_reconstruct_walk() {
        let w = walk(&[0, 1, 0, 2, 3, 0, 4]);
        let segs = segment_walk(&w);
        let mut rebuilt = segs[0].clone();
        for s in &segs[1..] {
            assert_eq!(*rebuilt.last().unwrap(), s[0]);
            rebuilt.extend_from_slice(&s[1..]);
        }
        assert_eq!(rebuilt, w);
    }

    #[test]
    fn classify_canonical_shapes() {
        use Motif::*;
        assert_eq!(classify_segment(&walk(&[0, 1])), MotifClass::Canonical(SingleNoReturn));
        assert_eq!(classify_segment(&walk(&[0, 1, 0])), MotifClass::Canonical(OutAndBack));
        assert_eq!(classify_segment(&walk(&[0, 1, 2])), MotifClass::Canonical(Chain));
        assert_eq!(classify_segment(&walk(&[0, 1, 2, 0])), MotifClass::Canonical(SingleCycle));
        assert_eq!(classify_segment(&walk(&[0, 1, 2, 3, 0])), MotifClass::Canonical(SingleCycle));
        // loop through an intermediate pivot inside the home loop
        assert_eq!(classify_segment(&walk(&[0, 1, 2, 1, 0])), MotifClass::Canonical(DoubleCycle));
        assert_eq!(
            classify_segment(&walk(&[0, 1, 2, 3, 2, 0])),
            MotifClass::Canonical(DoubleCycle)
        );
        // pendant path ending in a loop
        assert_eq!(classify_segment(&walk(&[0, 1, 2, 1])), MotifClass::Canonical(CycleChain));
        assert_eq!(classify_segment(&walk(&[0, 1, 2, 3, 2])), MotifClass::Canonical(CycleChain));
        // two pendants off one loop is not canonical
        assert_eq!(classify_segment(&walk(&[0, 1, 2, 1, 3])), MotifClass::Other);
        // two distinct pivots
        assert_eq!(classify_segment(&walk(&[0, 1, 2, 1, 2, 0])), MotifClass::Other);
    }

    #[test]
    fn tally_fractions_and_entropy() {
        let mut tally = MotifTally::default();
        tally.add_walk(&walk(&[0, 1, 0]));
        tally.add_walk(&walk(&[0, 1, 0]));
        tally.add_walk(&walk(&[0, 2]));
        tally.add_walk(&walk(&[0, 1, 2]));
        assert_eq!(tally.total(), 4);
        let f = tally.fractions().unwrap();
        assert_eq!(f[Motif::OutAndBack.index()], 0.5);
        assert_eq!(f[Motif::SingleNoReturn.index()], 0.25);
        // counts (2,1,1): entropy 1.5 bits
        assert!((tally.entropy().unwrap() - 1.5).abs() < 1e-12);

        let empty = MotifTally::default();
        assert!(empty.entropy().is_none());
        assert!(empty.fractions().is_none());
    }

    #[test]
    fn uniform_six_motifs_hit_log2_6() {
        let tally = MotifTally { counts: [1; 6], other: 0 };
        assert!((tally.entropy().unwrap() - 6f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn all_out_and_back_entropy_zero() {
        let tally = MotifTally { counts: [0, 5, 0, 0, 0, 0], other: 0 };
        assert_eq!(tally.entropy().unwrap(), 0.0);
    }
}
