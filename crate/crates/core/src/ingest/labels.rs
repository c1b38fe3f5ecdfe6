//! Binning of raw person attributes into the categorical label classes.

pub const AGE_CLASSES: [&str; 6] = ["0-11", "12-17", "18-34", "35-54", "55-74", "75+"];
pub const GENDER_CLASSES: [&str; 3] = ["male", "female", "non_binary"];
pub const INCOME_CLASSES: [&str; 5] =
    ["under_25k", "25k_49k", "50k_74k", "75k_99k", "100k_plus"];
pub const CHILDREN_CLASSES: [&str; 4] = ["0", "1", "2", "3plus"];

/// Classes per task in pipeline order (age, gender, income, children).
pub const TASK_CLASS_COUNTS: [usize; 4] = [6, 3, 5, 4];

/// Age in years to class index. Caller guarantees age >= 0 (negative age
/// rejects the whole row at parse time).
pub fn bin_age(years: f64) -> u8 {
    match years {
        y if y < 12.0 => 0,
        y if y < 18.0 => 1,
        y if y < 35.0 => 2,
        y if y < 55.0 => 3,
        y if y < 75.0 => 4,
        _ => 5,
    }
}

pub fn bin_gender(raw: &str) -> Option<u8> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "male" | "m" | "man" => Some(0),
        "female" | "f" | "woman" => Some(1),
        "non_binary" | "non-binary" | "nonbinary" | "nb" => Some(2),
        _ => None,
    }
}

/// Income arrives either as a category token or a dollar value; anything
/// unrecognized is a missing label, never an error.
pub fn bin_income(raw: &str, dollars: Option<f64>) -> Option<u8> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "under_25k" | "<25k" => return Some(0),
        "25k_49k" | "25k-49999" => return Some(1),
        "50k_74k" | "50k-74999" => return Some(2),
        "75k_99k" | "75k-99999" => return Some(3),
        "100k_plus" | "100k+" => return Some(4),
        _ => {}
    }
    let d = dollars?;
    if d < 0.0 {
        return None;
    }
    Some(match d {
        v if v < 25_000.0 => 0,
        v if v < 50_000.0 => 1,
        v if v < 75_000.0 => 2,
        v if v < 100_000.0 => 3,
        _ => 4,
    })
}

pub fn bin_children(n: u32) -> u8 {
    n.min(3) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn age_bins_match_class_table() {
        assert_eq!(bin_age(0.0), 0);
        assert_eq!(bin_age(11.0), 0);
        assert_eq!(bin_age(12.0), 1);
        assert_eq!(bin_age(34.0), 2);
        assert_eq!(bin_age(35.0), 3);
        assert_eq!(bin_age(55.0), 4);
        assert_eq!(bin_age(74.0), 4);
        assert_eq!(bin_age(75.0), 5);
        assert_eq!(bin_age(103.0), 5);
    }

    #[test]
    fn age_binning_is_order_preserving() {
        let ages = [0.0, 5.0, 11.0, 12.0, 17.9, 18.0, 34.9, 35.0, 54.0, 55.0, 74.9, 75.0, 90.0];
        let mut last = 0;
        for a in ages {
            let b = bin_age(a);
            assert!(b >= last, "bin dropped at age {a}");
            last = b;
        }
    }

    #[test]
    fn children_cap_at_three_plus() {
        assert_eq!(bin_children(0), 0);
        assert_eq!(bin_children(2), 2);
        assert_eq!(bin_children(3), 3);
        assert_eq!(bin_children(7), 3);
    }

    #[test]
    fn income_categories_and_dollars() {
        assert_eq!(bin_income("100k_plus", None), Some(4));
        assert_eq!(bin_income("", Some(62_000.0)), Some(2));
        assert_eq!(bin_income("", Some(24_999.99)), Some(0));
        assert_eq!(bin_income("", Some(25_000.0)), Some(1));
        assert_eq!(bin_income("prefer_not_to_say", None), None);
        assert_eq!(bin_income("", None), None);
    }

    #[test]
    fn gender_aliases() {
        assert_eq!(bin_gender("Male"), Some(0));
        assert_eq!(bin_gender("f"), Some(1));
        assert_eq!(bin_gender("non-binary"), Some(2));
        assert_eq!(bin_gender("prefer not to answer"), None);
    }
}
