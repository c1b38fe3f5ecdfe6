//! Pipeline configuration: purpose/mode vocabularies, anchor purposes, and
//! peak-hour windows. Loaded from a TOML file; a shipped default covers the
//! common survey codes so small runs need no config at all.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Index into a vocabulary's canonical code list.
pub type CodeId = usize;

/// An ordered list of canonical codes plus an alias map from raw survey
/// strings onto those codes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Vocabulary {
    pub codes: Vec<String>,
    #[serde(default)]
    pub aliases: BTreeMap<String, String>,
}

impl Vocabulary {
    pub fn new(codes: &[&str]) -> Self {
        Vocabulary {
            codes: codes.iter().map(|s| s.to_string()).collect(),
            aliases: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Resolve a raw survey string to a canonical code id. Matching is
    /// case-insensitive and alias-aware; `None` means the code is not in
    /// the vocabulary.
    pub fn resolve(&self, raw: &str) -> Option<CodeId> {
        let key = raw.trim().to_ascii_lowercase();
        if key.is_empty() {
            return None;
        }
        let canonical = self.aliases.get(&key).map(|s| s.as_str()).unwrap_or(&key);
        self.codes.iter().position(|c| c == canonical)
    }

    pub fn code(&self, id: CodeId) -> &str {
        &self.codes[id]
    }

    fn validate(&self, what: &str) -> Result<()> {
        if self.codes.is_empty() {
            return Err(CoreError::Config(format!("{what} vocabulary is empty")));
        }
        for (alias, target) in &self.aliases {
            if !self.codes.iter().any(|c| c == target) {
                return Err(CoreError::Config(format!(
                    "{what} alias '{alias}' maps to unknown code '{target}'"
                )));
            }
        }
        Ok(())
    }
}

/// Half-open minute-of-day window `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinuteWindow {
    pub start: u16,
    pub end: u16,
}

impl MinuteWindow {
    pub fn contains(&self, minute: u16) -> bool {
        minute >= self.start && minute < self.end
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub purposes: Vocabulary,
    pub modes: Vocabulary,
    /// Anchor purposes for tour extraction (canonical codes).
    pub anchors: Vec<String>,
    /// Peak-hour windows, start-inclusive and end-exclusive.
    pub peak_windows: Vec<MinuteWindow>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let mut purposes = Vocabulary::new(&[
            "home", "work", "school", "shopping", "errand", "leisure", "escort", "gym", "other",
        ]);
        purposes.aliases.insert("store".into(), "shopping".into());
        purposes.aliases.insert("shop".into(), "shopping".into());
        purposes.aliases.insert("appointment".into(), "errand".into());
        purposes.aliases.insert("social".into(), "leisure".into());
        purposes.aliases.insert("recreation".into(), "leisure".into());

        let mut modes = Vocabulary::new(&[
            "drive", "passenger", "transit", "walk", "bike", "school_bus", "other",
        ]);
        modes.aliases.insert("car".into(), "drive".into());
        modes.aliases.insert("auto".into(), "drive".into());
        modes.aliases.insert("bus".into(), "transit".into());
        modes.aliases.insert("rail".into(), "transit".into());
        modes.aliases.insert("bicycle".into(), "bike".into());
        modes.aliases.insert("school-bus".into(), "school_bus".into());

        PipelineConfig {
            purposes,
            modes,
            anchors: vec!["home".into(), "work".into()],
            peak_windows: vec![
                MinuteWindow { start: 7 * 60, end: 9 * 60 },
                MinuteWindow { start: 16 * 60, end: 18 * 60 },
            ],
        }
    }
}

impl PipelineConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: PipelineConfig =
            toml::from_str(text).map_err(|e| CoreError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CoreError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.purposes.validate("purpose")?;
        self.modes.validate("mode")?;
        if self.anchors.is_empty() {
            return Err(CoreError::Config("no anchor purposes configured".into()));
        }
        for anchor in &self.anchors {
            if self.purposes.resolve(anchor).is_none() {
                return Err(CoreError::Config(format!(
                    "anchor '{anchor}' is not in the purpose vocabulary"
                )));
            }
        }
        for w in &self.peak_windows {
            if w.start >= w.end || w.end > 24 * 60 {
                return Err(CoreError::Config(format!(
                    "bad peak window [{}, {})",
                    w.start, w.end
                )));
            }
        }
        Ok(())
    }

    pub fn anchor_ids(&self) -> Vec<CodeId> {
        self.anchors
            .iter()
            .filter_map(|a| self.purposes.resolve(a))
            .collect()
    }

    pub fn is_peak(&self, minute: u16) -> bool {
        self.peak_windows.iter().any(|w| w.contains(minute))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let cfg = PipelineConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.purposes.len(), 9);
        assert_eq!(cfg.modes.len(), 7);
        assert_eq!(cfg.anchor_ids().len(), 2);
    }

    #[test]
    fn aliases_resolve_onto_canonical_codes() {
        let cfg = PipelineConfig::default();
        assert_eq!(cfg.purposes.resolve("store"), cfg.purposes.resolve("shopping"));
        assert_eq!(cfg.modes.resolve("Bus"), cfg.modes.resolve("transit"));
        assert_eq!(cfg.purposes.resolve("warp-gate"), None);
    }

    #[test]
    fn toml_round_trip() {
        let cfg = PipelineConfig::default();
        let text = cfg.to_toml_string();
        let back = PipelineConfig::from_toml_str(&text).unwrap();
        assert_eq!(back.purposes.codes, cfg.purposes.codes);
        assert_eq!(back.peak_windows, cfg.peak_windows);
    }

    #[test]
    fn bad_alias_rejected() {
        let text = r#"
            anchors = ["home"]
            peak_windows = [{ start = 420, end = 540 }]
            [purposes]
            codes = ["home", "work"]
            [purposes.aliases]
            hq = "office"
            [modes]
            codes = ["walk"]
        "#;
        assert!(PipelineConfig::from_toml_str(text).is_err());
    }

    #[test]
    fn peak_windows_are_half_open() {
        let cfg = PipelineConfig::default();
        assert!(cfg.is_peak(7 * 60));
        assert!(cfg.is_peak(9 * 60 - 1));
        assert!(!cfg.is_peak(9 * 60));
        assert!(cfg.is_peak(17 * 60));
        assert!(!cfg.is_peak(18 * 60));
    }
}
