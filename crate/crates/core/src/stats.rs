use std::fmt;

use serde::Serialize;

/// One estimator with its acceptance band.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatEntry {
    pub name: String,
    pub estimate: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub sample_count: u64,
}

impl StatEntry {
    pub fn new(
        name: impl Into<String>,
        estimate: f64,
        expected: f64,
        tolerance: f64,
        sample_count: u64,
    ) -> Self {
        StatEntry {
            name: name.into(),
            estimate,
            expected,
            tolerance,
            pass: (estimate - expected).abs() <= tolerance,
            sample_count,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StatReport {
    pub title: String,
    pub entries: Vec<StatEntry>,
}

impl StatReport {
    pub fn new(title: impl Into<String>) -> Self {
        StatReport {
            title: title.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, entry: StatEntry) {
        self.entries.push(entry);
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn get(&self, name: &str) -> Option<&StatEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// `5 / sqrt(T)`, the band used for every ±1 mean estimator.
pub fn five_sigma_unit(ticks: u64) -> f64 {
    5.0 / (ticks as f64).sqrt()
}

impl fmt::Display for StatReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for e in &self.entries {
            writeln!(
                f,
                "  [{}] {:<32} estimate {:+.6}  expected {:+.6}  tol {:.6}  (T = {})",
                if e.pass { "pass" } else { "FAIL" },
                e.name,
                e.estimate,
                e.expected,
                e.tolerance,
                e.sample_count
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_matches_band() {
        assert!(StatEntry::new("a", 0.004, 0.0, 0.005, 1).pass);
        assert!(StatEntry::new("a", -0.005, 0.0, 0.005, 1).pass);
        assert!(!StatEntry::new("a", 0.0051, 0.0, 0.005, 1).pass);
        assert_eq!(five_sigma_unit(1_000_000), 0.005);
    }
}
