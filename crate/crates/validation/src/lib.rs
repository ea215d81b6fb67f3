//! Helpers shared by the acceptance run: a pass/fail ledger that prints one
//! line per criterion, fixture lookup and small statistics.

use std::path::PathBuf;
use std::process::ExitCode;

use visclust::data::{load_delimited, ColumnRef, LoadOptions};
use visclust::Dataset;

/// Outcome of one numbered criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub number: u32,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn line(&self) -> String {
        let word = if self.pass { "PASS" } else { "FAIL" };
        format!("criterion {:>2} {word}: {}", self.number, self.detail)
    }
}

/// Collects verdicts and prints each as soon as it is known.
#[derive(Debug, Default)]
pub struct Gate {
    verdicts: Vec<Verdict>,
}

impl Gate {
    pub fn record(&mut self, number: u32, pass: bool, detail: impl Into<String>) {
        let v = Verdict {
            number,
            pass,
            detail: detail.into(),
        };
        println!("{}", v.line());
        self.verdicts.push(v);
    }

    pub fn verdicts(&self) -> &[Verdict] {
        &self.verdicts
    }

    pub fn failures(&self) -> usize {
        self.verdicts.iter().filter(|v| !v.pass).count()
    }

    /// Summary line plus a process exit code.
    pub fn finish(&self) -> ExitCode {
        let failed = self.failures();
        println!(
            "acceptance: {} passed, {failed} failed",
            self.verdicts.len() - failed
        );
        if failed == 0 {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        }
    }
}

/// Path of a file under `tests/fixtures`.
pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures").join(name)
}

/// A labeled fixture with its class column named `label`, or `None` when the
/// file is absent.
pub fn labeled_fixture(name: &str) -> Option<Dataset> {
    let path = fixture(name);
    if !path.exists() {
        return None;
    }
    let opts = LoadOptions {
        label_column: Some(ColumnRef::Name("label".into())),
        ..LoadOptions::default()
    };
    Some(load_delimited(&path, &opts).unwrap_or_else(|e| panic!("{}: {e}", path.display())))
}

pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_carry_number_and_word() {
        let v = Verdict {
            number: 3,
            pass: false,
            detail: "ari=0.5".into(),
        };
        assert_eq!(v.line(), "criterion  3 FAIL: ari=0.5");
    }

    #[test]
    fn gate_counts_failures() {
        let mut g = Gate::default();
        g.record(1, true, "ok");
        g.record(2, false, "bad");
        assert_eq!(g.failures(), 1);
        assert_eq!(g.verdicts().len(), 2);
    }

    #[test]
    fn iris_fixture_is_complete() {
        let x = labeled_fixture("iris.csv").unwrap();
        assert_eq!((x.len(), x.dims()), (150, 4));
        let labels = x.labels().unwrap();
        for class in 1..=3 {
            assert_eq!(labels.iter().filter(|&&l| l == class).count(), 50);
        }
    }

    #[test]
    fn mean_of_nothing_is_nan() {
        assert!(mean(&[]).is_nan());
        assert_eq!(mean(&[1.0, 2.0]), 1.5);
    }
}
