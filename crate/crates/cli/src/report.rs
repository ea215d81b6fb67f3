use std::fmt::{self, Display};

use visclust::metrics::MetricsReport;

/// Ordered `key=value` lines.
#[derive(Debug, Default)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn push(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn metrics(&mut self, m: &MetricsReport) -> &mut Self {
        self.push("acc", m.acc)
            .push("ri", m.ri)
            .push("e_ri", m.e_ri)
            .push("ari", m.ari.map_or("undefined".to_string(), |a| a.to_string()))
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Comma-joined floats.
pub fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_in_insertion_order() {
        let mut r = Report::default();
        r.push("status", "satisfied").push("k_used", 2);
        assert_eq!(r.to_string(), "status=satisfied\nk_used=2\n");
        assert_eq!(join(&[0.5, 0.25]), "0.5,0.25");
    }
}
