use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

/// One named pass/fail decision of a study.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// Sealed study output: parameters, measured values and verdicts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub study: String,
    pub parameters: Value,
    pub measured: Value,
    pub verdicts: Vec<Verdict>,
}

impl VerificationReport {
    pub fn new<P: Serialize, M: Serialize>(
        study: impl Into<String>,
        parameters: &P,
        measured: &M,
        verdicts: Vec<Verdict>,
    ) -> Result<Self> {
        Ok(Self {
            study: study.into(),
            parameters: serde_json::to_value(parameters)?,
            measured: serde_json::to_value(measured)?,
            verdicts,
        })
    }

    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, self)?;
        Ok(())
    }
}

/// One point of a plot-ready series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub x: f64,
    pub y: f64,
    /// Standard error; written as an empty cell when undefined.
    pub yerr: Option<f64>,
}

/// Writes `x,y,yerr` rows.
pub fn write_series_csv<W: Write>(points: &[SeriesPoint], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for p in points {
        out.serialize(p)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_csv_layout() {
        let pts = [
            SeriesPoint { x: 8.0, y: 1.5, yerr: Some(0.25) },
            SeriesPoint { x: 16.0, y: 0.5, yerr: None },
        ];
        let mut buf = Vec::new();
        write_series_csv(&pts, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,y,yerr\n8.0,1.5,0.25\n16.0,0.5,\n");
    }

    #[test]
    fn report_passes_only_if_all_verdicts_pass() {
        let ok = Verdict::new("a", true, "");
        let bad = Verdict::new("b", false, "");
        let r = VerificationReport::new("s", &(), &(), vec![ok.clone()]).unwrap();
        assert!(r.pass());
        let r = VerificationReport::new("s", &(), &(), vec![ok, bad]).unwrap();
        assert!(!r.pass());
    }
}
