//! Canonical JSON forms. Rationals are reduced `p/q` strings; key order is
//! fixed by the struct layouts, so identical values give identical bytes.

use serde::{Deserialize, Serialize};

use crate::certificate::{CertificateReport, EdgeWeighting};
use crate::divisor::{DivisorClass, Partition};
use crate::error::{Error, Result};
use crate::rational::{format, parse};

#[derive(Debug, Serialize, Deserialize)]
pub struct BoundaryEntry {
    pub side: Vec<usize>,
    pub coeff: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DivisorJson {
    pub n: usize,
    pub psi: Vec<String>,
    pub boundary: Vec<BoundaryEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub i: usize,
    pub j: usize,
    pub w: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EdgeWeightingJson {
    pub n: usize,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SlackEntry {
    pub side: Vec<usize>,
    pub slack: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub vertex_residuals: Vec<String>,
    pub min_cut_slack: String,
    pub failing_partitions: Vec<SlackEntry>,
    pub verdict: bool,
}

impl From<&DivisorClass> for DivisorJson {
    fn from(d: &DivisorClass) -> Self {
        DivisorJson {
            n: d.n(),
            psi: d.psi().iter().map(format).collect(),
            boundary: d
                .boundary()
                .iter()
                .map(|(p, c)| BoundaryEntry {
                    side: p.side().to_vec(),
                    coeff: format(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<DivisorJson> for DivisorClass {
    type Error = Error;

    fn try_from(j: DivisorJson) -> Result<Self> {
        let psi = j.psi.iter().map(|s| parse(s)).collect::<Result<Vec<_>>>()?;
        let mut boundary = Vec::with_capacity(j.boundary.len());
        for e in j.boundary {
            boundary.push((Partition::new(j.n, &e.side)?, parse(&e.coeff)?));
        }
        DivisorClass::new(j.n, psi, boundary)
    }
}

impl From<&EdgeWeighting> for EdgeWeightingJson {
    fn from(w: &EdgeWeighting) -> Self {
        EdgeWeightingJson {
            n: w.n(),
            edges: w
                .edges()
                .filter(|(_, _, x)| !num_traits::Zero::is_zero(*x))
                .map(|(i, j, x)| EdgeEntry { i, j, w: format(x) })
                .collect(),
        }
    }
}

impl TryFrom<EdgeWeightingJson> for EdgeWeighting {
    type Error = Error;

    fn try_from(j: EdgeWeightingJson) -> Result<Self> {
        let mut w = EdgeWeighting::zero(j.n)?;
        for e in j.edges {
            w.set(e.i, e.j, parse(&e.w)?)?;
        }
        Ok(w)
    }
}

impl From<&CertificateReport> for ReportJson {
    fn from(r: &CertificateReport) -> Self {
        ReportJson {
            vertex_residuals: r.vertex_residuals.iter().map(format).collect(),
            min_cut_slack: format(&r.min_cut_slack),
            failing_partitions: r
                .failing
                .iter()
                .map(|(p, s)| SlackEntry {
                    side: p.side().to_vec(),
                    slack: format(s),
                })
                .collect(),
            verdict: r.verdict,
        }
    }
}

/// Compact JSON text of any serializable value.
pub fn emit_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

pub fn divisor_to_json(d: &DivisorClass) -> String {
    emit_json(&DivisorJson::from(d))
}

pub fn divisor_from_json(text: &str) -> Result<DivisorClass> {
    let j: DivisorJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    j.try_into()
}

pub fn weighting_to_json(w: &EdgeWeighting) -> String {
    emit_json(&EdgeWeightingJson::from(w))
}

pub fn weighting_from_json(text: &str) -> Result<EdgeWeighting> {
    let j: EdgeWeightingJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    j.try_into()
}

pub fn report_to_json(r: &CertificateReport) -> String {
    emit_json(&ReportJson::from(r))
}
