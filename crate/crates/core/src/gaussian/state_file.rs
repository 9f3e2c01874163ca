use std::path::Path;

use serde::{Deserialize, Serialize};

use super::mode::{mode_to_quad, quad_to_mode, ModeCovariance};
use super::quad::QuadCovariance;
use crate::{Error, Result};

/// On-disk state description.
///
/// ```json
/// {"format": "quad", "entries": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}
/// {"format": "mode", "entries": {"n1": 0.5, "n2": 0.5, "m1": [0,0], "m2": [0,0], "ms": [0,0], "mc": [0,0]}}
/// ```
///
/// Quadrature entries are row-major, either as four rows or as a flat list of
/// sixteen numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "format", content = "entries", rename_all = "lowercase")]
pub enum StateFile {
    Quad(QuadEntries),
    Mode(ModeCovariance),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuadEntries {
    Rows([[f64; 4]; 4]),
    Flat(Vec<f64>),
}

impl StateFile {
    pub fn from_quad(g: &QuadCovariance) -> Self {
        StateFile::Quad(QuadEntries::Rows(g.rows()))
    }

    pub fn from_mode(v: &ModeCovariance) -> Self {
        StateFile::Mode(*v)
    }

    pub fn quad(&self) -> Result<QuadCovariance> {
        match self {
            StateFile::Quad(QuadEntries::Rows(rows)) => Ok(QuadCovariance::from_rows(*rows)),
            StateFile::Quad(QuadEntries::Flat(flat)) => {
                if flat.len() != 16 {
                    return Err(Error::InvalidInput(format!(
                        "quad entries need 16 values, got {}",
                        flat.len()
                    )));
                }
                Ok(QuadCovariance::from_rows(std::array::from_fn(|i| {
                    std::array::from_fn(|j| flat[4 * i + j])
                })))
            }
            StateFile::Mode(v) => Ok(mode_to_quad(v)),
        }
    }

    pub fn mode(&self) -> Result<ModeCovariance> {
        match self {
            StateFile::Mode(v) => Ok(*v),
            _ => Ok(quad_to_mode(&self.quad()?)),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state file serialises")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::states::tmsv_state;

    #[test]
    fn parses_both_formats() {
        let q = StateFile::from_json(
            r#"{"format": "quad", "entries": [1,0,0,0, 0,1,0,0, 0,0,1,0, 0,0,0,1]}"#,
        )
        .unwrap();
        assert_eq!(q.quad().unwrap(), QuadCovariance::identity());
        let m = StateFile::from_json(
            r#"{"format": "mode", "entries": {"n1": 0.5, "n2": 0.5, "m1": [0,0], "m2": [0,0], "ms": [0,0], "mc": [0,0]}}"#,
        )
        .unwrap();
        assert_eq!(m.mode().unwrap(), ModeCovariance::vacuum());
        assert_eq!(m.quad().unwrap(), QuadCovariance::identity());
    }

    #[test]
    fn written_form_reads_back() {
        let f = StateFile::from_quad(&tmsv_state(0.3));
        let back = StateFile::from_json(&f.to_json()).unwrap();
        assert_eq!(back.quad().unwrap(), tmsv_state(0.3));
        assert!(f.to_json().contains("\"format\": \"quad\""));
    }

    #[test]
    fn rejects_bad_shapes() {
        let short = StateFile::from_json(r#"{"format": "quad", "entries": [1,0,0]}"#).unwrap();
        assert!(short.quad().is_err());
        assert!(StateFile::from_json(r#"{"format": "wigner", "entries": []}"#).is_err());
    }
}
