use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schemes::loop_beta;

/// Vertex and edge masks of the modified Loop scheme at one valence.
///
/// A vertex of valence `n` moves to `alpha*v + beta*sum(e_j)`; the new
/// point on the edge towards neighbour `e_k` is
/// `gamma*v + sum_j gamma_j*e_{k+j}`, neighbours counted counter-clockwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexMask {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub gamma_j: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MLoopMasks {
    /// Target subdominant eigenvalue the table was designed for.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    pub valences: BTreeMap<usize, VertexMask>,
}

const TOL: f64 = 1e-12;

impl MLoopMasks {
    pub fn from_json(text: &str) -> Result<Self> {
        let masks: MLoopMasks =
            serde_json::from_str(text).map_err(|e| Error::InvalidMasks(e.to_string()))?;
        masks.validate()?;
        Ok(masks)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Checks `alpha + n*beta = 1` and `gamma + sum(gamma_j) = 1`.
    pub fn validate(&self) -> Result<()> {
        for (&n, m) in &self.valences {
            if n < 3 {
                return Err(Error::InvalidMasks(format!("valence {n} is below 3")));
            }
            if m.gamma_j.len() != n {
                return Err(Error::InvalidMasks(format!(
                    "valence {n}: gamma_j has {} entries, expected {n}",
                    m.gamma_j.len()
                )));
            }
            let all = [m.alpha, m.beta, m.gamma].into_iter().chain(m.gamma_j.iter().copied());
            if all.clone().any(|x| !x.is_finite()) {
                return Err(Error::InvalidMasks(format!("valence {n}: non-finite weight")));
            }
            let r = m.alpha + n as f64 * m.beta - 1.0;
            if r.abs() > TOL {
                return Err(Error::InvalidMasks(format!(
                    "valence {n}: alpha + n*beta = 1 violated (residual {r:e})"
                )));
            }
            let r = m.gamma + m.gamma_j.iter().sum::<f64>() - 1.0;
            if r.abs() > TOL {
                return Err(Error::InvalidMasks(format!(
                    "valence {n}: gamma + sum(gamma_j) = 1 violated (residual {r:e})"
                )));
            }
        }
        Ok(())
    }

    pub fn get(&self, n: usize) -> Result<&VertexMask> {
        self.valences.get(&n).ok_or(Error::MaskMissing(n))
    }

    /// The masks that reproduce plain Loop subdivision: Loop's vertex weights
    /// and the edge mask `3/8, 3/8, 1/8, 1/8`.
    pub fn loop_equivalent(valences: RangeInclusive<usize>) -> Self {
        let valences = valences
            .map(|n| {
                let beta = loop_beta(n);
                let mut gamma_j = vec![0.0; n];
                gamma_j[0] = 0.375;
                gamma_j[1] = 0.125;
                gamma_j[n - 1] = 0.125;
                (
                    n,
                    VertexMask {
                        alpha: 1.0 - n as f64 * beta,
                        beta,
                        gamma: 0.375,
                        gamma_j,
                    },
                )
            })
            .collect();
        MLoopMasks { lambda: None, valences }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_equivalent_round_trips() {
        let m = MLoopMasks::loop_equivalent(3..=12);
        m.validate().unwrap();
        let back = MLoopMasks::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn broken_vertex_mask_names_identity() {
        let text = r#"{"lambda": 0.3, "valences": {"5": {"alpha": 0.5, "beta": 0.2, "gamma": 0.375,
            "gamma_j": [0.375, 0.125, 0, 0, 0.125]}}}"#;
        match MLoopMasks::from_json(text) {
            Err(Error::InvalidMasks(msg)) => assert!(msg.contains("alpha + n*beta = 1"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_edge_mask_length() {
        let text = r#"{"valences": {"4": {"alpha": 0.5, "beta": 0.125, "gamma": 0.5,
            "gamma_j": [0.5]}}}"#;
        assert!(matches!(MLoopMasks::from_json(text), Err(Error::InvalidMasks(_))));
    }

    #[test]
    fn missing_valence() {
        let m = MLoopMasks::loop_equivalent(3..=5);
        assert!(matches!(m.get(7), Err(Error::MaskMissing(7))));
    }
}
