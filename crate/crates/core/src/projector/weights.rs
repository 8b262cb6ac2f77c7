//! Closed-form functionals at a vertex of valence `n`.
//!
//! By rotational symmetry the centre row of `A^{-1}` takes one value per
//! orbit of interpolation slots, so the functional is a short list of
//! distinct weights.

use serde::Serialize;

use crate::error::Result;
use crate::mesh::OrderedRing;
use crate::numeric::Weight;
use crate::schemes::{loop_beta, MLoopMasks, SchemeId};

/// Orbits of interpolation slots around a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Orbit {
    Center,
    Spoke,
    Neighbor,
    Face,
    RingEdge,
    Diagonal,
}

const CC_ORBITS: [Orbit; 6] =
    [Orbit::Center, Orbit::Spoke, Orbit::Neighbor, Orbit::Face, Orbit::RingEdge, Orbit::Diagonal];
const TRI_ORBITS: [Orbit; 4] = [Orbit::Center, Orbit::Spoke, Orbit::Neighbor, Orbit::RingEdge];

/// Slot pattern of one sector, in [`OrderedRing::interp`] order.
const CC_SECTOR: [Orbit; 6] =
    [Orbit::Spoke, Orbit::Neighbor, Orbit::Face, Orbit::RingEdge, Orbit::RingEdge, Orbit::Diagonal];
const TRI_SECTOR: [Orbit; 3] = [Orbit::Spoke, Orbit::Neighbor, Orbit::RingEdge];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightProfile {
    pub scheme: &'static str,
    pub n: usize,
    /// Distinct weights `w1..w6` (quads) or `w1..w4` (triangles).
    pub weights: Vec<f64>,
    pub orbits: Vec<Orbit>,
    /// Number of slots in each orbit.
    pub orbit_sizes: Vec<usize>,
}

impl WeightProfile {
    fn new(scheme: &'static str, n: usize, weights: Vec<f64>) -> Self {
        let (orbits, orbit_sizes) = if weights.len() == 6 {
            (CC_ORBITS.to_vec(), vec![1, n, n, n, 2 * n, n])
        } else {
            (TRI_ORBITS.to_vec(), vec![1, n, n, n])
        };
        WeightProfile { scheme, n, weights, orbits, orbit_sizes }
    }

    pub fn weight(&self, orbit: Orbit) -> f64 {
        let i = self.orbits.iter().position(|&o| o == orbit).expect("orbit of this family");
        self.weights[i]
    }

    /// Sum over all slots; equals 1.
    pub fn total(&self) -> f64 {
        self.weights.iter().zip(&self.orbit_sizes).map(|(w, &k)| w * k as f64).sum()
    }

    /// Weights per slot in the order of `ring.interp`.
    pub fn expand(&self, ring: &OrderedRing) -> Vec<f64> {
        slot_orbits(ring).into_iter().map(|o| self.weight(o)).collect()
    }
}

pub fn slot_orbits(ring: &OrderedRing) -> Vec<Orbit> {
    let sector: &[Orbit] = if ring.diagonals.is_empty() { &TRI_SECTOR } else { &CC_SECTOR };
    std::iter::once(Orbit::Center)
        .chain((0..ring.valence()).flat_map(|_| sector.iter().copied()))
        .collect()
}

/// `(w1..w6)` with `w6 = 18(5n-2)/(n(739n^2-2717n+1960))`,
/// `w3 = 18(91n-4)/(n(739n^2-2717n+1960))`.
pub fn cc_weights<T: Weight>(n: usize) -> [T; 6] {
    let nn = T::int(n as i64);
    let den = nn.clone()
        * (T::int(739) * nn.clone() * nn.clone() - T::int(2717) * nn.clone() + T::int(1960));
    let w6 = T::int(18) * (T::int(5) * nn.clone() - T::int(2)) / den.clone();
    let w3 = T::int(18) * (T::int(91) * nn.clone() - T::int(4)) / den;
    let w5 = T::int(-8) * w6.clone();
    let w2 = T::int(-8) * w3.clone();
    let w4 = T::int(64) * w6.clone();
    let w1 = T::one() - nn * (T::int(49) * w6.clone() - T::int(7) * w3.clone());
    [w1, w2, w3, w4, w5, w6]
}

fn tri_from_w3<T: Weight>(n: usize, w3: T) -> [T; 4] {
    let w2 = T::int(32) * w3.clone();
    let w4 = T::int(-8) * w3.clone();
    let w1 = T::one() - T::int(25 * n as i64) * w3.clone();
    [w1, w2, w3, w4]
}

/// `w3 = -48 beta / (128 alpha^2 + 200 alpha - 67)`.
pub fn loop_weights<T: Weight>(n: usize, alpha: T, beta: T) -> [T; 4] {
    let den = T::int(128) * alpha.clone() * alpha.clone() + T::int(200) * alpha - T::int(67);
    tri_from_w3(n, T::int(-48) * beta / den)
}

/// `w3 = -96 beta / (P1(gamma) alpha^2 + P2(gamma) alpha + P3(gamma))`.
pub fn mloop_weights<T: Weight>(n: usize, alpha: T, beta: T, gamma: T) -> [T; 4] {
    let x = gamma;
    let x2 = x.clone() * x.clone();
    let p1 = T::int(256) * x.clone() + T::int(160);
    let p2 = T::int(-512) * x2.clone() + T::int(1608) * x.clone() - T::int(131);
    let p3 = T::int(256) * x2.clone() * x.clone() - T::int(1768) * x2 + T::int(347) * x - T::int(29);
    let den = p1 * alpha.clone() * alpha.clone() + p2 * alpha + p3;
    tri_from_w3(n, T::int(-96) * beta / den)
}

pub fn weights_cc(n: usize) -> WeightProfile {
    WeightProfile::new("cc", n, cc_weights::<f64>(n).to_vec())
}

pub fn weights_loop(n: usize) -> WeightProfile {
    let beta = loop_beta(n);
    WeightProfile::new("loop", n, loop_weights(n, 1.0 - n as f64 * beta, beta).to_vec())
}

pub fn weights_mloop(n: usize, masks: &MLoopMasks) -> Result<WeightProfile> {
    if n == 6 {
        return Ok(WeightProfile { scheme: "mloop", ..weights_loop(6) });
    }
    let m = masks.get(n)?;
    Ok(WeightProfile::new("mloop", n, mloop_weights(n, m.alpha, m.beta, m.gamma).to_vec()))
}

pub fn weights_for(scheme: &SchemeId, n: usize) -> Result<WeightProfile> {
    match scheme {
        SchemeId::CatmullClark => Ok(weights_cc(n)),
        SchemeId::Loop => Ok(weights_loop(n)),
        SchemeId::ModifiedLoop(m) => weights_mloop(n, m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Exact;

    #[test]
    fn regular_cc_exact() {
        let w = cc_weights::<Exact>(4);
        let want = [(100, 9), (-40, 9), (5, 9), (16, 9), (-2, 9), (1, 36)].map(|(p, q)| Exact::frac(p, q));
        assert_eq!(w, want);
    }

    #[test]
    fn valence_three_cc() {
        let w = cc_weights::<Exact>(3);
        assert_eq!(w[5], Exact::frac(39, 230));
        assert_eq!(w[2], Exact::frac(807, 230));
        let total = w[0].clone()
            + Exact::int(3) * (w[1].clone() + w[2].clone() + w[3].clone() + w[5].clone())
            + Exact::int(6) * w[4].clone();
        assert_eq!(total, Exact::int(1));
    }

    #[test]
    fn regular_loop_exact() {
        let w = loop_weights(6, Exact::frac(5, 8), Exact::frac(1, 16));
        assert_eq!(w, [(31, 6), (-8, 9), (-1, 36), (2, 9)].map(|(p, q)| Exact::frac(p, q)));
    }

    #[test]
    fn loop_valence_five() {
        let p = weights_loop(5);
        assert!((p.weights[2] + 0.0439240).abs() < 1e-7, "{}", p.weights[2]);
        assert!((p.total() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn modified_loop_reduces_to_loop_at_three_eighths() {
        for n in 3..=12 {
            let beta = loop_beta(n);
            let alpha = 1.0 - n as f64 * beta;
            let a = loop_weights(n, alpha, beta);
            let b = mloop_weights(n, alpha, beta, 0.375);
            for k in 0..4 {
                assert!((a[k] - b[k]).abs() < 1e-13);
            }
        }
        // Exact polynomial values at 3/8.
        let x = Exact::frac(3, 8);
        let w = mloop_weights(6, Exact::frac(5, 8), Exact::frac(1, 16), x);
        assert_eq!(w, loop_weights(6, Exact::frac(5, 8), Exact::frac(1, 16)));
    }
}
