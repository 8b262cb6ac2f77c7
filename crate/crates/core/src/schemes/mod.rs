//! Subdivision rules, limit masks and local subdivision/limit matrices.

pub mod bspline;
mod local;
mod masks;
mod refine;
mod rules;

use std::sync::Arc;

pub use local::{local_a, local_l, local_s, oracle_a, oracle_l, oracle_s, LocalRule, LocalSlot, LocalSystem};
pub use masks::{MLoopMasks, VertexMask};
pub use refine::{limit_positions, limit_values, refine, refine_topology, refine_values, Coeff};
pub use rules::{limit_stencil, loop_beta, loop_beta_exact, refine_stencil, vertex_rule};

use crate::error::{Error, Result};
use crate::mesh::HalfEdgeMesh;

#[derive(Debug, Clone, PartialEq)]
pub enum SchemeId {
    CatmullClark,
    Loop,
    ModifiedLoop(Arc<MLoopMasks>),
}

impl SchemeId {
    pub fn arity(&self) -> usize {
        match self {
            SchemeId::CatmullClark => 4,
            _ => 3,
        }
    }

    pub fn regular_valence(&self) -> usize {
        match self {
            SchemeId::CatmullClark => 4,
            _ => 6,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SchemeId::CatmullClark => "cc",
            SchemeId::Loop => "loop",
            SchemeId::ModifiedLoop(_) => "mloop",
        }
    }

    pub fn family(&self) -> crate::mesh::generate::Family {
        match self {
            SchemeId::CatmullClark => crate::mesh::generate::Family::Quad,
            _ => crate::mesh::generate::Family::Tri,
        }
    }

    pub(crate) fn check_mesh(&self, mesh: &HalfEdgeMesh) -> Result<()> {
        if mesh.arity() != self.arity() {
            return Err(Error::UnsupportedArity(mesh.arity()));
        }
        Ok(())
    }
}
