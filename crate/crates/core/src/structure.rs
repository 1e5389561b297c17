//! Duality and ideal structure of generalized toric codes.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::codes::{CodeError, CodeSpec, Codeword, Torus};
use crate::exponents::{ExponentSet, ExponentVector};
use crate::field::FieldElement;
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("no generators supplied")]
    NoGenerators,
    #[error("all generators are zero; the ideal is zero")]
    ZeroIdeal,
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// `<ev(Y^u), ev(Y^v)>`: zero unless `u + v = 0` in `H`, where it is `(-1)^r`.
pub fn inner_product_basis(torus: &Torus, u: &ExponentVector, v: &ExponentVector) -> FieldElement {
    let grid = torus.grid();
    if grid.add(u, v).is_zero() {
        torus.field().minus_one_pow(grid.r())
    } else {
        FieldElement::ZERO
    }
}

/// The dual code, `C_{U^perp}`.
pub fn dual_code(spec: &CodeSpec) -> CodeSpec {
    spec.dual_spec()
}

/// Recovers `U` from generators of an ideal `J` of `A`.
///
/// For each `u` in `H` the projection `ev(Y^u) * g` equals
/// `(-1)^r lambda_u ev(Y^u)` where `lambda_u` is the coordinate of `g` on
/// `ev(Y^u)`; `u` belongs to the answer exactly when some projection is
/// nonzero.
pub fn ideal_to_u(torus: &Arc<Torus>, generators: &[Codeword]) -> Result<ExponentSet, StructureError> {
    if generators.is_empty() {
        return Err(StructureError::NoGenerators);
    }
    let mut nonzero = false;
    for g in generators {
        if g.q() != torus.q() || g.r() != torus.r() || g.len() != torus.n() {
            return Err(CodeError::ContextMismatch.into());
        }
        nonzero |= !g.is_zero();
    }
    if !nonzero {
        return Err(StructureError::ZeroIdeal);
    }
    let mut members = Vec::new();
    for u in torus.order().points() {
        let basis = torus.ev(u);
        for g in generators {
            if !torus.convolve(&basis, g)?.is_zero() {
                members.push(u.clone());
                break;
            }
        }
    }
    Ok(ExponentSet::from_vectors(torus.grid(), members))
}

/// Matrix-level facts about `C_U` and its dual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "U", serialize_with = "as_text")]
    pub u: ExponentSet,
    #[serde(rename = "U_perp", serialize_with = "as_text")]
    pub u_perp: ExponentSet,
    /// `G_U * G_{U^perp}^t = 0`.
    pub gram_ok: bool,
    /// `rank G_U + rank G_{U^perp} = n`.
    pub dims_ok: bool,
    pub self_dual: bool,
    /// `C_U` is contained in its dual, i.e. `G_U * G_U^t = 0`.
    pub self_orthogonal: bool,
}

fn as_text<S: serde::Serializer>(set: &ExponentSet, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&set.to_string())
}

fn generator_or_empty(spec: &CodeSpec) -> Matrix {
    spec.generator_matrix()
        .unwrap_or_else(|_| Matrix::zeros(0, spec.n()))
}

pub fn duality_report(spec: &CodeSpec) -> DualityReport {
    let field = spec.field();
    let dual = spec.dual_spec();
    let g = generator_or_empty(spec);
    let gd = generator_or_empty(&dual);
    let gram_ok = g.mul(field, &gd.transpose()).is_zero();
    let dims_ok = g.rank(field) + gd.rank(field) == spec.n();
    let self_orthogonal = g.mul(field, &g.transpose()).is_zero();
    let self_dual = spec.u() == dual.u();
    DualityReport {
        n: spec.n(),
        k: spec.k(),
        u: spec.u().clone(),
        u_perp: dual.u().clone(),
        gram_ok,
        dims_ok,
        self_dual,
        self_orthogonal,
    }
}

/// Row-space comparison of `C_U` with its dual.
pub fn equals_dual_as_row_spaces(spec: &CodeSpec) -> bool {
    let dual = spec.dual_spec();
    let g = generator_or_empty(spec);
    let gd = generator_or_empty(&dual);
    g.same_row_space(spec.field(), &gd)
}
