//! The shape of a pure quartic field: the trace-form lattice on the
//! orthogonal complement of 1, reduced into the Minkowski domain, plus
//! the exact two-parameter description of its diagonal torus part.

use crate::field::{FieldError, PureQuarticField};
use crate::gram::{gram, project_perp, shape_params, ShapeParams};
use crate::reduce::{minkowski_reduce, IMat3, Mat3, ReduceError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShapeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

/// Everything the CLI reports about one field's shape.
#[derive(Debug, Clone)]
pub struct ShapeDescriptor {
    pub field: PureQuarticField,
    /// Rank-3 Gram of the projected lattice, floating point.
    pub projected: Mat3,
    /// Unit-determinant Minkowski-reduced representative.
    pub reduced: Mat3,
    /// Unimodular change of basis with u^T G u proportional to `reduced`.
    pub transform: IMat3,
    /// Exact torus parameters (lambda1^2 as a rational, lambda2 = 1/b).
    pub params: ShapeParams,
}

/// Compute the shape of K_m end to end.
pub fn shape_of(m: i64) -> Result<ShapeDescriptor, ShapeError> {
    let field = PureQuarticField::new(m)?;
    shape_of_field(field)
}

pub fn shape_of_field(field: PureQuarticField) -> Result<ShapeDescriptor, ShapeError> {
    let projected = project_perp(&gram(&field)).to_f64();
    let (reduced, transform) = minkowski_reduce(&projected)?;
    let params = shape_params(&field.counting_form);
    Ok(ShapeDescriptor {
        field,
        projected,
        reduced,
        transform,
        params,
    })
}
