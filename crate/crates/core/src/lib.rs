//! Shapes of pure quartic fields Q(m^(1/4)): classification into the
//! five 2-adic types, exact trace-form Gram matrices on the Funakura
//! integral basis, projection to the rank-3 shape lattice and its
//! Minkowski reduction, lattice-point counting in the shape-parameter
//! region, local densities, and empirical-vs-predicted distribution
//! reports.

pub mod carefree;
pub mod densities;
pub mod embed;
pub mod enumerate;
pub mod factor;
pub mod field;
pub mod gram;
pub mod quadratic;
pub mod reduce;
pub mod region;
pub mod shape;
pub mod sieve;

pub use densities::{
    alpha, m_star, mu_hat_box, n_tau, psi, psi_star, psi_tau, DensityError, Rect, ZETA2,
};
pub use enumerate::{
    count_c_tau, count_c_tau_multi, enumerate_fields, theorem_ratio_report, CountReport,
    EnumerationResult, FieldRecord, Filters,
};
pub use field::{
    classify, FieldClass, FieldError, FieldType, NormalForm, PureQuarticField, Sign,
};
pub use gram::{gram, project_perp, shape_params, Gram3, Gram4, ShapeParams};
pub use quadratic::QuadraticReal;
pub use reduce::{
    in_f3, iwasawa, minkowski_reduce, shapes_equivalent, IwasawaCoords, Mat3, ReduceError,
};
pub use shape::{shape_of, ShapeDescriptor, ShapeError};
