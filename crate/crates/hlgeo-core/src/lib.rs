//! Exact-arithmetic engine for left-invariant pseudo-Riemannian and almost
//! Hermite-Lorentz geometry on finite-dimensional real Lie algebras.
//!
//! The crate derives everything from structure constants: the Levi-Civita
//! connection of a left-invariant metric, curvature and its covariant
//! derivative, the Nijenhuis tensor and the fundamental 2-form of an almost
//! complex structure, infinitesimal isotropy checks, and the reduced
//! geodesic flow `xdot = ad*_x x` with conserved-quantity monitoring.
//!
//! All catalog geometry is computed in arbitrary-precision rational
//! arithmetic; floating point appears only in the geodesic integrator.
//! The built-in catalog covers the four 6-dimensional homogeneous almost
//! Hermite-Lorentz groups with irreducible isotropy, the rank-one split
//! form with its bi-invariant metric, and a flat control case, together
//! with a discrepancy ledger that cross-checks every value of the published
//! tables against the constructions.

pub mod algfile;
pub mod catalog;
pub mod error;
pub mod geodesics;
pub mod hermitian;
pub mod ledger;
pub mod lie;
pub mod linalg;
pub mod metric;
pub mod render;
pub mod report;
pub mod scalar;

pub use algfile::{parse_algebra_file, spec_to_canonical_string, spec_to_json, AlgebraFileError};
pub use catalog::{build, build_by_name, validate, CatalogName, HomogeneousSpaceSpec, ValidationFailure};
pub use error::GeomError;
pub use geodesics::{
    classify_growth, closed_form_complexified, completeness_probe, conservation_grid,
    default_probe_grid, euler_arnold_rhs, integrate_rk4, rhs_via_a, AOperator, BlowupDetected,
    EulerArnoldSystem, GeodesicState, GeodesicTrajectory, GrowthClass, ProbeReport,
    BLOWUP_THRESHOLD,
};
pub use hermitian::{
    d_omega, is_almost_kahler, is_integrable, isotropy_structure_check, kahler_form, nabla_j,
    nijenhuis, AlmostComplexSpec, IsotropyDefects,
};
pub use ledger::{ledger, DiscrepancyLedger, LedgerEntry, LedgerStatus};
pub use lie::{DerivationCandidate, LieAlgebraSpec};
pub use linalg::{Matrix, Vector};
pub use metric::{
    connection_general, connection_orthonormal, is_locally_symmetric, nabla_riemann,
    nabla_riemann_basis, riemann, sectional_curvature, ConnectionCoeffs, CurvatureTensor,
    MetricSpec,
};
pub use render::format_combination;
pub use report::{canonical_json_string, full_report, ledger_to_json, ledger_to_text, GeometryReport};
pub use scalar::{format_rational, parse_rational, rat, rational_to_f64, rint, Rational, Scalar};
