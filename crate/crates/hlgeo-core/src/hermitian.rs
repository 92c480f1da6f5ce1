//! Almost-Hermitian layer: the almost complex structure, its compatibility
//! with the metric, the Nijenhuis tensor, the fundamental 2-form and its
//! exterior derivative, `nabla J`, and the infinitesimal isotropy checks.

use num_traits::Zero;

use crate::error::GeomError;
use crate::lie::{DerivationCandidate, LieAlgebraSpec};
use crate::linalg::{Matrix, Vector};
use crate::metric::{ConnectionCoeffs, MetricSpec};
use crate::scalar::Scalar;

/// An almost complex structure given by its matrix `J` in the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AlmostComplexSpec<S> {
    j: Matrix<S>,
}

impl<S: Scalar> AlmostComplexSpec<S> {
    pub fn new(j: Matrix<S>) -> Result<Self, GeomError> {
        if !j.is_square() {
            return Err(GeomError::InvalidSpec("J must be square".into()));
        }
        Ok(AlmostComplexSpec { j })
    }

    /// The block structure `E_i -> E_{i+n}, E_{i+n} -> -E_i` used by every
    /// catalog algebra (`dim = 2n`).
    pub fn standard_block(dim: usize) -> Self {
        assert!(dim % 2 == 0, "block J needs even dimension");
        let n = dim / 2;
        let mut j = Matrix::zeros(dim, dim);
        for i in 0..n {
            j[(i + n, i)] = S::one();
            j[(i, i + n)] = -S::one();
        }
        AlmostComplexSpec { j }
    }

    pub fn dim(&self) -> usize {
        self.j.n_rows()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.j
    }

    pub fn apply(&self, x: &Vector<S>) -> Vector<S> {
        self.j.mul_vec(x)
    }

    /// Max-norm of `J^2 + I`; zero iff J is an almost complex structure.
    pub fn square_defect(&self) -> S {
        self.j
            .mul_mat(&self.j)
            .add(&Matrix::identity(self.dim()))
            .max_abs()
    }

    /// Max-norm of `<Jx, Jy> - <x, y>` over basis pairs; zero iff J is
    /// compatible with the metric.
    pub fn compatibility_defect(&self, metric: &MetricSpec<S>) -> S {
        // J^T G J - G
        self.j
            .transpose()
            .mul_mat(metric.gram())
            .mul_mat(&self.j)
            .sub(metric.gram())
            .max_abs()
    }
}

/// Nijenhuis tensor `N_J(x, y) = [Jx, Jy] - [x, y] - J[Jx, y] - J[x, Jy]`.
pub fn nijenhuis<S: Scalar>(
    alg: &LieAlgebraSpec<S>,
    acs: &AlmostComplexSpec<S>,
    x: &Vector<S>,
    y: &Vector<S>,
) -> Result<Vector<S>, GeomError> {
    if acs.dim() != alg.dim() {
        return Err(GeomError::DimensionMismatch { expected: alg.dim(), found: acs.dim() });
    }
    let jx = acs.apply(x);
    let jy = acs.apply(y);
    let t1 = alg.bracket(&jx, &jy)?;
    let t2 = alg.bracket(x, y)?;
    let t3 = acs.apply(&alg.bracket(&jx, y)?);
    let t4 = acs.apply(&alg.bracket(x, &jy)?);
    Ok(t1.sub(&t2).sub(&t3).sub(&t4))
}

/// The fundamental 2-form `omega(x, y) = <Jx, y>` as a matrix.
pub fn kahler_form<S: Scalar>(
    metric: &MetricSpec<S>,
    acs: &AlmostComplexSpec<S>,
) -> Matrix<S> {
    // omega_{ij} = <J E_i, E_j> = (J^T G)_{ij}
    acs.matrix().transpose().mul_mat(metric.gram())
}

/// `omega(x, y) = <Jx, y>`.
pub fn omega<S: Scalar>(
    metric: &MetricSpec<S>,
    acs: &AlmostComplexSpec<S>,
    x: &Vector<S>,
    y: &Vector<S>,
) -> S {
    metric.inner(&acs.apply(x), y)
}

/// Exterior derivative of the fundamental form on left-invariant fields:
/// `d omega(x,y,z) = (-omega([x,y],z) + omega([x,z],y) - omega([y,z],x)) / 3`.
pub fn d_omega<S: Scalar>(
    alg: &LieAlgebraSpec<S>,
    metric: &MetricSpec<S>,
    acs: &AlmostComplexSpec<S>,
    x: &Vector<S>,
    y: &Vector<S>,
    z: &Vector<S>,
) -> Result<S, GeomError> {
    let t1 = omega(metric, acs, &alg.bracket(x, y)?, z);
    let t2 = omega(metric, acs, &alg.bracket(x, z)?, y);
    let t3 = omega(metric, acs, &alg.bracket(y, z)?, x);
    Ok((t2 - t1 - t3) * S::from_ratio(1, 3))
}

/// `(nabla_x J) y = nabla_x (Jy) - J (nabla_x y)`.
pub fn nabla_j<S: Scalar>(
    conn: &ConnectionCoeffs<S>,
    acs: &AlmostComplexSpec<S>,
    x: &Vector<S>,
    y: &Vector<S>,
) -> Vector<S> {
    let t1 = conn.nabla(x, &acs.apply(y));
    let t2 = acs.apply(&conn.nabla(x, y));
    t1.sub(&t2)
}

/// True iff the Nijenhuis tensor vanishes on all basis pairs; on failure
/// returns the first nonvanishing pair.
pub fn is_integrable<S: Scalar>(
    alg: &LieAlgebraSpec<S>,
    acs: &AlmostComplexSpec<S>,
) -> (bool, Option<(usize, usize)>) {
    let dim = alg.dim();
    for i in 0..dim {
        for j in i + 1..dim {
            let n = nijenhuis(alg, acs, &Vector::basis(dim, i), &Vector::basis(dim, j))
                .expect("dims agree");
            if !n.is_zero() {
                return (false, Some((i, j)));
            }
        }
    }
    (true, None)
}

/// True iff `d omega` vanishes on all basis triples; on failure returns the
/// first nonvanishing triple.
pub fn is_almost_kahler<S: Scalar>(
    alg: &LieAlgebraSpec<S>,
    metric: &MetricSpec<S>,
    acs: &AlmostComplexSpec<S>,
) -> (bool, Option<(usize, usize, usize)>) {
    let dim = alg.dim();
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let v = d_omega(
                    alg,
                    metric,
                    acs,
                    &Vector::basis(dim, i),
                    &Vector::basis(dim, j),
                    &Vector::basis(dim, k),
                )
                .expect("dims agree");
                if !v.is_zero() {
                    return (false, Some((i, j, k)));
                }
            }
        }
    }
    (true, None)
}

/// Exact defects of an isotropy-generator candidate. A valid infinitesimal
/// isotropy element must be a derivation of the bracket, skew for the
/// metric, and commute with J; all three defects must vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotropyDefects<S> {
    pub derivation: S,
    pub metric_skewness: S,
    /// `None` when the algebra carries no almost complex structure.
    pub j_commutation: Option<S>,
}

impl<S: Scalar> IsotropyDefects<S> {
    pub fn all_zero(&self) -> bool {
        self.derivation.is_zero()
            && self.metric_skewness.is_zero()
            && self.j_commutation.as_ref().map_or(true, Zero::is_zero)
    }
}

/// Checks a candidate isotropy generator against the three structures.
pub fn isotropy_structure_check<S: Scalar>(
    alg: &LieAlgebraSpec<S>,
    metric: &MetricSpec<S>,
    acs: Option<&AlmostComplexSpec<S>>,
    d: &DerivationCandidate<S>,
) -> Result<IsotropyDefects<S>, GeomError> {
    let derivation = alg.derivation_defect(d)?;
    // max |<D E_i, E_j> + <E_i, D E_j>| = max |(D^T G + G D)_{ij}|
    let m = d.matrix();
    let metric_skewness = m
        .transpose()
        .mul_mat(metric.gram())
        .add(&metric.gram().mul_mat(m))
        .max_abs();
    let j_commutation = acs.map(|a| a.matrix().commutator(m).max_abs());
    Ok(IsotropyDefects { derivation, metric_skewness, j_commutation })
}
