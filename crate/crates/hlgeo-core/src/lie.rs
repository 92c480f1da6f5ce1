//! Lie algebra primitives: structure constants, bracket, adjoint maps,
//! Jacobi and derivation defects, Killing form, and the metric adjoint
//! `ad*` of the adjoint representation.

use std::collections::BTreeMap;

use crate::error::GeomError;
use crate::linalg::{Matrix, Vector};
use crate::metric::MetricSpec;
use crate::scalar::Scalar;

/// A finite-dimensional real Lie algebra presented by structure constants
/// in a fixed basis: `[E_i, E_j] = sum_k alpha_{ijk} E_k`.
///
/// Constants are stored sparsely for `i < j` only; the `i > j` half is
/// implied by antisymmetry, so inconsistent duplicate entries cannot be
/// expressed. Construction does not check the Jacobi identity — that is a
/// separate gate ([`LieAlgebraSpec::jacobi_defect`]) so that invalid tables
/// can still be built and diagnosed.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraSpec<S> {
    dim: usize,
    basis_labels: Vec<String>,
    alpha: BTreeMap<(usize, usize, usize), S>,
    /// Cached full bracket table, row-major over (i, j).
    table: Vec<Vector<S>>,
}

impl<S: Scalar> LieAlgebraSpec<S> {
    /// Builds an algebra from sparse structure constants.
    ///
    /// Entries are 0-based `(i, j, k) -> alpha_{ijk}` and must satisfy
    /// `i < j`; indices must lie below `dim`.
    pub fn new(
        dim: usize,
        basis_labels: Vec<String>,
        entries: impl IntoIterator<Item = ((usize, usize, usize), S)>,
    ) -> Result<Self, GeomError> {
        if dim == 0 {
            return Err(GeomError::InvalidSpec("dimension must be positive".into()));
        }
        if basis_labels.len() != dim {
            return Err(GeomError::InvalidSpec(format!(
                "expected {dim} basis labels, got {}",
                basis_labels.len()
            )));
        }
        let mut alpha = BTreeMap::new();
        for ((i, j, k), v) in entries {
            if i >= j {
                return Err(GeomError::InvalidSpec(format!(
                    "structure constant ({i},{j},{k}) must have i < j"
                )));
            }
            if j >= dim || k >= dim {
                return Err(GeomError::InvalidSpec(format!(
                    "structure constant ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            if v.is_zero() {
                continue;
            }
            if alpha.insert((i, j, k), v).is_some() {
                return Err(GeomError::InvalidSpec(format!(
                    "duplicate structure constant ({i},{j},{k})"
                )));
            }
        }

        let mut table = vec![Vector::zero(dim); dim * dim];
        for (&(i, j, k), v) in &alpha {
            table[i * dim + j][k] = v.clone();
            table[j * dim + i][k] = -v.clone();
        }
        Ok(LieAlgebraSpec { dim, basis_labels, alpha, table })
    }

    /// The abelian algebra of the given dimension.
    pub fn abelian(dim: usize, basis_labels: Vec<String>) -> Self {
        Self::new(dim, basis_labels, std::iter::empty()).expect("valid abelian spec")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis_labels[i]
    }

    /// Sparse `i < j` structure constants.
    pub fn alpha(&self) -> &BTreeMap<(usize, usize, usize), S> {
        &self.alpha
    }

    /// Full (antisymmetrized) structure constant `alpha_{ijk}`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> S {
        self.table[i * self.dim + j][k].clone()
    }

    /// `[E_i, E_j]` from the cached table, any `i, j`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector<S> {
        &self.table[i * self.dim + j]
    }

    fn check_dim(&self, v: &Vector<S>) -> Result<(), GeomError> {
        if v.dim() != self.dim {
            return Err(GeomError::DimensionMismatch { expected: self.dim, found: v.dim() });
        }
        Ok(())
    }

    /// Bilinear extension `[x, y] = sum_{i,j} x_i y_j [E_i, E_j]`.
    pub fn bracket(&self, x: &Vector<S>, y: &Vector<S>) -> Result<Vector<S>, GeomError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let mut out: Vector<S> = Vector::zero(self.dim);
        for (&(i, j, k), a) in &self.alpha {
            // expand both orientations of the sparse (i < j) entry
            let c = a.clone() * (x[i].clone() * y[j].clone() - x[j].clone() * y[i].clone());
            out[k] = out[k].clone() + c;
        }
        Ok(out)
    }

    /// Matrix of `ad_x : y -> [x, y]` in the basis.
    pub fn ad_matrix(&self, x: &Vector<S>) -> Result<Matrix<S>, GeomError> {
        self.check_dim(x)?;
        let mut m: Matrix<S> = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for i in 0..self.dim {
                if x[i].is_zero() {
                    continue;
                }
                let col = self.bracket_basis(i, j);
                for k in 0..self.dim {
                    if !col[k].is_zero() {
                        m[(k, j)] = m[(k, j)].clone() + x[i].clone() * col[k].clone();
                    }
                }
            }
        }
        Ok(m)
    }

    /// Max-norm of the worst Jacobi cyclic sum over basis triples; zero iff
    /// the bracket satisfies the Jacobi identity.
    pub fn jacobi_defect(&self) -> S {
        match self.jacobi_witness() {
            Some((_, defect)) => defect,
            None => S::zero(),
        }
    }

    /// The basis triple with the largest Jacobi defect, if any is nonzero.
    pub fn jacobi_witness(&self) -> Option<((usize, usize, usize), S)> {
        let mut worst: Option<((usize, usize, usize), S)> = None;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let mut sum = self
                        .bracket(self.bracket_basis(i, j), &Vector::basis(self.dim, k))
                        .expect("dims agree");
                    sum = sum.add(
                        &self
                            .bracket(self.bracket_basis(j, k), &Vector::basis(self.dim, i))
                            .expect("dims agree"),
                    );
                    sum = sum.add(
                        &self
                            .bracket(self.bracket_basis(k, i), &Vector::basis(self.dim, j))
                            .expect("dims agree"),
                    );
                    let defect = sum.max_abs();
                    if defect.is_zero() {
                        continue;
                    }
                    match &worst {
                        Some((_, best)) if *best >= defect => {}
                        _ => worst = Some(((i, j, k), defect)),
                    }
                }
            }
        }
        worst
    }

    /// Killing form `K_{ij} = trace(ad_{E_i} ad_{E_j})`.
    pub fn killing_form(&self) -> Matrix<S> {
        // trace(ad_i ad_j) = sum_{m,n} alpha_{i n m} alpha_{j m n}
        Matrix::from_fn(self.dim, self.dim, |i, j| {
            let mut acc = S::zero();
            for n in 0..self.dim {
                let col_in = self.bracket_basis(i, n);
                for m in 0..self.dim {
                    if col_in[m].is_zero() {
                        continue;
                    }
                    let c = self.bracket_basis(j, m)[n].clone();
                    if !c.is_zero() {
                        acc = acc + col_in[m].clone() * c;
                    }
                }
            }
            acc
        })
    }

    /// Metric adjoint of the adjoint representation: the unique `z` with
    /// `<z, w> = <y, [x, w]>` for all `w`.
    pub fn ad_star(
        &self,
        metric: &MetricSpec<S>,
        x: &Vector<S>,
        y: &Vector<S>,
    ) -> Result<Vector<S>, GeomError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        if metric.dim() != self.dim {
            return Err(GeomError::DimensionMismatch { expected: self.dim, found: metric.dim() });
        }
        let rhs = Vector::from_fn(self.dim, |k| {
            let bracket = self
                .bracket(x, &Vector::basis(self.dim, k))
                .expect("dims agree");
            metric.inner(y, &bracket)
        });
        metric
            .gram()
            .solve_vec(&rhs)
            .map_err(|_| GeomError::DegenerateMetric)
    }

    /// Max-norm defect of the Leibniz rule for a linear map `D`:
    /// `max_{i<j} |D[E_i,E_j] - [D E_i, E_j] - [E_i, D E_j]|_inf`.
    pub fn derivation_defect(&self, d: &DerivationCandidate<S>) -> Result<S, GeomError> {
        if d.matrix().n_rows() != self.dim || d.matrix().n_cols() != self.dim {
            return Err(GeomError::DimensionMismatch {
                expected: self.dim,
                found: d.matrix().n_rows(),
            });
        }
        let m = d.matrix();
        let mut worst = S::zero();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let lhs = m.mul_vec(self.bracket_basis(i, j));
                let t1 = self.bracket(&m.col(i), &Vector::basis(self.dim, j))?;
                let t2 = self.bracket(&Vector::basis(self.dim, i), &m.col(j))?;
                let defect = lhs.sub(&t1).sub(&t2).max_abs();
                if defect > worst {
                    worst = defect;
                }
            }
        }
        Ok(worst)
    }

    /// Converts the scalar type (used to lower the exact catalog to `f64`
    /// for the integrator).
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LieAlgebraSpec<T> {
        LieAlgebraSpec::new(
            self.dim,
            self.basis_labels.clone(),
            self.alpha.iter().map(|(&k, v)| (k, f(v))),
        )
        .expect("valid spec stays valid under scalar conversion")
    }
}

/// A linear map on the algebra, tested for being a derivation (the
/// infinitesimal form of an automorphism).
#[derive(Debug, Clone, PartialEq)]
pub struct DerivationCandidate<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> DerivationCandidate<S> {
    pub fn new(matrix: Matrix<S>) -> Result<Self, GeomError> {
        if !matrix.is_square() {
            return Err(GeomError::InvalidSpec("derivation candidate must be square".into()));
        }
        Ok(DerivationCandidate { matrix })
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.n_rows()
    }
}
