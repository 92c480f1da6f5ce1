//! The built-in homogeneous spaces: the four almost Hermite-Lorentz groups
//! of the classification, the rank-one split form with its bi-invariant
//! metric, and the flat abelian control case.
//!
//! Structure constants are derived from the matrix and semidirect/nilpotent
//! constructions, never transcribed from the published tables; the tables
//! serve as oracles, routed through the discrepancy ledger so that the
//! handful of misprints in them are recorded rather than silently adopted.

use std::fmt;

use num_traits::Zero;

use crate::error::GeomError;
use crate::hermitian::AlmostComplexSpec;
use crate::lie::{DerivationCandidate, LieAlgebraSpec};
use crate::linalg::{Matrix, Vector};
use crate::metric::MetricSpec;
use crate::scalar::{rat, rint, Rational};

/// Identifiers of the built-in algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogName {
    /// Product of two copies of the rank-one split form with the product
    /// anti-de Sitter metric.
    Sl2xSl2,
    /// Complexification of the split form, with the Ad-invariant
    /// Hermite-Lorentz metric.
    Sl2C,
    /// Semidirect product with the 3-dimensional irreducible representation.
    Sl2SemidirectR3,
    /// The 2-step nilpotent algebra built on the split-form bracket.
    NSl2,
    /// The split form itself with its bi-invariant Lorentz metric.
    Sl2rBiinvariant,
    /// Abelian 6-dimensional control case; everything vanishes.
    FlatC3,
}

impl CatalogName {
    pub const ALL: [CatalogName; 6] = [
        CatalogName::Sl2xSl2,
        CatalogName::Sl2C,
        CatalogName::Sl2SemidirectR3,
        CatalogName::NSl2,
        CatalogName::Sl2rBiinvariant,
        CatalogName::FlatC3,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogName::Sl2xSl2 => "sl2_x_sl2",
            CatalogName::Sl2C => "sl2_c",
            CatalogName::Sl2SemidirectR3 => "sl2_semidirect_r3",
            CatalogName::NSl2 => "n_sl2",
            CatalogName::Sl2rBiinvariant => "sl2r_biinvariant",
            CatalogName::FlatC3 => "flat_c3",
        }
    }

    pub fn parse(s: &str) -> Result<CatalogName, GeomError> {
        Self::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| GeomError::UnknownAlgebra(s.to_string()))
    }

    pub fn description(&self) -> &'static str {
        match self {
            CatalogName::Sl2xSl2 => "SL(2,R) x SL(2,R) with the product anti-de Sitter metric",
            CatalogName::Sl2C => "SL(2,C) as the complexified split form, Ad-invariant metric",
            CatalogName::Sl2SemidirectR3 => "SL(2,R) |x R^3 via the adjoint representation",
            CatalogName::NSl2 => "2-step nilpotent algebra on sl(2,R) + sl(2,R)",
            CatalogName::Sl2rBiinvariant => "SL(2,R) with its bi-invariant Lorentz metric (AdS_3)",
            CatalogName::FlatC3 => "abelian R^6 = C^3, flat control case",
        }
    }

    /// Anchor of the published table this entry is checked against.
    pub fn section(&self) -> &'static str {
        match self {
            CatalogName::Sl2xSl2 => "§6.1",
            CatalogName::Sl2C => "§6.2",
            CatalogName::Sl2SemidirectR3 => "§6.3",
            CatalogName::NSl2 => "§6.4",
            CatalogName::Sl2rBiinvariant => "§6",
            CatalogName::FlatC3 => "§1",
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A fully-specified left-invariant almost Hermite-Lorentz structure: the
/// algebra, the metric, the (optional) almost complex structure, and the
/// three infinitesimal isotropy generators.
#[derive(Debug, Clone)]
pub struct HomogeneousSpaceSpec {
    pub name: String,
    pub alg: LieAlgebraSpec<Rational>,
    pub metric: MetricSpec<Rational>,
    pub acs: Option<AlmostComplexSpec<Rational>>,
    pub isotropy: Vec<DerivationCandidate<Rational>>,
    pub notes: Vec<String>,
}

// --- the split form sl(2,R) realized by 2x2 matrices ------------------------

/// `X1 = diag(1,-1)`, `X2 = offdiag(1,1)`, `X3 = offdiag(1,-1)`.
fn split_form_basis() -> [Matrix<Rational>; 3] {
    [
        Matrix::from_rows(vec![vec![rint(1), rint(0)], vec![rint(0), rint(-1)]]),
        Matrix::from_rows(vec![vec![rint(0), rint(1)], vec![rint(1), rint(0)]]),
        Matrix::from_rows(vec![vec![rint(0), rint(1)], vec![rint(-1), rint(0)]]),
    ]
}

/// Coordinates of a traceless 2x2 matrix in the `X1, X2, X3` basis.
fn decompose_split(m: &Matrix<Rational>) -> Vector<Rational> {
    let a = m[(0, 0)].clone();
    let b = (m[(0, 1)].clone() + m[(1, 0)].clone()) * rat(1, 2);
    let c = (m[(0, 1)].clone() - m[(1, 0)].clone()) * rat(1, 2);
    debug_assert!(m[(1, 1)].clone() + a.clone() == rint(0), "matrix not traceless");
    Vector::new(vec![a, b, c])
}

/// `<A, B> = trace(AB) / 2`, the Lorentz form making `X1, X2, X3`
/// orthonormal with `X3` timelike.
fn half_trace_form(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Rational {
    a.mul_mat(b).trace() * rat(1, 2)
}

/// Structure constants of the split form: `sc[i][j]` = coords of `[X_i, X_j]`.
fn split_form_brackets() -> Vec<Vec<Vector<Rational>>> {
    let x = split_form_basis();
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| decompose_split(&x[i].commutator(&x[j])))
                .collect()
        })
        .collect()
}

/// Matrix of `ad_{X_a}` on the split form in the `X` basis.
fn split_form_ad(a: usize) -> Matrix<Rational> {
    let sc = split_form_brackets();
    Matrix::from_fn(3, 3, |k, j| sc[a][j][k].clone())
}

fn labels_e(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("E{i}")).collect()
}

fn sparse_entries(
    table: &dyn Fn(usize, usize) -> Vector<Rational>,
    dim: usize,
) -> Vec<((usize, usize, usize), Rational)> {
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let v = table(i, j);
            for k in 0..dim {
                if !v[k].is_zero() {
                    entries.push(((i, j, k), v[k].clone()));
                }
            }
        }
    }
    entries
}

/// Block-diagonal `ad_{X_a} + ad_{X_a}`, the isotropy generators shared by
/// all the 6-dimensional catalog entries.
fn block_isotropy() -> Vec<DerivationCandidate<Rational>> {
    (0..3)
        .map(|a| {
            let ad = split_form_ad(a);
            let m = Matrix::from_fn(6, 6, |r, c| {
                if r < 3 && c < 3 {
                    ad[(r, c)].clone()
                } else if r >= 3 && c >= 3 {
                    ad[(r - 3, c - 3)].clone()
                } else {
                    rint(0)
                }
            });
            DerivationCandidate::new(m).expect("square")
        })
        .collect()
}

fn orthonormal_from_gram(gram: Matrix<Rational>) -> MetricSpec<Rational> {
    let metric = MetricSpec::general(gram).expect("symmetric Gram");
    assert!(
        metric.is_orthonormal(),
        "catalog construction must yield an orthonormal basis"
    );
    metric
}

/// Complex 2x2 matrices as (real, imaginary) rational parts; just enough
/// arithmetic to derive the complexified bracket table.
#[derive(Clone)]
struct C2x2 {
    re: Matrix<Rational>,
    im: Matrix<Rational>,
}

impl C2x2 {
    fn real(m: Matrix<Rational>) -> Self {
        C2x2 { im: Matrix::zeros(2, 2), re: m }
    }

    fn imaginary(m: Matrix<Rational>) -> Self {
        C2x2 { re: Matrix::zeros(2, 2), im: m }
    }

    fn commutator(&self, other: &Self) -> Self {
        // (A + iB)(C + iD) = (AC - BD) + i(AD + BC)
        let mul = |a: &Self, b: &Self| C2x2 {
            re: a.re.mul_mat(&b.re).sub(&a.im.mul_mat(&b.im)),
            im: a.re.mul_mat(&b.im).add(&a.im.mul_mat(&b.re)),
        };
        let ab = mul(self, other);
        let ba = mul(other, self);
        C2x2 { re: ab.re.sub(&ba.re), im: ab.im.sub(&ba.im) }
    }
}

// --- the six constructions ---------------------------------------------------

fn build_sl2_x_sl2() -> HomogeneousSpaceSpec {
    let sc = split_form_brackets();
    let table = |i: usize, j: usize| -> Vector<Rational> {
        let mut v = Vector::zero(6);
        if i < 3 && j < 3 {
            for k in 0..3 {
                v[k] = sc[i][j][k].clone();
            }
        } else if i >= 3 && j >= 3 {
            for k in 0..3 {
                v[k + 3] = sc[i - 3][j - 3][k].clone();
            }
        }
        v
    };
    let alg = LieAlgebraSpec::new(6, labels_e(6), sparse_entries(&table, 6)).expect("valid");
    let x = split_form_basis();
    let gram = Matrix::from_fn(6, 6, |i, j| {
        if i < 3 && j < 3 {
            half_trace_form(&x[i], &x[j])
        } else if i >= 3 && j >= 3 {
            half_trace_form(&x[i - 3], &x[j - 3])
        } else {
            rint(0)
        }
    });
    HomogeneousSpaceSpec {
        name: CatalogName::Sl2xSl2.as_str().into(),
        alg,
        metric: orthonormal_from_gram(gram),
        acs: Some(AlmostComplexSpec::standard_block(6)),
        isotropy: block_isotropy(),
        notes: vec![
            "direct sum of two split forms; metric is the product of the half-trace forms".into(),
        ],
    }
}

fn build_sl2_c() -> HomogeneousSpaceSpec {
    let x = split_form_basis();
    let e: Vec<C2x2> = (0..6)
        .map(|i| {
            if i < 3 {
                C2x2::real(x[i].clone())
            } else {
                C2x2::imaginary(x[i - 3].clone())
            }
        })
        .collect();
    let table = |i: usize, j: usize| -> Vector<Rational> {
        let c = e[i].commutator(&e[j]);
        let re = decompose_split(&c.re);
        let im = decompose_split(&c.im);
        Vector::from_fn(6, |k| if k < 3 { re[k].clone() } else { im[k - 3].clone() })
    };
    let alg = LieAlgebraSpec::new(6, labels_e(6), sparse_entries(&table, 6)).expect("valid");
    // real part of the sesquilinear extension of the half-trace form:
    // <A + iB, C + iD> = <A,C> + <B,D>
    let gram = Matrix::from_fn(6, 6, |i, j| {
        half_trace_form(&e[i].re, &e[j].re) + half_trace_form(&e[i].im, &e[j].im)
    });
    HomogeneousSpaceSpec {
        name: CatalogName::Sl2C.as_str().into(),
        alg,
        metric: orthonormal_from_gram(gram),
        acs: Some(AlmostComplexSpec::standard_block(6)),
        isotropy: block_isotropy(),
        notes: vec![
            "complexification of the split form; bracket derived from complex matrix commutators"
                .into(),
        ],
    }
}

fn build_sl2_semidirect_r3() -> HomogeneousSpaceSpec {
    let sc = split_form_brackets();
    // R^3 carries the adjoint representation; e_a corresponds to X_a
    let table = |i: usize, j: usize| -> Vector<Rational> {
        let mut v = Vector::zero(6);
        if i < 3 && j < 3 {
            for k in 0..3 {
                v[k] = sc[i][j][k].clone();
            }
        } else if i < 3 && j >= 3 {
            for k in 0..3 {
                v[k + 3] = sc[i][j - 3][k].clone();
            }
        } else if i >= 3 && j < 3 {
            for k in 0..3 {
                v[k + 3] = -sc[j][i - 3][k].clone();
            }
        }
        v
    };
    let alg = LieAlgebraSpec::new(6, labels_e(6), sparse_entries(&table, 6)).expect("valid");
    let x = split_form_basis();
    // translations carry the standard Lorentz form with e_3 timelike
    let eps3 = [rint(1), rint(1), rint(-1)];
    let gram = Matrix::from_fn(6, 6, |i, j| {
        if i < 3 && j < 3 {
            half_trace_form(&x[i], &x[j])
        } else if i >= 3 && j >= 3 {
            if i == j {
                eps3[i - 3].clone()
            } else {
                rint(0)
            }
        } else {
            rint(0)
        }
    });
    HomogeneousSpaceSpec {
        name: CatalogName::Sl2SemidirectR3.as_str().into(),
        alg,
        metric: orthonormal_from_gram(gram),
        acs: Some(AlmostComplexSpec::standard_block(6)),
        isotropy: block_isotropy(),
        notes: vec!["semidirect product through the adjoint representation on R^3".into()],
    }
}

fn build_n_sl2() -> HomogeneousSpaceSpec {
    let sc = split_form_brackets();
    // [(u, u'), (v, v')] = (0, b(u, v)) with b the split-form bracket
    let table = |i: usize, j: usize| -> Vector<Rational> {
        let mut v = Vector::zero(6);
        if i < 3 && j < 3 {
            for k in 0..3 {
                v[k + 3] = sc[i][j][k].clone();
            }
        }
        v
    };
    let alg = LieAlgebraSpec::new(6, labels_e(6), sparse_entries(&table, 6)).expect("valid");
    let x = split_form_basis();
    let gram = Matrix::from_fn(6, 6, |i, j| {
        if i < 3 && j < 3 {
            half_trace_form(&x[i], &x[j])
        } else if i >= 3 && j >= 3 {
            half_trace_form(&x[i - 3], &x[j - 3])
        } else {
            rint(0)
        }
    });
    HomogeneousSpaceSpec {
        name: CatalogName::NSl2.as_str().into(),
        alg,
        metric: orthonormal_from_gram(gram),
        acs: Some(AlmostComplexSpec::standard_block(6)),
        isotropy: block_isotropy(),
        notes: vec!["2-step nilpotent: bracket lands in the central copy".into()],
    }
}

fn build_sl2r_biinvariant() -> HomogeneousSpaceSpec {
    let sc = split_form_brackets();
    let table = |i: usize, j: usize| sc[i][j].clone();
    let labels: Vec<String> = (1..=3).map(|i| format!("X{i}")).collect();
    let alg = LieAlgebraSpec::new(3, labels, sparse_entries(&table, 3)).expect("valid");
    let x = split_form_basis();
    let gram = Matrix::from_fn(3, 3, |i, j| half_trace_form(&x[i], &x[j]));
    let isotropy = (0..3)
        .map(|a| DerivationCandidate::new(split_form_ad(a)).expect("square"))
        .collect();
    HomogeneousSpaceSpec {
        name: CatalogName::Sl2rBiinvariant.as_str().into(),
        alg,
        metric: orthonormal_from_gram(gram),
        acs: None,
        isotropy,
        notes: vec!["bi-invariant half-trace form; constant curvature -1".into()],
    }
}

fn build_flat_c3() -> HomogeneousSpaceSpec {
    let alg = LieAlgebraSpec::abelian(6, labels_e(6));
    let metric = MetricSpec::orthonormal_signs(&[1, 1, -1, 1, 1, -1]).expect("signs");
    HomogeneousSpaceSpec {
        name: CatalogName::FlatC3.as_str().into(),
        alg,
        metric,
        acs: Some(AlmostComplexSpec::standard_block(6)),
        isotropy: block_isotropy(),
        notes: vec!["abelian control case; every tensor vanishes".into()],
    }
}

/// Builds a catalog entry. All data is derived from the constructions at
/// call time; nothing is transcribed from the published tables.
pub fn build(name: CatalogName) -> HomogeneousSpaceSpec {
    match name {
        CatalogName::Sl2xSl2 => build_sl2_x_sl2(),
        CatalogName::Sl2C => build_sl2_c(),
        CatalogName::Sl2SemidirectR3 => build_sl2_semidirect_r3(),
        CatalogName::NSl2 => build_n_sl2(),
        CatalogName::Sl2rBiinvariant => build_sl2r_biinvariant(),
        CatalogName::FlatC3 => build_flat_c3(),
    }
}

/// Builds a catalog entry by its string name.
pub fn build_by_name(name: &str) -> Result<HomogeneousSpaceSpec, GeomError> {
    Ok(build(CatalogName::parse(name)?))
}

// --- validity gates ----------------------------------------------------------

/// A violated validity gate, with enough detail to name the invariant and a
/// witness in diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub enum ValidationFailure {
    Jacobi { witness: (usize, usize, usize), defect: Rational },
    DegenerateGram,
    JSquare { defect: Rational },
    JCompatibility { defect: Rational },
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::Jacobi { witness: (i, j, k), defect } => write!(
                f,
                "jacobi_defect is nonzero: witness triple (E{}, E{}, E{}), defect {}",
                i + 1,
                j + 1,
                k + 1,
                defect
            ),
            ValidationFailure::DegenerateGram => {
                write!(f, "gram matrix is degenerate (determinant 0)")
            }
            ValidationFailure::JSquare { defect } => {
                write!(f, "J^2 + I is nonzero: max-norm defect {defect}")
            }
            ValidationFailure::JCompatibility { defect } => write!(
                f,
                "J is not compatible with the metric: max-norm defect {defect} in J^T G J - G"
            ),
        }
    }
}

/// Runs the validity gates on a spec: Jacobi identity, nondegenerate Gram,
/// `J^2 = -I`, and metric compatibility of `J`.
pub fn validate(spec: &HomogeneousSpaceSpec) -> Result<(), ValidationFailure> {
    if let Some((witness, defect)) = spec.alg.jacobi_witness() {
        return Err(ValidationFailure::Jacobi { witness, defect });
    }
    if !spec.metric.is_nondegenerate() {
        return Err(ValidationFailure::DegenerateGram);
    }
    if let Some(acs) = &spec.acs {
        let d = acs.square_defect();
        if !d.is_zero() {
            return Err(ValidationFailure::JSquare { defect: d });
        }
        let d = acs.compatibility_defect(&spec.metric);
        if !d.is_zero() {
            return Err(ValidationFailure::JCompatibility { defect: d });
        }
    }
    Ok(())
}
