//! Geodesic flow of a left-invariant metric, reduced to the algebra:
//! `xdot = ad*_x x`, integrated with classical fixed-step RK4.
//!
//! The reduction is quadratic with constant coefficients, so the right-hand
//! side is precomputed once (exactly, then lowered to `f64`) as a sparse
//! quadratic form. Two invariants are monitored along every trajectory: the
//! energy `<x, x>` and a Casimir-type quadratic form built from the Killing
//! form (`kappa(Ax, Ax)` when the Killing form is nondegenerate, `kappa(x,x)`
//! otherwise, which is still conserved and degenerates gracefully to zero on
//! the nilpotent and abelian entries).

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::catalog::CatalogName;
use crate::error::GeomError;
use crate::lie::LieAlgebraSpec;
use crate::linalg::{Matrix, Vector};
use crate::metric::MetricSpec;
use crate::scalar::{rational_to_f64, Rational, Scalar};

/// Coordinates above this threshold count as a blow-up: the completeness
/// statement is about the absence of finite-time escape, and a fixed desk-
/// scale threshold turns escape into a reportable event.
pub const BLOWUP_THRESHOLD: f64 = 1e12;

/// Seed for the randomized part of the default probe grid.
pub const PROBE_GRID_SEED: u64 = 0x484c_4745_4f31;

/// Right-hand side of the reduced geodesic equation for one metric algebra,
/// as an exact quadratic form lowered to `f64`.
#[derive(Debug, Clone)]
pub struct EulerArnoldSystem {
    dim: usize,
    /// Sparse entries `(k, i, j, q)` with `rhs_k = sum q * x_i * x_j`.
    quad: Vec<(usize, usize, usize, f64)>,
    gram: Matrix<f64>,
    casimir: Matrix<f64>,
}

impl EulerArnoldSystem {
    /// Precomputes the quadratic form `rhs_k(x) = (G^{-1})_{km} <x, [x, E_m]>`
    /// in exact arithmetic before lowering to `f64`.
    pub fn new(
        alg: &LieAlgebraSpec<Rational>,
        metric: &MetricSpec<Rational>,
    ) -> Result<Self, GeomError> {
        let dim = alg.dim();
        if metric.dim() != dim {
            return Err(GeomError::DimensionMismatch { expected: dim, found: metric.dim() });
        }
        let ginv = metric
            .gram()
            .inverse()
            .map_err(|_| GeomError::DegenerateMetric)?;

        // <E_i, [E_j, E_m]> summed against G^{-1}
        let mut quad = Vec::new();
        for k in 0..dim {
            for i in 0..dim {
                for j in 0..dim {
                    let mut acc = Rational::zero();
                    for m in 0..dim {
                        let b = alg.bracket_basis(j, m);
                        if b.is_zero() {
                            continue;
                        }
                        let inner = metric.inner(&Vector::basis(dim, i), b);
                        if !inner.is_zero() {
                            acc = acc + ginv[(k, m)].clone() * inner;
                        }
                    }
                    if !acc.is_zero() {
                        quad.push((k, i, j, rational_to_f64(&acc)));
                    }
                }
            }
        }

        let killing = alg.killing_form();
        let casimir = if killing.determinant().is_zero() {
            // degenerate Killing form: kappa(x, x) is still conserved
            // (it vanishes identically in the nilpotent and abelian cases)
            killing.map(rational_to_f64)
        } else {
            // kappa(Ax, Ax) with A = kappa^{-1} G; the matrix is A^T G
            let a = killing.solve_mat(metric.gram()).expect("nondegenerate");
            a.transpose().mul_mat(metric.gram()).map(rational_to_f64)
        };

        Ok(EulerArnoldSystem {
            dim,
            quad,
            gram: metric.gram().map(rational_to_f64),
            casimir,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn rhs_into(&self, x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for &(k, i, j, q) in &self.quad {
            out[k] += q * x[i] * x[j];
        }
    }

    pub fn rhs(&self, x: &Vector<f64>) -> Vector<f64> {
        let mut out = vec![0.0; self.dim];
        self.rhs_into(x.coords(), &mut out);
        Vector::new(out)
    }

    pub fn energy(&self, x: &[f64]) -> f64 {
        quadratic(&self.gram, x)
    }

    pub fn casimir(&self, x: &[f64]) -> f64 {
        quadratic(&self.casimir, x)
    }
}

fn quadratic(m: &Matrix<f64>, x: &[f64]) -> f64 {
    let n = x.len();
    let mut acc = 0.0;
    for i in 0..n {
        if x[i] == 0.0 {
            continue;
        }
        for j in 0..n {
            let c = m[(i, j)];
            if c != 0.0 {
                acc += x[i] * c * x[j];
            }
        }
    }
    acc
}

/// `ad*_x x`, the reduced geodesic right-hand side, in exact arithmetic.
pub fn euler_arnold_rhs<S: Scalar>(
    alg: &LieAlgebraSpec<S>,
    metric: &MetricSpec<S>,
    x: &Vector<S>,
) -> Result<Vector<S>, GeomError> {
    alg.ad_star(metric, x, x)
}

/// A self-adjoint isomorphism realizing a metric through the Killing form:
/// `<x, y> = kappa(x, A y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AOperator<S> {
    a: Matrix<S>,
}

impl<S: Scalar> AOperator<S> {
    /// Wraps a candidate operator, checking invertibility and self-adjointness
    /// with respect to the Killing form.
    pub fn new(alg: &LieAlgebraSpec<S>, a: Matrix<S>) -> Result<Self, GeomError> {
        if !a.is_square() || a.n_rows() != alg.dim() {
            return Err(GeomError::DimensionMismatch { expected: alg.dim(), found: a.n_rows() });
        }
        if a.determinant().is_zero() {
            return Err(GeomError::SingularMatrix);
        }
        let k = alg.killing_form();
        // kappa(Ax, y) = kappa(x, Ay)  <=>  A^T K = K A
        if a.transpose().mul_mat(&k) != k.mul_mat(&a) {
            return Err(GeomError::InvalidSpec(
                "operator is not self-adjoint for the Killing form".into(),
            ));
        }
        Ok(AOperator { a })
    }

    /// Derives the operator from a metric: `A = kappa^{-1} G`. Requires a
    /// nondegenerate Killing form (semisimple algebra).
    pub fn from_metric(
        alg: &LieAlgebraSpec<S>,
        metric: &MetricSpec<S>,
    ) -> Result<Self, GeomError> {
        let k = alg.killing_form();
        let a = k
            .solve_mat(metric.gram())
            .map_err(|_| GeomError::DegenerateKillingForm)?;
        Self::new(alg, a)
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.a
    }
}

/// The geodesic right-hand side in A-operator form: `A^{-1} [A x, x]`.
///
/// Agrees exactly with [`euler_arnold_rhs`] whenever `A` realizes the metric.
pub fn rhs_via_a<S: Scalar>(
    alg: &LieAlgebraSpec<S>,
    a: &AOperator<S>,
    x: &Vector<S>,
) -> Result<Vector<S>, GeomError> {
    let ax = a.matrix().mul_vec(x);
    let bracket = alg.bracket(&ax, x)?;
    a.matrix().solve_vec(&bracket)
}

/// One recorded point of a trajectory.
#[derive(Debug, Clone)]
pub struct GeodesicState {
    pub t: f64,
    pub x: Vector<f64>,
}

/// A fixed-step trajectory with conserved-quantity traces at the recorded
/// states. Drift maxima are tracked over *every* step, not just recorded
/// ones, so a large recording stride does not hide transients.
#[derive(Debug, Clone)]
pub struct GeodesicTrajectory {
    pub states: Vec<GeodesicState>,
    pub energy_trace: Vec<f64>,
    pub casimir_trace: Vec<f64>,
    pub step: f64,
    pub max_energy_drift: f64,
    pub max_casimir_drift: f64,
    pub max_coord: f64,
}

impl GeodesicTrajectory {
    pub fn final_state(&self) -> &GeodesicState {
        self.states.last().expect("at least the initial state")
    }
}

/// Integration stopped because a coordinate left the trusted range.
#[derive(Debug, Clone, Error)]
#[error("blow-up detected at t = {t}: coordinate magnitude {magnitude:e} (threshold {threshold:e})")]
pub struct BlowupDetected {
    pub t: f64,
    pub magnitude: f64,
    pub threshold: f64,
    /// Everything recorded up to and including the last good state.
    pub partial: Box<GeodesicTrajectory>,
}

/// Classical RK4 on `xdot = ad*_x x` with recording stride `stride`
/// (the final state is always recorded).
pub fn integrate_rk4(
    system: &EulerArnoldSystem,
    x0: &Vector<f64>,
    t_end: f64,
    dt: f64,
    stride: usize,
) -> Result<GeodesicTrajectory, BlowupDetected> {
    assert!(dt > 0.0, "dt must be positive");
    assert!(t_end > 0.0, "t_end must be positive");
    assert!(stride > 0, "stride must be positive");
    assert_eq!(x0.dim(), system.dim(), "initial condition dimension mismatch");

    let dim = system.dim();
    let n_steps = (t_end / dt).round() as usize;
    let e0 = system.energy(x0.coords());
    let c0 = system.casimir(x0.coords());

    let mut traj = GeodesicTrajectory {
        states: vec![GeodesicState { t: 0.0, x: x0.clone() }],
        energy_trace: vec![e0],
        casimir_trace: vec![c0],
        step: dt,
        max_energy_drift: 0.0,
        max_casimir_drift: 0.0,
        max_coord: x0.coords().iter().fold(0.0, |m, c| m.max(c.abs())),
    };

    let mut x: Vec<f64> = x0.coords().to_vec();
    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];

    for step in 1..=n_steps {
        system.rhs_into(&x, &mut k1);
        for i in 0..dim {
            tmp[i] = x[i] + 0.5 * dt * k1[i];
        }
        system.rhs_into(&tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = x[i] + 0.5 * dt * k2[i];
        }
        system.rhs_into(&tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = x[i] + dt * k3[i];
        }
        system.rhs_into(&tmp, &mut k4);
        for i in 0..dim {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let t = step as f64 * dt;

        let mag = x.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if !mag.is_finite() || mag > BLOWUP_THRESHOLD {
            let last = traj.final_state().t;
            return Err(BlowupDetected {
                t: last,
                magnitude: mag,
                threshold: BLOWUP_THRESHOLD,
                partial: Box::new(traj),
            });
        }
        traj.max_coord = traj.max_coord.max(mag);
        traj.max_energy_drift = traj.max_energy_drift.max((system.energy(&x) - e0).abs());
        traj.max_casimir_drift = traj.max_casimir_drift.max((system.casimir(&x) - c0).abs());

        if step % stride == 0 || step == n_steps {
            traj.states.push(GeodesicState { t, x: Vector::new(x.clone()) });
            traj.energy_trace.push(system.energy(&x));
            traj.casimir_trace.push(system.casimir(&x));
        }
    }
    Ok(traj)
}

/// Dense matrix exponential by scaling-and-squaring with a Taylor series
/// truncated at machine precision. Sized for the small matrices here.
pub fn expm(m: &Matrix<f64>) -> Matrix<f64> {
    assert!(m.is_square());
    let n = m.n_rows();
    let norm = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)].abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scale = (2.0f64).powi(s as i32);
    let scaled = m.map(|c| c / scale);

    let mut result = Matrix::<f64>::identity(n);
    let mut term = Matrix::<f64>::identity(n);
    for k in 1..60 {
        term = term.mul_mat(&scaled).scale(&(1.0 / k as f64));
        result = result.add(&term);
        if term.max_abs() < f64::EPSILON {
            break;
        }
    }
    for _ in 0..s {
        result = result.mul_mat(&result);
    }
    result
}

/// Closed-form solution of the split system `udot = 0, vdot = 2 [v, u]` for
/// the complexification of a semisimple algebra `p`:
/// `(u(t), v(t)) = (u0, exp(-2 t ad_{u0}) v0)`.
pub fn closed_form_complexified(
    p_alg: &LieAlgebraSpec<f64>,
    u0: &Vector<f64>,
    v0: &Vector<f64>,
    t: f64,
) -> (Vector<f64>, Vector<f64>) {
    let ad = p_alg.ad_matrix(u0).expect("dimension of u0 matches p");
    let flow = expm(&ad.scale(&(-2.0 * t)));
    (u0.clone(), flow.mul_vec(v0))
}

/// Growth classification of a trajectory's sup-norm history.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthClass {
    Bounded,
    Polynomial,
    Exponential,
}

impl GrowthClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            GrowthClass::Bounded => "bounded",
            GrowthClass::Polynomial => "polynomial",
            GrowthClass::Exponential => "exponential",
        }
    }
}

/// Classifies growth from recorded states: bounded if the norm never
/// exceeds 4x its initial value; otherwise compares least-squares fits of
/// `log |x|` against `t` (exponential) and against `log t` (polynomial) on
/// the second half of the trajectory.
pub fn classify_growth(traj: &GeodesicTrajectory) -> GrowthClass {
    let norms: Vec<(f64, f64)> = traj
        .states
        .iter()
        .map(|s| {
            let n = s.x.coords().iter().fold(0.0f64, |m, c| m.max(c.abs()));
            (s.t, n)
        })
        .collect();
    let initial = norms.first().map_or(0.0, |&(_, n)| n).max(1e-300);
    let peak = norms.iter().fold(0.0f64, |m, &(_, n)| m.max(n));
    if peak <= 4.0 * initial {
        return GrowthClass::Bounded;
    }
    let tail: Vec<(f64, f64)> = norms
        .iter()
        .skip(norms.len() / 2)
        .filter(|&&(t, n)| t > 0.0 && n > 0.0)
        .map(|&(t, n)| (t, n.ln()))
        .collect();
    if tail.len() < 3 {
        return GrowthClass::Polynomial;
    }
    let r2 = |xs: &[f64], ys: &[f64]| -> f64 {
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let mut sxy = 0.0;
        let mut sxx = 0.0;
        let mut syy = 0.0;
        for (x, y) in xs.iter().zip(ys) {
            sxy += (x - mx) * (y - my);
            sxx += (x - mx) * (x - mx);
            syy += (y - my) * (y - my);
        }
        if sxx == 0.0 || syy == 0.0 {
            return 0.0;
        }
        (sxy * sxy) / (sxx * syy)
    };
    let ts: Vec<f64> = tail.iter().map(|&(t, _)| t).collect();
    let log_ts: Vec<f64> = tail.iter().map(|&(t, _)| t.ln()).collect();
    let log_ns: Vec<f64> = tail.iter().map(|&(_, n)| n).collect();
    if r2(&ts, &log_ns) >= r2(&log_ts, &log_ns) {
        GrowthClass::Exponential
    } else {
        GrowthClass::Polynomial
    }
}

/// Per-trajectory outcome of a completeness probe.
#[derive(Debug, Clone)]
pub struct ProbeTrajectory {
    pub initial: Vector<f64>,
    pub max_norm: f64,
    pub growth: GrowthClass,
    pub blew_up: bool,
    pub blowup_t: Option<f64>,
    pub energy_drift: f64,
    pub casimir_drift: f64,
}

/// Aggregate report of a completeness probe over a grid of initial
/// conditions. Evidence, not proof: a clean probe (no blow-ups, conserved
/// traces bounded) is consistent with completeness.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub t_end: f64,
    pub dt: f64,
    pub trajectories: Vec<ProbeTrajectory>,
}

impl ProbeReport {
    pub fn blowup_count(&self) -> usize {
        self.trajectories.iter().filter(|t| t.blew_up).count()
    }

    pub fn class_count(&self, class: GrowthClass) -> usize {
        self.trajectories.iter().filter(|t| t.growth == class).count()
    }
}

/// Integrates each initial condition in the grid and classifies the outcome.
/// Deterministic: the report order is the grid order.
pub fn completeness_probe(
    system: &EulerArnoldSystem,
    grid: &[Vector<f64>],
    t_end: f64,
    dt: f64,
) -> ProbeReport {
    let stride = ((t_end / dt) as usize / 256).max(1);
    let trajectories = grid
        .iter()
        .map(|x0| match integrate_rk4(system, x0, t_end, dt, stride) {
            Ok(traj) => ProbeTrajectory {
                initial: x0.clone(),
                max_norm: traj.max_coord,
                growth: classify_growth(&traj),
                blew_up: false,
                blowup_t: None,
                energy_drift: traj.max_energy_drift,
                casimir_drift: traj.max_casimir_drift,
            },
            Err(blowup) => ProbeTrajectory {
                initial: x0.clone(),
                max_norm: blowup.partial.max_coord,
                growth: GrowthClass::Exponential,
                blew_up: true,
                blowup_t: Some(blowup.t),
                energy_drift: blowup.partial.max_energy_drift,
                casimir_drift: blowup.partial.max_casimir_drift,
            },
        })
        .collect();
    ProbeReport { t_end, dt, trajectories }
}

/// The documented default probe grid: all signed basis vectors, every
/// all-entries-in-{-1,+1} pattern, and `n_random` seeded random points with
/// coordinates uniform in [-1, 1).
pub fn default_probe_grid(dim: usize, n_random: usize) -> Vec<Vector<f64>> {
    let mut grid = Vec::new();
    for i in 0..dim {
        grid.push(Vector::basis(dim, i));
        grid.push(Vector::<f64>::basis(dim, i).neg());
    }
    for mask in 0..(1u32 << dim) {
        let v = Vector::from_fn(dim, |i| if mask & (1 << i) != 0 { -1.0 } else { 1.0 });
        grid.push(v);
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(PROBE_GRID_SEED);
    for _ in 0..n_random {
        let coords: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        grid.push(Vector::new(coords));
    }
    grid
}

/// A 32-point deterministic grid per catalog algebra on which every
/// trajectory stays in the bounded regime, so conservation can be checked
/// over long horizons at tight absolute tolerances.
///
/// For the complexified and semidirect entries the driving component is the
/// first block; timelike or zero choices there give rotations. For the
/// 2-step nilpotent entry the roles flip: the central block drives, so it is
/// chosen timelike or zero. The remaining block runs over eight sign
/// patterns.
pub fn conservation_grid(name: CatalogName) -> Vec<Vector<f64>> {
    let drivers: [Vec<f64>; 4] = [
        vec![0.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![0.0, 0.0, -1.0],
        vec![0.0, 0.0, 0.5],
    ];
    let passengers: [Vec<f64>; 8] = [
        vec![1.0, 0.0, 0.0],
        vec![-1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, -1.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![0.0, 0.0, -1.0],
        vec![1.0, 1.0, 0.0],
        vec![1.0, -1.0, 0.0],
    ];
    let mut grid = Vec::with_capacity(32);
    for (di, d) in drivers.iter().enumerate() {
        for p in &passengers {
            let v = match name {
                // the central block (coordinates 4..6) drives the flow
                CatalogName::NSl2 => Vector::from_fn(6, |i| {
                    if i < 3 {
                        p[i]
                    } else {
                        d[i - 3]
                    }
                }),
                CatalogName::Sl2rBiinvariant => {
                    // 3-dimensional and bi-invariant: every trajectory is
                    // constant, so just vary the scale
                    Vector::new(p.clone()).scale(&((di as f64 + 1.0) / 2.0))
                }
                _ => Vector::from_fn(6, |i| if i < 3 { d[i] } else { p[i - 3] }),
            };
            grid.push(v);
        }
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, CatalogName};
    use crate::scalar::rint;

    fn system(name: CatalogName) -> EulerArnoldSystem {
        let spec = build(name);
        EulerArnoldSystem::new(&spec.alg, &spec.metric).unwrap()
    }

    #[test]
    fn rhs_vanishes_for_bi_invariant_and_abelian_metrics() {
        let spec = build(CatalogName::Sl2rBiinvariant);
        let x = Vector::new(vec![rint(1), rint(2), rint(-3)]);
        assert!(euler_arnold_rhs(&spec.alg, &spec.metric, &x).unwrap().is_zero());

        let flat = build(CatalogName::FlatC3);
        let x = Vector::new((1..=6).map(rint).collect());
        assert!(euler_arnold_rhs(&flat.alg, &flat.metric, &x).unwrap().is_zero());

        // the product metric is bi-invariant too
        let prod = build(CatalogName::Sl2xSl2);
        let x = Vector::new((1..=6).map(|i| rint(2 * i - 7)).collect());
        assert!(euler_arnold_rhs(&prod.alg, &prod.metric, &x).unwrap().is_zero());
    }

    #[test]
    fn complexified_rhs_is_the_split_system() {
        // x = (u, v) with u = X3, v = X1: vdot = 2 [v, u] = 4 X2
        let spec = build(CatalogName::Sl2C);
        let x = Vector::new(vec![rint(0), rint(0), rint(1), rint(1), rint(0), rint(0)]);
        let rhs = euler_arnold_rhs(&spec.alg, &spec.metric, &x).unwrap();
        let expected = Vector::basis(6, 4).scale(&rint(4));
        assert_eq!(rhs, expected);
    }

    #[test]
    fn a_operator_from_metric_is_block_diagonal() {
        let spec = build(CatalogName::Sl2C);
        let a = AOperator::from_metric(&spec.alg, &spec.metric).unwrap();
        // 1/16 * diag(1, 1, 1, -1, -1, -1)
        let expected = Matrix::diagonal(&[
            crate::scalar::rat(1, 16),
            crate::scalar::rat(1, 16),
            crate::scalar::rat(1, 16),
            crate::scalar::rat(-1, 16),
            crate::scalar::rat(-1, 16),
            crate::scalar::rat(-1, 16),
        ]);
        assert_eq!(a.matrix(), &expected);
    }

    #[test]
    fn a_operator_requires_nondegenerate_killing_form() {
        let spec = build(CatalogName::NSl2);
        assert_eq!(
            AOperator::from_metric(&spec.alg, &spec.metric).unwrap_err(),
            GeomError::DegenerateKillingForm
        );
    }

    #[test]
    fn rhs_via_a_examples() {
        // identity A on a semisimple algebra: rhs = [x, x] = 0
        let spec = build(CatalogName::Sl2rBiinvariant);
        let a = AOperator::new(&spec.alg, Matrix::identity(3)).unwrap();
        let x = Vector::new(vec![rint(3), rint(-1), rint(2)]);
        assert!(rhs_via_a(&spec.alg, &a, &x).unwrap().is_zero());

        // block A(u, v) = (u, -v) reproduces the split system
        let spec = build(CatalogName::Sl2C);
        let mut block = Matrix::identity(6);
        for i in 3..6 {
            block[(i, i)] = rint(-1);
        }
        let a = AOperator::new(&spec.alg, block).unwrap();
        let x = Vector::new(vec![rint(0), rint(0), rint(1), rint(1), rint(0), rint(0)]);
        let rhs = rhs_via_a(&spec.alg, &a, &x).unwrap();
        assert_eq!(rhs, Vector::basis(6, 4).scale(&rint(4))); // (0, 2[X1,X3]) = 4 E5
    }

    #[test]
    fn rhs_via_a_matches_metric_rhs_on_random_rational_states() {
        use rand::Rng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for name in [
            CatalogName::Sl2xSl2,
            CatalogName::Sl2C,
            CatalogName::Sl2rBiinvariant,
        ] {
            let spec = build(name);
            let a = AOperator::from_metric(&spec.alg, &spec.metric).unwrap();
            let dim = spec.alg.dim();
            for _ in 0..100 {
                let x = Vector::from_fn(dim, |_| {
                    crate::scalar::rat(rng.gen_range(-6i64..7), rng.gen_range(1i64..5))
                });
                let lhs = rhs_via_a(&spec.alg, &a, &x).unwrap();
                let rhs = euler_arnold_rhs(&spec.alg, &spec.metric, &x).unwrap();
                assert_eq!(lhs, rhs, "{name}");
            }
        }
    }

    #[test]
    fn constant_trajectory_for_bi_invariant_metric() {
        let sys = system(CatalogName::Sl2rBiinvariant);
        let x0 = Vector::new(vec![1.0, 0.0, 1.0]);
        let traj = integrate_rk4(&sys, &x0, 10.0, 0.01, 100).unwrap();
        assert_eq!(traj.final_state().x, x0);
        assert_eq!(traj.max_energy_drift, 0.0);
    }

    #[test]
    fn rotation_matches_closed_form() {
        // u0 = X3 timelike, v0 = X1: v(t) = cos(4t) X1 + sin(4t) X2
        let sys = system(CatalogName::Sl2C);
        let x0 = Vector::new(vec![0.0, 0.0, 1.0, 1.0, 0.0, 0.0]);
        let traj = integrate_rk4(&sys, &x0, 10.0, 1e-3, 1000).unwrap();
        let xf = &traj.final_state().x;
        let expected = [0.0, 0.0, 1.0, (40.0f64).cos(), (40.0f64).sin(), 0.0];
        for i in 0..6 {
            assert!((xf[i] - expected[i]).abs() <= 1e-6, "coord {i}: {} vs {}", xf[i], expected[i]);
        }
    }

    #[test]
    fn closed_form_rotation_and_hyperbolic_cases() {
        let p = build(CatalogName::Sl2rBiinvariant).alg.map(rational_to_f64);

        // rotation by angle 4t = pi/2 sends X1 to X2
        let (u, v) = closed_form_complexified(
            &p,
            &Vector::new(vec![0.0, 0.0, 1.0]),
            &Vector::new(vec![1.0, 0.0, 0.0]),
            std::f64::consts::PI / 8.0,
        );
        assert_eq!(u.coords(), &[0.0, 0.0, 1.0]);
        let expected = [0.0, 1.0, 0.0];
        for i in 0..3 {
            assert!((v[i] - expected[i]).abs() < 1e-12, "coord {i}: {}", v[i]);
        }

        // u0 = 0 freezes v
        let (_, v) = closed_form_complexified(
            &p,
            &Vector::zero(3),
            &Vector::new(vec![2.0, -1.0, 5.0]),
            3.7,
        );
        assert_eq!(v.coords(), &[2.0, -1.0, 5.0]);

        // spacelike u0 = X1: v(1) = cosh(4) X2 - sinh(4) X3
        let (_, v) = closed_form_complexified(
            &p,
            &Vector::new(vec![1.0, 0.0, 0.0]),
            &Vector::new(vec![0.0, 1.0, 0.0]),
            1.0,
        );
        let expected = [0.0, (4.0f64).cosh(), -(4.0f64).sinh()];
        for i in 0..3 {
            assert!((v[i] - expected[i]).abs() < 1e-9, "coord {i}: {} vs {}", v[i], expected[i]);
        }
    }

    #[test]
    fn blowup_reports_last_good_state() {
        // spacelike driver on the complexified algebra grows at rate 4;
        // with the 1e12 threshold the blow-up fires near t = ln(1e12)/4
        let sys = system(CatalogName::Sl2C);
        let x0 = Vector::new(vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let err = integrate_rk4(&sys, &x0, 100.0, 1e-3, 1000).unwrap_err();
        assert!(err.t > 6.0 && err.t < 8.0, "t = {}", err.t);
        assert!(err.magnitude > BLOWUP_THRESHOLD);
        assert!(!err.partial.states.is_empty());
    }

    #[test]
    fn probe_finds_expected_growth_classes() {
        // bi-invariant product: every trajectory is constant
        let sys = system(CatalogName::Sl2xSl2);
        let grid = default_probe_grid(6, 8);
        let report = completeness_probe(&sys, &grid, 4.0, 1e-2);
        assert_eq!(report.blowup_count(), 0);
        assert_eq!(report.class_count(GrowthClass::Bounded), report.trajectories.len());

        // complexified case: no blow-ups at t_end = 4, exponential classes
        // appear exactly for spacelike drivers
        let sys = system(CatalogName::Sl2C);
        let report = completeness_probe(&sys, &grid, 4.0, 1e-2);
        assert_eq!(report.blowup_count(), 0);
        assert!(report.class_count(GrowthClass::Exponential) > 0);

        // two-step nilpotent: no blow-ups
        let sys = system(CatalogName::NSl2);
        let report = completeness_probe(&sys, &grid, 4.0, 1e-2);
        assert_eq!(report.blowup_count(), 0);
    }

    #[test]
    fn conservation_grid_is_32_points_and_bounded() {
        for name in [
            CatalogName::Sl2xSl2,
            CatalogName::Sl2C,
            CatalogName::Sl2SemidirectR3,
            CatalogName::NSl2,
        ] {
            let grid = conservation_grid(name);
            assert_eq!(grid.len(), 32, "{name}");
            let sys = system(name);
            // short pre-check here; the acceptance suite runs the full horizon
            for x0 in &grid {
                let traj = integrate_rk4(&sys, x0, 5.0, 1e-2, 100).unwrap();
                assert!(traj.max_coord <= 4.0, "{name}: escaped bounded regime");
            }
        }
    }

    #[test]
    fn expm_agrees_with_rotation() {
        let m = Matrix::from_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]);
        let e = expm(&m.scale(&std::f64::consts::FRAC_PI_2));
        // quarter rotation
        assert!((e[(0, 0)]).abs() < 1e-14);
        assert!((e[(0, 1)] + 1.0).abs() < 1e-14);
        assert!((e[(1, 0)] - 1.0).abs() < 1e-14);
        assert!((e[(1, 1)]).abs() < 1e-14);
    }
}
