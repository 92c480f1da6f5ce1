//! The `verify` subcommand: runs every exact identity, the published-table
//! regression through the discrepancy ledger, the classification verdicts,
//! the isotropy checks, and the geodesic conservation suite.

use num_traits::Zero;

use hlgeo_core::{
    build, conservation_grid, connection_general, connection_orthonormal, d_omega, integrate_rk4,
    is_almost_kahler, is_integrable, is_locally_symmetric, isotropy_structure_check, kahler_form,
    ledger, nabla_riemann_basis, rat, rhs_via_a, riemann, AOperator, CatalogName,
    EulerArnoldSystem, LedgerStatus, Rational, Vector,
};

use crate::CliError;

/// Energy / Casimir drift bound over t in [0, 100] at dt = 1e-3.
const DRIFT_TOL: f64 = 1e-9;
/// Max deviation from the closed-form solution at t_end = 10, dt = 1e-3.
const CLOSED_FORM_TOL: f64 = 1e-6;
/// Minimum observed error-reduction factor when halving dt (ideal 16).
const CONVERGENCE_MIN_RATIO: f64 = 14.0;
const CONSERVATION_T_END: f64 = 100.0;
const CONSERVATION_DT: f64 = 1e-3;

struct Suite {
    colored: bool,
    lines: Vec<String>,
    /// (module, passed) per check.
    results: Vec<(&'static str, bool)>,
}

impl Suite {
    fn new() -> Self {
        let colored = std::env::var("HLGEO_COLOR").map(|v| v == "1").unwrap_or(false);
        Suite { colored, lines: Vec::new(), results: Vec::new() }
    }

    fn check(&mut self, module: &'static str, pass: bool, line: String) {
        let tag = match (pass, self.colored) {
            (true, false) => "[pass]".to_string(),
            (false, false) => "[FAIL]".to_string(),
            (true, true) => "\x1b[32m[pass]\x1b[0m".to_string(),
            (false, true) => "\x1b[31m[FAIL]\x1b[0m".to_string(),
        };
        self.lines.push(format!("  {tag} {line}"));
        self.results.push((module, pass));
    }

    fn heading(&mut self, s: String) {
        self.lines.push(s);
    }

    fn flush(&mut self) {
        for l in self.lines.drain(..) {
            println!("{l}");
        }
    }
}

pub fn cmd_verify(all: bool, algebra: Option<&str>) -> Result<(), CliError> {
    let names: Vec<CatalogName> = match (all, algebra) {
        (true, None) => CatalogName::ALL.to_vec(),
        (false, Some(a)) => {
            let name = CatalogName::parse(a)
                .map_err(|_| CliError::Usage(format!("unknown algebra `{a}` (see `hlgeo catalog`)")))?;
            vec![name]
        }
        (false, None) => {
            return Err(CliError::Usage("pass an algebra name or --all".into()));
        }
        (true, Some(_)) => unreachable!("clap conflicts_with"),
    };

    let mut suite = Suite::new();
    for name in names {
        verify_algebra(&mut suite, name);
        suite.flush();
    }

    let modules = ["algebra", "metric", "hermitian", "catalog", "geodesics"];
    println!("summary (per module):");
    for m in modules {
        let passed = suite.results.iter().filter(|(mm, p)| *mm == m && *p).count();
        let failed = suite.results.iter().filter(|(mm, p)| *mm == m && !*p).count();
        println!("  {m:<10} {passed} passed, {failed} failed");
    }
    let failed = suite.results.iter().filter(|(_, p)| !p).count();
    if failed == 0 {
        println!("verify: all {} checks passed", suite.results.len());
        Ok(())
    } else {
        println!("verify: {failed} of {} checks FAILED", suite.results.len());
        Err(CliError::Failures(failed))
    }
}

/// Expected classification verdicts (`None` = not applicable).
fn expectations(name: CatalogName) -> (Option<bool>, Option<bool>, bool) {
    // (integrable, almost_kahler, locally_symmetric)
    match name {
        CatalogName::Sl2xSl2 => (Some(false), Some(false), true),
        CatalogName::Sl2C => (Some(true), Some(false), false),
        CatalogName::Sl2SemidirectR3 => (Some(false), Some(false), true),
        CatalogName::NSl2 => (Some(false), Some(false), false),
        CatalogName::Sl2rBiinvariant => (None, None, true),
        CatalogName::FlatC3 => (Some(true), Some(true), true),
    }
}

fn verify_algebra(suite: &mut Suite, name: CatalogName) {
    let spec = build(name);
    let dim = spec.alg.dim();
    let basis = |i: usize| Vector::<Rational>::basis(dim, i);
    suite.heading(format!("== {name} ({})", name.section()));

    // algebra-level identities
    let jd = spec.alg.jacobi_defect();
    suite.check("algebra", jd.is_zero(), format!("jacobi_defect: {jd} (expected 0)"));

    let k = spec.alg.killing_form();
    let mut ad_invariant = true;
    for i in 0..dim {
        for j in 0..dim {
            for l in 0..dim {
                let lhs = spec
                    .alg
                    .bracket_basis(i, j)
                    .iter()
                    .zip(k.col(l).iter())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
                let rhs = k.mul_vec(spec.alg.bracket_basis(i, l))[j].clone();
                if !(lhs + rhs).is_zero() {
                    ad_invariant = false;
                }
            }
        }
    }
    suite.check("algebra", ad_invariant, "killing form ad-invariance (exact)".into());

    let mut ad_star_ok = true;
    for i in 0..dim {
        for j in 0..dim {
            let z = spec.alg.ad_star(&spec.metric, &basis(i), &basis(j)).unwrap();
            for w in 0..dim {
                let lhs = spec.metric.inner(&z, &basis(w));
                let rhs = spec
                    .metric
                    .inner(&basis(j), &spec.alg.bracket(&basis(i), &basis(w)).unwrap());
                if lhs != rhs {
                    ad_star_ok = false;
                }
            }
        }
    }
    suite.check("algebra", ad_star_ok, "ad* defining identity on basis triples (exact)".into());

    // connection and curvature
    let conn = connection_orthonormal(&spec.alg, &spec.metric).unwrap();
    let conn_general = connection_general(&spec.alg, &spec.metric).unwrap();
    suite.check(
        "metric",
        conn == conn_general,
        format!("connection formulas agree on all {} coefficients", dim * dim * dim),
    );
    suite.check(
        "metric",
        conn.torsion_defect(&spec.alg).is_zero(),
        "torsion-free (exact)".into(),
    );
    suite.check(
        "metric",
        conn.compatibility_defect(&spec.metric).is_zero(),
        "metric compatibility (exact)".into(),
    );

    let curv = riemann(&conn, &spec.alg);
    let mut bianchi1 = true;
    for i in 0..dim {
        for j in 0..dim {
            for l in 0..dim {
                let sum = curv
                    .apply_basis(i, j, l)
                    .add(&curv.apply_basis(j, l, i))
                    .add(&curv.apply_basis(l, i, j));
                if !sum.is_zero() {
                    bianchi1 = false;
                }
            }
        }
    }
    suite.check("metric", bianchi1, "first Bianchi identity (exact)".into());

    let mut symmetries = true;
    for i in 0..dim {
        for j in 0..dim {
            for l in 0..dim {
                for m in 0..dim {
                    let r = curv.lowered(&spec.metric, i, j, l, m);
                    if r != -curv.lowered(&spec.metric, j, i, l, m)
                        || r != -curv.lowered(&spec.metric, i, j, m, l)
                        || r != curv.lowered(&spec.metric, l, m, i, j)
                    {
                        symmetries = false;
                    }
                }
            }
        }
    }
    suite.check("metric", symmetries, "lowered curvature symmetries (exact)".into());

    // precompute nabla R once for the second Bianchi identity
    let mut nabla_r = Vec::with_capacity(dim * dim * dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                for d in 0..dim {
                    nabla_r.push(nabla_riemann_basis(&conn, &curv, a, b, c, d));
                }
            }
        }
    }
    let at = |a: usize, b: usize, c: usize, d: usize| -> &Vector<Rational> {
        &nabla_r[((a * dim + b) * dim + c) * dim + d]
    };
    let mut bianchi2 = true;
    for i in 0..dim {
        for j in 0..dim {
            for l in 0..dim {
                for d in 0..dim {
                    let sum = at(i, j, l, d).add(at(j, l, i, d)).add(at(l, i, j, d));
                    if !sum.is_zero() {
                        bianchi2 = false;
                    }
                }
            }
        }
    }
    suite.check("metric", bianchi2, "second Bianchi identity (exact)".into());

    let (integrable_exp, almost_kahler_exp, loc_sym_exp) = expectations(name);
    let (loc_sym, witness) = is_locally_symmetric(&spec.alg, &conn, &curv);
    let witness_str = witness.map_or(String::new(), |[a, b, c, d]| {
        let l = spec.alg.basis_labels();
        format!(", witness (nabla_{} R)({},{}){}", l[a], l[b], l[c], l[d])
    });
    suite.check(
        "metric",
        loc_sym == loc_sym_exp,
        format!("locally_symmetric: {loc_sym} (expected {loc_sym_exp}){witness_str}"),
    );

    // hermitian layer
    if let Some(acs) = &spec.acs {
        suite.check("hermitian", acs.square_defect().is_zero(), "J^2 = -I (exact)".into());
        suite.check(
            "hermitian",
            acs.compatibility_defect(&spec.metric).is_zero(),
            "J metric compatibility (exact)".into(),
        );

        let mut dw_antisym = true;
        for i in 0..dim {
            for j in 0..dim {
                for l in 0..dim {
                    let v = d_omega(&spec.alg, &spec.metric, acs, &basis(i), &basis(j), &basis(l))
                        .unwrap();
                    let s1 =
                        d_omega(&spec.alg, &spec.metric, acs, &basis(j), &basis(i), &basis(l))
                            .unwrap();
                    let s2 =
                        d_omega(&spec.alg, &spec.metric, acs, &basis(i), &basis(l), &basis(j))
                            .unwrap();
                    if v != -s1.clone() || v != -s2.clone() {
                        dw_antisym = false;
                    }
                }
            }
        }
        suite.check("hermitian", dw_antisym, "d_omega total antisymmetry (exact)".into());

        let pf = kahler_form(&spec.metric, acs).pfaffian();
        suite.check(
            "hermitian",
            !pf.is_zero(),
            format!("fundamental 2-form nondegenerate (pfaffian {pf})"),
        );

        let (integrable, _) = is_integrable(&spec.alg, acs);
        let expected = integrable_exp.unwrap();
        suite.check(
            "hermitian",
            integrable == expected,
            format!("integrable: {integrable} (expected {expected})"),
        );
        let (ak, _) = is_almost_kahler(&spec.alg, &spec.metric, acs);
        let expected = almost_kahler_exp.unwrap();
        suite.check(
            "hermitian",
            ak == expected,
            format!("almost_kahler: {ak} (expected {expected})"),
        );
    }

    // isotropy generators
    let mut defects_zero = true;
    for d in &spec.isotropy {
        let def = isotropy_structure_check(&spec.alg, &spec.metric, spec.acs.as_ref(), d).unwrap();
        if !def.all_zero() {
            defects_zero = false;
        }
    }
    suite.check(
        "hermitian",
        defects_zero,
        "isotropy generators: derivation, metric-skew, J-commutation defects all 0".into(),
    );
    let m: Vec<_> = spec.isotropy.iter().map(|d| d.matrix().clone()).collect();
    let two = rat(2, 1);
    let closure = m[0].commutator(&m[1]) == m[2].scale(&two)
        && m[0].commutator(&m[2]) == m[1].scale(&two)
        && m[1].commutator(&m[2]) == m[0].scale(&(-two.clone()));
    suite.check(
        "hermitian",
        closure,
        "isotropy generators close with the rank-one bracket relations".into(),
    );

    // published-table regression
    let led = ledger(&spec, name);
    let exact = led.count(LedgerStatus::ExactMatch);
    let flagged = led.entries.len() - exact;
    let all_accounted = led
        .entries
        .iter()
        .all(|e| e.status == LedgerStatus::ExactMatch || !e.engine.is_empty());
    suite.check(
        "catalog",
        all_accounted,
        format!("published values: {exact} exact, {flagged} flagged with engine value"),
    );
    let gates = hlgeo_core::validate(&spec).is_ok();
    suite.check("catalog", gates, "validity gates (jacobi, gram, J^2, compatibility)".into());

    // geodesic conservation over the bounded 32-point grid
    let system = EulerArnoldSystem::new(&spec.alg, &spec.metric).unwrap();
    let grid = conservation_grid(name);
    let mut max_energy: f64 = 0.0;
    let mut max_casimir: f64 = 0.0;
    let mut blowups = 0usize;
    for x0 in &grid {
        match integrate_rk4(&system, x0, CONSERVATION_T_END, CONSERVATION_DT, 5000) {
            Ok(t) => {
                max_energy = max_energy.max(t.max_energy_drift);
                max_casimir = max_casimir.max(t.max_casimir_drift);
            }
            Err(_) => blowups += 1,
        }
    }
    suite.check(
        "geodesics",
        blowups == 0,
        format!("no blow-ups over t in [0, {CONSERVATION_T_END}] on {} initial conditions", grid.len()),
    );
    suite.check(
        "geodesics",
        max_energy <= DRIFT_TOL && max_casimir <= DRIFT_TOL,
        format!("conserved drifts <= {DRIFT_TOL:e} (energy {max_energy:e}, casimir {max_casimir:e})"),
    );

    // A-operator route agrees with the metric route (semisimple entries)
    if !spec.alg.killing_form().determinant().is_zero() {
        let a = AOperator::from_metric(&spec.alg, &spec.metric).unwrap();
        let mut agree = true;
        for s in 0..20i64 {
            let x = Vector::from_fn(dim, |i| rat((s * 7 + i as i64 * 3) % 9 - 4, 1 + (s + i as i64) % 3));
            let lhs = rhs_via_a(&spec.alg, &a, &x).unwrap();
            let rhs = hlgeo_core::euler_arnold_rhs(&spec.alg, &spec.metric, &x).unwrap();
            if lhs != rhs {
                agree = false;
            }
        }
        suite.check(
            "geodesics",
            agree,
            "A-operator form agrees with ad* form on rational states (exact)".into(),
        );
    }

    // closed-form agreement and convergence order, on the complexified case
    if name == CatalogName::Sl2C {
        let p = build(CatalogName::Sl2rBiinvariant).alg.map(hlgeo_core::rational_to_f64);
        let run = |x0: &Vector<f64>, dt: f64| {
            integrate_rk4(&system, x0, 10.0, dt, 100_000).unwrap()
        };
        let error_vs_closed_form = |x0: &Vector<f64>, dt: f64| -> f64 {
            let traj = run(x0, dt);
            let xf = &traj.final_state().x;
            let u0 = Vector::new(x0.coords()[..3].to_vec());
            let v0 = Vector::new(x0.coords()[3..].to_vec());
            let (u, v) = hlgeo_core::closed_form_complexified(&p, &u0, &v0, 10.0);
            let mut err: f64 = 0.0;
            for i in 0..3 {
                err = err.max((xf[i] - u[i]).abs()).max((xf[i + 3] - v[i]).abs());
            }
            err
        };

        // timelike driver: rotation
        let rot = Vector::new(vec![0.0, 0.0, 1.0, 1.0, 0.0, 0.0]);
        let e_rot = error_vs_closed_form(&rot, 1e-3);
        suite.check(
            "geodesics",
            e_rot <= CLOSED_FORM_TOL,
            format!("closed-form agreement, rotation case: max error {e_rot:e} <= {CLOSED_FORM_TOL:e}"),
        );
        // spacelike driver (scaled to keep coordinates in f64 range)
        let hyp = Vector::new(vec![0.25, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let e_hyp = error_vs_closed_form(&hyp, 1e-3);
        suite.check(
            "geodesics",
            e_hyp <= CLOSED_FORM_TOL,
            format!("closed-form agreement, hyperbolic case: max error {e_hyp:e} <= {CLOSED_FORM_TOL:e}"),
        );
        let e_half = error_vs_closed_form(&rot, 5e-4);
        let ratio = e_rot / e_half;
        suite.check(
            "geodesics",
            ratio >= CONVERGENCE_MIN_RATIO,
            format!("convergence: halving dt reduces error by {ratio:.1} (>= {CONVERGENCE_MIN_RATIO})"),
        );
    }
}
