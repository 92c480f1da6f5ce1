//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line. Exact criteria run in rational arithmetic; numeric
//! criteria pin their tolerances here.

use std::process::Command;

use num_traits::Zero;

use hlgeo_core::{
    build, conservation_grid, connection_general, connection_orthonormal, d_omega,
    integrate_rk4, is_almost_kahler, is_integrable, is_locally_symmetric,
    isotropy_structure_check, ledger, nabla_j, nabla_riemann_basis, nijenhuis, rat,
    rational_to_f64, riemann, rint, sectional_curvature, CatalogName, EulerArnoldSystem,
    LedgerStatus, Rational, Vector,
};

const DRIFT_TOL: f64 = 1e-9;
const CLOSED_FORM_TOL: f64 = 1e-6;
const CONVERGENCE_MIN_RATIO: f64 = 14.0;

/// The four groups of the classification (the other catalog entries are
/// reference cases).
const GROUPS: [CatalogName; 4] = [
    CatalogName::Sl2xSl2,
    CatalogName::Sl2C,
    CatalogName::Sl2SemidirectR3,
    CatalogName::NSl2,
];

struct Checker {
    criterion: &'static str,
    failures: Vec<String>,
}

impl Checker {
    fn new(criterion: &'static str) -> Self {
        Checker { criterion, failures: Vec::new() }
    }

    fn is(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        if !cond {
            self.failures.push(msg());
        }
    }

    fn conclude(self) {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("acceptance {}: {status}", self.criterion);
        for f in &self.failures {
            println!("  - {f}");
        }
        assert!(self.failures.is_empty(), "{}: {:?}", self.criterion, self.failures);
    }
}

fn basis(dim: usize, i: usize) -> Vector<Rational> {
    Vector::basis(dim, i)
}

fn comb(dim: usize, entries: &[(usize, i64)]) -> Vector<Rational> {
    let mut v = Vector::zero(dim);
    for &(k, c) in entries {
        v[k] = rint(c);
    }
    v
}

#[test]
fn criterion_01_published_value_regression() {
    let mut c = Checker::new("01 published-value regression (exact)");

    // product case
    let spec = build(CatalogName::Sl2xSl2);
    let acs = spec.acs.as_ref().unwrap();
    let n = nijenhuis(&spec.alg, acs, &basis(6, 0), &basis(6, 1)).unwrap();
    c.is(n == comb(6, &[(5, 2), (2, -2)]), || format!("N_J(E1,E2) = {n:?}"));
    let dw = d_omega(&spec.alg, &spec.metric, acs, &basis(6, 0), &basis(6, 1), &basis(6, 5)).unwrap();
    c.is(dw == rat(2, 3), || format!("d_omega(E1,E2,E6) = {dw}"));

    // complexified case
    let spec = build(CatalogName::Sl2C);
    let acs = spec.acs.as_ref().unwrap();
    let dw = d_omega(&spec.alg, &spec.metric, acs, &basis(6, 0), &basis(6, 1), &basis(6, 5)).unwrap();
    c.is(dw == rat(-2, 3), || format!("d_omega(E1,E2,E6) = {dw}"));
    c.is(is_integrable(&spec.alg, acs).0, || "complexified case not integrable".into());

    // semidirect case
    let spec = build(CatalogName::Sl2SemidirectR3);
    let acs = spec.acs.as_ref().unwrap();
    let n = nijenhuis(&spec.alg, acs, &basis(6, 0), &basis(6, 1)).unwrap();
    c.is(n == comb(6, &[(2, 2)]), || format!("N_J(E1,E2) = {n:?}"));
    let dw = d_omega(&spec.alg, &spec.metric, acs, &basis(6, 1), &basis(6, 2), &basis(6, 3)).unwrap();
    c.is(dw == rat(-2, 3), || format!("d_omega(E2,E3,E4) = {dw}"));
    let conn = connection_general(&spec.alg, &spec.metric).unwrap();
    let nj = nabla_j(&conn, acs, &basis(6, 0), &basis(6, 1));
    c.is(nj == comb(6, &[(5, 1)]), || format!("(nabla_E1 J)E2 = {nj:?}"));
    let curv = riemann(&conn, &spec.alg);
    c.is(
        is_locally_symmetric(&spec.alg, &conn, &curv).0,
        || "nabla R != 0 on the semidirect case".into(),
    );

    // two-step case
    let spec = build(CatalogName::NSl2);
    let acs = spec.acs.as_ref().unwrap();
    let dw = d_omega(&spec.alg, &spec.metric, acs, &basis(6, 0), &basis(6, 1), &basis(6, 2)).unwrap();
    c.is(dw == rint(-2), || format!("d_omega(E1,E2,E3) = {dw}"));

    // every table entry not flagged in the ledger matches exactly, and the
    // flagged set is exactly the known misprints
    let known_flagged = [
        ("sl2_x_sl2", "[E4,E6]"),
        ("sl2_c", "nabla_E5 E6"),
        ("sl2_c", "nabla_E3 E5"),
        ("sl2_c", "nabla_R(E1,E2,E5,E6)"),
        ("n_sl2", "N_J(E1,E2)"),
        ("sl2r_biinvariant", "killing_form"),
    ];
    for name in CatalogName::ALL {
        let led = ledger(&build(name), name);
        for e in &led.entries {
            let flagged = known_flagged
                .iter()
                .any(|(a, q)| *a == led.algebra && *q == e.quantity);
            match e.status {
                LedgerStatus::ExactMatch => c.is(!flagged, || {
                    format!("{}: {} expected flagged but matched", led.algebra, e.quantity)
                }),
                _ => c.is(flagged, || {
                    format!(
                        "{}: {} flagged unexpectedly (published {}, engine {})",
                        led.algebra, e.quantity, e.published, e.engine
                    )
                }),
            }
        }
    }
    c.conclude();
}

#[test]
fn criterion_02_ledger_completeness() {
    let mut c = Checker::new("02 ledger completeness");

    let expect = |c: &mut Checker, name: CatalogName, quantity: &str, engine: &str, published: &str| {
        let led = ledger(&build(name), name);
        match led.entries.iter().find(|e| e.quantity == quantity) {
            None => c.is(false, || format!("{name}: no ledger entry for {quantity}")),
            Some(e) => {
                c.is(e.status != LedgerStatus::ExactMatch, || {
                    format!("{name}: {quantity} not flagged")
                });
                c.is(e.engine == engine, || {
                    format!("{name}: {quantity} engine `{}`, expected `{engine}`", e.engine)
                });
                c.is(e.published == published, || {
                    format!("{name}: {quantity} published `{}`, expected `{published}`", e.published)
                });
            }
        }
    };

    // the four minimum entries
    expect(&mut c, CatalogName::Sl2xSl2, "[E4,E6]", "2*E5", "2*E6");
    expect(&mut c, CatalogName::NSl2, "N_J(E1,E2)", "-2*E6", "-E6");
    expect(&mut c, CatalogName::Sl2C, "nabla_E5 E6", "E1", "-E2");
    expect(&mut c, CatalogName::Sl2C, "nabla_R(E1,E2,E5,E6)", "-2*E2", "6*E2");

    // the argument-order resolution is recorded
    let led = ledger(&build(CatalogName::Sl2C), CatalogName::Sl2C);
    let e = led.entries.iter().find(|e| e.quantity == "nabla_R(E1,E2,E5,E6)").unwrap();
    c.is(e.note.contains("(nabla_E2 R)(E5,E6)E1"), || format!("note: {}", e.note));

    // `verify --all` accepts the flagged entries and exits 0
    let out = Command::new(env!("CARGO_BIN_EXE_hlgeo"))
        .args(["verify", "--all"])
        .output()
        .expect("binary runs");
    c.is(out.status.code() == Some(0), || {
        format!(
            "verify --all exited {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stdout)
        )
    });
    c.conclude();
}

#[test]
fn criterion_03_classification_verdict_matrix() {
    let mut c = Checker::new("03 classification verdict matrix (exact)");
    for name in GROUPS {
        let spec = build(name);
        let acs = spec.acs.as_ref().unwrap();
        let (integrable, int_witness) = is_integrable(&spec.alg, acs);
        c.is(integrable == (name == CatalogName::Sl2C), || {
            format!("{name}: integrable = {integrable}")
        });
        if !integrable {
            c.is(int_witness.is_some(), || format!("{name}: no integrability witness"));
        }
        let (ak, ak_witness) = is_almost_kahler(&spec.alg, &spec.metric, acs);
        c.is(!ak, || format!("{name}: almost_kahler = {ak}"));
        c.is(ak_witness.is_some(), || format!("{name}: no almost-Kahler witness"));

        let conn = connection_general(&spec.alg, &spec.metric).unwrap();
        let curv = riemann(&conn, &spec.alg);
        let (sym, witness) = is_locally_symmetric(&spec.alg, &conn, &curv);
        let expected = matches!(name, CatalogName::Sl2xSl2 | CatalogName::Sl2SemidirectR3);
        c.is(sym == expected, || format!("{name}: locally_symmetric = {sym}"));
        if !expected {
            c.is(witness.is_some(), || format!("{name}: no local-symmetry witness"));
            if let Some([a, b, cc, d]) = witness {
                let v = nabla_riemann_basis(&conn, &curv, a, b, cc, d);
                c.is(!v.is_zero(), || format!("{name}: witness tuple is actually zero"));
            }
        }
    }
    c.conclude();
}

#[test]
fn criterion_04_constant_curvature() {
    let mut c = Checker::new("04 constant curvature -1 on 50 random planes (exact)");
    let spec = build(CatalogName::Sl2rBiinvariant);
    let conn = connection_general(&spec.alg, &spec.metric).unwrap();
    let curv = riemann(&conn, &spec.alg);

    // deterministic SplitMix64 stream for reproducible rational planes
    let mut state: u64 = 0x9e3779b97f4a7c15;
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    let mut rational = move || {
        let n = (next() % 19) as i64 - 9;
        let d = (next() % 7) as i64 + 1;
        rat(n, d)
    };

    let mut tested = 0;
    let mut draws = 0;
    while tested < 50 {
        draws += 1;
        assert!(draws < 1000, "plane sampling failed to terminate");
        let x = Vector::from_fn(3, |_| rational());
        let y = Vector::from_fn(3, |_| rational());
        match sectional_curvature(&curv, &spec.metric, &x, &y) {
            Err(_) => continue, // degenerate plane, redraw
            Ok(k) => {
                c.is(k == rint(-1), || format!("K({x:?}, {y:?}) = {k}"));
                tested += 1;
            }
        }
    }
    c.conclude();
}

#[test]
fn criterion_05_connection_formula_equivalence() {
    let mut c = Checker::new("05 connection-formula equivalence (exact)");
    for name in CatalogName::ALL {
        let spec = build(name);
        let orth = connection_orthonormal(&spec.alg, &spec.metric).unwrap();
        let gen = connection_general(&spec.alg, &spec.metric).unwrap();
        let dim = spec.alg.dim();
        let mut all = true;
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if orth.coeff(i, j, k) != gen.coeff(i, j, k) {
                        all = false;
                    }
                }
            }
        }
        c.is(all, || format!("{name}: formulas disagree"));
    }
    c.conclude();
}

#[test]
fn criterion_06_isotropy_generators() {
    let mut c = Checker::new("06 isotropy generators (exact)");
    for name in GROUPS {
        let spec = build(name);
        c.is(spec.isotropy.len() == 3, || format!("{name}: expected 3 generators"));
        for (g, d) in spec.isotropy.iter().enumerate() {
            let defects =
                isotropy_structure_check(&spec.alg, &spec.metric, spec.acs.as_ref(), d).unwrap();
            c.is(defects.all_zero(), || format!("{name} generator {g}: {defects:?}"));
        }
        let m: Vec<_> = spec.isotropy.iter().map(|d| d.matrix().clone()).collect();
        c.is(
            m[0].commutator(&m[1]) == m[2].scale(&rint(2))
                && m[0].commutator(&m[2]) == m[1].scale(&rint(2))
                && m[1].commutator(&m[2]) == m[0].scale(&rint(-2)),
            || format!("{name}: generators do not close with the split-form relations"),
        );
    }
    c.conclude();
}

#[test]
fn criterion_07_geodesic_conservation() {
    let mut c = Checker::new("07 geodesic conservation (numeric)");
    for name in GROUPS {
        let spec = build(name);
        let system = EulerArnoldSystem::new(&spec.alg, &spec.metric).unwrap();
        let grid = conservation_grid(name);
        c.is(grid.len() == 32, || format!("{name}: grid size {}", grid.len()));
        let mut max_energy: f64 = 0.0;
        let mut max_casimir: f64 = 0.0;
        let mut blowups = 0;
        for x0 in &grid {
            match integrate_rk4(&system, x0, 100.0, 1e-3, 10_000) {
                Ok(t) => {
                    max_energy = max_energy.max(t.max_energy_drift);
                    max_casimir = max_casimir.max(t.max_casimir_drift);
                }
                Err(_) => blowups += 1,
            }
        }
        c.is(blowups == 0, || format!("{name}: {blowups} blow-ups"));
        c.is(max_energy <= DRIFT_TOL, || format!("{name}: energy drift {max_energy:e}"));
        c.is(max_casimir <= DRIFT_TOL, || format!("{name}: casimir drift {max_casimir:e}"));
    }
    c.conclude();
}

#[test]
fn criterion_08_closed_form_agreement() {
    let mut c = Checker::new("08 closed-form agreement and convergence (numeric)");
    let spec = build(CatalogName::Sl2C);
    let system = EulerArnoldSystem::new(&spec.alg, &spec.metric).unwrap();
    let p = build(CatalogName::Sl2rBiinvariant).alg.map(rational_to_f64);

    let error = |x0: &Vector<f64>, dt: f64| -> f64 {
        let traj = integrate_rk4(&system, x0, 10.0, dt, 100_000).unwrap();
        let xf = &traj.final_state().x;
        let u0 = Vector::new(x0.coords()[..3].to_vec());
        let v0 = Vector::new(x0.coords()[3..].to_vec());
        let (u, v) = hlgeo_core::closed_form_complexified(&p, &u0, &v0, 10.0);
        let mut e: f64 = 0.0;
        for i in 0..3 {
            e = e.max((xf[i] - u[i]).abs()).max((xf[i + 3] - v[i]).abs());
        }
        e
    };

    // rotation: timelike driver
    let rot = Vector::new(vec![0.0, 0.0, 1.0, 1.0, 0.0, 0.0]);
    let e1 = error(&rot, 1e-3);
    c.is(e1 <= CLOSED_FORM_TOL, || format!("rotation error {e1:e}"));

    // hyperbolic: spacelike driver, scaled so coordinates stay in f64 range
    let hyp = Vector::new(vec![0.25, 0.0, 0.0, 0.0, 1.0, 0.0]);
    let e2 = error(&hyp, 1e-3);
    c.is(e2 <= CLOSED_FORM_TOL, || format!("hyperbolic error {e2:e}"));

    // fourth order: halving dt shrinks the rotation error by >= 14
    let e_half = error(&rot, 5e-4);
    let ratio = e1 / e_half;
    c.is(ratio >= CONVERGENCE_MIN_RATIO, || {
        format!("convergence ratio {ratio:.2} (errors {e1:e} -> {e_half:e})")
    });
    c.conclude();
}

#[test]
fn criterion_09_differential_geometry_identities() {
    let mut c = Checker::new("09 differential-geometry identities (exact)");
    for name in CatalogName::ALL {
        let spec = build(name);
        let dim = spec.alg.dim();
        let conn = connection_general(&spec.alg, &spec.metric).unwrap();
        c.is(conn.torsion_defect(&spec.alg).is_zero(), || format!("{name}: torsion"));
        c.is(
            conn.compatibility_defect(&spec.metric).is_zero(),
            || format!("{name}: metric compatibility"),
        );

        let curv = riemann(&conn, &spec.alg);
        let mut bianchi1 = true;
        let mut symmetries = true;
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let sum = curv
                        .apply_basis(i, j, k)
                        .add(&curv.apply_basis(j, k, i))
                        .add(&curv.apply_basis(k, i, j));
                    if !sum.is_zero() {
                        bianchi1 = false;
                    }
                    for l in 0..dim {
                        let r = curv.lowered(&spec.metric, i, j, k, l);
                        if r != -curv.lowered(&spec.metric, j, i, k, l)
                            || r != -curv.lowered(&spec.metric, i, j, l, k)
                            || r != curv.lowered(&spec.metric, k, l, i, j)
                        {
                            symmetries = false;
                        }
                    }
                }
            }
        }
        c.is(bianchi1, || format!("{name}: first Bianchi"));
        c.is(symmetries, || format!("{name}: lowered symmetries"));

        let mut nabla_r = Vec::with_capacity(dim.pow(4));
        for a in 0..dim {
            for b in 0..dim {
                for e in 0..dim {
                    for d in 0..dim {
                        nabla_r.push(nabla_riemann_basis(&conn, &curv, a, b, e, d));
                    }
                }
            }
        }
        let at = |a: usize, b: usize, e: usize, d: usize| -> &Vector<Rational> {
            &nabla_r[((a * dim + b) * dim + e) * dim + d]
        };
        let mut bianchi2 = true;
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    for d in 0..dim {
                        if !at(i, j, k, d).add(at(j, k, i, d)).add(at(k, i, j, d)).is_zero() {
                            bianchi2 = false;
                        }
                    }
                }
            }
        }
        c.is(bianchi2, || format!("{name}: second Bianchi"));

        if let Some(acs) = &spec.acs {
            let mut antisym = true;
            for i in 0..dim {
                for j in 0..dim {
                    for k in 0..dim {
                        let v = d_omega(&spec.alg, &spec.metric, acs, &basis(dim, i), &basis(dim, j), &basis(dim, k)).unwrap();
                        let a = d_omega(&spec.alg, &spec.metric, acs, &basis(dim, j), &basis(dim, i), &basis(dim, k)).unwrap();
                        let b = d_omega(&spec.alg, &spec.metric, acs, &basis(dim, i), &basis(dim, k), &basis(dim, j)).unwrap();
                        if v != -a.clone() || v != -b.clone() {
                            antisym = false;
                        }
                    }
                }
            }
            c.is(antisym, || format!("{name}: d_omega antisymmetry"));
        }
    }
    c.conclude();
}

#[test]
fn criterion_10_cli_contract() {
    let mut c = Checker::new("10 CLI contract");
    let hlgeo = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_hlgeo"))
            .args(args)
            .env_remove("HLGEO_COLOR")
            .output()
            .expect("binary runs")
    };

    // exit 0
    let out = hlgeo(&["catalog"]);
    c.is(out.status.code() == Some(0), || "catalog should exit 0".into());

    // exit 2: usage
    for args in [
        vec!["catalog", "--format", "xml"],
        vec!["verify", "no_such_algebra"],
        vec!["geodesic", "sl2_c", "--x0", "1,2"],
    ] {
        let out = hlgeo(&args);
        c.is(out.status.code() == Some(2), || format!("{args:?} should exit 2"));
    }

    let dir = tempfile::tempdir().unwrap();

    // exit 3: parse
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{ nope").unwrap();
    let out = hlgeo(&["report", broken.to_str().unwrap()]);
    c.is(out.status.code() == Some(3), || "broken JSON should exit 3".into());

    // exit 4: validity
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"basis": ["E1", "E2", "E3"], "brackets": [{"coeffs": {"1": "1"}, "i": 1, "j": 2}, {"coeffs": {"2": "1"}, "i": 1, "j": 3}], "dim": 3, "signature": [1, 1, -1]}"#,
    )
    .unwrap();
    let out = hlgeo(&["report", bad.to_str().unwrap()]);
    c.is(out.status.code() == Some(4), || "Jacobi violation should exit 4".into());
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    c.is(err.contains("jacobi_defect"), || format!("stderr: {err}"));

    // exit 5: blow-up
    let out = hlgeo(&[
        "geodesic", "sl2_c", "--x0", "1,0,0,0,1,0", "--t-end", "100", "--dt", "0.001",
        "--stride", "1000",
    ]);
    c.is(out.status.code() == Some(5), || "blow-up should exit 5".into());

    // byte-determinism of reports
    let a = hlgeo(&["report", "sl2_c", "--format", "json", "--ledger"]);
    let b = hlgeo(&["report", "sl2_c", "--format", "json", "--ledger"]);
    c.is(a.stdout == b.stdout, || "report bytes differ between runs".into());

    // file round trip
    for name in CatalogName::ALL {
        let spec = build(name);
        let text = hlgeo_core::spec_to_canonical_string(&spec);
        let parsed = hlgeo_core::parse_algebra_file(&text, name.as_str()).unwrap();
        c.is(
            hlgeo_core::spec_to_canonical_string(&parsed) == text,
            || format!("{name}: round trip not byte-identical"),
        );
    }
    c.conclude();
}
