//! Aggregated geometry report for one algebra: connection and curvature
//! tables, the Hermitian tensors, verdicts with witnesses, and the isotropy
//! checks. Reports render to aligned text or canonical JSON; both are pure
//! functions of the spec, so identical inputs produce identical bytes.

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::catalog::HomogeneousSpaceSpec;
use crate::hermitian::{
    d_omega, is_almost_kahler, is_integrable, isotropy_structure_check, kahler_form, nabla_j,
    nijenhuis, IsotropyDefects,
};
use crate::ledger::{DiscrepancyLedger, LedgerEntry};
use crate::linalg::Vector;
use crate::metric::{
    connection_general, is_locally_symmetric, nabla_riemann_basis, riemann, sectional_curvature,
};
use crate::render::format_combination;
use crate::scalar::{format_rational, rational_to_f64, Rational};

/// One `(indices, value)` row of a tensor table; only nonzero rows are kept.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub indices: Vec<usize>,
    pub value: Vector<Rational>,
}

#[derive(Debug, Clone)]
pub struct ScalarRow {
    pub indices: Vec<usize>,
    pub value: Rational,
}

/// Everything the engine derives for one homogeneous space.
#[derive(Debug, Clone)]
pub struct GeometryReport {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub signature: Option<Vec<Rational>>,
    pub connection: Vec<TableRow>,
    /// Nonzero `R(E_i, E_j) E_k` with `i < j`.
    pub curvature: Vec<TableRow>,
    /// Sectional curvature on nondegenerate basis planes `i < j`.
    pub sectional: Vec<ScalarRow>,
    /// Nonzero `N_J(E_i, E_j)` with `i < j`; `None` without J.
    pub nijenhuis: Option<Vec<TableRow>>,
    pub integrable: Option<(bool, Option<(usize, usize)>)>,
    /// Nonzero `d_omega(E_i, E_j, E_k)` with `i < j < k`.
    pub d_omega: Option<Vec<ScalarRow>>,
    pub almost_kahler: Option<(bool, Option<(usize, usize, usize)>)>,
    /// Nonzero `(nabla_{E_i} J) E_j`.
    pub nabla_j: Option<Vec<TableRow>>,
    pub omega_pfaffian: Option<Rational>,
    pub locally_symmetric: bool,
    pub locally_symmetric_witness: Option<([usize; 4], Vector<Rational>)>,
    pub isotropy: Vec<IsotropyDefects<Rational>>,
}

/// Computes the full report. Deterministic: tables are listed in
/// lexicographic index order.
pub fn full_report(spec: &HomogeneousSpaceSpec) -> GeometryReport {
    let alg = &spec.alg;
    let dim = alg.dim();
    let basis = |i: usize| Vector::<Rational>::basis(dim, i);

    let conn = connection_general(alg, &spec.metric).expect("nondegenerate metric");
    let curv = riemann(&conn, alg);

    let mut connection = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let v = conn.nabla_basis(i, j);
            if !v.is_zero() {
                connection.push(TableRow { indices: vec![i, j], value: v });
            }
        }
    }

    let mut curvature = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for k in 0..dim {
                let v = curv.apply_basis(i, j, k);
                if !v.is_zero() {
                    curvature.push(TableRow { indices: vec![i, j, k], value: v });
                }
            }
        }
    }

    let mut sectional = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            if let Ok(k) = sectional_curvature(&curv, &spec.metric, &basis(i), &basis(j)) {
                sectional.push(ScalarRow { indices: vec![i, j], value: k });
            }
        }
    }

    let (nij, integrable, dw, almost_kahler, nbj, pfaffian) = match &spec.acs {
        None => (None, None, None, None, None, None),
        Some(acs) => {
            let mut nij = Vec::new();
            for i in 0..dim {
                for j in i + 1..dim {
                    let v = nijenhuis(alg, acs, &basis(i), &basis(j)).expect("dims");
                    if !v.is_zero() {
                        nij.push(TableRow { indices: vec![i, j], value: v });
                    }
                }
            }
            let mut dw = Vec::new();
            for i in 0..dim {
                for j in i + 1..dim {
                    for k in j + 1..dim {
                        let v = d_omega(alg, &spec.metric, acs, &basis(i), &basis(j), &basis(k))
                            .expect("dims");
                        if !v.is_zero() {
                            dw.push(ScalarRow { indices: vec![i, j, k], value: v });
                        }
                    }
                }
            }
            let mut nbj = Vec::new();
            for i in 0..dim {
                for j in 0..dim {
                    let v = nabla_j(&conn, acs, &basis(i), &basis(j));
                    if !v.is_zero() {
                        nbj.push(TableRow { indices: vec![i, j], value: v });
                    }
                }
            }
            (
                Some(nij),
                Some(is_integrable(alg, acs)),
                Some(dw),
                Some(is_almost_kahler(alg, &spec.metric, acs)),
                Some(nbj),
                Some(kahler_form(&spec.metric, acs).pfaffian()),
            )
        }
    };

    let (locally_symmetric, witness_idx) = is_locally_symmetric(alg, &conn, &curv);
    let locally_symmetric_witness = witness_idx.map(|[a, b, c, d]| {
        ([a, b, c, d], nabla_riemann_basis(&conn, &curv, a, b, c, d))
    });

    let isotropy = spec
        .isotropy
        .iter()
        .map(|d| {
            isotropy_structure_check(alg, &spec.metric, spec.acs.as_ref(), d).expect("dims")
        })
        .collect();

    GeometryReport {
        name: spec.name.clone(),
        dim,
        basis: alg.basis_labels().to_vec(),
        signature: spec.metric.signature_eps().map(<[Rational]>::to_vec),
        connection,
        curvature,
        sectional,
        nijenhuis: nij,
        integrable,
        d_omega: dw,
        almost_kahler,
        nabla_j: nbj,
        omega_pfaffian: pfaffian,
        locally_symmetric,
        locally_symmetric_witness,
        isotropy,
    }
}

fn fmt_idx(labels: &[String], indices: &[usize]) -> String {
    indices
        .iter()
        .map(|&i| labels[i].clone())
        .collect::<Vec<_>>()
        .join(",")
}

impl GeometryReport {
    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let labels = &self.basis;
        let push_line = |out: &mut String, s: String| {
            out.push_str(&s);
            out.push('\n');
        };

        push_line(&mut out, format!("algebra: {}", self.name));
        push_line(&mut out, format!("dim: {}", self.dim));
        push_line(&mut out, format!("basis: {}", labels.join(", ")));
        if let Some(eps) = &self.signature {
            let sig: Vec<String> = eps.iter().map(format_rational).collect();
            push_line(&mut out, format!("signature: ({})", sig.join(", ")));
        }
        push_line(&mut out, String::new());

        push_line(&mut out, "connection (nonzero nabla):".into());
        for row in &self.connection {
            push_line(
                &mut out,
                format!(
                    "  nabla_{} {} = {}",
                    labels[row.indices[0]],
                    labels[row.indices[1]],
                    format_combination(&row.value, labels)
                ),
            );
        }
        push_line(&mut out, String::new());

        push_line(&mut out, "curvature (nonzero R(Ei,Ej)Ek, i<j):".into());
        for row in &self.curvature {
            push_line(
                &mut out,
                format!(
                    "  R({},{}){} = {}",
                    labels[row.indices[0]],
                    labels[row.indices[1]],
                    labels[row.indices[2]],
                    format_combination(&row.value, labels)
                ),
            );
        }
        push_line(&mut out, String::new());

        push_line(&mut out, "sectional curvature (nondegenerate basis planes):".into());
        for row in &self.sectional {
            push_line(
                &mut out,
                format!(
                    "  K({}) = {}",
                    fmt_idx(labels, &row.indices),
                    format_rational(&row.value)
                ),
            );
        }
        push_line(&mut out, String::new());

        match (&self.nijenhuis, &self.integrable) {
            (Some(nij), Some((integrable, witness))) => {
                push_line(&mut out, "nijenhuis tensor (nonzero N_J, i<j):".into());
                for row in nij {
                    push_line(
                        &mut out,
                        format!(
                            "  N_J({}) = {}",
                            fmt_idx(labels, &row.indices),
                            format_combination(&row.value, labels)
                        ),
                    );
                }
                let verdict = match witness {
                    None => format!("integrable: {integrable}"),
                    Some((i, j)) => format!(
                        "integrable: {integrable} (witness N_J({},{}))",
                        labels[*i], labels[*j]
                    ),
                };
                push_line(&mut out, verdict);
                push_line(&mut out, String::new());
            }
            _ => push_line(&mut out, "nijenhuis tensor: n/a (no almost complex structure)\n".into()),
        }

        if let (Some(dw), Some((ak, witness))) = (&self.d_omega, &self.almost_kahler) {
            push_line(&mut out, "d_omega (nonzero, i<j<k):".into());
            for row in dw {
                push_line(
                    &mut out,
                    format!(
                        "  d_omega({}) = {}",
                        fmt_idx(labels, &row.indices),
                        format_rational(&row.value)
                    ),
                );
            }
            let verdict = match witness {
                None => format!("almost_kahler: {ak}"),
                Some((i, j, k)) => format!(
                    "almost_kahler: {ak} (witness d_omega({},{},{}))",
                    labels[*i], labels[*j], labels[*k]
                ),
            };
            push_line(&mut out, verdict);
            if let Some(pf) = &self.omega_pfaffian {
                push_line(&mut out, format!("omega pfaffian: {}", format_rational(pf)));
            }
            push_line(&mut out, String::new());
        }

        if let Some(nbj) = &self.nabla_j {
            push_line(&mut out, "nabla J (nonzero):".into());
            for row in nbj {
                push_line(
                    &mut out,
                    format!(
                        "  (nabla_{} J){} = {}",
                        labels[row.indices[0]],
                        labels[row.indices[1]],
                        format_combination(&row.value, labels)
                    ),
                );
            }
            push_line(&mut out, String::new());
        }

        match &self.locally_symmetric_witness {
            None => push_line(&mut out, format!("locally_symmetric: {}", self.locally_symmetric)),
            Some(([a, b, c, d], v)) => {
                push_line(&mut out, format!("locally_symmetric: {}", self.locally_symmetric));
                push_line(
                    &mut out,
                    format!(
                        "  witness: (nabla_{} R)({},{}){} = {}",
                        labels[*a],
                        labels[*b],
                        labels[*c],
                        labels[*d],
                        format_combination(v, labels)
                    ),
                );
            }
        }
        push_line(&mut out, String::new());

        push_line(&mut out, "isotropy generators (derivation, metric-skew, J-commutation defects):".into());
        for (g, defects) in self.isotropy.iter().enumerate() {
            let j = defects
                .j_commutation
                .as_ref()
                .map_or("n/a".to_string(), format_rational);
            push_line(
                &mut out,
                format!(
                    "  D{}: ({}, {}, {})",
                    g + 1,
                    format_rational(&defects.derivation),
                    format_rational(&defects.metric_skewness),
                    j
                ),
            );
        }
        out
    }

    /// Canonical JSON rendering: lexicographic keys, rationals as strings.
    pub fn to_json(&self) -> Value {
        let labels = &self.basis;
        let table = |rows: &[TableRow]| -> Value {
            Value::Array(
                rows.iter()
                    .map(|row| {
                        json!({
                            "indices": row.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
                            "value": format_combination(&row.value, labels),
                            "coords": row.value.coords().iter().map(format_rational).collect::<Vec<_>>(),
                        })
                    })
                    .collect(),
            )
        };
        let scalar_table = |rows: &[ScalarRow]| -> Value {
            Value::Array(
                rows.iter()
                    .map(|row| {
                        json!({
                            "indices": row.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
                            "value": format_rational(&row.value),
                        })
                    })
                    .collect(),
            )
        };

        let mut m = Map::new();
        m.insert("algebra".into(), json!(self.name));
        m.insert("dim".into(), json!(self.dim));
        m.insert("basis".into(), json!(self.basis));
        if let Some(eps) = &self.signature {
            m.insert(
                "signature".into(),
                Value::Array(eps.iter().map(|e| json!(format_rational(e))).collect()),
            );
        }
        m.insert("connection".into(), table(&self.connection));
        m.insert("curvature".into(), table(&self.curvature));
        m.insert("sectional_curvature".into(), scalar_table(&self.sectional));
        if let Some(nij) = &self.nijenhuis {
            m.insert("nijenhuis".into(), table(nij));
        }
        if let Some((integrable, witness)) = &self.integrable {
            m.insert("integrable".into(), json!(integrable));
            if let Some((i, j)) = witness {
                m.insert("integrable_witness".into(), json!([i + 1, j + 1]));
            }
        }
        if let Some(dw) = &self.d_omega {
            m.insert("d_omega".into(), scalar_table(dw));
        }
        if let Some((ak, witness)) = &self.almost_kahler {
            m.insert("almost_kahler".into(), json!(ak));
            if let Some((i, j, k)) = witness {
                m.insert("almost_kahler_witness".into(), json!([i + 1, j + 1, k + 1]));
            }
        }
        if let Some(nbj) = &self.nabla_j {
            m.insert("nabla_j".into(), table(nbj));
        }
        if let Some(pf) = &self.omega_pfaffian {
            m.insert("omega_pfaffian".into(), json!(format_rational(pf)));
        }
        m.insert("locally_symmetric".into(), json!(self.locally_symmetric));
        if let Some(([a, b, c, d], v)) = &self.locally_symmetric_witness {
            m.insert(
                "locally_symmetric_witness".into(),
                json!({
                    "indices": [a + 1, b + 1, c + 1, d + 1],
                    "value": format_combination(v, labels),
                }),
            );
        }
        m.insert(
            "isotropy".into(),
            Value::Array(
                self.isotropy
                    .iter()
                    .map(|d| {
                        let mut o = Map::new();
                        o.insert("derivation_defect".into(), json!(format_rational(&d.derivation)));
                        o.insert(
                            "metric_skewness_defect".into(),
                            json!(format_rational(&d.metric_skewness)),
                        );
                        if let Some(j) = &d.j_commutation {
                            o.insert("j_commutation_defect".into(), json!(format_rational(j)));
                        }
                        o.insert("all_zero".into(), json!(d.all_zero()));
                        Value::Object(o)
                    })
                    .collect(),
            ),
        );
        Value::Object(m)
    }
}

/// Text rendering of a discrepancy ledger.
pub fn ledger_to_text(ledger: &DiscrepancyLedger) -> String {
    let mut out = String::new();
    out.push_str(&format!("discrepancy ledger: {}\n", ledger.algebra));
    let width = ledger
        .entries
        .iter()
        .map(|e| e.quantity.len())
        .max()
        .unwrap_or(0);
    for e in &ledger.entries {
        out.push_str(&format!(
            "  {:width$}  published: {:<14} engine: {:<14} [{}]",
            e.quantity,
            e.published,
            e.engine,
            e.status.as_str(),
            width = width
        ));
        if !e.note.is_empty() {
            out.push_str(&format!("  ({})", e.note));
        }
        out.push('\n');
    }
    out
}

/// Canonical JSON rendering of a discrepancy ledger.
pub fn ledger_to_json(ledger: &DiscrepancyLedger) -> Value {
    let entry = |e: &LedgerEntry| -> Value {
        let mut m = Map::new();
        m.insert("location".into(), json!(e.location));
        m.insert("quantity".into(), json!(e.quantity));
        m.insert("published".into(), json!(e.published));
        m.insert("engine".into(), json!(e.engine));
        m.insert("status".into(), json!(e.status.as_str()));
        if !e.note.is_empty() {
            m.insert("note".into(), json!(e.note));
        }
        Value::Object(m)
    };
    json!({
        "algebra": ledger.algebra,
        "entries": Value::Array(ledger.entries.iter().map(entry).collect()),
    })
}

/// Serializes a JSON value canonically: sorted keys (the default map is
/// ordered), two-space indentation, trailing newline.
pub fn canonical_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Helper used by geodesic summaries.
pub fn rational_vec_to_f64(v: &Vector<Rational>) -> Vector<f64> {
    v.map(rational_to_f64)
}
