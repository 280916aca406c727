//! Report emission. JSON output is built on sorted-key maps so identical
//! runs are byte-identical; tables are for reading, JSON for tooling.

use serde_json::{json, Value};

use sncurve_core::analysis::{InvariantRecord, SNCReport, SweepEntry};
use sncurve_core::logforms::SplayedReport;
use sncurve_core::selftest::CriterionOutcome;
use sncurve_core::{LaurentSeries, Prec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

pub fn render(format: Format, json: &Value, table: String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(json).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Table => table,
    }
}

/// Exact series as data: term list plus the precision horizon.
pub fn series_json(s: &LaurentSeries) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(k, c)| json!([k, c.to_string()]))
        .collect();
    let prec = match s.prec() {
        Prec::Exact => Value::String("exact".to_string()),
        Prec::At(p) => Value::from(p),
    };
    json!({ "terms": terms, "prec": prec })
}

pub fn invariants_json(rec: &InvariantRecord) -> Value {
    json!({
        "label": rec.label,
        "branches": rec.branches,
        "multiplicity": rec.multiplicity,
        "delta": rec.delta,
        "conductor": rec.conductor,
        "ramification": rec.ramification,
        "milnor": rec.milnor,
        "lambda": rec.lambda,
        "h1": rec.h1,
        "semigroup_gaps": rec.semigroup_gaps,
        "window": rec.window,
    })
}

fn seq(v: &[i64]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(","))
}

fn grid3(rows: &[[String; 3]]) -> String {
    let width = |col: usize| rows.iter().map(|r| r[col].chars().count()).max().unwrap_or(0);
    let (w0, w1) = (width(0), width(1));
    let mut out = String::new();
    for r in rows {
        out.push_str(&format!(
            "{}{}  {}{}  {}\n",
            r[0],
            " ".repeat(w0 - r[0].chars().count()),
            r[1],
            " ".repeat(w1 - r[1].chars().count()),
            r[2]
        ));
    }
    out
}

fn kv_table(rows: &[(String, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let pad = w - k.chars().count();
        out.push_str(k);
        out.push_str(&" ".repeat(pad + 2));
        out.push_str(v);
        out.push('\n');
    }
    out
}

pub fn invariants_table(rec: &InvariantRecord) -> String {
    let gaps = match &rec.semigroup_gaps {
        Some(g) => seq(g),
        None => "-".to_string(),
    };
    kv_table(&[
        ("label".to_string(), rec.label.clone()),
        ("branches".to_string(), rec.branches.to_string()),
        ("multiplicity".to_string(), rec.multiplicity.to_string()),
        ("delta".to_string(), rec.delta.to_string()),
        ("conductor".to_string(), seq(&rec.conductor)),
        ("ramification".to_string(), seq(&rec.ramification)),
        ("milnor".to_string(), rec.milnor.to_string()),
        ("lambda".to_string(), rec.lambda.to_string()),
        ("h1".to_string(), rec.h1.to_string()),
        ("semigroup gaps".to_string(), gaps),
        ("window".to_string(), rec.window.to_string()),
    ])
}

fn verdict(v: Option<bool>) -> String {
    match v {
        Some(b) => b.to_string(),
        None => "not applicable".to_string(),
    }
}

pub fn snc_json(rep: &SNCReport) -> Value {
    let ideals: Vec<Value> = rep
        .ideals
        .iter()
        .map(|i| {
            json!({
                "label": i.label,
                "min_orders": i.min_orders,
                "tails": i.tails,
            })
        })
        .collect();
    json!({
        "invariants": invariants_json(&rep.invariants),
        "routes": {
            "residue_module": rep.routes.residue_module,
            "jacobian_conductor": rep.routes.jacobian_conductor,
            "derivation": rep.routes.derivation,
        },
        "flags": {
            "snc": rep.flags.snc,
            "gorenstein": rep.flags.gorenstein,
            "normal_crossing": rep.flags.normal_crossing,
            "plane_normal_crossing": rep.flags.plane_normal_crossing,
            "unramified": rep.flags.unramified,
            "free": rep.flags.free,
        },
        "ideals": ideals,
        "diagnostics": {
            "conductor_shift": rep.diagnostics.conductor_shift,
            "sigma0_differentials_holomorphic": rep.diagnostics.sigma0_differentials_holomorphic,
            "piene": {
                "applicable": rep.diagnostics.piene.applicable,
                "branches_smooth": rep.diagnostics.piene.branches_smooth,
                "holds": rep.diagnostics.piene.holds,
            },
        },
    })
}

pub fn snc_table(rep: &SNCReport) -> String {
    let mut out = invariants_table(&rep.invariants);
    out.push('\n');
    out.push_str(&kv_table(&[
        (
            "route: residue module = normalization".to_string(),
            rep.routes.residue_module.to_string(),
        ),
        (
            "route: jacobian ideal = conductor".to_string(),
            verdict(rep.routes.jacobian_conductor),
        ),
        (
            "route: derivations into conductor".to_string(),
            verdict(rep.routes.derivation),
        ),
    ]));
    out.push('\n');
    out.push_str(&kv_table(&[
        ("saito normal crossing".to_string(), rep.flags.snc.to_string()),
        ("gorenstein".to_string(), rep.flags.gorenstein.to_string()),
        (
            "normal crossing (seminormal)".to_string(),
            rep.flags.normal_crossing.to_string(),
        ),
        (
            "plane normal crossing".to_string(),
            rep.flags.plane_normal_crossing.to_string(),
        ),
        ("unramified".to_string(), rep.flags.unramified.to_string()),
        ("free divisor".to_string(), rep.flags.free.to_string()),
    ]));
    out.push('\n');
    let piene = match (rep.diagnostics.piene.applicable, rep.diagnostics.piene.holds) {
        (false, _) => "not applicable".to_string(),
        (true, v) => format!(
            "{} (branches smooth: {})",
            verdict(v),
            rep.diagnostics.piene.branches_smooth
        ),
    };
    out.push_str(&kv_table(&[
        (
            "conductor shift onto normalization forms".to_string(),
            rep.diagnostics.conductor_shift.to_string(),
        ),
        (
            "residue module differentials holomorphic".to_string(),
            rep.diagnostics
                .sigma0_differentials_holomorphic
                .to_string(),
        ),
        ("piene product identity".to_string(), piene),
    ]));
    out.push('\n');
    let mut rows = vec![[
        "module".to_string(),
        "min orders".to_string(),
        "window tails".to_string(),
    ]];
    for i in &rep.ideals {
        rows.push([i.label.clone(), seq(&i.min_orders), seq(&i.tails)]);
    }
    out.push_str(&grid3(&rows));
    out
}

pub struct ResidueEntry {
    pub a: String,
    pub b: String,
    pub logarithmic: bool,
    pub residues: Vec<LaurentSeries>,
    pub weakly_holomorphic: bool,
}

pub fn residue_json(label: &str, entries: &[ResidueEntry]) -> Value {
    let forms: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "a": e.a,
                "b": e.b,
                "logarithmic": e.logarithmic,
                "residues": e.residues.iter().map(series_json).collect::<Vec<_>>(),
                "weakly_holomorphic": e.weakly_holomorphic,
            })
        })
        .collect();
    json!({ "label": label, "forms": forms })
}

pub fn residue_table(label: &str, entries: &[ResidueEntry]) -> String {
    let mut out = format!("label: {label}\n");
    for (k, e) in entries.iter().enumerate() {
        out.push_str(&format!("form {}: a = {}, b = {}\n", k + 1, e.a, e.b));
        out.push_str(&format!("  logarithmic: {}\n", e.logarithmic));
        for (i, r) in e.residues.iter().enumerate() {
            out.push_str(&format!("  residue on branch {i}: {r}\n"));
        }
        out.push_str(&format!("  weakly holomorphic: {}\n", e.weakly_holomorphic));
    }
    out
}

pub fn splayed_json(
    label: &str,
    divisors: (&str, &str),
    parts: (&[usize], &[usize]),
    rep: &SplayedReport,
) -> Value {
    json!({
        "label": label,
        "partition": {
            "first": { "divisor": divisors.0, "branches": parts.0 },
            "second": { "divisor": divisors.1, "branches": parts.1 },
        },
        "splayed": rep.splayed,
        "sigma0_splits": rep.sigma0_splits,
    })
}

pub fn splayed_table(
    label: &str,
    divisors: (&str, &str),
    parts: (&[usize], &[usize]),
    rep: &SplayedReport,
) -> String {
    let idx = |p: &[usize]| {
        let v: Vec<String> = p.iter().map(|i| i.to_string()).collect();
        format!("branches {{{}}}", v.join(","))
    };
    kv_table(&[
        ("label".to_string(), label.to_string()),
        (format!("first divisor {}", divisors.0), idx(parts.0)),
        (format!("second divisor {}", divisors.1), idx(parts.1)),
        ("splayed (twisted jacobian sum)".to_string(), rep.splayed.to_string()),
        ("residue module splits".to_string(), rep.sigma0_splits.to_string()),
    ])
}

pub fn sweep_json(label: &str, bound: usize, entries: &[SweepEntry]) -> Value {
    let rows: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "branches": e.indices,
                "label": e.label,
                "delta": e.delta,
                "snc": e.snc,
            })
        })
        .collect();
    json!({ "label": label, "bound": bound, "entries": rows })
}

pub fn sweep_table(label: &str, entries: &[SweepEntry]) -> String {
    let mut out = format!("label: {label}\n");
    let mut rows = vec![[
        "branches".to_string(),
        "delta".to_string(),
        "saito".to_string(),
    ]];
    for e in entries {
        let v: Vec<String> = e.indices.iter().map(|i| i.to_string()).collect();
        rows.push([format!("{{{}}}", v.join(",")), e.delta.to_string(), e.snc.to_string()]);
    }
    out.push_str(&grid3(&rows));
    out
}

pub fn selftest_json(outcomes: &[CriterionOutcome]) -> Value {
    let criteria: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            let checks: Vec<Value> = o
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                .collect();
            json!({
                "index": o.index,
                "title": o.title,
                "passed": o.passed(),
                "checks": checks,
            })
        })
        .collect();
    let passed = outcomes.iter().all(|o| o.passed());
    json!({ "criteria": criteria, "passed": passed })
}

pub fn selftest_table(outcomes: &[CriterionOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        out.push_str(&o.headline());
        out.push('\n');
        for c in o.failures() {
            out.push_str(&format!("  failed: {} ({})\n", c.name, c.detail));
        }
    }
    let ok = outcomes.iter().filter(|o| o.passed()).count();
    out.push_str(&format!("{ok}/{} criteria passed\n", outcomes.len()));
    out
}
