use std::path::Path;

use serde_json::{json, Value};

use spinplanar::qit::{ElementJson, QitObject};
use spinplanar::relations::RelationSuite;
use spinplanar::subfactor::{construct, verify_planar_closure, BuildOptions, GroupTable, PlanarSubalgebra};
use spinplanar::tangle::mult;
use spinplanar::{Execution, SpinElement};

use crate::error::CliError;
use crate::output::{emit, gap, print_json, sci};
use crate::GlobalOpts;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn read_object(path: &Path) -> Result<QitObject, CliError> {
    QitObject::from_json_str(&read(path)?).map_err(|e| CliError::input(path, e))
}

fn parse_value(path: &Path) -> Result<Value, CliError> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::input(path, format!("line {}, column {}: {e}", e.line(), e.column())))
}

/// Name of the class the object corresponds to; Latin squares enter through
/// their quantum Latin squares.
fn class(obj: &QitObject) -> &'static str {
    match obj {
        QitObject::Latin(_) => "quantum Latin square",
        other => other.description(),
    }
}

fn execution(g: &GlobalOpts) -> Execution {
    if g.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

pub fn check(g: &GlobalOpts, path: &Path) -> Result<bool, CliError> {
    let obj = read_object(path)?;
    let defects = obj.defects(g.tol)?;
    let cert = match obj.element_unchecked() {
        Ok(u) => Some(obj.certify(&u, g.tol)?),
        Err(_) => None,
    };
    let verdict = defects.is_empty() && cert.as_ref().is_some_and(|c| c.verdict);

    let mut text = Vec::new();
    match (&cert, verdict) {
        (Some(c), true) => text.push(format!("{}; {}", class(&obj), c.kind)),
        _ => text.push(format!("{} (n = {}): rejected", obj.description(), obj.n())),
    }
    for d in &defects {
        text.push(format!("  defect: {d}"));
    }
    if let Some(c) = &cert {
        text.push(format!("  certificate {} (tolerance {})", c.kind, sci(c.tolerance)));
        for r in &c.residuals {
            let mark = if r.value <= c.tolerance { "ok" } else { "FAIL" };
            text.push(format!("    {:<24} {:>10}  {mark}", r.relation, sci(r.value)));
        }
    }
    let report = json!({
        "command": "check",
        "object": obj.kind(),
        "class": class(&obj),
        "n": obj.n(),
        "defects": defects,
        "certificate": cert.as_ref().map(|c| json!({
            "name": c.kind.to_string(),
            "kind": c.kind,
            "residuals": c.residuals,
            "verdict": c.verdict,
            "tolerance": c.tolerance,
        })),
        "verdict": verdict,
    });
    emit(g.format, &text, report);
    Ok(verdict)
}

/// Always writes JSON: element coefficients for an object, an object for element coefficients.
pub fn convert(path: &Path, to: Option<&str>, tol: f64) -> Result<bool, CliError> {
    let value = parse_value(path)?;
    let out = if value.get("terms").is_some() {
        let dump: ElementJson = serde_json::from_value(value).map_err(|e| CliError::input(path, e))?;
        let kind = to
            .or(dump.source.as_deref())
            .ok_or_else(|| CliError::Usage("element has no `source`; pass --to <type>".into()))?;
        let u = dump.to_element().map_err(|e| CliError::input(path, e))?;
        QitObject::from_element(kind, &u, tol)?.to_json_value()
    } else {
        let obj = QitObject::from_json_value(value).map_err(|e| CliError::input(path, e))?;
        let u = obj.to_element(tol)?;
        serde_json::to_value(ElementJson::from_element(&u, Some(obj.kind()))).expect("element serializes")
    };
    print_json(&out);
    Ok(true)
}

fn level_rows(q: &PlanarSubalgebra) -> Vec<String> {
    let mut rows = vec![format!("  {:>2}  {:>6}  {:>10}  {:>10}", "m", "dim", "residual", "gap")];
    rows.extend(
        q.levels
            .iter()
            .map(|l| format!("  {:>2}  {:>6}  {:>10}  {:>10}", l.m, l.dim, sci(l.residual), gap(l.gap))),
    );
    rows
}

pub fn qdims(g: &GlobalOpts, path: &Path, max_level: usize, kernel_tol: f64, closure: bool) -> Result<bool, CliError> {
    let obj = read_object(path)?;
    let Some(ell) = obj.ell() else {
        return Err(CliError::Usage(
            "qdims needs a {0,ℓ}-biunitary; a unitary error basis yields an {A,R(4,+)}-biunitary, \
             and no subfactor construction is known for that case"
                .into(),
        ));
    };
    if closure && max_level == 0 {
        return Err(CliError::Usage("--closure needs --max-level of at least 1".into()));
    }
    let u = obj.to_element(g.tol)?;
    let cert = obj.certify(&u, g.tol)?.into_result()?;
    let opts = BuildOptions { kernel_tol, cert_tol: g.tol, row_cap: g.cap, exec: execution(g) };
    let q = construct(&u, ell, max_level, &opts)?;

    let mut text = vec![format!("{} (n = {}): {}, cabling ℓ = {ell}", class(&obj), obj.n(), cert.kind)];
    text.extend(level_rows(&q));
    let mut verdict = true;
    let closure_report = if closure {
        let r = verify_planar_closure(&q.cabling(), &q.levels)?;
        verdict = r.passed(g.tol);
        text.push(format!("  closure over levels {}..{}:", r.first_level, r.last_level));
        for (name, v) in [
            ("multiplication", r.multiplication),
            ("inclusion", r.inclusion),
            ("expectation", r.expectation),
            ("rotation", r.rotation),
            ("adjoint", r.adjoint),
            ("unit", r.unit),
            ("modulus", r.modulus),
        ] {
            text.push(format!("    {name:<16} {:>10}  {}", sci(v), if v <= g.tol { "ok" } else { "FAIL" }));
        }
        Some(r)
    } else {
        None
    };
    let report = json!({
        "command": "qdims",
        "object": obj.kind(),
        "n": obj.n(),
        "ell": ell,
        "certificate": cert.kind.to_string(),
        "levels": q.report().levels,
        "closure": closure_report,
        "verdict": verdict,
    });
    emit(g.format, &text, report);
    Ok(verdict)
}

fn read_group(path: &Path) -> Result<GroupTable, CliError> {
    let value = parse_value(path)?;
    let rows = match value {
        Value::Array(_) => value,
        Value::Object(mut m) => m.remove("rows").ok_or_else(|| CliError::input(path, "expected a `rows` field"))?,
        _ => return Err(CliError::input(path, "expected an array of rows or a `latin` object")),
    };
    let rows: Vec<Vec<usize>> = serde_json::from_value(rows).map_err(|e| CliError::input(path, e))?;
    GroupTable::from_one_based(rows).map_err(|e| CliError::input(path, e))
}

pub fn group(
    g: &GlobalOpts,
    name: Option<&str>,
    path: Option<&Path>,
    max_level: usize,
    kernel_tol: f64,
) -> Result<bool, CliError> {
    let (table, label) = match (name, path) {
        (Some(name), _) => (GroupTable::builtin(name).map_err(|e| CliError::Usage(e.to_string()))?, name.to_owned()),
        (None, Some(path)) => (read_group(path)?, path.display().to_string()),
        (None, None) => return Err(CliError::Usage("pass --name or --input".into())),
    };
    let n = table.order();
    let opts = BuildOptions { kernel_tol, cert_tol: g.tol, row_cap: g.cap, exec: execution(g) };
    let q = construct(&table.biunitary()?, 1, max_level, &opts)?;
    let predicted = table.predicted_dimensions(max_level);

    let mut verdict = true;
    let mut levels = Vec::new();
    let mut text = vec![
        format!("group {label} (order {n}): Latin square biunitary in P_(3,+), cabling ℓ = 1"),
        format!("  {:>2}  {:>9}  {:>8}  {:>10}  {:>10}  {:>10}", "m", "predicted", "computed", "residual", "orbit sums", "gap"),
    ];
    for (level, &want) in q.levels.iter().zip(&predicted) {
        let mut orbit = 0.0f64;
        for s in table.orbit_sums(level.m)? {
            orbit = orbit.max(level.projection_residual(&s)?);
        }
        let ok = level.dim == want && orbit <= g.tol && level.residual <= g.tol;
        verdict &= ok;
        text.push(format!(
            "  {:>2}  {:>9}  {:>8}  {:>10}  {:>10}  {:>10}{}",
            level.m,
            want,
            level.dim,
            sci(level.residual),
            sci(orbit),
            gap(level.gap),
            if ok { "" } else { "  MISMATCH" }
        ));
        levels.push(json!({
            "m": level.m,
            "predicted": want,
            "dim": level.dim,
            "residual": level.residual,
            "orbit_residual": orbit,
            "gap": level.gap,
        }));
    }

    let x_check = if let Ok(level2) = q.level(2) {
        let xs = (0..n).map(|a| table.x_element(a)).collect::<spinplanar::Result<Vec<SpinElement>>>()?;
        let mut residual = 0.0f64;
        let mut product_defect = 0.0f64;
        for (a, xa) in xs.iter().enumerate() {
            residual = residual.max(level2.projection_residual(xa)?);
            for (b, xb) in xs.iter().enumerate() {
                product_defect = product_defect.max(mult(xa, xb)?.max_abs_diff(&xs[table.mul(a, b)]));
            }
        }
        verdict &= residual <= g.tol && product_defect <= g.tol;
        text.push(format!("  X_g in level 2: max residual {}", sci(residual)));
        text.push(format!("  X_g X_h = X_gh: max defect {}", sci(product_defect)));
        Some(json!({ "residual": residual, "product_defect": product_defect }))
    } else {
        None
    };
    text.push(format!("verdict: {}", if verdict { "computed structure matches the group" } else { "MISMATCH" }));
    let report = json!({
        "command": "group",
        "group": label,
        "order": n,
        "levels": levels,
        "x_elements": x_check,
        "verdict": verdict,
    });
    emit(g.format, &text, report);
    Ok(verdict)
}

pub fn selftest(g: &GlobalOpts, spins: usize, samples: usize, max_width: usize) -> Result<bool, CliError> {
    if spins == 0 {
        return Err(CliError::Usage("--spins must be at least 1".into()));
    }
    let suite = RelationSuite { n: spins, seed: g.seed, samples, max_width };
    let report = suite.run(execution(g))?;
    let verdict = report.all_passed(g.tol);
    let mut text = vec![format!(
        "relation suite: N = {spins}, seed {}, {samples} samples per color, widths 0..={max_width}",
        g.seed
    )];
    for c in &report.checks {
        text.push(format!(
            "  {:<28} {:>6} evals  max {:>10}  {}",
            c.name,
            c.evaluations,
            sci(c.max_residual),
            if c.passed(g.tol) { "ok" } else { "FAIL" }
        ));
    }
    text.push(format!("verdict: {}", if verdict { "all relations hold" } else { "failures above" }));
    let json = json!({ "command": "selftest", "tolerance": g.tol, "report": report, "verdict": verdict });
    emit(g.format, &text, json);
    Ok(verdict)
}
