//! One function per subcommand; each returns a finished report.

use std::path::Path;

use rbcalc::cohomology::{cohomology_rank, les_check, validate_rb, ComplexId, FiniteRBData};
use rbcalc::freeoperad::{parse_generator, render_element};
use rbcalc::linfty::{
    antisymmetry_sweep, check_homotopy_rb, jacobi_sweep, mc_check as mc_verdict, oracle_sweep,
    twisted_differential_check, HomElement, HomotopyRBStructure, SweepConfig,
};
use rbcalc::rbinfty::{boundary, boundary_generator, verify_d2 as d2_sweep, verify_minimal_model};
use rbcalc::report::CheckResult;
use rbcalc::scalar::{fmt_rational, parse_rational, Rational};
use serde_json::{json, Value};

use crate::report::{InputError, RunReport};

fn fail(mut r: RunReport, kind: &'static str, message: impl ToString) -> RunReport {
    r.error = Some(InputError::new(kind, message));
    r
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::new("io", format!("{}: {e}", path.display())))
}

fn lambda_arg(text: Option<&str>) -> Result<Option<Rational>, InputError> {
    text.map(|t| parse_rational(t).ok_or_else(|| InputError::new("parse", format!("--lambda: cannot read {t:?}"))))
        .transpose()
}

/// Reads `FiniteRBData`, falling back to the regular bimodule.
fn load_data(path: &Path, lambda: Option<&str>) -> Result<FiniteRBData, InputError> {
    let text = read(path)?;
    let mut data = FiniteRBData::from_json(&text).map_err(|e| InputError::new("parse", e))?;
    if let Some(l) = lambda_arg(lambda)? {
        data.lambda = l;
    }
    if data.module.is_none() {
        data = data.with_regular_module();
    }
    Ok(data)
}

pub fn verify_d2(seed: u64, max_arity: usize) -> RunReport {
    let mut r = RunReport::new("verify-d2", seed);
    r.param("max_arity", max_arity);
    if max_arity < 2 {
        return fail(r, "argument", "--max-arity must be at least 2");
    }
    r.push(d2_sweep(max_arity));
    r
}

pub fn verify_minimal(seed: u64, max_arity: usize, max_weight: usize) -> RunReport {
    let mut r = RunReport::new("verify-minimal", seed);
    r.param("max_arity", max_arity);
    r.param("max_weight", max_weight);
    if max_arity < 1 || max_weight < 1 {
        return fail(r, "argument", "--max-arity and --max-weight must be at least 1");
    }
    r.extend(verify_minimal_model(max_arity, max_weight));
    r
}

pub fn expand(seed: u64, name: &str) -> RunReport {
    let mut r = RunReport::new("expand", seed);
    r.param("generator", name);
    let g = match parse_generator(name) {
        Ok(g) => g,
        Err(e) => return fail(r, "parse", e),
    };
    let d = boundary_generator(g);
    let text = render_element(&d);
    let mut c = CheckResult::new("d2_of_expansion");
    let dd = boundary(&d);
    c.record(dd.is_zero(), || render_element(&dd));
    r.push(c);
    r.text.push(format!("∂{g} = {text}"));
    r.result = Some(json!({"generator": g.to_string(), "expansion": text, "terms": d.len()}));
    r
}

fn complexes(selection: &str) -> Result<Vec<ComplexId>, InputError> {
    if selection.eq_ignore_ascii_case("all") {
        return Ok(vec![ComplexId::Alg, ComplexId::Rbo, ComplexId::Rba]);
    }
    selection.parse::<ComplexId>().map(|c| vec![c]).map_err(|e| InputError::new("argument", e))
}

fn validated(path: &Path, lambda: Option<&str>) -> Result<FiniteRBData, InputError> {
    let data = load_data(path, lambda)?;
    let verdict = validate_rb(&data).map_err(|e| InputError::new("parse", e))?;
    match verdict.first() {
        Some(w) => Err(InputError::new("invalid", w)),
        None => Ok(data),
    }
}

pub fn cohomology(seed: u64, input: &Path, selection: &str, max_degree: usize, lambda: Option<&str>) -> RunReport {
    let mut r = RunReport::new("cohomology", seed);
    r.param("input", input.display());
    r.param("complex", selection);
    r.param("max_degree", max_degree);
    if let Some(l) = lambda {
        r.param("lambda", l);
    }
    let ids = match complexes(selection) {
        Ok(ids) => ids,
        Err(e) => {
            r.error = Some(e);
            return r;
        }
    };
    let data = match validated(input, lambda) {
        Ok(d) => d,
        Err(e) => {
            r.error = Some(e);
            return r;
        }
    };
    let mut table = serde_json::Map::new();
    for id in &ids {
        let mut row = Vec::new();
        for n in 0..=max_degree {
            let rank = cohomology_rank(&data, *id, n).expect("validated data");
            row.push(rank.betti);
        }
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        r.text.push(format!("{id:?} H^0..H^{max_degree}: {}", cells.join(" ")));
        table.insert(format!("{id:?}").to_uppercase(), json!(row));
    }
    if ids.len() == 3 {
        let mut les = CheckResult::new("long_exact_sequence");
        for n in 0..=max_degree {
            let (direct, via) = les_check(&data, n).expect("validated data");
            les.record(direct == via, || format!("degree {n}: dim H_RBA = {direct}, sequence gives {via}"));
        }
        r.push(les);
    }
    r.result = Some(json!({
        "dim": data.dim,
        "lambda": fmt_rational(&data.lambda),
        "betti": Value::Object(table),
    }));
    r
}

/// The first nonzero coefficient of an element, in tensor form.
fn first_entry(x: &HomElement) -> Option<String> {
    let p = x.pieces().next()?;
    let (ins, o, c) = p.map.entries().next()?;
    let ins: Vec<String> = ins.iter().map(|a| format!("e{a}")).collect();
    let ins = if ins.is_empty() { "1".to_string() } else { ins.join("⊗") };
    Some(format!("{:?} part, arity {}: {ins} ↦ {}·e{o}", p.part, p.map.arity(), fmt_rational(c)))
}

pub fn mc_check(seed: u64, input: &Path, lambda: Option<&str>, max_degree: usize) -> RunReport {
    let mut r = RunReport::new("mc-check", seed);
    r.param("input", input.display());
    r.param("max_degree", max_degree);
    if let Some(l) = lambda {
        r.param("lambda", l);
    }
    let data = match load_data(input, lambda) {
        Ok(d) => d,
        Err(e) => {
            r.error = Some(e);
            return r;
        }
    };
    let v = mc_verdict(&data);
    let mut mc = CheckResult::new("maurer_cartan");
    mc.record(v.is_mc(), || first_entry(&v.residual).unwrap_or_default());
    let mut agree = CheckResult::new("agrees_with_direct_check");
    agree.record(v.agrees(), || {
        format!(
            "MC parts (Alg {}, RBO {}) vs associative {}, Rota-Baxter {}",
            v.alg_zero, v.rbo_zero, v.associative, v.rota_baxter
        )
    });
    r.push(mc);
    r.push(agree);
    if v.is_mc() && max_degree >= 2 {
        r.push(twisted_differential_check(&data, max_degree));
    }
    r.result = Some(json!({
        "maurer_cartan": v.is_mc(),
        "associative": v.associative,
        "rota_baxter": v.rota_baxter,
        "residual": v.residual.to_string(),
    }));
    r
}

pub fn check_hrb(seed: u64, input: &Path, max_arity: usize, lambda: Option<&str>) -> RunReport {
    let mut r = RunReport::new("check-hrb", seed);
    r.param("input", input.display());
    r.param("max_arity", max_arity);
    if let Some(l) = lambda {
        r.param("lambda", l);
    }
    let loaded = read(input).and_then(|text| {
        let mut s = HomotopyRBStructure::from_json(&text).map_err(|e| InputError::new("parse", e))?;
        if let Some(l) = lambda_arg(lambda)? {
            s.lambda = l;
        }
        Ok(s)
    });
    match loaded {
        Ok(s) => r.extend(check_homotopy_rb(&s, max_arity)),
        Err(e) => r.error = Some(e),
    }
    r
}

pub fn linfty_sweep(seed: u64, samples: usize, max_dim: usize, max_arity: usize, lambda: Option<&str>) -> RunReport {
    let mut r = RunReport::new("linfty-sweep", seed);
    r.param("samples", samples);
    r.param("max_dim", max_dim);
    r.param("max_arity", max_arity);
    if let Some(l) = lambda {
        r.param("lambda", l);
    }
    let lambda = match lambda_arg(lambda) {
        Ok(l) => l,
        Err(e) => {
            r.error = Some(e);
            return r;
        }
    };
    if max_dim < 1 || max_arity < 1 {
        return fail(r, "argument", "--max-dim and --max-arity must be at least 1");
    }
    let cfg = SweepConfig {
        seed,
        samples,
        max_dim,
        max_arity,
        max_args: 4,
        lambda,
    };
    r.push(antisymmetry_sweep(&cfg));
    r.push(oracle_sweep(&cfg));
    r.push(jacobi_sweep(&cfg, false));
    r.push(jacobi_sweep(&cfg, true));
    r
}
