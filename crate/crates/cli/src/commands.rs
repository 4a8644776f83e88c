//! One function per subcommand, each producing a JSON document.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use toric_trace::latgeom::{convex_hull, minkowski_sum_all};
use toric_trace::oracle::{affine_algebra, global_residue_oracle, shape_ideal, torus_residue_oracle, trace_oracle, Embedding};
use toric_trace::poly::{parse_polynomial, rat, toric_jacobian, ExponentVector, Polynomial, Rational, Support};
use toric_trace::registry::{mixed_volume_strategies, trace_backends, TraceJob, TraceOutcome};
use toric_trace::resultants::{
    degrees_of, discriminant_dense, jacobian_resultant, leading_form_resultant, macaulay_resultant, rho, sparse_resultant,
    ResultantProblem,
};
use toric_trace::traceform::{
    chowform_from_roots, compare_denominators, dense_residue, denominator_factorization, euler_jacobi_check,
    trace_from_chowform, trace_sparse, ResidueDenominator, TraceResult,
};

use crate::error::CliError;
use crate::input::{parse_monomial, SystemFile};

/// Parsed command-line options shared by all commands.
#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub backend: String,
    pub strategy: String,
    pub p: Option<String>,
    pub q: Option<String>,
    pub monomial: Option<String>,
}

/// A JSON document and, when a cross-check failed, the error to exit with.
pub struct Report {
    pub json: Value,
    pub failure: Option<CliError>,
}

impl From<Value> for Report {
    fn from(json: Value) -> Self {
        Report { json, failure: None }
    }
}

pub fn r(x: &Rational) -> Value {
    Value::String(format!("{}/{}", x.numer(), x.denom()))
}

fn b(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

fn p_of(sys: &SystemFile, opts: &Options) -> Result<Option<Polynomial>, CliError> {
    match &opts.p {
        Some(text) => Ok(Some(sys.parse_poly(text)?)),
        None => Ok(sys.p.clone()),
    }
}

fn q_of(sys: &SystemFile, opts: &Options) -> Result<Polynomial, CliError> {
    match &opts.q {
        Some(text) => sys.parse_poly(text),
        None => Ok(sys.q.clone().unwrap_or_else(|| Polynomial::one(sys.vars.len()))),
    }
}

fn monomial_of(sys: &SystemFile, opts: &Options) -> Result<Option<Vec<i64>>, CliError> {
    let m = match &opts.monomial {
        Some(text) => Some(parse_monomial(text)?),
        None => sys.monomial.clone(),
    };
    if let Some(m) = &m {
        if m.len() != sys.vars.len() {
            return Err(CliError::Usage(format!("monomial has {} entries for {} variables", m.len(), sys.vars.len())));
        }
    }
    Ok(m)
}

fn require_monomial(sys: &SystemFile, opts: &Options) -> Result<Vec<i64>, CliError> {
    monomial_of(sys, opts)?.ok_or_else(|| CliError::Usage("this command needs --monomial or an `a:` line".into()))
}

fn trace_json(t: &TraceResult) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("value".into(), r(&t.value));
    m.insert("numerator".into(), r(&t.numerator));
    m.insert("denominator".into(), r(&t.denominator));
    m.insert("method".into(), json!(t.method.as_str()));
    if let Some(l) = &t.lattice {
        m.insert("e".into(), b(&l.e));
        m.insert("d".into(), b(&l.d));
        m.insert("index".into(), b(&l.index));
        m.insert("mixed_volume".into(), b(&l.mixed_volume));
        m.insert("essential".into(), json!(l.essential));
    }
    if let Some(s) = t.matrix_size {
        m.insert("matrix_size".into(), json!(s));
    }
    m
}

fn embedding_name(e: Embedding) -> &'static str {
    match e {
        Embedding::Affine => "affine",
        Embedding::Torus => "torus",
    }
}

fn outcome_report(command: &str, opts: &Options, out: TraceOutcome) -> Report {
    let mut m = trace_json(&out.result);
    m.insert("command".into(), json!(command));
    m.insert("backend".into(), json!(opts.backend));
    m.insert("seed".into(), json!(opts.seed));
    let mut failure = None;
    match &out.oracle {
        Some(o) => {
            m.insert(
                "oracle".into(),
                json!({"algebra": embedding_name(o.algebra), "dimension": o.dimension, "value": r(&o.value)}),
            );
            m.insert("oracle_agrees".into(), json!(o.agrees));
            if !o.agrees {
                failure = Some(CliError::Mismatch { formula: format!("{}", out.result.value), oracle: format!("{}", o.value) });
            }
        }
        None => {
            m.insert("oracle_agrees".into(), Value::Null);
        }
    }
    if let Some(note) = out.oracle_note {
        m.insert("oracle_note".into(), json!(note));
    }
    Report { json: Value::Object(m), failure }
}

/// Formula value against an oracle value, as the `auto` backend reports it.
fn checked(command: &str, opts: &Options, formula: Option<TraceResult>, oracle: Option<Rational>) -> Report {
    let mut m = match &formula {
        Some(t) => trace_json(t),
        None => {
            let v = oracle.clone().expect("one of formula or oracle");
            let mut m = serde_json::Map::new();
            m.insert("value".into(), r(&v));
            m.insert("method".into(), json!("oracle"));
            m
        }
    };
    m.insert("command".into(), json!(command));
    m.insert("backend".into(), json!(opts.backend));
    m.insert("seed".into(), json!(opts.seed));
    let mut failure = None;
    match (&formula, &oracle) {
        (Some(t), Some(o)) => {
            let agrees = t.value == *o;
            m.insert("oracle".into(), json!({"value": r(o)}));
            m.insert("oracle_agrees".into(), json!(agrees));
            if !agrees {
                failure = Some(CliError::Mismatch { formula: t.value.to_string(), oracle: o.to_string() });
            }
        }
        _ => {
            m.insert("oracle_agrees".into(), Value::Null);
        }
    }
    Report { json: Value::Object(m), failure }
}

pub fn trace(sys: &SystemFile, opts: &Options) -> Result<Report, CliError> {
    let f = sys.system()?;
    let p = p_of(sys, opts)?.ok_or_else(|| CliError::Usage("trace needs p (a `p:` line or --p)".into()))?;
    let job = TraceJob { p, q: q_of(sys, opts)?, f, seed: opts.seed };
    let backend = trace_backends().get(&opts.backend)?;
    Ok(outcome_report("trace", opts, backend.trace(&job)?))
}

pub fn chow_trace(sys: &SystemFile, opts: &Options) -> Result<Report, CliError> {
    if sys.roots.is_empty() {
        return Err(CliError::Usage("chow-trace needs `root:` lines".into()));
    }
    let p = p_of(sys, opts)?.ok_or_else(|| CliError::Usage("chow-trace needs p".into()))?;
    let q = q_of(sys, opts)?;
    let d = sys.degree.unwrap_or_else(|| p.total_degree().unwrap_or(0).max(q.total_degree().unwrap_or(0)).max(1));
    let ch = chowform_from_roots(&sys.roots, d)?;
    let t = trace_from_chowform(&ch, &p, &q)?;
    let mut root_sum = Rational::zero();
    for (xi, m) in &sys.roots {
        root_sum += rat(*m as i64) * p.evaluate(xi)? / q.evaluate(xi)?;
    }
    let mut rep = checked("chow-trace", opts, Some(t.clone()), Some(root_sum));
    if let Value::Object(m) = &mut rep.json {
        m.insert("degree_bound".into(), json!(d));
        m.insert("u_variables".into(), json!(ch.num_u_variables()));
        m.insert("chow_form_terms".into(), json!(ch.form.num_terms()));
        if opts.backend == "auto" {
            if let Ok(ideal) = shape_ideal(&sys.roots) {
                let v = trace_oracle(&p, &q, &affine_algebra(&ideal)?)?;
                m.insert("ideal_oracle".into(), r(&v));
                if v != t.value && rep.failure.is_none() {
                    rep.failure = Some(CliError::Mismatch { formula: t.value.to_string(), oracle: v.to_string() });
                }
            }
        }
    }
    Ok(rep)
}

pub fn residue(sys: &SystemFile, opts: &Options) -> Result<Report, CliError> {
    let f = sys.system()?;
    let beta = require_monomial(sys, opts)?;
    let xb = Polynomial::monomial(f.len(), ExponentVector(beta.clone()), Rational::one());
    let rep = match opts.backend.as_str() {
        "auto" => checked("residue", opts, Some(dense_residue(&beta, &f)?), Some(global_residue_oracle(&xb, &f)?)),
        "macaulay" => checked("residue", opts, Some(dense_residue(&beta, &f)?), None),
        "oracle" => checked("residue", opts, None, Some(global_residue_oracle(&xb, &f)?)),
        other => return Err(CliError::Usage(format!("residue supports the auto, macaulay and oracle backends, not `{other}`"))),
    };
    Ok(with_field(rep, "beta", json!(beta)))
}

pub fn torus_residue(sys: &SystemFile, opts: &Options) -> Result<Report, CliError> {
    let f = sys.system()?;
    let p = match (monomial_of(sys, opts)?, p_of(sys, opts)?) {
        (Some(a), _) => Polynomial::monomial(f.len(), ExponentVector(a), Rational::one()),
        (None, Some(p)) => p,
        (None, None) => return Err(CliError::Usage("torus-residue needs p or a monomial".into())),
    };
    let jt = toric_jacobian(&f)?;
    let formula = || trace_sparse(&p, &jt, &f, opts.seed);
    let rep = match opts.backend.as_str() {
        "auto" => checked("torus-residue", opts, Some(formula()?), Some(torus_residue_oracle(&p, &f)?)),
        "ce" => checked("torus-residue", opts, Some(formula()?), None),
        "oracle" => checked("torus-residue", opts, None, Some(torus_residue_oracle(&p, &f)?)),
        other => return Err(CliError::Usage(format!("torus-residue supports the auto, ce and oracle backends, not `{other}`"))),
    };
    Ok(rep)
}

fn with_field(mut rep: Report, key: &str, v: Value) -> Report {
    if let Value::Object(m) = &mut rep.json {
        m.insert(key.into(), v);
    }
    rep
}

pub fn resultant(sys: &SystemFile, opts: &Options) -> Result<Report, CliError> {
    let n = sys.vars.len();
    let polys: Vec<Polynomial> = sys.polys.values().cloned().collect();
    if polys.len() != n + 1 || !sys.polys.contains_key(&0) || sys.polys.keys().enumerate().any(|(i, k)| i != *k) {
        return Err(CliError::Usage(format!("resultant needs f0, .., f{n} for {n} variables")));
    }
    let (value, method) = match opts.backend.as_str() {
        "auto" | "ce" => (sparse_resultant(&ResultantProblem::from_polys(polys)?, opts.seed)?, "sparse-resultant"),
        "macaulay" => (macaulay_resultant(&degrees_of(&polys)?, &polys)?, "dense-resultant"),
        other => return Err(CliError::Usage(format!("resultant supports the auto, ce and macaulay backends, not `{other}`"))),
    };
    Ok(json!({
        "command": "resultant",
        "backend": opts.backend,
        "seed": opts.seed,
        "method": method,
        "value": r(&value),
        "up_to_sign": true,
    })
    .into())
}

fn supports_of(sys: &SystemFile) -> Result<Vec<Support>, CliError> {
    if !sys.supports.is_empty() {
        for (n, i) in sys.supports.keys().enumerate() {
            if *i != n + 1 {
                return Err(CliError::Usage(format!("supports must be numbered A1, A2, ... (missing A{})", n + 1)));
            }
        }
        return Ok(sys.supports.values().cloned().collect());
    }
    Ok(sys.system()?.iter().map(|g| g.support()).collect())
}

pub fn mixed_volume(sys: &SystemFile, opts: &Options) -> Result<Report, CliError> {
    let supports = supports_of(sys)?;
    let strategy = mixed_volume_strategies().get(&opts.strategy)?;
    let v = strategy.compute(&supports)?;
    Ok(json!({"command": "mixed-volume", "strategy": strategy.name(), "seed": opts.seed, "value": b(&v)}).into())
}

pub fn facets(sys: &SystemFile, opts: &Options) -> Result<Report, CliError> {
    let supports = supports_of(sys)?;
    let k = supports[0].dim();
    let refs: Vec<&Support> = supports.iter().collect();
    let hull = convex_hull(&minkowski_sum_all(&refs, k)?)?;
    let facets: Vec<Value> = hull.facets.iter().map(|f| json!({"normal": f.normal, "offset": f.offset})).collect();
    Ok(json!({
        "command": "facets",
        "seed": opts.seed,
        "dim": hull.dim,
        "vertices": hull.vertices,
        "facets": facets,
        "facets_in_span_coordinates": !hull.is_full_dimensional(),
    })
    .into())
}

pub fn denominator(sys: &SystemFile, opts: &Options) -> Result<Report, CliError> {
    let f = sys.system()?;
    let a = require_monomial(sys, opts)?;
    let q = q_of(sys, opts)?;
    let fac = denominator_factorization(&a, &q, &f, opts.seed)?;
    let facets: Vec<Value> = fac
        .facets
        .iter()
        .map(|t| {
            json!({
                "normal": t.normal,
                "ambient_normal": t.ambient_normal,
                "mu": t.mu,
                "face_index": b(&t.face_index),
                "exponent": b(&t.exponent),
                "value": r(&t.value),
            })
        })
        .collect();
    Ok(json!({
        "command": "denominator",
        "seed": opts.seed,
        "a": a,
        "essential": fac.essential,
        "base": {"exponent": b(&fac.base.exponent), "value": r(&fac.base.value)},
        "facets": facets,
        "product": r(&fac.product),
        "resultant": r(&fac.resultant),
        "agrees_up_to_sign": fac.agrees_up_to_sign(),
    })
    .into())
}

fn residue_denominator_json(d: &ResidueDenominator) -> Value {
    let facets: Vec<Value> = d
        .facets
        .iter()
        .map(|fd| {
            json!({
                "normal": fd.normal,
                "a_dot": fd.a_dot,
                "index": b(&fd.index),
                "exponent": b(&fd.exponent),
                "face_e": fd.face_e.as_ref().map(b),
                "value": fd.value.as_ref().map(r),
            })
        })
        .collect();
    json!({"facets": facets, "total_exponent": b(&d.total_exponent), "product": r(&d.product)})
}

pub fn compare(sys: &SystemFile, opts: &Options) -> Result<Report, CliError> {
    let f = sys.system()?;
    let a = require_monomial(sys, opts)?;
    let c = compare_denominators(&a, &f, opts.seed)?;
    let facets: Vec<Value> = c
        .facets
        .iter()
        .map(|(w, adot, ours, cds)| json!({"normal": w, "a_dot": adot, "ours": b(ours), "cds": b(cds)}))
        .collect();
    Ok(json!({
        "command": "compare-denominators",
        "seed": opts.seed,
        "a": a,
        "shifts": c.shifts,
        "facets": facets,
        "ours_le_cds": c.ours_le_cds,
        "strict_where_nonpositive": c.strict_where_nonpositive,
        "factorization_consistent": c.factorization_consistent,
        "ours": residue_denominator_json(&c.ours),
        "cds": residue_denominator_json(&c.cds),
    })
    .into())
}

pub fn discriminant(sys: &SystemFile, opts: &Options) -> Result<Report, CliError> {
    let f = sys.system()?;
    let lead = leading_form_resultant(&f)?;
    let jr = jacobian_resultant(&f)?;
    let disc = discriminant_dense(&f)?;
    Ok(json!({
        "command": "discriminant",
        "seed": opts.seed,
        "rho": rho(&f)?.to_string(),
        "discriminant": r(&disc),
        "jacobian_resultant": r(&jr),
        "leading_form_resultant": r(&lead),
        "up_to_sign": true,
    })
    .into())
}

pub fn euler_jacobi(sys: &SystemFile, opts: &Options) -> Result<Report, CliError> {
    let f = sys.system()?;
    let rep = euler_jacobi_check(&f)?;
    let rows = |cs: &[toric_trace::traceform::ResidueCheck]| -> Vec<Value> {
        cs.iter().map(|c| json!({"beta": c.beta, "oracle": r(&c.oracle), "formula": r(&c.formula)})).collect()
    };
    let failure = if rep.all_below_rho_zero && rep.formula_agrees {
        None
    } else {
        Some(CliError::Mismatch {
            formula: "dense residues".into(),
            oracle: format!("all_below_rho_zero = {}, formula_agrees = {}", rep.all_below_rho_zero, rep.formula_agrees),
        })
    };
    Ok(Report {
        json: json!({
            "command": "euler-jacobi",
            "seed": opts.seed,
            "rho": rep.rho.to_string(),
            "dimension": rep.dimension,
            "all_below_rho_zero": rep.all_below_rho_zero,
            "formula_agrees": rep.formula_agrees,
            "below_rho": rows(&rep.below),
            "at_rho": rows(&rep.at_rho),
        }),
        failure,
    })
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Built-in checks on the worked examples.
pub fn verify(opts: &Options) -> Result<Report, CliError> {
    let mut checks: Vec<(String, bool, Value)> = Vec::new();

    let v3 = names(&["t1", "t2", "t3"]);
    let parse3 = |s: &str| parse_polynomial(s, &v3);
    let job = TraceJob {
        p: parse3("t2^2")?,
        q: parse3("1")?,
        f: vec![parse3("-1 + t1^2 + t2^2")?, parse3("-1 + t2^2 + t3^2")?, parse3("-1 + t1^2 + t2^2 + t3^2")?],
        seed: opts.seed,
    };
    let out = trace_backends().get("auto")?.trace(&job)?;
    let ok = out.result.value == rat(8) && out.oracle.as_ref().is_some_and(|o| o.agrees);
    checks.push(("cylinders-and-sphere trace".into(), ok, r(&out.result.value)));

    let v2 = names(&["t1", "t2"]);
    let parse2 = |s: &str| parse_polynomial(s, &v2);
    let (c12, c13, c22, c23) = (rat(-2), rat(5), rat(4), rat(-3));
    let f = vec![parse2("3*t1 - 2*t1*t2 + 5*t2^2")?, parse2("7*t2 + 4*t1*t2 - 3*t1^2")?];
    let q = parse2("2 - t1 + 3*t2")?;
    let fac = denominator_factorization(&[2, 0], &q, &f, opts.seed)?;
    let face_values: Vec<Rational> = fac.facets.iter().map(|t| t.value.clone()).collect();
    let expected = [c23.clone(), &c22 * &c12 - &c13 * &c23];
    let faces_ok = face_values.len() == 2
        && expected.iter().all(|e| face_values.iter().any(|v| *v == *e || *v == -e.clone()));
    checks.push(("cds denominator factorization".into(), fac.agrees_up_to_sign() && faces_ok, r(&fac.product)));

    let cmp = compare_denominators(&[2, 0], &f, opts.seed)?;
    checks.push((
        "cds exponent comparison".into(),
        cmp.ours_le_cds && cmp.strict_where_nonpositive,
        json!(cmp.facets.iter().map(|(w, _, o, c)| json!({"normal": w, "ours": b(o), "cds": b(c)})).collect::<Vec<_>>()),
    ));

    let v1 = names(&["x"]);
    let g = vec![parse_polynomial("x^2 - 1", &v1)?];
    let ej = euler_jacobi_check(&g)?;
    checks.push(("Euler-Jacobi for x^2 - 1".into(), ej.all_below_rho_zero && ej.formula_agrees, json!(ej.rho)));
    let disc = discriminant_dense(&g)?;
    checks.push(("discriminant of x^2 - 1".into(), disc == rat(4) || disc == rat(-4), r(&disc)));

    let all = checks.iter().all(|c| c.1);
    let rows: Vec<Value> = checks.iter().map(|(n, ok, v)| json!({"name": n, "passed": ok, "value": v})).collect();
    let failure = (!all).then(|| CliError::Mismatch { formula: "verification suite".into(), oracle: "some checks failed".into() });
    Ok(Report { json: json!({"command": "verify", "seed": opts.seed, "checks": rows, "all_passed": all}), failure })
}
