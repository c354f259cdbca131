//! Assertion dispatcher: maps operation names to engine calls, renders
//! the computed values as JSON, and compares them against expected
//! outcomes.
//!
//! Two failure channels are kept apart. Malformed inputs (unknown
//! operation, unparseable polynomial, wrong JSON shape) surface as
//! `Err(String)` and abort the run with exit code 2. Engine errors on a
//! well-formed but inapplicable instance (violated precondition,
//! exhausted search budget) are recorded on the assertion report, which
//! then fails unless the scenario expected that error.
//!
//! Expected values compare semantically, not textually: a generator list
//! compares by ideal equality, an element string by exact equality in the
//! algebra. The per-operation keys are documented in the README.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use cizero::artin::{
    annihilator, colon_ideal, elem_from_text, hilbert_data, ideal_span, is_gorenstein_quotient,
    is_principal, maximal_ideal, maximal_ideal_power, minimal_generator_count,
    minimal_generators, principal_generator, quotient_algebra, socle, variables, zero_ideal,
    ArtinAlgebra, Elem, Ideal,
};
use cizero::chains::{
    chain_from_matrix_factorization, chain_from_socle_factorization, decompose_element,
    decompose_matrix, max_length_chain_probe, min_generator_profile, minimal_exponent_checks,
    principal_ideal_sampling, rational_roots, realize_split_generators, refine_pair,
    triangular_chain, triangular_wiebe_from_chain, zero_divisor_pair_check, ConstraintPoly,
    ElementSplit, MatrixSplit,
};
use cizero::nice::{
    ann_ci0_test, ci0_test, diagonalize_unit_pivot, fitting_delta0, in_koszul_image,
    matrix_factor_membership, nice_report, normalize_first_row, translate_equivalent,
    wiebe_report, wiebe_report_for_row, AnnCi0Outcome, Ci0Outcome, MatA,
};
use cizero::scalar::Scalar;
use cizero::Error;

use crate::report::AssertionReport;

const DEFAULT_BUDGET: u64 = 1000;

// ---------------------------------------------------------------------------
// Input extraction
// ---------------------------------------------------------------------------

fn get<'a>(inputs: &'a Map<String, Value>, key: &str, op: &str) -> Result<&'a Value, String> {
    inputs
        .get(key)
        .ok_or_else(|| format!("op {}: missing input '{}'", op, key))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str, String> {
    v.as_str()
        .ok_or_else(|| format!("{} must be a string", what))
}

fn as_u64(v: &Value, what: &str) -> Result<u64, String> {
    v.as_u64()
        .ok_or_else(|| format!("{} must be a non-negative integer", what))
}

fn as_bool(v: &Value, what: &str) -> Result<bool, String> {
    v.as_bool()
        .ok_or_else(|| format!("{} must be a boolean", what))
}

fn string_list(v: &Value, what: &str) -> Result<Vec<String>, String> {
    let arr = v
        .as_array()
        .ok_or_else(|| format!("{} must be an array of strings", what))?;
    arr.iter()
        .map(|s| as_str(s, what).map(str::to_string))
        .collect()
}

fn parse_elem(alg: &Arc<ArtinAlgebra>, text: &str) -> Result<Elem, String> {
    elem_from_text(alg, text).map_err(|e| format!("{:?}: {}", text, e))
}

fn elem_in(
    alg: &Arc<ArtinAlgebra>,
    inputs: &Map<String, Value>,
    key: &str,
    op: &str,
) -> Result<Elem, String> {
    parse_elem(alg, as_str(get(inputs, key, op)?, key)?)
}

fn elem_list(alg: &Arc<ArtinAlgebra>, v: &Value, what: &str) -> Result<Vec<Elem>, String> {
    string_list(v, what)?
        .iter()
        .map(|s| parse_elem(alg, s))
        .collect()
}

/// Ideal argument: an array of generator strings, or one of
/// {"annihilator_of": f}, {"socle": true}, {"power": k}, {"zero": true},
/// {"maximal": true}.
fn ideal_arg(alg: &Arc<ArtinAlgebra>, v: &Value, what: &str) -> Result<Ideal, String> {
    match v {
        Value::Array(_) => {
            let gens = elem_list(alg, v, what)?;
            ideal_span(alg, &gens).map_err(|e| format!("{}: {}", what, e))
        }
        Value::Object(map) => {
            if map.len() != 1 {
                return Err(format!("{} must carry exactly one ideal form", what));
            }
            let (k, inner) = map.iter().next().expect("one entry");
            match k.as_str() {
                "annihilator_of" => {
                    let b = parse_elem(alg, as_str(inner, what)?)?;
                    annihilator(alg, &b).map_err(|e| format!("{}: {}", what, e))
                }
                "socle" => {
                    as_bool(inner, what)?;
                    socle(alg).map_err(|e| format!("{}: {}", what, e))
                }
                "power" => {
                    let k = as_u64(inner, what)? as usize;
                    Ok(maximal_ideal_power(alg, k))
                }
                "zero" => {
                    as_bool(inner, what)?;
                    Ok(zero_ideal(alg))
                }
                "maximal" => {
                    as_bool(inner, what)?;
                    Ok(maximal_ideal(alg))
                }
                other => Err(format!("{}: unknown ideal form '{}'", what, other)),
            }
        }
        _ => Err(format!(
            "{} must be a generator array or an ideal form object",
            what
        )),
    }
}

/// Matrix argument: {"entries": [[...]]} or a bare row-major array.
fn matrix_arg(alg: &Arc<ArtinAlgebra>, v: &Value, what: &str) -> Result<MatA, String> {
    let rows_value = match v {
        Value::Object(map) => map
            .get("entries")
            .ok_or_else(|| format!("{} must carry an \"entries\" field", what))?,
        Value::Array(_) => v,
        _ => return Err(format!("{} must be a matrix object or array", what)),
    };
    let rows = rows_value
        .as_array()
        .ok_or_else(|| format!("{} entries must be an array of rows", what))?;
    let mut texts: Vec<Vec<String>> = Vec::with_capacity(rows.len());
    for row in rows {
        texts.push(string_list(row, what)?);
    }
    let borrowed: Vec<Vec<&str>> = texts
        .iter()
        .map(|r| r.iter().map(|s| s.as_str()).collect())
        .collect();
    MatA::from_texts(alg, &borrowed).map_err(|e| format!("{}: {}", what, e))
}

fn seed_in(inputs: &Map<String, Value>, default: u64) -> Result<u64, String> {
    match inputs.get("seed") {
        None => Ok(default),
        Some(v) => as_u64(v, "seed"),
    }
}

fn budget_in(inputs: &Map<String, Value>, default: u64) -> Result<u64, String> {
    match inputs.get("budget") {
        None => Ok(default),
        Some(v) => as_u64(v, "budget"),
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn elem_v(e: &Elem) -> Value {
    Value::String(e.to_string())
}

fn gens_v(i: &Ideal) -> Value {
    Value::Array(
        minimal_generators(i)
            .iter()
            .map(|g| Value::String(g.to_string()))
            .collect(),
    )
}

fn ideal_v(i: &Ideal) -> Value {
    json!({ "dim": i.dim(), "generators": gens_v(i) })
}

/// Ideal rendering with principality data, for socle/annihilator reports.
fn principal_ideal_v(i: &Ideal) -> Value {
    let mut obj = json!({
        "dim": i.dim(),
        "generators": gens_v(i),
        "principal": is_principal(i),
    });
    if let Some(g) = principal_generator(i) {
        obj["generator"] = Value::String(g.to_string());
    }
    obj
}

fn matrix_v(m: &MatA) -> Value {
    let rows: Vec<Value> = (0..m.n)
        .map(|i| {
            Value::Array(
                (0..m.n)
                    .map(|j| Value::String(m.entry(i, j).to_string()))
                    .collect(),
            )
        })
        .collect();
    json!({ "entries": rows })
}

fn constraint_roots(c: &ConstraintPoly) -> Vec<Scalar> {
    if c.coefficients.iter().all(|s| matches!(s, Scalar::Rat(_))) {
        rational_roots(&c.coefficients)
    } else {
        Vec::new()
    }
}

fn constraints_v(cs: &[ConstraintPoly]) -> Value {
    Value::Array(
        cs.iter()
            .map(|c| {
                json!({
                    "chart": c.chart,
                    "coefficients": c.coefficients.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "rational_roots": constraint_roots(c).iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Expected-value comparison
// ---------------------------------------------------------------------------

fn elem_eq_expected(alg: &Arc<ArtinAlgebra>, e: &Elem, v: &Value) -> Result<bool, String> {
    let want = parse_elem(alg, as_str(v, "expected element")?)?;
    Ok(*e == want)
}

fn ideal_eq_expected(alg: &Arc<ArtinAlgebra>, i: &Ideal, v: &Value) -> Result<bool, String> {
    let gens = elem_list(alg, v, "expected generators")?;
    let want = ideal_span(alg, &gens).map_err(|e| e.to_string())?;
    Ok(want == *i)
}

/// Expected value for an ideal-valued operation: a bare generator array,
/// or an object with any of "generators", "dim", "principal", "generator",
/// "count".
fn ideal_result_matches(
    alg: &Arc<ArtinAlgebra>,
    i: &Ideal,
    expected: &Value,
) -> Result<bool, String> {
    match expected {
        Value::Array(_) => ideal_eq_expected(alg, i, expected),
        Value::Object(map) => {
            let mut ok = true;
            for (k, v) in map {
                ok &= match k.as_str() {
                    "generators" => ideal_eq_expected(alg, i, v)?,
                    "dim" => as_u64(v, "expected dim")? as usize == i.dim(),
                    "principal" => as_bool(v, "expected principal")? == is_principal(i),
                    "generator" => {
                        let g = parse_elem(alg, as_str(v, "expected generator")?)?;
                        let span =
                            ideal_span(alg, std::slice::from_ref(&g)).map_err(|e| e.to_string())?;
                        is_principal(i) && span == *i
                    }
                    "count" => as_u64(v, "expected count")? as usize == minimal_generator_count(i),
                    other => return Err(format!("unknown expected key '{}'", other)),
                };
            }
            Ok(ok)
        }
        _ => Err("expected value must be a generator array or an object".into()),
    }
}

/// Comparison table for flag-style expectations: a bare boolean compares
/// against the primary verdict, an object compares each named field.
struct Fields<'a> {
    alg: &'a Arc<ArtinAlgebra>,
    bools: Vec<(&'static str, bool)>,
    opt_bools: Vec<(&'static str, Option<bool>)>,
    counts: Vec<(&'static str, u64)>,
    elems: Vec<(&'static str, &'a Elem)>,
    ideals: Vec<(&'static str, &'a Ideal)>,
}

impl<'a> Fields<'a> {
    fn new(alg: &'a Arc<ArtinAlgebra>) -> Fields<'a> {
        Fields { alg, bools: Vec::new(), opt_bools: Vec::new(), counts: Vec::new(), elems: Vec::new(), ideals: Vec::new() }
    }

    fn flag(mut self, key: &'static str, v: bool) -> Self {
        self.bools.push((key, v));
        self
    }

    fn opt_flag(mut self, key: &'static str, v: Option<bool>) -> Self {
        self.opt_bools.push((key, v));
        self
    }

    fn count(mut self, key: &'static str, v: u64) -> Self {
        self.counts.push((key, v));
        self
    }

    fn elem(mut self, key: &'static str, v: &'a Elem) -> Self {
        self.elems.push((key, v));
        self
    }

    fn ideal(mut self, key: &'static str, v: &'a Ideal) -> Self {
        self.ideals.push((key, v));
        self
    }

    /// Matches one expected key; Ok(None) when the key is not in the table.
    fn try_key(&self, k: &str, v: &Value) -> Result<Option<bool>, String> {
        for (key, actual) in &self.bools {
            if *key == k {
                return Ok(Some(as_bool(v, k)? == *actual));
            }
        }
        for (key, actual) in &self.opt_bools {
            if *key == k {
                return Ok(Some(Some(as_bool(v, k)?) == *actual));
            }
        }
        for (key, actual) in &self.counts {
            if *key == k {
                return Ok(Some(as_u64(v, k)? == *actual));
            }
        }
        for (key, actual) in &self.elems {
            if *key == k {
                return Ok(Some(elem_eq_expected(self.alg, actual, v)?));
            }
        }
        for (key, actual) in &self.ideals {
            if *key == k {
                return Ok(Some(ideal_eq_expected(self.alg, actual, v)?));
            }
        }
        Ok(None)
    }

    /// Full comparison: bare boolean against `verdict`, or per-key.
    fn matches(&self, expected: &Value, verdict: bool) -> Result<bool, String> {
        match expected {
            Value::Bool(b) => Ok(*b == verdict),
            Value::Object(map) => {
                let mut ok = true;
                for (k, v) in map {
                    match self.try_key(k, v)? {
                        Some(m) => ok &= m,
                        None => return Err(format!("unknown expected key '{}'", k)),
                    }
                }
                Ok(ok)
            }
            _ => Err("expected value must be a boolean or an object".into()),
        }
    }
}

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

fn done(
    op: &str,
    pass: bool,
    verdict: Option<bool>,
    computed: Value,
    expected: Option<&Value>,
) -> AssertionReport {
    AssertionReport {
        op: op.to_string(),
        pass,
        verdict,
        computed,
        expected: expected.cloned(),
        error: None,
    }
}

/// Engine error on a well-formed instance: the assertion fails unless the
/// scenario expected this error (matched by substring).
fn op_error(op: &str, expected: Option<&Value>, err: &Error) -> AssertionReport {
    let msg = err.to_string();
    let pass = match expected {
        Some(Value::Object(map)) => map
            .get("error")
            .and_then(|v| v.as_str())
            .map_or(false, |s| msg.contains(s)),
        _ => false,
    };
    AssertionReport {
        op: op.to_string(),
        pass,
        verdict: None,
        computed: Value::Null,
        expected: expected.cloned(),
        error: Some(msg),
    }
}

macro_rules! try_op {
    ($op:expr, $expected:expr, $call:expr) => {
        match $call {
            Ok(v) => v,
            Err(e) => return Ok(op_error($op, $expected, &e)),
        }
    };
}

// ---------------------------------------------------------------------------
// Dispatcher
// ---------------------------------------------------------------------------

/// Runs one assertion against the algebra. `default_seed` is used by
/// seeded operations when the inputs carry no "seed" of their own.
pub fn run_assertion(
    alg: &Arc<ArtinAlgebra>,
    op: &str,
    inputs: &Map<String, Value>,
    expected: Option<&Value>,
    default_seed: u64,
) -> Result<AssertionReport, String> {
    match op {
        "wiebe" => {
            let m = matrix_arg(alg, get(inputs, "matrix", op)?, "matrix")?;
            let rep = match inputs.get("row") {
                None => try_op!(op, expected, wiebe_report(&m)),
                Some(v) => {
                    let row = elem_list(alg, v, "row")?;
                    try_op!(op, expected, wiebe_report_for_row(&row, &m))
                }
            };
            let verdict = rep.holds();
            let computed = json!({
                "holds": verdict,
                "columns_are_syzygies": rep.columns_are_syzygies,
                "det_nonzero": rep.det_nonzero,
                "socle_is_det_ideal": rep.socle_is_det_ideal,
                "det": elem_v(&rep.det),
            });
            let fields = Fields::new(alg)
                .flag("holds", verdict)
                .flag("columns_are_syzygies", rep.columns_are_syzygies)
                .flag("det_nonzero", rep.det_nonzero)
                .flag("socle_is_det_ideal", rep.socle_is_det_ideal)
                .elem("det", &rep.det);
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "nice" => {
            let m = matrix_arg(alg, get(inputs, "matrix", op)?, "matrix")?;
            let rep = try_op!(op, expected, nice_report(&m));
            let verdict = rep.is_nice;
            let computed = json!({
                "is_nice": verdict,
                "det": elem_v(&rep.det),
                "det_zero": rep.det.is_zero(),
                "row_ideal": ideal_v(&rep.row_ideal),
                "socle_identity": rep.socle_identity,
                "colon_identity": rep.colon_identity,
            });
            let fields = Fields::new(alg)
                .flag("is_nice", verdict)
                .flag("det_zero", rep.det.is_zero())
                .opt_flag("socle_identity", rep.socle_identity)
                .opt_flag("colon_identity", rep.colon_identity)
                .elem("det", &rep.det)
                .ideal("row_ideal", &rep.row_ideal);
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "ci0_ideal" => {
            let i = ideal_arg(alg, get(inputs, "ideal", op)?, "ideal")?;
            let outcome = try_op!(op, expected, ci0_test(alg, &i));
            let verdict = outcome.is_ci0();
            let (computed, fields) = match &outcome {
                Ci0Outcome::Ci0(cert) => (
                    json!({
                        "ci0": true,
                        "det": elem_v(&cert.det),
                        "colon_det_identity": cert.colon_det_identity,
                        "socle_identity": cert.socle_identity,
                    }),
                    Fields::new(alg)
                        .flag("ci0", true)
                        .flag("colon_det_identity", cert.colon_det_identity)
                        .flag("socle_identity", cert.socle_identity)
                        .elem("det", &cert.det),
                ),
                Ci0Outcome::NotCi0 { preimage_mingens, minors_checked } => (
                    json!({
                        "ci0": false,
                        "preimage_mingens": preimage_mingens,
                        "minors_checked": minors_checked,
                    }),
                    Fields::new(alg)
                        .flag("ci0", false)
                        .count("preimage_mingens", *preimage_mingens as u64)
                        .count("minors_checked", *minors_checked),
                ),
            };
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "ci0_ann" => {
            let b = elem_in(alg, inputs, "elem", op)?;
            let outcome = try_op!(op, expected, ann_ci0_test(alg, &b));
            let verdict = outcome.is_ci0();
            let (computed, fields) = match &outcome {
                AnnCi0Outcome::Ci0(cert) => (
                    json!({
                        "ci0": true,
                        "det": elem_v(&cert.det),
                        "colon_det_identity": cert.colon_det_identity,
                        "socle_identity": cert.socle_identity,
                    }),
                    Fields::new(alg)
                        .flag("ci0", true)
                        .flag("colon_det_identity", cert.colon_det_identity)
                        .flag("socle_identity", cert.socle_identity)
                        .elem("det", &cert.det),
                ),
                AnnCi0Outcome::NotCi0 { minors_checked } => (
                    json!({ "ci0": false, "minors_checked": minors_checked }),
                    Fields::new(alg).flag("ci0", false).count("minors_checked", *minors_checked),
                ),
            };
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "socle" => {
            let s = try_op!(op, expected, socle(alg));
            let computed = principal_ideal_v(&s);
            let pass = match expected {
                None => true,
                Some(v) => ideal_result_matches(alg, &s, v)?,
            };
            Ok(done(op, pass, None, computed, expected))
        }

        "ann" => {
            let b = elem_in(alg, inputs, "elem", op)?;
            let i = try_op!(op, expected, annihilator(alg, &b));
            let computed = principal_ideal_v(&i);
            let pass = match expected {
                None => true,
                Some(v) => ideal_result_matches(alg, &i, v)?,
            };
            Ok(done(op, pass, None, computed, expected))
        }

        "colon" => {
            let i = ideal_arg(alg, get(inputs, "ideal", op)?, "ideal")?;
            let j = ideal_arg(alg, get(inputs, "by", op)?, "by")?;
            let q = try_op!(op, expected, colon_ideal(&i, &j));
            let computed = ideal_v(&q);
            let pass = match expected {
                None => true,
                Some(v) => ideal_result_matches(alg, &q, v)?,
            };
            Ok(done(op, pass, None, computed, expected))
        }

        "power" => {
            let k = as_u64(get(inputs, "k", op)?, "k")? as usize;
            let i = maximal_ideal_power(alg, k);
            let computed = ideal_v(&i);
            let pass = match expected {
                None => true,
                Some(v) => ideal_result_matches(alg, &i, v)?,
            };
            Ok(done(op, pass, None, computed, expected))
        }

        "mingens" => {
            let i = ideal_arg(alg, get(inputs, "ideal", op)?, "ideal")?;
            let count = minimal_generator_count(&i);
            let computed = json!({
                "count": count,
                "dim": i.dim(),
                "generators": gens_v(&i),
            });
            let pass = match expected {
                None => true,
                Some(Value::Number(n)) => {
                    as_u64(&Value::Number(n.clone()), "expected count")? as usize == count
                }
                Some(v) => ideal_result_matches(alg, &i, v)?,
            };
            Ok(done(op, pass, None, computed, expected))
        }

        "exponent" => {
            let e = match inputs.get("modulo") {
                None => alg.exponent,
                Some(v) => {
                    let i = ideal_arg(alg, v, "modulo")?;
                    let (q, _) = try_op!(op, expected, quotient_algebra(alg, &i));
                    q.exponent
                }
            };
            let computed = json!({ "exponent": e });
            let pass = match expected {
                None => true,
                Some(Value::Number(_)) => {
                    as_u64(expected.unwrap(), "expected exponent")? as usize == e
                }
                Some(Value::Object(map)) => {
                    let mut ok = true;
                    for (k, v) in map {
                        ok &= match k.as_str() {
                            "exponent" => as_u64(v, "expected exponent")? as usize == e,
                            other => return Err(format!("unknown expected key '{}'", other)),
                        };
                    }
                    ok
                }
                Some(_) => return Err("expected exponent must be a number".into()),
            };
            Ok(done(op, pass, None, computed, expected))
        }

        "hilbert" => {
            let dims = try_op!(op, expected, hilbert_data(alg));
            let rev: Vec<usize> = dims.iter().rev().cloned().collect();
            let palindrome = dims == rev;
            let computed = json!({ "dims": dims, "palindrome": palindrome });
            let dims_match = |v: &Value| -> Result<bool, String> {
                let arr = v
                    .as_array()
                    .ok_or_else(|| "expected dims must be an array".to_string())?;
                let want: Result<Vec<usize>, String> = arr
                    .iter()
                    .map(|n| as_u64(n, "expected dims entry").map(|u| u as usize))
                    .collect();
                Ok(want? == dims)
            };
            let pass = match expected {
                None => true,
                Some(Value::Array(_)) => dims_match(expected.unwrap())?,
                Some(Value::Object(map)) => {
                    let mut ok = true;
                    for (k, v) in map {
                        ok &= match k.as_str() {
                            "dims" => dims_match(v)?,
                            "palindrome" => as_bool(v, "expected palindrome")? == palindrome,
                            other => return Err(format!("unknown expected key '{}'", other)),
                        };
                    }
                    ok
                }
                Some(_) => return Err("expected value must be an array or object".into()),
            };
            Ok(done(op, pass, None, computed, expected))
        }

        "gorenstein" => {
            let i = ideal_arg(alg, get(inputs, "ideal", op)?, "ideal")?;
            let verdict = try_op!(op, expected, is_gorenstein_quotient(alg, &i));
            let computed = json!({ "gorenstein": verdict });
            let fields = Fields::new(alg).flag("gorenstein", verdict);
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "contains" => {
            let i = ideal_arg(alg, get(inputs, "ideal", op)?, "ideal")?;
            let e = elem_in(alg, inputs, "elem", op)?;
            let verdict = i.contains(&e);
            let computed = json!({ "contains": verdict });
            let fields = Fields::new(alg).flag("contains", verdict);
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "contains_ideal" => {
            let inner = ideal_arg(alg, get(inputs, "inner", op)?, "inner")?;
            let outer = ideal_arg(alg, get(inputs, "outer", op)?, "outer")?;
            let verdict = outer.contains_ideal(&inner);
            let computed = json!({ "contains": verdict });
            let fields = Fields::new(alg).flag("contains", verdict);
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "chain_factors" => {
            let list = get(inputs, "factors", op)?
                .as_array()
                .ok_or_else(|| "factors must be an array of matrices".to_string())?;
            let mut factors = Vec::with_capacity(list.len());
            for f in list {
                factors.push(matrix_arg(alg, f, "factor")?);
            }
            let rep = try_op!(op, expected, chain_from_matrix_factorization(&factors));
            let verdict = rep.links.iter().all(|l| {
                l.routes_agree
                    && l.colon_step
                    && l.colon_socle
                    && l.ci0
                    && l.strict == !l.step_invertible
            });
            let links_v: Vec<Value> = rep
                .links
                .iter()
                .map(|l| {
                    json!({
                        "ideal": ideal_v(&l.ideal),
                        "step_det": elem_v(&l.step_det),
                        "strict": l.strict,
                        "step_invertible": l.step_invertible,
                        "routes_agree": l.routes_agree,
                        "colon_step": l.colon_step,
                        "colon_socle": l.colon_socle,
                        "ci0": l.ci0,
                        "quotient_exponent": l.quotient_exponent,
                    })
                })
                .collect();
            let computed = json!({
                "checks": verdict,
                "det": elem_v(&rep.det),
                "strict": rep.strict,
                "strict_count": rep.strict_count,
                "maximal": rep.maximal.as_ref().map(|m| json!({
                    "steps_outside_square": m.steps_outside_square,
                    "exponent_drops": m.exponent_drops,
                })),
                "links": links_v,
            });
            let pass = match expected {
                None => verdict,
                Some(v) => {
                    chain_expected_matches(alg, v, verdict, &rep.det, rep.strict,
                        rep.strict_count, rep.maximal.is_some(),
                        &rep.links.iter().map(|l| &l.ideal).collect::<Vec<_>>())?
                }
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "chain_socle" => {
            let factors = elem_list(alg, get(inputs, "factors", op)?, "factors")?;
            let rep = try_op!(op, expected, chain_from_socle_factorization(alg, &factors));
            let verdict = rep.links.iter().all(|l| {
                l.colon_step && l.colon_socle && l.gorenstein && l.strict == !l.step_unit
            });
            let links_v: Vec<Value> = rep
                .links
                .iter()
                .map(|l| {
                    json!({
                        "ideal": ideal_v(&l.ideal),
                        "step": elem_v(&l.step),
                        "strict": l.strict,
                        "step_unit": l.step_unit,
                        "colon_step": l.colon_step,
                        "colon_socle": l.colon_socle,
                        "gorenstein": l.gorenstein,
                        "quotient_exponent": l.quotient_exponent,
                    })
                })
                .collect();
            let computed = json!({
                "checks": verdict,
                "product": elem_v(&rep.product),
                "strict": rep.strict,
                "strict_count": rep.strict_count,
                "maximal": rep.maximal.as_ref().map(|m| json!({
                    "steps_outside_square": m.steps_outside_square,
                    "exponent_drops": m.exponent_drops,
                })),
                "links": links_v,
            });
            let pass = match expected {
                None => verdict,
                Some(v) => {
                    chain_expected_matches(alg, v, verdict, &rep.product, rep.strict,
                        rep.strict_count, rep.maximal.is_some(),
                        &rep.links.iter().map(|l| &l.ideal).collect::<Vec<_>>())?
                }
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "chain_triangular" => {
            let elems = elem_list(alg, get(inputs, "elems", op)?, "elems")?;
            let (mat, rep) = match inputs.get("matrix") {
                Some(v) => {
                    let m = matrix_arg(alg, v, "matrix")?;
                    let rep = try_op!(op, expected, triangular_chain(&elems, &m));
                    (m, rep)
                }
                None => try_op!(op, expected, triangular_wiebe_from_chain(alg, &elems)),
            };
            let verdict = rep.saturated
                && rep
                    .links
                    .iter()
                    .all(|l| l.strict && l.ci0 && l.colon_step && l.diagonal_minimal);
            let links_v: Vec<Value> = rep
                .links
                .iter()
                .map(|l| {
                    json!({
                        "ideal": ideal_v(&l.ideal),
                        "diagonal": elem_v(&l.diagonal),
                        "strict": l.strict,
                        "ci0": l.ci0,
                        "colon_step": l.colon_step,
                        "diagonal_minimal": l.diagonal_minimal,
                        "quotient_exponent": l.quotient_exponent,
                    })
                })
                .collect();
            let computed = json!({
                "checks": verdict,
                "matrix": matrix_v(&mat),
                "det": elem_v(&rep.det),
                "saturated": rep.saturated,
                "links": links_v,
            });
            let pass = match expected {
                None => verdict,
                Some(Value::Bool(b)) => *b == verdict,
                Some(Value::Object(map)) => {
                    let mut ok = true;
                    for (k, v) in map {
                        ok &= match k.as_str() {
                            "checks" => as_bool(v, k)? == verdict,
                            "saturated" => as_bool(v, k)? == rep.saturated,
                            "det" => elem_eq_expected(alg, &rep.det, v)?,
                            "links" => links_expected_match(
                                alg,
                                v,
                                &rep.links.iter().map(|l| &l.ideal).collect::<Vec<_>>(),
                            )?,
                            other => return Err(format!("unknown expected key '{}'", other)),
                        };
                    }
                    ok
                }
                Some(_) => return Err("expected value must be a boolean or an object".into()),
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "profile" => {
            let y = elem_in(alg, inputs, "elem", op)?;
            let seed = seed_in(inputs, default_seed)?;
            let p = try_op!(op, expected, min_generator_profile(alg, &y, seed));
            let block_found = p.block.is_some();
            let agree = p.ann_ci0 == p.ann_principal
                && p.ann_principal == p.span_ci0
                && p.span_ci0 == block_found;
            let mut computed = json!({
                "agree": agree,
                "ann_ci0": p.ann_ci0,
                "ann_principal": p.ann_principal,
                "span_ci0": p.span_ci0,
                "block": block_found,
            });
            if let Some(w) = &p.witness {
                computed["witness"] = elem_v(w);
            }
            if let Some(b) = &p.block {
                computed["pivot"] = elem_v(&b.pivot);
            }
            let pass = match expected {
                None => agree,
                Some(Value::Bool(b)) => *b == agree,
                Some(Value::Object(map)) => {
                    let mut ok = true;
                    for (k, v) in map {
                        ok &= match k.as_str() {
                            "agree" => as_bool(v, k)? == agree,
                            "all" => agree && as_bool(v, k)? == p.ann_ci0,
                            "ann_ci0" => as_bool(v, k)? == p.ann_ci0,
                            "ann_principal" => as_bool(v, k)? == p.ann_principal,
                            "span_ci0" => as_bool(v, k)? == p.span_ci0,
                            "block" => as_bool(v, k)? == block_found,
                            "witness_spans" => match &p.witness {
                                None => false,
                                Some(w) => {
                                    let span = ideal_span(alg, std::slice::from_ref(w))
                                        .map_err(|e| e.to_string())?;
                                    ideal_eq_expected(alg, &span, v)?
                                }
                            },
                            other => return Err(format!("unknown expected key '{}'", other)),
                        };
                    }
                    ok
                }
                Some(_) => return Err("expected value must be a boolean or an object".into()),
            };
            Ok(done(op, pass, Some(agree), computed, expected))
        }

        "realize" => {
            let y = elem_in(alg, inputs, "elem", op)?;
            let seed = seed_in(inputs, default_seed)?;
            let p = try_op!(op, expected, min_generator_profile(alg, &y, seed));
            let (computed, verdict) = match &p.block {
                None => (json!({ "applicable": false, "matches": false }), false),
                Some(block) => {
                    let rep = try_op!(op, expected, realize_split_generators(block));
                    (
                        json!({
                            "applicable": true,
                            "matches": rep.matches,
                            "generators": rep.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                            "first_factors": [rep.first_factors.0.to_string(), rep.first_factors.1.to_string()],
                        }),
                        rep.matches,
                    )
                }
            };
            let pass = match expected {
                None => verdict,
                Some(Value::Bool(b)) => *b == verdict,
                Some(Value::Object(map)) => {
                    let mut ok = true;
                    for (k, v) in map {
                        ok &= match k.as_str() {
                            "matches" => as_bool(v, k)? == verdict,
                            "applicable" => as_bool(v, k)? == p.block.is_some(),
                            other => return Err(format!("unknown expected key '{}'", other)),
                        };
                    }
                    ok
                }
                Some(_) => return Err("expected value must be a boolean or an object".into()),
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "normalize_row" => {
            let m = matrix_arg(alg, get(inputs, "matrix", op)?, "matrix")?;
            let rep = try_op!(op, expected, normalize_first_row(&m));
            let formula_matches = rep.formula_r1.map_or(true, |f| f == rep.r1);
            let verdict = rep.colon_identity && formula_matches;
            let computed = json!({
                "r1": rep.r1,
                "formula_r1": rep.formula_r1,
                "formula_matches": formula_matches,
                "colon_identity": rep.colon_identity,
                "det": elem_v(&rep.det),
                "matrix": matrix_v(&rep.matrix),
            });
            let fields = Fields::new(alg)
                .flag("formula_matches", formula_matches)
                .flag("colon_identity", rep.colon_identity)
                .count("r1", rep.r1 as u64)
                .elem("det", &rep.det);
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "pivot_diag" => {
            let m = matrix_arg(alg, get(inputs, "matrix", op)?, "matrix")?;
            let rep = try_op!(op, expected, diagonalize_unit_pivot(&m));
            let mut diag = MatA::identity(alg, m.n);
            diag.set_entry(0, 0, rep.d.clone());
            let left = try_op!(op, expected, rep.theta1.mul(&m));
            let reassembled = try_op!(op, expected, left.mul(&rep.theta2));
            let verdict = reassembled == diag;
            let computed = json!({
                "reassembles": verdict,
                "d": elem_v(&rep.d),
                "theta1": matrix_v(&rep.theta1),
                "theta2": matrix_v(&rep.theta2),
            });
            let fields = Fields::new(alg).flag("reassembles", verdict).elem("d", &rep.d);
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "koszul_member" => {
            let col = elem_list(alg, get(inputs, "column", op)?, "column")?;
            if col.len() != alg.nvars() {
                return Err(format!(
                    "column must have {} entries, one per variable",
                    alg.nvars()
                ));
            }
            let verdict = in_koszul_image(alg, &col);
            let computed = json!({ "member": verdict });
            let fields = Fields::new(alg).flag("member", verdict);
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "translate_equiv" => {
            let a = matrix_arg(alg, get(inputs, "a", op)?, "a")?;
            let b = matrix_arg(alg, get(inputs, "b", op)?, "b")?;
            let seed = seed_in(inputs, default_seed)?;
            let found = try_op!(op, expected, translate_equivalent(&a, &b, seed));
            let verdict = found.is_some();
            let mut computed = json!({ "equivalent": verdict });
            if let Some(theta) = &found {
                computed["translate"] = matrix_v(theta);
            }
            let fields = Fields::new(alg).flag("equivalent", verdict);
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "factor_membership" => {
            let a = matrix_arg(alg, get(inputs, "a", op)?, "a")?;
            let b = matrix_arg(alg, get(inputs, "b", op)?, "b")?;
            let found = try_op!(op, expected, matrix_factor_membership(&a, &b));
            let verdict = found.is_some();
            let mut computed = json!({ "member": verdict });
            if let Some(theta) = &found {
                computed["factor"] = matrix_v(theta);
            }
            let fields = Fields::new(alg).flag("member", verdict);
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "decompose_elem" => {
            let b = elem_in(alg, inputs, "elem", op)?;
            let seed = seed_in(inputs, default_seed)?;
            let budget = budget_in(inputs, DEFAULT_BUDGET)?;
            let split = try_op!(op, expected, decompose_element(&b, seed, budget));
            match split {
                ElementSplit::Split { left, right } => {
                    let computed = json!({
                        "split": true,
                        "left": elem_v(&left),
                        "right": elem_v(&right),
                    });
                    let pass = match expected {
                        None => true,
                        Some(v) => decompose_expected_matches(alg, v, true, None, &[],
                            Some((&left, &right)))?,
                    };
                    Ok(done(op, pass, Some(true), computed, expected))
                }
                ElementSplit::NoSplit { certified, constraints } => {
                    let computed = json!({
                        "split": false,
                        "certified": certified,
                        "constraints": constraints_v(&constraints),
                    });
                    let pass = match expected {
                        None => false,
                        Some(v) => decompose_expected_matches(alg, v, false, Some(certified),
                            &constraints, None)?,
                    };
                    Ok(done(op, pass, Some(false), computed, expected))
                }
            }
        }

        "decompose_matrix" => {
            let m = matrix_arg(alg, get(inputs, "matrix", op)?, "matrix")?;
            let seed = seed_in(inputs, default_seed)?;
            let budget = budget_in(inputs, DEFAULT_BUDGET)?;
            let split = try_op!(op, expected, decompose_matrix(&m, seed, budget));
            match split {
                MatrixSplit::Split { left, right } => {
                    let computed = json!({
                        "split": true,
                        "left": matrix_v(&left),
                        "right": matrix_v(&right),
                    });
                    let pass = match expected {
                        None => true,
                        Some(v) => decompose_expected_matches(alg, v, true, None, &[], None)?,
                    };
                    Ok(done(op, pass, Some(true), computed, expected))
                }
                MatrixSplit::NoSplit { certified, constraints } => {
                    let computed = json!({
                        "split": false,
                        "certified": certified,
                        "constraints": constraints_v(&constraints),
                    });
                    let pass = match expected {
                        None => false,
                        Some(v) => decompose_expected_matches(alg, v, false, Some(certified),
                            &constraints, None)?,
                    };
                    Ok(done(op, pass, Some(false), computed, expected))
                }
            }
        }

        "probe_maxchain" => {
            let seed = seed_in(inputs, default_seed)?;
            let budget = budget_in(inputs, 2000)?;
            let start = match inputs.get("start") {
                None => None,
                Some(v) => Some(ideal_arg(alg, v, "start")?),
            };
            let rep = try_op!(
                op,
                expected,
                max_length_chain_probe(alg, start.as_ref(), seed, budget)
            );
            let reached = rep.length == rep.bound;
            let computed = json!({
                "length": rep.length,
                "bound": rep.bound,
                "reached_bound": reached,
                "tested": rep.tested,
                "budget_exhausted": rep.budget_exhausted,
                "chain": rep.chain.iter().map(ideal_v).collect::<Vec<_>>(),
            });
            let pass = match expected {
                None => true,
                Some(Value::Number(_)) => {
                    as_u64(expected.unwrap(), "expected length")? as usize == rep.length
                }
                Some(Value::Object(map)) => {
                    let mut ok = true;
                    for (k, v) in map {
                        ok &= match k.as_str() {
                            "length" => as_u64(v, k)? as usize == rep.length,
                            "bound" => as_u64(v, k)? as usize == rep.bound,
                            "reached_bound" => as_bool(v, k)? == reached,
                            "budget_exhausted" => as_bool(v, k)? == rep.budget_exhausted,
                            other => return Err(format!("unknown expected key '{}'", other)),
                        };
                    }
                    ok
                }
                Some(_) => return Err("expected value must be a number or an object".into()),
            };
            Ok(done(op, pass, None, computed, expected))
        }

        "fitting" => {
            let row = match inputs.get("row") {
                None => variables(alg),
                Some(v) => elem_list(alg, v, "row")?,
            };
            let minimize = match inputs.get("minimize") {
                None => true,
                Some(v) => as_bool(v, "minimize")?,
            };
            let i = try_op!(op, expected, fitting_delta0(alg, &row, minimize));
            let computed = json!({
                "minimized": minimize,
                "dim": i.dim(),
                "generators": gens_v(&i),
            });
            let pass = match expected {
                None => true,
                Some(v) => ideal_result_matches(alg, &i, v)?,
            };
            Ok(done(op, pass, None, computed, expected))
        }

        "fitting_invariant" => {
            let row = match inputs.get("row") {
                None => variables(alg),
                Some(v) => elem_list(alg, v, "row")?,
            };
            let raw = try_op!(op, expected, fitting_delta0(alg, &row, false));
            let minimized = try_op!(op, expected, fitting_delta0(alg, &row, true));
            let verdict = raw == minimized;
            let computed = json!({
                "equal": verdict,
                "raw": ideal_v(&raw),
                "minimized": ideal_v(&minimized),
            });
            let fields = Fields::new(alg).flag("equal", verdict);
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "refine" => {
            let first = ideal_arg(alg, get(inputs, "first", op)?, "first")?;
            let second = ideal_arg(alg, get(inputs, "second", op)?, "second")?;
            let m = matrix_arg(alg, get(inputs, "matrix", op)?, "matrix")?;
            let seed = seed_in(inputs, default_seed)?;
            let rep = try_op!(op, expected, refine_pair(&first, &second, &m, seed));
            let verdict =
                rep.colon_det && rep.colon_refine && rep.annihilator_identity.unwrap_or(true);
            let computed = json!({
                "checks": verdict,
                "strict": rep.strict,
                "det_gamma": elem_v(&rep.det_gamma),
                "gamma": matrix_v(&rep.gamma),
                "colon_det": rep.colon_det,
                "colon_refine": rep.colon_refine,
                "annihilator_identity": rep.annihilator_identity,
                "generators": rep.generators,
                "subsets_checked": rep.subsets_checked,
            });
            let fields = Fields::new(alg)
                .flag("checks", verdict)
                .flag("strict", rep.strict)
                .flag("colon_det", rep.colon_det)
                .flag("colon_refine", rep.colon_refine)
                .opt_flag("annihilator_identity", rep.annihilator_identity);
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "zero_divisor_pair" => {
            let left = elem_in(alg, inputs, "left", op)?;
            let right = elem_in(alg, inputs, "right", op)?;
            let rep = try_op!(op, expected, zero_divisor_pair_check(&left, &right));
            let verdict = rep.left_span_ci0
                && rep.right_span_ci0
                && rep.ann_left_is_right
                && rep.ann_right_is_left
                && rep.graded_exponent_drop.unwrap_or(true);
            let computed = json!({
                "checks": verdict,
                "left_span_ci0": rep.left_span_ci0,
                "right_span_ci0": rep.right_span_ci0,
                "ann_left_is_right": rep.ann_left_is_right,
                "ann_right_is_left": rep.ann_right_is_left,
                "graded_exponent_drop": rep.graded_exponent_drop,
            });
            let fields = Fields::new(alg)
                .flag("checks", verdict)
                .flag("left_span_ci0", rep.left_span_ci0)
                .flag("right_span_ci0", rep.right_span_ci0)
                .flag("ann_left_is_right", rep.ann_left_is_right)
                .flag("ann_right_is_left", rep.ann_right_is_left)
                .opt_flag("graded_exponent_drop", rep.graded_exponent_drop);
            let pass = match expected {
                None => verdict,
                Some(v) => fields.matches(v, verdict)?,
            };
            Ok(done(op, pass, Some(verdict), computed, expected))
        }

        "minimal_exponent" => {
            let rep = try_op!(op, expected, minimal_exponent_checks(alg));
            let per: Vec<Value> = rep
                .per_variable
                .iter()
                .map(|v| {
                    json!({
                        "annihilator_shallow": v.annihilator_shallow,
                        "annihilator_transverse": v.annihilator_transverse,
                        "square_in_others": v.square_in_others,
                        "span_ci0": v.span_ci0,
                    })
                })
                .collect();
            let computed = json!({
                "minimal": rep.minimal,
                "wiebe_column_depth": rep.wiebe_column_depth,
                "per_variable": per,
            });
            let fields = Fields::new(alg)
                .flag("minimal", rep.minimal)
                .opt_flag("wiebe_column_depth", rep.wiebe_column_depth);
            let pass = match expected {
                None => true,
                Some(v) => fields.matches(v, rep.minimal)?,
            };
            Ok(done(op, pass, None, computed, expected))
        }

        "principal_sample" => {
            let seed = seed_in(inputs, default_seed)?;
            let samples = as_u64(get(inputs, "samples", op)?, "samples")? as usize;
            let rep = try_op!(op, expected, principal_ideal_sampling(alg, seed, samples));
            let computed = json!({
                "samples": rep.samples,
                "gorenstein_count": rep.gorenstein_count,
                "ci0_count": rep.ci0_count,
            });
            let fields = Fields::new(alg)
                .count("samples", rep.samples as u64)
                .count("gorenstein_count", rep.gorenstein_count as u64)
                .count("ci0_count", rep.ci0_count as u64);
            let pass = match expected {
                None => true,
                Some(v) => fields.matches(v, rep.gorenstein_count == rep.samples)?,
            };
            Ok(done(op, pass, None, computed, expected))
        }

        other => Err(format!("unknown operation '{}'", other)),
    }
}

/// Expected-value matching shared by the two factorization chain ops.
/// Keys: "checks", "strict", "strict_count", "maximal" (presence),
/// "det"/"product" (element), "links" (array of generator arrays).
#[allow(clippy::too_many_arguments)]
fn chain_expected_matches(
    alg: &Arc<ArtinAlgebra>,
    expected: &Value,
    verdict: bool,
    det: &Elem,
    strict: bool,
    strict_count: usize,
    maximal: bool,
    links: &[&Ideal],
) -> Result<bool, String> {
    match expected {
        Value::Bool(b) => Ok(*b == verdict),
        Value::Object(map) => {
            let mut ok = true;
            for (k, v) in map {
                ok &= match k.as_str() {
                    "checks" => as_bool(v, k)? == verdict,
                    "strict" => as_bool(v, k)? == strict,
                    "strict_count" => as_u64(v, k)? as usize == strict_count,
                    "maximal" => as_bool(v, k)? == maximal,
                    "det" | "product" => elem_eq_expected(alg, det, v)?,
                    "links" => links_expected_match(alg, v, links)?,
                    other => return Err(format!("unknown expected key '{}'", other)),
                };
            }
            Ok(ok)
        }
        _ => Err("expected value must be a boolean or an object".into()),
    }
}

/// Per-link ideal comparison: the expected value is an array with one
/// generator array per link, matched in order and in full.
fn links_expected_match(
    alg: &Arc<ArtinAlgebra>,
    expected: &Value,
    links: &[&Ideal],
) -> Result<bool, String> {
    let arr = expected
        .as_array()
        .ok_or_else(|| "expected links must be an array".to_string())?;
    if arr.len() != links.len() {
        return Ok(false);
    }
    for (want, have) in arr.iter().zip(links) {
        if !ideal_eq_expected(alg, have, want)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Expected-value matching for the decompose ops. Keys: "split",
/// "certified", "left"/"right" (element splits only), "constraints_include"
/// (each listed coefficient vector must appear among the computed
/// constraints), "roots_empty" (no computed constraint has a rational
/// root).
fn decompose_expected_matches(
    alg: &Arc<ArtinAlgebra>,
    expected: &Value,
    split: bool,
    certified: Option<bool>,
    constraints: &[ConstraintPoly],
    factors: Option<(&Elem, &Elem)>,
) -> Result<bool, String> {
    match expected {
        Value::Bool(b) => Ok(*b == split),
        Value::Object(map) => {
            let mut ok = true;
            for (k, v) in map {
                ok &= match k.as_str() {
                    "split" => as_bool(v, k)? == split,
                    "certified" => Some(as_bool(v, k)?) == certified,
                    "left" => match factors {
                        Some((l, _)) => elem_eq_expected(alg, l, v)?,
                        None => false,
                    },
                    "right" => match factors {
                        Some((_, r)) => elem_eq_expected(alg, r, v)?,
                        None => false,
                    },
                    "constraints_include" => constraints_include(constraints, v)?,
                    "roots_empty" => {
                        let all_empty =
                            constraints.iter().all(|c| constraint_roots(c).is_empty());
                        as_bool(v, k)? == (!constraints.is_empty() && all_empty)
                    }
                    other => return Err(format!("unknown expected key '{}'", other)),
                };
            }
            Ok(ok)
        }
        _ => Err("expected value must be a boolean or an object".into()),
    }
}

/// Each expected coefficient vector (strings or integers, ascending
/// degree) must appear verbatim among the computed constraints.
fn constraints_include(constraints: &[ConstraintPoly], expected: &Value) -> Result<bool, String> {
    let wanted = expected
        .as_array()
        .ok_or_else(|| "constraints_include must be an array of coefficient arrays".to_string())?;
    let have: Vec<Vec<String>> = constraints
        .iter()
        .map(|c| c.coefficients.iter().map(|s| s.to_string()).collect())
        .collect();
    for want in wanted {
        let arr = want
            .as_array()
            .ok_or_else(|| "constraints_include entries must be arrays".to_string())?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for c in arr {
            match c {
                Value::String(s) => coeffs.push(s.clone()),
                Value::Number(n) => coeffs.push(n.to_string()),
                _ => return Err("constraint coefficients must be strings or integers".into()),
            }
        }
        if !have.contains(&coeffs) {
            return Ok(false);
        }
    }
    Ok(true)
}
