//! Versioned JSON reports shared by the command-line front end.

use serde_json::{json, Value};

use crate::algebra::{
    build_automaton, classify_automaton, count_profile, factor_data, good_word_profile_with,
    slow_growth_criterion_with, verify_duality, Presentation,
};
use crate::complexity::{balance_check, complexity_profile, count_json, fit_tail, GrowthProfile};
use crate::error::{Error, Result};
use crate::rauzy::{evolution, Source};
use crate::structure::{coverage_check, decompose, MIN_PRUNE_HORIZON};
use crate::words::{Alphabet, Symbol};

pub const SCHEMA: &str = "growthlab/1";

/// Adds the schema tag and command name in front of `body`.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("command".into(), json!(command));
    if let Value::Object(fields) = body {
        out.extend(fields);
    }
    Value::Object(out)
}

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub n_max: usize,
    pub k_max: usize,
    pub rauzy_cycle_cap: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { n_max: 40, k_max: 10, rauzy_cycle_cap: crate::rauzy::DEFAULT_CYCLE_CAP }
    }
}

pub fn analyze(alphabet: &Alphabet, w: &[Symbol], opts: AnalyzeOptions) -> Result<Value> {
    if w.is_empty() {
        return Err(Error::Argument("the word is empty".into()));
    }
    let profile = complexity_profile(w, opts.n_max);
    let exact_upto = w.len() / 2;
    let fit = fit_tail(&profile);
    let balance = balance_check(w, opts.n_max.min(exact_upto).max(1));
    let ev = evolution(Source::Prefix(w), opts.k_max, opts.rauzy_cycle_cap)?;
    let mut warnings = profile.notes.clone();
    if profile.horizon() > exact_upto {
        warnings.push(format!("counts for n > {exact_upto} are lower bounds only and are flagged inexact"));
    }
    Ok(envelope(
        "analyze",
        json!({
            "alphabet": alphabet.names(),
            "length": w.len(),
            "exact_upto": exact_upto,
            "complexity": profile.to_json(),
            "affine_tail": fit.tail.map(|t| t.to_json()),
            "fitted_slope": fit.fitted_slope,
            "balance": balance.to_json(alphabet),
            "rauzy": ev.to_json(alphabet),
            "warnings": warnings,
        }),
    ))
}

/// Growth class, profiles, good words and, when the class allows it, the
/// normal-basis description. A description that fails its own coverage
/// check is an internal error.
pub fn algebra(p: &Presentation, window: usize, cap: u64) -> Result<Value> {
    let a = build_automaton(p)?;
    let class = classify_automaton(&a, window, cap)?;
    let t = count_profile(&a, window);
    let mut v = Vec::with_capacity(t.len());
    let mut acc = num_bigint::BigUint::from(0u8);
    for x in &t {
        acc += x;
        v.push(count_json(&acc));
    }
    let good = good_word_profile_with(&a, window);
    let criterion = slow_growth_criterion_with(&a, window, cap);
    let decomposition = if class.tag.admits_decomposition() {
        let d = decompose(p)?;
        let n = window.max(MIN_PRUNE_HORIZON);
        let cov = coverage_check(&d, p, n)?;
        if !cov.pass {
            return Err(Error::Internal(format!("decomposition fails coverage: {}", cov.to_json(p.alphabet()))));
        }
        json!({ "description": d.to_json(p.alphabet()), "coverage": cov.to_json(p.alphabet()) })
    } else {
        Value::Null
    };
    let mut warnings = Vec::new();
    if !p.removed().is_empty() {
        let names: Vec<String> = p.removed().iter().map(|w| p.alphabet().render(w)).collect();
        warnings.push(format!("dropped non-minimal obstructions: {}", names.join(", ")));
    }
    Ok(envelope(
        "algebra",
        json!({
            "presentation": p.to_json(),
            "window": window,
            "profiles": {
                "T": t.iter().map(count_json).collect::<Vec<_>>(),
                "V": v,
                "T_RL": good.to_json()["values"].clone(),
            },
            "class": class.to_json(),
            "slow_growth_criterion": { "holds": criterion.is_some(), "n": criterion },
            "decomposition": decomposition,
            "warnings": warnings,
        }),
    ))
}

/// Antidictionary of the length-`<= m` factors of `w` and the round trip
/// through the presentation it defines.
pub fn duality(alphabet: &Alphabet, w: &[Symbol], m: usize) -> Result<Value> {
    if m == 0 {
        return Err(Error::Argument("m must be positive".into()));
    }
    if w.len() < 2 * m {
        return Err(Error::Argument(format!(
            "a prefix of length {} certifies factors only up to length {}; m = {m} needs at least {}",
            w.len(),
            w.len() / 2,
            2 * m
        )));
    }
    let report = verify_duality(alphabet, &factor_data(w, m))?;
    Ok(envelope(
        "duality",
        json!({
            "length": w.len(),
            "m": m,
            "duality": report.to_json(),
            "presentation": report.presentation.to_text(),
        }),
    ))
}

/// Profile as TSV with a header, for the `tsv` output format.
pub fn profile_tsv(p: &GrowthProfile) -> String {
    format!("n\t{}\n{}", p.kind.tag(), p.to_tsv())
}
