//! The acceptance suite: nine seeded end-to-end checks, each reporting a
//! single pass/fail line.

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    antidictionary, build_automaton, certified_window, classify_automaton, classify_growth, count_profile, factor_data,
    good_word_profile_with, slow_growth_criterion_with, verify_duality, GrowthTag, Presentation, DEFAULT_CYCLE_CAP,
};
use crate::complexity::{
    balance_check, complexity_profile, complexity_profile_with_exact_bound, detect_affine_tail, AffineTail,
};
use crate::error::Result;
use crate::oracle;
use crate::rauzy::{evolution, graph_stats, rauzy_graph, Source, Verdict, DEFAULT_CYCLE_CAP as RAUZY_CAP};
use crate::rotation::{convergent, default_start, golden_convergent, min_growth_system, sturmian, Angle};
use crate::structure::{coverage_check, decompose};
use crate::words::{check_conjugacy_shape, is_prefix_of_power, Alphabet, BiInfiniteSpec, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!("{} [{}] {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }
}

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "Sturmian complexity"),
    (2, "balance and complexity agree"),
    (3, "minimal growth codings"),
    (4, "growth classification"),
    (5, "good words and the slow-growth criterion"),
    (6, "language/algebra duality"),
    (7, "normal-basis decomposition"),
    (8, "Rauzy graph dichotomy"),
    (9, "SW = WT shape"),
];

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run(id, seed)).collect()
}

pub fn run(id: u8, seed: u64) -> CriterionResult {
    let name = CRITERIA.iter().find(|(i, _)| *i == id).map(|(_, n)| *n).unwrap_or("unknown");
    let outcome = match id {
        1 => sturmian_complexity(seed),
        2 => balance_equivalence(seed),
        3 => minimal_growth(),
        4 => growth_classification(seed),
        5 => good_words(seed),
        6 => duality(),
        7 => decomposition(seed),
        8 => rauzy_dichotomy(seed),
        9 => conjugacy(seed),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (pass, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult { id, name, pass, detail }
}

type Outcome = Result<(bool, String)>;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn frac(a: &Angle) -> oracle::Frac {
    (a.numer().to_i128().expect("small numerator"), a.denom().to_i128().expect("small denominator"))
}

const SMALL_PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Twenty `(α, x0)` pairs: golden-ratio convergents and convergents of
/// random continued fractions with partial quotients in `1..=3`, all with
/// denominator at least 900, and start points off the `1/q` grid.
pub fn sturmian_pairs(seed: u64) -> Vec<(Angle, Angle)> {
    let mut r = rng(seed, 1);
    (0..20)
        .map(|i| {
            let alpha = if i % 2 == 0 {
                golden_convergent(*[900u64, 1000, 1600, 2600, 4200].choose(&mut r).expect("nonempty"))
            } else {
                let mut quotients = vec![0u64];
                loop {
                    quotients.push(r.gen_range(1..=3));
                    let value = convergent(&quotients).expect("positive quotients");
                    if value.denom() >= &900.into() {
                        break Angle::new(value);
                    }
                }
            };
            let q = alpha.denom().to_i64().expect("small denominator");
            let s: i64 =
                **SMALL_PRIMES.iter().filter(|p| q % **p != 0).collect::<Vec<_>>().choose(&mut r).expect("prime");
            let x0 = Angle::from_ratio(r.gen_range(1..s), s).expect("valid start");
            (alpha, x0)
        })
        .collect()
}

fn sturmian_complexity(seed: u64) -> Outcome {
    let mut bad = Vec::new();
    for (alpha, x0) in sturmian_pairs(seed) {
        let w = sturmian(&alpha, &x0, 800, false)?;
        let reference = oracle::sturmian(frac(&alpha), frac(&x0), 800);
        if w.as_slice() != reference.as_slice() {
            bad.push(format!("{alpha} {x0}: coding differs from reference"));
            continue;
        }
        let spec = crate::rotation::sturmian_spec(&alpha, &x0)?;
        let exact = spec.certified_exact_horizon(&w, 40)?;
        let p = complexity_profile(&w, 40);
        let ok = exact == 40
            && (1..=40).all(|n| p.small(n) == n as u64 + 1 && p.is_exact(n) && oracle::complexity(&w, n) == n + 1);
        if !ok {
            bad.push(format!("{alpha} {x0}: exact to {exact}"));
        }
    }
    Ok((bad.is_empty(), summary("20 codings of length 800 with T(n) = n+1 for n <= 40", &bad)))
}

fn summary(ok: &str, bad: &[String]) -> String {
    if bad.is_empty() {
        ok.to_string()
    } else {
        format!("{} failures; first: {}", bad.len(), bad[0])
    }
}

fn is_standard_tail(t: &Option<AffineTail>) -> bool {
    matches!(t, Some(AffineTail { slope: 1, offset: 1, .. }))
}

fn balance_equivalence(seed: u64) -> Outcome {
    let mut bad = Vec::new();
    let pairs = sturmian_pairs(seed);
    for (alpha, x0) in &pairs {
        let w = sturmian(alpha, x0, 800, false)?;
        let d = balance_check(&w, 40).max_discrepancy;
        if d != 1 || oracle::balance(&w, 40) != 1 {
            bad.push(format!("{alpha} {x0}: discrepancy {d}"));
        }
    }
    // unbalanced words: half uniform, half Sturmian prefixes with one flipped letter
    let mut r = rng(seed, 2);
    let mut counterexamples = 0;
    let mut produced = 0;
    while produced < 20 {
        let w: Vec<Symbol> = if produced % 2 == 0 {
            (0..200).map(|_| Symbol(r.gen_range(0..2))).collect()
        } else {
            let (alpha, x0) = &pairs[produced % pairs.len()];
            let mut w = sturmian(alpha, x0, 200, false)?.into_vec();
            let i = r.gen_range(0..200);
            w[i] = Symbol(1 - w[i].0);
            w
        };
        let report = balance_check(&w, 100);
        if report.max_discrepancy < 2 {
            continue;
        }
        produced += 1;
        if is_standard_tail(&detect_affine_tail(&complexity_profile(&w, 100))) {
            counterexamples += 1;
        }
    }
    if counterexamples > 0 {
        bad.push(format!("{counterexamples} unbalanced words with T(n) = n+1"));
    }
    Ok((bad.is_empty(), summary("20 Sturmian codings balanced; 20 unbalanced words, none with tail n+1", &bad)))
}

fn minimal_growth() -> Outcome {
    let alphas = [golden_convergent(900), golden_convergent(988)];
    let mut bad = Vec::new();
    let mut found = Vec::new();
    for bps in [[0i64, 1, 2], [0, 2, 5]] {
        let mut ks = Vec::new();
        for alpha in &alphas {
            let x0 = default_start(alpha);
            let spec = min_growth_system(alpha, &bps, &["a", "b", "c"], &x0)?;
            let w = spec.mechanical_word(2000, false)?;
            let q = alpha.denom().to_i128().expect("small");
            let cuts: Vec<(oracle::Frac, Symbol)> = bps
                .iter()
                .map(|&n| ((i128::from(n) * alpha.numer().to_i128().expect("small")).rem_euclid(q), q))
                .zip(sorted_arc_symbols(&bps, alpha))
                .collect();
            if oracle::rotation_coding(frac(alpha), frac(&x0), &cuts, 2000) != w.as_slice() {
                bad.push(format!("{bps:?} at {alpha}: coding differs from reference"));
            }
            let exact = spec.certified_exact_horizon(&w, 60)?;
            let tail = detect_affine_tail(&complexity_profile_with_exact_bound(&w, exact, exact));
            match tail {
                Some(t) if t.slope == 1 && t.onset <= 50 => ks.push((t.offset, t.onset)),
                other => bad.push(format!("{bps:?} at {alpha}: tail {other:?} (exact to {exact})")),
            }
        }
        if ks.len() == 2 && ks[0].0 != ks[1].0 {
            bad.push(format!("{bps:?}: K changes from {} to {}", ks[0].0, ks[1].0));
        }
        if let Some((k, n)) = ks.first() {
            found.push(format!("{bps:?} -> K={k}, N={n}"));
        }
    }
    Ok((bad.is_empty(), summary(&found.join("; "), &bad)))
}

/// Symbols of the arcs in the order of the breakpoints as given, matching
/// the assignment `a, b, c` by sorted left endpoint.
fn sorted_arc_symbols(bps: &[i64], alpha: &Angle) -> Vec<Symbol> {
    let q = alpha.denom().to_i128().expect("small");
    let p = alpha.numer().to_i128().expect("small");
    let pos: Vec<i128> = bps.iter().map(|&n| (i128::from(n) * p).rem_euclid(q)).collect();
    let mut order: Vec<usize> = (0..bps.len()).collect();
    order.sort_by_key(|&i| pos[i]);
    let mut sym = vec![Symbol(0); bps.len()];
    for (rank, &i) in order.iter().enumerate() {
        sym[i] = Symbol(rank as u8);
    }
    sym
}

/// Up to three forbidden words of length at most 4 over two or three letters.
pub fn random_presentation(r: &mut ChaCha8Rng) -> Presentation {
    let k = r.gen_range(2..=3usize);
    let alphabet = Alphabet::from_chars(&"abc"[..k]).expect("valid alphabet");
    let count = r.gen_range(0..=3);
    let words: Vec<Word> = (0..count)
        .map(|_| {
            let len = r.gen_range(1..=4);
            Word::from((0..len).map(|_| Symbol(r.gen_range(0..k as u8))).collect::<Vec<_>>())
        })
        .collect();
    Presentation::new(alphabet, words).expect("valid presentation")
}

fn random_presentations(seed: u64) -> Vec<Presentation> {
    let mut r = rng(seed, 4);
    (0..200).map(|_| random_presentation(&mut r)).collect()
}

fn forbidden_vecs(p: &Presentation) -> Vec<Vec<Symbol>> {
    p.forbidden().iter().map(|w| w.to_vec()).collect()
}

fn growth_classification(seed: u64) -> Outcome {
    let mut bad = Vec::new();
    let expect = |alpha: &str, f: &[&str], tag: GrowthTag, bad: &mut Vec<String>| -> Result<Vec<u64>> {
        let p = Presentation::from_strs(alpha, f)?;
        let c = classify_growth(&p, 24)?;
        if c.tag != tag {
            bad.push(format!("{f:?}: got {:?}, expected {tag:?}", c.tag));
        }
        Ok((0..=10).map(|n| c.certificate.profile.small(n)).collect())
    };
    let t = expect("ab", &["ba"], GrowthTag::Boundary { k: 1 }, &mut bad)?;
    if t[1..=6] != [2, 3, 4, 5, 6, 7] {
        bad.push(format!("{{ba}}: T = {t:?}"));
    }
    let t = expect("ab", &["bb"], GrowthTag::Exponential, &mut bad)?;
    if t[1..=6] != [2, 3, 5, 8, 13, 21] {
        bad.push(format!("{{bb}}: T(1..6) = {:?}", &t[1..=6]));
    }
    let t = expect("ab", &["ab", "ba"], GrowthTag::Slow, &mut bad)?;
    if t[1..].iter().any(|&x| x != 2) {
        bad.push(format!("{{ab, ba}}: T = {t:?}"));
    }
    expect("a", &["aa"], GrowthTag::FiniteDim, &mut bad)?;
    let mut mismatches = 0;
    for p in random_presentations(seed) {
        let t = count_profile(&build_automaton(&p)?, 10);
        let f = forbidden_vecs(&p);
        for (n, tn) in t.iter().enumerate() {
            if tn.to_usize() != Some(oracle::normal_words(p.alphabet().len(), &f, n).len()) {
                mismatches += 1;
            }
        }
    }
    if mismatches > 0 {
        bad.push(format!("{mismatches} DP counts differ from enumeration"));
    }
    Ok((bad.is_empty(), summary("four examples classified; DP = enumeration for n <= 10 on 200 presentations", &bad)))
}

/// Good words by search: `v` is good when it sits in the middle of a normal
/// word with `ext` letters on each side, for `ext` past the state bound.
fn brute_good_words(p: &Presentation, n: usize) -> usize {
    let f = forbidden_vecs(p);
    let ext: usize = f.iter().map(Vec::len).sum::<usize>() + 1;
    let size = p.alphabet().len();
    let mut good = std::collections::HashSet::new();
    // depth-first over normal words of length 2·ext + n
    let total = 2 * ext + n;
    let mut stack: Vec<Vec<Symbol>> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        if w.len() == total {
            good.insert(w[ext..ext + n].to_vec());
            continue;
        }
        for s in 0..size {
            let mut x = w.clone();
            x.push(Symbol(s as u8));
            if !f.iter().any(|g| x.ends_with(g)) {
                stack.push(x);
            }
        }
    }
    good.len()
}

fn good_words(seed: u64) -> Outcome {
    let mut violations = Vec::new();
    let mut brute_checked = 0;
    let mut witnesses = 0;
    for p in random_presentations(seed) {
        let a = build_automaton(&p)?;
        let window = certified_window(&a, 24, DEFAULT_CYCLE_CAP);
        let t = count_profile(&a, window + 1);
        let rl = good_word_profile_with(&a, window + 1);
        if let Some(n) = (0..=window + 1).find(|&n| rl.value(n) > &t[n]) {
            violations.push(format!("{}: T_RL({n}) > T({n})", p.to_text().replace('\n', " ")));
        }
        let class = classify_automaton(&a, 24, DEFAULT_CYCLE_CAP)?;
        if let Some(n) = slow_growth_criterion_with(&a, 24, DEFAULT_CYCLE_CAP) {
            witnesses += 1;
            if !matches!(class.tag, GrowthTag::Slow | GrowthTag::FiniteDim) {
                violations.push(format!(
                    "{}: criterion at n={n} but class {:?}",
                    p.to_text().replace('\n', " "),
                    class.tag
                ));
            }
        }
        if class.tag != GrowthTag::Exponential && brute_checked < 60 {
            brute_checked += 1;
            for n in 0..=4 {
                if rl.small(n) as usize != brute_good_words(&p, n) {
                    violations.push(format!("{}: T_RL({n}) differs from search", p.to_text().replace('\n', " ")));
                }
            }
        }
    }
    let ok = format!(
        "T_RL <= T on 200 presentations; {witnesses} criterion witnesses, all slow; {brute_checked} checked by search"
    );
    Ok((violations.is_empty(), summary(&ok, &violations)))
}

fn duality() -> Outcome {
    let mut bad = Vec::new();
    let ab = Alphabet::from_chars("ab")?;
    let per = ab.parse(&"ab".repeat(50))?;
    let r = verify_duality(&ab, &factor_data(&per, 6))?;
    let ad: Vec<String> = r.antidictionary.words.iter().map(|w| ab.render(w)).collect();
    if ad != ["aa", "bb"] {
        bad.push(format!("(ab)^oo antidictionary {ad:?}"));
    }
    let alpha = golden_convergent(900);
    let fib = sturmian(&alpha, &Angle::from_ratio(233, 987)?, 900, false)?;
    let r = verify_duality(&ab, &factor_data(&fib, 12))?;
    let reference: Vec<Word> = oracle::minimal_absent_words(2, &fib, 12).into_iter().map(Word::from).collect();
    if r.antidictionary.words.iter().cloned().collect::<Vec<_>>() != sorted(reference) {
        bad.push("Fibonacci antidictionary differs from search".into());
    }
    let spec = min_growth_system(&alpha, &[0, 1, 2], &["a", "b", "c"], &default_start(&alpha))?;
    let w = spec.mechanical_word(2000, false)?;
    let r3 = verify_duality(spec.alphabet(), &factor_data(&w, 10))?;
    let ad3 = antidictionary(spec.alphabet(), &factor_data(&w, 10))?;
    if r3.antidictionary != ad3 {
        bad.push("three-letter antidictionary unstable".into());
    }
    let ok = format!(
        "(ab)^oo m=6 {{aa, bb}}; Fibonacci m=12 with {} obstructions; three-letter m=10 with {} obstructions; no mismatches",
        r.antidictionary.words.len(),
        r3.antidictionary.words.len()
    );
    Ok((bad.is_empty(), summary(&ok, &bad)))
}

fn sorted(mut v: Vec<Word>) -> Vec<Word> {
    v.sort();
    v
}

fn decomposition(seed: u64) -> Outcome {
    let mut bad = Vec::new();
    let mut presentations = vec![
        Presentation::from_strs("ab", &["ba"])?,
        Presentation::from_strs("ab", &["ab", "ba"])?,
        Presentation::from_strs("a", &["aa"])?,
    ];
    let mut r = rng(seed, 7);
    let mut drawn = 0;
    while presentations.len() < 53 && drawn < 10_000 {
        drawn += 1;
        let p = random_presentation(&mut r);
        let tag = classify_growth(&p, 24)?.tag;
        if matches!(tag, GrowthTag::Boundary { .. } | GrowthTag::Slow) && !presentations.contains(&p) {
            presentations.push(p);
        }
    }
    let mut mutations = 0;
    let mut mutation_horizon = 12;
    for p in &presentations {
        let name = p.to_text().replace('\n', " ");
        let d = decompose(p)?;
        if !coverage_check(&d, p, 12)?.pass {
            bad.push(format!("{name}: coverage fails"));
        }
        // independent comparison against enumeration
        let layers = d.factor_layers(10);
        let f = forbidden_vecs(p);
        for (n, layer) in layers.iter().enumerate() {
            let want: std::collections::BTreeSet<Word> =
                oracle::normal_words(p.alphabet().len(), &f, n).into_iter().map(Word::from).collect();
            if &want != layer {
                bad.push(format!("{name}: length {n} differs from enumeration"));
                break;
            }
        }
        let h = d.prune_horizon.max(12);
        mutation_horizon = mutation_horizon.max(h);
        for i in 0..d.families().len() {
            mutations += 1;
            if coverage_check(&d.without(i), p, h)?.pass {
                bad.push(format!("{name}: family {i} is redundant"));
            }
        }
    }
    let ok = format!(
        "{} presentations covered to n=12; {mutations} mutations all detected by n={mutation_horizon}",
        presentations.len()
    );
    Ok((bad.is_empty() && presentations.len() == 53, summary(&ok, &bad)))
}

fn rauzy_dichotomy(seed: u64) -> Outcome {
    let mut bad = Vec::new();
    let ab = Alphabet::from_chars("ab")?;
    let spec = BiInfiniteSpec::two_ray(ab.parse("aa")?, ab.parse("ab")?, ab.parse("bb")?)?;
    let ev = evolution(Source::Spec(&spec), 10, RAUZY_CAP)?;
    if !matches!(ev.verdict, Verdict::LosesStrongConnectivity { .. }) {
        bad.push(format!("two-ray verdict {:?}", ev.verdict));
    }
    for k in 1..=10 {
        let (fk, fk1) = (spec.factors(k)?, spec.factors(k + 1)?);
        let s = graph_stats(&rauzy_graph(&fk, &fk1)?, RAUZY_CAP);
        if s.n_edges as i64 - s.n_vertices as i64 != fk1.len() as i64 - fk.len() as i64 {
            bad.push(format!("two-ray k={k}: |E|-|V| differs from T(k+1)-T(k)"));
        }
    }
    let mut checked = 0;
    for (alpha, x0) in sturmian_pairs(seed) {
        let w = sturmian(&alpha, &x0, 800, false)?;
        let ev = evolution(Source::Prefix(&w), 10, RAUZY_CAP)?;
        if ev.verdict != Verdict::StronglyConnectedThroughout {
            bad.push(format!("{alpha} {x0}: {:?}", ev.verdict));
        }
        let t = complexity_profile(&w, 11);
        for s in &ev.stats {
            checked += 1;
            if s.n_edges as i64 - s.n_vertices as i64 != t.small(s.k + 1) as i64 - t.small(s.k) as i64 {
                bad.push(format!("{alpha} {x0} k={}: |E|-|V| mismatch", s.k));
            }
        }
    }
    let ok = format!("two-ray loses strong connectivity; 20 Sturmian codings strongly connected for k <= 10; {checked} edge counts match");
    Ok((bad.is_empty(), summary(&ok, &bad)))
}

fn conjugacy(seed: u64) -> Outcome {
    let mut r = rng(seed, 9);
    let mut bad = Vec::new();
    for _ in 0..1000 {
        let size = r.gen_range(2..=3u8);
        let s: Vec<Symbol> = (0..r.gen_range(1..=5)).map(|_| Symbol(r.gen_range(0..size))).collect();
        let k = r.gen_range(0..=4);
        let cut = r.gen_range(0..=s.len());
        let w: Vec<Symbol> = s.iter().copied().cycle().take(k * s.len() + cut).collect();
        let shape = check_conjugacy_shape(&s, &w)?;
        let holds = match &shape {
            Some(t) => [&s[..], &w[..]].concat() == [&w[..], &t[..]].concat(),
            None => false,
        };
        if !holds || !is_prefix_of_power(&w, &s)? || !oracle::is_prefix_of_power(&w, &s) {
            bad.push(format!("constructed W of length {} rejected", w.len()));
        }
    }
    let mut negatives = 0;
    while negatives < 1000 {
        let size = r.gen_range(2..=3u8);
        let s: Vec<Symbol> = (0..r.gen_range(1..=5)).map(|_| Symbol(r.gen_range(0..size))).collect();
        let w: Vec<Symbol> = (0..r.gen_range(1..=12)).map(|_| Symbol(r.gen_range(0..size))).collect();
        if oracle::is_prefix_of_power(&w, &s) {
            continue;
        }
        negatives += 1;
        let shape = check_conjugacy_shape(&s, &w)?;
        if shape.is_some() || is_prefix_of_power(&w, &s)? || oracle::conjugacy_exists(&s, &w, size as usize) {
            bad.push(format!("non-prefix W of length {} accepted", w.len()));
        }
    }
    Ok((bad.is_empty(), summary("1000 constructed W accepted; 1000 non-prefix W rejected", &bad)))
}
