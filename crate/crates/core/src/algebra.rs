//! Finitely presented monomial algebras: the language of words avoiding a
//! finite set of forbidden factors, its growth, and the obstructions
//! (minimal absent words) of an arbitrary factorial language.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::complexity::{fit_tail, AffineTail, GrowthProfile, ProfileKind};
use crate::error::{Error, Result};
use crate::graph::{component_map, cycle_multiplicity, strongly_connected_components, CycleMultiplicity};
use crate::words::{Alphabet, FactorSet, Symbol, Word};

/// Default number of DP steps allowed for certifying a tail.
pub const DEFAULT_CYCLE_CAP: u64 = 1_000_000;
pub const CYCLE_CAP_ENV: &str = "GROWTHLAB_CYCLE_CAP";

/// The certification cap, overridable through the environment.
pub fn cycle_cap() -> u64 {
    std::env::var(CYCLE_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CYCLE_CAP)
}

pub(crate) fn contains_factor(hay: &[Symbol], needle: &[Symbol]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

/// An alphabet and a set of forbidden words (the zero monomials).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    forbidden: BTreeSet<Word>,
    removed: Vec<Word>,
}

impl Presentation {
    /// Reduces `forbidden` to an antichain; words containing another
    /// forbidden word are dropped and listed in [`Presentation::removed`].
    pub fn new(alphabet: Alphabet, forbidden: impl IntoIterator<Item = Word>) -> Result<Self> {
        let all: BTreeSet<Word> = forbidden.into_iter().collect();
        for w in &all {
            if w.is_empty() {
                return Err(Error::arg("the empty word cannot be forbidden"));
            }
            alphabet.check(w)?;
        }
        let mut kept = BTreeSet::new();
        let mut removed = Vec::new();
        // length-lex order: every possible factor of w has been decided before w
        for w in all {
            if kept.iter().any(|f: &Word| contains_factor(&w, f)) {
                removed.push(w);
            } else {
                kept.insert(w);
            }
        }
        Ok(Presentation { alphabet, forbidden: kept, removed })
    }

    /// Single-character symbols, e.g. `from_strs("ab", &["ba"])`.
    pub fn from_strs(symbols: &str, forbidden: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::from_chars(symbols)?;
        let words = forbidden.iter().map(|f| alphabet.parse(f)).collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, words)
    }

    /// First non-comment line lists the symbols (either one per character or
    /// whitespace separated); every further line is a forbidden word.
    pub fn parse(text: &str) -> Result<Self> {
        let mut alphabet: Option<Alphabet> = None;
        let mut words = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |e: Error| Error::Parse { line: i + 1, message: strip_kind(&e) };
            match &alphabet {
                None => {
                    let tokens: Vec<&str> = line.split_whitespace().collect();
                    let a = if tokens.len() == 1 {
                        Alphabet::from_chars(tokens[0])
                    } else {
                        Alphabet::new(tokens.iter().copied())
                    };
                    alphabet = Some(a.map_err(at)?);
                }
                Some(a) => {
                    let w = match a.separator() {
                        Some(_) => {
                            let tokens: Vec<&str> = line.split_whitespace().collect();
                            tokens
                                .iter()
                                .map(|t| a.symbol(t).ok_or_else(|| Error::arg(format!("symbol {t:?} not in alphabet"))))
                                .collect::<Result<Vec<_>>>()
                                .map(Word::from)
                        }
                        None => a.parse(&line.split_whitespace().collect::<String>()),
                    };
                    words.push(w.map_err(at)?);
                }
            }
        }
        let alphabet = alphabet.ok_or(Error::Parse { line: 1, message: "missing alphabet line".into() })?;
        Self::new(alphabet, words)
    }

    pub fn to_text(&self) -> String {
        let sep = if self.alphabet.separator().is_some() { " " } else { "" };
        let mut out = self.alphabet.names().join(sep);
        out.push('\n');
        for w in &self.forbidden {
            out.push_str(&self.alphabet.render(w));
            out.push('\n');
        }
        out
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &BTreeSet<Word> {
        &self.forbidden
    }

    /// Words dropped by the antichain reduction.
    pub fn removed(&self) -> &[Word] {
        &self.removed
    }

    pub fn is_normal(&self, w: &[Symbol]) -> bool {
        !self.forbidden.iter().any(|f| contains_factor(w, f))
    }

    pub fn to_json(&self) -> Value {
        let r = |ws: &mut dyn Iterator<Item = &Word>| ws.map(|w| self.alphabet.render(w)).collect::<Vec<_>>();
        json!({
            "alphabet": self.alphabet.names(),
            "forbidden": r(&mut self.forbidden.iter()),
            "removed": r(&mut self.removed.iter()),
        })
    }
}

fn strip_kind(e: &Error) -> String {
    match e {
        Error::Argument(m) | Error::Data(m) => m.clone(),
        other => other.to_string(),
    }
}

/// One strongly connected component of the live part of the automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub states: Vec<usize>,
    pub cycles: CycleMultiplicity,
}

/// Deterministic recognizer of the normal words. Live states are numbered
/// from 0 (the initial state); a missing transition leads to the dead state.
#[derive(Clone, Debug)]
pub struct FactorAutomaton {
    pub alphabet_size: usize,
    /// For every live state, the longest suffix of the input read so far that
    /// is a proper prefix of a forbidden word.
    pub labels: Vec<Word>,
    pub delta: Vec<Vec<Option<usize>>>,
    /// Components in topological order.
    pub components: Vec<Component>,
    pub comp_of: Vec<usize>,
}

pub fn build_automaton(p: &Presentation) -> Result<FactorAutomaton> {
    let size = p.alphabet.len();
    if size == 0 {
        return Err(Error::arg("empty alphabet"));
    }
    // trie over the forbidden words
    let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; size]];
    let mut terminal = vec![false];
    let mut label = vec![Word::empty()];
    for f in &p.forbidden {
        let mut node = 0;
        for (i, s) in f.iter().enumerate() {
            node = match children[node][s.index()] {
                Some(c) => c,
                None => {
                    children.push(vec![None; size]);
                    terminal.push(false);
                    label.push(Word::from(&f[..=i]));
                    let id = children.len() - 1;
                    children[node][s.index()] = Some(id);
                    id
                }
            };
        }
        terminal[node] = true;
    }
    // breadth-first goto/failure completion
    let n = children.len();
    let mut goto = vec![vec![0usize; size]; n];
    let mut fail = vec![0usize; n];
    let mut queue = std::collections::VecDeque::new();
    for a in 0..size {
        match children[0][a] {
            Some(c) => {
                goto[0][a] = c;
                queue.push_back(c);
            }
            None => goto[0][a] = 0,
        }
    }
    while let Some(u) = queue.pop_front() {
        if terminal[u] {
            continue;
        }
        for a in 0..size {
            match children[u][a] {
                Some(c) => {
                    fail[c] = goto[fail[u]][a];
                    goto[u][a] = c;
                    queue.push_back(c);
                }
                None => goto[u][a] = goto[fail[u]][a],
            }
        }
    }
    // live numbering keeps trie order, so the root stays 0
    let mut live_id = vec![None; n];
    let mut labels = Vec::new();
    for u in 0..n {
        if !terminal[u] {
            live_id[u] = Some(labels.len());
            labels.push(label[u].clone());
        }
    }
    let delta: Vec<Vec<Option<usize>>> =
        (0..n).filter(|&u| !terminal[u]).map(|u| goto[u].iter().map(|&t| live_id[t]).collect()).collect();
    let adj = adjacency(&delta);
    let comps = strongly_connected_components(&adj);
    let comp_of = component_map(delta.len(), &comps);
    let components = comps
        .into_iter()
        .map(|states| {
            let cycles = cycle_multiplicity(&adj, &states, &comp_of);
            Component { states, cycles }
        })
        .collect();
    Ok(FactorAutomaton { alphabet_size: size, labels, delta, components, comp_of })
}

fn adjacency(delta: &[Vec<Option<usize>>]) -> Vec<Vec<usize>> {
    delta.iter().map(|row| row.iter().flatten().copied().collect()).collect()
}

impl FactorAutomaton {
    pub fn live_states(&self) -> usize {
        self.delta.len()
    }

    /// Live states plus the dead state.
    pub fn n_states(&self) -> usize {
        self.delta.len() + 1
    }

    pub fn step(&self, q: usize, s: Symbol) -> Option<usize> {
        self.delta[q][s.index()]
    }

    pub fn run(&self, w: &[Symbol]) -> Option<usize> {
        w.iter().try_fold(0, |q, &s| self.step(q, s))
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        adjacency(&self.delta)
    }

    pub fn cyclic_components(&self) -> impl Iterator<Item = (usize, &Component)> {
        self.components.iter().enumerate().filter(|(_, c)| c.cycles != CycleMultiplicity::None)
    }

    /// Largest number of cyclic components met along one path.
    pub fn chain_depth(&self) -> usize {
        let adj = self.adjacency();
        let mut depth = vec![0usize; self.components.len()];
        // reverse topological order: successors are final before their sources
        for (c, comp) in self.components.iter().enumerate().rev() {
            let below = comp
                .states
                .iter()
                .flat_map(|&q| adj[q].iter())
                .map(|&t| self.comp_of[t])
                .filter(|&d| d != c)
                .map(|d| depth[d])
                .max()
                .unwrap_or(0);
            depth[c] = below + usize::from(comp.cycles != CycleMultiplicity::None);
        }
        depth.first().copied().unwrap_or(0)
    }

    /// States reachable from some cycle, including the cycle states.
    pub fn reachable_from_cycles(&self) -> Vec<bool> {
        let adj = self.adjacency();
        let mut mark = vec![false; self.live_states()];
        let mut stack: Vec<usize> = self.cyclic_components().flat_map(|(_, c)| c.states.iter().copied()).collect();
        for &q in &stack {
            mark[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &t in &adj[q] {
                if !mark[t] {
                    mark[t] = true;
                    stack.push(t);
                }
            }
        }
        mark
    }

    /// States from which some cycle can be reached.
    pub fn coreaching_cycles(&self) -> Vec<bool> {
        let adj = self.adjacency();
        let mut rev = vec![Vec::new(); self.live_states()];
        for (q, out) in adj.iter().enumerate() {
            for &t in out {
                rev[t].push(q);
            }
        }
        let mut mark = vec![false; self.live_states()];
        let mut stack: Vec<usize> = self.cyclic_components().flat_map(|(_, c)| c.states.iter().copied()).collect();
        for &q in &stack {
            mark[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &t in &rev[q] {
                if !mark[t] {
                    mark[t] = true;
                    stack.push(t);
                }
            }
        }
        mark
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                json!({
                    "states": c.states,
                    "cycles": match c.cycles {
                        CycleMultiplicity::None => "none",
                        CycleMultiplicity::One => "one",
                        CycleMultiplicity::Many => "many",
                    },
                })
            })
            .collect();
        json!({
            "live_states": self.live_states(),
            "labels": self.labels.iter().map(|l| alphabet.render(l)).collect::<Vec<_>>(),
            "components": comps,
        })
    }
}

/// All normal words of length exactly `n`, in lexicographic order.
pub fn normal_words(p: &Presentation, n: usize) -> Result<Vec<Word>> {
    let a = build_automaton(p)?;
    Ok(normal_words_with(&a, n))
}

pub fn normal_words_with(a: &FactorAutomaton, n: usize) -> Vec<Word> {
    fn go(a: &FactorAutomaton, q: usize, n: usize, cur: &mut Vec<Symbol>, out: &mut Vec<Word>) {
        if cur.len() == n {
            out.push(Word::from(cur.clone()));
            return;
        }
        for s in 0..a.alphabet_size {
            if let Some(t) = a.delta[q][s] {
                cur.push(Symbol(s as u8));
                go(a, t, n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(a, 0, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `T(n)` for `n = 0..=n_max` by counting paths in the automaton.
pub fn count_profile(a: &FactorAutomaton, n_max: usize) -> Vec<BigUint> {
    let mut counts = vec![BigUint::zero(); a.live_states()];
    counts[0] = BigUint::one();
    let mut out = vec![BigUint::one()];
    for _ in 0..n_max {
        let mut next = vec![BigUint::zero(); a.live_states()];
        for (q, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for t in a.delta[q].iter().flatten() {
                next[*t] += c;
            }
        }
        counts = next;
        out.push(counts.iter().sum());
    }
    out
}

/// `T_A` and `V_A` up to `n_max`; `V(0) = 1` counts the unit.
pub fn growth_profiles(p: &Presentation, n_max: usize) -> Result<(GrowthProfile, GrowthProfile)> {
    let a = build_automaton(p)?;
    Ok(profiles_from_counts(count_profile(&a, n_max)))
}

fn profiles_from_counts(t: Vec<BigUint>) -> (GrowthProfile, GrowthProfile) {
    let v: Vec<BigUint> = t
        .iter()
        .scan(BigUint::zero(), |acc, x| {
            *acc += x;
            Some(acc.clone())
        })
        .collect();
    (GrowthProfile::exact_from(ProfileKind::TAlgebra, t), GrowthProfile::exact_from(ProfileKind::VAlgebra, v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthTag {
    FiniteDim,
    Slow,
    Boundary {
        k: i64,
    },
    /// Polynomial growth; the degree refers to `V`.
    SuperlinearPoly {
        degree: usize,
    },
    Exponential,
}

impl GrowthTag {
    pub fn name(&self) -> &'static str {
        match self {
            GrowthTag::FiniteDim => "FiniteDim",
            GrowthTag::Slow => "Slow",
            GrowthTag::Boundary { .. } => "Boundary",
            GrowthTag::SuperlinearPoly { .. } => "SuperlinearPoly",
            GrowthTag::Exponential => "Exponential",
        }
    }

    /// The growth conditions under which the normal basis decomposes.
    pub fn admits_decomposition(&self) -> bool {
        matches!(self, GrowthTag::FiniteDim | GrowthTag::Slow | GrowthTag::Boundary { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub live_states: usize,
    pub cyclic_components: usize,
    /// Largest cycle multiplicity over all components.
    pub max_multiplicity: CycleMultiplicity,
    pub chain_depth: usize,
    /// lcm of the cycle lengths (polynomial regime only).
    pub period: Option<u64>,
    /// DP steps that make the tail certain, when known.
    pub required_window: Option<u64>,
    /// True when the required window exceeded the cap.
    pub empirical: bool,
    pub tail: Option<AffineTail>,
    /// `T` over the window actually computed.
    pub profile: GrowthProfile,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthClass {
    pub tag: GrowthTag,
    pub certificate: Certificate,
}

impl GrowthClass {
    pub fn to_json(&self) -> Value {
        let c = &self.certificate;
        let mut tag = json!({ "tag": self.tag.name() });
        match self.tag {
            GrowthTag::Boundary { k } => tag["K"] = json!(k),
            GrowthTag::SuperlinearPoly { degree } => tag["degree"] = json!(degree),
            _ => {}
        }
        tag["empirical"] = json!(c.empirical);
        tag["certificate"] = json!({
            "structural": {
                "live_states": c.live_states,
                "cyclic_components": c.cyclic_components,
                "max_cycle_multiplicity": match c.max_multiplicity {
                    CycleMultiplicity::None => "0",
                    CycleMultiplicity::One => "1",
                    CycleMultiplicity::Many => ">=2",
                },
                "chain_depth": c.chain_depth,
                "period": c.period,
            },
            "numeric": {
                "window": c.profile.horizon(),
                "required_window": c.required_window,
                "tail": c.tail.as_ref().map(AffineTail::to_json),
                "T": c.profile.to_json()["values"].clone(),
            },
        });
        tag
    }
}

pub fn classify_growth(p: &Presentation, window: usize) -> Result<GrowthClass> {
    classify_growth_with_cap(p, window, cycle_cap())
}

/// Structural classification from the cycle structure of the automaton,
/// with the numeric tail certified over a window long enough for the linear
/// recurrence that `T` satisfies to pin it down.
pub fn classify_growth_with_cap(p: &Presentation, window: usize, cap: u64) -> Result<GrowthClass> {
    let a = build_automaton(p)?;
    classify_automaton(&a, window, cap)
}

pub fn classify_automaton(a: &FactorAutomaton, window: usize, cap: u64) -> Result<GrowthClass> {
    let s = a.live_states();
    let cyclic: Vec<&Component> = a.cyclic_components().map(|(_, c)| c).collect();
    let max_multiplicity = a.components.iter().map(|c| c.cycles).max().unwrap_or(CycleMultiplicity::None);
    let depth = a.chain_depth();
    let polynomial = max_multiplicity != CycleMultiplicity::Many;
    // in the polynomial regime each cyclic component is a single cycle
    let period = if polynomial {
        cyclic.iter().try_fold(1u64, |l, c| {
            let len = c.states.len() as u64;
            l.checked_mul(len / l.gcd(&len)).filter(|&v| v <= cap)
        })
    } else {
        None
    };
    // T satisfies (E^L - 1)^depth T(n) = 0 for n >= s; 2L agreeing values after the
    // transient fix a degree-one solution
    let required = if polynomial && depth == 2 {
        period.and_then(|l| (2 * s as u64).checked_add(2 * l + 2)).filter(|&r| r <= cap)
    } else {
        None
    };
    let empirical = polynomial && depth == 2 && required.is_none();
    let horizon = match required {
        Some(r) => window.max(r as usize),
        None => window,
    };
    let (profile, _) = profiles_from_counts(count_profile(a, horizon));
    let fit = fit_tail(&profile);
    let tail = fit.tail;

    let tag = if max_multiplicity == CycleMultiplicity::Many {
        GrowthTag::Exponential
    } else if depth == 0 {
        GrowthTag::FiniteDim
    } else if depth == 1 {
        GrowthTag::Slow
    } else if depth == 2 {
        let boundary = match (&tail, required, period) {
            (Some(t), Some(_), Some(l)) => {
                let from = t.onset.max(s) as u64;
                t.slope == 1 && from + 2 * l <= horizon as u64 + 1
            }
            (Some(t), None, _) => t.slope == 1,
            _ => false,
        };
        match (&tail, boundary) {
            (Some(t), true) => GrowthTag::Boundary { k: t.offset },
            _ => GrowthTag::SuperlinearPoly { degree: 2 },
        }
    } else {
        GrowthTag::SuperlinearPoly { degree: depth }
    };
    Ok(GrowthClass {
        tag,
        certificate: Certificate {
            live_states: s,
            cyclic_components: cyclic.len(),
            max_multiplicity,
            chain_depth: depth,
            period,
            required_window: required,
            empirical,
            tail,
            profile,
        },
    })
}

/// Window over which the good-word profile and the slow-growth criterion are
/// trusted for this automaton.
pub fn certified_window(a: &FactorAutomaton, fallback: usize, cap: u64) -> usize {
    let s = a.live_states() as u64;
    let polynomial = a.components.iter().all(|c| c.cycles != CycleMultiplicity::Many);
    let period = a.cyclic_components().try_fold(1u64, |l, (_, c)| {
        let len = c.states.len() as u64;
        l.checked_mul(len / l.gcd(&len)).filter(|&v| v <= cap)
    });
    match (polynomial, period) {
        (true, Some(l)) => (2 * s + 2 * l + 2).min(cap).max(fallback as u64) as usize,
        _ => fallback,
    }
}

/// Number of good words of each length: words `v` with arbitrarily long
/// `w1`, `w2` making `w1 v w2` normal.
pub fn good_word_profile(p: &Presentation, n_max: usize) -> Result<GrowthProfile> {
    let a = build_automaton(p)?;
    Ok(good_word_profile_with(&a, n_max))
}

pub fn good_word_profile_with(a: &FactorAutomaton, n_max: usize) -> GrowthProfile {
    let from = a.reachable_from_cycles();
    let to = a.coreaching_cycles();
    let n = a.live_states();
    let words = n.div_ceil(64);
    let start: Vec<u64> = bitset(&from, words);
    let goal: Vec<u64> = bitset(&to, words);
    let meets = |set: &[u64]| set.iter().zip(&goal).any(|(x, y)| x & y != 0);
    let mut layer: HashMap<Vec<u64>, BigUint> = HashMap::new();
    if start.iter().any(|&x| x != 0) {
        layer.insert(start, BigUint::one());
    }
    let mut values = Vec::with_capacity(n_max + 1);
    for len in 0..=n_max {
        values.push(layer.iter().filter(|(set, _)| meets(set)).map(|(_, c)| c).sum());
        if len == n_max {
            break;
        }
        let mut next: HashMap<Vec<u64>, BigUint> = HashMap::new();
        for (set, count) in &layer {
            for sym in 0..a.alphabet_size {
                let mut image = vec![0u64; words];
                for q in members(set) {
                    if let Some(t) = a.delta[q][sym] {
                        image[t / 64] |= 1 << (t % 64);
                    }
                }
                if image.iter().any(|&x| x != 0) {
                    *next.entry(image).or_default() += count;
                }
            }
        }
        layer = next;
    }
    GrowthProfile::exact_from(ProfileKind::TRl, values)
}

fn bitset(flags: &[bool], words: usize) -> Vec<u64> {
    let mut out = vec![0u64; words];
    for (i, _) in flags.iter().enumerate().filter(|(_, f)| **f) {
        out[i / 64] |= 1 << (i % 64);
    }
    out
}

fn members(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
}

/// Least `n >= 1` with `T_RL(n) = T_RL(n+1)` inside the certified window.
pub fn slow_growth_criterion(p: &Presentation) -> Result<Option<usize>> {
    let a = build_automaton(p)?;
    Ok(slow_growth_criterion_with(&a, 64, cycle_cap()))
}

pub fn slow_growth_criterion_with(a: &FactorAutomaton, fallback: usize, cap: u64) -> Option<usize> {
    let w = certified_window(a, fallback, cap);
    let t = good_word_profile_with(a, w + 1);
    (1..=w).find(|&n| t.value(n) == t.value(n + 1))
}

/// Minimal absent words up to a length bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antidictionary {
    pub words: BTreeSet<Word>,
    pub bound: usize,
}

impl Antidictionary {
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "bound": self.bound,
            "words": self.words.iter().map(|w| alphabet.render(w)).collect::<Vec<_>>(),
        })
    }
}

/// Checks that `data[i]` holds words of length `i + 1` and is closed under
/// taking factors.
pub fn check_factor_data(alphabet: &Alphabet, data: &[FactorSet]) -> Result<()> {
    let alphabet_size = alphabet.len();
    for (i, set) in data.iter().enumerate() {
        let n = i + 1;
        if set.n != n {
            return Err(Error::data(format!("factor set {i} has length {} instead of {n}", set.n)));
        }
        for w in &set.words {
            if w.len() != n || w.iter().any(|s| s.index() >= alphabet_size) {
                return Err(Error::data(format!("word {} does not belong to the length-{n} set", alphabet.render(w))));
            }
            if n >= 2 {
                let below = &data[i - 1];
                for part in [&w[..n - 1], &w[1..]] {
                    if !below.contains(part) {
                        return Err(Error::data(format!(
                            "not factor-closed: {} is listed but its factor {} is not",
                            alphabet.render(w),
                            alphabet.render(part)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Factor sets of lengths `1..=m` of a finite word.
pub fn factor_data(w: &[Symbol], m: usize) -> Vec<FactorSet> {
    (1..=m).map(|n| crate::words::factors(w, n)).collect()
}

/// All words of length at most `data.len()` that are absent while all their
/// proper factors are present.
pub fn antidictionary(alphabet: &Alphabet, data: &[FactorSet]) -> Result<Antidictionary> {
    check_factor_data(alphabet, data)?;
    let mut words = BTreeSet::new();
    if let Some(first) = data.first() {
        for s in alphabet.symbols() {
            if !first.contains(&[s]) {
                words.insert(Word::from(vec![s]));
            }
        }
    }
    for n in 2..=data.len() {
        let (below, here) = (&data[n - 2], &data[n - 1]);
        for p in &below.words {
            for s in alphabet.symbols() {
                let mut tail = p[1..].to_vec();
                tail.push(s);
                if !below.contains(&tail) {
                    continue;
                }
                let mut cand = p.to_vec();
                cand.push(s);
                if !here.contains(&cand) {
                    words.insert(Word::from(cand));
                }
            }
        }
    }
    Ok(Antidictionary { words, bound: data.len() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub bound: usize,
    pub antidictionary: Antidictionary,
    pub presentation: Presentation,
    /// Number of words compared at each length `1..=bound`.
    pub counts: Vec<usize>,
}

impl DualityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "bound": self.bound,
            "antidictionary": self.antidictionary.to_json(self.presentation.alphabet()),
            "counts": self.counts,
            "mismatches": 0,
            "pass": true,
        })
    }
}

/// Rebuilds the language from its truncated antidictionary and compares it
/// with `data` at every length. A disagreement is an internal failure.
pub fn verify_duality(alphabet: &Alphabet, data: &[FactorSet]) -> Result<DualityReport> {
    let ad = antidictionary(alphabet, data)?;
    let p = Presentation::new(alphabet.clone(), ad.words.iter().cloned())?;
    let a = build_automaton(&p)?;
    let mut counts = Vec::with_capacity(data.len());
    for set in data {
        let rebuilt = normal_words_with(&a, set.n);
        let rebuilt_set: BTreeSet<&Word> = rebuilt.iter().collect();
        let missing = set.words.iter().find(|w| !rebuilt_set.contains(w));
        let extra = rebuilt.iter().find(|w| !set.words.contains(*w));
        if let Some(w) = missing.or(extra) {
            return Err(Error::Internal(format!(
                "duality mismatch at length {}: {} is on one side only",
                set.n,
                alphabet.render(w)
            )));
        }
        counts.push(set.words.len());
    }
    Ok(DualityReport { bound: data.len(), antidictionary: ad, presentation: p, counts })
}
