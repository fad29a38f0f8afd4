//! Decomposition of a boundary language into families of words (finite
//! words, one-sided rays, pump series, a two-ray word and bridge series)
//! whose factors are exactly the normal words, plus finite-horizon evidence
//! for rotation codings of minimal growth.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{
    build_automaton, classify_automaton, cycle_cap, factor_data, normal_words_with, verify_duality, Antidictionary,
    FactorAutomaton, Presentation,
};
use crate::complexity::{complexity_profile_with_exact_bound, fit_tail, uniform_recurrence_bound, AffineTail};
use crate::error::{Error, Result};
use crate::graph::CycleMultiplicity;
use crate::rotation::CodingSpec;
use crate::words::{
    least_rotation, normalize_left_ray, normalize_right_ray, normalize_two_ray, primitive_root, Alphabet, Symbol,
    TwoRayShape, Word,
};

/// Smallest horizon used when pruning redundant families.
pub const MIN_PRUNE_HORIZON: usize = 12;
const MAX_PRUNE_HORIZON: usize = 256;
const MAX_ROUTES: usize = 100_000;

/// One family of words; the language it contributes is the set of factors
/// of its members.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// A single word.
    Finite(Word),
    /// `u^{∞/2} c`, infinite to the left.
    LeftRay { u: Word, c: Word },
    /// `d v^{∞/2}`, infinite to the right.
    RightRay { d: Word, v: Word },
    /// `e R^k f` for every `k >= 0`.
    Pump { e: Word, r: Word, f: Word },
    /// `u^{∞/2} c v^{∞/2}`.
    TwoRay { u: Word, c: Word, v: Word },
    /// `E u^n c v^m F` for all `n, m >= 0`.
    Bridge { e: Word, u: Word, c: Word, v: Word, f: Word },
}

enum Part<'a> {
    Chain(&'a [Symbol]),
    Loop(&'a [Symbol]),
}

impl Family {
    fn parts(&self) -> Vec<Part<'_>> {
        use Part::*;
        match self {
            Family::Finite(w) => vec![Chain(w)],
            Family::LeftRay { u, c } => vec![Loop(u), Chain(c)],
            Family::RightRay { d, v } => vec![Chain(d), Loop(v)],
            Family::Pump { e, r, f } => vec![Chain(e), Loop(r), Chain(f)],
            Family::TwoRay { u, c, v } => vec![Loop(u), Chain(c), Loop(v)],
            Family::Bridge { e, u, c, v, f } => vec![Chain(e), Loop(u), Chain(c), Loop(v), Chain(f)],
        }
    }

    /// Pruning order: earlier kinds are tried for removal first.
    fn rank(&self) -> u8 {
        match self {
            Family::Bridge { .. } => 0,
            Family::Pump { .. } => 1,
            Family::LeftRay { .. } | Family::RightRay { .. } => 2,
            Family::Finite(_) => 3,
            Family::TwoRay { .. } => 4,
        }
    }

    fn size(&self) -> usize {
        self.parts()
            .iter()
            .map(|p| match p {
                Part::Chain(w) | Part::Loop(w) => w.len(),
            })
            .sum()
    }

    fn max_loop(&self) -> usize {
        self.parts()
            .iter()
            .map(|p| match p {
                Part::Loop(w) => w.len(),
                Part::Chain(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Letter graph: one node per letter position, an edge for every
    /// possible next position. Loops may be skipped.
    fn letter_graph(&self) -> (Vec<Symbol>, Vec<Vec<usize>>) {
        let parts = self.parts();
        let mut letters = Vec::new();
        let mut spans = Vec::new();
        for p in &parts {
            let w = match p {
                Part::Chain(w) | Part::Loop(w) => w,
            };
            spans.push((letters.len(), w.len()));
            letters.extend_from_slice(w);
        }
        // entry[i]: nodes where a path continuing into part i can land
        let mut entry: Vec<Vec<usize>> = vec![Vec::new(); parts.len() + 1];
        for i in (0..parts.len()).rev() {
            let (start, len) = spans[i];
            entry[i] = match &parts[i] {
                Part::Chain(_) if len > 0 => vec![start],
                Part::Chain(_) => entry[i + 1].clone(),
                Part::Loop(_) => {
                    let mut e = vec![start];
                    e.extend(entry[i + 1].iter().copied());
                    e
                }
            };
        }
        let mut succ = vec![Vec::new(); letters.len()];
        for (i, p) in parts.iter().enumerate() {
            let (start, len) = spans[i];
            if len == 0 {
                continue;
            }
            for (k, next) in succ.iter_mut().enumerate().skip(start).take(len - 1) {
                next.push(k + 1);
            }
            let last = start + len - 1;
            if let Part::Loop(_) = p {
                succ[last].push(start);
            }
            succ[last].extend(entry[i + 1].iter().copied());
        }
        (letters, succ)
    }

    /// Factors of every length `0..=h`.
    pub fn factor_layers(&self, h: usize) -> Vec<BTreeSet<Word>> {
        let (letters, succ) = self.letter_graph();
        let mut out = vec![BTreeSet::new(); h + 1];
        out[0].insert(Word::empty());
        let mut layer: BTreeMap<Vec<Symbol>, BTreeSet<usize>> = BTreeMap::new();
        for (node, &s) in letters.iter().enumerate() {
            layer.entry(vec![s]).or_default().insert(node);
        }
        for (n, set) in out.iter_mut().enumerate().skip(1) {
            if layer.is_empty() {
                break;
            }
            set.extend(layer.keys().map(|w| Word::from(w.clone())));
            if n == h {
                break;
            }
            let mut next: BTreeMap<Vec<Symbol>, BTreeSet<usize>> = BTreeMap::new();
            for (w, nodes) in &layer {
                for &q in nodes {
                    for &t in &succ[q] {
                        let mut x = w.clone();
                        x.push(letters[t]);
                        next.entry(x).or_default().insert(t);
                    }
                }
            }
            layer = next;
        }
        out
    }

    pub fn to_json(&self, a: &Alphabet) -> Value {
        let r = |w: &Word| a.render(w);
        match self {
            Family::Finite(w) => json!(r(w)),
            Family::LeftRay { u, c } => json!({ "u": r(u), "c": r(c) }),
            Family::RightRay { d, v } => json!({ "d": r(d), "v": r(v) }),
            Family::Pump { e, r: rr, f } => json!({ "e": r(e), "R": r(rr), "f": r(f), "K": "full" }),
            Family::TwoRay { u, c, v } => json!({ "u": r(u), "c": r(c), "v": r(v) }),
            Family::Bridge { e, u, c, v, f } => {
                json!({ "E": r(e), "u": r(u), "c": r(c), "v": r(v), "F": r(f) })
            }
        }
    }

    pub fn describe(&self, a: &Alphabet) -> String {
        let r = |w: &Word| if w.is_empty() { "ε".to_string() } else { a.render(w) };
        match self {
            Family::Finite(w) => r(w),
            Family::LeftRay { u, c } => format!("({})^∞/2 {}", r(u), r(c)),
            Family::RightRay { d, v } => format!("{} ({})^∞/2", r(d), r(v)),
            Family::Pump { e, r: rr, f } => format!("{} ({})^k {}, k ∈ ℕ", r(e), r(rr), r(f)),
            Family::TwoRay { u, c, v } => format!("({})^∞/2 {} ({})^∞/2", r(u), r(c), r(v)),
            Family::Bridge { e, u, c, v, f } => format!("{} ({})^n {} ({})^m {}", r(e), r(u), r(c), r(v), r(f)),
        }
    }
}

/// Families whose factors are the normal words of a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalBasisDescription {
    /// Maximal finite words; always contains the empty word.
    pub finite: BTreeSet<Word>,
    pub left_rays: Vec<(Word, Word)>,
    pub right_rays: Vec<(Word, Word)>,
    /// `(e, R, f)`; the index set is all of ℕ.
    pub pumps: Vec<(Word, Word, Word)>,
    pub two_ray: Option<(Word, Word, Word)>,
    /// `(E, u, c, v, F)`.
    pub bridges: Vec<(Word, Word, Word, Word, Word)>,
    /// Largest number of bridge members of a single length seen up to `verified_to`.
    pub bridge_count_bound: usize,
    /// Every family is needed for coverage up to this length.
    pub prune_horizon: usize,
    /// Coverage was checked exhaustively up to this length.
    pub verified_to: usize,
}

impl NormalBasisDescription {
    pub fn from_families(families: impl IntoIterator<Item = Family>) -> Self {
        let mut d = NormalBasisDescription {
            finite: [Word::empty()].into_iter().collect(),
            left_rays: Vec::new(),
            right_rays: Vec::new(),
            pumps: Vec::new(),
            two_ray: None,
            bridges: Vec::new(),
            bridge_count_bound: 0,
            prune_horizon: 0,
            verified_to: 0,
        };
        let mut fams: Vec<Family> = families.into_iter().collect();
        fams.sort();
        for f in fams {
            match f {
                Family::Finite(w) => {
                    d.finite.insert(w);
                }
                Family::LeftRay { u, c } => d.left_rays.push((u, c)),
                Family::RightRay { d: x, v } => d.right_rays.push((x, v)),
                Family::Pump { e, r, f } => d.pumps.push((e, r, f)),
                Family::TwoRay { u, c, v } if d.two_ray.is_none() => d.two_ray = Some((u, c, v)),
                // further two-ray words are bridges without ends
                Family::TwoRay { u, c, v } => d.bridges.push((Word::empty(), u, c, v, Word::empty())),
                Family::Bridge { e, u, c, v, f } => d.bridges.push((e, u, c, v, f)),
            }
        }
        d
    }

    /// All families except the empty word.
    pub fn families(&self) -> Vec<Family> {
        let mut out: Vec<Family> = self.finite.iter().filter(|w| !w.is_empty()).cloned().map(Family::Finite).collect();
        out.extend(self.left_rays.iter().map(|(u, c)| Family::LeftRay { u: u.clone(), c: c.clone() }));
        out.extend(self.right_rays.iter().map(|(d, v)| Family::RightRay { d: d.clone(), v: v.clone() }));
        out.extend(self.pumps.iter().map(|(e, r, f)| Family::Pump { e: e.clone(), r: r.clone(), f: f.clone() }));
        out.extend(self.two_ray.iter().map(|(u, c, v)| Family::TwoRay { u: u.clone(), c: c.clone(), v: v.clone() }));
        out.extend(self.bridges.iter().map(|(e, u, c, v, f)| Family::Bridge {
            e: e.clone(),
            u: u.clone(),
            c: c.clone(),
            v: v.clone(),
            f: f.clone(),
        }));
        out
    }

    /// The same description with family `index` (as listed by
    /// [`NormalBasisDescription::families`]) removed.
    pub fn without(&self, index: usize) -> Self {
        let mut fams = self.families();
        fams.remove(index);
        let mut d = Self::from_families(fams);
        d.bridge_count_bound = self.bridge_count_bound;
        d.prune_horizon = self.prune_horizon;
        d.verified_to = self.verified_to;
        d
    }

    /// Length-`0..=h` factors of all families together.
    pub fn factor_layers(&self, h: usize) -> Vec<BTreeSet<Word>> {
        let mut out = vec![BTreeSet::new(); h + 1];
        out[0].insert(Word::empty());
        for w in &self.finite {
            for (n, set) in out.iter_mut().enumerate().take(h.min(w.len()) + 1).skip(1) {
                set.extend(w.windows(n).map(Word::from));
            }
        }
        for f in self.families().into_iter().filter(|f| !matches!(f, Family::Finite(_))) {
            for (n, set) in f.factor_layers(h).into_iter().enumerate() {
                out[n].extend(set);
            }
        }
        out
    }

    /// Number of bridge members of length exactly `k`.
    pub fn bridge_members(&self, k: usize) -> usize {
        self.bridges
            .iter()
            .map(|(e, u, c, v, f)| {
                let fixed = e.len() + c.len() + f.len();
                if k < fixed {
                    return 0;
                }
                let rest = k - fixed;
                (0..=rest / u.len()).filter(|i| (rest - i * u.len()).is_multiple_of(v.len())).count()
            })
            .sum()
    }

    pub fn to_json(&self, a: &Alphabet) -> Value {
        let fam = |f: Family| f.to_json(a);
        json!({
            "finite": self.finite.iter().map(|w| a.render(w)).collect::<Vec<_>>(),
            "left_rays": self.left_rays.iter().map(|(u, c)| fam(Family::LeftRay { u: u.clone(), c: c.clone() })).collect::<Vec<_>>(),
            "right_rays": self.right_rays.iter().map(|(d, v)| fam(Family::RightRay { d: d.clone(), v: v.clone() })).collect::<Vec<_>>(),
            "pump": self.pumps.iter().map(|(e, r, f)| fam(Family::Pump { e: e.clone(), r: r.clone(), f: f.clone() })).collect::<Vec<_>>(),
            "two_ray": self.two_ray.as_ref().map(|(u, c, v)| fam(Family::TwoRay { u: u.clone(), c: c.clone(), v: v.clone() })),
            "bridge": self.bridges.iter().map(|(e, u, c, v, f)| fam(Family::Bridge { e: e.clone(), u: u.clone(), c: c.clone(), v: v.clone(), f: f.clone() })).collect::<Vec<_>>(),
            "bridge_count_bound": self.bridge_count_bound,
            "prune_horizon": self.prune_horizon,
            "verified_to": self.verified_to,
        })
    }

    pub fn to_text(&self, a: &Alphabet) -> String {
        let mut out = String::new();
        let finite: Vec<String> =
            self.finite.iter().map(|w| if w.is_empty() { "ε".into() } else { a.render(w) }).collect();
        out.push_str(&format!("finite words: {{{}}}\n", finite.join(", ")));
        for f in self.families().iter().filter(|f| !matches!(f, Family::Finite(_))) {
            let kind = match f {
                Family::LeftRay { .. } => "left ray",
                Family::RightRay { .. } => "right ray",
                Family::Pump { .. } => "pump series",
                Family::TwoRay { .. } => "two-ray word",
                Family::Bridge { .. } => "bridge series",
                Family::Finite(_) => unreachable!(),
            };
            out.push_str(&format!("{kind}: {}\n", f.describe(a)));
        }
        if !self.bridges.is_empty() {
            out.push_str(&format!("bridge members per length <= {}\n", self.bridge_count_bound));
        }
        out.push_str(&format!("coverage verified up to length {}\n", self.verified_to));
        out
    }
}

fn is_suffix_of_power(w: &[Symbol], u: &[Symbol]) -> bool {
    let m = u.len();
    w.iter().rev().enumerate().all(|(i, s)| *s == u[m - 1 - i % m])
}

fn is_prefix_of_power(w: &[Symbol], u: &[Symbol]) -> bool {
    w.iter().enumerate().all(|(i, s)| *s == u[i % u.len()])
}

fn periodic_family(u: &[Symbol]) -> Family {
    let (u, _) = least_rotation(&primitive_root(u));
    Family::LeftRay { u, c: Word::empty() }
}

fn left_ray(u: &[Symbol], c: &[Symbol]) -> Family {
    if is_prefix_of_power(c, u) {
        return periodic_family(u);
    }
    let (u, c) = normalize_left_ray(u, c);
    Family::LeftRay { u, c }
}

fn right_ray(d: &[Symbol], v: &[Symbol]) -> Family {
    if is_suffix_of_power(d, v) {
        return periodic_family(v);
    }
    let (d, v) = normalize_right_ray(d, v);
    Family::RightRay { d, v }
}

fn two_ray(u: &[Symbol], c: &[Symbol], v: &[Symbol]) -> Family {
    match normalize_two_ray(u, c, v) {
        TwoRayShape::Periodic(w) => periodic_family(&w),
        TwoRayShape::TwoRay { u, c, v } => Family::TwoRay { u, c, v },
    }
}

/// A maximal path shape through the automaton: `letters[0] cycles[0]^*
/// letters[1] cycles[1]^* ...`, one more letter block than cycles.
#[derive(Clone, Debug)]
struct Route {
    letters: Vec<Vec<Symbol>>,
    cycles: Vec<Word>,
}

fn cycle_word(a: &FactorAutomaton, entry: usize) -> (Vec<usize>, Word) {
    let comp = a.comp_of[entry];
    let mut states = vec![entry];
    let mut word = Vec::new();
    let mut q = entry;
    loop {
        let (s, t) = (0..a.alphabet_size)
            .find_map(|s| a.delta[q][s].filter(|&t| a.comp_of[t] == comp).map(|t| (s, t)))
            .expect("a state on a cycle has an internal edge");
        word.push(Symbol(s as u8));
        if t == entry {
            break;
        }
        states.push(t);
        q = t;
    }
    (states, Word::from(word))
}

fn routes(a: &FactorAutomaton) -> Result<Vec<Route>> {
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Route { letters: vec![Vec::new()], cycles: Vec::new() })];
    while let Some((q, route)) = stack.pop() {
        if out.len() + stack.len() > MAX_ROUTES {
            return Err(Error::arg(format!("more than {MAX_ROUTES} routes through the automaton")));
        }
        let comp = a.comp_of[q];
        if a.components[comp].cycles != CycleMultiplicity::None {
            if route.cycles.len() == 2 {
                return Err(Error::Internal("a path meets three cycles, which forces superlinear growth of T".into()));
            }
            let (states, u) = cycle_word(a, q);
            let mut base = route.clone();
            base.cycles.push(u.clone());
            // staying on the cycle forever
            let mut stay = base.clone();
            stay.letters.push(Vec::new());
            out.push(stay);
            for (pos, &x) in states.iter().enumerate() {
                for s in 0..a.alphabet_size {
                    if let Some(t) = a.delta[x][s].filter(|&t| a.comp_of[t] != comp) {
                        let mut next = base.clone();
                        let mut block = u[..pos].to_vec();
                        block.push(Symbol(s as u8));
                        next.letters.push(block);
                        stack.push((t, next));
                    }
                }
            }
        } else {
            let exits: Vec<(usize, usize)> =
                (0..a.alphabet_size).filter_map(|s| a.delta[q][s].map(|t| (s, t))).collect();
            if exits.is_empty() {
                out.push(route);
                continue;
            }
            for (s, t) in exits {
                let mut next = route.clone();
                next.letters.last_mut().expect("nonempty").push(Symbol(s as u8));
                stack.push((t, next));
            }
        }
    }
    Ok(out)
}

/// Pumps with whole periods moved out of `e` and `f`; these add the short
/// members and are only kept when they stay inside the language.
fn pump_shifts(e: &[Symbol], r: &[Symbol], f: &[Symbol]) -> Vec<Family> {
    let mut out = Vec::new();
    let mut e_cut = e.len();
    loop {
        let mut f_cut = 0;
        loop {
            if (e_cut, f_cut) != (e.len(), 0) {
                out.push(Family::Pump { e: Word::from(&e[..e_cut]), r: Word::from(r), f: Word::from(&f[f_cut..]) });
            }
            if f.len() - f_cut >= r.len() && f[f_cut..f_cut + r.len()] == *r {
                f_cut += r.len();
            } else {
                break;
            }
        }
        if e_cut >= r.len() && e[e_cut - r.len()..e_cut] == *r {
            e_cut -= r.len();
        } else {
            break;
        }
    }
    out
}

fn optional_candidates(route: &Route) -> Vec<Family> {
    match route.cycles.as_slice() {
        [u] if !is_suffix_of_power(&route.letters[0], u) && !is_prefix_of_power(&route.letters[1], u) => {
            pump_shifts(&route.letters[0], u, &route.letters[1])
        }
        _ => Vec::new(),
    }
}

fn candidates(route: &Route) -> Vec<Family> {
    let l = &route.letters;
    match route.cycles.as_slice() {
        [] => vec![Family::Finite(Word::from(l[0].clone()))],
        [u] => {
            let (e, f) = (&l[0], &l[1]);
            match (is_suffix_of_power(e, u), is_prefix_of_power(f, u)) {
                (true, true) => vec![periodic_family(u)],
                (true, false) => vec![left_ray(u, f)],
                (false, true) => vec![right_ray(e, u)],
                (false, false) => vec![
                    Family::Pump { e: Word::from(e.clone()), r: u.clone(), f: Word::from(f.clone()) },
                    left_ray(u, f),
                    right_ray(e, u),
                ],
            }
        }
        [u, v] => {
            let c = &l[1];
            let e: &[Symbol] = if is_suffix_of_power(&l[0], u) { &[] } else { &l[0] };
            let f: &[Symbol] = if is_prefix_of_power(&l[2], v) { &[] } else { &l[2] };
            let ray = two_ray(u, c, v);
            if e.is_empty() && f.is_empty() {
                vec![ray]
            } else {
                vec![
                    Family::Bridge {
                        e: Word::from(e),
                        u: u.clone(),
                        c: Word::from(c.clone()),
                        v: v.clone(),
                        f: Word::from(f),
                    },
                    ray,
                ]
            }
        }
        _ => unreachable!("routes stop at two cycles"),
    }
}

fn normal_layers(a: &FactorAutomaton, h: usize) -> Vec<BTreeSet<Word>> {
    (0..=h).map(|n| normal_words_with(a, n).into_iter().collect()).collect()
}

fn produces_only_normal(layers: &[BTreeSet<Word>], normal: &[BTreeSet<Word>]) -> bool {
    layers.iter().zip(normal).all(|(l, n)| l.is_subset(n))
}

/// Greedy removal of families whose factors up to `h` are covered by the
/// others. Fails if some required family produces a word that is not normal;
/// optional families that do are discarded.
fn prune(
    required: &[Family],
    optional: &[Family],
    normal: &[BTreeSet<Word>],
    alphabet: &Alphabet,
) -> Result<Vec<Family>> {
    let h = normal.len() - 1;
    let mut fams: Vec<Family> = required.to_vec();
    let mut layers: Vec<Vec<BTreeSet<Word>>> = fams.iter().map(|f| f.factor_layers(h)).collect();
    for f in optional.iter().filter(|f| !required.contains(f)) {
        let lay = f.factor_layers(h);
        if produces_only_normal(&lay, normal) {
            fams.push(f.clone());
            layers.push(lay);
        }
    }
    let mut multiplicity: BTreeMap<&Word, usize> = BTreeMap::new();
    for (f, lay) in fams.iter().zip(&layers) {
        for (n, set) in lay.iter().enumerate() {
            if let Some(w) = set.iter().find(|w| !normal[n].contains(*w)) {
                return Err(Error::Internal(format!(
                    "family {} produces the non-normal word {}",
                    f.describe(alphabet),
                    alphabet.render(w)
                )));
            }
            for w in set.iter().filter(|w| !w.is_empty()) {
                *multiplicity.entry(w).or_default() += 1;
            }
        }
    }
    let mut order: Vec<usize> = (0..fams.len()).collect();
    order.sort_by_key(|&i| (fams[i].rank(), std::cmp::Reverse(fams[i].size()), i));
    let mut keep = vec![true; fams.len()];
    for i in order {
        let redundant = layers[i].iter().flatten().filter(|w| !w.is_empty()).all(|w| multiplicity[w] >= 2);
        if redundant {
            keep[i] = false;
            for w in layers[i].iter().flatten().filter(|w| !w.is_empty()) {
                *multiplicity.get_mut(w).expect("counted") -= 1;
            }
        }
    }
    Ok(fams.into_iter().zip(keep).filter(|(_, k)| *k).map(|(f, _)| f).collect())
}

/// Splits the normal words of `p` into families.
pub fn decompose(p: &Presentation) -> Result<NormalBasisDescription> {
    decompose_with_horizon(p, MIN_PRUNE_HORIZON)
}

pub fn decompose_with_horizon(p: &Presentation, min_horizon: usize) -> Result<NormalBasisDescription> {
    let a = build_automaton(p)?;
    let class = classify_automaton(&a, 2 * a.live_states() + 8, cycle_cap())?;
    if !class.tag.admits_decomposition() {
        return Err(Error::Class(format!(
            "decomposition needs finite, slow or boundary growth, got {}",
            class.tag.name()
        )));
    }
    let mut cands: BTreeSet<Family> = BTreeSet::new();
    let mut optional: BTreeSet<Family> = BTreeSet::new();
    for r in routes(&a)? {
        cands.extend(candidates(&r));
        optional.extend(optional_candidates(&r));
    }
    let cands: Vec<Family> = cands.into_iter().collect();
    let optional: Vec<Family> = optional.into_iter().collect();
    let structural = cands.iter().map(|f| f.size() + f.max_loop()).max().unwrap_or(0) + 1;
    let mut h = min_horizon.max(MIN_PRUNE_HORIZON).max(structural);
    loop {
        let normal = normal_layers(&a, h);
        let kept = prune(&cands, &optional, &normal, p.alphabet())?;
        let mut desc = NormalBasisDescription::from_families(kept);
        let check = coverage_with(&desc, &a, 2 * h);
        if check.pass {
            desc.prune_horizon = h;
            desc.verified_to = 2 * h;
            desc.bridge_count_bound = (0..=2 * h).map(|k| desc.bridge_members(k)).max().unwrap_or(0);
            return Ok(desc);
        }
        if 2 * h > MAX_PRUNE_HORIZON {
            let d = check.first_discrepancy.expect("failed check has a witness");
            return Err(Error::Internal(format!(
                "coverage fails at length {} on {}",
                d.length,
                p.alphabet().render(&d.word)
            )));
        }
        h *= 2;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscrepancyKind {
    /// A normal word that no family produces.
    Uncovered,
    /// A produced word that is not normal.
    Overgenerated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub length: usize,
    pub word: Word,
    pub kind: DiscrepancyKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub n_max: usize,
    pub pass: bool,
    pub first_discrepancy: Option<Discrepancy>,
}

impl CoverageReport {
    pub fn to_json(&self, a: &Alphabet) -> Value {
        json!({
            "n_max": self.n_max,
            "pass": self.pass,
            "first_discrepancy": self.first_discrepancy.as_ref().map(|d| json!({
                "length": d.length,
                "word": a.render(&d.word),
                "kind": match d.kind {
                    DiscrepancyKind::Uncovered => "uncovered",
                    DiscrepancyKind::Overgenerated => "overgenerated",
                },
            })),
        })
    }
}

/// Compares the normal words of `p` with the factors of the description at
/// every length up to `n_max`.
pub fn coverage_check(desc: &NormalBasisDescription, p: &Presentation, n_max: usize) -> Result<CoverageReport> {
    let a = build_automaton(p)?;
    Ok(coverage_with(desc, &a, n_max))
}

fn coverage_with(desc: &NormalBasisDescription, a: &FactorAutomaton, n_max: usize) -> CoverageReport {
    let described = desc.factor_layers(n_max);
    for (n, got) in described.iter().enumerate() {
        let want: BTreeSet<Word> = normal_words_with(a, n).into_iter().collect();
        let uncovered = want.difference(got).next().map(|w| (w, DiscrepancyKind::Uncovered));
        let over = got.difference(&want).next().map(|w| (w, DiscrepancyKind::Overgenerated));
        if let Some((w, kind)) = uncovered.or(over) {
            return CoverageReport {
                n_max,
                pass: false,
                first_discrepancy: Some(Discrepancy { length: n, word: w.clone(), kind }),
            };
        }
    }
    CoverageReport { n_max, pass: true, first_discrepancy: None }
}

/// Finite-horizon evidence that a rotation coding is a uniformly recurrent
/// word of complexity `n + K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case2Witness {
    pub horizon: usize,
    /// Lengths up to which the prefix holds every factor of the coding.
    pub exact_upto: usize,
    pub tail: AffineTail,
    /// Sampled factors with their uniform recurrence bounds.
    pub recurrence: Vec<(Word, Option<usize>)>,
    /// Some sampled factor had no conclusive bound within the prefix.
    pub inconclusive: bool,
    pub antidictionary: Antidictionary,
    pub duality_verified: bool,
    pub resonance_waived: bool,
}

impl Case2Witness {
    pub fn k(&self) -> i64 {
        self.tail.offset
    }

    pub fn to_json(&self, a: &Alphabet) -> Value {
        json!({
            "horizon": self.horizon,
            "exact_upto": self.exact_upto,
            "K": self.tail.offset,
            "tail": self.tail.to_json(),
            "uniform_recurrence": self.recurrence.iter().map(|(v, n)| json!({ "v": a.render(v), "N": n })).collect::<Vec<_>>(),
            "inconclusive": self.inconclusive,
            "antidictionary": self.antidictionary.to_json(a),
            "duality_verified": self.duality_verified,
            "resonance_waived": self.resonance_waived,
        })
    }
}

/// Longest factor length checked for exactness, obstructions and duality.
pub const WITNESS_EXACT_CAP: usize = 40;

pub fn witness_case2(
    spec: &CodingSpec,
    horizon: usize,
    samples: usize,
    seed: u64,
    waive_resonance: bool,
) -> Result<Case2Witness> {
    let w = spec.mechanical_word(horizon, waive_resonance)?;
    let exact_upto = spec.certified_exact_horizon(&w, WITNESS_EXACT_CAP.min(horizon / 2))?;
    let profile = complexity_profile_with_exact_bound(&w, exact_upto, exact_upto);
    let tail = match fit_tail(&profile).tail {
        Some(t) if t.slope == 1 => t,
        Some(t) => {
            return Err(Error::NotCase2(format!(
                "complexity has slope {} (T(n) = {} from n = {}), so the word is periodic",
                t.slope, t.offset, t.onset
            )))
        }
        None => return Err(Error::NotCase2(format!("no affine tail within the exact window n <= {exact_upto}"))),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_len = exact_upto.max(1);
    let mut recurrence = Vec::with_capacity(samples);
    for _ in 0..samples {
        let len = rng.gen_range(1..=max_len);
        let start = rng.gen_range(0..=w.len() - len);
        let v = Word::from(&w[start..start + len]);
        let bound = uniform_recurrence_bound(&w, &v)?;
        recurrence.push((v, bound));
    }
    let inconclusive = recurrence.iter().any(|(_, n)| n.is_none());
    let data = factor_data(&w, exact_upto);
    let duality = verify_duality(spec.alphabet(), &data)?;
    Ok(Case2Witness {
        horizon,
        exact_upto,
        tail,
        recurrence,
        inconclusive,
        antidictionary: duality.antidictionary,
        duality_verified: true,
        resonance_waived: waive_resonance && !spec.nonresonance_check(horizon).ok,
    })
}
