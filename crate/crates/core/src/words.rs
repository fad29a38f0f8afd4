//! Alphabets, finite words and symbolic descriptions of infinite words.
//!
//! A [`Word`] stores letters as indices into an [`Alphabet`]; the alphabet
//! fixes the total order used for length-lex enumeration and carries the
//! symbol names needed to print a word.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rotation::CodingSpec;

/// A letter, stored as its rank in the alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(pub u8);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered set of distinct symbol names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    separator: Option<String>,
}

impl Alphabet {
    pub const MAX_SIZE: usize = 256;

    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::arg("alphabet must be nonempty"));
        }
        if names.len() > Self::MAX_SIZE {
            return Err(Error::arg(format!("alphabet has more than {} symbols", Self::MAX_SIZE)));
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if n.is_empty() {
                return Err(Error::arg("empty symbol name"));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::arg(format!("duplicate symbol {n:?}")));
            }
        }
        let multi = names.iter().any(|n| n.chars().count() != 1);
        Ok(Alphabet { names, separator: multi.then(|| " ".to_string()) })
    }

    /// One symbol per character, in the given order.
    pub fn from_chars(symbols: &str) -> Result<Self> {
        Self::new(symbols.chars().map(String::from))
    }

    /// Symbols that print with more than one character need a separator.
    pub fn with_separator(mut self, separator: impl Into<String>) -> Result<Self> {
        let sep = separator.into();
        if sep.is_empty() {
            return Err(Error::arg("separator must be nonempty"));
        }
        if self.names.iter().any(|n| n.contains(&sep)) {
            return Err(Error::arg("separator occurs inside a symbol name"));
        }
        self.separator = Some(sep);
        Ok(self)
    }

    /// The alphabet of the distinct characters of `text`, sorted.
    pub fn infer(text: &str) -> Result<Self> {
        let chars: BTreeSet<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        Self::new(chars.into_iter().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn separator(&self) -> Option<&str> {
        self.separator.as_deref()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len()).map(|i| Symbol(i as u8))
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.names.iter().position(|n| n == name).map(|i| Symbol(i as u8))
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.index()]
    }

    pub fn contains(&self, s: Symbol) -> bool {
        s.index() < self.names.len()
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        let tokens: Vec<&str> = match &self.separator {
            Some(sep) => text.split(sep.as_str()).filter(|t| !t.is_empty()).collect(),
            None => text.char_indices().map(|(i, c)| &text[i..i + c.len_utf8()]).collect(),
        };
        tokens
            .into_iter()
            .map(|t| self.symbol(t).ok_or_else(|| Error::arg(format!("symbol {t:?} not in alphabet"))))
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    pub fn render(&self, w: &[Symbol]) -> String {
        let parts = w.iter().map(|&s| self.name(s));
        match &self.separator {
            Some(sep) => parts.collect::<Vec<_>>().join(sep),
            None => parts.collect(),
        }
    }

    pub fn check(&self, w: &[Symbol]) -> Result<()> {
        match w.iter().find(|s| !self.contains(**s)) {
            Some(s) => Err(Error::arg(format!("symbol index {} outside alphabet", s.0))),
            None => Ok(()),
        }
    }
}

/// Finite word. Ordering is length-lex (shorter first, then lexicographic).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    pub fn concat(parts: &[&[Symbol]]) -> Word {
        Word(parts.iter().flat_map(|p| p.iter().copied()).collect())
    }

    /// `self` repeated `k` times.
    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    // Without an alphabet, fall back to a, b, c, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            let c = (b'a' + s.0 % 26) as char;
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The distinct factors of one fixed length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    pub n: usize,
    pub words: BTreeSet<Word>,
    /// Set when `n` exceeded the length of the source word.
    pub horizon_exceeded: bool,
}

impl FactorSet {
    pub fn new(n: usize, words: BTreeSet<Word>) -> Self {
        FactorSet { n, words, horizon_exceeded: false }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &[Symbol]) -> bool {
        self.words.contains(&Word::from(w))
    }
}

/// Distinct length-`n` contiguous subwords of `w`.
pub fn factors(w: &[Symbol], n: usize) -> FactorSet {
    if n > w.len() {
        return FactorSet { n, words: BTreeSet::new(), horizon_exceeded: true };
    }
    let words = w.windows(n.max(1)).take(w.len() + 1 - n);
    let set: BTreeSet<Word> =
        if n == 0 { std::iter::once(Word::empty()).collect() } else { words.map(Word::from).collect() };
    FactorSet::new(n, set)
}

/// All words of length exactly `n` over an alphabet of `size` letters, in lex order.
pub fn all_words(size: usize, n: usize) -> impl Iterator<Item = Word> {
    let total = (size as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let mut current = vec![Symbol(0); n];
    let mut emitted: u128 = 0;
    std::iter::from_fn(move || {
        if emitted >= total || size == 0 {
            return None;
        }
        let out = Word(current.clone());
        emitted += 1;
        for s in current.iter_mut().rev() {
            if s.index() + 1 < size {
                s.0 += 1;
                break;
            }
            *s = Symbol(0);
        }
        Some(out)
    })
}

/// All words of length at most `n`, in length-lex order.
pub fn words_up_to(size: usize, n: usize) -> impl Iterator<Item = Word> {
    (0..=n).flat_map(move |k| all_words(size, k))
}

/// True iff `w` is a prefix of `s^∞`, i.e. `w = s^k s1` with `s1` a prefix of `s`.
pub fn is_prefix_of_power(w: &[Symbol], s: &[Symbol]) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::arg("period word must be nonempty"));
    }
    Ok(w.iter().enumerate().all(|(i, x)| *x == s[i % s.len()]))
}

/// Solves `S·W = W·T` for `T` with `|T| = |S|`.
///
/// When a solution exists, `W` is a prefix of `S^∞`; this is asserted in
/// debug builds.
pub fn check_conjugacy_shape(s: &[Symbol], w: &[Symbol]) -> Result<Option<Word>> {
    if s.is_empty() {
        return Err(Error::arg("S must be nonempty"));
    }
    let sw = Word::concat(&[s, w]);
    if &sw[..w.len()] != w {
        return Ok(None);
    }
    let t = Word::from(&sw[w.len()..]);
    debug_assert!(is_prefix_of_power(w, s).unwrap_or(false));
    Ok(Some(t))
}

/// Shortest `r` with `w = r^k`.
pub fn primitive_root(w: &[Symbol]) -> Word {
    let n = w.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]) {
            return Word::from(&w[..p]);
        }
    }
    Word::from(w)
}

/// Lexicographically least rotation, and the shift that produces it.
pub fn least_rotation(w: &[Symbol]) -> (Word, usize) {
    if w.is_empty() {
        return (Word::empty(), 0);
    }
    let n = w.len();
    let best = (0..n)
        .min_by(|&a, &b| {
            let ra = w[a..].iter().chain(&w[..a]);
            let rb = w[b..].iter().chain(&w[..b]);
            ra.cmp(rb).then(a.cmp(&b))
        })
        .unwrap_or(0);
    (Word::concat(&[&w[best..], &w[..best]]), best)
}

/// Symbolic one- or two-sided infinite word.
///
/// Position 0 is the first symbol of `c` for the ray variants and the first
/// symbol of `u` for `Periodic`; negative positions run into the left ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BiInfiniteSpec {
    Periodic {
        u: Word,
    },
    /// `c · v^∞`
    RightRay {
        c: Word,
        v: Word,
    },
    /// `u^{∞/2} · c`
    LeftRay {
        u: Word,
        c: Word,
    },
    /// `u^{∞/2} · c · v^{∞/2}`
    TwoRay {
        u: Word,
        c: Word,
        v: Word,
    },
    RotationCoding(Box<CodingSpec>),
}

fn modulo(i: i64, m: usize) -> usize {
    i.rem_euclid(m as i64) as usize
}

impl BiInfiniteSpec {
    pub fn periodic(u: Word) -> Result<Self> {
        nonempty(&u, "u")?;
        Ok(BiInfiniteSpec::Periodic { u })
    }

    pub fn right_ray(c: Word, v: Word) -> Result<Self> {
        nonempty(&v, "v")?;
        Ok(BiInfiniteSpec::RightRay { c, v })
    }

    pub fn left_ray(u: Word, c: Word) -> Result<Self> {
        nonempty(&u, "u")?;
        Ok(BiInfiniteSpec::LeftRay { u, c })
    }

    pub fn two_ray(u: Word, c: Word, v: Word) -> Result<Self> {
        nonempty(&u, "u")?;
        nonempty(&v, "v")?;
        Ok(BiInfiniteSpec::TwoRay { u, c, v })
    }

    /// Symbol at an integer position, when that position is defined.
    pub fn at(&self, i: i64) -> Result<Symbol> {
        let out_of_range = || Error::Domain(format!("position {i}"));
        match self {
            BiInfiniteSpec::Periodic { u } => Ok(u[modulo(i, u.len())]),
            BiInfiniteSpec::RightRay { c, v } => {
                if i < 0 {
                    Err(out_of_range())
                } else {
                    Ok(right_part(c, v, i as usize))
                }
            }
            BiInfiniteSpec::LeftRay { u, c } => {
                if i >= c.len() as i64 {
                    Err(out_of_range())
                } else if i >= 0 {
                    Ok(c[i as usize])
                } else {
                    Ok(u[modulo(i, u.len())])
                }
            }
            BiInfiniteSpec::TwoRay { u, c, v } => {
                if i >= 0 {
                    Ok(right_part(c, v, i as usize))
                } else {
                    Ok(u[modulo(i, u.len())])
                }
            }
            BiInfiniteSpec::RotationCoding(spec) => spec.symbol_at_step(i),
        }
    }

    /// The length-`len` factor starting at `origin`.
    pub fn window(&self, origin: i64, len: usize) -> Result<Word> {
        if let BiInfiniteSpec::RotationCoding(spec) = self {
            return spec.window(origin, len);
        }
        (0..len as i64).map(|k| self.at(origin + k)).collect::<Result<Vec<_>>>().map(Word::from)
    }

    /// Smallest and largest defined positions (`None` = unbounded).
    pub fn domain(&self) -> (Option<i64>, Option<i64>) {
        match self {
            BiInfiniteSpec::RightRay { .. } => (Some(0), None),
            BiInfiniteSpec::LeftRay { c, .. } => (None, Some(c.len() as i64 - 1)),
            _ => (None, None),
        }
    }

    /// Exact set of length-`n` factors of the infinite word.
    pub fn factors(&self, n: usize) -> Result<FactorSet> {
        let (origin, len) = match self {
            BiInfiniteSpec::Periodic { u } => (0, n + u.len()),
            BiInfiniteSpec::RightRay { c, v } => (0, c.len() + n + v.len()),
            BiInfiniteSpec::LeftRay { u, c } => {
                let back = (n + u.len()) as i64;
                (-back, back as usize + c.len())
            }
            BiInfiniteSpec::TwoRay { u, c, v } => {
                let back = (n + u.len()) as i64;
                (-back, back as usize + c.len() + n + v.len())
            }
            BiInfiniteSpec::RotationCoding(spec) => return spec.factor_language(n),
        };
        // A one-sided ray shorter than `n` symbols still has length-n factors
        // on its infinite side, so the window always has at least `n` symbols.
        let w = self.window(origin, len.max(n))?;
        Ok(factors(&w, n))
    }

    /// Detects two-ray words that are in fact purely periodic.
    pub fn canonicalize(&self) -> Canonical {
        if let BiInfiniteSpec::TwoRay { u, c, v } = self {
            if let TwoRayShape::Periodic(root) = normalize_two_ray(u, c, v) {
                return Canonical { spec: BiInfiniteSpec::Periodic { u: root }, periodic_detected: true };
            }
        }
        Canonical { spec: self.clone(), periodic_detected: false }
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let r = |w: &Word| alphabet.render(w);
        match self {
            BiInfiniteSpec::Periodic { u } => json!({"kind": "periodic", "u": r(u)}),
            BiInfiniteSpec::RightRay { c, v } => json!({"kind": "right_ray", "c": r(c), "v": r(v)}),
            BiInfiniteSpec::LeftRay { u, c } => json!({"kind": "left_ray", "u": r(u), "c": r(c)}),
            BiInfiniteSpec::TwoRay { u, c, v } => {
                json!({"kind": "two_ray", "u": r(u), "c": r(c), "v": r(v)})
            }
            BiInfiniteSpec::RotationCoding(spec) => {
                let mut obj = spec.to_json();
                obj["kind"] = json!("rotation");
                obj
            }
        }
    }

    /// Parses the tagged JSON form. Without an explicit alphabet, the sorted
    /// characters of the word fields are used.
    pub fn from_json(value: &Value, alphabet: Option<&Alphabet>) -> Result<(Self, Alphabet)> {
        let kind = value.get("kind").and_then(Value::as_str).ok_or_else(|| Error::arg("missing \"kind\""))?;
        if kind == "rotation" {
            let spec = CodingSpec::from_json(value)?;
            let alph = spec.alphabet().clone();
            return Ok((BiInfiniteSpec::RotationCoding(Box::new(spec)), alph));
        }
        let field = |k: &str| -> Result<&str> {
            value.get(k).and_then(Value::as_str).ok_or_else(|| Error::arg(format!("missing field {k:?}")))
        };
        let keys: &[&str] = match kind {
            "periodic" => &["u"],
            "right_ray" => &["c", "v"],
            "left_ray" => &["u", "c"],
            "two_ray" => &["u", "c", "v"],
            other => return Err(Error::arg(format!("unknown kind {other:?}"))),
        };
        let texts = keys.iter().map(|k| field(k)).collect::<Result<Vec<_>>>()?;
        let alph = match alphabet {
            Some(a) => a.clone(),
            None => Alphabet::infer(&texts.concat())?,
        };
        let w = texts.iter().map(|t| alph.parse(t)).collect::<Result<Vec<_>>>()?;
        let mut w = w.into_iter();
        let mut next = || w.next().unwrap_or_default();
        let spec = match kind {
            "periodic" => Self::periodic(next())?,
            "right_ray" => Self::right_ray(next(), next())?,
            "left_ray" => Self::left_ray(next(), next())?,
            _ => Self::two_ray(next(), next(), next())?,
        };
        Ok((spec, alph))
    }
}

fn nonempty(w: &Word, name: &str) -> Result<()> {
    if w.is_empty() {
        Err(Error::arg(format!("{name} must be nonempty")))
    } else {
        Ok(())
    }
}

fn right_part(c: &[Symbol], v: &[Symbol], i: usize) -> Symbol {
    if i < c.len() {
        c[i]
    } else {
        v[(i - c.len()) % v.len()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub spec: BiInfiniteSpec,
    pub periodic_detected: bool,
}

/// Normal form of `u^{∞/2} c v^{∞/2}` up to shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoRayShape {
    /// The bi-infinite word is `r^∞` (least rotation of the primitive root).
    Periodic(Word),
    /// `u`, `v` primitive least rotations and `c` as short as possible.
    TwoRay { u: Word, c: Word, v: Word },
}

/// Normalizes `u^{∞/2} c v^{∞/2}`: ray periods become least rotations of
/// their primitive roots and the connector absorbs or releases symbols so
/// that it is the shortest one compatible with those periods.
pub fn normalize_two_ray(u: &[Symbol], c: &[Symbol], v: &[Symbol]) -> TwoRayShape {
    let u_root = primitive_root(u);
    let v_root = primitive_root(v);
    let (p, q) = (u_root.len() as i64, v_root.len() as i64);
    let clen = c.len() as i64;
    let at = |i: i64| -> Symbol {
        if i >= 0 {
            right_part(c, &v_root, i as usize)
        } else {
            u_root[modulo(i, u_root.len())]
        }
    };

    // End of the left periodic zone: first break of period p at or after 0.
    let Some(left_break) = (0..clen + p + q).find(|&i| at(i) != at(i - p)) else {
        return TwoRayShape::Periodic(least_rotation(&u_root).0);
    };
    // Start of the right periodic zone: last break of period q before |c|.
    let right_start = (-(p + q) - 1..clen).rev().find(|&i| at(i) != at(i + q)).map_or(-(p + q), |i| i + 1);

    let (u_star, _) = least_rotation(&u_root);
    let (v_star, _) = least_rotation(&v_root);
    let block_at = |start: i64, block: &[Symbol]| (0..block.len() as i64).all(|k| at(start + k) == block[k as usize]);

    let s0 = (clen..clen + q).find(|&s| block_at(s, &v_star)).expect("v-block phase");
    let r_aligned = right_start + modulo(s0 - right_start, q as usize) as i64;

    let e0 = (0..p).map(|j| -1 - j).find(|&e| block_at(e - p + 1, &u_star)).expect("u-block phase");
    let l_max = (left_break - 1).min(r_aligned - 1);
    let l_aligned = l_max - modulo(l_max - e0, p as usize) as i64;

    let c_star: Vec<Symbol> = (l_aligned + 1..r_aligned).map(at).collect();
    TwoRayShape::TwoRay { u: u_star, c: Word::from(c_star), v: v_star }
}

/// Normal form of `u^{∞/2} c`: `u` a primitive least rotation, `c` shortest.
pub fn normalize_left_ray(u: &[Symbol], c: &[Symbol]) -> (Word, Word) {
    let root = primitive_root(u);
    let p = root.len() as i64;
    let clen = c.len() as i64;
    let at = |i: i64| if i >= 0 { c[i as usize] } else { root[modulo(i, root.len())] };
    let left_break = (0..clen).find(|&i| at(i) != at(i - p)).unwrap_or(clen);
    let (u_star, _) = least_rotation(&root);
    let e0 = (0..p)
        .map(|j| -1 - j)
        .find(|&e| (0..p).all(|k| at(e - p + 1 + k) == u_star[k as usize]))
        .expect("u-block phase");
    let l_max = left_break - 1;
    let l_aligned = l_max - modulo(l_max - e0, p as usize) as i64;
    (u_star, Word::from((l_aligned + 1..clen).map(at).collect::<Vec<_>>()))
}

/// Normal form of `d v^{∞/2}`: `v` a primitive least rotation, `d` shortest.
pub fn normalize_right_ray(d: &[Symbol], v: &[Symbol]) -> (Word, Word) {
    let root = primitive_root(v);
    let q = root.len() as i64;
    let dlen = d.len() as i64;
    let at = |i: i64| right_part(d, &root, i as usize);
    let right_start = (0..dlen).rev().find(|&i| at(i) != at(i + q)).map_or(0, |i| i + 1);
    let (v_star, _) = least_rotation(&root);
    let s0 = (dlen..dlen + q).find(|&s| (0..q).all(|k| at(s + k) == v_star[k as usize])).expect("v-block phase");
    let r_aligned = right_start + modulo(s0 - right_start, q as usize) as i64;
    (Word::from((0..r_aligned).map(at).collect::<Vec<_>>()), v_star)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("abc").unwrap()
    }

    fn w(s: &str) -> Word {
        ab().parse(s).unwrap()
    }

    fn render_set(fs: &FactorSet) -> Vec<String> {
        fs.words.iter().map(|x| ab().render(x)).collect()
    }

    #[test]
    fn factors_examples() {
        assert_eq!(render_set(&factors(&w("abaab"), 2)), vec!["aa", "ab", "ba"]);
        let eps = factors(&w("abaab"), 0);
        assert_eq!(eps.len(), 1);
        assert!(eps.contains(&[]));
        assert_eq!(render_set(&factors(&w("aaaa"), 2)), vec!["aa"]);
        let over = factors(&w("ab"), 3);
        assert!(over.horizon_exceeded && over.is_empty());
    }

    #[test]
    fn window_examples() {
        let spec = BiInfiniteSpec::two_ray(w("ab"), w("c"), w("ba")).unwrap();
        assert_eq!(ab().render(&spec.window(-4, 7).unwrap()), "ababcba");
        let per = BiInfiniteSpec::periodic(w("ab")).unwrap();
        assert_eq!(ab().render(&per.window(0, 5).unwrap()), "ababa");
        let ray = BiInfiniteSpec::right_ray(w(""), w("a")).unwrap();
        assert_eq!(ab().render(&ray.window(0, 3).unwrap()), "aaa");
        assert!(matches!(ray.window(-1, 2), Err(Error::Domain(_))));
        let left = BiInfiniteSpec::left_ray(w("ab"), w("c")).unwrap();
        assert_eq!(ab().render(&left.window(-3, 4).unwrap()), "babc");
        assert!(left.window(0, 2).is_err());
    }

    #[test]
    fn empty_ray_period_rejected() {
        assert!(BiInfiniteSpec::two_ray(w(""), w("c"), w("a")).is_err());
        assert!(BiInfiniteSpec::periodic(w("")).is_err());
    }

    #[test]
    fn prefix_of_power_examples() {
        assert!(is_prefix_of_power(&w("ababa"), &w("ab")).unwrap());
        assert!(!is_prefix_of_power(&w("abba"), &w("ab")).unwrap());
        assert!(is_prefix_of_power(&w(""), &w("ab")).unwrap());
        assert!(is_prefix_of_power(&w("a"), &w("")).is_err());
    }

    #[test]
    fn conjugacy_examples() {
        assert_eq!(check_conjugacy_shape(&w("ab"), &w("ababa")).unwrap(), Some(w("ba")));
        assert_eq!(check_conjugacy_shape(&w("a"), &w("aaa")).unwrap(), Some(w("a")));
        assert_eq!(check_conjugacy_shape(&w("ab"), &w("ba")).unwrap(), None);
        // exhaustive over |T| = 2 for the last example
        for t in all_words(2, 2) {
            assert_ne!(Word::concat(&[&w("ab"), &w("ba")]), Word::concat(&[&w("ba"), &t]));
        }
    }

    #[test]
    fn length_lex_enumeration_count() {
        for s in 2..=4usize {
            for n in 0..=5usize {
                let count = words_up_to(s, n).count();
                assert_eq!(count, (s.pow(n as u32 + 1) - 1) / (s - 1));
            }
        }
        let listed: Vec<String> = words_up_to(2, 2).map(|x| ab().render(&x)).collect();
        assert_eq!(listed, vec!["", "a", "b", "aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn periodic_two_ray_is_detected() {
        let spec = BiInfiniteSpec::two_ray(w("ab"), w("ab"), w("ab")).unwrap();
        let canon = spec.canonicalize();
        assert!(canon.periodic_detected);
        assert_eq!(canon.spec, BiInfiniteSpec::Periodic { u: w("ab") });
        let shifted = BiInfiniteSpec::two_ray(w("ab"), w("a"), w("ba")).unwrap();
        assert!(shifted.canonicalize().periodic_detected);
        let real = BiInfiniteSpec::two_ray(w("aa"), w("ab"), w("bb")).unwrap();
        assert!(!real.canonicalize().periodic_detected);
    }

    #[test]
    fn two_ray_normal_form() {
        // a^{∞/2} ab b^{∞/2} is a^{∞/2} b^{∞/2}
        assert_eq!(
            normalize_two_ray(&w("aa"), &w("ab"), &w("bb")),
            TwoRayShape::TwoRay { u: w("a"), c: w(""), v: w("b") }
        );
        // ...abab·b·abab... keeps one b between the rays
        assert_eq!(
            normalize_two_ray(&w("ab"), &w(""), &w("ba")),
            TwoRayShape::TwoRay { u: w("ab"), c: w("b"), v: w("ab") }
        );
        assert_eq!(
            normalize_two_ray(&w("a"), &w(""), &w("ab")),
            TwoRayShape::TwoRay { u: w("a"), c: w(""), v: w("ab") }
        );
        // shifting the origin does not change the normal form
        assert_eq!(
            normalize_two_ray(&w("ba"), &w("bcab"), &w("ab")),
            normalize_two_ray(&w("ab"), &w("abcab"), &w("ab"))
        );
    }

    #[test]
    fn ray_normal_forms() {
        assert_eq!(normalize_left_ray(&w("ab"), &w("abc")), (w("ab"), w("c")));
        // ...baba = (ab)^{∞/2}·a
        assert_eq!(normalize_left_ray(&w("ba"), &w("")), (w("ab"), w("a")));
        assert_eq!(normalize_right_ray(&w("a"), &w("a")), (w(""), w("a")));
        // c·b·(ab)^∞ = c·(ba)^∞: the b cannot be absorbed into an ab-block
        assert_eq!(normalize_right_ray(&w("cb"), &w("ab")), (w("cb"), w("ab")));
        assert_eq!(normalize_right_ray(&w("cab"), &w("ab")), (w("c"), w("ab")));
    }

    #[test]
    fn exact_factor_sets_of_rays() {
        let spec = BiInfiniteSpec::two_ray(w("aa"), w("ab"), w("bb")).unwrap();
        for n in 1..6 {
            // a^i b^(n-i), i = 0..=n
            assert_eq!(spec.factors(n).unwrap().len(), n + 1);
        }
        let per = BiInfiniteSpec::periodic(w("abc")).unwrap();
        assert_eq!(per.factors(4).unwrap().len(), 3);
        let ray = BiInfiniteSpec::right_ray(w("c"), w("ab")).unwrap();
        assert_eq!(render_set(&ray.factors(2).unwrap()), vec!["ab", "ba", "ca"]);
    }

    #[test]
    fn json_round_trip() {
        let spec = BiInfiniteSpec::two_ray(w("ab"), w("c"), w("ba")).unwrap();
        let v = spec.to_json(&ab());
        assert_eq!(v, json!({"kind":"two_ray","u":"ab","c":"c","v":"ba"}));
        let (back, alph) = BiInfiniteSpec::from_json(&v, None).unwrap();
        assert_eq!(alph.render(&back.window(-4, 7).unwrap()), "ababcba");
    }

    #[test]
    fn multi_character_symbols() {
        let alph = Alphabet::new(["x1", "x2"]).unwrap().with_separator(",").unwrap();
        let word = alph.parse("x1,x2,x2").unwrap();
        assert_eq!(word.len(), 3);
        assert_eq!(alph.render(&word), "x1,x2,x2");
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }
}
