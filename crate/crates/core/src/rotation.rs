//! Circle rotations `x ↦ x + α (mod 1)` and their symbolic codings.
//!
//! Everything is exact: angles are arbitrary-precision rationals and orbit
//! membership is decided on an integer grid with the common denominator of
//! `α`, the start point and all arc endpoints. An irrational rotation is
//! represented by a rational convergent whose denominator exceeds the
//! horizon of interest.
//!
//! Arcs are half-open `[l, r)`, so a partition into arcs is total and every
//! orbit point gets exactly one symbol.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::words::{factors, Alphabet, FactorSet, Symbol, Word};

/// A point of the unit circle, kept in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(BigRational);

impl Angle {
    pub fn new(value: BigRational) -> Self {
        let floor = value.floor();
        Angle(value - floor)
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::arg("zero denominator"));
        }
        Ok(Angle::new(BigRational::new(num.into(), den.into())))
    }

    pub fn zero() -> Self {
        Angle(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// `self + other (mod 1)`.
    pub fn add(&self, other: &Angle) -> Angle {
        Angle::new(&self.0 + &other.0)
    }

    /// `self + k·other (mod 1)`, any integer `k`.
    pub fn add_multiple(&self, other: &Angle, k: i64) -> Angle {
        Angle::new(&self.0 + &other.0 * BigRational::from_integer(k.into()))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::arg(format!("not a rational number: {s:?}"));
        let value = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        Ok(Angle::new(value))
    }
}

/// `{x0 + n·α}`, exactly.
pub fn orbit_point(alpha: &Angle, x0: &Angle, n: i64) -> Angle {
    x0.add_multiple(alpha, n)
}

/// Half-open arc from `start` counterclockwise to `end`; `start == end` is
/// the whole circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub start: Angle,
    pub end: Angle,
}

impl Arc {
    pub fn new(start: Angle, end: Angle) -> Self {
        Arc { start, end }
    }

    pub fn measure(&self) -> BigRational {
        if self.start == self.end {
            BigRational::one()
        } else {
            Angle::new(&self.end.0 - &self.start.0).0
        }
    }

    pub fn contains(&self, x: &Angle) -> bool {
        Angle::new(&x.0 - &self.start.0).0 < self.measure()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArcUnion {
    pub arcs: Vec<Arc>,
}

impl ArcUnion {
    pub fn new(arcs: Vec<Arc>) -> Self {
        ArcUnion { arcs }
    }

    pub fn measure(&self) -> BigRational {
        self.arcs.iter().map(Arc::measure).fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn contains(&self, x: &Angle) -> bool {
        self.arcs.iter().any(|a| a.contains(x))
    }
}

/// Integer picture of a coding: every angle is `k / denom` for `0 <= k < denom`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Grid {
    denom: BigUint,
    alpha: BigUint,
    x0: BigUint,
    /// Cell starts in increasing order, each with the symbol of `[start, next)`.
    cells: Vec<(BigUint, Symbol)>,
    endpoints: HashSet<BigUint>,
}

impl Grid {
    fn lift(&self, a: &Angle) -> BigUint {
        let scaled = a.value() * BigRational::from_integer(BigInt::from(self.denom.clone()));
        debug_assert!(scaled.is_integer());
        scaled.to_integer().to_biguint().expect("angles are nonnegative")
    }

    fn symbol_of(&self, x: &BigUint) -> Symbol {
        match self.cells.partition_point(|(s, _)| s <= x) {
            0 => self.cells.last().expect("nonempty partition").1,
            i => self.cells[i - 1].1,
        }
    }

    fn step(&self, x: &mut BigUint) {
        *x += &self.alpha;
        if *x >= self.denom {
            *x -= &self.denom;
        }
    }

    fn point(&self, start: &BigUint, n: i64) -> BigUint {
        let d = BigInt::from(self.denom.clone());
        let v = BigInt::from(start.clone()) + BigInt::from(self.alpha.clone()) * BigInt::from(n);
        v.mod_floor(&d).to_biguint().expect("mod_floor is nonnegative")
    }

    fn code_from(&self, start: &BigUint, len: usize) -> Vec<Symbol> {
        let mut x = start.clone();
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push(self.symbol_of(&x));
            self.step(&mut x);
        }
        out
    }
}

/// A rotation `(α, x0)` with one arc union per symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodingSpec {
    alpha: Angle,
    x0: Angle,
    alphabet: Alphabet,
    partition: Vec<ArcUnion>,
    grid: Grid,
}

/// Result of scanning an orbit for endpoint hits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonresonanceCertificate {
    pub horizon: usize,
    pub ok: bool,
    pub first_violation: Option<usize>,
}

impl CodingSpec {
    /// `partition[i]` is the arc union coded by the `i`-th alphabet symbol.
    pub fn new(alpha: Angle, x0: Angle, alphabet: Alphabet, partition: Vec<ArcUnion>) -> Result<Self> {
        if partition.len() != alphabet.len() {
            return Err(Error::arg("partition must give one arc union per symbol"));
        }
        let all_arcs: Vec<(Symbol, &Arc)> =
            partition.iter().enumerate().flat_map(|(i, u)| u.arcs.iter().map(move |a| (Symbol(i as u8), a))).collect();
        let total = all_arcs.iter().fold(BigRational::zero(), |acc, (_, a)| acc + a.measure());
        if total != BigRational::one() {
            return Err(Error::DegeneratePartition(format!("arcs cover total measure {total}, expected 1")));
        }
        for (i, (_, a)) in all_arcs.iter().enumerate() {
            for (_, b) in &all_arcs[i + 1..] {
                if a.contains(&b.start) || b.contains(&a.start) {
                    return Err(Error::DegeneratePartition(format!(
                        "arcs [{}, {}) and [{}, {}) overlap",
                        a.start, a.end, b.start, b.end
                    )));
                }
            }
        }

        let mut denom = BigInt::one();
        for a in [&alpha, &x0].into_iter().chain(all_arcs.iter().flat_map(|(_, a)| [&a.start, &a.end])) {
            denom = denom.lcm(a.denom());
        }
        let denom = denom.to_biguint().expect("positive denominator");
        let mut grid =
            Grid { denom, alpha: BigUint::zero(), x0: BigUint::zero(), cells: Vec::new(), endpoints: HashSet::new() };
        grid.alpha = grid.lift(&alpha);
        grid.x0 = grid.lift(&x0);
        let mut cells: Vec<(BigUint, Symbol)> = all_arcs.iter().map(|(s, a)| (grid.lift(&a.start), *s)).collect();
        cells.sort();
        grid.endpoints = all_arcs.iter().flat_map(|(_, a)| [grid.lift(&a.start), grid.lift(&a.end)]).collect();
        grid.cells = cells;

        Ok(CodingSpec { alpha, x0, alphabet, partition, grid })
    }

    pub fn alpha(&self) -> &Angle {
        &self.alpha
    }

    pub fn x0(&self) -> &Angle {
        &self.x0
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn partition(&self) -> &[ArcUnion] {
        &self.partition
    }

    pub fn with_start(&self, x0: Angle) -> Result<Self> {
        CodingSpec::new(self.alpha.clone(), x0, self.alphabet.clone(), self.partition.clone())
    }

    pub fn with_alpha(&self, alpha: Angle) -> Result<Self> {
        CodingSpec::new(alpha, self.x0.clone(), self.alphabet.clone(), self.partition.clone())
    }

    /// Symbol whose arc union contains `x`.
    pub fn symbol_of(&self, x: &Angle) -> Symbol {
        let hit = self.partition.iter().position(|u| u.contains(x)).expect("partition covers the circle");
        Symbol(hit as u8)
    }

    /// Symbol coding `{x0 + i·α}` for any integer `i`.
    pub fn symbol_at_step(&self, i: i64) -> Result<Symbol> {
        Ok(self.grid.symbol_of(&self.grid.point(&self.grid.x0, i)))
    }

    /// Coding of steps `origin .. origin + len`, without a resonance check.
    pub fn window(&self, origin: i64, len: usize) -> Result<Word> {
        let start = self.grid.point(&self.grid.x0, origin);
        Ok(Word::from(self.grid.code_from(&start, len)))
    }

    pub fn nonresonance_check(&self, horizon: usize) -> NonresonanceCertificate {
        let mut x = self.grid.x0.clone();
        for n in 0..horizon {
            if self.grid.endpoints.contains(&x) {
                return NonresonanceCertificate { horizon, ok: false, first_violation: Some(n) };
            }
            self.grid.step(&mut x);
        }
        NonresonanceCertificate { horizon, ok: true, first_violation: None }
    }

    /// Coding prefix of length `len`. Fails on an endpoint hit unless
    /// `waive_resonance` is set.
    pub fn mechanical_word(&self, len: usize, waive_resonance: bool) -> Result<Word> {
        if !waive_resonance {
            if let Some(step) = self.nonresonance_check(len).first_violation {
                return Err(Error::Resonance { step });
            }
        }
        self.window(0, len)
    }

    /// Length-`n` words coded by some point of the circle.
    ///
    /// The circle is cut at `e − i·α` for every endpoint `e` and `0 <= i < n`;
    /// the coding is constant on each resulting half-open cell, so one
    /// representative per cell gives the whole factor language.
    pub fn factor_language(&self, n: usize) -> Result<FactorSet> {
        if n == 0 {
            return Ok(FactorSet::new(0, std::iter::once(Word::empty()).collect()));
        }
        let mut cuts = BTreeSet::new();
        for e in &self.grid.endpoints {
            for i in 0..n as i64 {
                cuts.insert(self.grid.point(e, -i));
            }
        }
        let words = cuts.iter().map(|p| Word::from(self.grid.code_from(p, n))).collect();
        Ok(FactorSet::new(n, words))
    }

    /// Largest `n <= n_max` such that `prefix` already contains every factor of
    /// every length `1..=n` of the coding.
    pub fn certified_exact_horizon(&self, prefix: &[Symbol], n_max: usize) -> Result<usize> {
        for n in 1..=n_max.min(prefix.len()) {
            if factors(prefix, n).words != self.factor_language(n)?.words {
                return Ok(n - 1);
            }
        }
        Ok(n_max.min(prefix.len()))
    }

    pub fn to_json(&self) -> Value {
        let partition: serde_json::Map<String, Value> = self
            .partition
            .iter()
            .enumerate()
            .map(|(i, u)| {
                let arcs = u.arcs.iter().map(|a| json!([a.start.to_string(), a.end.to_string()])).collect();
                (self.alphabet.name(Symbol(i as u8)).to_string(), Value::Array(arcs))
            })
            .collect();
        json!({
            "alpha": self.alpha.to_string(),
            "x0": self.x0.to_string(),
            "partition": partition,
            "arc_convention": "half-open [l, r)",
        })
    }

    /// Reads `{"alpha": "p/q", "x0": "r/s", "partition": {"a": [["l", "r"], ...], ...}}`.
    /// Symbols are ordered by name.
    pub fn from_json(value: &Value) -> Result<Self> {
        let angle = |key: &str| -> Result<Angle> {
            value.get(key).and_then(Value::as_str).ok_or_else(|| Error::arg(format!("missing {key:?}")))?.parse()
        };
        let alpha = angle("alpha")?;
        let x0 = angle("x0")?;
        let parts = value
            .get("partition")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::arg("missing \"partition\" object"))?;
        let mut by_name = BTreeMap::new();
        for (name, arcs) in parts {
            let arcs = arcs.as_array().ok_or_else(|| Error::arg(format!("arcs of {name:?} must be a list")))?;
            let mut list = Vec::new();
            for arc in arcs {
                let pair = arc.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::arg("arc must be [l, r]"))?;
                let end = |v: &Value| -> Result<Angle> {
                    v.as_str().ok_or_else(|| Error::arg("arc endpoints are strings"))?.parse()
                };
                list.push(Arc::new(end(&pair[0])?, end(&pair[1])?));
            }
            by_name.insert(name.clone(), ArcUnion::new(list));
        }
        let alphabet = Alphabet::new(by_name.keys().cloned())?;
        CodingSpec::new(alpha, x0, alphabet, by_name.into_values().collect())
    }
}

/// Binary coding with `U_a = [0, α)` and `U_b = [α, 1)`.
pub fn sturmian_spec(alpha: &Angle, x0: &Angle) -> Result<CodingSpec> {
    if alpha.value().is_zero() {
        return Err(Error::DegeneratePartition("alpha = 0 leaves U_a empty".into()));
    }
    let alphabet = Alphabet::from_chars("ab")?;
    let a = ArcUnion::new(vec![Arc::new(Angle::zero(), alpha.clone())]);
    let b = ArcUnion::new(vec![Arc::new(alpha.clone(), Angle::zero())]);
    CodingSpec::new(alpha.clone(), x0.clone(), alphabet, vec![a, b])
}

pub fn sturmian(alpha: &Angle, x0: &Angle, len: usize, waive_resonance: bool) -> Result<Word> {
    sturmian_spec(alpha, x0)?.mechanical_word(len, waive_resonance)
}

/// Partition of the circle cut at the points `{n_j·α}`.
///
/// Arcs are numbered by their left endpoint in increasing order on `[0, 1)`;
/// `assignment[i]` names the symbol of arc `i`. Arcs with the same symbol are
/// merged into one arc union.
pub fn min_growth_system(alpha: &Angle, breakpoints: &[i64], assignment: &[&str], x0: &Angle) -> Result<CodingSpec> {
    if breakpoints.is_empty() {
        return Err(Error::arg("at least one breakpoint is needed"));
    }
    let mut points: Vec<Angle> = breakpoints.iter().map(|&n| orbit_point(alpha, &Angle::zero(), n)).collect();
    points.sort();
    if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DegeneratePartition(format!("breakpoint images coincide at {}", w[0])));
    }
    if assignment.len() != points.len() {
        return Err(Error::arg(format!(
            "{} arcs need {} symbols, got {}",
            points.len(),
            points.len(),
            assignment.len()
        )));
    }
    let mut names: Vec<&str> = Vec::new();
    for s in assignment {
        if !names.contains(s) {
            names.push(s);
        }
    }
    names.sort();
    let alphabet = Alphabet::new(names.iter().copied())?;
    let mut partition = vec![ArcUnion::default(); alphabet.len()];
    for (i, start) in points.iter().enumerate() {
        let end = points[(i + 1) % points.len()].clone();
        let sym = alphabet.symbol(assignment[i]).expect("assigned symbol is in the alphabet");
        partition[sym.index()].arcs.push(Arc::new(start.clone(), end));
    }
    CodingSpec::new(alpha.clone(), x0.clone(), alphabet, partition)
}

/// Convergent `[a0; a1, ..., ak]` of a continued fraction.
pub fn convergent(partial_quotients: &[u64]) -> Result<BigRational> {
    let (last, rest) = partial_quotients.split_last().ok_or_else(|| Error::arg("empty continued fraction"))?;
    let mut value = BigRational::from_integer(BigInt::from(*last));
    for &a in rest.iter().rev() {
        if value.is_zero() {
            return Err(Error::arg("zero partial quotient"));
        }
        value = BigRational::from_integer(BigInt::from(a)) + value.recip();
    }
    Ok(value)
}

/// `F_{k-1} / F_k`, the convergents of `(√5 − 1)/2`, for the first `F_k >= min_denominator`.
pub fn golden_convergent(min_denominator: u64) -> Angle {
    let (mut p, mut q) = (BigInt::one(), BigInt::one());
    while q < BigInt::from(min_denominator) || q.is_one() {
        let next = &p + &q;
        p = std::mem::replace(&mut q, next);
    }
    Angle::new(BigRational::new(p, q))
}

/// A start point `1/s` with `s` the least prime not dividing the denominator
/// of `alpha`. Orbit points of such a start never sit on the `1/q` grid, so
/// codings whose endpoints lie on that grid are nonresonant at every horizon.
pub fn default_start(alpha: &Angle) -> Angle {
    let q = alpha.denom().abs();
    let s = (2u64..)
        .filter(|s| (2..*s).take_while(|d| d * d <= *s).all(|d| s % d != 0))
        .find(|s| !(&q % BigInt::from(*s)).is_zero())
        .expect("some prime does not divide q");
    Angle::from_ratio(1, s as i64).expect("nonzero denominator")
}

/// Denominator of `alpha` as a machine integer, when it fits.
pub fn denominator_u64(alpha: &Angle) -> Option<u64> {
    alpha.denom().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ang(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn text(spec: &CodingSpec, w: &Word) -> String {
        spec.alphabet().render(w)
    }

    #[test]
    fn orbit_point_examples() {
        assert_eq!(orbit_point(&ang("1/3"), &ang("0"), 4), ang("1/3"));
        for n in [0, 1, 7, 100] {
            assert_eq!(orbit_point(&ang("0"), &ang("1/2"), n), ang("1/2"));
        }
        assert_eq!(orbit_point(&ang("377/987"), &ang("0"), 2), ang("754/987"));
        assert_eq!(orbit_point(&ang("1/3"), &ang("0"), -1), ang("2/3"));
    }

    #[test]
    fn angle_parsing() {
        assert_eq!(ang("3/2"), ang("1/2"));
        assert_eq!(ang("-1/4"), ang("3/4"));
        assert_eq!(ang("610/987").to_string(), "610/987");
        assert!("1/0".parse::<Angle>().is_err());
        assert!("x".parse::<Angle>().is_err());
    }

    #[test]
    fn mechanical_word_examples() {
        let alpha = ang("610/987");
        // x0 = 0 is an endpoint, so the coding needs a waiver
        let spec = sturmian_spec(&alpha, &ang("0")).unwrap();
        assert_eq!(spec.mechanical_word(10, false), Err(Error::Resonance { step: 0 }));
        assert_eq!(text(&spec, &spec.mechanical_word(10, true).unwrap()), "ababaababa");
        // {2α} codes the Fibonacci word
        let fib = sturmian_spec(&alpha, &ang("233/987")).unwrap();
        assert_eq!(text(&fib, &fib.mechanical_word(10, false).unwrap()), "abaababaab");

        let half = sturmian_spec(&ang("1/2"), &ang("0")).unwrap();
        assert_eq!(text(&half, &half.mechanical_word(4, true).unwrap()), "abab");

        let alph = Alphabet::from_chars("a").unwrap();
        let whole = ArcUnion::new(vec![Arc::new(ang("0"), ang("0"))]);
        let single = CodingSpec::new(ang("610/987"), ang("1/3"), alph, vec![whole]).unwrap();
        assert_eq!(text(&single, &single.mechanical_word(5, true).unwrap()), "aaaaa");
    }

    #[test]
    fn sturmian_examples() {
        let w = sturmian(&ang("1/987"), &ang("0"), 10, true).unwrap();
        assert_eq!(w.to_string(), "abbbbbbbbb");
        assert_eq!(sturmian(&ang("610/987"), &ang("0"), 1, true).unwrap().to_string(), "a");
        assert!(sturmian(&ang("0"), &ang("0"), 1, true).is_err());
    }

    #[test]
    fn nonresonance_examples() {
        let spec = sturmian_spec(&ang("610/987"), &ang("1/7")).unwrap();
        // 1/7 = 141/987 sits on the grid of α, the orbit reaches 0 at n = 846
        let cert = spec.nonresonance_check(900);
        assert_eq!((cert.ok, cert.first_violation), (false, Some(846)));
        assert!(spec.nonresonance_check(846).ok);

        let half = sturmian_spec(&ang("1/2"), &ang("0")).unwrap().with_start(ang("0")).unwrap();
        let cert = half.nonresonance_check(2);
        assert!(!cert.ok);
        assert_eq!(cert.first_violation, Some(0));
        let off = sturmian_spec(&ang("1/2"), &ang("0")).unwrap();
        // U_a = [0, 1/2): starting at 0 hits the endpoint immediately; from 1/2 too
        assert_eq!(off.with_start(ang("1/2")).unwrap().nonresonance_check(2).first_violation, Some(0));
        assert!(spec.nonresonance_check(0).ok);
    }

    #[test]
    fn nonresonance_hits_split_point_after_one_step() {
        // partition [0, 1/2) | [1/2, 1); from 1/4 with α = 1/4 the orbit reaches 1/2 at n = 1
        let spec = sturmian_spec(&ang("1/2"), &ang("1/4")).unwrap().with_alpha(ang("1/4")).unwrap();
        let cert = spec.nonresonance_check(2);
        assert_eq!((cert.ok, cert.first_violation), (false, Some(1)));
    }

    #[test]
    fn min_growth_partitions() {
        let alpha = ang("610/987");
        let x0 = default_start(&alpha);
        let two = min_growth_system(&alpha, &[0, 1], &["a", "b"], &x0).unwrap();
        assert_eq!(two, sturmian_spec(&alpha, &x0).unwrap());
        assert!(matches!(min_growth_system(&alpha, &[0, 0], &["a", "b"], &x0), Err(Error::DegeneratePartition(_))));
        let three = min_growth_system(&alpha, &[0, 1, 2], &["a", "b", "c"], &x0).unwrap();
        // points 0 < 233/987 < 610/987
        assert_eq!(three.partition()[1].arcs[0].start, ang("233/987"));
        assert_eq!(three.alphabet().len(), 3);
    }

    #[test]
    fn invalid_partitions_are_rejected() {
        let alph = Alphabet::from_chars("ab").unwrap();
        let a = ArcUnion::new(vec![Arc::new(ang("0"), ang("1/2"))]);
        let b = ArcUnion::new(vec![Arc::new(ang("1/4"), ang("3/4"))]);
        assert!(CodingSpec::new(ang("1/3"), ang("0"), alph.clone(), vec![a.clone(), b]).is_err());
        let gap = ArcUnion::new(vec![Arc::new(ang("1/2"), ang("9/10"))]);
        assert!(CodingSpec::new(ang("1/3"), ang("0"), alph, vec![a, gap]).is_err());
    }

    #[test]
    fn default_start_is_coprime() {
        assert_eq!(default_start(&ang("610/987")), ang("1/2"));
        assert_eq!(default_start(&ang("1/6")), ang("1/5"));
        let spec = sturmian_spec(&ang("610/987"), &default_start(&ang("610/987"))).unwrap();
        assert!(spec.nonresonance_check(5000).ok);
    }

    #[test]
    fn golden_convergents() {
        assert_eq!(golden_convergent(900), ang("610/987"));
        assert_eq!(golden_convergent(988), ang("987/1597"));
        let c = convergent(&[0, 1, 1, 1, 1]).unwrap();
        assert_eq!(c, ang("3/5").value().clone());
        assert!(convergent(&[]).is_err());
    }

    #[test]
    fn factor_language_matches_full_period() {
        let alpha = ang("610/987");
        let spec = sturmian_spec(&alpha, &default_start(&alpha)).unwrap();
        let period = spec.mechanical_word(987 + 12, false).unwrap();
        for n in 0..12 {
            let lang = spec.factor_language(n).unwrap();
            assert_eq!(lang.len(), n + 1);
            assert_eq!(lang.words, factors(&period, n).words);
        }
    }

    #[test]
    fn negative_steps_run_the_rotation_backwards() {
        let spec = sturmian_spec(&ang("610/987"), &ang("233/987")).unwrap();
        let w = spec.window(-2, 4).unwrap();
        let from_zero = sturmian_spec(&ang("610/987"), &ang("0")).unwrap().mechanical_word(4, true).unwrap();
        assert_eq!(w, from_zero);
    }

    #[test]
    fn json_round_trip() {
        let spec = sturmian_spec(&ang("610/987"), &ang("1/7")).unwrap();
        let v = spec.to_json();
        assert_eq!(v["alpha"], "610/987");
        assert_eq!(v["partition"]["a"], json!([["0", "610/987"]]));
        assert_eq!(CodingSpec::from_json(&v).unwrap(), spec);
    }
}
