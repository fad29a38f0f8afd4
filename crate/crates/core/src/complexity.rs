//! Growth profiles, affine tails, balance and uniform recurrence.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::words::{factors, Alphabet, Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    /// Factor complexity of a word.
    TWord,
    /// Normal words of each length in an algebra.
    TAlgebra,
    /// Normal words of length at most n (unit included).
    VAlgebra,
    /// Good (two-sided infinitely extendable) words of each length.
    TRl,
}

impl ProfileKind {
    pub fn tag(self) -> &'static str {
        match self {
            ProfileKind::TWord => "T_word",
            ProfileKind::TAlgebra => "T_algebra",
            ProfileKind::VAlgebra => "V_algebra",
            ProfileKind::TRl => "T_RL",
        }
    }
}

/// `n ↦ count` for `0 <= n <= horizon`, with a per-point exactness flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthProfile {
    pub kind: ProfileKind,
    pub values: Vec<BigUint>,
    pub exact: Vec<bool>,
    pub notes: Vec<String>,
}

impl GrowthProfile {
    pub fn new(kind: ProfileKind, values: Vec<BigUint>, exact: Vec<bool>) -> Self {
        assert_eq!(values.len(), exact.len(), "one exactness flag per value");
        GrowthProfile { kind, values, exact, notes: Vec::new() }
    }

    /// All points exact.
    pub fn exact_from(kind: ProfileKind, values: Vec<BigUint>) -> Self {
        let exact = vec![true; values.len()];
        Self::new(kind, values, exact)
    }

    pub fn from_u64(kind: ProfileKind, values: &[u64]) -> Self {
        Self::exact_from(kind, values.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn horizon(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn value(&self, n: usize) -> &BigUint {
        &self.values[n]
    }

    /// Value as `u64`; panics on overflow, meant for tests and small profiles.
    pub fn small(&self, n: usize) -> u64 {
        self.values[n].to_u64().expect("count fits in u64")
    }

    pub fn is_exact(&self, n: usize) -> bool {
        self.exact.get(n).copied().unwrap_or(false)
    }

    /// `(n, value)` for every exact point with `n >= 1`.
    pub fn exact_points(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.values.iter().enumerate().skip(1).filter(|(n, _)| self.exact[*n])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.tag(),
            "horizon": self.horizon(),
            "values": self.values.iter().map(count_json).collect::<Vec<_>>(),
            "exact": self.exact,
        })
    }

    /// Two columns, `n` and the count.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (n, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{n}\t{v}");
        }
        out
    }
}

/// Counts print as JSON numbers while they fit in `u64`, as decimal strings after.
pub fn count_json(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

/// `T(w, n)` for `n = 0..=n_max`.
///
/// A count from a finite prefix is marked exact only for `2n <= |w|`; use
/// [`complexity_profile_with_exact_bound`] when the generator certifies more.
pub fn complexity_profile(w: &[Symbol], n_max: usize) -> GrowthProfile {
    complexity_profile_with_exact_bound(w, n_max, w.len() / 2)
}

/// Like [`complexity_profile`] but with exactness certified up to `exact_upto`.
pub fn complexity_profile_with_exact_bound(w: &[Symbol], n_max: usize, exact_upto: usize) -> GrowthProfile {
    let horizon = n_max.min(w.len());
    let values = (0..=horizon).map(|n| BigUint::from(factors(w, n).len())).collect();
    let exact = (0..=horizon).map(|n| n <= exact_upto).collect();
    let mut p = GrowthProfile::new(ProfileKind::TWord, values, exact);
    if n_max > w.len() {
        p.notes.push(format!("horizon clipped from {n_max} to {}", w.len()));
    }
    p
}

/// `values(n) = slope·n + offset` for every exact `n >= onset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineTail {
    pub onset: usize,
    pub slope: i64,
    pub offset: i64,
}

impl AffineTail {
    pub fn to_json(&self) -> Value {
        json!({"N": self.onset, "slope": self.slope, "K": self.offset})
    }
}

/// Outcome of fitting a tail, with the slope of the last two exact points
/// kept for diagnostics when no admissible line fits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailFit {
    pub tail: Option<AffineTail>,
    pub fitted_slope: Option<i64>,
}

pub const MIN_TAIL_POINTS: usize = 3;

/// Least onset `N` and line with slope 0 or 1 through all exact points `n >= N`.
///
/// `n = 0` is ignored (every profile has `T(0) = 1`).
pub fn detect_affine_tail(p: &GrowthProfile) -> Option<AffineTail> {
    fit_tail(p).tail
}

pub fn fit_tail(p: &GrowthProfile) -> TailFit {
    let points: Vec<(i64, i128)> = p.exact_points().map_while(|(n, v)| v.to_i128().map(|v| (n as i64, v))).collect();
    // stop at the first value too large for i128: such a profile has no affine tail anyway
    let truncated = points.len() < p.exact_points().count();
    let fitted_slope = match points.as_slice() {
        [.., (n1, v1), (n2, v2)] if !truncated => i64::try_from((v2 - v1) / i128::from(n2 - n1)).ok(),
        _ => None,
    };
    if truncated || points.len() < MIN_TAIL_POINTS {
        return TailFit { tail: None, fitted_slope };
    }
    let &(n_last, v_last) = points.last().expect("nonempty");
    for slope in [0i64, 1] {
        let offset = v_last - i128::from(slope) * i128::from(n_last);
        let support =
            points.iter().rev().take_while(|(n, v)| *v == i128::from(slope) * i128::from(*n) + offset).count();
        if support >= MIN_TAIL_POINTS {
            let onset = points[points.len() - support].0 as usize;
            let offset = i64::try_from(offset).ok();
            if let Some(offset) = offset {
                return TailFit { tail: Some(AffineTail { onset, slope, offset }), fitted_slope };
            }
        }
    }
    TailFit { tail: None, fitted_slope }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    /// Largest `| |u|_a − |v|_a |` over symbols `a` and equal-length factors `u`, `v`.
    pub max_discrepancy: usize,
    pub per_symbol: BTreeMap<Symbol, usize>,
    /// Factors realizing the maximum: `u` has the most occurrences, `v` the fewest.
    pub witness: Option<(Word, Word)>,
    pub horizon: usize,
}

impl BalanceReport {
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let per_symbol: serde_json::Map<String, Value> =
            self.per_symbol.iter().map(|(s, d)| (alphabet.name(*s).to_string(), json!(d))).collect();
        json!({
            "max_discrepancy": self.max_discrepancy,
            "per_symbol": per_symbol,
            "witness": self.witness.as_ref().map(|(u, v)| json!([alphabet.render(u), alphabet.render(v)])),
            "horizon": self.horizon,
        })
    }
}

/// Per length and symbol, the spread between the largest and smallest symbol
/// count among the factors of that length.
pub fn balance_check(w: &[Symbol], n_max: usize) -> BalanceReport {
    let horizon = n_max.min(w.len());
    let mut symbols: Vec<Symbol> = w.to_vec();
    symbols.sort();
    symbols.dedup();
    let mut per_symbol: BTreeMap<Symbol, usize> = symbols.iter().map(|s| (*s, 0)).collect();
    let mut best: Option<(usize, Word, Word)> = None;

    for n in 1..=horizon {
        for &a in &symbols {
            let mut count = w[..n].iter().filter(|&&x| x == a).count();
            let (mut hi, mut lo) = ((count, 0usize), (count, 0usize));
            for start in 1..=w.len() - n {
                count = count + usize::from(w[start + n - 1] == a) - usize::from(w[start - 1] == a);
                if count > hi.0 {
                    hi = (count, start);
                }
                if count < lo.0 {
                    lo = (count, start);
                }
            }
            let d = hi.0 - lo.0;
            let entry = per_symbol.get_mut(&a).expect("symbol seen");
            *entry = (*entry).max(d);
            if best.as_ref().is_none_or(|(bd, _, _)| d > *bd) {
                best = Some((d, Word::from(&w[hi.1..hi.1 + n]), Word::from(&w[lo.1..lo.1 + n])));
            }
        }
    }
    match best {
        Some((d, u, v)) => BalanceReport { max_discrepancy: d, per_symbol, witness: Some((u, v)), horizon },
        None => BalanceReport { max_discrepancy: 0, per_symbol, witness: None, horizon },
    }
}

/// Least `N` such that every length-`N` window of `w` contains `v`.
///
/// `None` means the prefix is too short to witness a bound: an answer `N`
/// is reported only when `2N <= |w|`, i.e. the prefix holds two disjoint
/// windows of that length.
pub fn uniform_recurrence_bound(w: &[Symbol], v: &[Symbol]) -> Result<Option<usize>> {
    let occurrences: Vec<usize> = if v.is_empty() {
        (0..=w.len()).collect()
    } else {
        w.windows(v.len()).enumerate().filter(|(_, x)| *x == v).map(|(i, _)| i).collect()
    };
    if occurrences.is_empty() {
        return Err(Error::arg("v is not a factor of w"));
    }
    // reach[s]: shortest window starting at s that contains v
    let mut reach = vec![usize::MAX; w.len() + 1];
    let mut next = occurrences.iter().rev().peekable();
    let mut upcoming: Option<usize> = None;
    for s in (0..=w.len()).rev() {
        while let Some(&&p) = next.peek() {
            if p >= s {
                upcoming = Some(p);
                next.next();
            } else {
                break;
            }
        }
        if let Some(p) = upcoming {
            reach[s] = p + v.len() - s;
        }
    }
    // prefix maxima of reach
    let mut worst = Vec::with_capacity(reach.len());
    let mut m = 0usize;
    for r in &reach {
        m = m.max(*r);
        worst.push(m);
    }
    let bound = (v.len().max(1)..=w.len()).find(|&n| worst[w.len() - n] <= n);
    Ok(bound.filter(|&n| 2 * n <= w.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn w(s: &str) -> Word {
        Alphabet::from_chars("ab").unwrap().parse(s).unwrap()
    }

    fn fib(len: usize) -> Word {
        let mut s = String::from("a");
        while s.len() < len {
            s = s.chars().map(|c| if c == 'a' { "ab" } else { "a" }).collect();
        }
        w(&s[..len])
    }

    fn counts(p: &GrowthProfile) -> Vec<u64> {
        (0..=p.horizon()).map(|n| p.small(n)).collect()
    }

    #[test]
    fn profile_examples() {
        let p = complexity_profile(&fib(200), 10);
        assert_eq!(counts(&p), (0..=10).map(|n| n + 1).collect::<Vec<_>>());
        let per = complexity_profile(&w(&"ab".repeat(50)), 5);
        assert_eq!(&counts(&per)[1..], &[2, 2, 2, 2, 2]);
        let p = complexity_profile(&w("abaab"), 3);
        assert_eq!(&counts(&p)[1..], &[2, 3, 3]);
        // 2n <= 5 only for n <= 2
        assert_eq!(p.exact, vec![true, true, true, false]);
    }

    #[test]
    fn clipped_horizon_is_noted() {
        let p = complexity_profile(&w("abab"), 9);
        assert_eq!(p.horizon(), 4);
        assert_eq!(p.notes.len(), 1);
    }

    #[test]
    fn affine_tail_examples() {
        let line = GrowthProfile::from_u64(ProfileKind::TWord, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(detect_affine_tail(&line), Some(AffineTail { onset: 1, slope: 1, offset: 1 }));
        let flat = GrowthProfile::from_u64(ProfileKind::TWord, &[1, 2, 2, 2, 2]);
        assert_eq!(detect_affine_tail(&flat), Some(AffineTail { onset: 1, slope: 0, offset: 2 }));
        let expo = GrowthProfile::from_u64(ProfileKind::TWord, &[1, 2, 4, 8, 16]);
        assert_eq!(detect_affine_tail(&expo), None);
        assert_eq!(fit_tail(&expo).fitted_slope, Some(8));
    }

    #[test]
    fn affine_tail_onset_and_support() {
        let p = GrowthProfile::from_u64(ProfileKind::TWord, &[1, 3, 5, 7, 9, 10, 11, 12]);
        assert_eq!(detect_affine_tail(&p), Some(AffineTail { onset: 4, slope: 1, offset: 5 }));
        // only two points on the final line
        let p = GrowthProfile::from_u64(ProfileKind::TWord, &[1, 3, 5, 7, 9, 10]);
        assert_eq!(detect_affine_tail(&p), None);
        // inexact points are skipped
        let mut p = GrowthProfile::from_u64(ProfileKind::TWord, &[1, 2, 9, 4, 5]);
        p.exact[2] = false;
        assert_eq!(detect_affine_tail(&p), Some(AffineTail { onset: 1, slope: 1, offset: 1 }));
        let short = GrowthProfile::from_u64(ProfileKind::TWord, &[1, 2, 3]);
        assert_eq!(detect_affine_tail(&short), None);
    }

    #[test]
    fn balance_examples() {
        let sturm = fib(500);
        assert_eq!(balance_check(&sturm, 20).max_discrepancy, 1);
        assert_eq!(balance_check(&w(&"a".repeat(50)), 10).max_discrepancy, 0);
        let r = balance_check(&w("aabb"), 2);
        assert_eq!(r.max_discrepancy, 2);
        assert_eq!(r.witness, Some((w("aa"), w("bb"))));
    }

    #[test]
    fn uniform_recurrence_examples() {
        assert_eq!(uniform_recurrence_bound(&fib(1000), &w("aba")).unwrap(), Some(5));
        assert_eq!(uniform_recurrence_bound(&w(&"ab".repeat(50)), &w("ab")).unwrap(), Some(3));
        let once = w(&format!("ab{}", "b".repeat(30)));
        assert_eq!(uniform_recurrence_bound(&once, &w("a")).unwrap(), None);
        assert!(uniform_recurrence_bound(&w("aaaa"), &w("b")).is_err());
    }

    #[test]
    fn json_and_tsv() {
        let p = GrowthProfile::from_u64(ProfileKind::TWord, &[1, 2, 3]);
        assert_eq!(p.to_json(), json!({"kind":"T_word","horizon":2,"values":[1,2,3],"exact":[true,true,true]}));
        assert_eq!(p.to_tsv(), "0\t1\n1\t2\n2\t3\n");
        let big = GrowthProfile::exact_from(ProfileKind::TAlgebra, vec![BigUint::from(1u8) << 70]);
        assert_eq!(big.to_json()["values"][0], json!("1180591620717411303424"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use std::collections::BTreeSet;

        fn word_strategy() -> impl Strategy<Value = Vec<Symbol>> {
            proptest::collection::vec((0u8..3).prop_map(Symbol), 0..60)
        }

        proptest! {
            #[test]
            fn profile_matches_naive_count(w in word_strategy(), n_max in 0usize..12) {
                let p = complexity_profile(&w, n_max);
                for n in 0..=p.horizon() {
                    let mut naive = BTreeSet::new();
                    for i in 0..=w.len() - n {
                        naive.insert(w[i..i + n].to_vec());
                    }
                    prop_assert_eq!(p.small(n), naive.len() as u64);
                }
            }

            #[test]
            fn prefixes_of_longer_factors_are_factors(w in word_strategy(), n in 0usize..10) {
                prop_assume!(n < w.len());
                let short = factors(&w, n);
                for f in factors(&w, n + 1).words {
                    prop_assert!(short.contains(&f[..n]));
                }
            }

            #[test]
            fn tail_is_stable_under_extension(onset in 1usize..6, slope in 0i64..2, offset in 0i64..5, extra in 0usize..8) {
                let len = onset + 4;
                let mut values: Vec<u64> = (0..len).map(|n| if n < onset { 0 } else { (slope * n as i64 + offset) as u64 }).collect();
                values[0] = 1;
                let base = detect_affine_tail(&GrowthProfile::from_u64(ProfileKind::TWord, &values));
                for n in len..len + extra {
                    values.push((slope * n as i64 + offset) as u64);
                }
                let extended = detect_affine_tail(&GrowthProfile::from_u64(ProfileKind::TWord, &values));
                prop_assert_eq!(base, extended);
            }
        }
    }
}
