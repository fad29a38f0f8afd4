//! Brute-force reference implementations. They share no code with the main
//! algorithms and are only meant for small inputs.

use std::collections::HashSet;

use crate::words::Symbol;

/// Fraction `num/den` on the circle.
pub type Frac = (i128, i128);

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

/// Coding of `x0 + nα mod 1`; `cuts` lists `(left endpoint, symbol)` of the
/// half-open arcs, in any order.
pub fn rotation_coding(alpha: Frac, x0: Frac, cuts: &[(Frac, Symbol)], len: usize) -> Vec<Symbol> {
    let d = cuts.iter().fold(lcm(alpha.1, x0.1), |acc, (c, _)| lcm(acc, c.1));
    let scale = |f: Frac| (f.0 * (d / f.1)).rem_euclid(d);
    let mut arcs: Vec<(i128, Symbol)> = cuts.iter().map(|&(c, s)| (scale(c), s)).collect();
    arcs.sort();
    let (a, mut x) = (scale(alpha), scale(x0));
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        // the arc with the largest left endpoint <= x, wrapping to the last one
        let sym = arcs.iter().rev().find(|(e, _)| *e <= x).unwrap_or(arcs.last().expect("arcs")).1;
        out.push(sym);
        x = (x + a) % d;
    }
    out
}

/// Sturmian coding with `U_a = [0, α)`, `U_b = [α, 1)`.
pub fn sturmian(alpha: Frac, x0: Frac, len: usize) -> Vec<Symbol> {
    rotation_coding(alpha, x0, &[((0, 1), Symbol(0)), (alpha, Symbol(1))], len)
}

/// Number of distinct length-`n` blocks.
pub fn complexity(w: &[Symbol], n: usize) -> usize {
    if n > w.len() {
        return 0;
    }
    (0..=w.len() - n).map(|i| &w[i..i + n]).collect::<HashSet<_>>().len()
}

/// Largest difference in the count of one symbol between two blocks of
/// the same length `n <= n_max`, comparing every pair.
pub fn balance(w: &[Symbol], n_max: usize) -> usize {
    let mut worst = 0;
    for n in 1..=n_max.min(w.len()) {
        let blocks: HashSet<&[Symbol]> = (0..=w.len() - n).map(|i| &w[i..i + n]).collect();
        let symbols: HashSet<Symbol> = w.iter().copied().collect();
        for s in symbols {
            let counts: Vec<usize> = blocks.iter().map(|b| b.iter().filter(|x| **x == s).count()).collect();
            let (lo, hi) = (counts.iter().min().unwrap(), counts.iter().max().unwrap());
            worst = worst.max(hi - lo);
        }
    }
    worst
}

pub fn contains(hay: &[Symbol], needle: &[Symbol]) -> bool {
    if needle.len() > hay.len() {
        return false;
    }
    (0..=hay.len() - needle.len()).any(|i| &hay[i..i + needle.len()] == needle)
}

/// All words over `size` letters of length `n`.
pub fn words(size: usize, n: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..size).map(move |s| {
                    let mut x = w.clone();
                    x.push(Symbol(s as u8));
                    x
                })
            })
            .collect();
    }
    out
}

/// Words of length `n` avoiding every forbidden block.
pub fn normal_words(size: usize, forbidden: &[Vec<Symbol>], n: usize) -> Vec<Vec<Symbol>> {
    words(size, n).into_iter().filter(|w| !forbidden.iter().any(|f| contains(w, f))).collect()
}

/// Minimal absent words of length `<= m` of the blocks of `w`.
pub fn minimal_absent_words(size: usize, w: &[Symbol], m: usize) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    for n in 1..=m {
        for u in words(size, n) {
            if contains(w, &u) {
                continue;
            }
            let proper_present = (0..n).all(|i| (i + 1..=n).all(|j| (j - i == n) || contains(w, &u[i..j])));
            if proper_present {
                out.push(u);
            }
        }
    }
    out
}

/// `w[i] = s[i mod |s|]` for every position.
pub fn is_prefix_of_power(w: &[Symbol], s: &[Symbol]) -> bool {
    w.iter().enumerate().all(|(i, x)| *x == s[i % s.len()])
}

/// Searches every `T` of length `|S|` for `SW = WT`.
pub fn conjugacy_exists(s: &[Symbol], w: &[Symbol], size: usize) -> bool {
    let sw: Vec<Symbol> = s.iter().chain(w).copied().collect();
    words(size, s.len()).into_iter().any(|t| {
        let wt: Vec<Symbol> = w.iter().chain(&t).copied().collect();
        wt == sw
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(w: &[Symbol]) -> String {
        w.iter().map(|s| (b'a' + s.0) as char).collect()
    }

    #[test]
    fn reference_values() {
        assert_eq!(text(&sturmian((610, 987), (0, 1), 10)), "ababaababa");
        assert_eq!(text(&sturmian((610, 987), (233, 987), 10)), "abaababaab");
        let fib = sturmian((610, 987), (233, 987), 900);
        assert_eq!((1..=12).map(|n| complexity(&fib, n)).collect::<Vec<_>>(), (2..=13).collect::<Vec<_>>());
        assert_eq!(balance(&fib, 12), 1);
        let maw: Vec<String> = minimal_absent_words(2, &fib, 8).iter().map(|w| text(w)).collect();
        assert_eq!(maw, vec!["bb", "aaa", "babab", "aabaabaa"]);
    }

    #[test]
    fn normal_word_counts() {
        let ba = vec![vec![Symbol(1), Symbol(0)]];
        assert_eq!((0..6).map(|n| normal_words(2, &ba, n).len()).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5, 6]);
        let bb = vec![vec![Symbol(1), Symbol(1)]];
        assert_eq!((0..7).map(|n| normal_words(2, &bb, n).len()).collect::<Vec<_>>(), vec![1, 2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn conjugacy_by_search() {
        let ab = [Symbol(0), Symbol(1)];
        assert!(conjugacy_exists(&ab, &[Symbol(0), Symbol(1), Symbol(0)], 2));
        assert!(!conjugacy_exists(&ab, &[Symbol(1)], 2));
        assert!(is_prefix_of_power(&[Symbol(0), Symbol(1), Symbol(0)], &ab));
    }
}
