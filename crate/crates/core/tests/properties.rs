use std::collections::BTreeSet;

use growthlab::algebra::{antidictionary, normal_words, Presentation};
use growthlab::complexity::{complexity_profile_with_exact_bound, detect_affine_tail};
use growthlab::oracle;
use growthlab::rauzy::{graph_stats, rauzy_graph, DEFAULT_CYCLE_CAP};
use growthlab::rotation::{golden_convergent, min_growth_system, sturmian, sturmian_spec, Angle};
use growthlab::structure::decompose;
use growthlab::words::{
    all_words, check_conjugacy_shape, factors, is_prefix_of_power, normalize_two_ray, words_up_to, Alphabet,
    BiInfiniteSpec, Symbol, TwoRayShape, Word,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn word(size: u8, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec((0..size).prop_map(Symbol), len)
}

fn start(r: i64, s: i64) -> Angle {
    Angle::from_ratio(r, s).unwrap()
}

fn small(a: &Angle) -> (i128, i128) {
    (a.numer().to_i128().unwrap(), a.denom().to_i128().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn periodic_window_shift(u in word(3, 1..=5), origin in -50i64..50, len in 0usize..30) {
        let p = u.len() as i64;
        let spec = BiInfiniteSpec::periodic(Word::from(u)).unwrap();
        prop_assert_eq!(spec.window(origin, len).unwrap(), spec.window(origin + p, len).unwrap());
        prop_assert_eq!(spec.window(origin, len).unwrap(), spec.window(origin - 3 * p, len).unwrap());
    }

    #[test]
    fn conjugacy_shape_implies_prefix_of_power(s in word(3, 1..=5), k in 0usize..4, cut in 0usize..6, noise in word(3, 1..=10)) {
        let cut = cut.min(s.len());
        let built: Vec<Symbol> = s.iter().copied().cycle().take(k * s.len() + cut).collect();
        for w in [built, noise] {
            let shape = check_conjugacy_shape(&s, &w).unwrap();
            if let Some(t) = &shape {
                prop_assert!(is_prefix_of_power(&w, &s).unwrap());
                prop_assert_eq!([&s[..], &w[..]].concat(), [&w[..], &t[..]].concat());
            }
            prop_assert_eq!(shape.is_some(), oracle::is_prefix_of_power(&w, &s));
        }
    }

    #[test]
    fn rauzy_bookkeeping(w in word(3, 1..=60), k in 1usize..8) {
        prop_assume!(k < w.len());
        let (fk, fk1) = (factors(&w, k), factors(&w, k + 1));
        let g = rauzy_graph(&fk, &fk1).unwrap();
        prop_assert_eq!(g.vertices.len(), oracle::complexity(&w, k));
        prop_assert_eq!(g.edges.len(), oracle::complexity(&w, k + 1));
    }

    /// An exact length-n factor with two right extensions forces T(n+1) > T(n).
    #[test]
    fn right_special_factors_force_growth(r in 1i64..37, bp in prop::sample::select(vec![vec![0i64, 1, 2], vec![0, 2, 5], vec![0, 1]])) {
        let alpha = golden_convergent(900);
        let names = ["a", "b", "c"];
        let spec = min_growth_system(&alpha, &bp, &names[..bp.len()], &start(r, 37)).unwrap();
        let w = spec.mechanical_word(1500, true).unwrap();
        let exact = spec.certified_exact_horizon(&w, 30).unwrap();
        let p = complexity_profile_with_exact_bound(&w, exact, exact);
        for n in 1..exact {
            let longer = factors(&w, n + 1);
            let special = factors(&w, n).words.iter().any(|u| {
                longer.words.iter().filter(|x| x.starts_with(u)).count() >= 2
            });
            prop_assert!(p.small(n + 1) >= p.small(n));
            if special {
                prop_assert!(p.small(n + 1) > p.small(n));
            }
        }
    }

    /// Sturmian k-graphs: a single right fork of out-degree 2, and
    /// |E| - |V| = 1 once the complexity is n + 1.
    #[test]
    fn sturmian_graphs_have_one_fork(min_den in 900u64..5000, r in 1i64..11) {
        let alpha = golden_convergent(min_den);
        prop_assume!(alpha.denom().to_i64().unwrap() % 11 != 0);
        let w = sturmian(&alpha, &start(r, 11), 800, false).unwrap();
        for k in 1..=10 {
            let g = rauzy_graph(&factors(&w, k), &factors(&w, k + 1)).unwrap();
            let s = graph_stats(&g, DEFAULT_CYCLE_CAP);
            prop_assert_eq!(s.right_forks.len(), 1);
            let fork = g.vertices.iter().position(|v| v == &s.right_forks[0]).unwrap();
            prop_assert_eq!(g.out_degree(fork), 2);
            prop_assert!((0..g.vertices.len()).all(|v| v == fork || g.out_degree(v) == 1));
            prop_assert_eq!(s.n_edges - s.n_vertices, 1);
        }
    }

    /// Two successive golden convergents code the same word for as long as
    /// the orbit stays farther from both cut points than the accumulated
    /// drift between the two rotations.
    #[test]
    fn successive_convergents_agree(min_den in 50u64..3000, r in 1i64..50, s in 2i64..50) {
        prop_assume!(r < s);
        let a1 = golden_convergent(min_den);
        let a2 = golden_convergent(a1.denom().to_u64().unwrap() + 1);
        let ((p1, q1), (p2, q2)) = (small(&a1), small(&a2));
        let (r, s) = (i128::from(r), i128::from(s));
        // positions on the grid of denominator q1 * s
        let d = q1 * s;
        let (x0, step, cut) = (r * q1, p1 * s, p1 * s);
        let mut horizon = 0usize;
        let mut margin = i128::MAX;
        let mut x = x0 % d;
        // drift per step is 1/(q1 q2); agreement needs n·drift < margin/d
        while horizon < 3000 {
            let to_zero = x.min(d - x);
            let to_cut = (x - cut).rem_euclid(d).min((cut - x).rem_euclid(d));
            margin = margin.min(to_zero).min(to_cut);
            if (horizon as i128 + 1) * d >= margin * q1 * q2 {
                break;
            }
            horizon += 1;
            x = (x + step) % d;
        }
        let w1 = oracle::sturmian((p1, q1), (r, s), horizon);
        let w2 = oracle::sturmian((p2, q2), (r, s), horizon);
        prop_assert_eq!(w1, w2);
    }

    #[test]
    fn two_ray_round_trip(u in word(3, 1..=3), c in word(3, 0..=3), v in word(3, 1..=3)) {
        let want = match normalize_two_ray(&u, &c, &v) {
            TwoRayShape::TwoRay { u, c, v } => (u, c, v),
            TwoRayShape::Periodic(_) => return Ok(()),
        };
        // equal ray periods need the obstructions x u^k y for every k
        prop_assume!(want.0 != want.2);
        let abc = Alphabet::from_chars("abc").unwrap();
        let spec = BiInfiniteSpec::two_ray(Word::from(u), Word::from(c), Word::from(v)).unwrap();
        let mut found = None;
        for m in 4..=20 {
            let data: Vec<_> = (1..=m).map(|n| spec.factors(n).unwrap()).collect();
            let p = Presentation::new(abc.clone(), antidictionary(&abc, &data).unwrap().words).unwrap();
            let exact = (1..=m + 8).all(|n| {
                let got: BTreeSet<Word> = normal_words(&p, n).unwrap().into_iter().collect();
                got == spec.factors(n).unwrap().words
            });
            if exact {
                found = Some(p);
                break;
            }
        }
        let p = found.expect("finitely many obstructions define the language");
        prop_assert_eq!(decompose(&p).unwrap().two_ray, Some(want));
    }
}

#[test]
fn enumeration_counts() {
    for s in 2..=4usize {
        for n in 0..=6u32 {
            let expected = (s.pow(n + 1) - 1) / (s - 1);
            assert_eq!(words_up_to(s, n as usize).count(), expected);
            assert_eq!(all_words(s, n as usize).count(), s.pow(n));
        }
    }
}

#[test]
fn sturmian_profiles_match_search() {
    let alpha = golden_convergent(900);
    for r in 1..7 {
        let w = sturmian(&alpha, &start(r, 7), 600, true).unwrap();
        let spec = sturmian_spec(&alpha, &start(r, 7)).unwrap();
        let exact = spec.certified_exact_horizon(&w, 30).unwrap();
        let p = complexity_profile_with_exact_bound(&w, exact, exact);
        let tail = detect_affine_tail(&p).unwrap();
        assert_eq!((tail.slope, tail.offset), (1, 1));
        for n in 0..=exact {
            assert_eq!(p.small(n) as usize, oracle::complexity(&w, n));
        }
    }
}
