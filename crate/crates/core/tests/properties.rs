use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqcube_core::*;

fn seq(n: u32, p: &[usize]) -> PeriodicSequence {
    PeriodicSequence::from_support(n, p).unwrap()
}

fn word_seq(n: u32, w: u64) -> PeriodicSequence {
    PeriodicSequence::from_word(n, w).unwrap()
}

fn arb_sequence(n: u32) -> impl Strategy<Value = PeriodicSequence> {
    proptest::collection::vec(any::<bool>(), 1usize << n).prop_map(|bits| PeriodicSequence::from_bits(&bits).unwrap())
}

fn arb_sized() -> impl Strategy<Value = PeriodicSequence> {
    (0u32..=9).prop_flat_map(arb_sequence)
}

fn arb_pair() -> impl Strategy<Value = (PeriodicSequence, PeriodicSequence)> {
    (1u32..=8).prop_flat_map(|n| (arb_sequence(n), arb_sequence(n)))
}

proptest! {
    #[test]
    fn xor_is_a_group_operation((s, t) in arb_pair()) {
        let zero = PeriodicSequence::zero(s.exponent()).unwrap();
        prop_assert_eq!(s.xor(&t).unwrap(), t.xor(&s).unwrap());
        prop_assert_eq!(s.xor(&s).unwrap(), zero.clone());
        prop_assert_eq!(s.xor(&zero).unwrap(), s.clone());
        let st = s.xor(&t).unwrap();
        prop_assert_eq!(st.xor(&t).unwrap(), s.clone());
        prop_assert_eq!(st.hamming_weight() % 2, (s.hamming_weight() + t.hamming_weight()) % 2);
    }

    #[test]
    fn xor_is_associative(n in 1u32..=7, a in any::<u128>(), b in any::<u128>(), c in any::<u128>()) {
        let mk = |x: u128| {
            let bits: Vec<bool> = (0..1usize << n).map(|i| x >> i & 1 == 1).collect();
            PeriodicSequence::from_bits(&bits).unwrap()
        };
        let (a, b, c) = (mk(a), mk(b), mk(c));
        prop_assert_eq!(a.xor(&b).unwrap().xor(&c).unwrap(), a.xor(&b.xor(&c).unwrap()).unwrap());
    }

    #[test]
    fn text_formats_round_trip(s in arb_sized()) {
        let n = s.exponent();
        for format in [Format::Bits, Format::Positions, Format::Hex] {
            if format == Format::Hex && n < 2 {
                continue;
            }
            let text = s.serialize(format).unwrap();
            let back = PeriodicSequence::parse(&text, format, Some(n)).unwrap();
            prop_assert_eq!(&back, &s);
            prop_assert_eq!(back.serialize(format).unwrap(), text);
        }
    }

    #[test]
    fn halves_join_back(s in (1u32..=9).prop_flat_map(arb_sequence)) {
        let (left, right) = s.halves().unwrap();
        prop_assert_eq!(left.period() * 2, s.period());
        prop_assert_eq!(PeriodicSequence::join(&left, &right).unwrap(), s);
    }

    #[test]
    fn halving_matches_factor_multiplicity(s in arb_sized()) {
        prop_assert_eq!(games_chan_lc(&s), lc_by_factor_multiplicity(&s));
    }

    #[test]
    fn sum_of_sequences_with_distinct_complexity((s, t) in (4u32..=5).prop_flat_map(|n| (arb_sequence(n), arb_sequence(n)))) {
        let (ls, lt) = (games_chan_lc(&s), games_chan_lc(&t));
        let lst = games_chan_lc(&s.xor(&t).unwrap());
        if ls != lt {
            prop_assert_eq!(lst, ls.max(lt));
        } else if ls.value() > 0 {
            prop_assert!(lst < ls);
        }
    }

    #[test]
    fn decomposition_reconstructs(s in (1u32..=7).prop_flat_map(arb_sequence)) {
        let d = standard_decompose(&s);
        prop_assert_eq!(d.reconstruct(), s.clone());
        prop_assert_eq!(d.lone_vertex().is_some(), s.hamming_weight() % 2 == 1);
        let lcs: Vec<_> = d.cubes().iter().map(|c| c.linear_complexity()).collect();
        prop_assert!(lcs.windows(2).all(|w| w[0] < w[1]));
        if s.hamming_weight() % 2 == 0 && !s.is_zero() {
            prop_assert_eq!(lcs.last().copied(), Some(games_chan_lc(&s)));
        }
    }
}

#[test]
fn odd_weight_iff_full_complexity() {
    for n in 0..=4u32 {
        for w in 0u64..1 << (1u32 << n) {
            let s = word_seq(n, w);
            let full = games_chan_lc(&s).value() == 1 << n;
            assert_eq!(full, s.hamming_weight() % 2 == 1, "{w:#x} at n={n}");
        }
    }
}

#[test]
fn sum_rule_exhaustive_small_periods() {
    for n in 1..=3u32 {
        let all: Vec<PeriodicSequence> = (0u64..1 << (1u32 << n)).map(|w| word_seq(n, w)).collect();
        for s in &all {
            for t in &all {
                let (ls, lt) = (games_chan_lc(s), games_chan_lc(t));
                let lst = games_chan_lc(&s.xor(t).unwrap());
                if ls != lt {
                    assert_eq!(lst, ls.max(lt));
                } else if ls.value() > 0 {
                    assert!(lst < ls);
                }
            }
        }
    }
}

#[test]
fn largest_even_weight_complexity_is_one_less_than_period() {
    let best = (1u64..256)
        .map(|w| word_seq(3, w))
        .filter(|s| s.hamming_weight() % 2 == 0)
        .map(|s| games_chan_lc(&s).value())
        .max();
    assert_eq!(best, Some(7));
}

#[test]
fn multiword_sequences_agree_with_factor_multiplicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 7..=9u32 {
        for _ in 0..20 {
            let bits: Vec<bool> = (0..1usize << n).map(|_| rng.gen_bool(0.5)).collect();
            let s = PeriodicSequence::from_bits(&bits).unwrap();
            assert_eq!(games_chan_lc(&s), lc_by_factor_multiplicity(&s));
        }
    }
}

#[test]
fn recognition_inverts_materialisation() {
    for n in 1..=4u32 {
        for size in (0..=n).map(|m| 1usize << m) {
            seqcube_core::enumerate::for_each_combination(1 << n, size, |c| {
                let set = SupportSet::new(n, c.to_vec()).unwrap();
                if let Some(cube) = recognize_cube(&set) {
                    assert_eq!(materialize(&cube), seq(n, c));
                    let again = recognize_cube(&materialize(&cube).support()).unwrap();
                    assert_eq!(again.edges(), cube.edges());
                    assert_eq!(cube.linear_complexity(), games_chan_lc(&seq(n, c)));
                }
            });
        }
    }
}

#[test]
fn eight_element_configuration_has_complexity_period_minus_seven() {
    let mut checked = 0;
    for n in 4..=5u32 {
        let period = 1usize << n;
        for i in [0usize, 3, 5] {
            for a in 0..3 {
                for b in 0..3 {
                    for c in 0..3 {
                        for (u, v, w, y) in [(0, 0, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (1, 1, 1, 1)] {
                            let j = i + 2 * a + 1;
                            let k = i + 4 * c + 2;
                            let l = k + 2 * b + 1;
                            // l - j must be 2 mod 4 and positive
                            if l <= j || (l - j) % 4 != 2 {
                                continue;
                            }
                            let m = i + 4 + 8 * u;
                            let nn = j + 4 + 8 * v;
                            let p = k + 4 + 8 * w;
                            let q = l + 4 + 8 * y;
                            let mut pos: Vec<usize> = [i, j, k, l, m, nn, p, q].iter().map(|x| x % period).collect();
                            pos.sort_unstable();
                            pos.dedup();
                            if pos.len() < 8 {
                                continue;
                            }
                            let lc = games_chan_lc(&seq(n, &pos)).value();
                            assert_eq!(lc, period as u64 - 7, "n={n} {pos:?}");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 50, "only {checked} configurations built");
}

#[test]
fn error_complexity_is_monotone_and_reaches_zero() {
    let budget = SearchBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut samples: Vec<PeriodicSequence> = (0u64..256).map(|w| word_seq(3, w)).collect();
    samples.extend((0..40).map(|_| word_seq(4, rng.gen::<u64>() & 0xffff)));
    for s in samples {
        let k_max = s.hamming_weight().min(8);
        let values = klc_profile(&s, k_max, &budget).unwrap().values;
        assert!(values.windows(2).all(|w| w[1] <= w[0]), "{:?}", s.support().positions());
        if s.hamming_weight() <= 8 {
            assert_eq!(values[s.hamming_weight()].value(), 0);
        }
        let spectrum = Spectrum::from_profile(&values);
        let drops: Vec<usize> = (1..values.len()).filter(|&k| values[k] < values[k - 1]).collect();
        assert_eq!(spectrum.decrease_ks(), drops);
    }
}

#[test]
fn single_cube_spectrum_has_one_drop() {
    let budget = SearchBudget::default();
    let n = 4;
    for size in [2usize, 4, 8] {
        seqcube_core::enumerate::for_each_combination(1 << n, size, |c| {
            if let Some(cube) = recognize_cube(&SupportSet::new(n, c.to_vec()).unwrap()) {
                let spectrum = celcs(&materialize(&cube), &budget).unwrap().as_pairs();
                assert_eq!(spectrum, vec![(0, cube.linear_complexity().value()), (size, 0)], "{c:?}");
            }
        });
    }
}

#[test]
fn cube_counts_partition_minimal_weight_sequences() {
    // Sequences of minimal weight for their complexity are exactly the single
    // cubes, so the per-complexity totals must match the cube counts.
    for n in 3..=4u32 {
        let mut minimal: BTreeMap<u64, u64> = BTreeMap::new();
        for w in 1u64..1 << (1u32 << n) {
            let s = word_seq(n, w);
            let lc = games_chan_lc(&s).value();
            let drop = (1u64 << n) - lc;
            if drop > 0 && s.hamming_weight() == 1 << drop.count_ones() {
                *minimal.entry(lc).or_default() += 1;
            }
        }
        for (lc, observed) in minimal {
            let drop = (1u64 << n) - lc;
            let edges: Vec<u32> = (0..n).filter(|b| drop >> b & 1 == 1).collect();
            assert_eq!(count_cubes(n, &edges).unwrap(), BigCount::from_u64(observed), "n={n} lc={lc}");
        }
    }
}

#[test]
fn single_cube_counts_are_powers_of_two() {
    for n in 1..=12u32 {
        for mask in 1u32..1 << n.min(8) {
            let edges: Vec<u32> = (0..n.min(8)).filter(|b| mask >> b & 1 == 1).collect();
            assert!(count_cubes(n, &edges).unwrap().is_power_of_two());
        }
    }
}

#[test]
fn parallel_reductions_ignore_thread_count() {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
            let budget = SearchBudget::default();
            let profile = klc_profile(&seq(5, &[0, 2, 3, 9, 14, 20, 21, 30]), 5, &budget).unwrap();
            let scan = conjecture_scan(
                &ScanOptions { n: 3, filter: ScanFilter::AllEvenWeight, max_sequence_weight: None },
                &budget,
            )
            .unwrap();
            let count = verify_count_by_enumeration(&CountingSpec::new(4, vec![vec![0], vec![2]]).unwrap(), &budget).unwrap();
            (profile, scan, count)
        })
    };
    let reference = run(1);
    for threads in [2, 3, 8] {
        assert_eq!(run(threads), reference, "{threads} threads");
    }
}
