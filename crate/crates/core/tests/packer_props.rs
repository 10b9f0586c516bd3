mod common;

use barpack::exact::{lower_bound, solve, DEFAULT_BUDGET};
use barpack::generate::{gen_big, gen_big_nonincreasing, gen_general, gen_tight_family};
use barpack::model::{compact, is_feasible, length, Instance};
use barpack::packers::{pack_first_fit, pack_m, pack_mw, pack_with_forced_first_matching, realize};
use barpack::union::Chart;
use barpack::Error;
use common::check_run;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mixed_instances(count: usize, max_n: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=max_n);
            let d = [2, 10, 100, 1_000_000][i % 4];
            let s = rng.gen();
            match i % 3 {
                0 => gen_general(n, s, d),
                1 => gen_big(n, s, d),
                _ => gen_big_nonincreasing(n, s, d),
            }
            .unwrap()
        })
        .collect()
}

#[test]
fn matching_packers_keep_their_invariants() {
    for inst in mixed_instances(600, 20, 31) {
        for run in [pack_m(&inst).unwrap(), pack_mw(&inst).unwrap()] {
            check_run(&inst, &run).unwrap();
            let n = inst.len();
            assert!(run.length <= 2 * n - run.trace.first_matched());
            assert!(run.length >= lower_bound(&inst));
        }
    }
}

#[test]
fn packers_never_beat_the_optimum() {
    for inst in mixed_instances(200, 7, 32) {
        let opt = solve(&inst, DEFAULT_BUDGET).unwrap().opt_length;
        assert!(pack_m(&inst).unwrap().length >= opt);
        assert!(pack_mw(&inst).unwrap().length >= opt);
        let order: Vec<usize> = (0..inst.len()).collect();
        assert!(pack_first_fit(&inst, &order).unwrap().length >= opt);
    }
}

#[test]
fn first_fit_is_feasible_and_compact_for_any_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for inst in mixed_instances(300, 12, 34) {
        let mut order: Vec<usize> = (0..inst.len()).collect();
        order.shuffle(&mut rng);
        let run = pack_first_fit(&inst, &order).unwrap();
        assert!(is_feasible(&inst, &run.packing).unwrap());
        assert_eq!(compact(&inst, &run.packing).unwrap(), run.packing);
        assert_eq!(length(&inst, &run.packing).unwrap(), run.length);
        assert!(run.trace.rounds.is_empty());
    }
}

#[test]
fn packers_are_deterministic() {
    for inst in mixed_instances(100, 15, 35) {
        assert_eq!(pack_m(&inst).unwrap(), pack_m(&inst).unwrap());
        assert_eq!(pack_mw(&inst).unwrap(), pack_mw(&inst).unwrap());
    }
}

#[test]
fn big_nonincreasing_runs_of_m_see_no_two_unions() {
    for seed in 0..300 {
        let inst = gen_big_nonincreasing(1 + seed as usize % 12, seed, 1000).unwrap();
        let run = pack_m(&inst).unwrap();
        assert!(run.trace.rounds.iter().all(|r| r.two_union_edges == 0));
        // Only 1-unions, so every matched pair saves exactly one cell.
        assert_eq!(
            run.length,
            2 * inst.len() - run.trace.rounds.iter().map(|r| r.matched).sum::<usize>()
        );
    }
}

#[test]
fn forced_first_matching_on_tight_family() {
    for k in 1..=4 {
        let inst = gen_tight_family(k, 100).unwrap();
        let pairs: Vec<_> = (0..2 * k).map(|i| (i, 2 * k + i)).collect();
        let run = pack_with_forced_first_matching(&inst, &pairs).unwrap();
        check_run(&inst, &run).unwrap();
        assert_eq!(run.length, 6 * k);
        assert_eq!(run.trace.rounds.len(), 1);
    }
}

#[test]
fn forced_first_matching_rejects_bad_pairs() {
    let inst = gen_tight_family(1, 100).unwrap();
    assert!(matches!(
        pack_with_forced_first_matching(&inst, &[(0, 2), (0, 3)]),
        Err(Error::NotAMatching(_))
    ));
    assert!(matches!(
        pack_with_forced_first_matching(&inst, &[(0, 2)]),
        Err(Error::NotMaxWeight { got: 1, max: 2 })
    ));
    assert!(matches!(
        pack_with_forced_first_matching(&inst, &[(0, 9)]),
        Err(Error::NotAMatching(_))
    ));
}

#[test]
fn realize_needs_every_chart_once() {
    let inst = gen_general(3, 1, 10).unwrap();
    let charts = Chart::singletons(&inst);
    assert_eq!(realize(&inst, &charts[..2]), Err(Error::ProvenanceGap));
    let doubled = vec![charts[0].clone(), charts[0].clone(), charts[1].clone()];
    assert_eq!(realize(&inst, &doubled), Err(Error::ProvenanceGap));
    let p = realize(&inst, &charts).unwrap();
    assert_eq!(p.starts(), &[1, 3, 5]);
}

#[test]
fn generators_meet_their_postconditions() {
    for seed in 0..500 {
        let n = 1 + seed as usize % 9;
        let bni = gen_big_nonincreasing(n, seed, 1_000_000).unwrap();
        assert_eq!(bni.len(), n);
        assert!(bni.all_big() && bni.all_non_increasing());
        let big = gen_big(n, seed, 1_000_000).unwrap();
        assert!(big.all_big());
        let general = gen_general(n, seed, 1_000_000).unwrap();
        assert_eq!(general, gen_general(n, seed, 1_000_000).unwrap());
    }
}
