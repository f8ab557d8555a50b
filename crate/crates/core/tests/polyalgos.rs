use prefalloc::classify::Objective;
use prefalloc::exact::{all_profiles, brute_force};
use prefalloc::gen::{seeded_instance, RandomClass};
use prefalloc::polyalgos::{
    minmax_paths, minmax_two_matchings, minsum_directed_matchings, minsum_disjoint_paths,
    minsum_paths, minsum_two_star_forests, preassign_two_star_forests, rewrite_with_preassignment,
    solve_paths, PathMode,
};
use prefalloc::Instance;
use proptest::prelude::*;

fn oracle(inst: &Instance, objective: Objective) -> usize {
    brute_force(inst, objective).unwrap().value
}

fn check_witness(inst: &Instance, allocation: &prefalloc::Allocation, objective: Objective, value: usize) {
    assert!(inst.validate(allocation).is_empty());
    let profile = inst.profile(allocation).unwrap();
    let got = match objective {
        Objective::Sum => profile.sum(),
        Objective::Max => profile.max(),
    };
    assert_eq!(got, value);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matchings_match_oracle(seed: u64, items in 2usize..=8, agents in 1usize..=3) {
        let inst = seeded_instance(RandomClass::Matching, items, agents, seed).unwrap();
        let sol = minsum_directed_matchings(&inst).unwrap();
        prop_assert_eq!(sol.value, oracle(&inst, Objective::Sum));
        check_witness(&inst, &sol.allocation, Objective::Sum, sol.value);
    }

    #[test]
    fn paths_match_oracle(seed: u64, items in 1usize..=7, agents in 1usize..=3) {
        let inst = seeded_instance(RandomClass::Path, items, agents, seed).unwrap();
        let sum = minsum_paths(&inst).unwrap();
        let max = minmax_paths(&inst).unwrap();
        prop_assert_eq!(sum.value, oracle(&inst, Objective::Sum));
        prop_assert_eq!(max.value, oracle(&inst, Objective::Max));
        check_witness(&inst, &sum.allocation, Objective::Sum, sum.value);
        check_witness(&inst, &max.allocation, Objective::Max, max.value);
        prop_assert!(sum.allocation.iter().all(|(_, items)| items.len() <= 1));
    }

    #[test]
    fn truncation_keeps_optima(seed: u64, items in 1usize..=9, agents in 1usize..=3) {
        let inst = seeded_instance(RandomClass::Path, items, agents, seed).unwrap();
        for mode in [PathMode::Sum, PathMode::Max] {
            prop_assert_eq!(
                solve_paths(&inst, mode, true).unwrap().value,
                solve_paths(&inst, mode, false).unwrap().value
            );
        }
    }

    #[test]
    fn disjoint_paths_match_oracle(seed: u64, items in 1usize..=7, agents in 1usize..=3) {
        let inst = seeded_instance(RandomClass::DisjointPaths, items, agents, seed).unwrap();
        let sol = minsum_disjoint_paths(&inst).unwrap();
        prop_assert_eq!(sol.value, oracle(&inst, Objective::Sum));
        check_witness(&inst, &sol.allocation, Objective::Sum, sol.value);
    }

    #[test]
    fn two_matchings_profiles_are_exact(seed: u64, items in 2usize..=8) {
        let inst = seeded_instance(RandomClass::Matching, items, 2, seed).unwrap();
        let sol = minmax_two_matchings(&inst).unwrap();
        let expected: Vec<(usize, usize)> =
            all_profiles(&inst).unwrap().into_iter().map(|p| (p[0], p[1])).collect();
        let got: Vec<(usize, usize)> = sol.profiles.iter().collect();
        prop_assert_eq!(got, expected);
        let n = inst.num_items();
        prop_assert!(sol.profiles.len() <= (n + 1) * (n + 1));
        prop_assert_eq!(sol.value, oracle(&inst, Objective::Max));
        check_witness(&inst, &sol.allocation, Objective::Max, sol.value);
    }

    #[test]
    fn star_forests_match_oracle(seed: u64, items in 1usize..=8) {
        let inst = seeded_instance(RandomClass::StarForest, items, 2, seed).unwrap();
        let sol = minsum_two_star_forests(&inst).unwrap();
        prop_assert_eq!(sol.value, oracle(&inst, Objective::Sum));
        check_witness(&inst, &sol.allocation, Objective::Sum, sol.value);
    }

    #[test]
    fn star_forest_rewrite_never_hurts(seed: u64, items in 1usize..=8) {
        let inst = seeded_instance(RandomClass::StarForest, items, 2, seed).unwrap();
        let start = brute_force(&inst, Objective::Max).unwrap().witness;
        let once = rewrite_with_preassignment(&inst, &start).unwrap();
        prop_assert_eq!(&rewrite_with_preassignment(&inst, &once).unwrap(), &once);
        prop_assert!(inst.profile(&once).unwrap().sum() <= inst.profile(&start).unwrap().sum());
        let report = preassign_two_star_forests(&inst).unwrap();
        let empty = prefalloc::Allocation::empty_for(&inst);
        prop_assert_eq!(rewrite_with_preassignment(&inst, &empty).unwrap(), report.assigned);
    }
}
