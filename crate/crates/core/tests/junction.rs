use prefalloc::classify::{junctions, Objective};
use prefalloc::exact::brute_force;
use prefalloc::gen::{seeded_instance, RandomClass};
use prefalloc::junction::{
    build_path_catalog, check_feasibility, enumerate_cases, minsum_junction_fpt, solve_flow,
};
use prefalloc::polyalgos::{minsum_directed_matchings, minsum_disjoint_paths};
use proptest::prelude::*;

fn class_strategy() -> impl Strategy<Value = RandomClass> {
    prop_oneof![
        Just(RandomClass::Dag),
        Just(RandomClass::OutTree),
        Just(RandomClass::OutStar),
        Just(RandomClass::StarForest),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn matches_oracle(
        class in class_strategy(),
        seed: u64,
        items in 1usize..=7,
        agents in 1usize..=3,
    ) {
        let inst = seeded_instance(class, items, agents, seed).unwrap();
        prop_assume!(junctions(&inst).gamma <= 4);
        let sol = minsum_junction_fpt(&inst).unwrap();
        prop_assert_eq!(sol.value, brute_force(&inst, Objective::Sum).unwrap().value);
        prop_assert!(inst.validate(&sol.allocation).is_empty());
        prop_assert_eq!(inst.profile(&sol.allocation).unwrap().sum(), sol.value);
    }

    #[test]
    fn agrees_with_junction_free_solvers(seed: u64, items in 2usize..=9, agents in 1usize..=4) {
        let matchings = seeded_instance(RandomClass::Matching, items, agents, seed).unwrap();
        prop_assert_eq!(
            minsum_junction_fpt(&matchings).unwrap().value,
            minsum_directed_matchings(&matchings).unwrap().value
        );
        let paths = seeded_instance(RandomClass::DisjointPaths, items, agents, seed).unwrap();
        prop_assert_eq!(
            minsum_junction_fpt(&paths).unwrap().value,
            minsum_disjoint_paths(&paths).unwrap().value
        );
    }

    #[test]
    fn flows_respect_path_sets(seed: u64, items in 1usize..=7, agents in 1usize..=3) {
        let inst = seeded_instance(RandomClass::Dag, items, agents, seed).unwrap();
        prop_assume!(junctions(&inst).gamma <= 3);
        for ca in enumerate_cases(&inst, 3).unwrap() {
            if check_feasibility(&inst, &ca).is_err() {
                continue;
            }
            for catalog in build_path_catalog(&inst, &ca) {
                let Some(outcome) = solve_flow(&inst, &ca, &catalog) else { continue };
                let taken = |p: usize| {
                    let path = &catalog.paths[p];
                    path.items
                        .iter()
                        .filter(|&&g| outcome.assignment[g] == Some(path.agent))
                        .count()
                };
                for p in 0..catalog.paths.len() {
                    prop_assert!(taken(p) <= 1);
                }
                for set in &catalog.mandatory {
                    prop_assert!(set.iter().map(|&p| taken(p)).sum::<usize>() >= 1);
                }
            }
        }
    }
}
