//! Seeded random instances of each graph class.

use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::Instance;
use crate::{Error, Result};

/// Shape of every agent's preference graph in a random instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RandomClass {
    Path,
    DisjointPaths,
    Matching,
    OutStar,
    StarForest,
    OutTree,
    Dag,
}

impl RandomClass {
    pub const ALL: [RandomClass; 7] = [
        RandomClass::Path,
        RandomClass::DisjointPaths,
        RandomClass::Matching,
        RandomClass::OutStar,
        RandomClass::StarForest,
        RandomClass::OutTree,
        RandomClass::Dag,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RandomClass::Path => "path",
            RandomClass::DisjointPaths => "disjoint-paths",
            RandomClass::Matching => "matching",
            RandomClass::OutStar => "out-star",
            RandomClass::StarForest => "star-forest",
            RandomClass::OutTree => "out-tree",
            RandomClass::Dag => "dag",
        }
    }
}

impl fmt::Display for RandomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RandomClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RandomClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = RandomClass::ALL.iter().map(|c| c.name()).collect();
                Error::domain(format!("unknown class {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

fn label(prefix: &str, index: usize, count: usize) -> String {
    let width = count.saturating_sub(1).to_string().len();
    format!("{prefix}{index:0width$}")
}

/// Splits `order` into consecutive runs of random length.
fn chunks<R: Rng>(order: &[usize], rng: &mut R) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rest = order;
    while !rest.is_empty() {
        let take = rng.random_range(1..=rest.len());
        out.push(rest[..take].to_vec());
        rest = &rest[take..];
    }
    out
}

fn arcs_for<R: Rng>(class: RandomClass, order: &[usize], rng: &mut R) -> Vec<(usize, usize)> {
    let chain = |run: &[usize]| run.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>();
    let star = |run: &[usize]| run[1..].iter().map(|&v| (run[0], v)).collect::<Vec<_>>();
    match class {
        RandomClass::Path => chain(order),
        RandomClass::DisjointPaths => chunks(order, rng).iter().flat_map(|c| chain(c)).collect(),
        RandomClass::Matching => order.chunks_exact(2).map(|p| (p[0], p[1])).collect(),
        RandomClass::OutStar => star(order),
        RandomClass::StarForest => chunks(order, rng).iter().flat_map(|c| star(c)).collect(),
        RandomClass::OutTree => (1..order.len())
            .map(|k| (order[rng.random_range(0..k)], order[k]))
            .collect(),
        RandomClass::Dag => {
            let density = 2.0 / order.len().max(2) as f64;
            let mut arcs = Vec::new();
            for j in 1..order.len() {
                for i in 0..j {
                    if rng.random_bool(density) {
                        arcs.push((order[i], order[j]));
                    }
                }
            }
            arcs
        }
    }
}

/// Random instance with `items` items and `agents` agents, every graph of
/// the given class.
///
/// Every agent desires something and each item is desired by at least
/// one agent. For matchings every agent needs an even number of items,
/// so one item may end up unused and disappear from the instance.
pub fn random_instance<R: Rng>(
    class: RandomClass,
    items: usize,
    agents: usize,
    rng: &mut R,
) -> Result<Instance> {
    if items == 0 || agents == 0 {
        return Err(Error::domain("need at least one item and one agent"));
    }
    if class == RandomClass::Matching && items < 2 {
        return Err(Error::domain("matchings need at least two items"));
    }
    let mut wanted: Vec<Vec<usize>> = (0..agents)
        .map(|_| {
            let set: Vec<usize> = (0..items).filter(|_| rng.random_bool(0.6)).collect();
            if set.is_empty() {
                vec![rng.random_range(0..items)]
            } else {
                set
            }
        })
        .collect();
    for item in 0..items {
        if !wanted.iter().any(|w| w.contains(&item)) {
            wanted[rng.random_range(0..agents)].push(item);
        }
    }
    let names: Vec<String> = (0..items).map(|i| label("x", i, items)).collect();
    let mut builder = Instance::builder();
    for (a, set) in wanted.iter_mut().enumerate() {
        set.sort_unstable();
        if class == RandomClass::Matching {
            if set.len() % 2 == 1 {
                let missing: Vec<usize> = (0..items).filter(|i| !set.contains(i)).collect();
                match missing.choose(rng) {
                    Some(&extra) => set.push(extra),
                    None => {
                        set.pop();
                    }
                }
            }
        }
        set.shuffle(rng);
        let arcs = arcs_for(class, set, rng);
        builder = builder.agent(
            label("a", a, agents),
            set.iter().map(|&i| names[i].as_str()),
            arcs.iter().map(|&(t, h)| (names[t].as_str(), names[h].as_str())),
        );
    }
    builder.build()
}

/// [`random_instance`] driven by a ChaCha8 stream seeded with `seed`.
pub fn seeded_instance(class: RandomClass, items: usize, agents: usize, seed: u64) -> Result<Instance> {
    random_instance(class, items, agents, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classes_of, GraphClass};

    fn expected(class: RandomClass) -> GraphClass {
        match class {
            RandomClass::Path => GraphClass::Path,
            RandomClass::DisjointPaths => GraphClass::DisjointPaths,
            RandomClass::Matching => GraphClass::DirectedMatching,
            RandomClass::OutStar => GraphClass::OutStar,
            RandomClass::StarForest => GraphClass::UnionOutStars,
            RandomClass::OutTree => GraphClass::OutTree,
            RandomClass::Dag => GraphClass::GeneralDAG,
        }
    }

    #[test]
    fn generated_graphs_have_their_class() {
        for class in RandomClass::ALL {
            for seed in 0..40 {
                let inst = seeded_instance(class, 7, 3, seed).unwrap();
                if class == RandomClass::Dag {
                    continue;
                }
                for agent in inst.agents() {
                    assert!(
                        classes_of(agent.graph()).contains(&expected(class)),
                        "{class} seed {seed}"
                    );
                }
            }
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let a = seeded_instance(RandomClass::Dag, 8, 3, 11).unwrap();
        let b = seeded_instance(RandomClass::Dag, 8, 3, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn names_sort_numerically() {
        assert_eq!(label("x", 3, 12), "x03");
        assert_eq!(label("a", 0, 1), "a0");
    }

    #[test]
    fn class_names_round_trip() {
        for class in RandomClass::ALL {
            assert_eq!(class.name().parse::<RandomClass>().unwrap(), class);
        }
        assert!("tree".parse::<RandomClass>().is_err());
    }
}
