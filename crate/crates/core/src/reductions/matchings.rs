use super::{element, gadget, give, holds, set_item, Construction, Reduced, Reduction, Threshold};
use super::{ExactCover, X3CInstance};
use crate::classify::Objective;
use crate::model::Allocation;
use crate::{Error, Result};

/// Smallest collection the construction accepts.
pub const MIN_SETS: usize = 6;

fn bound(x3c: &X3CInstance) -> usize {
    4 * x3c.num_sets() / 3
}

fn h(r: usize) -> String {
    gadget("h", r)
}

fn pair(a: String, b: String) -> (String, String) {
    (a, b)
}

/// Arcs `h:first -> h:first+1`, `h:first+2 -> h:first+3`, ... up to `h:last`.
fn helper_pairs(first: usize, last: usize) -> Vec<(String, String)> {
    (first..last).step_by(2).map(|r| pair(h(r), h(r + 1))).collect()
}

fn matching(arcs: Vec<(String, String)>) -> (Vec<String>, Vec<(String, String)>) {
    let items = arcs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    (items, arcs)
}

/// Min-max instance in which every graph is a directed matching; the
/// optimum is at most ℓ = 4p/3 exactly when the collection has an exact
/// cover. Needs p ≥ 6.
///
/// - `D:i` (i ≤ ℓ+1) pairs up `h:1..h:ℓ` and has `h:ℓ+1 -> a:i`.
/// - `F` has `s:j -> h:j` for every set.
/// - `B:j` has `s:j -> b0:j`, `h:1 -> b1:j` and pairs up `h:2..h:ℓ-1`.
/// - `C:j` has `b0:j -> x`, `b1:j -> y`, `h:1 -> z`, pairs up `h:2..h:ℓ-3`
///   and has `h:ℓ-2 -> e:j`.
pub fn gen_minmax_matchings(x3c: &X3CInstance) -> Result<Reduced> {
    let p = x3c.num_sets();
    if p < MIN_SETS {
        return Err(Error::domain(format!(
            "the matchings construction needs at least {MIN_SETS} sets, got {p}"
        )));
    }
    let ell = bound(x3c);
    let mut c = Construction::default();
    for i in 1..=ell + 1 {
        let mut arcs = helper_pairs(1, ell);
        arcs.push(pair(h(ell + 1), gadget("a", i)));
        let (items, arcs) = matching(arcs);
        c.agent(gadget("D", i), items, arcs);
    }
    let (items, arcs) = matching((0..p).map(|j| pair(set_item(j), h(j + 1))).collect());
    c.agent("F", items, arcs);
    for (j, set) in x3c.sets().iter().enumerate() {
        let n = j + 1;
        let mut arcs = vec![pair(set_item(j), gadget("b0", n)), pair(h(1), gadget("b1", n))];
        arcs.extend(helper_pairs(2, ell - 1));
        let (items, arcs) = matching(arcs);
        c.agent(gadget("B", n), items, arcs);

        let [x, y, z] = set.map(|e| element(x3c, e));
        let mut arcs = vec![pair(gadget("b0", n), x), pair(gadget("b1", n), y), pair(h(1), z)];
        arcs.extend(helper_pairs(2, ell - 3));
        arcs.push(pair(h(ell - 2), gadget("e", n)));
        let (items, arcs) = matching(arcs);
        c.agent(gadget("C", n), items, arcs);
    }
    Ok(Reduced {
        reduction: Reduction::Matchings,
        instance: c.build()?,
        thresholds: vec![Threshold {
            objective: Objective::Max,
            bound: ell,
        }],
    })
}

/// `D:i` gets `h:i` and `a:i`. For a chosen set, `F` gets its set item,
/// `B:j` both `b` items and `C:j` the elements and `e:j`; otherwise `B:j`
/// gets the set item and `C:j` the `b` items and `e:j`.
pub(super) fn forward(x3c: &X3CInstance, cover: &ExactCover) -> Allocation {
    let mut alloc = Allocation::default();
    for i in 1..=bound(x3c) + 1 {
        give(&mut alloc, &gadget("D", i), &h(i));
        give(&mut alloc, &gadget("D", i), &gadget("a", i));
    }
    for (j, set) in x3c.sets().iter().enumerate() {
        let n = j + 1;
        let (b, c) = (gadget("B", n), gadget("C", n));
        if cover.contains(j) {
            give(&mut alloc, "F", &set_item(j));
            give(&mut alloc, &b, &gadget("b0", n));
            give(&mut alloc, &b, &gadget("b1", n));
            for &e in set {
                give(&mut alloc, &c, &element(x3c, e));
            }
        } else {
            give(&mut alloc, &b, &set_item(j));
            give(&mut alloc, &c, &gadget("b0", n));
            give(&mut alloc, &c, &gadget("b1", n));
        }
        give(&mut alloc, &c, &gadget("e", n));
    }
    alloc
}

/// The sets whose item went to `F`.
pub(super) fn reverse(x3c: &X3CInstance, alloc: &Allocation) -> ExactCover {
    ExactCover::new((0..x3c.num_sets()).filter(|&j| holds(alloc, "F", &set_item(j))))
}

#[cfg(test)]
mod tests {
    use super::super::random_x3c;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn six_sets() {
        let (x3c, cover) = random_x3c(2, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let reduced = gen_minmax_matchings(&x3c).unwrap();
        let ell = reduced.thresholds[0].bound;
        assert_eq!(ell, 8);
        assert_eq!(ell % 2, 0);
        assert_eq!(reduced.instance.num_agents(), 9 + 1 + 6 + 6);
        let alloc = forward(&x3c, &cover);
        assert!(reduced.instance.validate(&alloc).is_empty());
        assert!(reduced.instance.profile(&alloc).unwrap().max() <= ell);
        assert_eq!(reverse(&x3c, &alloc), cover);
    }

    #[test]
    fn refuses_three_sets() {
        let x3c =
            X3CInstance::new(["a", "b", "c"], [["a", "b", "c"], ["a", "b", "c"], ["a", "b", "c"]]).unwrap();
        assert!(matches!(gen_minmax_matchings(&x3c), Err(Error::Domain(_))));
    }
}
