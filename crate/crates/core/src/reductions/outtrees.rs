use super::{chain, element, elements, gadget, give, holds, set_item, star, Construction, Reduced, Reduction, Threshold};
use super::{ExactCover, X3CInstance};
use crate::classify::Objective;
use crate::model::Allocation;
use crate::Result;

/// D = 2p² + p/3 + 1.
fn bound(x3c: &X3CInstance) -> usize {
    let p = x3c.num_sets();
    2 * p * p + p / 3 + 1
}

fn set_agent(j: usize) -> String {
    gadget("C", j + 1)
}

fn h(r: usize) -> String {
    gadget("h", r)
}

fn hs(range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(h).collect()
}

/// Min-sum instance in which every agent's graph is an out-tree over all
/// items; the optimum is at most D = 2p² + p/3 + 1 exactly when the
/// collection has an exact cover.
///
/// With H = 3D - 2 helper items `h:1..h:H`:
/// - `A:i` has root `h:i` over every other helper, then a path from `h:H`
///   (from `h:H-1` for `A:H`) through the elements, the set items and `e`.
/// - `B` has root `h:H` over the set items and `e`. Below `s:j` hangs a
///   private path of 3p - 1 helpers; below `e` hang the remaining helpers
///   and then the elements.
/// - `C:j` has root `s:j` over its elements x, y, z, each heading a path of
///   D - 1 helpers; the path under z continues through `h:H`, the other
///   elements, the other set items and `e`.
pub fn gen_minsum_outtrees(x3c: &X3CInstance) -> Result<Reduced> {
    let p = x3c.num_sets();
    let d = bound(x3c);
    let top = 3 * d - 2;
    let xs = elements(x3c);
    let sets: Vec<String> = (0..p).map(set_item).collect();
    let tail: Vec<String> = xs.iter().chain(&sets).cloned().chain(["e".to_owned()]).collect();
    let all: Vec<String> = hs(1..=top).into_iter().chain(tail.iter().cloned()).collect();

    let mut c = Construction::default();
    for i in 1..=top {
        let others: Vec<String> = hs(1..=top).into_iter().filter(|v| *v != h(i)).collect();
        let mut arcs = star(&h(i), &others);
        let start = if i == top { top - 1 } else { top };
        let path: Vec<String> = std::iter::once(h(start)).chain(tail.iter().cloned()).collect();
        arcs.extend(chain(&path));
        c.agent(gadget("A", i), all.clone(), arcs);
    }

    let mut b_children = sets.clone();
    b_children.push("e".to_owned());
    let mut b_arcs = star(&h(top), &b_children);
    let run = 3 * p - 1;
    for (j, s) in sets.iter().enumerate() {
        let path: Vec<String> = std::iter::once(s.clone())
            .chain(hs(j * run + 1..=(j + 1) * run))
            .collect();
        b_arcs.extend(chain(&path));
    }
    let e_path: Vec<String> = std::iter::once("e".to_owned())
        .chain(hs(p * run + 1..=top - 1))
        .chain(xs.iter().cloned())
        .collect();
    b_arcs.extend(chain(&e_path));
    c.agent("B", all.clone(), b_arcs);

    for (j, set) in x3c.sets().iter().enumerate() {
        let [x, y, z] = set.map(|e| element(x3c, e));
        let mut arcs = star(&sets[j], &[x.clone(), y.clone(), z.clone()]);
        arcs.extend(chain(&std::iter::once(x).chain(hs(1..=d - 1)).collect::<Vec<_>>()));
        arcs.extend(chain(&std::iter::once(y).chain(hs(d..=2 * d - 2)).collect::<Vec<_>>()));
        let rest = xs
            .iter()
            .filter(|v| !set.iter().any(|&e| element(x3c, e) == **v))
            .chain(sets.iter().filter(|s| **s != sets[j]))
            .cloned()
            .chain(["e".to_owned()]);
        let z_path: Vec<String> = std::iter::once(z)
            .chain(hs(2 * d - 1..=top))
            .chain(rest)
            .collect();
        arcs.extend(chain(&z_path));
        c.agent(set_agent(j), all.clone(), arcs);
    }

    Ok(Reduced {
        reduction: Reduction::OutTrees,
        instance: c.build()?,
        thresholds: vec![Threshold {
            objective: Objective::Sum,
            bound: d,
        }],
    })
}

/// `A:i` gets `h:i`; `B` gets `e` and the set items of the cover; a chosen
/// set's agent gets its elements and every other set agent its root.
pub(super) fn forward(x3c: &X3CInstance, cover: &ExactCover) -> Allocation {
    let mut alloc = Allocation::default();
    for i in 1..=3 * bound(x3c) - 2 {
        give(&mut alloc, &gadget("A", i), &h(i));
    }
    give(&mut alloc, "B", "e");
    for (j, set) in x3c.sets().iter().enumerate() {
        if cover.contains(j) {
            give(&mut alloc, "B", &set_item(j));
            for &e in set {
                give(&mut alloc, &set_agent(j), &element(x3c, e));
            }
        } else {
            give(&mut alloc, &set_agent(j), &set_item(j));
        }
    }
    alloc
}

/// The sets whose agent does not hold its own root.
pub(super) fn reverse(x3c: &X3CInstance, alloc: &Allocation) -> ExactCover {
    ExactCover::new((0..x3c.num_sets()).filter(|&j| !holds(alloc, &set_agent(j), &set_item(j))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_counts() {
        let x3c =
            X3CInstance::new(["a", "b", "c"], [["a", "b", "c"], ["a", "b", "c"], ["a", "b", "c"]]).unwrap();
        let reduced = gen_minsum_outtrees(&x3c).unwrap();
        assert_eq!(reduced.thresholds[0].bound, 20);
        let p = 3;
        assert_eq!(reduced.instance.num_agents(), 6 * p * p + 2 * p + 2);
        assert_eq!(reduced.instance.num_agents(), 62);
        let alloc = forward(&x3c, &ExactCover::new([0]));
        let profile = reduced.instance.profile(&alloc).unwrap();
        assert_eq!(profile.sum(), 20);
        assert_eq!(profile.get("B"), Some(2 * p * p + 1));
        assert_eq!(reverse(&x3c, &alloc), ExactCover::new([0]));
    }
}
