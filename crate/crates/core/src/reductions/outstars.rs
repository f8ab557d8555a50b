use super::{element, gadget, give, holds, set_item, star, Construction, Reduced, Reduction, Threshold};
use super::{ExactCover, X3CInstance};
use crate::classify::Objective;
use crate::model::Allocation;
use crate::Result;

fn bound(x3c: &X3CInstance) -> usize {
    2 * x3c.num_sets() / 3 + 1
}

fn set_agent(j: usize) -> String {
    gadget("C", j + 1)
}

/// Min-max instance with out-star preferences whose optimum is at most
/// ℓ = 2p/3 + 1 exactly when the collection has an exact cover.
///
/// Agents `D:1..D:ℓ+1` share the star `h:1 -> h:2..h:ℓ+1`, agent `A` has
/// `h:1 -> s:1..s:p`, and agent `C:j` has `s:j` over `h:1..h:ℓ-1` and the
/// three elements of set j.
pub fn gen_minmax_outstars(x3c: &X3CInstance) -> Result<Reduced> {
    let p = x3c.num_sets();
    let ell = bound(x3c);
    let hs: Vec<String> = (1..=ell + 1).map(|r| gadget("h", r)).collect();
    let mut c = Construction::default();
    for i in 1..=ell + 1 {
        c.agent(gadget("D", i), hs.clone(), star(&hs[0], &hs[1..]));
    }
    let sets: Vec<String> = (0..p).map(set_item).collect();
    let mut a_items = vec![hs[0].clone()];
    a_items.extend(sets.iter().cloned());
    c.agent("A", a_items, star(&hs[0], &sets));
    for (j, set) in x3c.sets().iter().enumerate() {
        let mut leaves: Vec<String> = hs[..ell - 1].to_vec();
        leaves.extend(set.iter().map(|&e| element(x3c, e)));
        let mut items = vec![sets[j].clone()];
        items.extend(leaves.iter().cloned());
        c.agent(set_agent(j), items, star(&sets[j], &leaves));
    }
    Ok(Reduced {
        reduction: Reduction::OutStars,
        instance: c.build()?,
        thresholds: vec![Threshold {
            objective: Objective::Max,
            bound: ell,
        }],
    })
}

/// `D:i` gets `h:i`; a chosen set's agent gets its elements while `A`
/// takes its set item; every other set agent keeps its own root.
pub(super) fn forward(x3c: &X3CInstance, cover: &ExactCover) -> Allocation {
    let mut alloc = Allocation::default();
    for i in 1..=bound(x3c) + 1 {
        give(&mut alloc, &gadget("D", i), &gadget("h", i));
    }
    for (j, set) in x3c.sets().iter().enumerate() {
        if cover.contains(j) {
            give(&mut alloc, "A", &set_item(j));
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
