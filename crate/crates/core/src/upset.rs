//! Up-closed subsets of a finite set of degrees.

use std::collections::BTreeSet;

use crate::lattice::GradedDegree;

/// `i` is up-closed inside `h`: every element of `h` above some element of `i` is in `i`.
pub fn is_upset(h: &BTreeSet<GradedDegree>, i: &BTreeSet<GradedDegree>) -> bool {
    i.is_subset(h) && i.iter().all(|&x| h.iter().all(|&y| !x.le(y) || i.contains(&y)))
}

/// All upsets of `h` under the order of L, in a deterministic order.
///
/// Elements are decided from the top of a linear extension downwards; an element
/// may join only if everything above it already has, so each upset is produced once.
pub fn enumerate_upsets(h: &BTreeSet<GradedDegree>) -> Vec<BTreeSet<GradedDegree>> {
    // the canonical order refines the partial order, so descending order is a
    // linear extension read from the top
    let elems: Vec<GradedDegree> = h.iter().rev().copied().collect();
    let above: Vec<Vec<usize>> = elems
        .iter()
        .enumerate()
        .map(|(n, &x)| (0..n).filter(|&m| x.le(elems[m])).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = vec![false; elems.len()];
    fn rec(
        n: usize,
        elems: &[GradedDegree],
        above: &[Vec<usize>],
        chosen: &mut Vec<bool>,
        out: &mut Vec<BTreeSet<GradedDegree>>,
    ) {
        if n == elems.len() {
            out.push((0..n).filter(|&m| chosen[m]).map(|m| elems[m]).collect());
            return;
        }
        rec(n + 1, elems, above, chosen, out);
        if above[n].iter().all(|&m| chosen[m]) {
            chosen[n] = true;
            rec(n + 1, elems, above, chosen, out);
            chosen[n] = false;
        }
    }
    rec(0, &elems, &above, &mut chosen, &mut out);
    out
}
