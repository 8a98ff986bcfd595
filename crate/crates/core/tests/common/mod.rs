//! A brute-force classifier: enumerates every prenex form reachable by
//! pulling unbounded quantifiers out in any order.

use std::collections::BTreeSet;

use conlab_core::formula::{Formula, HierarchyLevel};

/// Unbounded-quantifier prefixes, as alternating blocks (`true` = exists),
/// reachable by prenexing `f` in any order.
fn prefixes(f: &Formula) -> BTreeSet<Vec<bool>> {
    let one = |p: Vec<bool>| BTreeSet::from([p]);
    match f {
        Formula::Eq(..) | Formula::Lt(..) | Formula::Bottom | Formula::Top => one(Vec::new()),
        Formula::Not(a) => flip(prefixes(a)),
        Formula::And(a, b) | Formula::Or(a, b) => merge_all(&prefixes(a), &prefixes(b)),
        Formula::Implies(a, b) => merge_all(&flip(prefixes(a)), &prefixes(b)),
        Formula::Exists(_, body) => prefixes(body).into_iter().map(|p| blocks([vec![true], p].concat())).collect(),
        Formula::ForAll(_, body) => prefixes(body).into_iter().map(|p| blocks([vec![false], p].concat())).collect(),
        Formula::BoundedExists(_, _, body) | Formula::BoundedForAll(_, _, body) => prefixes(body),
    }
}

fn flip(ps: BTreeSet<Vec<bool>>) -> BTreeSet<Vec<bool>> {
    ps.into_iter().map(|p| p.into_iter().map(|q| !q).collect()).collect()
}

fn blocks(mut p: Vec<bool>) -> Vec<bool> {
    p.dedup();
    p
}

fn merge_all(xs: &BTreeSet<Vec<bool>>, ys: &BTreeSet<Vec<bool>>) -> BTreeSet<Vec<bool>> {
    let mut out = BTreeSet::new();
    for x in xs {
        for y in ys {
            interleave(x, y, &mut Vec::new(), &mut out);
        }
    }
    out
}

fn interleave(x: &[bool], y: &[bool], acc: &mut Vec<bool>, out: &mut BTreeSet<Vec<bool>>) {
    if x.is_empty() && y.is_empty() {
        out.insert(blocks(acc.clone()));
        return;
    }
    for (head, rest_x, rest_y) in [(x.first(), x.get(1..), Some(y)), (y.first(), Some(x), y.get(1..))] {
        if let (Some(&q), Some(rx), Some(ry)) = (head, rest_x, rest_y) {
            acc.push(q);
            interleave(rx, ry, acc, out);
            acc.pop();
        }
    }
}

/// The prefix obtained by pulling quantifiers out strictly left to right.
fn left_to_right(f: &Formula) -> Vec<bool> {
    match f {
        Formula::Eq(..) | Formula::Lt(..) | Formula::Bottom | Formula::Top => Vec::new(),
        Formula::Not(a) => left_to_right(a).into_iter().map(|q| !q).collect(),
        Formula::And(a, b) | Formula::Or(a, b) => [left_to_right(a), left_to_right(b)].concat(),
        Formula::Implies(a, b) => [left_to_right(a).into_iter().map(|q| !q).collect(), left_to_right(b)].concat(),
        Formula::Exists(_, body) => [vec![true], left_to_right(body)].concat(),
        Formula::ForAll(_, body) => [vec![false], left_to_right(body)].concat(),
        Formula::BoundedExists(_, _, body) | Formula::BoundedForAll(_, _, body) => left_to_right(body),
    }
}

pub fn reference_classify(f: &Formula) -> HierarchyLevel {
    let ps = prefixes(f);
    if ps.iter().all(|p| p.is_empty()) {
        return HierarchyLevel::Delta0;
    }
    // a prefix of n blocks is Sigma_n when it opens with exists, else Sigma_(n+1)
    let level = |p: &Vec<bool>, exists_first: bool| p.len() as u32 + u32::from(p[0] != exists_first);
    let sigma = ps.iter().map(|p| level(p, true)).min().unwrap();
    let pi = ps.iter().map(|p| level(p, false)).min().unwrap();
    match sigma.cmp(&pi) {
        std::cmp::Ordering::Less => HierarchyLevel::Sigma(sigma),
        std::cmp::Ordering::Greater => HierarchyLevel::Pi(pi),
        std::cmp::Ordering::Equal if left_to_right(f)[0] => HierarchyLevel::Sigma(sigma),
        std::cmp::Ordering::Equal => HierarchyLevel::Pi(pi),
    }
}
