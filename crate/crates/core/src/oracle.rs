//! Exhaustive ground truth: generate every tree of a variety on `[n]`,
//! classify each vertex, and total the balanced vertices by rank.
//!
//! Nothing here touches generating functions, so agreement with the
//! analytic tables is an independent check.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::table::Variety;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn mirrored(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Child {
    /// Set only for decreasing binary trees.
    pub side: Option<Side>,
    pub tree: Tree,
}

/// Labeled rooted tree with at most two children per vertex; every child
/// has a smaller label than its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    pub label: u32,
    pub children: Vec<Child>,
}

impl Tree {
    pub fn leaf(label: u32) -> Self {
        Tree { label, children: Vec::new() }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|c| c.tree.size()).sum::<usize>()
    }

    /// Swaps every left/right tag.
    pub fn mirrored(&self) -> Tree {
        Tree {
            label: self.label,
            children: self
                .children
                .iter()
                .rev()
                .map(|c| Child { side: c.side.map(Side::mirrored), tree: c.tree.mirrored() })
                .collect(),
        }
    }
}

/// Decreasing binary tree of a permutation: the maximum becomes the root and
/// the entries to its left and right form the left and right subtrees.
/// A lone child is tagged by the root's position instead: left when the
/// maximum comes first, right when it comes last.
pub fn perm_to_tree(perm: &[u32]) -> Result<Tree> {
    let n = perm.len();
    let mut seen = vec![false; n + 1];
    for &v in perm {
        let v = v as usize;
        if v == 0 || v > n || seen[v] {
            return Err(Error::NotAPermutation(n));
        }
        seen[v] = true;
    }
    if n == 0 {
        return Err(Error::NotAPermutation(0));
    }
    Ok(build_decreasing(perm))
}

fn build_decreasing(perm: &[u32]) -> Tree {
    let (pos, &label) = perm
        .iter()
        .enumerate()
        .max_by_key(|(_, &v)| v)
        .expect("nonempty slice");
    let last = perm.len() - 1;
    let child = |side, part: &[u32]| Child { side: Some(side), tree: build_decreasing(part) };
    let children = match pos {
        _ if last == 0 => Vec::new(),
        0 => vec![child(Side::Left, &perm[1..])],
        p if p == last => vec![child(Side::Right, &perm[..last])],
        p => vec![child(Side::Left, &perm[..p]), child(Side::Right, &perm[p + 1..])],
    };
    Tree { label, children }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexStatus {
    pub balanced: bool,
    /// Common leaf distance, present exactly when balanced.
    pub rank: Option<usize>,
}

/// Per-label balance status of one tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClassification {
    by_label: Vec<Option<VertexStatus>>,
}

impl VertexClassification {
    pub fn get(&self, label: u32) -> Option<VertexStatus> {
        self.by_label.get(label as usize).copied().flatten()
    }

    pub fn balanced_labels(&self) -> Vec<u32> {
        self.by_label
            .iter()
            .enumerate()
            .filter_map(|(l, s)| s.filter(|s| s.balanced).map(|_| l as u32))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.by_label.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Visits every vertex bottom-up with its rank (if balanced); returns the
/// rank of `t` itself.
fn visit_ranks(t: &Tree, visit: &mut impl FnMut(u32, Option<usize>)) -> Option<usize> {
    let mut common: Option<Option<usize>> = None;
    let mut balanced = true;
    for c in &t.children {
        let r = visit_ranks(&c.tree, visit);
        match (r, common) {
            (None, _) => balanced = false,
            (Some(r), None) => common = Some(Some(r)),
            (Some(r), Some(Some(prev))) if prev != r => balanced = false,
            _ => {}
        }
    }
    let rank = match common {
        _ if t.children.is_empty() => Some(0),
        Some(Some(r)) if balanced => Some(r + 1),
        _ => None,
    };
    visit(t.label, rank);
    rank
}

pub fn classify(t: &Tree) -> VertexClassification {
    let mut by_label: Vec<Option<VertexStatus>> = Vec::new();
    visit_ranks(t, &mut |label, rank| {
        let l = label as usize;
        if by_label.len() <= l {
            by_label.resize(l + 1, None);
        }
        by_label[l] = Some(VertexStatus { balanced: rank.is_some(), rank });
    });
    VertexClassification { by_label }
}

/// Exhaustive totals for one variety and size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCounts {
    pub variety: Variety,
    pub n: usize,
    pub tree_count: u64,
    /// Balanced vertices of rank `k`, summed over all trees; index `k < n`.
    pub balanced: Vec<u64>,
    /// Trees whose root is balanced of rank `k`.
    pub root_balanced: Vec<u64>,
}

impl OracleCounts {
    fn empty(variety: Variety, n: usize) -> Self {
        OracleCounts { variety, n, tree_count: 0, balanced: vec![0; n], root_balanced: vec![0; n] }
    }

    fn absorb(&mut self, t: &Tree) {
        self.tree_count += 1;
        let balanced = &mut self.balanced;
        let root = visit_ranks(t, &mut |_, rank| {
            if let Some(r) = rank {
                balanced[r] += 1;
            }
        });
        if let Some(r) = root {
            self.root_balanced[r] += 1;
        }
    }

    fn merge(mut self, other: OracleCounts) -> Self {
        self.tree_count += other.tree_count;
        for (a, b) in self.balanced.iter_mut().zip(other.balanced) {
            *a += b;
        }
        for (a, b) in self.root_balanced.iter_mut().zip(other.root_balanced) {
            *a += b;
        }
        self
    }

    pub fn total_balanced(&self) -> u64 {
        self.balanced.iter().sum()
    }
}

/// Default largest `n` the oracle accepts without an override.
pub fn default_oracle_limit(variety: Variety) -> usize {
    match variety {
        Variety::DecBinary => 9,
        Variety::NonPlane12 => 10,
        Variety::Plane12 => 9,
    }
}

/// Bitmask label sets cap the 1-2 generators; permutations are bounded by time.
pub const HARD_LIMIT: usize = 16;

/// Rejects an enumeration bound beyond what the generators support, before
/// any work is spent on smaller sizes.
pub fn check_limit(variety: Variety, limit: usize) -> Result<()> {
    if limit > HARD_LIMIT {
        return Err(Error::OracleLimit { variety, n: limit, limit: HARD_LIMIT });
    }
    Ok(())
}

pub fn enumerate_counts(variety: Variety, n: usize, limit_override: Option<usize>) -> Result<OracleCounts> {
    let limit = limit_override.unwrap_or_else(|| default_oracle_limit(variety)).min(HARD_LIMIT);
    if n > limit {
        return Err(Error::OracleLimit { variety, n, limit });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("oracle needs n >= 1".into()));
    }
    Ok(match variety {
        Variety::DecBinary => enumerate_permutation_trees(n),
        Variety::NonPlane12 | Variety::Plane12 => {
            let mut counts = OracleCounts::empty(variety, n);
            let all = (1u32 << n) - 1;
            for_each_one_two_tree(all, variety == Variety::Plane12, &mut |t| counts.absorb(t));
            counts
        }
    })
}

/// Splits on the first entry, then walks the remaining entries through
/// lexicographic successors.
fn enumerate_permutation_trees(n: usize) -> OracleCounts {
    (1..=n as u32)
        .into_par_iter()
        .map(|first| {
            let mut counts = OracleCounts::empty(Variety::DecBinary, n);
            let mut perm: Vec<u32> = std::iter::once(first)
                .chain((1..=n as u32).filter(|&v| v != first))
                .collect();
            loop {
                counts.absorb(&build_decreasing(&perm));
                if !next_permutation(&mut perm[1..]) {
                    break;
                }
            }
            counts
        })
        .reduce(|| OracleCounts::empty(Variety::DecBinary, n), OracleCounts::merge)
}

/// Advances to the next permutation in lexicographic order; returns `false`
/// (leaving the slice sorted descending) after the last one.
fn next_permutation(s: &mut [u32]) -> bool {
    if s.len() < 2 {
        return false;
    }
    let Some(i) = (0..s.len() - 1).rev().find(|&i| s[i] < s[i + 1]) else {
        return false;
    };
    let j = (i + 1..s.len()).rev().find(|&j| s[j] > s[i]).expect("successor exists");
    s.swap(i, j);
    s[i + 1..].reverse();
    true
}

/// Calls `f` on every 1-2 tree whose label set is `mask`.
///
/// For non-plane trees an unordered pair of children is produced once, with
/// the block holding the largest remaining label listed first.
fn for_each_one_two_tree(mask: u32, plane: bool, f: &mut dyn FnMut(&Tree)) {
    debug_assert!(mask != 0);
    let root = 31 - mask.leading_zeros();
    let rest = mask & !(1 << root);
    if rest == 0 {
        f(&Tree::leaf(root + 1));
        return;
    }
    for_each_one_two_tree(rest, plane, &mut |t| {
        f(&Tree { label: root + 1, children: vec![Child { side: None, tree: t.clone() }] })
    });
    let top = 1u32 << (31 - rest.leading_zeros());
    // Proper nonempty submasks of `rest`.
    let mut sub = (rest - 1) & rest;
    while sub != 0 {
        if plane || sub & top != 0 {
            let other = rest ^ sub;
            for_each_one_two_tree(sub, plane, &mut |a| {
                for_each_one_two_tree(other, plane, &mut |b| {
                    f(&Tree {
                        label: root + 1,
                        children: vec![
                            Child { side: None, tree: a.clone() },
                            Child { side: None, tree: b.clone() },
                        ],
                    })
                })
            });
        }
        sub = (sub - 1) & rest;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits(s: &str) -> Vec<u32> {
        s.chars().map(|c| c.to_digit(10).unwrap()).collect()
    }

    #[test]
    fn figure_tree() {
        let t = perm_to_tree(&digits("328794615")).unwrap();
        assert_eq!(t.label, 9);
        assert_eq!(t.size(), 9);
        let c = classify(&t);
        assert_eq!(c.balanced_labels(), vec![1, 2, 3, 4, 5, 7]);
        assert!(!c.get(9).unwrap().balanced);
        assert_eq!(c.get(1).unwrap().rank, Some(0));
    }

    #[test]
    fn sides_of_lone_children() {
        let t = perm_to_tree(&[2, 1]).unwrap();
        assert_eq!(t.children.len(), 1);
        assert_eq!(t.children[0].side, Some(Side::Left));
        let t = perm_to_tree(&[1, 2]).unwrap();
        assert_eq!(t.children[0].side, Some(Side::Right));
        let t = perm_to_tree(&[1, 3, 2]).unwrap();
        assert_eq!(t.children.iter().map(|c| c.side).collect::<Vec<_>>(), [Some(Side::Left), Some(Side::Right)]);
        assert_eq!(perm_to_tree(&[1]).unwrap(), Tree::leaf(1));
    }

    #[test]
    fn rejects_non_permutations() {
        assert_eq!(perm_to_tree(&[1, 1]), Err(Error::NotAPermutation(2)));
        assert_eq!(perm_to_tree(&[0, 1]), Err(Error::NotAPermutation(2)));
        assert_eq!(perm_to_tree(&[3, 1]), Err(Error::NotAPermutation(2)));
        assert!(perm_to_tree(&[]).is_err());
    }

    #[test]
    fn chain_ranks() {
        let c = classify(&perm_to_tree(&[1, 2, 3]).unwrap());
        for (label, rank) in [(1, 0), (2, 1), (3, 2)] {
            assert_eq!(c.get(label), Some(VertexStatus { balanced: true, rank: Some(rank) }));
        }
        let single = classify(&Tree::leaf(1));
        assert_eq!(single.get(1).unwrap().rank, Some(0));
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn small_sizes() {
        let d3 = enumerate_counts(Variety::DecBinary, 3, None).unwrap();
        assert_eq!(d3.tree_count, 6);
        assert_eq!(d3.balanced, vec![8, 6, 4]);
        assert_eq!(d3.root_balanced, vec![0, 2, 4]);

        let np4 = enumerate_counts(Variety::NonPlane12, 4, None).unwrap();
        assert_eq!(np4.tree_count, 5);
        assert_eq!(np4.balanced[0], 9);

        assert_eq!(enumerate_counts(Variety::Plane12, 3, None).unwrap().tree_count, 3);
        assert_eq!(enumerate_counts(Variety::Plane12, 4, None).unwrap().tree_count, 9);
    }

    #[test]
    fn limits_enforced() {
        assert_eq!(
            enumerate_counts(Variety::DecBinary, 10, None),
            Err(Error::OracleLimit { variety: Variety::DecBinary, n: 10, limit: 9 })
        );
        assert!(enumerate_counts(Variety::Plane12, 10, Some(10)).is_ok());
        assert!(check_limit(Variety::NonPlane12, HARD_LIMIT).is_ok());
        assert!(check_limit(Variety::NonPlane12, HARD_LIMIT + 1).is_err());
    }

    #[test]
    fn permutation_successor() {
        let mut p = vec![1, 2, 3];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![3, 2, 1]);
    }
}
