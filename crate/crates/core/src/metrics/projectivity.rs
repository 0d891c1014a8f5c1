//! Crossing dependency arcs.

use crate::cstruct::{CNode, Child};

/// A dependency from `head` to `dep`, both token positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub head: usize,
    pub dep: usize,
}

impl Arc {
    pub fn new(head: usize, dep: usize) -> Arc {
        Arc { head, dep }
    }

    pub fn left(&self) -> usize {
        self.head.min(self.dep)
    }

    pub fn right(&self) -> usize {
        self.head.max(self.dep)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projectivity {
    Projective,
    /// Crossing pairs, each ordered by left endpoint.
    Crossing(Vec<(Arc, Arc)>),
}

impl Projectivity {
    pub fn is_projective(&self) -> bool {
        matches!(self, Projectivity::Projective)
    }
}

/// Reports every pair of arcs whose spans interleave strictly.
pub fn projectivity_check(arcs: &[Arc]) -> Projectivity {
    let mut sorted: Vec<Arc> = arcs.to_vec();
    sorted.sort_by_key(|a| (a.left(), a.right(), a.head));
    let mut out = Vec::new();
    for (i, a) in sorted.iter().enumerate() {
        // Arcs starting strictly inside `a` are contiguous in the sorted order.
        let start = sorted[i + 1..].partition_point(|b| b.left() <= a.left()) + i + 1;
        for b in &sorted[start..] {
            if b.left() >= a.right() {
                break;
            }
            if b.right() > a.right() {
                out.push((*a, *b));
            }
        }
    }
    if out.is_empty() {
        Projectivity::Projective
    } else {
        Projectivity::Crossing(out)
    }
}

/// Head-percolated dependencies of a tree: the lexical head of every
/// non-head child depends on its parent's lexical head.
pub fn dependencies(tree: &CNode) -> Vec<Arc> {
    fn head_pos(n: &CNode) -> Option<usize> {
        n.head_leaf()
            .and_then(|l| l.index)
            .or_else(|| n.leaves().iter().find_map(|l| l.index))
    }
    fn go(n: &CNode, out: &mut Vec<Arc>) {
        let Some(h) = head_pos(n) else { return };
        for k in &n.kids {
            let d = match k {
                Child::Leaf(l) => l.index,
                Child::Node(c) => {
                    go(c, out);
                    head_pos(c)
                }
            };
            if let Some(d) = d.filter(|d| *d != h) {
                out.push(Arc::new(h, d));
            }
        }
    }
    let mut out = Vec::new();
    go(tree, &mut out);
    out.sort();
    out.dedup();
    out
}
