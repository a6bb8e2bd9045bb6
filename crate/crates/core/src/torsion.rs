//! Torsion: element orders, balanced diagrams and conjugators to `c_i^j`.
//!
//! A torsion element `g` has a diagram `(E, E, s)` with equal source and
//! target trees. Starting from the reduced diagram `(A, B)`, take
//! `E = mce(A, B)`, redraw `g` with source `E`, and repeat with the new target
//! until source and target agree. Then `g` rotates the leaves of `E` by `s`
//! and is conjugate to `c_i^j` by the positive element `(all_right(i+1), E)`.

use num_integer::Integer;

use crate::diagram::MarkedPair;
use crate::tree::Tree;
use crate::word::{Letter, Word};

/// Smallest `m ≤ max_order` with `g^m = 1`.
pub fn order(g: &MarkedPair, max_order: u64) -> Option<u64> {
    let g = g.reduce();
    let mut power = g.clone();
    for m in 1..=max_order {
        if power.is_identity() {
            return Some(m);
        }
        power = power.multiply(&g);
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedForm {
    /// Source and target tree.
    pub tree: Tree,
    /// Mark of the balanced diagram: leaf `k` goes to leaf `k + shift`.
    pub shift: usize,
    pub order: u64,
    /// Number of expansions performed.
    pub steps: usize,
}

/// Runs the expansion until the diagram is balanced; `None` once the tree
/// would exceed `caret_cap` carets (for instance for every non-trivial element
/// of `F`, which is torsion free).
pub fn balanced_form(g: &MarkedPair, caret_cap: usize) -> Option<BalancedForm> {
    let g = g.reduce();
    let mut target = g.target().clone();
    let mut steps = 0;
    loop {
        let tree = g.source().minimal_common_expansion(&target);
        if tree.carets() > caret_cap {
            return None;
        }
        let expanded = g.expand_source(&tree).expect("mce expands the source");
        if *expanded.target() == tree {
            let leaves = tree.leaves();
            let shift = expanded.mark();
            let order = (leaves / leaves.gcd(&shift)) as u64;
            return Some(BalancedForm { tree, shift, order, steps });
        }
        target = expanded.target().clone();
        steps += 1;
    }
}

/// A positive word `p` and `c_i^j` with `g = p c_i^j p^{-1}`. The identity
/// gives `(1, 0, 0)`.
pub fn conjugator(g: &MarkedPair, caret_cap: usize) -> Option<(Word, u32, u32)> {
    let balanced = balanced_form(g, caret_cap)?;
    if balanced.tree.is_leaf() {
        return Some((Word::identity(), 0, 0));
    }
    let leaves = balanced.tree.leaves();
    let i = (leaves - 2) as u32;
    let j = ((leaves - balanced.shift) % leaves) as u32;
    let letters = balanced
        .tree
        .leaf_exponents()
        .into_iter()
        .enumerate()
        .filter(|&(_, e)| e > 0)
        .map(|(k, e)| Letter::x(k as u32, e as i64))
        .collect();
    Some((Word::new(letters), i, j))
}
