//! Finite rooted binary trees.
//!
//! A tree is stored as its preorder encoding: `true` for a caret, `false` for a
//! leaf. Leaves are numbered from 0, left to right. The encoding makes
//! structural equality, hashing and leaf-indexed surgery (grafting, removing
//! exposed carets) cheap, which matters for the breadth-first searches in
//! [`crate::metric`].

use std::fmt;
use std::str::FromStr;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    code: Vec<bool>,
}

/// End (exclusive) of the subtree starting at `start`.
pub(crate) fn subtree_end(code: &[bool], start: usize) -> usize {
    let mut open = 1usize;
    let mut i = start;
    while open > 0 {
        if code[i] {
            open += 1;
        } else {
            open -= 1;
        }
        i += 1;
    }
    i
}

pub(crate) fn leaf_count(code: &[bool]) -> usize {
    code.iter().filter(|&&b| !b).count()
}

impl Tree {
    pub fn leaf() -> Tree {
        Tree { code: vec![false] }
    }

    pub fn caret(left: &Tree, right: &Tree) -> Tree {
        let mut code = Vec::with_capacity(1 + left.code.len() + right.code.len());
        code.push(true);
        code.extend_from_slice(&left.code);
        code.extend_from_slice(&right.code);
        Tree { code }
    }

    /// Root caret plus `n - 1` right carets.
    pub fn all_right(n: usize) -> Result<Tree> {
        if n == 0 {
            return Err(Error::InvalidArgument("an all-right tree needs at least one caret".into()));
        }
        Ok(Tree::right_comb(n))
    }

    /// Like [`Tree::all_right`] but allows zero carets (a single leaf).
    pub(crate) fn right_comb(carets: usize) -> Tree {
        let mut code = Vec::with_capacity(2 * carets + 1);
        for _ in 0..carets {
            code.push(true);
            code.push(false);
        }
        code.push(false);
        Tree { code }
    }

    /// The perfect tree with `2^depth` leaves.
    pub fn complete(depth: u32) -> Tree {
        fn build(depth: u32, code: &mut Vec<bool>) {
            if depth == 0 {
                code.push(false);
            } else {
                code.push(true);
                build(depth - 1, code);
                build(depth - 1, code);
            }
        }
        let mut code = Vec::with_capacity((1usize << (depth + 1)) - 1);
        build(depth, &mut code);
        Tree { code }
    }

    pub(crate) fn from_code_unchecked(code: Vec<bool>) -> Tree {
        debug_assert!(!code.is_empty() && subtree_end(&code, 0) == code.len());
        Tree { code }
    }

    pub fn is_leaf(&self) -> bool {
        !self.code[0]
    }

    pub fn carets(&self) -> usize {
        self.code.len() / 2
    }

    pub fn leaves(&self) -> usize {
        self.carets() + 1
    }

    /// `(carets, leaves)`.
    pub fn counts(&self) -> (usize, usize) {
        (self.carets(), self.leaves())
    }

    /// Left and right subtrees of the root caret.
    pub fn children(&self) -> Option<(Tree, Tree)> {
        if self.is_leaf() {
            return None;
        }
        let mid = subtree_end(&self.code, 1);
        Some((Tree { code: self.code[1..mid].to_vec() }, Tree { code: self.code[mid..].to_vec() }))
    }

    /// Replaces leaf `leaf_index` by the tree `subtree`.
    pub fn graft(&self, leaf_index: usize, subtree: &Tree) -> Result<Tree> {
        let leaves = self.leaves();
        if leaf_index >= leaves {
            return Err(Error::IndexOutOfRange { index: leaf_index, size: leaves });
        }
        let leaf = [false];
        let pieces: Vec<&[bool]> =
            (0..leaves).map(|k| if k == leaf_index { subtree.code.as_slice() } else { &leaf[..] }).collect();
        Ok(self.expand_leaves(&pieces))
    }

    /// Replaces every leaf `k` by the encoded subtree `pieces[k]`.
    pub(crate) fn expand_leaves(&self, pieces: &[&[bool]]) -> Tree {
        debug_assert_eq!(pieces.len(), self.leaves());
        let extra: usize = pieces.iter().map(|p| p.len() - 1).sum();
        let mut code = Vec::with_capacity(self.code.len() + extra);
        let mut leaf = 0;
        for &bit in &self.code {
            if bit {
                code.push(true);
            } else {
                code.extend_from_slice(pieces[leaf]);
                leaf += 1;
            }
        }
        Tree { code }
    }

    /// For an expansion `big` of `self`, the subtree of `big` hanging at each
    /// leaf of `self`. `None` when `big` is not an expansion.
    pub(crate) fn leaf_pieces<'a>(&self, big: &'a Tree) -> Option<Vec<&'a [bool]>> {
        let mut pieces = Vec::with_capacity(self.leaves());
        let mut j = 0;
        for &bit in &self.code {
            if bit {
                if !big.code[j] {
                    return None;
                }
                j += 1;
            } else {
                let end = subtree_end(&big.code, j);
                pieces.push(&big.code[j..end]);
                j = end;
            }
        }
        Some(pieces)
    }

    /// True when `self` is obtained from `small` by grafting trees at leaves.
    pub fn is_expansion(&self, small: &Tree) -> bool {
        small.leaf_pieces(self).is_some()
    }

    /// The smallest tree that is an expansion of both inputs.
    pub fn minimal_common_expansion(&self, other: &Tree) -> Tree {
        fn merge(a: &[bool], i: &mut usize, b: &[bool], j: &mut usize, out: &mut Vec<bool>) {
            if !a[*i] {
                let end = subtree_end(b, *j);
                out.extend_from_slice(&b[*j..end]);
                *j = end;
                *i += 1;
            } else if !b[*j] {
                let end = subtree_end(a, *i);
                out.extend_from_slice(&a[*i..end]);
                *i = end;
                *j += 1;
            } else {
                out.push(true);
                *i += 1;
                *j += 1;
                merge(a, i, b, j, out);
                merge(a, i, b, j, out);
            }
        }
        let mut out = Vec::with_capacity(self.code.len().max(other.code.len()));
        merge(&self.code, &mut 0, &other.code, &mut 0, &mut out);
        Tree { code: out }
    }

    /// For each leaf, the length of the longest path of left edges starting at
    /// the leaf that avoids the right side of the tree (the root caret and the
    /// carets reached from it along right edges).
    pub fn leaf_exponents(&self) -> Vec<usize> {
        // `up` is the exponent a leaf at this position would get; `on_right`
        // says whether the node lies on the right side.
        fn walk(code: &[bool], pos: &mut usize, up: usize, on_right: bool, out: &mut Vec<usize>) {
            let is_caret = code[*pos];
            *pos += 1;
            if !is_caret {
                out.push(up);
                return;
            }
            let left_up = if on_right { 0 } else { up + 1 };
            walk(code, pos, left_up, false, out);
            walk(code, pos, 0, on_right, out);
        }
        let mut out = Vec::with_capacity(self.leaves());
        walk(&self.code, &mut 0, 0, true, &mut out);
        out
    }

    /// Leaf indices `k` such that leaves `k` and `k + 1` form an exposed caret.
    pub fn exposed_carets(&self) -> Vec<usize> {
        let mut found = Vec::new();
        let mut leaf = 0;
        for (i, &bit) in self.code.iter().enumerate() {
            if bit {
                if !self.code[i + 1] && !self.code[i + 2] {
                    found.push(leaf);
                }
            } else {
                leaf += 1;
            }
        }
        found
    }

    /// Removes the exposed carets whose left leaves are listed (sorted).
    pub(crate) fn collapse_carets(&self, left_leaves: &[usize]) -> Tree {
        let mut code = Vec::with_capacity(self.code.len() - 2 * left_leaves.len());
        let mut next = left_leaves.iter().peekable();
        let mut leaf = 0;
        let mut i = 0;
        while i < self.code.len() {
            if self.code[i] {
                if next.peek() == Some(&&leaf) && !self.code[i + 1] && !self.code[i + 2] {
                    next.next();
                    code.push(false);
                    leaf += 2;
                    i += 3;
                    continue;
                }
                code.push(true);
            } else {
                code.push(false);
                leaf += 1;
            }
            i += 1;
        }
        debug_assert!(next.peek().is_none(), "listed caret is not exposed");
        Tree { code }
    }

    /// Left endpoints of the dyadic subintervals of `[0, 1]` given by the leaves.
    pub fn leaf_starts(&self) -> Vec<Dyadic> {
        let mut starts = Vec::with_capacity(self.leaves());
        let mut depth = 0u32;
        let mut stack: Vec<bool> = Vec::new();
        let mut position = Dyadic::zero();
        for &bit in &self.code {
            if bit {
                stack.push(false);
                depth += 1;
            } else {
                starts.push(position.clone());
                position = &position + &Dyadic::new(1, depth);
                // climb to the next pending right child
                while let Some(seen_left) = stack.pop() {
                    if !seen_left {
                        stack.push(true);
                        break;
                    }
                    depth -= 1;
                }
            }
        }
        starts
    }

    /// Graphviz body statements for this tree, node names prefixed by `prefix`;
    /// leaf `k` is labelled `labels[k]`.
    pub(crate) fn dot_statements(&self, prefix: &str, labels: &[String]) -> String {
        let mut out = String::new();
        // open carets with the number of children still to attach
        let mut open: Vec<(usize, u8)> = Vec::new();
        let mut leaf = 0;
        for (id, &bit) in self.code.iter().enumerate() {
            if let Some((parent, remaining)) = open.last_mut() {
                out.push_str(&format!("  {prefix}{parent} -> {prefix}{id};\n"));
                *remaining -= 1;
                if *remaining == 0 {
                    open.pop();
                }
            }
            if bit {
                out.push_str(&format!("  {prefix}{id} [shape=point];\n"));
                open.push((id, 2));
            } else {
                out.push_str(&format!("  {prefix}{id} [shape=plaintext, label=\"{}\"];\n", labels[leaf]));
                leaf += 1;
            }
        }
        out
    }

    /// Graphviz rendering, leaves labelled by index.
    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = (0..self.leaves()).map(|k| k.to_string()).collect();
        format!("digraph tree {{\n{}}}\n", self.dot_statements("n", &labels))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `pending[i]` counts children still to print for the i-th open caret.
        let mut pending: Vec<u8> = Vec::new();
        for &bit in &self.code {
            if bit {
                f.write_str("(")?;
                pending.push(2);
                continue;
            }
            f.write_str(".")?;
            while let Some(top) = pending.last_mut() {
                *top -= 1;
                if *top == 1 {
                    f.write_str(",")?;
                    break;
                }
                f.write_str(")")?;
                pending.pop();
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({self})")
    }
}

/// Grammar: `tree := "." | "(" tree "," tree ")"`, whitespace ignored.
impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let expect = |pos: &mut usize, want: u8| -> Result<()> {
            skip_ws(pos);
            if bytes.get(*pos) == Some(&want) {
                *pos += 1;
                Ok(())
            } else {
                Err(Error::syntax(*pos, format!("expected `{}`", want as char)))
            }
        };
        // Each frame is a caret waiting for: 2 = left done, needs `,`; 1 = needs `)`.
        let mut code = Vec::new();
        let mut frames: Vec<u8> = Vec::new();
        loop {
            skip_ws(&mut pos);
            match bytes.get(pos).copied() {
                Some(b'.') => {
                    pos += 1;
                    code.push(false);
                }
                Some(b'(') => {
                    pos += 1;
                    code.push(true);
                    frames.push(2);
                    continue;
                }
                _ => return Err(Error::syntax(pos, "expected `.` or `(`")),
            }
            // a subtree just closed
            loop {
                match frames.last_mut() {
                    None => {
                        skip_ws(&mut pos);
                        if pos != bytes.len() {
                            return Err(Error::syntax(pos, "trailing input"));
                        }
                        return Ok(Tree { code });
                    }
                    Some(state @ 2) => {
                        *state = 1;
                        expect(&mut pos, b',')?;
                        break;
                    }
                    Some(_) => {
                        expect(&mut pos, b')')?;
                        frames.pop();
                    }
                }
            }
        }
    }
}
