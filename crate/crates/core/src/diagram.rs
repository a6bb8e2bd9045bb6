//! Marked tree pair diagrams.
//!
//! A [`MarkedPair`] `(source, target, mark)` with `n` leaves sends the dyadic
//! interval of source leaf `k` linearly onto the interval of target leaf
//! `(mark + k) mod n`. Equivalently the target leaves carry cyclic labels
//! starting with `0` at position `mark`, and source leaf `k` is paired with the
//! target leaf labelled `k`. Mark `0` characterizes elements of `F`.
//!
//! Products compose as maps: `v.multiply(&u)` is `v ∘ u`, so `u` acts first,
//! and a word is read as a composition with its rightmost letter acting first.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dyadic::PlMap;
use crate::error::{Error, Result};
use crate::tree::{leaf_count, Tree};
use crate::word::{Letter, PcqForm, Word};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedPair {
    source: Tree,
    target: Tree,
    mark: usize,
}

/// Labels of the target leaves, left to right, when position `mark` carries 0.
pub fn cyclic_labels(tree: &Tree, mark: usize) -> Result<Vec<usize>> {
    let n = tree.leaves();
    if mark >= n {
        return Err(Error::IndexOutOfRange { index: mark, size: n });
    }
    Ok((0..n).map(|p| (p + n - mark) % n).collect())
}

impl MarkedPair {
    /// Validates leaf counts and the mark; the result need not be reduced.
    pub fn new(source: Tree, target: Tree, mark: usize) -> Result<MarkedPair> {
        if source.leaves() != target.leaves() {
            return Err(Error::InvalidDiagram(format!(
                "source has {} leaves but target has {}",
                source.leaves(),
                target.leaves()
            )));
        }
        if mark >= target.leaves() {
            return Err(Error::IndexOutOfRange { index: mark, size: target.leaves() });
        }
        Ok(MarkedPair { source, target, mark })
    }

    pub fn identity() -> MarkedPair {
        MarkedPair { source: Tree::leaf(), target: Tree::leaf(), mark: 0 }
    }

    /// `x_i`: a right spine of `i` carets above the `x_0` pair
    /// `(.,(.,.)) → ((.,.),.)`.
    pub fn x(i: u32) -> MarkedPair {
        let i = i as usize;
        let source = Tree::right_comb(i + 2);
        let mut target_code = Vec::with_capacity(2 * i + 5);
        for _ in 0..i {
            target_code.extend([true, false]);
        }
        target_code.extend([true, true, false, false, false]);
        MarkedPair { source, target: Tree::from_code_unchecked(target_code), mark: 0 }
    }

    /// `c_i`: both trees `all_right(i + 1)`, mark on the rightmost leaf.
    pub fn c(i: u32) -> MarkedPair {
        let tree = Tree::right_comb(i as usize + 1);
        MarkedPair { source: tree.clone(), target: tree, mark: i as usize + 1 }
    }

    /// Reduced diagram of a generator power.
    pub fn generator_diagram(letter: &Letter) -> MarkedPair {
        match *letter {
            Letter::C { index, exp } => {
                let leaves = index as i64 + 2;
                let j = exp.rem_euclid(leaves);
                let tree = Tree::right_comb(index as usize + 1);
                let mark = ((leaves - j) % leaves) as usize;
                MarkedPair { source: tree.clone(), target: tree, mark }.reduce()
            }
            Letter::X { index, exp } => MarkedPair::x(index).pow(exp),
        }
    }

    pub fn source(&self) -> &Tree {
        &self.source
    }

    pub fn target(&self) -> &Tree {
        &self.target
    }

    pub fn mark(&self) -> usize {
        self.mark
    }

    pub fn leaves(&self) -> usize {
        self.source.leaves()
    }

    pub fn carets(&self) -> usize {
        self.source.carets()
    }

    pub fn is_identity(&self) -> bool {
        self.reduce() == MarkedPair::identity()
    }

    pub fn in_f(&self) -> bool {
        self.mark == 0
    }

    fn target_position(&self, label: usize) -> usize {
        (self.mark + label) % self.leaves()
    }

    /// Source carets (named by their left leaf) that can be cancelled against
    /// a target caret carrying the same labels.
    pub fn reducible_pairs(&self) -> Vec<usize> {
        let n = self.leaves();
        let target_exposed = self.target.exposed_carets();
        self.source
            .exposed_carets()
            .into_iter()
            .filter(|&k| {
                let p = self.target_position(k);
                p + 1 < n && target_exposed.binary_search(&p).is_ok()
            })
            .collect()
    }

    /// Cancels the pairs with the given source carets (sorted, all reducible).
    fn collapse(&self, pairs: &[usize]) -> MarkedPair {
        let mut target_carets: Vec<usize> = pairs.iter().map(|&k| self.target_position(k)).collect();
        target_carets.sort_unstable();
        let shift = target_carets.iter().filter(|&&p| p < self.mark).count();
        MarkedPair {
            source: self.source.collapse_carets(pairs),
            target: self.target.collapse_carets(&target_carets),
            mark: self.mark - shift,
        }
    }

    /// Cancels a single caret pair, named by the left leaf of the source caret.
    pub fn collapse_pair(&self, k: usize) -> Result<MarkedPair> {
        if !self.reducible_pairs().contains(&k) {
            return Err(Error::InvalidArgument(format!("source caret at leaf {k} is not reducible")));
        }
        Ok(self.collapse(&[k]))
    }

    pub fn is_reduced(&self) -> bool {
        self.reducible_pairs().is_empty()
    }

    /// The unique reduced diagram of the same element.
    pub fn reduce(&self) -> MarkedPair {
        let mut current = self.clone();
        loop {
            let pairs = current.reducible_pairs();
            if pairs.is_empty() {
                return current;
            }
            current = current.collapse(&pairs);
        }
    }

    /// The same element drawn with source tree `big`, an expansion of the
    /// current source; `None` if `big` is not an expansion.
    pub fn expand_source(&self, big: &Tree) -> Option<MarkedPair> {
        let pieces = self.source.leaf_pieces(big)?;
        let n = self.leaves();
        let by_position: Vec<&[bool]> = (0..n).map(|p| pieces[(p + n - self.mark) % n]).collect();
        let mark = by_position[..self.mark].iter().map(|piece| leaf_count(piece)).sum();
        Some(MarkedPair { source: big.clone(), target: self.target.expand_leaves(&by_position), mark })
    }

    /// The same element drawn with target tree `big`.
    pub fn expand_target(&self, big: &Tree) -> Option<MarkedPair> {
        Some(self.invert().expand_source(big)?.invert())
    }

    /// Unreduced diagram of `self ∘ u` over the minimal common expansion of
    /// `u`'s target and `self`'s source.
    pub fn multiply_unreduced(&self, u: &MarkedPair) -> MarkedPair {
        let middle = u.target.minimal_common_expansion(&self.source);
        let first = u.expand_target(&middle).expect("common expansion");
        let second = self.expand_source(&middle).expect("common expansion");
        let n = middle.leaves();
        MarkedPair { source: first.source, target: second.target, mark: (first.mark + second.mark) % n }
    }

    /// Reduced diagram of `self ∘ u` (`u` acts first).
    pub fn multiply(&self, u: &MarkedPair) -> MarkedPair {
        self.multiply_unreduced(u).reduce()
    }

    pub fn invert(&self) -> MarkedPair {
        let n = self.leaves();
        MarkedPair { source: self.target.clone(), target: self.source.clone(), mark: (n - self.mark) % n }
    }

    /// `self^k` by repeated squaring; negative powers invert.
    pub fn pow(&self, k: i64) -> MarkedPair {
        let mut base = if k < 0 { self.invert() } else { self.reduce() };
        let mut e = k.unsigned_abs();
        let mut acc = MarkedPair::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base);
            }
        }
        acc
    }

    /// Equality of group elements.
    pub fn equals(&self, other: &MarkedPair) -> bool {
        self.reduce() == other.reduce()
    }

    /// The circle homeomorphism: source leaf interval `k` goes linearly onto
    /// the target leaf interval labelled `k`.
    pub fn to_plmap(&self) -> PlMap {
        let source = self.source.leaf_starts();
        let target = self.target.leaf_starts();
        let points =
            source.into_iter().enumerate().map(|(k, start)| (start, target[self.target_position(k)].clone())).collect();
        PlMap::from_points(points).expect("diagram maps are valid circle maps")
    }

    /// Reads `p`, `c_i^j` and `q` off the diagram: `i + 1` is the caret count,
    /// `p` comes from the target leaf exponents, `q` from the source leaf
    /// exponents, and `j = (leaves − mark) mod leaves`. Applied to a reduced
    /// diagram this is the normal form.
    pub fn pcq_factorization(&self) -> PcqForm {
        fn part(tree: &Tree) -> Vec<(u32, u32)> {
            tree.leaf_exponents()
                .into_iter()
                .enumerate()
                .filter(|&(_, e)| e > 0)
                .map(|(k, e)| (k as u32, e as u32))
                .collect()
        }
        let n = self.leaves();
        let j = (n - self.mark) % n;
        let c = (j != 0).then(|| ((self.carets() - 1) as u32, j as u32));
        PcqForm::new(part(&self.target), c, part(&self.source)).expect("leaf exponents give a valid form")
    }

    /// The diagram whose factorization is `form`, with exactly `i + 1` carets
    /// when `c_i^j` is present (the minimal common size otherwise). Fails when
    /// `p` or `q` needs more carets than that.
    pub fn from_pcq(form: &PcqForm) -> Result<MarkedPair> {
        let positive = word_to_diagram(&form.p_word());
        let negative = word_to_diagram(&form.q_word());
        let needed = positive.carets().max(negative.carets());
        let (carets, mark) = match form.c() {
            Some((i, j)) => {
                let carets = i as usize + 1;
                if needed > carets {
                    return Err(Error::FactorizationCondition(format!(
                        "`{form}` needs {needed} carets but c_{i} has {carets}"
                    )));
                }
                (carets, (carets + 1 - j as usize) % (carets + 1))
            }
            None => (needed, 0),
        };
        let grow = |g: &MarkedPair| -> MarkedPair {
            let mut g = g.clone();
            let caret = Tree::right_comb(1);
            while g.carets() < carets {
                let last = g.leaves() - 1;
                g = MarkedPair {
                    source: g.source.graft(last, &caret).expect("leaf exists"),
                    target: g.target.graft(last, &caret).expect("leaf exists"),
                    mark: g.mark,
                };
            }
            g
        };
        let positive = grow(&positive);
        let negative = grow(&negative);
        if positive.source != Tree::right_comb(carets) || negative.target != Tree::right_comb(carets) {
            return Err(Error::Internal("positive part does not have an all-right source".into()));
        }
        Ok(MarkedPair { source: negative.source, target: positive.target, mark })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<MarkedPair> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDiagram(e.to_string()))
    }

    /// Graphviz rendering: source on the left with plain labels, target on the
    /// right with cyclic labels (the marked leaf shows `0`).
    pub fn to_dot(&self) -> String {
        let plain: Vec<String> = (0..self.leaves()).map(|k| k.to_string()).collect();
        let cyclic: Vec<String> =
            cyclic_labels(&self.target, self.mark).expect("valid mark").into_iter().map(|k| k.to_string()).collect();
        format!(
            "digraph pair {{\n  subgraph cluster_source {{\n  label=\"source\";\n{}  }}\n  \
             subgraph cluster_target {{\n  label=\"target\";\n{}  }}\n}}\n",
            self.source.dot_statements("s", &plain),
            self.target.dot_statements("t", &cyclic)
        )
    }
}

/// Reduced diagram of a word; the rightmost letter acts first.
pub fn word_to_diagram(word: &Word) -> MarkedPair {
    word.letters()
        .iter()
        .fold(MarkedPair::identity(), |acc, letter| acc.multiply(&MarkedPair::generator_diagram(letter)))
}

impl fmt::Display for MarkedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}, mark {}", self.source, self.target, self.mark)
    }
}

impl fmt::Debug for MarkedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MarkedPair({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    source: String,
    target: String,
    mark: usize,
}

impl Serialize for MarkedPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PairRepr { source: self.source.to_string(), target: self.target.to_string(), mark: self.mark }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MarkedPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PairRepr::deserialize(deserializer)?;
        let source = repr.source.parse().map_err(D::Error::custom)?;
        let target = repr.target.parse().map_err(D::Error::custom)?;
        MarkedPair::new(source, target, repr.mark).map_err(D::Error::custom)
    }
}
