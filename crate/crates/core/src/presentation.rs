//! Relators of the two presentations of `T`, as words equal to the identity.

use crate::diagram::word_to_diagram;
use crate::word::{Letter, Word};

#[derive(Clone, Debug)]
pub struct Relator {
    pub name: String,
    /// A word that must equal the identity.
    pub word: Word,
}

impl Relator {
    fn equation(name: String, lhs: Vec<Letter>, rhs: Vec<Letter>) -> Relator {
        let word = Word::new(lhs).concat(&Word::new(rhs).inverse());
        Relator { name, word }
    }

    /// Checks the relator on diagrams and on analytic maps.
    pub fn check(&self) -> RelatorCheck {
        RelatorCheck {
            diagram: word_to_diagram(&self.word).is_identity(),
            analytic: self.word.analytic_map().is_identity(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelatorCheck {
    pub diagram: bool,
    pub analytic: bool,
}

impl RelatorCheck {
    pub fn passed(&self) -> bool {
        self.diagram && self.analytic
    }
}

fn x(i: u32, e: i64) -> Letter {
    Letter::x(i, e)
}

fn c(i: u32, e: i64) -> Letter {
    Letter::c(i, e)
}

fn commutator(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    let (a, b) = (Word::new(a.to_vec()), Word::new(b.to_vec()));
    a.concat(&b).concat(&a.inverse()).concat(&b.inverse()).letters().to_vec()
}

/// The six relators over `{x_0, x_1, c = c_1}`, with `c_2 = x_0^{-1} c x_1`,
/// `c_3 = x_0^{-2} c x_1^2` and `x_2 = x_0^{-1} x_1 x_0` substituted.
pub fn finite_relators() -> Vec<Relator> {
    let c2 = vec![x(0, -1), c(1, 1), x(1, 1)];
    let c3 = vec![x(0, -2), c(1, 1), x(1, 2)];
    let x2 = vec![x(0, -1), x(1, 1), x(0, 1)];
    vec![
        Relator { name: "[x0 x1^-1, x0^-1 x1 x0]".into(), word: Word::new(commutator(&[x(0, 1), x(1, -1)], &x2)) },
        Relator {
            name: "[x0 x1^-1, x0^-2 x1 x0^2]".into(),
            word: Word::new(commutator(&[x(0, 1), x(1, -1)], &[x(0, -2), x(1, 1), x(0, 2)])),
        },
        Relator::equation("x1 c3 = c2 x2".into(), [vec![x(1, 1)], c3].concat(), [c2.clone(), x2].concat()),
        Relator::equation("c x0 = c2^2".into(), vec![c(1, 1), x(0, 1)], [c2.clone(), c2.clone()].concat()),
        Relator::equation("x1 c2 = c".into(), [vec![x(1, 1)], c2].concat(), vec![c(1, 1)]),
        Relator { name: "c^3 = 1".into(), word: Word::new(vec![c(1, 3)]) },
    ]
}

/// The five relator families over `{x_i, c_i}` with all indices at most
/// `max_index`.
pub fn infinite_relators(max_index: u32) -> Vec<Relator> {
    let mut out = Vec::new();
    for j in 0..=max_index {
        for i in 0..j {
            out.push(Relator::equation(
                format!("x{j} x{i} = x{i} x{}", j + 1),
                vec![x(j, 1), x(i, 1)],
                vec![x(i, 1), x(j + 1, 1)],
            ));
        }
    }
    for n in 0..=max_index {
        for k in 0..n {
            out.push(Relator::equation(
                format!("x{k} c{} = c{n} x{}", n + 1, k + 1),
                vec![x(k, 1), c(n + 1, 1)],
                vec![c(n, 1), x(k + 1, 1)],
            ));
        }
    }
    for n in 0..=max_index {
        out.push(Relator::equation(format!("c{n} x0 = c{}^2", n + 1), vec![c(n, 1), x(0, 1)], vec![c(n + 1, 2)]));
    }
    for n in 0..=max_index {
        out.push(Relator::equation(format!("c{n} = x{n} c{}", n + 1), vec![c(n, 1)], vec![x(n, 1), c(n + 1, 1)]));
    }
    for n in 0..=max_index {
        // spelled out letter by letter so the exponent is not reduced away
        let letters = vec![c(n, 1); n as usize + 2];
        out.push(Relator { name: format!("c{n}^{} = 1", n + 2), word: Word::new(letters) });
    }
    out
}
