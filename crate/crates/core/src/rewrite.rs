//! Normal forms in `T` by two independent routes.
//!
//! The geometric route reduces the diagram of a word and reads off its pcq
//! factorization; it is authoritative. The algebraic route only applies
//! relators: it collects all `c` letters into one power (using the
//! Pumping Lemma identities
//! `c_n^m = x_{n−m+1} c_{n+1}^m = c_{n+1}^{m+1} x_{m−1}^{−1}`), pumps until the
//! factorization condition holds, then applies caret-pair reductions until
//! none is left. [`normal_form_verified`] runs both and compares them.

use crate::diagram::{word_to_diagram, MarkedPair};
use crate::error::{Error, Result};
use crate::word::{Letter, PcqForm, Word};

pub fn parse_word(text: &str) -> Result<Word> {
    text.parse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `c_n^m = x_{n−m+1} c_{n+1}^m`
    Left,
    /// `c_n^m = c_{n+1}^{m+1} x_{m−1}^{−1}`
    Right,
}

/// One Pumping Lemma identity applied to `c_n^m`, `1 ≤ m < n + 2`.
pub fn pump(n: u32, m: u32, side: Side) -> Result<Word> {
    if m == 0 || m >= n + 2 {
        return Err(Error::InvalidArgument(format!("pumping c_{n}^{m} needs 1 ≤ m < {}", n + 2)));
    }
    Ok(Word::new(match side {
        Side::Left => vec![Letter::x(n + 1 - m, 1), Letter::c(n + 1, i64::from(m))],
        Side::Right => vec![Letter::c(n + 1, i64::from(m) + 1), Letter::x(m - 1, -1)],
    }))
}

/// Carets in the reduced diagram of the positive normal form `p`:
/// `max_k (i_k + r_k + … + r_n + 1)`, and 0 for the empty word.
pub fn n_carets_positive(p: &[(u32, u32)]) -> usize {
    let mut suffix = 0usize;
    let mut best = 0usize;
    for &(index, exp) in p.iter().rev() {
        suffix += exp as usize;
        best = best.max(index as usize + suffix + 1);
    }
    best
}

/// `i + 1 ≥ max(N(p), N(q))` for forms with `c_i^j`; vacuously true in `F`.
pub fn factorization_condition(form: &PcqForm) -> bool {
    match form.c() {
        None => true,
        Some((i, _)) => {
            let carets = i as usize + 1;
            n_carets_positive(form.p()) <= carets && n_carets_positive(form.q()) <= carets
        }
    }
}

// ---------------------------------------------------------------------------
// Algebraic rewriting on unit letters.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    /// `x_i` (true) or `x_i^{-1}` (false).
    X(u32, bool),
    /// `c_n^m` with `1 ≤ m < n + 2`.
    C(u32, u32),
}

fn c_token(n: u32, exp: i64) -> Option<Tok> {
    let m = exp.rem_euclid(i64::from(n) + 2) as u32;
    (m != 0).then_some(Tok::C(n, m))
}

fn tokens(word: &Word) -> Vec<Tok> {
    let mut out = Vec::new();
    for letter in word.letters() {
        match *letter {
            Letter::X { index, exp } => {
                out.extend(std::iter::repeat_n(Tok::X(index, exp > 0), exp.unsigned_abs() as usize))
            }
            Letter::C { index, exp } => out.extend(c_token(index, exp)),
        }
    }
    out
}

fn tokens_to_word(toks: &[Tok]) -> Word {
    let letters = toks
        .iter()
        .map(|t| match *t {
            Tok::X(i, positive) => Letter::x(i, if positive { 1 } else { -1 }),
            Tok::C(n, m) => Letter::c(n, i64::from(m)),
        })
        .collect();
    Word::new(letters).merged()
}

/// Sorts a word in the `x_i` into pq form with relator (1):
/// `x_j x_i = x_i x_{j+1}` for `i < j`, and its consequences for inverses.
fn sort_x(toks: &mut Vec<Tok>) {
    loop {
        let mut changed = false;
        let mut k = 0;
        while k + 1 < toks.len() {
            let (Tok::X(a, pa), Tok::X(b, pb)) = (toks[k], toks[k + 1]) else {
                unreachable!("sort_x only sees x letters")
            };
            let replacement = match (pa, pb) {
                (true, true) if a > b => Some(vec![Tok::X(b, true), Tok::X(a + 1, true)]),
                (false, false) if a < b => Some(vec![Tok::X(b + 1, false), Tok::X(a, false)]),
                (false, true) | (true, false) if a == b => Some(vec![]),
                (false, true) if b > a => Some(vec![Tok::X(b + 1, true), Tok::X(a, false)]),
                (false, true) => Some(vec![Tok::X(b, true), Tok::X(a + 1, false)]),
                _ => None,
            };
            if let Some(rep) = replacement {
                toks.splice(k..k + 2, rep);
                changed = true;
                k = k.saturating_sub(1);
            } else {
                k += 1;
            }
        }
        if !changed {
            return;
        }
    }
}

fn sort_range(toks: &mut Vec<Tok>, range: std::ops::Range<usize>) {
    let mut seg: Vec<Tok> = toks[range.clone()].to_vec();
    sort_x(&mut seg);
    toks.splice(range, seg);
}

fn c_at(toks: &[Tok], k: usize) -> (u32, u32) {
    match toks[k] {
        Tok::C(n, m) => (n, m),
        Tok::X(..) => unreachable!("expected a c letter at {k}"),
    }
}

/// Merges the adjacent `c` letters at `k` and `k + 1`, raising the smaller
/// index (first identity when it is on the left, second when on the right).
/// Returns the position of the merged letter, `None` if it cancelled.
fn merge_at(toks: &mut Vec<Tok>, mut k: usize) -> Option<usize> {
    loop {
        let (a, s) = c_at(toks, k);
        let (b, t) = c_at(toks, k + 1);
        if a < b {
            toks.splice(k..k + 1, [Tok::X(a + 1 - s, true), Tok::C(a + 1, s)]);
            k += 1;
        } else if a > b {
            toks.splice(k + 1..k + 2, [Tok::C(b + 1, t + 1), Tok::X(t - 1, false)]);
        } else {
            return match c_token(a, i64::from(s + t)) {
                Some(c) => {
                    toks.splice(k..k + 2, [c]);
                    Some(k)
                }
                None => {
                    toks.drain(k..k + 2);
                    None
                }
            };
        }
    }
}

/// Moves the positive letter at `k + 1` to the left of the `c` letter at `k`.
fn pass_positive(toks: &mut Vec<Tok>, mut k: usize) -> Option<usize> {
    let Tok::X(x, true) = toks[k + 1] else { unreachable!("expected a positive letter") };
    loop {
        let (n, m) = c_at(toks, k);
        if x > n {
            toks.splice(k..k + 1, [Tok::X(n + 1 - m, true), Tok::C(n + 1, m)]);
            k += 1;
            continue;
        }
        let rest = (m > 1).then_some(Tok::C(n, m - 1));
        if x == 0 {
            // relator (3): c_n x_0 = c_{n+1}^2
            let rep: Vec<Tok> = rest.into_iter().chain([Tok::C(n + 1, 2)]).collect();
            toks.splice(k..k + 2, rep);
            return if m > 1 { merge_at(toks, k) } else { Some(k) };
        }
        // relator (2): c_n x_x = x_{x−1} c_{n+1}
        match rest {
            None => {
                toks.splice(k..k + 2, [Tok::X(x - 1, true), Tok::C(n + 1, 1)]);
                return Some(k + 1);
            }
            Some(rest) => {
                toks.splice(k..k + 2, [rest, Tok::X(x - 1, true), Tok::C(n + 1, 1)]);
                let c = pass_positive(toks, k)?;
                return merge_at(toks, c);
            }
        }
    }
}

/// Moves the negative letter at `k − 1` to the right of the `c` letter at `k`.
fn pass_negative(toks: &mut Vec<Tok>, k: usize) -> Option<usize> {
    let Tok::X(x, false) = toks[k - 1] else { unreachable!("expected a negative letter") };
    loop {
        let (n, l) = c_at(toks, k);
        if x > n {
            toks.splice(k..k + 1, [Tok::C(n + 1, l + 1), Tok::X(l - 1, false)]);
            continue;
        }
        let rest = (l > 1).then_some(Tok::C(n, l - 1));
        let c = k - 1;
        if x == n {
            // relator (4): x_n^{-1} c_n = c_{n+1}
            let rep: Vec<Tok> = std::iter::once(Tok::C(n + 1, 1)).chain(rest).collect();
            toks.splice(c..k + 1, rep);
            return if l > 1 { merge_at(toks, c) } else { Some(c) };
        }
        // relator (2): x_x^{-1} c_n = c_{n+1} x_{x+1}^{-1}
        match rest {
            None => {
                toks.splice(c..k + 1, [Tok::C(n + 1, 1), Tok::X(x + 1, false)]);
                return Some(c);
            }
            Some(rest) => {
                toks.splice(c..k + 1, [Tok::C(n + 1, 1), Tok::X(x + 1, false), rest]);
                let inner = pass_negative(toks, c + 2)?;
                debug_assert_eq!(inner, c + 1);
                return merge_at(toks, c);
            }
        }
    }
}

fn c_positions(toks: &[Tok]) -> Vec<usize> {
    toks.iter().enumerate().filter(|(_, t)| matches!(t, Tok::C(..))).map(|(k, _)| k).collect()
}

struct Tracer {
    trace: Vec<Word>,
}

impl Tracer {
    fn record(&mut self, toks: &[Tok]) {
        let word = tokens_to_word(toks);
        if self.trace.last() != Some(&word) {
            self.trace.push(word);
        }
    }
}

fn is_positive(t: Tok) -> bool {
    matches!(t, Tok::X(_, true))
}

fn is_negative(t: Tok) -> bool {
    matches!(t, Tok::X(_, false))
}

/// Combines the first two `c` letters into one power.
fn combine_first_pair(toks: &mut Vec<Tok>, tracer: &mut Tracer) {
    let cs = c_positions(toks);
    let (mut a, b) = (cs[0], cs[1]);
    sort_range(toks, a + 1..b);
    tracer.record(toks);
    while toks.get(a + 1).copied().is_some_and(is_positive) {
        match pass_positive(toks, a) {
            Some(c) => a = c,
            None => return tracer.record(toks),
        }
        tracer.record(toks);
    }
    let mut b = a + 1 + toks[a + 1..].iter().position(|t| matches!(t, Tok::C(..))).expect("second c");
    while is_negative(toks[b - 1]) {
        match pass_negative(toks, b) {
            Some(c) => b = c,
            None => return tracer.record(toks),
        }
        tracer.record(toks);
    }
    debug_assert_eq!(b, a + 1);
    merge_at(toks, a);
    tracer.record(toks);
}

/// Moves the letters around the single `c` at `a` into place.
fn settle_single(toks: &mut Vec<Tok>, mut a: usize, tracer: &mut Tracer) -> bool {
    let len = toks.len();
    sort_range(toks, a + 1..len);
    let before = toks.len();
    sort_range(toks, 0..a);
    a -= before - toks.len();
    tracer.record(toks);
    while toks.get(a + 1).copied().is_some_and(is_positive) {
        match pass_positive(toks, a) {
            Some(c) => a = c,
            None => return false,
        }
        tracer.record(toks);
    }
    let before = toks.len();
    sort_range(toks, 0..a);
    a -= before - toks.len();
    tracer.record(toks);
    while a > 0 && is_negative(toks[a - 1]) {
        match pass_negative(toks, a) {
            Some(c) => a = c,
            None => return false,
        }
        tracer.record(toks);
    }
    let len = toks.len();
    sort_range(toks, a + 1..len);
    sort_range(toks, 0..a);
    tracer.record(toks);
    true
}

fn form_from_tokens(toks: &[Tok]) -> PcqForm {
    PcqForm::from_word(&tokens_to_word(toks)).expect("rewriting ends in pcq form")
}

/// Result of the algebraic rewriting, with the merged word after each step.
#[derive(Clone, Debug)]
pub struct AlgebraicRun {
    pub form: PcqForm,
    pub trace: Vec<Word>,
}

/// Rewrites a word into algebraic pcq form using relators only. The result
/// need not satisfy the factorization condition.
pub fn to_pcq_algebraic(word: &Word) -> PcqForm {
    to_pcq_algebraic_traced(word).form
}

pub fn to_pcq_algebraic_traced(word: &Word) -> AlgebraicRun {
    let mut toks = tokens(word);
    let mut tracer = Tracer { trace: Vec::new() };
    tracer.record(&toks);
    loop {
        let cs = c_positions(&toks);
        match cs.len() {
            0 => {
                sort_x(&mut toks);
                tracer.record(&toks);
                break;
            }
            1 => {
                if settle_single(&mut toks, cs[0], &mut tracer) {
                    break;
                }
            }
            _ => combine_first_pair(&mut toks, &mut tracer),
        }
    }
    AlgebraicRun { form: form_from_tokens(&toks), trace: tracer.trace }
}

fn sorted_part(toks: Vec<Tok>) -> Vec<(u32, u32)> {
    let mut toks = toks;
    sort_x(&mut toks);
    let mut out: Vec<(u32, u32)> = Vec::new();
    for t in toks {
        let Tok::X(i, _) = t else { unreachable!() };
        match out.last_mut() {
            Some((j, e)) if *j == i => *e += 1,
            _ => out.push((i, 1)),
        }
    }
    out
}

fn expand_part(part: &[(u32, u32)], positive: bool) -> Vec<Tok> {
    part.iter().flat_map(|&(i, e)| std::iter::repeat_n(Tok::X(i, positive), e as usize)).collect()
}

/// Raises the `c` index with the Pumping Lemma until the factorization
/// condition holds: the second identity while `p` needs more carets, the
/// first while `q` does. `None` if the pump budget runs out.
pub fn pump_to_factorization(form: &PcqForm) -> Option<PcqForm> {
    let Some((i0, _)) = form.c() else { return Some(form.clone()) };
    let budget = n_carets_positive(form.p()) + n_carets_positive(form.q()) + i0 as usize + 1 + 4;
    let mut current = form.clone();
    for _ in 0..=budget {
        if factorization_condition(&current) {
            return Some(current);
        }
        let (i, j) = current.c().expect("c stays present");
        let carets = i as usize + 1;
        if n_carets_positive(current.p()) > carets {
            // c_i^j = c_{i+1}^{j+1} x_{j−1}^{-1}
            let mut q = vec![Tok::X(j - 1, false)];
            q.extend(expand_part(current.q(), false).into_iter().rev());
            let mut q = sorted_part(q);
            q.reverse();
            current = PcqForm::new(current.p().to_vec(), Some((i + 1, j + 1)), q).ok()?;
        } else {
            // c_i^j = x_{i−j+1} c_{i+1}^j
            let mut p = expand_part(current.p(), true);
            p.push(Tok::X(i + 1 - j, true));
            current = PcqForm::new(sorted_part(p), Some((i + 1, j)), current.q().to_vec()).ok()?;
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Caret-pair reductions on pcq forms.

/// Leaf exponent vector of length `len` for a part.
fn exponents(part: &[(u32, u32)], len: usize) -> Vec<u32> {
    let mut v = vec![0; len];
    for &(i, e) in part {
        v[i as usize] = e;
    }
    v
}

fn part_from(v: &[u32]) -> Vec<(u32, u32)> {
    v.iter().enumerate().filter(|(_, &e)| e > 0).map(|(k, &e)| (k as u32, e)).collect()
}

/// Cancels the exposed caret whose left leaf is `k`: the merged leaf keeps
/// one less left edge.
fn drop_interior(v: &mut Vec<u32>, k: usize) {
    v[k] -= 1;
    v.remove(k + 1);
}

/// Cancels the last right caret.
fn drop_last(v: &mut Vec<u32>) {
    v.pop();
}

struct Reduction {
    form: PcqForm,
    /// Source caret (left leaf) of the cancelled pair.
    source_caret: usize,
}

fn find_reduction(form: &PcqForm) -> Option<Reduction> {
    let at = |v: &[u32], k: usize| v.get(k).copied().unwrap_or(0);
    match form.c() {
        None => {
            // Brown–Geoghegan: x_k^r … x_k^{-s} with neither x_{k+1} nor x_{k+1}^{-1}
            let len = n_carets_positive(form.p()).max(n_carets_positive(form.q())) + 1;
            let (mut ep, mut eq) = (exponents(form.p(), len), exponents(form.q(), len));
            let k = (0..len.saturating_sub(1))
                .find(|&k| ep[k] >= 1 && eq[k] >= 1 && at(&ep, k + 1) == 0 && at(&eq, k + 1) == 0)?;
            drop_interior(&mut ep, k);
            drop_interior(&mut eq, k);
            let form = PcqForm::new(part_from(&ep), None, part_from(&eq)).expect("valid");
            Some(Reduction { form, source_caret: k })
        }
        Some((i, j)) => {
            let (i, j) = (i as usize, j as usize);
            let len = i + 2;
            let (mut ep, mut eq) = (exponents(form.p(), len), exponents(form.q(), len));
            let interior = |v: &[u32], k: usize| v[k] >= 1 && v[k + 1] == 0;
            let last_exposed_p = n_carets_positive(form.p()) <= i;
            let last_exposed_q = n_carets_positive(form.q()) <= i;
            // Candidate cancellations, named by the source caret's left leaf.
            // The target caret sits at position `(k − j) mod (i + 2)`; either
            // caret may be an interior one (leaf exponents `≥ 1, 0`) or the
            // last right caret, which is exposed only when the part needs at
            // most `i` carets.
            #[derive(Clone, Copy)]
            enum Case {
                Interior,
                SourceLast,
                Wrapped,
                TargetLast,
            }
            let candidates = [
                (j..i).find(|&k| interior(&eq, k) && interior(&ep, k - j)).map(|k| (k, Case::Interior)),
                (j <= i && last_exposed_q && interior(&ep, i - j)).then_some((i, Case::SourceLast)),
                (0..j.saturating_sub(2))
                    .find(|&k| interior(&eq, k) && interior(&ep, k + i + 2 - j))
                    .map(|k| (k, Case::Wrapped)),
                (j >= 2 && last_exposed_p && interior(&eq, j - 2)).then(|| (j - 2, Case::TargetLast)),
            ];
            let (source_caret, case) = candidates.into_iter().flatten().min_by_key(|&(k, _)| k)?;
            let new_j = match case {
                Case::Interior => {
                    drop_interior(&mut ep, source_caret - j);
                    drop_interior(&mut eq, source_caret);
                    j
                }
                Case::SourceLast => {
                    drop_interior(&mut ep, i - j);
                    drop_last(&mut eq);
                    j
                }
                Case::Wrapped => {
                    drop_interior(&mut ep, source_caret + i + 2 - j);
                    drop_interior(&mut eq, source_caret);
                    j - 1
                }
                Case::TargetLast => {
                    drop_last(&mut ep);
                    drop_interior(&mut eq, j - 2);
                    j - 1
                }
            };
            let c = Some(((i - 1) as u32, new_j as u32));
            let form = PcqForm::new(part_from(&ep), c, part_from(&eq)).expect("valid");
            Some(Reduction { form, source_caret })
        }
    }
}

/// One caret-pair reduction of a form satisfying the factorization
/// condition, confirmed on the form's diagram. `Ok(None)` when the form's
/// diagram is reduced.
pub fn reduction_step(form: &PcqForm) -> Result<Option<PcqForm>> {
    if !factorization_condition(form) {
        return Err(Error::FactorizationCondition(format!("`{form}`")));
    }
    let diagram = MarkedPair::from_pcq(form)?;
    let Some(reduction) = find_reduction(form) else {
        if !diagram.is_reduced() {
            return Err(Error::Internal(format!("`{form}`: diagram reducible but no algebraic case applies")));
        }
        return Ok(None);
    };
    let collapsed = diagram.collapse_pair(reduction.source_caret).map_err(|_| {
        Error::Internal(format!("`{form}`: algebraic reduction at leaf {} is not geometric", reduction.source_caret))
    })?;
    if collapsed.pcq_factorization() != reduction.form {
        return Err(Error::Internal(format!(
            "`{form}`: reduction gave `{}`, diagram gives `{}`",
            reduction.form,
            collapsed.pcq_factorization()
        )));
    }
    Ok(Some(reduction.form))
}

/// The unique normal form: pcq factorization of the reduced diagram.
pub fn normal_form(word: &Word) -> PcqForm {
    word_to_diagram(word).pcq_factorization()
}

/// Normal form of an element of `F`; rejects words containing `c` letters.
pub fn normal_form_f(word: &Word) -> Result<PcqForm> {
    if word.has_c() {
        return Err(Error::InvalidArgument(format!("`{word}` contains c letters")));
    }
    Ok(normal_form(word))
}

/// Normal form by relator rewriting alone: algebraic pcq form, pumping,
/// reductions. `None` if pumping exhausted its budget.
pub fn normal_form_algebraic(word: &Word) -> Result<Option<PcqForm>> {
    let Some(mut form) = pump_to_factorization(&to_pcq_algebraic(word)) else { return Ok(None) };
    while let Some(next) = reduction_step(&form)? {
        form = next;
    }
    Ok(Some(form))
}

/// Both pipelines and the analytic oracle.
#[derive(Clone, Debug)]
pub struct Verification {
    /// Authoritative geometric normal form.
    pub form: PcqForm,
    /// Algebraic result; `None` when it fell back on the pump budget.
    pub algebraic: Option<PcqForm>,
    /// Error raised inside the algebraic pipeline, if any.
    pub algebraic_error: Option<Error>,
    /// The word and its normal form define the same circle map.
    pub oracle_agrees: bool,
}

impl Verification {
    pub fn algebraic_agrees(&self) -> bool {
        self.algebraic.as_ref() == Some(&self.form)
    }

    pub fn ok(&self) -> bool {
        self.oracle_agrees && self.algebraic_error.is_none() && self.algebraic.as_ref().is_none_or(|f| *f == self.form)
    }
}

pub fn normal_form_verified(word: &Word) -> Verification {
    let form = normal_form(word);
    let (algebraic, algebraic_error) = match normal_form_algebraic(word) {
        Ok(f) => (f, None),
        Err(e) => (None, Some(e)),
    };
    let oracle_agrees = word.analytic_map() == form.to_word().analytic_map();
    Verification { form, algebraic, algebraic_error, oracle_agrees }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        text.parse().unwrap()
    }

    fn f(text: &str) -> PcqForm {
        text.parse().unwrap()
    }

    #[test]
    fn pump_examples() {
        assert_eq!(pump(1, 1, Side::Left).unwrap().to_string(), "x1 c2");
        assert_eq!(pump(1, 1, Side::Right).unwrap().to_string(), "c2^2 x0^-1");
        assert_eq!(pump(4, 3, Side::Right).unwrap().to_string(), "c5^4 x2^-1");
        assert!(pump(1, 3, Side::Left).is_err());
        assert!(pump(1, 0, Side::Right).is_err());
    }

    #[test]
    fn caret_formula_examples() {
        assert_eq!(n_carets_positive(f("x0 x2^3 x4 x8^2").p()), 11);
        assert_eq!(n_carets_positive(&[(1, 1)]), 3);
        assert_eq!(n_carets_positive(&[]), 0);
    }

    #[test]
    fn factorization_condition_examples() {
        assert!(!factorization_condition(&f("x1 c1")));
        assert!(factorization_condition(&f("x1 c2 x1^-1")));
        assert!(factorization_condition(&f("x0 x5^3 x1^-1")));
    }

    #[test]
    fn sorting_uses_relator_one() {
        let mut toks = tokens(&w("x1 x0"));
        sort_x(&mut toks);
        assert_eq!(tokens_to_word(&toks).to_string(), "x0 x2");
        let mut toks = tokens(&w("x0^-1 x1 x2^2"));
        sort_x(&mut toks);
        assert_eq!(tokens_to_word(&toks).to_string(), "x2 x3^2 x0^-1");
    }

    #[test]
    fn worked_example_trace() {
        let run = to_pcq_algebraic_traced(&w("x0^-1 c1 x3 c3^2 x1^-1"));
        assert_eq!(run.form.to_string(), "x2 x3^2 c5^4 x4^-1 x1^-2");
        let trace: Vec<String> = run.trace.iter().map(ToString::to_string).collect();
        assert!(trace.contains(&"x0^-1 x1 x2^2 c4 c3^2 x1^-1".to_string()), "{trace:?}");
        assert!(trace.contains(&"x0^-1 x1 x2^2 c4^4 x1^-2".to_string()), "{trace:?}");
    }

    #[test]
    fn relator_three_then_pump() {
        assert_eq!(to_pcq_algebraic(&w("c4^3 x1")).to_string(), "x4 c5^4");
    }

    #[test]
    fn pcq_input_is_unchanged() {
        for text in ["x2 x3^2 c5^4 x4^-1 x1^-2", "x1 c1", "c3^2", "x0 x2^-1", ""] {
            assert_eq!(to_pcq_algebraic(&w(text)).to_string(), text);
        }
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduction_step(&f("x0 c2^2 x0^-1")).unwrap(), Some(f("x0 c1")));
        assert_eq!(reduction_step(&f("x1 c2 x1^-1")).unwrap(), None);
        assert_eq!(reduction_step(&f("x0 x2^-1")).unwrap(), None);
        assert_eq!(reduction_step(&f("x0 x0^-1")).unwrap(), Some(PcqForm::identity()));
        assert!(matches!(reduction_step(&f("x1 c1")), Err(Error::FactorizationCondition(_))));
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(normal_form(&w("x0^-1 c1 x3 c3^2 x1^-1")).to_string(), "x2 x3^2 c5^4 x4^-1 x1^-2");
        assert!(normal_form(&w("c1 c1 c1")).is_identity());
        assert_eq!(normal_form_f(&w("x1 x0")).unwrap().to_string(), "x0 x2");
        assert!(normal_form_f(&w("x0 x1 x1^-1 x0^-1")).unwrap().is_identity());
        assert!(normal_form_f(&w("c1")).is_err());
    }

    #[test]
    fn pipelines_agree_on_examples() {
        for text in ["x1 c1", "c1 x1^-1", "x5 c1", "x0^-1 c1 x3 c3^2 x1^-1", "c0 c1 x2 c3^-1", "x1 x0^-1 x3"] {
            let v = normal_form_verified(&w(text));
            assert!(v.ok(), "{text}: {v:?}");
            assert!(v.algebraic_agrees(), "{text}: {v:?}");
        }
    }

    #[test]
    fn left_pump_of_full_power() {
        // c1^2 pumps on the left to x0 c2^2
        let form = f("c1^2 x3^-1");
        let pumped = pump_to_factorization(&form).unwrap();
        assert!(factorization_condition(&pumped));
        assert_eq!(word_to_diagram(&pumped.to_word()), word_to_diagram(&form.to_word()));
    }
}
