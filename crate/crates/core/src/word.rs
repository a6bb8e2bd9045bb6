//! Words in the infinite generating set `{x_i, c_i}` and words in pcq form.

use std::fmt;
use std::str::FromStr;

use crate::dyadic::PlMap;
use crate::error::{Error, Result};

/// A generator power `x_index^exp` or `c_index^exp`, `exp ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    X { index: u32, exp: i64 },
    C { index: u32, exp: i64 },
}

impl Letter {
    pub fn x(index: u32, exp: i64) -> Letter {
        debug_assert!(exp != 0);
        Letter::X { index, exp }
    }

    pub fn c(index: u32, exp: i64) -> Letter {
        debug_assert!(exp != 0);
        Letter::C { index, exp }
    }

    pub fn index(&self) -> u32 {
        match *self {
            Letter::X { index, .. } | Letter::C { index, .. } => index,
        }
    }

    pub fn exp(&self) -> i64 {
        match *self {
            Letter::X { exp, .. } | Letter::C { exp, .. } => exp,
        }
    }

    pub fn is_c(&self) -> bool {
        matches!(self, Letter::C { .. })
    }

    pub fn inverse(&self) -> Letter {
        match *self {
            Letter::X { index, exp } => Letter::X { index, exp: -exp },
            Letter::C { index, exp } => Letter::C { index, exp: -exp },
        }
    }

    fn with_exp(&self, exp: i64) -> Letter {
        match *self {
            Letter::X { index, .. } => Letter::X { index, exp },
            Letter::C { index, .. } => Letter::C { index, exp },
        }
    }

    fn same_generator(&self, other: &Letter) -> bool {
        self.is_c() == other.is_c() && self.index() == other.index()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.is_c() { 'c' } else { 'x' };
        match self.exp() {
            1 => write!(f, "{name}{}", self.index()),
            exp => write!(f, "{name}{}^{exp}", self.index()),
        }
    }
}

/// A finite product of generator powers, read as a composition of maps: the
/// rightmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        assert!(letters.iter().all(|l| l.exp() != 0), "letters must have nonzero exponents");
        Word { letters }
    }

    pub fn identity() -> Word {
        Word::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|l| l.exp().unsigned_abs()).sum()
    }

    pub fn has_c(&self) -> bool {
        self.letters.iter().any(Letter::is_c)
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(Letter::inverse).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Merges adjacent powers of the same generator and drops zero exponents.
    /// Exponents of `c_i` are not reduced modulo the order.
    pub fn merged(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for letter in &self.letters {
            match out.last_mut() {
                Some(last) if last.same_generator(letter) => {
                    let exp = last.exp() + letter.exp();
                    if exp == 0 {
                        out.pop();
                    } else {
                        *last = last.with_exp(exp);
                    }
                }
                _ => out.push(*letter),
            }
        }
        Word { letters: out }
    }

    /// The homeomorphism of the circle this word denotes, composed from the
    /// analytic generator maps. Independent of the tree pair diagram code.
    pub fn analytic_map(&self) -> PlMap {
        let mut map = PlMap::identity();
        for letter in &self.letters {
            let (generator, exp) = match *letter {
                Letter::X { index, exp } => (PlMap::x_map(index), exp),
                Letter::C { index, exp } => (PlMap::c_map(index), exp.rem_euclid(i64::from(index) + 2)),
            };
            let step = if exp < 0 { generator.inverse() } else { generator };
            for _ in 0..exp.unsigned_abs() {
                map = map.compose(&step);
            }
        }
        map
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word::new(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, letter) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// Grammar: `word := (letter)*`, `letter := ("x"|"c") int ("^" int)?`,
/// letters separated by whitespace. A lone `1` denotes the empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        let mut pos = 0;
        for token in s.split_inclusive(char::is_whitespace) {
            let body = token.trim_end();
            if !body.is_empty() {
                letters.push(parse_letter(body, pos)?);
            }
            pos += token.len();
        }
        Ok(Word { letters })
    }
}

fn parse_letter(token: &str, at: usize) -> Result<Letter> {
    let is_c = match token.as_bytes()[0] {
        b'x' => false,
        b'c' => true,
        _ => return Err(Error::syntax(at, format!("expected `x` or `c`, found `{token}`"))),
    };
    let rest = &token[1..];
    let (index_text, exp_text) = match rest.split_once('^') {
        Some((i, e)) => (i, Some(e)),
        None => (rest, None),
    };
    if index_text.is_empty() || !index_text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::syntax(at + 1, format!("expected a generator index in `{token}`")));
    }
    let index: u32 = index_text.parse().map_err(|_| Error::syntax(at + 1, "generator index too large"))?;
    let exp_at = at + 2 + index_text.len();
    let exp = match exp_text {
        None => 1,
        Some(text) => text.parse::<i64>().map_err(|_| Error::syntax(exp_at, format!("bad exponent `{text}`")))?,
    };
    if exp == 0 {
        return Err(Error::syntax(exp_at, "exponent 0 is not allowed"));
    }
    Ok(if is_c { Letter::c(index, exp) } else { Letter::x(index, exp) })
}

/// A word `x_{i_1}^{r_1}…x_{i_n}^{r_n} · c_i^j · x_{j_m}^{-s_m}…x_{j_1}^{-s_1}`.
///
/// `p` and `q` are stored as `(index, exponent)` pairs with strictly
/// increasing indices and positive exponents; `q` means the inverse powers.
/// The middle part is absent exactly for elements of `F`; when present,
/// `1 ≤ j < i + 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PcqForm {
    p: Vec<(u32, u32)>,
    c: Option<(u32, u32)>,
    q: Vec<(u32, u32)>,
}

fn check_part(part: &[(u32, u32)], name: &str) -> Result<()> {
    if part.iter().any(|&(_, r)| r == 0) {
        return Err(Error::InvalidArgument(format!("{name}: exponents must be positive")));
    }
    if part.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::InvalidArgument(format!("{name}: indices must be strictly increasing")));
    }
    Ok(())
}

impl PcqForm {
    pub fn new(p: Vec<(u32, u32)>, c: Option<(u32, u32)>, q: Vec<(u32, u32)>) -> Result<PcqForm> {
        check_part(&p, "p")?;
        check_part(&q, "q")?;
        if let Some((i, j)) = c {
            if j == 0 || j >= i + 2 {
                return Err(Error::InvalidArgument(format!("c_{i}^{j}: need 1 ≤ j < {}", i + 2)));
            }
        }
        Ok(PcqForm { p, c, q })
    }

    pub fn identity() -> PcqForm {
        PcqForm::default()
    }

    /// Reads a word that is already laid out as `p c q`.
    pub fn from_word(word: &Word) -> Result<PcqForm> {
        let shape_error = || Error::InvalidArgument(format!("`{word}` is not in pcq form"));
        let mut p = Vec::new();
        let mut q = Vec::new();
        let mut c = None;
        let mut stage = 0;
        for letter in word.letters() {
            match *letter {
                Letter::X { index, exp } if exp > 0 && stage == 0 => p.push((index, exp as u32)),
                Letter::C { index, exp } if stage == 0 && exp > 0 => {
                    c = Some((index, exp as u32));
                    stage = 1;
                }
                Letter::X { index, exp } if exp < 0 => {
                    stage = 2;
                    q.push((index, exp.unsigned_abs() as u32));
                }
                _ => return Err(shape_error()),
            }
        }
        q.reverse();
        PcqForm::new(p, c, q).map_err(|_| shape_error())
    }

    pub fn p(&self) -> &[(u32, u32)] {
        &self.p
    }

    pub fn c(&self) -> Option<(u32, u32)> {
        self.c
    }

    pub fn q(&self) -> &[(u32, u32)] {
        &self.q
    }

    pub fn is_identity(&self) -> bool {
        self.p.is_empty() && self.c.is_none() && self.q.is_empty()
    }

    pub fn to_word(&self) -> Word {
        let mut letters: Vec<Letter> = self.p.iter().map(|&(i, r)| Letter::x(i, i64::from(r))).collect();
        if let Some((i, j)) = self.c {
            letters.push(Letter::c(i, i64::from(j)));
        }
        letters.extend(self.q.iter().rev().map(|&(i, s)| Letter::x(i, -i64::from(s))));
        Word { letters }
    }

    /// The positive word `p` alone.
    pub fn p_word(&self) -> Word {
        PcqForm { p: self.p.clone(), c: None, q: Vec::new() }.to_word()
    }

    /// The negative word `q` alone.
    pub fn q_word(&self) -> Word {
        PcqForm { p: Vec::new(), c: None, q: self.q.clone() }.to_word()
    }
}

impl fmt::Display for PcqForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

impl FromStr for PcqForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PcqForm::from_word(&s.parse()?)
    }
}
