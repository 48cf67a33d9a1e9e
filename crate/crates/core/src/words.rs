//! Free-group words.
//!
//! A [`FreeWord`] is a literal sequence of letters `s` or `s^-1` over some
//! alphabet of symbols. Nothing is reduced implicitly: position-sensitive
//! operations elsewhere in the crate need to control which representative
//! they look at, so [`FreeWord::free_reduce`] is always an explicit call.
//!
//! The surface alphabet `x1..xg, y1..y(b-1)` is [`Generator`], and
//! [`Word`] is the word type used by almost everything else.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::surface::SurfaceParams;

/// An alphabet symbol. Blanket-implemented for anything with the right
/// bounds.
pub trait Symbol: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display {}

impl<T: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display> Symbol for T {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    X,
    Y,
}

/// A generator `x_i` or `y_j` of the punctured surface group. Indices are
/// 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: GenKind,
    pub index: usize,
}

impl Generator {
    pub fn x(index: usize) -> Self {
        assert!(index >= 1, "generator indices are 1-based");
        Generator {
            kind: GenKind::X,
            index,
        }
    }

    pub fn y(index: usize) -> Self {
        assert!(index >= 1, "generator indices are 1-based");
        Generator {
            kind: GenKind::Y,
            index,
        }
    }

    pub fn is_x(&self) -> bool {
        self.kind == GenKind::X
    }

    pub fn is_y(&self) -> bool {
        self.kind == GenKind::Y
    }

    /// Whether this generator exists in `π_1(N_g^{b-1})`.
    pub fn is_valid_for(&self, params: &SurfaceParams) -> bool {
        match self.kind {
            GenKind::X => self.index >= 1 && self.index <= params.g(),
            GenKind::Y => self.index >= 1 && self.index < params.b(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::X => write!(f, "x{}", self.index),
            GenKind::Y => write!(f, "y{}", self.index),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syntax = |reason: &str| Error::Syntax {
            token: s.to_string(),
            reason: reason.to_string(),
        };
        let (kind, digits) = match s.as_bytes().first() {
            Some(b'x') => (GenKind::X, &s[1..]),
            Some(b'y') => (GenKind::Y, &s[1..]),
            _ => return Err(syntax("expected a generator `x<k>` or `y<k>`")),
        };
        let index = parse_index(digits).ok_or_else(|| syntax("expected a positive index"))?;
        Ok(Generator { kind, index })
    }
}

pub(crate) fn parse_index(digits: &str) -> Option<usize> {
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&k| k >= 1)
}

/// A symbol raised to the power `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter<S> {
    pub symbol: S,
    pub inverse: bool,
}

impl<S> Letter<S> {
    pub fn new(symbol: S, exponent: i32) -> Self {
        assert!(exponent == 1 || exponent == -1, "letters have exponent ±1");
        Letter {
            symbol,
            inverse: exponent < 0,
        }
    }

    pub fn pos(symbol: S) -> Self {
        Letter {
            symbol,
            inverse: false,
        }
    }

    pub fn neg(symbol: S) -> Self {
        Letter {
            symbol,
            inverse: true,
        }
    }

    pub fn exponent(&self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl<S: Clone> Letter<S> {
    pub fn inv(&self) -> Self {
        Letter {
            symbol: self.symbol.clone(),
            inverse: !self.inverse,
        }
    }
}

impl<S: PartialEq> Letter<S> {
    /// True when `self` followed by `other` cancels in the free group.
    pub fn cancels(&self, other: &Letter<S>) -> bool {
        self.symbol == other.symbol && self.inverse != other.inverse
    }
}

impl<S: fmt::Display> fmt::Display for Letter<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.symbol)
        } else {
            write!(f, "{}", self.symbol)
        }
    }
}

/// A finite, not necessarily reduced, sequence of letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord<S> {
    letters: Vec<Letter<S>>,
}

/// Words over the surface alphabet.
pub type Word = FreeWord<Generator>;

impl<S> Default for FreeWord<S> {
    fn default() -> Self {
        FreeWord {
            letters: Vec::new(),
        }
    }
}

impl<S> FreeWord<S> {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<Letter<S>>) -> Self {
        FreeWord { letters }
    }

    pub fn letters(&self) -> &[Letter<S>] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter<S>> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter<S>> {
        self.letters.iter()
    }
}

impl<S: Clone + PartialEq> FreeWord<S> {
    /// Word `s`.
    pub fn generator(symbol: S) -> Self {
        FreeWord {
            letters: vec![Letter::pos(symbol)],
        }
    }

    /// Word `s^n`, expanded into `|n|` letters.
    pub fn power_of(symbol: S, n: i32) -> Self {
        let letter = Letter {
            symbol,
            inverse: n < 0,
        };
        FreeWord {
            letters: vec![letter; n.unsigned_abs() as usize],
        }
    }

    /// Positive word `s_1 s_2 ... s_n`.
    pub fn positive<I: IntoIterator<Item = S>>(symbols: I) -> Self {
        FreeWord {
            letters: symbols.into_iter().map(Letter::pos).collect(),
        }
    }

    pub fn push(&mut self, letter: Letter<S>) {
        self.letters.push(letter);
    }

    /// The unique freely reduced word equal to `self` in the free group.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter<S>> = Vec::with_capacity(self.letters.len());
        for letter in &self.letters {
            if out.last().is_some_and(|top| top.cancels(letter)) {
                out.pop();
            } else {
                out.push(letter.clone());
            }
        }
        FreeWord { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(&w[1]))
    }

    /// Reverses the letters and flips every exponent.
    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(Letter::inv).collect(),
        }
    }

    /// Literal concatenation, no reduction.
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        FreeWord { letters }
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        FreeWord { letters }
    }

    /// Equality in the free group.
    pub fn freely_equals(&self, other: &Self) -> bool {
        self.free_reduce() == other.free_reduce()
    }

    /// Applies the homomorphism `s ↦ image(s)` letter by letter. The result
    /// is not reduced.
    pub fn substitute<T, F>(&self, mut image: F) -> FreeWord<T>
    where
        T: Clone + PartialEq,
        F: FnMut(&S) -> FreeWord<T>,
    {
        let mut letters = Vec::new();
        for letter in &self.letters {
            let w = image(&letter.symbol);
            if letter.inverse {
                letters.extend(w.inverse().letters);
            } else {
                letters.extend(w.letters);
            }
        }
        FreeWord { letters }
    }
}

impl<S> FromIterator<Letter<S>> for FreeWord<S> {
    fn from_iter<I: IntoIterator<Item = Letter<S>>>(iter: I) -> Self {
        FreeWord {
            letters: iter.into_iter().collect(),
        }
    }
}

impl<'a, S> IntoIterator for &'a FreeWord<S> {
    type Item = &'a Letter<S>;
    type IntoIter = std::slice::Iter<'a, Letter<S>>;

    fn into_iter(self) -> Self::IntoIter {
        self.letters.iter()
    }
}

impl<S: fmt::Display> fmt::Display for FreeWord<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, letter) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

pub fn invert<S: Clone + PartialEq>(w: &FreeWord<S>) -> FreeWord<S> {
    w.inverse()
}

pub fn concat<S: Clone + PartialEq>(a: &FreeWord<S>, b: &FreeWord<S>) -> FreeWord<S> {
    a.concat(b)
}

/// `u w u^-1`, unreduced.
pub fn conjugate<S: Clone + PartialEq>(u: &FreeWord<S>, w: &FreeWord<S>) -> FreeWord<S> {
    u.concat(w).concat(&u.inverse())
}

/// `a b a^-1 b^-1`, unreduced.
pub fn commutator<S: Clone + PartialEq>(a: &FreeWord<S>, b: &FreeWord<S>) -> FreeWord<S> {
    a.concat(b).concat(&a.inverse()).concat(&b.inverse())
}

/// Tokenizes `text` with the shared word grammar and resolves each symbol
/// name with `symbol`. Powers are expanded into repeated letters.
pub fn parse_with<S, F>(text: &str, mut symbol: F) -> Result<FreeWord<S>>
where
    S: Clone + PartialEq,
    F: FnMut(&str) -> Result<S>,
{
    let tokens: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == '*')
        .filter(|t| !t.is_empty())
        .collect();
    match tokens.as_slice() {
        [] => {
            return Err(Error::Syntax {
                token: text.to_string(),
                reason: "empty input (write `1` for the identity)".into(),
            })
        }
        ["1"] => return Ok(FreeWord::identity()),
        _ => {}
    }
    let mut letters = Vec::new();
    for token in tokens {
        let (name, power) = match token.split_once('^') {
            Some((name, exp)) => {
                let n: i32 = exp.parse().map_err(|_| Error::Syntax {
                    token: token.to_string(),
                    reason: "exponent must be an integer".into(),
                })?;
                if n == 0 {
                    return Err(Error::Syntax {
                        token: token.to_string(),
                        reason: "exponent must be nonzero".into(),
                    });
                }
                (name, n)
            }
            None => (token, 1),
        };
        if name == "1" {
            return Err(Error::Syntax {
                token: token.to_string(),
                reason: "`1` must stand alone".into(),
            });
        }
        let s = symbol(name)?;
        letters.extend(FreeWord::power_of(s, power).letters);
    }
    Ok(FreeWord { letters })
}

/// Parses a surface word and checks every generator against `params`.
pub fn parse_word(text: &str, params: &SurfaceParams) -> Result<Word> {
    parse_with(text, |name| {
        let generator: Generator = name.parse()?;
        if generator.is_valid_for(params) {
            Ok(generator)
        } else {
            Err(Error::Range {
                generator: name.to_string(),
                g: params.g(),
                b: params.b(),
            })
        }
    })
}

/// Canonical text form: lowercase tokens, `^-1` only, space-separated,
/// `1` for the empty word.
pub fn format_word<S: fmt::Display>(w: &FreeWord<S>) -> String {
    w.to_string()
}

/// Shorthand for building surface words in code and tests.
pub fn x(i: usize) -> Word {
    Word::generator(Generator::x(i))
}

pub fn y(j: usize) -> Word {
    Word::generator(Generator::y(j))
}

/// Positive word `x_{i_1} x_{i_2} ... x_{i_n}`.
pub fn xs(indices: &[usize]) -> Word {
    Word::positive(indices.iter().map(|&i| Generator::x(i)))
}
