//! The surface layer: parameters `(g, b)`, the projection `p` that forgets
//! the `y` generators, the odd/even position profile, membership in the
//! kernel subgroup `Γ` and in the even subgroup `π_1^+`, and Schreier
//! rewriting of even words into the free basis of `π_1^+`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{parse_index, parse_with, FreeWord, Generator, Letter, Word};

/// Genus `g` and boundary count `b` of `N_g^b`. Words live in
/// `π_1(N_g^{b-1})`, so `y` indices run over `1..b-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceParams {
    g: usize,
    b: usize,
}

impl SurfaceParams {
    pub fn new(g: usize, b: usize) -> Result<Self> {
        if g < 1 {
            return Err(Error::Params(format!("genus must be at least 1, got {g}")));
        }
        if b < 1 {
            return Err(Error::Params(format!(
                "boundary count must be at least 1, got {b}"
            )));
        }
        Ok(SurfaceParams { g, b })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Number of `y` generators, `b - 1`.
    pub fn num_y(&self) -> usize {
        self.b - 1
    }

    pub fn x_generators(&self) -> impl Iterator<Item = Generator> {
        (1..=self.g).map(Generator::x)
    }

    pub fn y_generators(&self) -> impl Iterator<Item = Generator> {
        (1..self.b).map(Generator::y)
    }

    /// `x_1..x_g` followed by `y_1..y_{b-1}`.
    pub fn generators(&self) -> Vec<Generator> {
        self.x_generators().chain(self.y_generators()).collect()
    }

    pub fn validate(&self, w: &Word) -> Result<()> {
        match w.iter().find(|l| !l.symbol.is_valid_for(self)) {
            Some(l) => Err(Error::Range {
                generator: l.symbol.to_string(),
                g: self.g,
                b: self.b,
            }),
            None => Ok(()),
        }
    }
}

/// Occurrence counts of each `x` index at odd (`O_i`) and even (`E_i`)
/// positions of the reduced projection. Index `i` is stored at `i - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OEProfile {
    #[serde(rename = "O")]
    pub odd: Vec<usize>,
    #[serde(rename = "E")]
    pub even: Vec<usize>,
}

impl OEProfile {
    pub fn o(&self, i: usize) -> usize {
        self.odd[i - 1]
    }

    pub fn e(&self, i: usize) -> usize {
        self.even[i - 1]
    }

    /// `O_i - E_i` for `i = 1..g`.
    pub fn differences(&self) -> Vec<i64> {
        self.odd
            .iter()
            .zip(&self.even)
            .map(|(&o, &e)| o as i64 - e as i64)
            .collect()
    }

    pub fn is_balanced(&self) -> bool {
        self.odd == self.even
    }
}

/// `p(w)`: delete every `y` letter, then freely reduce.
pub fn project_p(w: &Word, _params: &SurfaceParams) -> Word {
    w.iter()
        .filter(|l| l.symbol.is_x())
        .copied()
        .collect::<Word>()
        .free_reduce()
}

/// Odd/even position counts of the reduced projection, ignoring exponent
/// signs. Fails with [`Error::Parity`] when the projection has odd length.
pub fn oe_profile(w: &Word, params: &SurfaceParams) -> Result<OEProfile> {
    let projected = project_p(w, params);
    if !projected.len().is_multiple_of(2) {
        return Err(Error::Parity(projected.len()));
    }
    Ok(count_positions(&projected, params.g()))
}

fn count_positions(projected: &Word, g: usize) -> OEProfile {
    let mut odd = vec![0; g];
    let mut even = vec![0; g];
    for (k, letter) in projected.iter().enumerate() {
        let slot = letter.symbol.index - 1;
        // k is 0-based, so k even is an odd 1-based position
        if k % 2 == 0 {
            odd[slot] += 1;
        } else {
            even[slot] += 1;
        }
    }
    OEProfile { odd, even }
}

/// Membership in `Γ`: even projection length and `O_i = E_i` for all `i`.
pub fn in_gamma(w: &Word, params: &SurfaceParams) -> bool {
    oe_profile(w, params).is_ok_and(|p| p.is_balanced())
}

/// Membership in `π_1^+`: the reduced projection has even length.
pub fn in_plus(w: &Word, params: &SurfaceParams) -> bool {
    project_p(w, params).len().is_multiple_of(2)
}

/// Free generators of `π_1^+` obtained from the transversal `{1, x_g}`:
/// `A_i = x_i x_g^-1` (i < g), `B_j = x_g x_j`, `y_k`, `C_k = x_g y_k x_g^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlusGen {
    A(usize),
    B(usize),
    Y(usize),
    C(usize),
}

pub type PlusWord = FreeWord<PlusGen>;

impl PlusGen {
    /// The word in `x`, `y` that this symbol stands for.
    pub fn expansion(&self, params: &SurfaceParams) -> Word {
        let g = params.g();
        let xg = Generator::x(g);
        match *self {
            PlusGen::A(i) => {
                Word::from_letters(vec![Letter::pos(Generator::x(i)), Letter::neg(xg)])
            }
            PlusGen::B(j) => Word::positive([xg, Generator::x(j)]),
            PlusGen::Y(k) => Word::generator(Generator::y(k)),
            PlusGen::C(k) => Word::from_letters(vec![
                Letter::pos(xg),
                Letter::pos(Generator::y(k)),
                Letter::neg(xg),
            ]),
        }
    }

    pub fn is_valid_for(&self, params: &SurfaceParams) -> bool {
        match *self {
            PlusGen::A(i) => i >= 1 && i < params.g(),
            PlusGen::B(j) => j >= 1 && j <= params.g(),
            PlusGen::Y(k) | PlusGen::C(k) => k >= 1 && k < params.b(),
        }
    }

    /// The full free basis in the order `A`, `B`, `y`, `C`.
    pub fn basis(params: &SurfaceParams) -> Vec<PlusGen> {
        let g = params.g();
        let b = params.b();
        (1..g)
            .map(PlusGen::A)
            .chain((1..=g).map(PlusGen::B))
            .chain((1..b).map(PlusGen::Y))
            .chain((1..b).map(PlusGen::C))
            .collect()
    }
}

impl fmt::Display for PlusGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlusGen::A(i) => write!(f, "A{i}"),
            PlusGen::B(j) => write!(f, "B{j}"),
            PlusGen::Y(k) => write!(f, "y{k}"),
            PlusGen::C(k) => write!(f, "C{k}"),
        }
    }
}

impl FromStr for PlusGen {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syntax = || Error::Syntax {
            token: s.to_string(),
            reason: "expected one of `A<k>`, `B<k>`, `y<k>`, `C<k>`".into(),
        };
        let ctor: fn(usize) -> PlusGen = match s.as_bytes().first() {
            Some(b'A') => PlusGen::A,
            Some(b'B') => PlusGen::B,
            Some(b'y') => PlusGen::Y,
            Some(b'C') => PlusGen::C,
            _ => return Err(syntax()),
        };
        parse_index(&s[1..]).map(ctor).ok_or_else(syntax)
    }
}

pub fn parse_plus_word(text: &str, params: &SurfaceParams) -> Result<PlusWord> {
    parse_with(text, |name| {
        let s: PlusGen = name.parse()?;
        if s.is_valid_for(params) {
            Ok(s)
        } else {
            Err(Error::Range {
                generator: name.to_string(),
                g: params.g(),
                b: params.b(),
            })
        }
    })
}

pub fn expand_plus_word(w: &PlusWord, params: &SurfaceParams) -> Word {
    w.substitute(|s| s.expansion(params))
}

/// The Schreier generator `u·s·(overline{us})^-1` for coset `u ∈ {1, x_g}`
/// (0 or 1) and base generator `s`, or `None` when it is trivial
/// (only `1·x_g`).
pub fn plus_schreier_symbol(coset: usize, s: Generator, params: &SurfaceParams) -> Option<PlusGen> {
    let g = params.g();
    match (coset, s.is_x()) {
        (0, true) if s.index == g => None,
        (0, true) => Some(PlusGen::A(s.index)),
        (1, true) => Some(PlusGen::B(s.index)),
        (0, false) => Some(PlusGen::Y(s.index)),
        (1, false) => Some(PlusGen::C(s.index)),
        _ => unreachable!("parity transversal has two cosets"),
    }
}

/// Rewrites an even word over the free basis of `π_1^+` using the
/// transversal `{1, x_g}`. The result is freely reduced in the plus
/// alphabet and expands to a word freely equal to `w`.
pub fn schreier_rewrite_plus(w: &Word, params: &SurfaceParams) -> Result<PlusWord> {
    params.validate(w)?;
    let mut coset = 0usize;
    let mut out = PlusWord::identity();
    for letter in w {
        let s = letter.symbol;
        let flips = s.is_x();
        if letter.inverse {
            let source = if flips { 1 - coset } else { coset };
            if let Some(p) = plus_schreier_symbol(source, s, params) {
                out.push(Letter::neg(p));
            }
            coset = source;
        } else {
            if let Some(p) = plus_schreier_symbol(coset, s, params) {
                out.push(Letter::pos(p));
            }
            if flips {
                coset = 1 - coset;
            }
        }
    }
    if coset != 0 {
        return Err(Error::Parity(project_p(w, params).len()));
    }
    Ok(out.free_reduce())
}
