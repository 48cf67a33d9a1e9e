//! Normal-closure certificates.
//!
//! A [`Certificate`] is a product `∏ u_k r_k^{±1} u_k^-1` of conjugated
//! relators. It certifies a word `w` when the product freely reduces to
//! the reduced form of `w`, which [`verify_certificate`] checks by plain
//! expansion. [`gamma_certificate`] builds one for any member of `Γ` by
//! following the shuffle-and-cancel argument that shows `Γ` is the normal
//! closure of `x_i^2`, `y_j` and the pair commutators.
//!
//! All certificates are built with a [`Rewriter`], which keeps the
//! invariant `w = (recorded entries) · current` in the free group while
//! the current word is edited one relator at a time.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{in_gamma, SurfaceParams};
use crate::words::{commutator, conjugate, parse_word, xs, Generator, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelatorInstance {
    /// `x_i^2`
    Square(usize),
    /// `y_j`
    Ykill(usize),
    /// `[x_a x_b, x_c x_d]`
    PairCommutator(usize, usize, usize, usize),
    /// `(x_i x_j x_k)^2`
    TripleSquare(usize, usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Square,
    Ykill,
    PairCommutator,
    TripleSquare,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Square => "Square",
            Family::Ykill => "Ykill",
            Family::PairCommutator => "PairCommutator",
            Family::TripleSquare => "TripleSquare",
        }
    }

    fn arity(&self) -> usize {
        match self {
            Family::Square | Family::Ykill => 1,
            Family::PairCommutator => 4,
            Family::TripleSquare => 3,
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Square" => Ok(Family::Square),
            "Ykill" => Ok(Family::Ykill),
            "PairCommutator" => Ok(Family::PairCommutator),
            "TripleSquare" => Ok(Family::TripleSquare),
            _ => Err(Error::Syntax {
                token: s.to_string(),
                reason: "unknown relator family".into(),
            }),
        }
    }
}

impl RelatorInstance {
    pub fn family(&self) -> Family {
        match self {
            RelatorInstance::Square(_) => Family::Square,
            RelatorInstance::Ykill(_) => Family::Ykill,
            RelatorInstance::PairCommutator(..) => Family::PairCommutator,
            RelatorInstance::TripleSquare(..) => Family::TripleSquare,
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        match *self {
            RelatorInstance::Square(i) | RelatorInstance::Ykill(i) => vec![i],
            RelatorInstance::PairCommutator(a, b, c, d) => vec![a, b, c, d],
            RelatorInstance::TripleSquare(i, j, k) => vec![i, j, k],
        }
    }

    pub fn from_parts(family: Family, indices: &[usize]) -> Result<Self> {
        if indices.len() != family.arity() {
            return Err(Error::Syntax {
                token: format!("{indices:?}"),
                reason: format!("{} takes {} indices", family.name(), family.arity()),
            });
        }
        Ok(match family {
            Family::Square => RelatorInstance::Square(indices[0]),
            Family::Ykill => RelatorInstance::Ykill(indices[0]),
            Family::PairCommutator => {
                RelatorInstance::PairCommutator(indices[0], indices[1], indices[2], indices[3])
            }
            Family::TripleSquare => {
                RelatorInstance::TripleSquare(indices[0], indices[1], indices[2])
            }
        })
    }

    /// The word this relator stands for.
    pub fn word(&self) -> Word {
        match *self {
            RelatorInstance::Square(i) => xs(&[i, i]),
            RelatorInstance::Ykill(j) => Word::generator(Generator::y(j)),
            RelatorInstance::PairCommutator(a, b, c, d) => commutator(&xs(&[a, b]), &xs(&[c, d])),
            RelatorInstance::TripleSquare(i, j, k) => xs(&[i, j, k, i, j, k]),
        }
    }

    pub fn is_valid_for(&self, params: &SurfaceParams) -> bool {
        match self {
            RelatorInstance::Ykill(j) => *j >= 1 && *j < params.b(),
            _ => self.indices().iter().all(|&i| i >= 1 && i <= params.g()),
        }
    }
}

impl fmt::Display for RelatorInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().iter().map(ToString::to_string).collect();
        write!(f, "{}({})", self.family().name(), idx.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub conj: Word,
    pub relator: RelatorInstance,
    /// `+1` or `-1`.
    pub exp: i32,
}

impl Entry {
    pub fn new(conj: Word, relator: RelatorInstance, exp: i32) -> Self {
        assert!(exp == 1 || exp == -1, "certificate exponents are ±1");
        Entry { conj, relator, exp }
    }

    /// `u r^{±1} u^-1`, unreduced.
    pub fn expand(&self) -> Word {
        conjugate(&self.conj, &self.relator.word().pow(self.exp))
    }

    fn inverse(&self) -> Self {
        Entry {
            conj: self.conj.clone(),
            relator: self.relator,
            exp: -self.exp,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Certificate {
    pub entries: Vec<Entry>,
}

impl Certificate {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn families(&self) -> impl Iterator<Item = Family> + '_ {
        self.entries.iter().map(|e| e.relator.family())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<JsonEntry> = self
            .entries
            .iter()
            .map(|e| JsonEntry {
                conj: e.conj.to_string(),
                relator: JsonRelator {
                    family: e.relator.family().name().to_string(),
                    indices: e.relator.indices(),
                },
                exp: e.exp,
            })
            .collect();
        serde_json::to_value(entries).expect("certificates always serialize")
    }

    pub fn from_json(value: &serde_json::Value, params: &SurfaceParams) -> Result<Self> {
        let raw: Vec<JsonEntry> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Syntax {
                token: "certificate".into(),
                reason: e.to_string(),
            })?;
        let mut entries = Vec::with_capacity(raw.len());
        for e in raw {
            let family: Family = e.relator.family.parse()?;
            let relator = RelatorInstance::from_parts(family, &e.relator.indices)?;
            if !relator.is_valid_for(params) {
                return Err(Error::IndexOutOfRange(format!(
                    "{relator} for g={}, b={}",
                    params.g(),
                    params.b()
                )));
            }
            if e.exp != 1 && e.exp != -1 {
                return Err(Error::Syntax {
                    token: e.exp.to_string(),
                    reason: "exponent must be 1 or -1".into(),
                });
            }
            entries.push(Entry::new(parse_word(&e.conj, params)?, relator, e.exp));
        }
        Ok(Certificate { entries })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonRelator {
    family: String,
    indices: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonEntry {
    conj: String,
    relator: JsonRelator,
    exp: i32,
}

/// Concatenates every `u r^{±1} u^-1` in order and freely reduces.
pub fn expand_certificate(c: &Certificate) -> Word {
    c.entries
        .iter()
        .fold(Word::identity(), |acc, e| acc.concat(&e.expand()))
        .free_reduce()
}

pub fn verify_certificate(c: &Certificate, w: &Word) -> bool {
    expand_certificate(c) == w.free_reduce()
}

/// Edits a word one relator at a time while recording the certificate of
/// each edit, keeping `original = entries · current` in the free group.
#[derive(Debug, Clone)]
pub struct Rewriter {
    entries: Vec<Entry>,
    current: Vec<Letter<Generator>>,
}

impl Rewriter {
    pub fn new(w: &Word) -> Self {
        Rewriter {
            entries: Vec::new(),
            current: w.letters().to_vec(),
        }
    }

    pub fn current(&self) -> Word {
        Word::from_letters(self.current.clone())
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Replaces `X = current[pos..pos + len]` by `replacement`, recording
    /// `A (u r^exp u^-1) A^-1` where `A = current[..pos]`. The caller
    /// asserts `X · replacement^-1 = u r^exp u^-1`; this is checked.
    pub fn substitute(
        &mut self,
        pos: usize,
        len: usize,
        replacement: &Word,
        inner_conj: &Word,
        relator: RelatorInstance,
        exp: i32,
    ) -> Result<()> {
        let removed = Word::from_letters(self.current[pos..pos + len].to_vec());
        let entry_word = conjugate(inner_conj, &relator.word().pow(exp));
        if !removed
            .concat(&replacement.inverse())
            .freely_equals(&entry_word)
        {
            return Err(Error::Precondition(format!(
                "`{removed}` -> `{replacement}` is not justified by {relator}^{exp}"
            )));
        }
        let prefix = Word::from_letters(self.current[..pos].to_vec());
        self.entries
            .push(Entry::new(prefix.concat(inner_conj), relator, exp));
        self.current
            .splice(pos..pos + len, replacement.letters().iter().copied());
        Ok(())
    }

    /// Deletes `x_i x_i` at `pos`.
    pub fn delete_square(&mut self, pos: usize) -> Result<()> {
        let i = self.x_index(pos)?;
        self.substitute(
            pos,
            2,
            &Word::identity(),
            &Word::identity(),
            RelatorInstance::Square(i),
            1,
        )
    }

    /// Inserts `x_i x_i` before `pos`.
    pub fn insert_square(&mut self, pos: usize, i: usize) -> Result<()> {
        self.substitute(
            pos,
            0,
            &xs(&[i, i]),
            &Word::identity(),
            RelatorInstance::Square(i),
            -1,
        )
    }

    /// Replaces `x_i^{±1}` at `pos` by `x_i^{∓1}`.
    pub fn flip(&mut self, pos: usize) -> Result<()> {
        let letter = self.current[pos];
        let i = self.x_index(pos)?;
        let exp = if letter.inverse { -1 } else { 1 };
        let replacement = Word::from_letters(vec![letter.inv()]);
        self.substitute(
            pos,
            1,
            &replacement,
            &Word::identity(),
            RelatorInstance::Square(i),
            exp,
        )
    }

    /// Deletes the `y_j^{±1}` at `pos`.
    pub fn delete_y(&mut self, pos: usize) -> Result<()> {
        let letter = self.current[pos];
        if letter.symbol.is_x() {
            return Err(Error::Precondition(format!(
                "no y-letter at position {pos}"
            )));
        }
        let exp = letter.exponent();
        self.substitute(
            pos,
            1,
            &Word::identity(),
            &Word::identity(),
            RelatorInstance::Ykill(letter.symbol.index),
            exp,
        )
    }

    /// Records the whole current word as `r^exp` conjugated by `conj` and
    /// empties it.
    pub fn finish_with(&mut self, conj: &Word, relator: RelatorInstance, exp: i32) -> Result<()> {
        let len = self.current.len();
        self.substitute(0, len, &Word::identity(), conj, relator, exp)
    }

    fn x_index(&self, pos: usize) -> Result<usize> {
        let letter = self.current.get(pos).ok_or_else(|| {
            Error::Precondition(format!("position {pos} is past the end of the word"))
        })?;
        if !letter.symbol.is_x() {
            return Err(Error::Precondition(format!(
                "no x-letter at position {pos}"
            )));
        }
        Ok(letter.symbol.index)
    }

    /// Deletes every `y`, then flips every inverse `x` letter.
    fn make_positive(&mut self) -> Result<()> {
        let mut pos = 0;
        while pos < self.current.len() {
            if self.current[pos].symbol.is_y() {
                self.delete_y(pos)?;
            } else {
                if self.current[pos].inverse {
                    self.flip(pos)?;
                }
                pos += 1;
            }
        }
        Ok(())
    }

    /// Deletes adjacent `x_i x_i` pairs of a positive word until none are
    /// left.
    fn cancel_squares(&mut self) -> Result<()> {
        let mut pos = 0;
        while pos + 1 < self.current.len() {
            if self.current[pos].symbol == self.current[pos + 1].symbol {
                self.delete_square(pos)?;
                pos = pos.saturating_sub(1);
            } else {
                pos += 1;
            }
        }
        Ok(())
    }

    pub fn into_certificate(self) -> Certificate {
        Certificate {
            entries: self.entries,
        }
    }
}

/// Builds a certificate for `w ∈ Γ` over `Square`, `Ykill` and
/// `PairCommutator`.
///
/// `w` is freely reduced, its `y` letters are removed and its inverse
/// letters flipped, leaving a positive word `x_{i_1} ... x_{i_{2l}}`. Each
/// round then finds the leftmost `t` with `i_{2t} = i_1`, moves the pair
/// `x_{i_1} x_{i_2}` right past the pairs in between (one pair commutator
/// per move), and deletes the square `x_{i_{2t}} x_{i_1}` that appears.
/// Every round shortens the word by two.
pub fn gamma_certificate(w: &Word, params: &SurfaceParams) -> Result<Certificate> {
    params.validate(w)?;
    if !in_gamma(w, params) {
        return Err(Error::NotInGamma(w.to_string()));
    }
    let mut rw = Rewriter::new(&w.free_reduce());
    rw.make_positive()?;
    while !rw.current.is_empty() {
        shuffle_round(&mut rw, w)?;
    }
    Ok(rw.into_certificate())
}

fn shuffle_round(rw: &mut Rewriter, original: &Word) -> Result<()> {
    let idx: Vec<usize> = rw.current.iter().map(|l| l.symbol.index).collect();
    let first = idx[0];
    let t = (1..=idx.len() / 2)
        .find(|&t| idx[2 * t - 1] == first)
        .ok_or_else(|| Error::NotInGamma(original.to_string()))?;
    // Swap the leading pair with each of the following t-1 pairs.
    for s in 1..t {
        let pos = 2 * (s - 1);
        let cur: Vec<usize> = rw.current.iter().map(|l| l.symbol.index).collect();
        let (a, b, c, d) = (cur[pos], cur[pos + 1], cur[pos + 2], cur[pos + 3]);
        rw.substitute(
            pos,
            4,
            &xs(&[c, d, a, b]),
            &Word::identity(),
            RelatorInstance::PairCommutator(a, b, c, d),
            1,
        )?;
    }
    // Now x_{i_{2t}} x_{i_1} sits at positions 2t-3, 2t-2 (or the pair
    // itself is x_{i_1} x_{i_1} when t = 1).
    let pos = if t == 1 { 0 } else { 2 * t - 3 };
    rw.delete_square(pos)
}

/// Square entries `E` with `from = E · to` in the free group, or `None`
/// when the two words differ modulo `x_i^2` and `y_j`.
fn bridge_mod_squares(from: &Word, to: &Word) -> Result<Option<Vec<Entry>>> {
    let canon = |w: &Word| -> Result<(Vec<Entry>, Word)> {
        let mut rw = Rewriter::new(w);
        rw.make_positive()?;
        rw.cancel_squares()?;
        let current = rw.current();
        Ok((rw.entries, current))
    };
    let (mut forward, c_from) = canon(from)?;
    let (backward, c_to) = canon(to)?;
    if c_from != c_to {
        return Ok(None);
    }
    // from = F · C and to = B · C, so from = F · B^-1 · to.
    forward.extend(backward.iter().rev().map(Entry::inverse));
    Ok(Some(forward))
}

/// Converts a relator of one family into a certificate over another.
///
/// `TripleSquare(i,j,k) → PairCommutator` yields `[x_i x_j, x_k x_j]`
/// plus squares. `PairCommutator → TripleSquare` dispatches on the index
/// pattern; the ten patterns that collapse modulo squares alone give a
/// `Square`-only certificate.
pub fn convert_relator(r: &RelatorInstance, target: Family) -> Result<Certificate> {
    let targets: Vec<(Word, RelatorInstance)> = match (*r, target) {
        (RelatorInstance::TripleSquare(i, j, k), Family::PairCommutator) => {
            vec![(
                Word::identity(),
                RelatorInstance::PairCommutator(i, j, k, j),
            )]
        }
        (RelatorInstance::PairCommutator(a, b, c, d), Family::TripleSquare) => {
            commutator_as_triples(a, b, c, d)
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no conversion from {} to {}",
                r.family().name(),
                target.name()
            )))
        }
    };
    let product = targets.iter().fold(Word::identity(), |acc, (u, t)| {
        acc.concat(&conjugate(u, &t.word()))
    });
    let bridge = bridge_mod_squares(&r.word(), &product)?.ok_or_else(|| {
        Error::Precondition(format!("{r} is not congruent to its conversion target"))
    })?;
    let mut entries = bridge;
    entries.extend(targets.into_iter().map(|(u, t)| Entry::new(u, t, 1)));
    Ok(Certificate { entries })
}

/// Conjugated triple squares congruent to `[x_a x_b, x_c x_d]` modulo
/// squares; empty for the degenerate patterns.
fn commutator_as_triples(a: usize, b: usize, c: usize, d: usize) -> Vec<(Word, RelatorInstance)> {
    use RelatorInstance::TripleSquare as T;
    let distinct = |v: &[usize]| {
        v.iter()
            .enumerate()
            .all(|(p, x)| v[p + 1..].iter().all(|y| y != x))
    };
    let (i, j) = (a, b);
    if i == j {
        return Vec::new();
    }
    if distinct(&[i, j, c, d]) {
        return vec![(Word::identity(), T(i, j, c)), (xs(&[c, d]), T(d, j, i))];
    }
    match (c, d) {
        // (i,j,i,k): x_i (x_j x_i x_k)^2 x_i^-1
        (c, k) if c == i && k != i && k != j => vec![(xs(&[i]), T(j, i, k))],
        // (i,j,k,j)
        (k, d) if d == j && k != i && k != j => vec![(Word::identity(), T(i, j, k))],
        // (i,j,k,i)
        (k, d) if d == i && k != i && k != j => vec![(Word::identity(), T(i, j, k))],
        // (i,j,j,k)
        (c, k) if c == j && k != i && k != j => vec![(Word::identity(), T(i, k, j))],
        _ => Vec::new(),
    }
}
