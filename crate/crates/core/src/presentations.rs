//! Finitely presented groups, the word problem in free products of cyclic
//! groups, and Reidemeister–Schreier presentations of finite-index
//! subgroups.
//!
//! [`reidemeister_schreier`] works over any consistent [`CosetTable`]
//! with a Schreier transversal. The index-two table coming from the
//! parity of `x`-letters ([`parity_coset_table`]) reproduces the free
//! basis `A_i, B_j, y_k, C_k` of `π_1^+` and the relators of the even
//! part of `π_g^{b-1}` ([`plus_quotient_relators`]).

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{plus_schreier_symbol, PlusGen, PlusWord, SurfaceParams};
use crate::words::{commutator, conjugate, FreeWord, Generator, Letter, Symbol, Word};

/// Canonical form in the free product of cyclic groups `⟨s | s^order(s)⟩`.
///
/// Order `0` means infinite, order `1` kills the generator. Each maximal
/// run of a single symbol is collapsed to one syllable whose exponent is
/// normalized into `[0, order)` (or left signed for infinite order), and
/// empty syllables are dropped until nothing changes. Two words are equal
/// in the quotient iff their canonical forms are equal.
pub fn reduce_mod_orders<S, F>(w: &FreeWord<S>, order: F) -> FreeWord<S>
where
    S: Symbol,
    F: Fn(&S) -> u32,
{
    let mut stack: Vec<(S, i64)> = Vec::new();
    for letter in w {
        let mut syllable = (letter.symbol.clone(), i64::from(letter.exponent()));
        if let Some(top) = stack.last() {
            if top.0 == syllable.0 {
                syllable.1 += top.1;
                stack.pop();
            }
        }
        let n = i64::from(order(&syllable.0));
        if n > 0 {
            syllable.1 = syllable.1.rem_euclid(n);
        }
        if syllable.1 != 0 {
            stack.push(syllable);
        }
    }
    stack
        .into_iter()
        .flat_map(|(s, e)| FreeWord::power_of(s, e as i32).into_letters())
        .collect()
}

/// Orders for the surface alphabet: `x_i` has order 2, `y_j` is killed.
pub fn surface_order(s: &Generator) -> u32 {
    if s.is_x() {
        2
    } else {
        1
    }
}

/// Reduction modulo `x_i^2` and `y_j`.
pub fn reduce_mod_squares(w: &Word) -> Word {
    reduce_mod_orders(w, surface_order)
}

pub fn congruent_mod_squares(a: &Word, b: &Word) -> bool {
    reduce_mod_squares(a) == reduce_mod_squares(b)
}

/// A finitely presented group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation<S> {
    generators: Vec<S>,
    relators: Vec<FreeWord<S>>,
}

impl<S: Symbol> Presentation<S> {
    pub fn new(generators: Vec<S>, relators: Vec<FreeWord<S>>) -> Result<Self> {
        let known: HashSet<&S> = generators.iter().collect();
        if known.len() != generators.len() {
            return Err(Error::Precondition("duplicate generator".into()));
        }
        for r in &relators {
            if let Some(l) = r.iter().find(|l| !known.contains(&l.symbol)) {
                return Err(Error::Precondition(format!(
                    "relator `{r}` uses undeclared generator `{}`",
                    l.symbol
                )));
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[S] {
        &self.generators
    }

    pub fn relators(&self) -> &[FreeWord<S>] {
        &self.relators
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "generators": self.generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "relators": self.relators.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

/// The free group `π_1(N_g^{b-1})` on `x_1..x_g, y_1..y_{b-1}`.
pub fn free_presentation(params: &SurfaceParams) -> Presentation<Generator> {
    Presentation {
        generators: params.generators(),
        relators: Vec::new(),
    }
}

/// `(x_i x_j x_k)^2`.
pub fn triple_square(i: usize, j: usize, k: usize) -> Word {
    crate::words::xs(&[i, j, k, i, j, k])
}

/// `π_g^{b-1} = ⟨x, y | x_i^2, y_j, (x_i x_j x_k)^2 (i < j < k)⟩`.
pub fn pi_presentation(params: &SurfaceParams) -> Presentation<Generator> {
    let g = params.g();
    let mut relators: Vec<Word> = params
        .x_generators()
        .map(|x| Word::power_of(x, 2))
        .collect();
    relators.extend(params.y_generators().map(Word::generator));
    for i in 1..=g {
        for j in i + 1..=g {
            for k in j + 1..=g {
                relators.push(triple_square(i, j, k));
            }
        }
    }
    Presentation {
        generators: params.generators(),
        relators,
    }
}

/// Right action of the generators on a finite set of cosets together with a
/// Schreier transversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable<S> {
    generators: Vec<S>,
    transversal: Vec<FreeWord<S>>,
    action: Vec<Vec<usize>>,
    inverse_action: Vec<Vec<usize>>,
}

impl<S: Symbol> CosetTable<S> {
    /// `action[k][c]` is the coset reached from coset `c` by generator
    /// `generators[k]`. Validates that every column is a permutation, that
    /// the transversal starts at the identity and is prefix-closed, and
    /// that each representative leads from coset 0 to its own coset.
    pub fn new(
        generators: Vec<S>,
        transversal: Vec<FreeWord<S>>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = transversal.len();
        let bad = |msg: String| Err(Error::InconsistentTable(msg));
        if n == 0 {
            return bad("empty transversal".into());
        }
        if action.len() != generators.len() {
            return bad(format!(
                "{} action columns for {} generators",
                action.len(),
                generators.len()
            ));
        }
        let mut inverse_action = Vec::with_capacity(action.len());
        for (k, column) in action.iter().enumerate() {
            let mut inverse = vec![usize::MAX; n];
            if column.len() != n {
                return bad(format!("column for `{}` has wrong length", generators[k]));
            }
            for (c, &target) in column.iter().enumerate() {
                if target >= n || inverse[target] != usize::MAX {
                    return bad(format!(
                        "column for `{}` is not a permutation",
                        generators[k]
                    ));
                }
                inverse[target] = c;
            }
            inverse_action.push(inverse);
        }
        if !transversal[0].is_empty() {
            return bad("first representative must be the identity".into());
        }
        let table = CosetTable {
            generators,
            transversal,
            action,
            inverse_action,
        };
        let reps: HashSet<&FreeWord<S>> = table.transversal.iter().collect();
        for (c, rep) in table.transversal.iter().enumerate() {
            if !rep.is_reduced() {
                return bad(format!("representative `{rep}` is not reduced"));
            }
            for cut in 0..rep.len() {
                let prefix = FreeWord::from_letters(rep.letters()[..cut].to_vec());
                if !reps.contains(&prefix) {
                    return bad(format!(
                        "prefix `{prefix}` of `{rep}` is not a representative"
                    ));
                }
            }
            if table.trace(0, rep)? != c {
                return bad(format!("representative `{rep}` does not lead to coset {c}"));
            }
        }
        Ok(table)
    }

    /// The trivial table of index one.
    pub fn trivial(generators: Vec<S>) -> Self {
        let action = vec![vec![0]; generators.len()];
        CosetTable::new(generators, vec![FreeWord::identity()], action)
            .expect("the index-one table is consistent")
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn generators(&self) -> &[S] {
        &self.generators
    }

    pub fn transversal(&self) -> &[FreeWord<S>] {
        &self.transversal
    }

    fn position(&self, s: &S) -> Result<usize> {
        self.generators
            .iter()
            .position(|t| t == s)
            .ok_or_else(|| Error::InconsistentTable(format!("unknown generator `{s}`")))
    }

    /// Coset reached from `coset` by generator `s`.
    pub fn act(&self, coset: usize, s: &S) -> Result<usize> {
        Ok(self.action[self.position(s)?][coset])
    }

    pub fn act_letter(&self, coset: usize, letter: &Letter<S>) -> Result<usize> {
        let k = self.position(&letter.symbol)?;
        Ok(if letter.inverse {
            self.inverse_action[k][coset]
        } else {
            self.action[k][coset]
        })
    }

    pub fn trace(&self, coset: usize, w: &FreeWord<S>) -> Result<usize> {
        w.iter().try_fold(coset, |c, l| self.act_letter(c, l))
    }

    /// `u s (overline{us})^-1` for the representative `u` of `coset`.
    pub fn schreier_element(&self, coset: usize, s: &S) -> Result<FreeWord<S>> {
        let target = self.act(coset, s)?;
        Ok(self.transversal[coset]
            .concat(&FreeWord::generator(s.clone()))
            .concat(&self.transversal[target].inverse()))
    }
}

/// The index-two table for `π_1^+`: transversal `{1, x_g}`, every `x`
/// swaps the cosets, every `y` fixes them.
pub fn parity_coset_table(
    pres: &Presentation<Generator>,
    params: &SurfaceParams,
) -> Result<CosetTable<Generator>> {
    let xg = Generator::x(params.g());
    if let Some(s) = pres.generators().iter().find(|s| !s.is_valid_for(params)) {
        return Err(Error::Range {
            generator: s.to_string(),
            g: params.g(),
            b: params.b(),
        });
    }
    if !pres.generators().contains(&xg) {
        return Err(Error::Precondition(format!("presentation lacks `{xg}`")));
    }
    let action = pres
        .generators()
        .iter()
        .map(|s| if s.is_x() { vec![1, 0] } else { vec![0, 1] })
        .collect();
    CosetTable::new(
        pres.generators().to_vec(),
        vec![Word::identity(), Word::generator(xg)],
        action,
    )
}

/// A Schreier generator, named by its coset and base generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchreierGen<S> {
    pub coset: usize,
    pub generator: S,
}

impl<S: fmt::Display> fmt::Display for SchreierGen<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}_{}", self.coset, self.generator)
    }
}

/// Output of [`reidemeister_schreier`]: a presentation over Schreier
/// generators plus the base word each generator stands for.
#[derive(Debug, Clone)]
pub struct SubgroupPresentation<S> {
    pub presentation: Presentation<SchreierGen<S>>,
    pub expansions: BTreeMap<SchreierGen<S>, FreeWord<S>>,
}

impl<S: Symbol> SubgroupPresentation<S> {
    pub fn expand(&self, w: &FreeWord<SchreierGen<S>>) -> FreeWord<S> {
        w.substitute(|s| self.expansions[s].clone())
    }

    /// Renames the generators through `rename` and keeps the relators.
    pub fn relabel<T, F>(&self, mut rename: F) -> Result<Presentation<T>>
    where
        T: Symbol,
        F: FnMut(&SchreierGen<S>) -> T,
    {
        let generators = self
            .presentation
            .generators()
            .iter()
            .map(&mut rename)
            .collect();
        let relators = self
            .presentation
            .relators()
            .iter()
            .map(|r| r.substitute(|s| FreeWord::generator(rename(s))))
            .collect();
        Presentation::new(generators, relators)
    }
}

/// Schreier rewriting of `w` read from `coset`. Returns the rewritten word
/// (trivial Schreier elements omitted) and the coset where reading ends.
pub fn schreier_rewrite<S: Symbol>(
    table: &CosetTable<S>,
    trivial: &HashSet<SchreierGen<S>>,
    coset: usize,
    w: &FreeWord<S>,
) -> Result<(FreeWord<SchreierGen<S>>, usize)> {
    let mut c = coset;
    let mut out = FreeWord::identity();
    for letter in w {
        let (source, next) = if letter.inverse {
            let source = table.act_letter(c, letter)?;
            (source, source)
        } else {
            (c, table.act_letter(c, letter)?)
        };
        let s = SchreierGen {
            coset: source,
            generator: letter.symbol.clone(),
        };
        if !trivial.contains(&s) {
            out.push(Letter {
                symbol: s,
                inverse: letter.inverse,
            });
        }
        c = next;
    }
    Ok((out, c))
}

/// Reidemeister–Schreier presentation of the subgroup described by `table`.
///
/// Generators are the Schreier elements `u x (overline{ux})^-1`, dropping
/// those that freely reduce to the identity (exactly the pairs with `ux`
/// already a representative). Relators are `u r u^-1` for every
/// representative `u` and base relator `r`, rewritten and freely reduced;
/// empty and repeated relators are dropped.
pub fn reidemeister_schreier<S: Symbol>(
    pres: &Presentation<S>,
    table: &CosetTable<S>,
) -> Result<SubgroupPresentation<S>> {
    if pres.generators() != table.generators() {
        return Err(Error::InconsistentTable(
            "table generators differ from presentation generators".into(),
        ));
    }
    let mut trivial = HashSet::new();
    let mut generators = Vec::new();
    let mut expansions = BTreeMap::new();
    for coset in 0..table.index() {
        for s in pres.generators() {
            let sg = SchreierGen {
                coset,
                generator: s.clone(),
            };
            let element = table.schreier_element(coset, s)?;
            if element.free_reduce().is_empty() {
                trivial.insert(sg);
            } else {
                generators.push(sg.clone());
                expansions.insert(sg, element);
            }
        }
    }
    let mut relators = Vec::new();
    let mut seen = HashSet::new();
    for coset in 0..table.index() {
        for r in pres.relators() {
            let (rewritten, end) = schreier_rewrite(table, &trivial, coset, r)?;
            if end != coset {
                return Err(Error::InconsistentTable(format!(
                    "relator `{r}` does not fix coset {coset}"
                )));
            }
            let reduced = rewritten.free_reduce();
            if !reduced.is_empty() && seen.insert(reduced.clone()) {
                relators.push(reduced);
            }
        }
    }
    Ok(SubgroupPresentation {
        presentation: Presentation::new(generators, relators)?,
        expansions,
    })
}

/// Renames the Schreier generators of the parity table to `A_i, B_j, y_k,
/// C_k`, checking that each expansion agrees with [`PlusGen::expansion`].
pub fn relabel_plus(
    sub: &SubgroupPresentation<Generator>,
    params: &SurfaceParams,
) -> Result<Presentation<PlusGen>> {
    let mut names = BTreeMap::new();
    for (sg, expansion) in &sub.expansions {
        let p = plus_schreier_symbol(sg.coset, sg.generator, params)
            .ok_or_else(|| Error::InconsistentTable(format!("`{sg}` should have been omitted")))?;
        if !p.expansion(params).freely_equals(expansion) {
            return Err(Error::InconsistentTable(format!(
                "`{sg}` expands to `{expansion}`, expected `{}`",
                p.expansion(params)
            )));
        }
        names.insert(sg.clone(), p);
    }
    sub.relabel(|sg| names[sg])
}

/// The relators of `(π_g^{b-1})^+` written directly in the plus alphabet:
///
/// 1. `A_i B_i` (i < g) and `B_g` (`= x_g^2`)
/// 2. `y_j`
/// 3. `A_i B_j A_k B_i A_j B_k` for `i < j < k`
/// 4. `B_i A_i` (i < g)
/// 5. `C_j`
/// 6. `B_i A_j B_k A_i B_j A_k` for `i < j < k`
///
/// `A_g` stands for `x_g x_g^-1` and is dropped.
pub fn plus_quotient_relators(params: &SurfaceParams) -> Vec<PlusWord> {
    let g = params.g();
    let a = |i: usize| {
        if i == g {
            PlusWord::identity()
        } else {
            PlusWord::generator(PlusGen::A(i))
        }
    };
    let b = |j: usize| PlusWord::generator(PlusGen::B(j));
    let cat = |parts: &[PlusWord]| {
        parts
            .iter()
            .fold(PlusWord::identity(), |acc, p| acc.concat(p))
    };
    let triples = || {
        (1..=g)
            .flat_map(move |i| (i + 1..=g).flat_map(move |j| (j + 1..=g).map(move |k| (i, j, k))))
    };
    let mut out = Vec::new();
    out.extend((1..g).map(|i| cat(&[a(i), b(i)])));
    out.push(b(g));
    out.extend((1..params.b()).map(|j| PlusWord::generator(PlusGen::Y(j))));
    out.extend(triples().map(|(i, j, k)| cat(&[a(i), b(j), a(k), b(i), a(j), b(k)])));
    out.extend((1..g).map(|i| cat(&[b(i), a(i)])));
    out.extend((1..params.b()).map(|j| PlusWord::generator(PlusGen::C(j))));
    out.extend(triples().map(|(i, j, k)| cat(&[b(i), a(j), b(k), a(i), b(j), a(k)])));
    out
}

/// How two consecutive expressions in a displayed chain are related.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Step {
    /// Equal in the free group.
    Equal,
    /// Equal modulo `x_1^2, ..., x_g^2`.
    Congruent,
}

/// One checked link of a chain of congruences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceCheck {
    pub family: String,
    pub indices: Vec<usize>,
    pub step: usize,
    pub relation: Step,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub checks: Vec<EquivalenceCheck>,
}

impl EquivalenceReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EquivalenceCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn pair_commutator(a: usize, b: usize, c: usize, d: usize) -> Word {
    use crate::words::xs;
    commutator(&xs(&[a, b]), &xs(&[c, d]))
}

/// The chains relating `(x_i x_j x_k)^2` and the pair commutators modulo
/// squares, as `(family, expressions, relations between neighbours)`.
fn chains_for(idx: &[usize]) -> Vec<(&'static str, Vec<Word>, Vec<Step>)> {
    use crate::words::{x, xs};
    use Step::{Congruent, Equal};
    let mut out = Vec::new();
    match *idx {
        [i, j, k] => {
            let t = xs(&[i, j, k]);
            out.push((
                "triple->[xixj,xkxj]",
                vec![
                    triple_square(i, j, k),
                    t.concat(&xs(&[j, j])).concat(&t),
                    xs(&[i, j, k, j, j, i, j, k]),
                    xs(&[i, j, k, j])
                        .concat(&xs(&[i, j]).inverse())
                        .concat(&xs(&[k, j]).inverse()),
                    pair_commutator(i, j, k, j),
                ],
                vec![Congruent, Equal, Congruent, Equal],
            ));
            out.push((
                "[xixj,xixk]",
                vec![
                    pair_commutator(i, j, i, k),
                    xs(&[i, j, i, k, j, i, k, i]),
                    conjugate(&x(i), &triple_square(j, i, k)),
                ],
                vec![Congruent, Congruent],
            ));
            out.push((
                "[xixj,xkxj]",
                vec![
                    pair_commutator(i, j, k, j),
                    xs(&[i, j, k, j, j, i, j, k]),
                    triple_square(i, j, k),
                ],
                vec![Congruent, Congruent],
            ));
            out.push((
                "[xixj,xkxi]",
                vec![
                    pair_commutator(i, j, k, i),
                    xs(&[i, j, k, i, j, i, i, k]),
                    triple_square(i, j, k),
                ],
                vec![Congruent, Congruent],
            ));
            out.push((
                "[xixj,xjxk]",
                vec![
                    pair_commutator(i, j, j, k),
                    xs(&[i, j, j, k, j, i, k, j]),
                    triple_square(i, k, j),
                ],
                vec![Congruent, Congruent],
            ));
        }
        [i, j, k, l] => {
            let kl = xs(&[k, l]);
            out.push((
                "[xixj,xkxl]",
                vec![
                    pair_commutator(i, j, k, l),
                    xs(&[i, j, k, l, j, i, l, k]),
                    triple_square(i, j, k)
                        .concat(&xs(&[k, j, i, i, j, l]))
                        .concat(&triple_square(l, j, i))
                        .concat(&xs(&[l, k])),
                    triple_square(i, j, k).concat(&conjugate(&kl, &triple_square(l, j, i))),
                ],
                vec![Congruent, Congruent, Congruent],
            ));
        }
        _ => unreachable!("chains take three or four indices"),
    }
    out
}

/// The index patterns `(i(1), i(2), i(3), i(4))` whose commutator
/// collapses modulo squares alone, with `i, j, k` standing for distinct
/// indices 0, 1, 2.
pub const DEGENERATE_PATTERNS: [[usize; 4]; 10] = [
    [0, 0, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
    [1, 0, 0, 0],
    [0, 0, 1, 1],
    [0, 1, 0, 1],
    [0, 1, 1, 0],
    [0, 0, 1, 2],
    [0, 1, 2, 2],
];

fn distinct_tuples(g: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn go(g: usize, len: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for v in 1..=g {
            if !current.contains(&v) {
                current.push(v);
                go(g, len, current, out);
                current.pop();
            }
        }
    }
    go(g, len, &mut current, &mut out);
    out
}

fn check_link(a: &Word, b: &Word, relation: Step) -> bool {
    let related = |p: &Word, q: &Word| {
        let quotient = p.concat(&q.inverse());
        match relation {
            Step::Equal => quotient.free_reduce().is_empty(),
            Step::Congruent => reduce_mod_squares(&quotient).is_empty(),
        }
    };
    related(a, b) && related(b, a)
}

/// Checks every link of the displayed congruence chains for all admissible
/// index tuples (`i < j < k` for the first chain, pairwise distinct
/// indices for the pair-commutator chains) and the ten degenerate
/// commutator patterns. Each link is checked in both directions.
pub fn verify_square_equivalences(g: usize) -> Result<EquivalenceReport> {
    if g < 4 {
        return Err(Error::Precondition(format!(
            "the four-index identity needs g >= 4, got g = {g}"
        )));
    }
    let mut report = EquivalenceReport::default();
    for idx in distinct_tuples(g, 3)
        .into_iter()
        .chain(distinct_tuples(g, 4))
    {
        for (family, exprs, relations) in chains_for(&idx) {
            let sorted = idx.windows(2).all(|w| w[0] < w[1]);
            if family.starts_with("triple") && !sorted {
                continue;
            }
            for (step, relation) in relations.into_iter().enumerate() {
                report.checks.push(EquivalenceCheck {
                    family: family.to_string(),
                    indices: idx.clone(),
                    step: step + 1,
                    relation,
                    passed: check_link(&exprs[step], &exprs[step + 1], relation),
                });
            }
        }
    }
    for idx in distinct_tuples(g, 3) {
        for pattern in DEGENERATE_PATTERNS {
            let t: Vec<usize> = pattern.iter().map(|&p| idx[p]).collect();
            let c = pair_commutator(t[0], t[1], t[2], t[3]);
            report.checks.push(EquivalenceCheck {
                family: "degenerate".into(),
                indices: t,
                step: 1,
                relation: Step::Congruent,
                passed: check_link(&c, &Word::identity(), Step::Congruent),
            });
        }
    }
    Ok(report)
}
