//! The verification suite: every exact check the library can run on
//! itself at a given `(g, b)`, fanned out across cores.
//!
//! Each check gets its own ChaCha stream derived from the run seed, so
//! reports do not depend on scheduling.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{
    boundary_products, generating_set, lift_table, validate_formula, MappingClassName,
};
use crate::certificates::{gamma_certificate, verify_certificate};
use crate::error::{Error, Result};
use crate::homology::{compose, correction_twists, push_action, xij_matrix};
use crate::presentations::{
    parity_coset_table, pi_presentation, plus_quotient_relators, reidemeister_schreier,
    relabel_plus, verify_square_equivalences, CosetTable,
};
use crate::quotient::nf;
use crate::sample::{all_x_words, Sampler};
use crate::surface::{in_gamma, in_plus, oe_profile, parse_plus_word, PlusGen, SurfaceParams};
use crate::words::{parse_word, Generator, Letter, Word};

pub const RANDOM_WORDS: usize = 10_000;
pub const RANDOM_WORD_LEN: usize = 40;
pub const INSERTION_TRIALS: usize = 1_000;
pub const BUILT_MEMBERS: usize = 1_000;
pub const MAX_FACTORS: usize = 20;
pub const CORRECTION_TRIALS: usize = 1_000;
pub const EXHAUSTIVE_LEN: usize = 6;

const MAX_REPORTED: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// What a single check saw: how many cases ran and the first few that
/// failed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub cases: usize,
    pub failures: Vec<String>,
    pub failed: usize,
    pub skipped: Option<String>,
}

impl Outcome {
    fn skip(reason: impl Into<String>) -> Self {
        Outcome {
            skipped: Some(reason.into()),
            ..Outcome::default()
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(describe());
            }
        }
    }

    fn merge(mut self, other: Outcome) -> Self {
        self.cases += other.cases;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(f);
            }
        }
        self
    }

    pub fn status(&self) -> Status {
        match (&self.skipped, self.failed) {
            (Some(_), _) => Status::Skip,
            (None, 0) => Status::Pass,
            _ => Status::Fail,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    pub cases: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub g: usize,
    pub b: usize,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Timings are left out so that the JSON is identical across runs.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite g={} b={} seed={}", self.g, self.b, self.seed)?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            writeln!(
                f,
                "[{tag}] {:>2} {:<28} {:>7} cases {:>9.3} s",
                c.id,
                c.name,
                c.cases,
                c.elapsed.as_secs_f64()
            )?;
            if let Some(reason) = &c.skipped {
                writeln!(f, "       {reason}")?;
            }
            for failure in &c.failures {
                writeln!(f, "       {failure}")?;
            }
        }
        let verdict = if self.passed() {
            "all checks passed"
        } else {
            "FAILED"
        };
        write!(f, "{verdict}")
    }
}

type CheckFn = fn(&SurfaceParams, u64) -> Result<Outcome>;

/// `(id, name, check)` in report order.
pub const CHECKS: [(u8, &str, CheckFn); 9] = [
    (1, "x_ij commute", check_commuting_matrices),
    (2, "kernel concordance", check_concordance),
    (3, "profile well-definedness", check_insertions),
    (4, "worked example", check_worked_example),
    (5, "reidemeister-schreier", check_reidemeister_schreier),
    (6, "square equivalences", check_square_equivalences),
    (7, "certificate soundness", check_certificates),
    (8, "twist corrections", check_corrections),
    (9, "catalog integrity", check_catalog),
];

pub fn run_suite(g: usize, b: usize, seed: u64) -> Result<SuiteReport> {
    let params = SurfaceParams::new(g, b)?;
    let checks = CHECKS
        .par_iter()
        .map(|&(id, name, check)| run_check(id, name, check, &params, seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { g, b, seed, checks })
}

pub fn run_check(
    id: u8,
    name: &'static str,
    check: CheckFn,
    params: &SurfaceParams,
    seed: u64,
) -> Result<CheckReport> {
    let start = Instant::now();
    let outcome = check(params, seed)?;
    Ok(CheckReport {
        id,
        name,
        status: outcome.status(),
        cases: outcome.cases,
        failed: outcome.failed,
        failures: outcome.failures,
        skipped: outcome.skipped,
        elapsed: start.elapsed(),
    })
}

/// Every pair `(x_ij, x_kl)` with indices in `1..=g` commutes.
pub fn check_commuting_matrices(params: &SurfaceParams, _seed: u64) -> Result<Outcome> {
    let g = params.g();
    let mats = (1..=g)
        .flat_map(|i| (1..=g).map(move |j| (i, j)))
        .map(|(i, j)| Ok(((i, j), xij_matrix(i, j, params)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Outcome::default();
    for (p, a) in &mats {
        for (q, b) in &mats {
            let ok = compose(a, b)? == compose(b, a)?;
            out.case(ok, || format!("x{p:?} and x{q:?} do not commute"));
        }
    }
    Ok(out)
}

/// The random words shared by the concordance and certificate checks.
pub fn concordance_words(params: &SurfaceParams, seed: u64) -> Vec<Word> {
    let mut s = Sampler::stream(seed, 2);
    (0..RANDOM_WORDS)
        .map(|_| s.mixed_word(params, RANDOM_WORD_LEN))
        .collect()
}

/// All words over `x_1^±1..x_3^±1` of length at most six.
pub fn exhaustive_words() -> impl ParallelIterator<Item = Word> {
    (0..=EXHAUSTIVE_LEN)
        .into_par_iter()
        .flat_map_iter(|len| all_x_words(3, len))
}

fn concordance_case(w: &Word, params: &SurfaceParams) -> Result<Outcome> {
    let member = in_gamma(w, params);
    let mut out = Outcome::default();
    let trivial = nf(w, params).is_trivial();
    out.case(member == trivial, || {
        format!("`{w}`: in_gamma = {member}, trivial normal form = {trivial}")
    });
    if in_plus(w, params) {
        let identity = push_action(w, params)?.is_identity();
        out.case(member == identity, || {
            format!("`{w}`: in_gamma = {member}, identity action = {identity}")
        });
    }
    Ok(out)
}

/// `in_gamma ⟺ trivial normal form ⟺ identity push action`, exhaustively
/// at `g = 3, b = 2` and on seeded random words at `params`.
pub fn check_concordance(params: &SurfaceParams, seed: u64) -> Result<Outcome> {
    let small = SurfaceParams::new(3, 2)?;
    let exhaustive = exhaustive_words()
        .map(|w| concordance_case(&w, &small))
        .try_reduce(Outcome::default, |a, b| Ok(a.merge(b)))?;
    let random = concordance_words(params, seed)
        .par_iter()
        .map(|w| concordance_case(w, params))
        .try_reduce(Outcome::default, |a, b| Ok(a.merge(b)))?;
    Ok(exhaustive.merge(random))
}

fn differences(w: &Word, params: &SurfaceParams) -> Option<Vec<i64>> {
    oe_profile(w, params).ok().map(|p| p.differences())
}

fn closed_relator(g: usize) -> Word {
    (1..=g)
        .flat_map(|i| [Letter::pos(Generator::x(i)); 2])
        .collect()
}

fn insertion_trials(params: &SurfaceParams, s: &mut Sampler, out: &mut Outcome) {
    use rand::Rng;
    for _ in 0..INSERTION_TRIALS {
        let w = s.plus_word(params, RANDOM_WORD_LEN);
        let pos = s.rng().gen_range(0..=w.len());
        let kinds = if params.b() == 1 { 2 } else { 3 };
        let inserted: Word = match s.rng().gen_range(0..kinds) {
            0 => {
                let l = s.letter(params);
                Word::from_letters(vec![l, l.inv()])
            }
            1 if params.b() == 1 => closed_relator(params.g()),
            _ => {
                let n = s.rng().gen_range(1..=3);
                (0..n)
                    .map(|_| {
                        let j = s.rng().gen_range(1..=params.num_y());
                        Letter::new(Generator::y(j), if s.rng().gen() { 1 } else { -1 })
                    })
                    .collect()
            }
        };
        let mut letters = w.letters().to_vec();
        letters.splice(pos..pos, inserted.letters().iter().copied());
        let after = Word::from_letters(letters);
        let (d0, d1) = (differences(&w, params), differences(&after, params));
        out.case(d0.is_some() && d0 == d1, || {
            format!("inserting `{inserted}` into `{w}` at {pos} moved O - E from {d0:?} to {d1:?}")
        });
    }
}

/// Inserting cancelling pairs, `y` letters, or (on a closed surface) the
/// relator `x_1^2 ... x_g^2` leaves every `O_i - E_i` unchanged. Runs at
/// `params` and again at `b = 1`.
pub fn check_insertions(params: &SurfaceParams, seed: u64) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut s = Sampler::stream(seed, 3);
    insertion_trials(params, &mut s, &mut out);
    if params.b() != 1 {
        insertion_trials(&SurfaceParams::new(params.g(), 1)?, &mut s, &mut out);
    }
    Ok(out)
}

pub const WORKED_EXAMPLE: &str = "x1 y2 x2 x3^-1 y5 y1^-2 x1 x2^-1 y4^3 x3^-1";

/// The worked example at `g = 4, b = 6`: projection, profile and
/// membership.
pub fn check_worked_example(_params: &SurfaceParams, _seed: u64) -> Result<Outcome> {
    let p = SurfaceParams::new(4, 6)?;
    let w = parse_word(WORKED_EXAMPLE, &p)?;
    let mut out = Outcome::default();
    let projected = crate::surface::project_p(&w, &p).to_string();
    out.case(projected == "x1 x2 x3^-1 x1 x2^-1 x3^-1", || {
        format!("projection is `{projected}`")
    });
    let profile = oe_profile(&w, &p)?;
    out.case(
        profile.odd == [1, 1, 1, 0] && profile.even == [1, 1, 1, 0],
        || format!("profile is {profile:?}"),
    );
    out.case(in_gamma(&w, &p), || "not a member".into());
    Ok(out)
}

/// The parity subgroup of the quotient presentation has exactly the
/// expected free basis and relator multiset, and an index-one table
/// returns the input presentation.
pub fn check_reidemeister_schreier(params: &SurfaceParams, _seed: u64) -> Result<Outcome> {
    let mut out = Outcome::default();
    let pres = pi_presentation(params);
    let sub = reidemeister_schreier(&pres, &parity_coset_table(&pres, params)?)?;
    let plus = relabel_plus(&sub, params)?;

    let mut got = plus.generators().to_vec();
    got.sort();
    let want = PlusGen::basis(params);
    out.case(got == want, || {
        format!("generators {got:?}, expected {want:?}")
    });

    let mut got: Vec<String> = plus.relators().iter().map(ToString::to_string).collect();
    let mut want: Vec<String> = plus_quotient_relators(params)
        .iter()
        .map(|w| w.free_reduce().to_string())
        .filter(|s| s != "1")
        .collect();
    got.sort();
    want.sort();
    out.case(got == want, || {
        format!("relators {got:?}, expected {want:?}")
    });

    if params.g() >= 4 {
        let six = parse_plus_word("B1 A2 B3 A1 B2 A3", params)?;
        out.case(plus.relators().contains(&six), || {
            "conjugated triple square missing".into()
        });
    }

    let trivial = reidemeister_schreier(&pres, &CosetTable::trivial(pres.generators().to_vec()))?;
    let back = trivial.relabel(|s| s.generator)?;
    out.case(back == pres, || {
        "index-one table changed the presentation".into()
    });
    Ok(out)
}

/// Every link of every displayed congruence chain at genus `g`, both
/// directions. Needs `g ≥ 4`.
pub fn check_square_equivalences(params: &SurfaceParams, _seed: u64) -> Result<Outcome> {
    let report = match verify_square_equivalences(params.g()) {
        Err(Error::Precondition(reason)) => return Ok(Outcome::skip(reason)),
        r => r?,
    };
    let mut out = Outcome::default();
    for c in &report.checks {
        out.case(c.passed, || {
            format!(
                "{} {:?} step {} ({:?})",
                c.family, c.indices, c.step, c.relation
            )
        });
    }
    Ok(out)
}

fn certificate_case(w: &Word, params: &SurfaceParams) -> Outcome {
    let mut out = Outcome::default();
    let bound = w.len() * w.len() + w.len();
    match gamma_certificate(w, params) {
        Ok(c) => out.case(verify_certificate(&c, w) && c.len() <= bound, || {
            format!(
                "`{w}`: certificate of {} entries does not verify within {bound}",
                c.len()
            )
        }),
        Err(e) => out.case(false, || format!("`{w}`: {e}")),
    }
    out
}

/// `gamma_certificate` output verifies and stays within `L^2 + L`
/// entries, on built members and on every member among the concordance
/// words.
pub fn check_certificates(params: &SurfaceParams, seed: u64) -> Result<Outcome> {
    let mut s = Sampler::stream(seed, 7);
    let built: Vec<Word> = (0..BUILT_MEMBERS)
        .map(|_| s.gamma_member(params, MAX_FACTORS, 6).0)
        .collect();
    let small = SurfaceParams::new(3, 2)?;
    let exhaustive = exhaustive_words()
        .filter(|w| in_gamma(w, &small))
        .map(|w| certificate_case(&w, &small))
        .reduce(Outcome::default, Outcome::merge);
    let random = built
        .into_par_iter()
        .chain(
            concordance_words(params, seed)
                .into_par_iter()
                .filter(|w| in_gamma(w, params)),
        )
        .map(|w| certificate_case(&w, params))
        .reduce(Outcome::default, Outcome::merge);
    Ok(exhaustive.merge(random))
}

/// Zero-sum exponent vectors are corrected to the identity; any other
/// vector is rejected.
pub fn check_corrections(params: &SurfaceParams, seed: u64) -> Result<Outcome> {
    let mut s = Sampler::stream(seed, 8);
    let mut out = Outcome::default();
    let g = params.g();
    for _ in 0..CORRECTION_TRIALS {
        let n = s.zero_sum_vector(g, 5);
        let ok = correction_twists(&n, params)?.composed.is_identity();
        out.case(ok, || format!("n = {n:?} is not corrected"));
    }
    for _ in 0..CORRECTION_TRIALS / 10 {
        let n = s.nonzero_sum_vector(g, 5);
        let rejected = matches!(correction_twists(&n, params), Err(Error::Constraint(_)));
        out.case(rejected, || format!("n = {n:?} was accepted"));
    }
    Ok(out)
}

fn expected_generators(g: usize, b: usize) -> Vec<MappingClassName> {
    use MappingClassName as M;
    let mut out = vec![M::TAlpha, M::TBetaBetaPrime];
    for i in 1..b.max(1) {
        out.push(M::TDelta(i));
    }
    for i in 1..b.max(1) {
        out.push(M::TRho(i));
    }
    for i in 1..b.max(1) {
        for j in i + 1..b {
            out.push(M::TSigma(i, j));
        }
    }
    for i in 1..b.max(1) {
        for j in i + 1..b {
            out.push(M::TSigmaBar(i, j));
        }
    }
    if g == 4 {
        out.push(M::TGamma);
    }
    out
}

fn catalog_case(g: usize, b: usize, out: &mut Outcome) -> Result<()> {
    let got = generating_set(g, b)?;
    let want = expected_generators(g, b);
    out.case(got == want, || {
        format!("generating set at ({g},{b}) is {got:?}")
    });
    if b == 0 {
        return Ok(());
    }
    let params = SurfaceParams::new(g, b)?;
    for lift in lift_table(&params) {
        let ok = in_gamma(&lift.word, &params) && push_action(&lift.word, &params)?.is_identity();
        out.case(ok, || format!("lift word `{}` at ({g},{b})", lift.word));
    }
    for f in boundary_products(&params)? {
        let valid = validate_formula(&f, &params);
        out.case(valid.is_ok(), || format!("{}: {valid:?}", f.target));
    }
    Ok(())
}

/// Generating sets, lifts and boundary products on the grid
/// `{4,5,6} × {0,1,2,3}` and at `params`.
pub fn check_catalog(params: &SurfaceParams, _seed: u64) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut grid: Vec<(usize, usize)> =
        (4..=6).flat_map(|g| (0..=3).map(move |b| (g, b))).collect();
    if params.g() >= 4 && !grid.contains(&(params.g(), params.b())) {
        grid.push((params.g(), params.b()));
    }
    for (g, b) in grid {
        catalog_case(g, b, &mut out)?;
    }
    Ok(out)
}
