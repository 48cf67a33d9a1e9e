use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use torelli::catalog::{boundary_products, generating_set, lift_table, validate_formula};
use torelli::certificates::{gamma_certificate, verify_certificate};
use torelli::homology::{compose, correction_twists, xij_matrix};
use torelli::presentations::{
    parity_coset_table, pi_presentation, plus_quotient_relators, reidemeister_schreier,
    relabel_plus, verify_square_equivalences, CosetTable,
};
use torelli::quotient::nf;
use torelli::sample::{all_x_words, Sampler};
use torelli::suite::concordance_words;
use torelli::surface::{oe_profile, PlusGen};
use torelli::words::{parse_word, Generator, Letter, Word};
use torelli::{in_gamma, in_plus, push_action, Error, SurfaceParams};

const SEED: u64 = 1;

fn params(g: usize, b: usize) -> SurfaceParams {
    SurfaceParams::new(g, b).unwrap()
}

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn commuting_pairs() -> Verdict {
    let p = params(5, 2);
    let mats: Vec<_> = (1..=5)
        .flat_map(|i| (1..=5).map(move |j| (i, j)))
        .map(|(i, j)| xij_matrix(i, j, &p).unwrap())
        .collect();
    let mut pairs = 0;
    let mut bad = 0;
    for a in &mats {
        for b in &mats {
            pairs += 1;
            if compose(a, b).unwrap() != compose(b, a).unwrap() {
                bad += 1;
            }
        }
    }
    verdict(
        pairs == 625 && bad == 0,
        format!("{pairs} pairs, {bad} non-commuting"),
    )
}

fn agrees(w: &Word, p: &SurfaceParams) -> bool {
    let member = in_gamma(w, p);
    member == nf(w, p).is_trivial()
        && (!in_plus(w, p) || member == push_action(w, p).unwrap().is_identity())
}

fn concordance() -> Verdict {
    let small = params(3, 2);
    let exhaustive: Vec<Word> = (0..=6).flat_map(|n| all_x_words(3, n)).collect();
    let bad_small = exhaustive.par_iter().filter(|w| !agrees(w, &small)).count();
    let p = params(5, 3);
    let random = concordance_words(&p, SEED);
    let bad_random = random.par_iter().filter(|w| !agrees(w, &p)).count();
    let members = random.iter().filter(|w| in_gamma(w, &p)).count();
    verdict(
        bad_small == 0 && bad_random == 0 && random.len() == 10_000,
        format!(
            "{} exhaustive words, {} random words ({members} members), {} disagreements",
            exhaustive.len(),
            random.len(),
            bad_small + bad_random
        ),
    )
}

fn well_definedness() -> Verdict {
    use rand::Rng;
    let mut s = Sampler::new(SEED);
    let mut bad = 0;
    let trials = 1000;
    for t in 0..trials {
        let b = if t % 3 == 0 { 1 } else { 3 };
        let p = params(5, b);
        let w = s.plus_word(&p, 30);
        let at = s.rng().gen_range(0..=w.len());
        let inserted: Vec<Letter<Generator>> = match (t % 3, b) {
            (0, _) => (1..=5)
                .flat_map(|i| [Letter::pos(Generator::x(i)); 2])
                .collect(),
            (1, _) => {
                let l = s.letter(&p);
                vec![l, l.inv()]
            }
            _ => vec![Letter::new(Generator::y(s.rng().gen_range(1..=2)), -1)],
        };
        let mut letters = w.letters().to_vec();
        letters.splice(at..at, inserted);
        let before = oe_profile(&w, &p).unwrap().differences();
        let after = oe_profile(&Word::from_letters(letters), &p).map(|x| x.differences());
        if after.as_ref() != Ok(&before) {
            bad += 1;
        }
    }
    verdict(
        bad == 0,
        format!("{trials} trials, {bad} changed a difference"),
    )
}

fn worked_example() -> Verdict {
    let p = params(4, 6);
    let w = parse_word("x1 y2 x2 x3^-1 y5 y1^-2 x1 x2^-1 y4^3 x3^-1", &p).unwrap();
    let profile = oe_profile(&w, &p).unwrap();
    let ok = profile.odd == [1, 1, 1, 0] && profile.even == [1, 1, 1, 0] && in_gamma(&w, &p);
    verdict(
        ok,
        format!(
            "O = {:?}, E = {:?}, member = {}",
            profile.odd,
            profile.even,
            in_gamma(&w, &p)
        ),
    )
}

fn reidemeister_schreier_check() -> Verdict {
    let p = params(5, 3);
    let pres = pi_presentation(&p);
    let sub = reidemeister_schreier(&pres, &parity_coset_table(&pres, &p).unwrap()).unwrap();
    let plus = relabel_plus(&sub, &p).unwrap();
    let mut gens = plus.generators().to_vec();
    gens.sort();
    let gens_ok = gens == PlusGen::basis(&p) && !gens.contains(&PlusGen::A(5));
    let mut got: Vec<String> = plus.relators().iter().map(ToString::to_string).collect();
    let mut want: Vec<String> = plus_quotient_relators(&p)
        .iter()
        .map(|w| w.free_reduce().to_string())
        .collect();
    got.sort();
    want.sort();
    let trivial =
        reidemeister_schreier(&pres, &CosetTable::trivial(pres.generators().to_vec())).unwrap();
    let index_one = trivial.relabel(|s| s.generator).unwrap() == pres;
    verdict(
        gens_ok && got == want && index_one,
        format!(
            "{} generators, {} relators, index-one unchanged = {index_one}",
            gens.len(),
            got.len()
        ),
    )
}

fn square_equivalences() -> Verdict {
    let report = verify_square_equivalences(5).unwrap();
    let failed = report.failures().count();
    verdict(
        report.all_passed(),
        format!("{} links checked, {failed} failed", report.checks.len()),
    )
}

fn certificate_soundness() -> Verdict {
    let p = params(5, 3);
    let mut s = Sampler::new(SEED);
    let mut words: Vec<(Word, SurfaceParams)> = (0..1000)
        .map(|_| (s.gamma_member(&p, 20, 6).0, p))
        .collect();
    words.extend(
        concordance_words(&p, SEED)
            .into_iter()
            .filter(|w| in_gamma(w, &p))
            .map(|w| (w, p)),
    );
    let small = params(3, 2);
    words.extend(
        (0..=6)
            .flat_map(|n| all_x_words(3, n))
            .filter(|w| in_gamma(w, &small))
            .map(|w| (w, small)),
    );
    let bad = words
        .par_iter()
        .filter(|(w, p)| match gamma_certificate(w, p) {
            Ok(c) => !verify_certificate(&c, w) || c.len() > w.len() * w.len() + w.len(),
            Err(_) => true,
        })
        .count();
    verdict(
        bad == 0,
        format!("{} members certified, {bad} failures", words.len()),
    )
}

fn corrections() -> Verdict {
    let mut s = Sampler::new(SEED);
    let mut bad = 0;
    for (g, b) in [(4, 1), (5, 3)] {
        let p = params(g, b);
        for _ in 0..1000 {
            let n = s.zero_sum_vector(g, 5);
            if !correction_twists(&n, &p).unwrap().composed.is_identity() {
                bad += 1;
            }
            let m = s.nonzero_sum_vector(g, 5);
            if !matches!(correction_twists(&m, &p), Err(Error::Constraint(_))) {
                bad += 1;
            }
        }
    }
    verdict(
        bad == 0,
        format!("2000 corrections and 2000 rejections, {bad} failures"),
    )
}

fn catalog() -> Verdict {
    let mut bad = Vec::new();
    for g in 4..=6 {
        for b in 0..=3 {
            let set = generating_set(g, b).unwrap();
            let m = b.saturating_sub(1);
            let names: Vec<String> = set.iter().map(ToString::to_string).collect();
            let mut expected = vec!["t_alpha".to_string(), "t_beta_betaprime".to_string()];
            expected.extend((1..=m).map(|i| format!("t_delta({i})")));
            expected.extend((1..=m).map(|i| format!("t_rho({i})")));
            expected.extend(
                (1..=m).flat_map(|i| (i + 1..=m).map(move |j| format!("t_sigma({i},{j})"))),
            );
            expected.extend(
                (1..=m).flat_map(|i| (i + 1..=m).map(move |j| format!("t_sigmabar({i},{j})"))),
            );
            if g == 4 {
                expected.push("t_gamma".into());
            }
            if names != expected {
                bad.push(format!("generators at ({g},{b})"));
            }
            if b == 0 {
                continue;
            }
            let p = params(g, b);
            for lift in lift_table(&p) {
                if !in_gamma(&lift.word, &p) || !push_action(&lift.word, &p).unwrap().is_identity()
                {
                    bad.push(format!("lift {} at ({g},{b})", lift.word));
                }
            }
            for f in boundary_products(&p).unwrap() {
                if validate_formula(&f, &p).is_err() {
                    bad.push(format!("{} at ({g},{b})", f.target));
                }
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!("12 parameter pairs, failures: {bad:?}"),
    )
}

fn cli_suite() -> Verdict {
    let out = Command::new(env!("CARGO_BIN_EXE_torelli"))
        .args(["suite", "--g", "5", "--b", "3"])
        .output()
        .expect("run the torelli binary");
    let stdout = String::from_utf8_lossy(&out.stdout);
    let lines = stdout.lines().filter(|l| l.starts_with("[PASS]")).count();
    verdict(
        out.status.success() && lines == 9,
        format!("exit {:?}, {lines} of 9 checks passed", out.status.code()),
    )
}

type Criterion = (u8, &'static str, fn() -> Verdict, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            1,
            "x_ij matrices commute at g=5, b=2",
            commuting_pairs,
            Duration::from_secs(1),
        ),
        (
            2,
            "kernel concordance",
            concordance,
            Duration::from_secs(30),
        ),
        (
            3,
            "profile well-definedness",
            well_definedness,
            Duration::from_secs(30),
        ),
        (4, "worked example", worked_example, Duration::from_secs(1)),
        (
            5,
            "reidemeister-schreier reproduction",
            reidemeister_schreier_check,
            Duration::from_secs(5),
        ),
        (
            6,
            "square-congruence equivalences at g=5",
            square_equivalences,
            Duration::from_secs(5),
        ),
        (
            7,
            "certificate soundness",
            certificate_soundness,
            Duration::from_secs(60),
        ),
        (8, "twist correction", corrections, Duration::from_secs(30)),
        (9, "catalog integrity", catalog, Duration::from_secs(5)),
        (
            10,
            "cli suite --g 5 --b 3",
            cli_suite,
            Duration::from_secs(120),
        ),
    ];
    let mut all = true;
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let ok = v.ok && elapsed <= limit;
        all &= ok;
        println!(
            "criterion {id:>2} {}: {name} ({}; {:.2} s, limit {} s)",
            if ok { "PASS" } else { "FAIL" },
            v.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
