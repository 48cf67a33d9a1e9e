//! Seeded random inputs for the verification suite and the tests.
//!
//! ChaCha8 keeps streams identical across platforms and `rand` releases,
//! so a seed names the same words everywhere.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificates::{Certificate, Entry, RelatorInstance};
use crate::surface::SurfaceParams;
use crate::words::{Generator, Letter, Word};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A sampler for sub-task `stream` of a run seeded with `seed`.
    pub fn stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn letter(&mut self, params: &SurfaceParams) -> Letter<Generator> {
        let gens = params.generators();
        let s = *gens.choose(&mut self.rng).expect("at least one generator");
        Letter::new(s, if self.rng.gen() { 1 } else { -1 })
    }

    pub fn x_letter(&mut self, params: &SurfaceParams) -> Letter<Generator> {
        let i = self.rng.gen_range(1..=params.g());
        Letter::new(Generator::x(i), if self.rng.gen() { 1 } else { -1 })
    }

    /// A word of exactly `len` uniformly chosen letters, not reduced.
    pub fn word_of_len(&mut self, params: &SurfaceParams, len: usize) -> Word {
        (0..len).map(|_| self.letter(params)).collect()
    }

    /// A word whose length is uniform in `0..=max_len`.
    pub fn word(&mut self, params: &SurfaceParams, max_len: usize) -> Word {
        let len = self.rng.gen_range(0..=max_len);
        self.word_of_len(params, len)
    }

    /// `u` followed by the letters of `u` in reverse order. Mirrored
    /// positions have opposite parity, so the result always lies in `Γ`.
    pub fn mirrored_word(&mut self, params: &SurfaceParams, max_len: usize) -> Word {
        let u = self.word(params, max_len / 2);
        let mut letters = u.letters().to_vec();
        letters.extend(u.letters().iter().rev().copied());
        Word::from_letters(letters)
    }

    /// The test mix: a third uniform words, a third mirrored words and a
    /// third mirrored words with one letter replaced, so that members and
    /// near-misses of `Γ` both show up often.
    pub fn mixed_word(&mut self, params: &SurfaceParams, max_len: usize) -> Word {
        match self.rng.gen_range(0..3) {
            0 => self.word(params, max_len),
            1 => self.mirrored_word(params, max_len),
            _ => {
                let w = self.mirrored_word(params, max_len);
                if w.is_empty() {
                    return w;
                }
                let mut letters = w.into_letters();
                let k = self.rng.gen_range(0..letters.len());
                letters[k] = self.letter(params);
                Word::from_letters(letters)
            }
        }
    }

    /// A word with an even number of `x` letters after projection.
    pub fn plus_word(&mut self, params: &SurfaceParams, max_len: usize) -> Word {
        let mut w = self.word(params, max_len);
        if !crate::surface::in_plus(&w, params) {
            w.push(Letter::pos(Generator::x(params.g())));
        }
        w
    }

    pub fn relator(&mut self, params: &SurfaceParams) -> RelatorInstance {
        let g = params.g();
        let families = if params.num_y() > 0 { 4 } else { 3 };
        let family = self.rng.gen_range(0..families);
        let mut idx = || self.rng.gen_range(1..=g);
        match family {
            0 => RelatorInstance::Square(idx()),
            1 => RelatorInstance::PairCommutator(idx(), idx(), idx(), idx()),
            2 => RelatorInstance::TripleSquare(idx(), idx(), idx()),
            _ => RelatorInstance::Ykill(self.rng.gen_range(1..=params.num_y())),
        }
    }

    /// A product of `1..=max_factors` conjugated relators, each conjugator
    /// of length at most `conj_len`, together with the certificate it was
    /// built from. The product lies in `Γ` by construction.
    pub fn gamma_member(
        &mut self,
        params: &SurfaceParams,
        max_factors: usize,
        conj_len: usize,
    ) -> (Word, Certificate) {
        let n = self.rng.gen_range(1..=max_factors);
        let entries: Vec<Entry> = (0..n)
            .map(|_| {
                let conj = self.word(params, conj_len);
                let relator = self.relator(params);
                let exp = if self.rng.gen() { 1 } else { -1 };
                Entry::new(conj, relator, exp)
            })
            .collect();
        let cert = Certificate { entries };
        (crate::certificates::expand_certificate(&cert), cert)
    }

    /// An integer vector of length `len`, entries in `-bound..=bound`,
    /// summing to zero.
    pub fn zero_sum_vector(&mut self, len: usize, bound: i64) -> Vec<i64> {
        loop {
            let mut v: Vec<i64> = (0..len.saturating_sub(1))
                .map(|_| self.rng.gen_range(-bound..=bound))
                .collect();
            let last = -v.iter().sum::<i64>();
            if last.abs() <= bound {
                v.push(last);
                v.shuffle(&mut self.rng);
                return v;
            }
        }
    }

    /// An integer vector of length `len` with nonzero sum.
    pub fn nonzero_sum_vector(&mut self, len: usize, bound: i64) -> Vec<i64> {
        loop {
            let v: Vec<i64> = (0..len)
                .map(|_| self.rng.gen_range(-bound..=bound))
                .collect();
            if v.iter().sum::<i64>() != 0 {
                return v;
            }
        }
    }
}

/// Every word of length `len` over `x_1..x_g` and their inverses, in
/// lexicographic order of `(index, sign)`.
pub fn all_x_words(g: usize, len: usize) -> impl Iterator<Item = Word> {
    let letters: Vec<Letter<Generator>> = (1..=g)
        .flat_map(|i| [Letter::pos(Generator::x(i)), Letter::neg(Generator::x(i))])
        .collect();
    let base = letters.len();
    let total = base.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push(letters[code % base]);
            code /= base;
        }
        Word::from_letters(out)
    })
}
