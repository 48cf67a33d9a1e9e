#![allow(dead_code)]

use proptest::prelude::*;
use torelli::words::{Generator, Letter, Word};
use torelli::SurfaceParams;

pub fn params(g: usize, b: usize) -> SurfaceParams {
    SurfaceParams::new(g, b).unwrap()
}

pub fn letter(g: usize, b: usize) -> impl Strategy<Value = Letter<Generator>> {
    let xs = (1..=g, any::<bool>())
        .prop_map(|(i, s)| Letter::new(Generator::x(i), if s { 1 } else { -1 }));
    if b > 1 {
        let ys = (1..b, any::<bool>())
            .prop_map(|(j, s)| Letter::new(Generator::y(j), if s { 1 } else { -1 }));
        prop_oneof![3 => xs, 1 => ys].boxed()
    } else {
        xs.boxed()
    }
}

pub fn word(g: usize, b: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(g, b), 0..=max_len).prop_map(Word::from_letters)
}

/// Words whose projection has even length.
pub fn plus_word(g: usize, b: usize, max_len: usize) -> impl Strategy<Value = Word> {
    word(g, b, max_len).prop_map(move |mut w| {
        let p = params(g, b);
        if !torelli::in_plus(&w, &p) {
            w.push(Letter::pos(Generator::x(g)));
        }
        w
    })
}

/// `u` then `u` reversed: always in the kernel.
pub fn mirrored(g: usize, b: usize, max_half: usize) -> impl Strategy<Value = Word> {
    word(g, b, max_half).prop_map(|u| {
        let mut letters = u.letters().to_vec();
        letters.extend(u.letters().iter().rev().copied());
        Word::from_letters(letters)
    })
}
