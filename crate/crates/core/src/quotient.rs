//! A solved word problem for the quotient `π_g^{b-1}` of the punctured
//! surface group by `x_i^2`, `y_j` and `(x_i x_j x_k)^2`.
//!
//! Elements are modelled in `Z^{g-1} ⋊ Z/2`, the parity acting on the
//! lattice by negation. `x_i` (i < g) maps to `(e_i, 1)`, `x_g` to `(0, 1)`
//! and every `y_j` to the identity. The kernel of this model is exactly
//! `Γ`, which gives an oracle for [`crate::surface::in_gamma`] that never
//! looks at positions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::SurfaceParams;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    pub v: Vec<i64>,
    pub parity: u8,
}

impl NormalForm {
    pub fn identity(g: usize) -> Self {
        NormalForm {
            v: vec![0; g.saturating_sub(1)],
            parity: 0,
        }
    }

    /// Image of `x_i` in a model of rank `g - 1`.
    pub fn of_x(i: usize, g: usize) -> Self {
        let mut v = vec![0; g.saturating_sub(1)];
        if i < g {
            v[i - 1] = 1;
        }
        NormalForm { v, parity: 1 }
    }

    pub fn is_trivial(&self) -> bool {
        self.parity == 0 && self.v.iter().all(|&c| c == 0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("normal forms always serialize")
    }
}

/// `(v1, e1)·(v2, e2) = (v1 + (-1)^e1 v2, e1 + e2 mod 2)`.
pub fn nf_mul(a: &NormalForm, b: &NormalForm) -> Result<NormalForm> {
    if a.v.len() != b.v.len() {
        return Err(Error::Dimension {
            expected: a.v.len(),
            found: b.v.len(),
        });
    }
    let sign = if a.parity == 1 { -1 } else { 1 };
    Ok(NormalForm {
        v: a.v.iter().zip(&b.v).map(|(x, y)| x + sign * y).collect(),
        parity: a.parity ^ b.parity,
    })
}

pub fn is_trivial(a: &NormalForm) -> bool {
    a.is_trivial()
}

/// Evaluates `w` letter by letter. Exponent signs are irrelevant because
/// every generator image has order at most two.
pub fn nf(w: &Word, params: &SurfaceParams) -> NormalForm {
    let g = params.g();
    let mut v = vec![0i64; g - 1];
    let mut parity = 0u8;
    for letter in w.iter().filter(|l| l.symbol.is_x()) {
        let i = letter.symbol.index;
        if i < g {
            // right-multiplying by (e_i, 1) adds (-1)^parity e_i
            v[i - 1] += if parity == 0 { 1 } else { -1 };
        }
        parity ^= 1;
    }
    NormalForm { v, parity }
}
