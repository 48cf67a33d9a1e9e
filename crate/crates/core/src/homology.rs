//! Integer first homology of `N_g^b` and the automorphisms induced by
//! push maps.
//!
//! `H_1(N_g^b; Z)` is generated by `c_1..c_g, d_1..d_b` subject to
//! `2(c_1 + ... + c_g) + (d_1 + ... + d_b) = 0`. We eliminate `d_b`, so
//! vectors are coordinates over `(c_1, ..., c_g, d_1, ..., d_{b-1})` and
//! `d_b` is the derived class returned by [`db_class`].
//!
//! Matrices act on column vectors; column `k` is the image of basis vector
//! `k`, and [`compose`]`(a, b)` is the map "apply `b`, then `a`".

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{project_p, SurfaceParams};
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct H1Vector(pub Vec<i64>);

impl H1Vector {
    pub fn zero(dim: usize) -> Self {
        H1Vector(vec![0; dim])
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = vec![0; dim];
        v[k] = 1;
        H1Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Row-major square integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct H1Matrix {
    n: usize,
    entries: Vec<i64>,
}

impl H1Matrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for k in 0..n {
            entries[k * n + k] = 1;
        }
        H1Matrix { n, entries }
    }

    pub fn from_columns(columns: &[H1Vector]) -> Result<Self> {
        let n = columns.len();
        let mut entries = vec![0; n * n];
        for (c, col) in columns.iter().enumerate() {
            if col.dim() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: col.dim(),
                });
            }
            for (r, &value) in col.0.iter().enumerate() {
                entries[r * n + c] = value;
            }
        }
        Ok(H1Matrix { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n + col]
    }

    fn get_mut(&mut self, row: usize, col: usize) -> &mut i64 {
        &mut self.entries[row * self.n + col]
    }

    pub fn column(&self, col: usize) -> H1Vector {
        H1Vector((0..self.n).map(|r| self.get(r, col)).collect())
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == H1Matrix::identity(self.n)
    }

    /// Adds `m · d_b` to column `c_i`.
    fn add_db_to_column(&mut self, i: usize, m: i64, db: &H1Vector) {
        for (r, &value) in db.0.iter().enumerate() {
            *self.get_mut(r, i - 1) += m * value;
        }
    }

    /// If every `d` column is fixed and every `c_i` column is
    /// `c_i + m_i d_b`, returns `(m_1, ..., m_g)`.
    pub fn db_multiples(&self, params: &SurfaceParams) -> Option<Vec<i64>> {
        let g = params.g();
        if self.n != g + params.num_y() {
            return None;
        }
        for k in g..self.n {
            if self.column(k) != H1Vector::basis(self.n, k) {
                return None;
            }
        }
        let db = db_class(params);
        let mut ms = Vec::with_capacity(g);
        for i in 0..g {
            let mut delta = self.column(i).0;
            delta[i] -= 1;
            // every d_b coordinate is nonzero (-2 in c slots), so slot i fixes m
            let m = -delta[i] / 2;
            if delta[i] != -2 * m || H1Vector(delta) != scale(&db, m) {
                return None;
            }
            ms.push(m);
        }
        Some(ms)
    }

    pub fn to_json(&self, params: &SurfaceParams) -> serde_json::Value {
        serde_json::json!({
            "basis": basis_labels(params),
            "rows": self.rows(),
        })
    }
}

impl fmt::Display for H1Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

fn scale(v: &H1Vector, m: i64) -> H1Vector {
    H1Vector(v.0.iter().map(|x| x * m).collect())
}

pub fn dimension(params: &SurfaceParams) -> usize {
    params.g() + params.num_y()
}

pub fn basis_labels(params: &SurfaceParams) -> Vec<String> {
    (1..=params.g())
        .map(|i| format!("c{i}"))
        .chain((1..params.b()).map(|j| format!("d{j}")))
        .collect()
}

/// Coordinates of `d_b = -(2(c_1 + ... + c_g) + (d_1 + ... + d_{b-1}))`.
pub fn db_class(params: &SurfaceParams) -> H1Vector {
    let mut v = vec![-2; params.g()];
    v.extend(std::iter::repeat_n(-1, params.num_y()));
    H1Vector(v)
}

pub fn act(m: &H1Matrix, v: &H1Vector) -> Result<H1Vector> {
    if m.n != v.dim() {
        return Err(Error::Dimension {
            expected: m.n,
            found: v.dim(),
        });
    }
    Ok(H1Vector(
        (0..m.n)
            .map(|r| (0..m.n).map(|c| m.get(r, c) * v.0[c]).sum())
            .collect(),
    ))
}

/// Matrix product `a · b`.
pub fn compose(a: &H1Matrix, b: &H1Matrix) -> Result<H1Matrix> {
    if a.n != b.n {
        return Err(Error::Dimension {
            expected: a.n,
            found: b.n,
        });
    }
    let n = a.n;
    let mut out = H1Matrix {
        n,
        entries: vec![0; n * n],
    };
    for r in 0..n {
        for k in 0..n {
            let left = a.get(r, k);
            if left == 0 {
                continue;
            }
            for c in 0..n {
                *out.get_mut(r, c) += left * b.get(k, c);
            }
        }
    }
    Ok(out)
}

pub fn is_identity(m: &H1Matrix) -> bool {
    m.is_identity()
}

fn check_index(i: usize, params: &SurfaceParams) -> Result<()> {
    if i < 1 || i > params.g() {
        return Err(Error::IndexOutOfRange(format!(
            "x-index {i} outside 1..={}",
            params.g()
        )));
    }
    Ok(())
}

/// `x_{ij}`: `c_i ↦ c_i - d_b`, `c_j ↦ c_j + d_b`, everything else fixed.
/// For `i > j` this is the inverse of `x_{ji}`, and `x_{ii}` is the
/// identity.
pub fn xij_matrix(i: usize, j: usize, params: &SurfaceParams) -> Result<H1Matrix> {
    xij_power(i, j, 1, params)
}

/// `x_{ij}^e`.
pub fn xij_power(i: usize, j: usize, e: i64, params: &SurfaceParams) -> Result<H1Matrix> {
    check_index(i, params)?;
    check_index(j, params)?;
    let mut m = H1Matrix::identity(dimension(params));
    if i != j {
        let db = db_class(params);
        m.add_db_to_column(i, -e, &db);
        m.add_db_to_column(j, e, &db);
    }
    Ok(m)
}

/// `x_*` for `x ∈ π_1^+`: pairs consecutive letters of the reduced
/// projection and multiplies `x_{i_1 i_2} x_{i_3 i_4} ...` left to right.
pub fn push_action(w: &Word, params: &SurfaceParams) -> Result<H1Matrix> {
    let projected = project_p(w, params);
    if !projected.len().is_multiple_of(2) {
        return Err(Error::Parity(projected.len()));
    }
    let mut acc = H1Matrix::identity(dimension(params));
    for pair in projected.letters().chunks(2) {
        let x = xij_matrix(pair[0].symbol.index, pair[1].symbol.index, params)?;
        acc = compose(&acc, &x)?;
    }
    Ok(acc)
}

/// Output of [`correction_twists`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correction {
    /// `(i, n_i)` for `τ_{ig}^{n_i}`, outermost first:
    /// `(g-1, n_{g-1}), ..., (1, n_1)`. Zero exponents are skipped.
    pub twists: Vec<(usize, i64)>,
    /// `τ_* · ψ_*` where `ψ_*(c_i) = c_i + n_i d_b`; the identity when the
    /// correction works.
    pub composed: H1Matrix,
}

/// The homology action `c_i ↦ c_i + n_i d_b`, `d_j ↦ d_j`.
pub fn db_shift_matrix(n: &[i64], params: &SurfaceParams) -> Result<H1Matrix> {
    if n.len() != params.g() {
        return Err(Error::Dimension {
            expected: params.g(),
            found: n.len(),
        });
    }
    let db = db_class(params);
    let mut m = H1Matrix::identity(dimension(params));
    for (k, &nk) in n.iter().enumerate() {
        m.add_db_to_column(k + 1, nk, &db);
    }
    Ok(m)
}

/// Builds `τ = τ_{g-1,g}^{n_{g-1}} ⋯ τ_{1,g}^{n_1}` cancelling the action
/// `c_i ↦ c_i + n_i d_b`. Requires `Σ n_k = 0`.
pub fn correction_twists(n: &[i64], params: &SurfaceParams) -> Result<Correction> {
    let psi = db_shift_matrix(n, params)?;
    let total: i64 = n.iter().sum();
    if total != 0 {
        return Err(Error::Constraint(format!(
            "correction needs n_1 + ... + n_g = 0, got {total}"
        )));
    }
    let g = params.g();
    let twists: Vec<(usize, i64)> = (1..g)
        .rev()
        .map(|i| (i, n[i - 1]))
        .filter(|&(_, e)| e != 0)
        .collect();
    let mut tau = H1Matrix::identity(dimension(params));
    for &(i, e) in &twists {
        tau = compose(&tau, &xij_power(i, g, e, params)?)?;
    }
    let composed = compose(&tau, &psi)?;
    Ok(Correction { twists, composed })
}
