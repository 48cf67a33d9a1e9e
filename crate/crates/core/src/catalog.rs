//! Named mapping classes: the normal generating sets of the Torelli group
//! of `N_g^b`, the lifts of the push-map normal generators, and the
//! explicit products expressing `t_{δ_b}`, `t_{ρ_b}` and `t_{σ_{kb}}`.
//!
//! Mapping classes are opaque symbols here. Nothing is multiplied; the
//! data is built, index-checked and serialized.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{in_gamma, SurfaceParams};
use crate::words::{conjugate, x, xs, y, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    BsccTwist,
    BpMap,
    NamedProduct,
}

/// A named mapping class. `A`, `B`, `C` are the twists `a_{i,j}`,
/// `b_{j,k}`, `c_{k,l}`; `push` is the boundary index `m` of the variants
/// `a_{i,j;m}` etc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MappingClassName {
    TAlpha,
    TBetaBetaPrime,
    TGamma,
    TDelta(usize),
    TRho(usize),
    TSigma(usize, usize),
    TSigmaBar(usize, usize),
    A {
        i: usize,
        j: usize,
        push: Option<usize>,
    },
    B {
        j: usize,
        k: usize,
        push: Option<usize>,
    },
    C {
        k: usize,
        l: usize,
        push: Option<usize>,
    },
}

use MappingClassName as M;

impl MappingClassName {
    pub fn a(i: usize, j: usize) -> Self {
        M::A { i, j, push: None }
    }

    pub fn b(j: usize, k: usize) -> Self {
        M::B { j, k, push: None }
    }

    pub fn c(k: usize, l: usize) -> Self {
        M::C { k, l, push: None }
    }

    pub fn kind(&self) -> ClassKind {
        match self {
            M::TBetaBetaPrime => ClassKind::BpMap,
            M::A { .. } | M::B { .. } | M::C { .. } => ClassKind::NamedProduct,
            _ => ClassKind::BsccTwist,
        }
    }

    /// Checks indices against genus `g` and boundary count `b`. `δ_i`,
    /// `ρ_i` take `i ≤ b`, `σ_{ij}` and `σ̄_{ij}` take `i < j ≤ b`,
    /// `a_{i,j}` takes `i < j ≤ g`, `b_{j,k}` takes `j ≤ g, k ≤ b - 1` and
    /// `c_{k,l}` takes `k < l ≤ b - 1`; push indices run over `1..=b`.
    pub fn validate(&self, g: usize, b: usize) -> Result<()> {
        let ok = match *self {
            M::TAlpha | M::TBetaBetaPrime | M::TGamma => true,
            M::TDelta(i) | M::TRho(i) => (1..=b).contains(&i),
            M::TSigma(i, j) | M::TSigmaBar(i, j) => i >= 1 && i < j && j <= b,
            M::A { i, j, push } => i >= 1 && i < j && j <= g && push_ok(push, b),
            M::B { j, k, push } => (1..=g).contains(&j) && k >= 1 && k < b && push_ok(push, b),
            M::C { k, l, push } => k >= 1 && k < l && l < b && push_ok(push, b),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!("{self} for g={g}, b={b}")))
        }
    }
}

fn push_ok(push: Option<usize>, b: usize) -> bool {
    push.is_none_or(|m| (1..=b).contains(&m))
}

impl fmt::Display for MappingClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pushed =
            |f: &mut fmt::Formatter<'_>, name: &str, p: usize, q: usize, push: Option<usize>| {
                match push {
                    Some(m) => write!(f, "{name}({p},{q};{m})"),
                    None => write!(f, "{name}({p},{q})"),
                }
            };
        match *self {
            M::TAlpha => f.write_str("t_alpha"),
            M::TBetaBetaPrime => f.write_str("t_beta_betaprime"),
            M::TGamma => f.write_str("t_gamma"),
            M::TDelta(i) => write!(f, "t_delta({i})"),
            M::TRho(i) => write!(f, "t_rho({i})"),
            M::TSigma(i, j) => write!(f, "t_sigma({i},{j})"),
            M::TSigmaBar(i, j) => write!(f, "t_sigmabar({i},{j})"),
            M::A { i, j, push } => pushed(f, "a", i, j, push),
            M::B { j, k, push } => pushed(f, "b", j, k, push),
            M::C { k, l, push } => pushed(f, "c", k, l, push),
        }
    }
}

impl Serialize for MappingClassName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A product of powers of named classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassExpr(pub Vec<(MappingClassName, i64)>);

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(m, e)| {
                if *e == 1 {
                    m.to_string()
                } else {
                    format!("{m}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for ClassExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Normal generators of `I(N_g^b)` in `M(N_g^b)`: `t_α`, `t_β t_β'^-1`,
/// `t_{δ_i}`, `t_{ρ_i}` (`i ≤ b - 1`), `t_{σ_ij}`, `t_{σ̄_ij}`
/// (`i < j ≤ b - 1`), and `t_γ` exactly when `g = 4`.
pub fn generating_set(g: usize, b: usize) -> Result<Vec<MappingClassName>> {
    if g < 4 {
        return Err(Error::Unsupported(format!(
            "normal generators are only known for g >= 4, got g = {g}"
        )));
    }
    let top = b.saturating_sub(1);
    let mut out = vec![M::TAlpha, M::TBetaBetaPrime];
    out.extend((1..=top).map(M::TDelta));
    out.extend((1..=top).map(M::TRho));
    let pairs: Vec<(usize, usize)> = (1..=top)
        .flat_map(|i| (i + 1..=top).map(move |j| (i, j)))
        .collect();
    out.extend(pairs.iter().map(|&(i, j)| M::TSigma(i, j)));
    out.extend(pairs.iter().map(|&(i, j)| M::TSigmaBar(i, j)));
    if g == 4 {
        out.push(M::TGamma);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lift {
    #[serde(serialize_with = "serialize_display")]
    pub word: Word,
    pub lift: ClassExpr,
}

fn serialize_display<T: fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Lifts through capping of the push maps of `x_g^2`, `y_j` and
/// `x_g y_j x_g^-1`.
pub fn lift_table(params: &SurfaceParams) -> Vec<Lift> {
    let g = params.g();
    let b = params.b();
    let mut out = vec![Lift {
        word: xs(&[g, g]),
        lift: ClassExpr(vec![(M::TRho(b), 1)]),
    }];
    for j in 1..b {
        out.push(Lift {
            word: y(j),
            lift: ClassExpr(vec![(M::TSigma(j, b), 1), (M::TDelta(j), -1)]),
        });
    }
    for j in 1..b {
        out.push(Lift {
            word: conjugate(&x(g), &y(j)),
            lift: ClassExpr(vec![(M::TSigmaBar(j, b), 1), (M::TDelta(j), -1)]),
        });
    }
    out
}

/// Checks that every lifted push word lies in `Γ`.
pub fn lifts_in_gamma(params: &SurfaceParams) -> bool {
    lift_table(params).iter().all(|l| in_gamma(&l.word, params))
}

/// `target = (prefix)^prefix_power · factors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductFormula {
    pub target: MappingClassName,
    pub prefix: Vec<MappingClassName>,
    pub prefix_power: i64,
    pub factors: Vec<(MappingClassName, i64)>,
}

impl ProductFormula {
    pub fn count(&self, pred: impl Fn(&MappingClassName) -> bool) -> usize {
        self.factors.iter().filter(|(m, _)| pred(m)).count()
    }
}

impl fmt::Display for ProductFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix: Vec<String> = self.prefix.iter().map(ToString::to_string).collect();
        write!(f, "{} =", self.target)?;
        if !prefix.is_empty() {
            write!(f, " ({})^{}", prefix.join(" "), self.prefix_power)?;
        }
        for (m, e) in &self.factors {
            if *e == 1 {
                write!(f, " {m}")?;
            } else {
                write!(f, " {m}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Row `i` of the triangular `a`/`b` scheme: `a_{i,i+1} ... a_{i,top}`
/// followed by `b_{i,m}` for `m = 1..b-1`, `m ≠ skip`.
fn ab_row(i: usize, top: usize, b: usize, skip: Option<usize>) -> Vec<(MappingClassName, i64)> {
    (i + 1..=top)
        .map(|j| (M::a(i, j), 1))
        .chain((1..b).filter(|&m| Some(m) != skip).map(|m| (M::b(i, m), 1)))
        .collect()
}

/// `(c_{1,2} ... c_{1,b-1}) ... (c_{b-2,b-1})`, skipping index `skip`
/// both as a row and as a column.
fn c_rows(b: usize, skip: Option<usize>) -> Vec<(MappingClassName, i64)> {
    let top = b.saturating_sub(1);
    (1..=top)
        .filter(|&k| Some(k) != skip)
        .flat_map(|k| {
            (k + 1..=top)
                .filter(move |&l| Some(l) != skip)
                .map(move |l| (M::c(k, l), 1))
        })
        .collect()
}

pub fn delta_formula(params: &SurfaceParams) -> Result<ProductFormula> {
    let (g, b) = (params.g(), params.b());
    let mut factors: Vec<_> = (1..=g).flat_map(|i| ab_row(i, g, b, None)).collect();
    factors.extend(c_rows(b, None));
    Ok(ProductFormula {
        target: M::TDelta(b),
        prefix: (1..b).map(M::TDelta).collect(),
        prefix_power: 3 - g as i64 - b as i64,
        factors,
    })
}

pub fn rho_formula(params: &SurfaceParams) -> Result<ProductFormula> {
    let (g, b) = (params.g(), params.b());
    let mut factors: Vec<_> = (1..g).flat_map(|i| ab_row(i, g - 1, b, None)).collect();
    factors.extend(c_rows(b, None));
    Ok(ProductFormula {
        target: M::TRho(b),
        prefix: (1..b).map(M::TDelta).collect(),
        prefix_power: 4 - g as i64 - b as i64,
        factors,
    })
}

/// The formula for `t_{σ_{kb}}`; needs `1 ≤ k ≤ b - 1`.
pub fn sigma_formula(params: &SurfaceParams, k: usize) -> Result<ProductFormula> {
    let (g, b) = (params.g(), params.b());
    if k < 1 || k >= b {
        return Err(Error::IndexOutOfRange(format!(
            "sigma formula needs 1 <= k <= b - 1 = {}, got k = {k}",
            b - 1
        )));
    }
    let mut factors: Vec<_> = (1..=g).flat_map(|i| ab_row(i, g, b, Some(k))).collect();
    factors.extend(c_rows(b, Some(k)));
    Ok(ProductFormula {
        target: M::TSigma(k, b),
        prefix: (1..b).filter(|&m| m != k).map(M::TDelta).collect(),
        prefix_power: 4 - g as i64 - b as i64,
        factors,
    })
}

/// The `δ_b` and `ρ_b` formulas followed by the `σ_{kb}` formula for each
/// `k = 1..b-1`.
pub fn boundary_products(params: &SurfaceParams) -> Result<Vec<ProductFormula>> {
    let mut out = vec![delta_formula(params)?, rho_formula(params)?];
    for k in 1..params.b() {
        out.push(sigma_formula(params, k)?);
    }
    Ok(out)
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Index and shape check of a boundary product formula: every symbol is
/// in range and the numbers of `a`, `b`, `c` factors match the closed-form
/// counts of the triangular scheme.
pub fn validate_formula(f: &ProductFormula, params: &SurfaceParams) -> Result<()> {
    let (g, b) = (params.g(), params.b());
    f.target.validate(g, b)?;
    for m in f.prefix.iter().chain(f.factors.iter().map(|(m, _)| m)) {
        m.validate(g, b)?;
    }
    let (a_rows, b_per_row, c_size, skip, power) = match f.target {
        M::TDelta(t) if t == b => (g, b - 1, b - 1, None, 3),
        M::TRho(t) if t == b => (g - 1, b - 1, b - 1, None, 4),
        M::TSigma(k, t) if t == b => (g, b - 2, b - 2, Some(k), 4),
        _ => {
            return Err(Error::Unsupported(format!(
                "no boundary formula for {}",
                f.target
            )))
        }
    };
    let expected = (choose2(a_rows), a_rows * b_per_row, choose2(c_size));
    let got = (
        f.count(|m| matches!(m, M::A { .. })),
        f.count(|m| matches!(m, M::B { .. })),
        f.count(|m| matches!(m, M::C { .. })),
    );
    if got != expected {
        return Err(Error::Constraint(format!(
            "{}: (a, b, c) factor counts {got:?}, expected {expected:?}",
            f.target
        )));
    }
    if let Some(k) = skip {
        let mentions_k = f.factors.iter().any(|(m, _)| match *m {
            M::B { k: kk, .. } => kk == k,
            M::C { k: p, l: q, .. } => p == k || q == k,
            _ => false,
        });
        if mentions_k || f.prefix.contains(&M::TDelta(k)) {
            return Err(Error::Constraint(format!(
                "{} mentions the skipped index {k}",
                f.target
            )));
        }
    }
    if f.prefix_power != power - g as i64 - b as i64 {
        return Err(Error::Constraint(format!(
            "{}: wrong prefix exponent",
            f.target
        )));
    }
    Ok(())
}

/// Everything in the catalog for `(g, b)` as JSON. Lifts and products are
/// only present for `b ≥ 1`.
pub fn catalog_json(g: usize, b: usize) -> Result<serde_json::Value> {
    let generators = generating_set(g, b)?;
    let (lifts, products) = if b >= 1 {
        let params = SurfaceParams::new(g, b)?;
        let products: Vec<serde_json::Value> = boundary_products(&params)?
            .iter()
            .map(|f| {
                serde_json::json!({
                    "target": f.target,
                    "prefix": { "factors": f.prefix, "exponent": f.prefix_power },
                    "factors": f.factors.iter()
                        .map(|&factor| ClassExpr(vec![factor]))
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        (
            serde_json::to_value(lift_table(&params)).expect("lifts serialize"),
            products,
        )
    } else {
        (serde_json::json!([]), Vec::new())
    };
    Ok(serde_json::json!({
        "generators": generators,
        "lifts": lifts,
        "products": products,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: usize, b: usize) -> SurfaceParams {
        SurfaceParams::new(g, b).unwrap()
    }

    fn names(v: &[MappingClassName]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn closed_surface_sets() {
        assert_eq!(
            names(&generating_set(5, 0).unwrap()),
            ["t_alpha", "t_beta_betaprime"]
        );
        assert_eq!(
            names(&generating_set(4, 0).unwrap()),
            ["t_alpha", "t_beta_betaprime", "t_gamma"]
        );
        assert!(matches!(generating_set(3, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn three_boundary_set() {
        assert_eq!(
            names(&generating_set(5, 3).unwrap()),
            [
                "t_alpha",
                "t_beta_betaprime",
                "t_delta(1)",
                "t_delta(2)",
                "t_rho(1)",
                "t_rho(2)",
                "t_sigma(1,2)",
                "t_sigmabar(1,2)"
            ]
        );
    }

    #[test]
    fn lifts() {
        let t = lift_table(&params(5, 1));
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].word.to_string(), "x5 x5");
        assert_eq!(t[0].lift.to_string(), "t_rho(1)");
        let t = lift_table(&params(5, 2));
        assert_eq!(t.len(), 3);
        assert_eq!(t[1].lift.to_string(), "t_sigma(1,2) t_delta(1)^-1");
        assert_eq!(t[2].word.to_string(), "x5 y1 x5^-1");
        assert_eq!(t[2].lift.to_string(), "t_sigmabar(1,2) t_delta(1)^-1");
        assert!(lifts_in_gamma(&params(4, 4)));
    }

    #[test]
    fn delta_formula_g4_b2() {
        let f = delta_formula(&params(4, 2)).unwrap();
        assert_eq!(f.prefix_power, -3);
        assert_eq!(f.prefix, vec![M::TDelta(1)]);
        for i in 1..=4 {
            for j in i + 1..=4 {
                assert!(f.factors.contains(&(M::a(i, j), 1)));
            }
        }
        validate_formula(&f, &params(4, 2)).unwrap();
        assert_eq!(
            f.to_string(),
            "t_delta(2) = (t_delta(1))^-3 a(1,2) a(1,3) a(1,4) b(1,1) a(2,3) a(2,4) b(2,1) a(3,4) b(3,1) b(4,1)"
        );
    }

    #[test]
    fn rho_formula_shape() {
        let f = rho_formula(&params(4, 3)).unwrap();
        assert_eq!(f.prefix_power, -3);
        assert_eq!(
            f.to_string(),
            "t_rho(3) = (t_delta(1) t_delta(2))^-3 a(1,2) a(1,3) b(1,1) b(1,2) a(2,3) b(2,1) b(2,2) b(3,1) b(3,2) c(1,2)"
        );
    }

    #[test]
    fn sigma_formula_skips_k() {
        let p = params(4, 5);
        let f = sigma_formula(&p, 2).unwrap();
        assert_eq!(f.prefix, vec![M::TDelta(1), M::TDelta(3), M::TDelta(4)]);
        let cs: Vec<_> = f
            .factors
            .iter()
            .filter(|(m, _)| matches!(m, M::C { .. }))
            .map(|(m, _)| m.to_string())
            .collect();
        assert_eq!(cs, ["c(1,3)", "c(1,4)", "c(3,4)"]);
        validate_formula(&f, &p).unwrap();
        assert!(matches!(
            sigma_formula(&params(4, 1), 1),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn validation_catches_tampering() {
        let p = params(5, 3);
        let mut f = delta_formula(&p).unwrap();
        f.factors.pop();
        assert!(validate_formula(&f, &p).is_err());
        let mut f = sigma_formula(&p, 1).unwrap();
        f.factors.push((M::b(1, 1), 1));
        assert!(validate_formula(&f, &p).is_err());
    }

    #[test]
    fn symbol_rendering() {
        assert_eq!(
            M::A {
                i: 1,
                j: 2,
                push: Some(3)
            }
            .to_string(),
            "a(1,2;3)"
        );
        assert_eq!(M::TSigmaBar(1, 2).kind(), ClassKind::BsccTwist);
        assert_eq!(M::TBetaBetaPrime.kind(), ClassKind::BpMap);
    }

    #[test]
    fn catalog_json_shape() {
        let json = catalog_json(5, 2).unwrap();
        assert_eq!(json["generators"][2], "t_delta(1)");
        assert_eq!(json["lifts"][0]["lift"], "t_rho(2)");
        assert_eq!(json["products"][0]["target"], "t_delta(2)");
        assert_eq!(json["products"][0]["prefix"]["exponent"], -4);
        assert_eq!(catalog_json(5, 0).unwrap()["lifts"], serde_json::json!([]));
    }
}
