//! The jet polynomial
//!
//! ```text
//! J = sum_{j+k+p+q=m} A_{j,k,p,q}(x,y) x'^j y'^k (R')^p (S')^q R^(m-p) S^(m-q)
//! ```
//!
//! with `R' = x' R_x + y' R_y` and `S' = x' S_x + y' S_y`, and its
//! coefficients `Lambda_{alpha,beta}` with respect to `x'^alpha y'^beta`.
//! `build_jet` multiplies the structural form out directly; `expand_lambda`
//! goes through the multinomial reindexing. The two must agree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::polyring::{Degree, ExactPoly, Monomial, VarSet};

/// `(x, y, x', y')`.
pub fn jet_vars() -> VarSet {
    VarSet::fixed(&["x", "y", "x'", "y'"])
}

/// The pair `(R, S)` defining `z^d = R(x, y)`, `t^e = S(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePair {
    r: ExactPoly,
    s: ExactPoly,
    d: u32,
    e: u32,
    rx: ExactPoly,
    ry: ExactPoly,
    sx: ExactPoly,
    sy: ExactPoly,
}

impl SurfacePair {
    /// Validates `1 <= d <= e` and that `x^d, y^d` occur in `R` and `x^e, y^e` in `S`.
    pub fn new(r: ExactPoly, s: ExactPoly) -> Result<Self> {
        let xy = VarSet::xy();
        let r = r.lift(&xy)?;
        let s = s.lift(&xy)?;
        let d = match r.total_degree() {
            Degree::Finite(d) if d >= 1 => d,
            _ => return Err(Error::Surface("R must have degree at least 1".into())),
        };
        let e = match s.total_degree() {
            Degree::Finite(e) if e >= 1 => e,
            _ => return Err(Error::Surface("S must have degree at least 1".into())),
        };
        if d > e {
            return Err(Error::Surface(format!("expected deg R <= deg S, got d = {d}, e = {e}")));
        }
        for (name, p, n) in [("R", &r, d), ("S", &s, e)] {
            if p.coeff(&[n, 0]).is_zero() {
                return Err(Error::Surface(format!("{name} has no pure x^{n} term")));
            }
            if p.coeff(&[0, n]).is_zero() {
                return Err(Error::Surface(format!("{name} has no pure y^{n} term")));
            }
        }
        let (rx, ry) = (r.diff_at(0), r.diff_at(1));
        let (sx, sy) = (s.diff_at(0), s.diff_at(1));
        Ok(SurfacePair { r, s, d, e, rx, ry, sx, sy })
    }

    /// Reads the two-line `R = <poly>` / `S = <poly>` format; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let xy = VarSet::xy();
        let (mut r, mut s) = (None, None);
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((lhs, rhs)) = line.split_once('=') else {
                return Err(Error::Surface(format!("line {}: expected `R = ...` or `S = ...`", n + 1)));
            };
            let poly = ExactPoly::parse(rhs.trim(), &xy)?;
            let slot = match lhs.trim() {
                "R" => &mut r,
                "S" => &mut s,
                other => return Err(Error::Surface(format!("line {}: unknown name `{other}`", n + 1))),
            };
            if slot.replace(poly).is_some() {
                return Err(Error::Surface(format!("line {}: `{}` defined twice", n + 1, lhs.trim())));
            }
        }
        match (r, s) {
            (Some(r), Some(s)) => SurfacePair::new(r, s),
            _ => Err(Error::Surface("both R and S must be given".into())),
        }
    }

    pub fn to_text(&self) -> String {
        format!("R = {}\nS = {}\n", self.r, self.s)
    }

    pub fn r(&self) -> &ExactPoly {
        &self.r
    }
    pub fn s(&self) -> &ExactPoly {
        &self.s
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn r_x(&self) -> &ExactPoly {
        &self.rx
    }
    pub fn r_y(&self) -> &ExactPoly {
        &self.ry
    }
    pub fn s_x(&self) -> &ExactPoly {
        &self.sx
    }
    pub fn s_y(&self) -> &ExactPoly {
        &self.sy
    }

    /// `(alpha, beta, gamma, delta)`: the coefficients of `x^d, y^d` in R and `x^e, y^e` in S.
    pub fn normalization(&self) -> [BigRational; 4] {
        [self.r.coeff(&[self.d, 0]), self.r.coeff(&[0, self.d]), self.s.coeff(&[self.e, 0]), self.s.coeff(&[0, self.e])]
    }
}

/// Jet order `m`, y-divisibility order `c`, degree cap `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct JetSpec {
    pub m: u32,
    pub c: u32,
    pub a: u32,
}

impl JetSpec {
    pub fn new(m: u32, c: u32, a: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Spec("m must be at least 1".into()));
        }
        Ok(JetSpec { m, c, a })
    }

    /// `c - a - 4m`, the exponent of `x1` in front of the chart transfer.
    pub fn infinity_prefactor(&self) -> i64 {
        i64::from(self.c) - i64::from(self.a) - 4 * i64::from(self.m)
    }

    /// `a <= c - 4m`.
    pub fn holomorphic_at_infinity(&self) -> bool {
        self.infinity_prefactor() >= 0
    }

    /// `a <= d - 2`, the cap under which the injectivity statement is made.
    pub fn within_injectivity_cap(&self, d: u32) -> bool {
        i64::from(self.a) <= i64::from(d) - 2
    }
}

/// `(j, k, p, q)` with `j + k + p + q = m`. Lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexTuple {
    pub j: u32,
    pub k: u32,
    pub p: u32,
    pub q: u32,
}

impl IndexTuple {
    pub fn new(j: u32, k: u32, p: u32, q: u32) -> Self {
        IndexTuple { j, k, p, q }
    }

    pub fn order(&self) -> u32 {
        self.j + self.k + self.p + self.q
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.j, self.k, self.p, self.q)
    }
}

impl std::str::FromStr for IndexTuple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<u32> = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Field(format!("bad index tuple `{s}`"))))
            .collect::<Result<_>>()?;
        match parts[..] {
            [j, k, p, q] => Ok(IndexTuple { j, k, p, q }),
            _ => Err(Error::Field(format!("bad index tuple `{s}`"))),
        }
    }
}

/// All tuples of order `m` in lexicographic order; there are `(m+1)(m+2)(m+3)/6`.
pub fn index_tuples(m: u32) -> impl Iterator<Item = IndexTuple> {
    (0..=m).flat_map(move |j| {
        (0..=m - j).flat_map(move |k| (0..=m - j - k).map(move |p| IndexTuple { j, k, p, q: m - j - k - p }))
    })
}

/// Exponent pairs `(h, i)` with `h + i <= deg`, graded-lex ascending.
pub fn plane_monomials(deg: u32) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = (0..=deg).flat_map(|t| (0..=t).map(move |h| (h, t - h))).collect();
    v.sort_by(|a, b| Monomial::new(vec![a.0, a.1]).cmp(&Monomial::new(vec![b.0, b.1])));
    v
}

/// One scalar unknown `A^{h,i}_{j,k,p,q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnknownLabel {
    pub tuple: IndexTuple,
    pub h: u32,
    pub i: u32,
}

impl fmt::Display for UnknownLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.tuple, self.h, self.i)
    }
}

/// Unknowns ordered by tuple, then graded-lex in `(h, i)`.
pub fn unknown_labels(m: u32, a: u32) -> Vec<UnknownLabel> {
    let monos = plane_monomials(a);
    index_tuples(m).flat_map(|tuple| monos.iter().map(move |&(h, i)| UnknownLabel { tuple, h, i })).collect()
}

/// The association `(j,k,p,q) -> A_{j,k,p,q}(x, y)` with every tuple present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientField {
    m: u32,
    a: u32,
    entries: BTreeMap<IndexTuple, ExactPoly>,
}

impl CoefficientField {
    pub fn zero(m: u32, a: u32) -> Self {
        let xy = VarSet::xy();
        CoefficientField { m, a, entries: index_tuples(m).map(|t| (t, ExactPoly::zero(&xy))).collect() }
    }

    /// Builds a field from explicit entries; missing tuples are zero.
    pub fn from_entries(m: u32, a: u32, entries: impl IntoIterator<Item = (IndexTuple, ExactPoly)>) -> Result<Self> {
        let mut f = CoefficientField::zero(m, a);
        for (t, p) in entries {
            f.set(t, p)?;
        }
        Ok(f)
    }

    pub fn set(&mut self, t: IndexTuple, p: ExactPoly) -> Result<()> {
        if t.order() != self.m {
            return Err(Error::Field(format!("tuple {t} does not sum to m = {}", self.m)));
        }
        let p = p.lift(&VarSet::xy())?;
        if !p.total_degree().at_most(self.a) {
            return Err(Error::DegreeCap { tuple: t.to_string(), degree: p.total_degree().finite().unwrap_or(0), cap: self.a });
        }
        self.entries.insert(t, p);
        Ok(())
    }

    /// Interprets a vector in [`unknown_labels`] order.
    pub fn from_vector(m: u32, a: u32, v: &[BigRational]) -> Result<Self> {
        let labels = unknown_labels(m, a);
        if labels.len() != v.len() {
            return Err(Error::Field(format!("expected {} unknowns, got {}", labels.len(), v.len())));
        }
        let mut terms: BTreeMap<IndexTuple, Vec<(Monomial, BigRational)>> = BTreeMap::new();
        for (l, c) in labels.iter().zip(v) {
            terms.entry(l.tuple).or_default().push((Monomial::new(vec![l.h, l.i]), c.clone()));
        }
        let xy = VarSet::xy();
        CoefficientField::from_entries(m, a, terms.into_iter().map(|(t, ts)| (t, ExactPoly::from_terms(&xy, ts))))
    }

    /// Inverse of [`CoefficientField::from_vector`].
    pub fn to_vector(&self) -> Vec<BigRational> {
        unknown_labels(self.m, self.a).iter().map(|l| self.entries[&l.tuple].coeff(&[l.h, l.i])).collect()
    }

    /// The field with a single unknown set to one.
    pub fn unit(m: u32, a: u32, label: UnknownLabel) -> Self {
        let mut f = CoefficientField::zero(m, a);
        let p = ExactPoly::monomial(&VarSet::xy(), Monomial::new(vec![label.h, label.i]), BigRational::one());
        f.entries.insert(label.tuple, p);
        f
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn get(&self, t: &IndexTuple) -> &ExactPoly {
        &self.entries[t]
    }

    pub fn entries(&self) -> impl Iterator<Item = (&IndexTuple, &ExactPoly)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(ExactPoly::is_zero)
    }

    pub fn add(&self, other: &CoefficientField) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::Field("fields of different order".into()));
        }
        let a = self.a.max(other.a);
        CoefficientField::from_entries(self.m, a, self.entries.iter().map(|(t, p)| (*t, p + &other.entries[t])))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CoefficientField { m: self.m, a: self.a, entries: self.entries.iter().map(|(t, p)| (*t, p.scale(c))).collect() }
    }

    /// JSON object keyed by `"j,k,p,q"` with polynomial strings.
    pub fn to_json(&self) -> Value {
        Value::Object(self.entries.iter().map(|(t, p)| (t.to_string(), Value::String(p.to_string()))).collect::<Map<_, _>>())
    }

    /// Parses the JSON form; `m` is read off the keys, `a` defaults to the
    /// largest entry degree.
    pub fn from_json(v: &Value, a: Option<u32>) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Field("expected a JSON object".into()))?;
        let xy = VarSet::xy();
        let mut parsed = Vec::new();
        for (k, val) in obj {
            let t: IndexTuple = k.parse()?;
            let s = val.as_str().ok_or_else(|| Error::Field(format!("entry {k} is not a string")))?;
            parsed.push((t, ExactPoly::parse(s, &xy)?));
        }
        let m = parsed.first().map(|(t, _)| t.order()).ok_or_else(|| Error::Field("empty field".into()))?;
        let a = a.unwrap_or_else(|| parsed.iter().filter_map(|(_, p)| p.total_degree().finite()).max().unwrap_or(0));
        let f = CoefficientField::from_entries(m, a, parsed)?;
        if obj.len() != f.entries.len() {
            return Err(Error::Field(format!("expected {} entries, got {}", f.entries.len(), obj.len())));
        }
        Ok(f)
    }
}

/// `Lambda_{alpha, beta}` for `alpha + beta = m`, indexed by `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaExpansion {
    m: u32,
    entries: Vec<ExactPoly>,
}

impl LambdaExpansion {
    pub fn m(&self) -> u32 {
        self.m
    }

    /// `Lambda_{alpha, m - alpha}`.
    pub fn get(&self, alpha: u32) -> &ExactPoly {
        &self.entries[alpha as usize]
    }

    /// `(alpha, beta, Lambda)` with alpha ascending.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &ExactPoly)> {
        self.entries.iter().enumerate().map(move |(a, p)| (a as u32, self.m - a as u32, p))
    }

    /// `sum x'^alpha y'^beta Lambda_{alpha,beta}` in `(x, y, x', y')`.
    pub fn reconstruct(&self) -> ExactPoly {
        let jv = jet_vars();
        let mut out = ExactPoly::zero(&jv);
        for (alpha, beta, lam) in self.iter() {
            let lifted = lam.lift(&jv).expect("Lambda lives in (x, y)");
            out = &out + &lifted.mul_monomial(&[0, 0, alpha, beta], &BigRational::one());
        }
        out
    }
}

fn check_field(field: &CoefficientField, spec: &JetSpec) -> Result<()> {
    if field.m != spec.m {
        return Err(Error::Field(format!("field has order {} but spec has m = {}", field.m, spec.m)));
    }
    for (t, p) in &field.entries {
        if !p.total_degree().at_most(spec.a) {
            return Err(Error::DegreeCap { tuple: t.to_string(), degree: p.total_degree().finite().unwrap_or(0), cap: spec.a });
        }
    }
    Ok(())
}

fn powers(p: &ExactPoly, n: u32) -> Vec<ExactPoly> {
    let mut v = vec![ExactPoly::one(p.vars())];
    for i in 1..=n as usize {
        let next = &v[i - 1] * p;
        v.push(next);
    }
    v
}

/// The jet polynomial in `(x, y, x', y')`, multiplied out from its structural form.
pub fn build_jet(field: &CoefficientField, surf: &SurfacePair, spec: &JetSpec) -> Result<ExactPoly> {
    check_field(field, spec)?;
    let jv = jet_vars();
    let m = spec.m;
    let lift = |p: &ExactPoly| p.lift(&jv).expect("(x, y) embeds in the jet ring");
    let xp = ExactPoly::var_at(&jv, 2);
    let yp = ExactPoly::var_at(&jv, 3);
    let r_prime = &(&xp * &lift(&surf.rx)) + &(&yp * &lift(&surf.ry));
    let s_prime = &(&xp * &lift(&surf.sx)) + &(&yp * &lift(&surf.sy));
    let r_pow = powers(&lift(&surf.r), m);
    let s_pow = powers(&lift(&surf.s), m);
    let rp_pow = powers(&r_prime, m);
    let sp_pow = powers(&s_prime, m);
    let terms: Vec<ExactPoly> = field
        .entries
        .par_iter()
        .filter(|(_, a)| !a.is_zero())
        .map(|(t, a)| {
            let (p, q) = (t.p as usize, t.q as usize);
            let rest = &(&rp_pow[p] * &sp_pow[q]) * &(&r_pow[m as usize - p] * &s_pow[m as usize - q]);
            let coeff = lift(a).mul_monomial(&[0, 0, t.j, t.k], &BigRational::one());
            &coeff * &rest
        })
        .collect();
    Ok(terms.iter().fold(ExactPoly::zero(&jv), |acc, t| &acc + t))
}

fn factorials(n: u32) -> Vec<BigInt> {
    let mut f = vec![BigInt::one()];
    for i in 1..=n {
        let next = &f[i as usize - 1] * BigInt::from(i);
        f.push(next);
    }
    f
}

/// Precomputed weighted products
/// `binom(p1+p2, p1) binom(q1+q2, q1) R_x^p1 R_y^p2 S_x^q1 S_y^q2 R^(m-p1-p2) S^(m-q1-q2)`
/// for one surface and jet order.
pub struct LambdaEngine {
    m: u32,
    products: BTreeMap<[u32; 4], ExactPoly>,
}

impl LambdaEngine {
    pub fn new(surf: &SurfacePair, m: u32) -> Self {
        let fact = factorials(2 * m);
        let binom = |n: u32, k: u32| -> BigRational {
            BigRational::from_integer(&fact[n as usize] / (&fact[k as usize] * &fact[(n - k) as usize]))
        };
        let rx = powers(&surf.rx, m);
        let ry = powers(&surf.ry, m);
        let sx = powers(&surf.sx, m);
        let sy = powers(&surf.sy, m);
        let r = powers(&surf.r, m);
        let s = powers(&surf.s, m);
        let mut keys = Vec::new();
        for p in 0..=m {
            for q in 0..=m - p {
                for p1 in 0..=p {
                    for q1 in 0..=q {
                        keys.push([p1, p - p1, q1, q - q1]);
                    }
                }
            }
        }
        let products = keys
            .into_par_iter()
            .map(|key @ [p1, p2, q1, q2]| {
                let (p, q) = ((p1 + p2) as usize, (q1 + q2) as usize);
                let w = binom(p1 + p2, p1) * binom(q1 + q2, q1);
                let left = &(&rx[p1 as usize] * &ry[p2 as usize]) * &(&sx[q1 as usize] * &sy[q2 as usize]);
                let right = &r[m as usize - p] * &s[m as usize - q];
                (key, (&left * &right).scale(&w))
            })
            .collect();
        LambdaEngine { m, products }
    }

    pub fn expand(&self, field: &CoefficientField) -> LambdaExpansion {
        let xy = VarSet::xy();
        let mut entries = vec![ExactPoly::zero(&xy); self.m as usize + 1];
        for (t, a) in &field.entries {
            if a.is_zero() {
                continue;
            }
            for p1 in 0..=t.p {
                for q1 in 0..=t.q {
                    let alpha = t.j + p1 + q1;
                    let prod = &self.products[&[p1, t.p - p1, q1, t.q - q1]];
                    entries[alpha as usize] = &entries[alpha as usize] + &(a * prod);
                }
            }
        }
        LambdaExpansion { m: self.m, entries }
    }
}

/// `Lambda_{alpha,beta}` via the multinomial reindexing.
pub fn expand_lambda(field: &CoefficientField, surf: &SurfacePair, spec: &JetSpec) -> Result<LambdaExpansion> {
    check_field(field, spec)?;
    Ok(LambdaEngine::new(surf, spec.m).expand(field))
}

/// Every `Lambda_{alpha,beta}` has total degree at most `a + d m + e m`.
pub fn lambda_degree_check(lambda: &LambdaExpansion, spec: &JetSpec, surf: &SurfacePair) -> bool {
    let bound = spec.a + surf.d * spec.m + surf.e * spec.m;
    lambda.entries.iter().all(|l| l.total_degree().at_most(bound))
}
