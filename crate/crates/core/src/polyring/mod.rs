//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! The ring is fixed by a [`VarSet`]: an ordered list of variable names.
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the
//! graded lexicographic order of that list, so two polynomials are equal
//! exactly when their term maps are equal.
//!
//! The elimination helpers (resultant, gcd, squarefree test, common-zero
//! decision over an algebraic modulus) live in the submodules and work on
//! dense univariate/bivariate images of an [`ExactPoly`].

mod elimination;
mod parse;
mod resultant;
mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use elimination::common_zero_locus;
pub use resultant::{resultant, resultant_y};
pub use univariate::{gcd_univariate, squarefree_part_univariate, squarefree_univariate};

pub(crate) use univariate::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable set: {0}")]
    InvalidVarSet(String),
    #[error("variable sets differ: [{left}] vs [{right}]")]
    VarSetMismatch { left: String, right: String },
    #[error("operation `{0}` is undefined on the zero polynomial")]
    ZeroInput(&'static str),
    #[error("expected a polynomial in at most {expected} variable(s), got one involving [{found}]")]
    TooManyVariables { expected: usize, found: String },
}

/// An ordered set of distinct variable names.
///
/// Cloning is cheap; equality compares the names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(PolyError::InvalidVarSet(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(PolyError::InvalidVarSet(format!("`{n}` appears twice")));
            }
        }
        Ok(VarSet(names.into()))
    }

    /// Panicking constructor for the fixed coordinate sets used internally.
    pub(crate) fn fixed(names: &[&str]) -> Self {
        VarSet::new(names.iter().copied()).expect("fixed variable set is valid")
    }

    /// The affine plane coordinates `(x, y)`.
    pub fn xy() -> Self {
        Self::fixed(&["x", "y"])
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarSet[{}]", self.0.join(", "))
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(", "))
    }
}

/// Identifiers: a letter or `_`, then letters, digits, `_`, then any number of primes.
pub(crate) fn is_identifier(s: &str) -> bool {
    let body = s.trim_end_matches('\'');
    let mut chars = body.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Total degree, with a distinct sentinel for the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// `self <= bound`; the zero polynomial satisfies every bound.
    pub fn at_most(self, bound: u32) -> bool {
        self <= Degree::Finite(bound)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn new(exps: impl Into<Box<[u32]>>) -> Self {
        Monomial(exps.into())
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A polynomial over the rationals in the variables of a [`VarSet`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactPoly {
    vars: VarSet,
    terms: BTreeMap<Monomial, BigRational>,
}

impl ExactPoly {
    pub fn zero(vars: &VarSet) -> Self {
        ExactPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant(vars: &VarSet, c: BigRational) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn from_int(vars: &VarSet, c: i64) -> Self {
        Self::constant(vars, rat(c))
    }

    pub fn var(vars: &VarSet, name: &str) -> Result<Self, PolyError> {
        let idx = vars.require(name)?;
        Ok(Self::var_at(vars, idx))
    }

    pub(crate) fn var_at(vars: &VarSet, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Self::monomial(vars, Monomial::new(e), BigRational::one())
    }

    pub fn monomial(vars: &VarSet, mono: Monomial, c: BigRational) -> Self {
        assert_eq!(mono.0.len(), vars.len(), "monomial arity does not match variable set");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        ExactPoly { vars: vars.clone(), terms }
    }

    /// Builds a canonical polynomial from possibly repeated or zero terms.
    pub fn from_terms<I>(vars: &VarSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut out = ExactPoly::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "monomial arity does not match variable set");
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn parse(text: &str, vars: &VarSet) -> Result<Self, PolyError> {
        parse::parse(text, vars)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Constant term value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(&Monomial::new(exps.to_vec())).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms.keys().next_back().map_or(Degree::NegInfinity, |m| Degree::Finite(m.degree()))
    }

    pub fn degree_in(&self, name: &str) -> Result<Degree, PolyError> {
        Ok(self.degree_at(self.vars.require(name)?))
    }

    pub(crate) fn degree_at(&self, idx: usize) -> Degree {
        self.terms.keys().map(|m| m.0[idx]).max().map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len()).filter(|&i| self.terms.keys().any(|m| m.0[i] > 0)).collect()
    }

    /// Homogeneous component of total degree `deg`.
    pub fn homogeneous_part(&self, deg: u32) -> Self {
        ExactPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == deg).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    fn check_same(&self, other: &ExactPoly) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VarSetMismatch { left: self.vars.to_string(), right: other.vars.to_string() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &ExactPoly) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &ExactPoly) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &ExactPoly) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let mut out = ExactPoly::zero(&self.vars);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = ExactPoly::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return ExactPoly::zero(&self.vars);
        }
        ExactPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Multiplies by the monomial with exponents `exps` and coefficient `c`.
    pub fn mul_monomial(&self, exps: &[u32], c: &BigRational) -> Self {
        assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return ExactPoly::zero(&self.vars);
        }
        let shift = Monomial::new(exps.to_vec());
        ExactPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.mul(&shift), v * c)).collect(),
        }
    }

    pub fn diff(&self, name: &str) -> Result<Self, PolyError> {
        Ok(self.diff_at(self.vars.require(name)?))
    }

    pub(crate) fn diff_at(&self, idx: usize) -> Self {
        let mut out = ExactPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] -= 1;
            out.add_term(Monomial(exps), c * rat(i64::from(e)));
        }
        out
    }

    /// Simultaneous substitution. All replacement polynomials must share one
    /// variable set, which becomes the target ring; unbound variables are
    /// carried over by name and must exist there.
    pub fn substitute(&self, bindings: &[(&str, ExactPoly)]) -> Result<Self, PolyError> {
        let target = match bindings.first() {
            Some((_, p)) => p.vars.clone(),
            None => self.vars.clone(),
        };
        self.substitute_into(bindings, &target)
    }

    pub fn substitute_into(&self, bindings: &[(&str, ExactPoly)], target: &VarSet) -> Result<Self, PolyError> {
        let mut images: Vec<Option<ExactPoly>> = vec![None; self.vars.len()];
        for (name, p) in bindings {
            let idx = self.vars.require(name)?;
            if &p.vars != target {
                return Err(PolyError::VarSetMismatch { left: target.to_string(), right: p.vars.to_string() });
            }
            images[idx] = Some(p.clone());
        }
        let support = self.support();
        for &i in &support {
            if images[i].is_none() {
                let t = target.require(&self.vars.0[i])?;
                images[i] = Some(ExactPoly::var_at(target, t));
            }
        }
        // cache powers of each image as they are needed
        let mut powers: Vec<Vec<ExactPoly>> = vec![Vec::new(); self.vars.len()];
        let mut out = ExactPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = ExactPoly::constant(target, c.clone());
            for &i in &support {
                let e = m.0[i] as usize;
                if e == 0 {
                    continue;
                }
                let img = images[i].as_ref().expect("image assigned for every support variable");
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(ExactPoly::one(target));
                }
                while cache.len() <= e {
                    let next = &cache[cache.len() - 1] * img;
                    cache.push(next);
                }
                term = &term * &cache[e];
                if term.is_zero() {
                    break;
                }
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in another variable set, matching by name.
    pub fn lift(&self, target: &VarSet) -> Result<Self, PolyError> {
        let mut map = vec![usize::MAX; self.vars.len()];
        for i in self.support() {
            map[i] = target.require(&self.vars.0[i])?;
        }
        let mut out = ExactPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    e[map[i]] = x;
                }
            }
            out.terms.insert(Monomial(e.into()), c.clone());
        }
        Ok(out)
    }

    /// Divides by `v^k` term-wise. Returns the quotient of the divisible part
    /// and whether every term was divisible.
    pub fn monomial_quotient(&self, name: &str, k: u32) -> Result<(Self, bool), PolyError> {
        Ok(self.monomial_quotient_at(self.vars.require(name)?, k))
    }

    pub(crate) fn monomial_quotient_at(&self, idx: usize, k: u32) -> (Self, bool) {
        let mut exact = true;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[idx] < k {
                exact = false;
                continue;
            }
            let mut e = m.0.clone();
            e[idx] -= k;
            terms.insert(Monomial(e), c.clone());
        }
        (ExactPoly { vars: self.vars.clone(), terms }, exact)
    }

    /// Groups terms by the exponents of the variables at `idxs`, returning the
    /// coefficient polynomials (with those variables removed, i.e. set to zero
    /// exponent) keyed by the exponent tuple.
    pub fn coefficients_in(&self, idxs: &[usize]) -> BTreeMap<Vec<u32>, ExactPoly> {
        let mut out: BTreeMap<Vec<u32>, ExactPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = idxs.iter().map(|&i| m.0[i]).collect();
            let mut e = m.0.clone();
            for &i in idxs {
                e[i] = 0;
            }
            out.entry(key).or_insert_with(|| ExactPoly::zero(&self.vars)).terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.degree() == 0 {
                factors.push(a.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.0[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars.0[i], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPoly[{}]({})", self.vars, self)
    }
}

// Operator forms panic on variable-set mismatch; the `try_*` methods report it.

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: ExactPoly) -> ExactPoly {
        &self + &rhs
    }
}

impl Sub for ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: ExactPoly) -> ExactPoly {
        &self - &rhs
    }
}

impl Mul for ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: ExactPoly) -> ExactPoly {
        &self * &rhs
    }
}

impl Neg for ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        -&self
    }
}

/// Parses a rational in `n` or `n/d` form.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Formats a rational as `n/d`, or `n` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> VarSet {
        VarSet::xy()
    }

    fn p(s: &str) -> ExactPoly {
        ExactPoly::parse(s, &xy()).unwrap()
    }

    #[test]
    fn varset_rejects_duplicates_and_bad_names() {
        assert!(VarSet::new(["x", "x"]).is_err());
        assert!(VarSet::new(["1x"]).is_err());
        assert!(VarSet::new(["x'", "x1'", "U"]).is_ok());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2 - y^2"));
        assert!((&p("x+y") * &p("0")).is_zero());
        assert_eq!(p("x+1").pow(3), p("x^3 + 3*x^2 + 3*x + 1"));
        assert_eq!(p("x").pow(0), p("1"));
    }

    #[test]
    fn mismatched_varsets_are_reported() {
        let other = VarSet::new(["x", "z"]).unwrap();
        let q = ExactPoly::parse("x+z", &other).unwrap();
        assert!(matches!(p("x").try_mul(&q), Err(PolyError::VarSetMismatch { .. })));
        assert!(p("x").try_add(&q).is_err());
    }

    #[test]
    fn diff_examples() {
        assert_eq!(p("x^3*y").diff("x").unwrap(), p("3*x^2*y"));
        assert!(p("x^3").diff("y").unwrap().is_zero());
        assert_eq!(p("x^2 + x*y + 1").diff("x").unwrap(), p("2*x + y"));
        assert!(matches!(p("x").diff("w"), Err(PolyError::UnknownVariable(_))));
    }

    #[test]
    fn substitute_examples() {
        let r = p("x^2 + y").substitute(&[("x", p("y"))]).unwrap();
        assert_eq!(r, p("y^2 + y"));
        assert!(p("x").substitute(&[("x", p("0"))]).unwrap().is_zero());
        let v = VarSet::new(["x", "x'", "u"]).unwrap();
        let q = ExactPoly::parse("x'*u", &v).unwrap();
        let two_x = ExactPoly::parse("2*x", &v).unwrap();
        assert_eq!(q.substitute(&[("u", two_x)]).unwrap(), ExactPoly::parse("2*x'*x", &v).unwrap());
    }

    #[test]
    fn substitute_into_smaller_ring_requires_names() {
        let one = VarSet::new(["x"]).unwrap();
        let r = p("x*y + y^2").substitute_into(&[("y", ExactPoly::zero(&one))], &one).unwrap();
        assert!(r.is_zero());
        assert!(p("x*y").substitute_into(&[("x", ExactPoly::one(&VarSet::new(["t"]).unwrap()))], &VarSet::new(["t"]).unwrap()).is_err());
    }

    #[test]
    fn monomial_quotient_examples() {
        let (q, ok) = p("y^3 + x*y^2").monomial_quotient("y", 2).unwrap();
        assert!(ok);
        assert_eq!(q, p("y + x"));
        let (q, ok) = p("y + 1").monomial_quotient("y", 1).unwrap();
        assert!(!ok);
        assert_eq!(q, p("1"));
        let (q, ok) = p("0").monomial_quotient("y", 7).unwrap();
        assert!(ok && q.is_zero());
    }

    #[test]
    fn zero_degree_is_a_sentinel() {
        assert_eq!(p("0").total_degree(), Degree::NegInfinity);
        assert_eq!(p("3").total_degree(), Degree::Finite(0));
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert!(p("0").total_degree().at_most(0));
        assert_eq!(p("x^2*y + y").degree_in("y").unwrap(), Degree::Finite(1));
    }

    #[test]
    fn printing_is_graded_lex_descending() {
        assert_eq!(p("1 - 1/2 + y*x^2 + y^3 + x").to_string(), "x^2*y + y^3 + x + 1/2");
        assert_eq!(p("-x + 3").to_string(), "-x + 3");
        assert_eq!(p("-2/4*x*y - y").to_string(), "-1/2*x*y - y");
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn lift_by_name() {
        let big = VarSet::new(["x", "y", "z"]).unwrap();
        let l = p("x*y + 2").lift(&big).unwrap();
        assert_eq!(l, ExactPoly::parse("x*y + 2", &big).unwrap());
        assert!(l.lift(&VarSet::new(["x"]).unwrap()).is_err());
    }
}
