//! Algebraic witnesses for holomorphy: restriction to the surface, the
//! `(1/x)` and `(1/y)` chart changes, exponent bookkeeping at infinity and
//! the homogenization lemma for the `zt`-line.
//!
//! Nothing here divides by a polynomial. Identities with denominators are
//! checked after clearing them, by exact monomial division.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jetbuilder::{build_jet, index_tuples, jet_vars, plane_monomials, CoefficientField, IndexTuple, JetSpec, SurfacePair};
use crate::polyring::{rat, Degree, ExactPoly, Monomial, VarSet};

/// `(x, y, z, t, x', y', z', t')`.
pub fn surface_jet_vars() -> VarSet {
    VarSet::fixed(&["x", "y", "z", "t", "x'", "y'", "z'", "t'"])
}

/// J with its `R`, `R'`, `S`, `S'` slots left symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredJet {
    m: u32,
    terms: Vec<(IndexTuple, ExactPoly)>,
}

impl StructuredJet {
    pub fn new(field: &CoefficientField) -> Self {
        StructuredJet {
            m: field.m(),
            terms: field.entries().filter(|(_, a)| !a.is_zero()).map(|(t, a)| (*t, a.clone())).collect(),
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn terms(&self) -> &[(IndexTuple, ExactPoly)] {
        &self.terms
    }

    /// Exponents of the `R, R', S, S'` slots in one structural term.
    pub fn slot_exponents(&self, t: &IndexTuple) -> [u32; 4] {
        [self.m - t.p, t.p, self.m - t.q, t.q]
    }

    /// Fills the slots with `r, r', s, s'` given in the ring `vars`, where
    /// `x'`, `y'` are the variables at `xp`, `yp` and A is lifted by name.
    fn fill(&self, vars: &VarSet, slots: [&ExactPoly; 4], xp: usize, yp: usize) -> ExactPoly {
        let pow = |p: &ExactPoly| {
            let mut v = vec![ExactPoly::one(vars)];
            for i in 1..=self.m as usize {
                let next = &v[i - 1] * p;
                v.push(next);
            }
            v
        };
        let [r, rp, s, sp] = slots.map(pow);
        let parts: Vec<ExactPoly> = self
            .terms
            .par_iter()
            .map(|(t, a)| {
                let [er, erp, es, esp] = self.slot_exponents(t);
                let mut exps = vec![0u32; vars.len()];
                exps[xp] = t.j;
                exps[yp] = t.k;
                let a = a.lift(vars).expect("A lives in (x, y)").mul_monomial(&exps, &BigRational::one());
                &a * &(&(&r[er as usize] * &rp[erp as usize]) * &(&s[es as usize] * &sp[esp as usize]))
            })
            .collect();
        parts.iter().fold(ExactPoly::zero(vars), |acc, p| &acc + p)
    }

    /// Multiplies out in `(x, y, x', y')`; equals [`build_jet`].
    pub fn expand(&self, surf: &SurfacePair) -> ExactPoly {
        let jv = jet_vars();
        let lift = |p: &ExactPoly| p.lift(&jv).expect("(x, y) embeds in the jet ring");
        let xp = ExactPoly::var_at(&jv, 2);
        let yp = ExactPoly::var_at(&jv, 3);
        let rp = &(&xp * &lift(surf.r_x())) + &(&yp * &lift(surf.r_y()));
        let sp = &(&xp * &lift(surf.s_x())) + &(&yp * &lift(surf.s_y()));
        self.fill(&jv, [&lift(surf.r()), &rp, &lift(surf.s()), &sp], 2, 3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    /// `J|_X / (z^{m(d-1)} t^{m(e-1)})` in `(x, y, z, t, x', y', z', t')`.
    pub quotient: ExactPoly,
    /// `J|_X` before the division.
    pub substituted: ExactPoly,
    pub exact: bool,
}

/// Substitutes `R -> z^d`, `R' -> d z^{d-1} z'`, `S -> t^e`, `S' -> e t^{e-1} t'`
/// and divides by `z^{m(d-1)} t^{m(e-1)}`.
pub fn restrict_to_surface(field: &CoefficientField, surf: &SurfacePair, spec: &JetSpec) -> Result<Restriction> {
    if field.m() != spec.m {
        return Err(Error::Field(format!("field has order {} but spec has m = {}", field.m(), spec.m)));
    }
    let sv = surface_jet_vars();
    let (d, e) = (surf.d(), surf.e());
    let mono = |exps: [u32; 8], c: i64| ExactPoly::monomial(&sv, Monomial::new(exps.to_vec()), rat(c));
    let r = mono([0, 0, d, 0, 0, 0, 0, 0], 1);
    let rp = mono([0, 0, d - 1, 0, 0, 0, 1, 0], i64::from(d));
    let s = mono([0, 0, 0, e, 0, 0, 0, 0], 1);
    let sp = mono([0, 0, 0, e - 1, 0, 0, 0, 1], i64::from(e));
    let substituted = StructuredJet::new(field).fill(&sv, [&r, &rp, &s, &sp], 4, 5);
    let (qz, exact_z) = substituted.monomial_quotient("z", spec.m * (d - 1))?;
    let (quotient, exact_t) = qz.monomial_quotient("t", spec.m * (e - 1))?;
    Ok(Restriction { quotient, substituted, exact: exact_z && exact_t })
}

/// The two affine charts reaching the hyperplane at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// `x1 = 1/x`, `y1 = y/x`.
    InvX,
    /// `x2 = x/y`, `y2 = 1/y`.
    InvY,
}

impl Chart {
    pub const ALL: [Chart; 2] = [Chart::InvX, Chart::InvY];

    /// `(u, v, u', v')` where `u` is the inverted coordinate.
    pub fn vars(self) -> VarSet {
        match self {
            Chart::InvX => VarSet::fixed(&["x1", "y1", "x1'", "y1'"]),
            Chart::InvY => VarSet::fixed(&["x2", "y2", "x2'", "y2'"]),
        }
    }

    /// Index of the inverted coordinate and of its derivative in [`Chart::vars`].
    pub fn inverted(self) -> (usize, usize) {
        match self {
            Chart::InvX => (0, 2),
            Chart::InvY => (1, 3),
        }
    }

    /// Images of `x, y, x', y'`, each as (numerator, power of the inverted coordinate
    /// in the denominator).
    fn images(self) -> [(ExactPoly, u32); 4] {
        let cv = self.vars();
        let p = |s: &str| ExactPoly::parse(s, &cv).expect("chart image parses");
        match self {
            Chart::InvX => [(p("1"), 1), (p("y1"), 1), (p("-x1'"), 2), (p("x1*y1' - y1*x1'"), 2)],
            Chart::InvY => [(p("x2"), 1), (p("1"), 1), (p("y2*x2' - x2*y2'"), 2), (p("-y2'"), 2)],
        }
    }

    /// `u^n * Phi(P)` for `P` in `(x, y)` or `(x, y, x', y')`; fails when some
    /// monomial needs more than `n` powers of `u` in its denominator.
    pub fn pullback(self, poly: &ExactPoly, n: u32) -> Result<ExactPoly> {
        let jv = jet_vars();
        let poly = poly.lift(&jv)?;
        let cv = self.vars();
        let (u, _) = self.inverted();
        let images = self.images();
        let mut cache: Vec<Vec<ExactPoly>> = vec![vec![ExactPoly::one(&cv)]; 4];
        let mut out = ExactPoly::zero(&cv);
        for (mono, c) in poly.terms() {
            let exps = mono.exponents();
            let den: u32 = exps.iter().zip(&images).map(|(e, (_, w))| e * w).sum();
            if den > n {
                return Err(Error::Consistency(format!("pullback needs u^{den} but only u^{n} was provided")));
            }
            let mut shift = vec![0u32; 4];
            shift[u] = n - den;
            let mut term = ExactPoly::monomial(&cv, Monomial::new(shift), c.clone());
            for (i, &e) in exps.iter().enumerate() {
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * &images[i].0;
                    powers.push(next);
                }
                term = &term * &powers[e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `u^deg P(...)`: the polynomial `R1` (or `R2`) of the chart.
    pub fn transform(self, poly: &ExactPoly, deg: u32) -> Result<ExactPoly> {
        self.pullback(poly, deg)
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chart::InvX => "inv_x",
            Chart::InvY => "inv_y",
        })
    }
}

impl FromStr for Chart {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inv_x" => Ok(Chart::InvX),
            "inv_y" => Ok(Chart::InvY),
            other => Err(Error::Spec(format!("unknown chart `{other}`"))),
        }
    }
}

/// `P' = u' P_u + v' P_v` in chart variables.
fn chart_prime(p: &ExactPoly) -> ExactPoly {
    &(&ExactPoly::var_at(p.vars(), 2) * &p.diff_at(0)) + &(&ExactPoly::var_at(p.vars(), 3) * &p.diff_at(1))
}

/// `-u' n P1 + u P1'`, the cleared transfer of `P'` for `P1` of chart degree `n`.
fn transferred_prime(chart: Chart, p1: &ExactPoly, n: u32) -> ExactPoly {
    let cv = chart.vars();
    let (u, up) = chart.inverted();
    let left = (&ExactPoly::var_at(&cv, up) * p1).scale(&rat(-i64::from(n)));
    &left + &(&ExactPoly::var_at(&cv, u) * &chart_prime(p1))
}

/// Checks `u^{d+1} Phi(x' R_x + y' R_y) = -u' d R1 + u R1'` with `R1 = u^d R(...)`.
pub fn verify_derivative_transfer(r: &ExactPoly, d: u32, chart: Chart) -> Result<bool> {
    let r = r.lift(&VarSet::xy())?;
    if r.total_degree() != Degree::Finite(d) {
        return Err(Error::Degenerate(format!("declared degree {d} but deg R = {:?}", r.total_degree())));
    }
    let jv = jet_vars();
    let rprime = &(&ExactPoly::var_at(&jv, 2) * &r.diff_at(0).lift(&jv)?) + &(&ExactPoly::var_at(&jv, 3) * &r.diff_at(1).lift(&jv)?);
    let lhs = chart.pullback(&rprime, d + 1)?;
    let r1 = chart.transform(&r, d)?;
    Ok(lhs == transferred_prime(chart, &r1, d))
}

/// Exponent bookkeeping for the transfer across a chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinityExponents {
    /// Least `a - (h+i) + 2m - (2j+2k+p+q)` over all indices.
    pub residual_min: i64,
    /// `c - a - 4m`.
    pub prefactor: i64,
    /// `prefactor >= 0`.
    pub holomorphic: bool,
    /// `prefactor >= 1`.
    pub vanishing: bool,
    /// First index (tuple, h, i) whose total exponent `prefactor + residual` is negative.
    pub witness: Option<(String, u32, u32, i64)>,
    /// All residuals and the prefactor are non-negative.
    pub passes: bool,
}

pub fn verify_infinity_exponents(spec: &JetSpec) -> InfinityExponents {
    let (m, a) = (i64::from(spec.m), i64::from(spec.a));
    let prefactor = spec.infinity_prefactor();
    let monos = plane_monomials(spec.a);
    let mut residual_min = i64::MAX;
    let mut witness = None;
    for t in index_tuples(spec.m) {
        let weight = 2 * i64::from(t.j + t.k) + i64::from(t.p + t.q);
        for &(h, i) in &monos {
            let residual = a - i64::from(h + i) + 2 * m - weight;
            residual_min = residual_min.min(residual);
            if witness.is_none() && prefactor + residual < 0 {
                witness = Some((t.to_string(), h, i, prefactor + residual));
            }
        }
    }
    InfinityExponents {
        residual_min,
        prefactor,
        holomorphic: prefactor >= 0,
        vanishing: prefactor >= 1,
        witness,
        passes: residual_min >= 0 && prefactor >= 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartTransfer {
    pub chart: Chart,
    /// The polynomial after the double sum, in the chart variables.
    pub transferred: ExactPoly,
    /// `c - a - 4m`.
    pub prefactor_exponent: i64,
    /// `u^{a+dm+em+2m} Phi(J) = transferred`, bit-exact.
    pub identity_holds: bool,
}

/// Transfers J across `chart`, assembled term by term from `R1`, `S1` and
/// their primes, and checks it against the direct pullback of the expanded J.
pub fn full_chart_transfer(field: &CoefficientField, surf: &SurfacePair, spec: &JetSpec, chart: Chart) -> Result<ChartTransfer> {
    if !spec.holomorphic_at_infinity() {
        return Err(Error::Spec(format!("a = {} exceeds c - 4m = {}", spec.a, i64::from(spec.c) - 4 * i64::from(spec.m))));
    }
    if field.m() != spec.m {
        return Err(Error::Field(format!("field has order {} but spec has m = {}", field.m(), spec.m)));
    }
    let (d, e, m, a) = (surf.d(), surf.e(), spec.m, spec.a);
    let cv = chart.vars();
    let (u, _) = chart.inverted();
    let r1 = chart.transform(surf.r(), d)?;
    let s1 = chart.transform(surf.s(), e)?;
    let pow = |p: &ExactPoly| {
        let mut v = vec![ExactPoly::one(&cv)];
        for i in 1..=m as usize {
            let next = &v[i - 1] * p;
            v.push(next);
        }
        v
    };
    let r1p = pow(&r1);
    let s1p = pow(&s1);
    let rtp = pow(&transferred_prime(chart, &r1, d));
    let stp = pow(&transferred_prime(chart, &s1, e));
    let jv = jet_vars();
    let mut by_tuple: BTreeMap<IndexTuple, Vec<(u32, u32, BigRational)>> = BTreeMap::new();
    for (t, poly) in field.entries() {
        for (mono, c) in poly.terms() {
            let ex = mono.exponents();
            by_tuple.entry(*t).or_default().push((ex[0], ex[1], c.clone()));
        }
    }
    let parts: Vec<Result<ExactPoly>> = by_tuple
        .par_iter()
        .map(|(t, coeffs)| {
            let weight = 2 * (t.j + t.k) + t.p + t.q;
            let derivs = ExactPoly::monomial(&jv, Monomial::new(vec![0, 0, t.j, t.k]), BigRational::one());
            let derivs = chart.pullback(&derivs, 2 * (t.j + t.k))?;
            let tail = &(&rtp[t.p as usize] * &stp[t.q as usize]) * &(&r1p[(m - t.p) as usize] * &s1p[(m - t.q) as usize]);
            let mut inner = ExactPoly::zero(&cv);
            for (h, i, c) in coeffs {
                let xy = ExactPoly::monomial(&VarSet::xy(), Monomial::new(vec![*h, *i]), c.clone());
                let mut shift = vec![0u32; 4];
                // a - (h+i) + 2m - (2j+2k+p+q) >= 0 because h+i <= a and the weight is at most 2m
                shift[u] = a - (h + i) + 2 * m - weight;
                inner = &inner + &chart.pullback(&xy, h + i)?.mul_monomial(&shift, &BigRational::one());
            }
            Ok(&(&inner * &derivs) * &tail)
        })
        .collect();
    let mut transferred = ExactPoly::zero(&cv);
    for p in parts {
        transferred = &transferred + &p?;
    }
    let j = build_jet(field, surf, spec)?;
    let direct = chart.pullback(&j, a + d * m + e * m + 2 * m)?;
    Ok(ChartTransfer { chart, transferred: transferred.clone(), prefactor_exponent: spec.infinity_prefactor(), identity_holds: direct == transferred })
}

/// `(U, X, Y, Z, T)`.
pub fn projective_vars() -> VarSet {
    VarSet::fixed(&["U", "X", "Y", "Z", "T"])
}

/// `W^n - U^n P(X/U, Y/U)` with `W` the variable at `w`.
fn homogenize_pair(p: &ExactPoly, n: u32, w: usize) -> ExactPoly {
    let pv = projective_vars();
    let mut out = ExactPoly::zero(&pv);
    for (mono, c) in p.terms() {
        let ex = mono.exponents();
        let exps = vec![n - ex[0] - ex[1], ex[0], ex[1], 0, 0];
        out = &out - &ExactPoly::monomial(&pv, Monomial::new(exps), c.clone());
    }
    let mut lead = vec![0u32; 5];
    lead[w] = n;
    &out + &ExactPoly::monomial(&pv, Monomial::new(lead), BigRational::one())
}

/// Homogenizes both equations and checks that `U = X = Y = 0` leaves exactly
/// `Z^d` and `T^e`, so the surface misses the `zt`-line at infinity.
pub fn homogenize_surface_and_check(surf: &SurfacePair) -> Result<bool> {
    let pv = projective_vars();
    let zero = ExactPoly::zero(&pv);
    let bind = [("U", zero.clone()), ("X", zero.clone()), ("Y", zero)];
    let mut ok = true;
    for (p, n, w) in [(surf.r(), surf.d(), 3usize), (surf.s(), surf.e(), 4)] {
        let tilde = homogenize_pair(p, n, w);
        let mut expect = vec![0u32; 5];
        expect[w] = n;
        let at = tilde.substitute_into(&bind, &pv)?;
        ok &= at == ExactPoly::monomial(&pv, Monomial::new(expect), BigRational::one());
    }
    Ok(ok)
}

/// Re-multiplies a restriction quotient by `z^{m(d-1)} t^{m(e-1)}`.
pub fn unrestrict(quotient: &ExactPoly, surf: &SurfacePair, spec: &JetSpec) -> ExactPoly {
    let mut exps = vec![0u32; 8];
    exps[2] = spec.m * (surf.d() - 1);
    exps[3] = spec.m * (surf.e() - 1);
    quotient.mul_monomial(&exps, &BigRational::one())
}
