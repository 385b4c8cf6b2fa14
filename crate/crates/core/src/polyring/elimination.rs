//! Deciding common zeros of bivariate polynomials above the roots of a
//! univariate candidate polynomial.
//!
//! Works in `K[y]` with `K = Q[x]/(g)` for squarefree `g`. `K` is a product
//! of fields; whenever a leading coefficient turns out to be a zero divisor,
//! the modulus is split along `gcd(lc, g)` and both halves are continued.

use super::resultant::{other_variable, BiPoly};
use super::univariate::UniPoly;
use super::{ExactPoly, PolyError};

enum Normal {
    Monic(BiPoly),
    Zero,
    Split(UniPoly, UniPoly),
}

fn reduce(a: &BiPoly, m: &UniPoly) -> BiPoly {
    BiPoly::new(a.0.iter().map(|c| c.rem(m)).collect())
}

fn normalize(a: &BiPoly, m: &UniPoly) -> Normal {
    let a = reduce(a, m);
    let Some(_) = a.degree() else { return Normal::Zero };
    let lc = a.lc();
    let g = lc.gcd(m);
    if g.is_constant() {
        let inv = lc.inverse_mod(m).expect("coprime leading coefficient is invertible");
        return Normal::Monic(BiPoly::new(a.0.iter().map(|c| c.mul(&inv).rem(m)).collect()));
    }
    // lc is a nonzero residue, so g is a proper factor of m
    let rest = m.exact_div(&g);
    Normal::Split(g, rest)
}

/// `a mod b` in `K[y]` with `b` monic.
fn rem_monic(a: &BiPoly, b: &BiPoly, m: &UniPoly) -> BiPoly {
    let db = b.degree().expect("nonzero divisor");
    let mut r = a.0.clone();
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top].clone();
        if !c.is_zero() {
            let shift = top - db;
            for (k, bc) in b.0.iter().enumerate() {
                r[k + shift] = r[k + shift].sub(&bc.mul(&c)).rem(m);
            }
        }
        r.pop();
        while r.last().is_some_and(UniPoly::is_zero) {
            r.pop();
        }
    }
    BiPoly::new(r)
}

/// gcd of `a` and `b` over each component of `Q[x]/(m)`, as a list of
/// `(component modulus, gcd)`; a zero gcd means both vanish identically.
fn gcd_split(m: UniPoly, a: BiPoly, b: BiPoly, out: &mut Vec<(UniPoly, BiPoly)>) {
    let na = normalize(&a, &m);
    let nb = normalize(&b, &m);
    let (na, nb) = match (na, nb) {
        (Normal::Split(f, g), _) | (_, Normal::Split(f, g)) => {
            gcd_split(f, a.clone(), b.clone(), out);
            gcd_split(g, a, b, out);
            return;
        }
        pair => pair,
    };
    match (na, nb) {
        (Normal::Zero, Normal::Zero) => out.push((m, BiPoly::new(Vec::new()))),
        (Normal::Monic(x), Normal::Zero) | (Normal::Zero, Normal::Monic(x)) => out.push((m, x)),
        (Normal::Monic(x), Normal::Monic(y)) => {
            let (big, small) = if x.degree() >= y.degree() { (x, y) } else { (y, x) };
            if small.degree() == Some(0) {
                out.push((m, small));
                return;
            }
            let r = rem_monic(&big, &small, &m);
            gcd_split(m, small, r, out);
        }
        _ => unreachable!("splits handled above"),
    }
}

/// Returns the monic factor of the squarefree part of `candidates(x)` whose
/// roots are exactly the x-coordinates above which all `polys` have a common
/// zero in `var`. A constant result means no common zero lies above any root
/// of `candidates`.
///
/// All inputs must share one variable set and involve only `var` and one
/// other variable.
pub fn common_zero_locus(polys: &[ExactPoly], var: &str, candidates: &ExactPoly) -> Result<ExactPoly, PolyError> {
    let vars = candidates.vars().clone();
    for p in polys {
        candidates.check_same(p)?;
    }
    if candidates.is_zero() {
        return Err(PolyError::ZeroInput("common_zero_locus"));
    }
    let main = vars.require(var)?;
    if candidates.degree_at(main) > super::Degree::Finite(0) {
        return Err(PolyError::TooManyVariables { expected: 1, found: candidates.to_string() });
    }
    let mut other = None;
    for p in polys.iter().chain(std::iter::once(candidates)) {
        if let Some(o) = other_variable(p, candidates, main)? {
            if other.is_some_and(|x| x != o) {
                return Err(PolyError::TooManyVariables { expected: 2, found: vars.to_string() });
            }
            other = Some(o);
        }
    }
    let Some(other) = other else {
        // candidates is a nonzero constant: no roots
        return Ok(ExactPoly::one(&vars));
    };
    let modulus = UniPoly::from_poly(candidates, other).squarefree_part();
    if modulus.is_constant() {
        return Ok(ExactPoly::one(&vars));
    }
    let dense: Vec<BiPoly> = polys.iter().map(|p| BiPoly::from_poly(p, main, Some(other))).collect();
    let mut branches = vec![(modulus, BiPoly::new(Vec::new()))];
    for p in &dense {
        let mut next = Vec::new();
        for (m, g) in branches {
            gcd_split(m, g, p.clone(), &mut next);
        }
        branches = next;
    }
    let locus = branches
        .into_iter()
        .filter(|(_, g)| g.degree().is_none_or(|d| d >= 1))
        .fold(UniPoly::one(), |acc, (m, _)| acc.mul(&m));
    Ok(locus.monic().to_poly(&vars, other))
}
