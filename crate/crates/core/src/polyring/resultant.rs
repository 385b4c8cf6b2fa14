//! Resultants via the subresultant polynomial remainder sequence.
//!
//! Inputs are viewed as polynomials in the eliminated variable with
//! coefficients in `Q[x]`, where `x` is the one other variable allowed to
//! occur. All divisions in the sequence are exact in `Q[x]`.

use num_traits::Zero;

use super::univariate::UniPoly;
use super::{ExactPoly, PolyError};

/// Dense polynomial in the main variable with `Q[x]` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BiPoly(pub(crate) Vec<UniPoly>);

impl BiPoly {
    pub(crate) fn new(mut c: Vec<UniPoly>) -> Self {
        while c.last().is_some_and(UniPoly::is_zero) {
            c.pop();
        }
        BiPoly(c)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub(crate) fn lc(&self) -> UniPoly {
        self.0.last().cloned().unwrap_or_else(UniPoly::zero)
    }

    /// `main` is the index of the eliminated variable, `other` that of the
    /// coefficient variable (ignored when the polynomial does not involve it).
    pub(crate) fn from_poly(p: &ExactPoly, main: usize, other: Option<usize>) -> BiPoly {
        let mut rows: Vec<Vec<num_rational::BigRational>> = Vec::new();
        for (m, c) in p.terms() {
            let e = m.exponents();
            let i = e[main] as usize;
            let j = other.map_or(0, |o| e[o] as usize);
            if rows.len() <= i {
                rows.resize(i + 1, Vec::new());
            }
            if rows[i].len() <= j {
                rows[i].resize(j + 1, num_rational::BigRational::zero());
            }
            rows[i][j] += c;
        }
        BiPoly::new(rows.into_iter().map(UniPoly::new).collect())
    }

    fn scale(&self, s: &UniPoly) -> BiPoly {
        BiPoly::new(self.0.iter().map(|c| c.mul(s)).collect())
    }

    fn exact_div(&self, s: &UniPoly) -> BiPoly {
        BiPoly::new(self.0.iter().map(|c| c.exact_div(s)).collect())
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a = q * b + r`.
    fn prem(&self, b: &BiPoly) -> BiPoly {
        let db = b.degree().expect("pseudo-division by zero");
        let mut r = self.clone();
        let Some(da) = r.degree() else { return r };
        if da < db {
            return r;
        }
        let lb = b.lc();
        let mut steps = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc();
            let shift = dr - db;
            let mut next: Vec<UniPoly> = r.0.iter().map(|c| c.mul(&lb)).collect();
            for (k, bc) in b.0.iter().enumerate() {
                next[k + shift] = next[k + shift].sub(&bc.mul(&lr));
            }
            r = BiPoly::new(next);
            steps -= 1;
        }
        r.scale(&lb.pow(steps))
    }
}

/// Resultant of two polynomials in `Q[x][y]`; the result lies in `Q[x]`.
pub(crate) fn resultant_dense(a: &BiPoly, b: &BiPoly) -> UniPoly {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut negate = false;
    let (mut da, mut db) = (a.degree().unwrap(), b.degree().unwrap());
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        negate = da % 2 == 1 && db % 2 == 1;
    }
    if db == 0 {
        let r = b.lc().pow(da);
        return if negate { UniPoly::zero().sub(&r) } else { r };
    }
    let mut g = UniPoly::one();
    let mut h = UniPoly::one();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = a.prem(&b);
        if r.is_zero() {
            return UniPoly::zero();
        }
        let divisor = g.mul(&h.pow(delta));
        a = b;
        b = r.exact_div(&divisor);
        g = a.lc();
        h = if delta == 0 { h } else { g.pow(delta).exact_div(&h.pow(delta - 1)) };
        if b.degree() == Some(0) {
            let da = a.degree().unwrap();
            let res = b.lc().pow(da).exact_div(&h.pow(da - 1));
            return if negate { UniPoly::zero().sub(&res) } else { res };
        }
    }
}

/// Identify the coefficient variable for a two-variable elimination.
pub(crate) fn other_variable(p: &ExactPoly, q: &ExactPoly, main: usize) -> Result<Option<usize>, PolyError> {
    let mut others: Vec<usize> = p.support().into_iter().chain(q.support()).filter(|&i| i != main).collect();
    others.sort_unstable();
    others.dedup();
    match others.len() {
        0 => Ok(None),
        1 => Ok(Some(others[0])),
        _ => Err(PolyError::TooManyVariables {
            expected: 2,
            found: others.iter().chain(std::iter::once(&main)).map(|&i| p.vars().names()[i].clone()).collect::<Vec<_>>().join(", "),
        }),
    }
}

/// Sylvester resultant eliminating `var`. Besides `var`, at most one other
/// variable may occur; the result is expressed in the input's variable set.
pub fn resultant(p: &ExactPoly, q: &ExactPoly, var: &str) -> Result<ExactPoly, PolyError> {
    p.check_same(q)?;
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroInput("resultant"));
    }
    let main = p.vars().require(var)?;
    let other = other_variable(p, q, main)?;
    let r = resultant_dense(&BiPoly::from_poly(p, main, other), &BiPoly::from_poly(q, main, other));
    Ok(match other {
        Some(o) => r.to_poly(p.vars(), o),
        None => ExactPoly::constant(p.vars(), r.0.first().cloned().unwrap_or_else(num_rational::BigRational::zero)),
    })
}

/// `Res_y(p, q)` for polynomials in `(x, y)`.
pub fn resultant_y(p: &ExactPoly, q: &ExactPoly) -> Result<ExactPoly, PolyError> {
    resultant(p, q, "y")
}
