use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rat, ExactPoly, Monomial, PolyError, VarSet};
use crate::linalg::{pow_mod, reduce_mod, CERT_PRIME};

/// Dense univariate polynomial over Q, coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UniPoly(pub(crate) Vec<BigRational>);

impl UniPoly {
    pub(crate) fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly(c)
    }

    pub(crate) fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub(crate) fn constant(c: BigRational) -> Self {
        UniPoly::new(vec![c])
    }

    pub(crate) fn one() -> Self {
        UniPoly::constant(BigRational::one())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub(crate) fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub(crate) fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub(crate) fn lc(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        UniPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z)).collect())
    }

    pub(crate) fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }

    pub(crate) fn scale(&self, s: &BigRational) -> UniPoly {
        UniPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub(crate) fn pow(&self, n: usize) -> UniPoly {
        let mut out = UniPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub(crate) fn derivative(&self) -> UniPoly {
        UniPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect())
    }

    /// Division with remainder over Q. Panics on a zero divisor.
    pub(crate) fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.0.clone();
        let inv = BigRational::one() / d.lc();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub(crate) fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    /// Quotient of an exact division; panics if the remainder is nonzero.
    pub(crate) fn exact_div(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub(crate) fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = BigRational::one() / self.lc();
        self.scale(&inv)
    }

    pub(crate) fn gcd(&self, o: &UniPoly) -> UniPoly {
        if coprime_mod(self, o, CERT_PRIME) {
            return UniPoly::one();
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse of `self` modulo `m` when they are coprime.
    pub(crate) fn inverse_mod(&self, m: &UniPoly) -> Option<UniPoly> {
        // extended Euclid tracking the coefficient of self
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let inv = BigRational::one() / r0.lc();
        Some(s0.scale(&inv).rem(m))
    }

    pub(crate) fn squarefree_part(&self) -> UniPoly {
        if self.is_constant() {
            return self.monic();
        }
        self.exact_div(&self.gcd(&self.derivative())).monic()
    }

    pub(crate) fn from_poly(p: &ExactPoly, idx: usize) -> UniPoly {
        let mut c = Vec::new();
        for (m, v) in p.terms() {
            let e = m.exponents()[idx] as usize;
            if c.len() <= e {
                c.resize(e + 1, BigRational::zero());
            }
            c[e] += v;
        }
        UniPoly::new(c)
    }

    pub(crate) fn to_poly(&self, vars: &VarSet, idx: usize) -> ExactPoly {
        ExactPoly::from_terms(
            vars,
            self.0.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0u32; vars.len()];
                e[idx] = i as u32;
                (Monomial::new(e), c.clone())
            }),
        )
    }
}

fn residues(a: &UniPoly, p: u64) -> Option<Vec<u64>> {
    let mut v = a.0.iter().map(|c| reduce_mod(c, p)).collect::<Option<Vec<_>>>()?;
    while v.last() == Some(&0) {
        v.pop();
    }
    Some(v)
}

/// Coprime mod `p` with both leading coefficients surviving. The gcd mod `p`
/// then has degree at least that of the rational gcd, so this certifies
/// coprimality over Q.
fn coprime_mod(a: &UniPoly, b: &UniPoly, p: u64) -> bool {
    let (Some(mut x), Some(mut y)) = (residues(a, p), residues(b, p)) else {
        return false;
    };
    if x.len() != a.0.len() || y.len() != b.0.len() || x.is_empty() || y.is_empty() {
        return false;
    }
    let mulm = |u: u64, v: u64| ((u as u128 * v as u128) % p as u128) as u64;
    while !y.is_empty() {
        let inv = pow_mod(*y.last().unwrap(), p - 2, p);
        while x.len() >= y.len() {
            let f = mulm(*x.last().unwrap(), inv);
            let shift = x.len() - y.len();
            for (j, &c) in y.iter().enumerate() {
                let sub = mulm(f, c);
                let t = &mut x[shift + j];
                *t = if *t >= sub { *t - sub } else { *t + p - sub };
            }
            while x.last() == Some(&0) {
                x.pop();
            }
            if x.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len() == 1
}

/// The single variable a polynomial involves, or any index when it is constant.
pub(crate) fn univariate_index(p: &ExactPoly, q: Option<&ExactPoly>) -> Result<usize, PolyError> {
    let mut support = p.support();
    if let Some(q) = q {
        for i in q.support() {
            if !support.contains(&i) {
                support.push(i);
            }
        }
    }
    match support.len() {
        0 => Ok(0),
        1 => Ok(support[0]),
        _ => Err(PolyError::TooManyVariables {
            expected: 1,
            found: support.iter().map(|&i| p.vars().names()[i].clone()).collect::<Vec<_>>().join(", "),
        }),
    }
}

/// Monic gcd of two univariate polynomials (in the same single variable).
pub fn gcd_univariate(p: &ExactPoly, q: &ExactPoly) -> Result<ExactPoly, PolyError> {
    p.check_same(q)?;
    if p.is_zero() && q.is_zero() {
        return Err(PolyError::ZeroInput("gcd_univariate"));
    }
    let idx = univariate_index(p, Some(q))?;
    if p.vars().is_empty() {
        return Ok(ExactPoly::one(p.vars()));
    }
    let g = UniPoly::from_poly(p, idx).gcd(&UniPoly::from_poly(q, idx));
    Ok(g.to_poly(p.vars(), idx))
}

/// True iff `gcd(p, p')` is constant.
pub fn squarefree_univariate(p: &ExactPoly) -> Result<bool, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroInput("squarefree_univariate"));
    }
    let idx = univariate_index(p, None)?;
    if p.is_constant() {
        return Ok(true);
    }
    let u = UniPoly::from_poly(p, idx);
    Ok(u.gcd(&u.derivative()).is_constant())
}

/// Monic squarefree part `p / gcd(p, p')`.
pub fn squarefree_part_univariate(p: &ExactPoly) -> Result<ExactPoly, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroInput("squarefree_part_univariate"));
    }
    let idx = univariate_index(p, None)?;
    if p.is_constant() {
        return Ok(ExactPoly::one(p.vars()));
    }
    Ok(UniPoly::from_poly(p, idx).squarefree_part().to_poly(p.vars(), idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> VarSet {
        VarSet::new(["x"]).unwrap()
    }

    fn p(s: &str) -> ExactPoly {
        ExactPoly::parse(s, &x()).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_univariate(&p("x^2-1"), &p("x-1")).unwrap(), p("x-1"));
        assert_eq!(gcd_univariate(&p("x"), &p("x+1")).unwrap(), p("1"));
        assert_eq!(gcd_univariate(&p("0"), &p("x^2")).unwrap(), p("x^2"));
        assert_eq!(gcd_univariate(&p("0"), &p("3*x^2 + 6")).unwrap(), p("x^2 + 2"));
        assert!(matches!(gcd_univariate(&p("0"), &p("0")), Err(PolyError::ZeroInput(_))));
    }

    #[test]
    fn gcd_rejects_bivariate() {
        let q = ExactPoly::parse("x*y - 1", &VarSet::xy()).unwrap();
        assert!(matches!(gcd_univariate(&q, &q), Err(PolyError::TooManyVariables { .. })));
    }

    #[test]
    fn squarefree_examples() {
        assert!(squarefree_univariate(&p("x^2-1")).unwrap());
        assert!(!squarefree_univariate(&p("x^2")).unwrap());
        assert!(squarefree_univariate(&p("5")).unwrap());
        assert!(squarefree_univariate(&p("0")).is_err());
        assert_eq!(squarefree_part_univariate(&p("2*x^3 - 2*x^2")).unwrap(), p("x^2 - x"));
    }

    #[test]
    fn inverse_mod_works() {
        let m = UniPoly::from_poly(&p("x^2 + 1"), 0);
        let a = UniPoly::from_poly(&p("x + 3"), 0);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!(a.mul(&inv).rem(&m), UniPoly::one());
        let b = UniPoly::from_poly(&p("x^2 + 1"), 0);
        assert!(b.inverse_mod(&m).is_none());
    }

    // Brute-force oracle: with all roots rational and known, the gcd is the
    // product of (x - r) over roots shared with multiplicity min(mult_p, mult_q).
    fn from_roots(roots: &[i64]) -> ExactPoly {
        roots.iter().fold(p("1"), |acc, r| &acc * &p(&format!("x - ({r})")))
    }

    fn shared_product(a: &[i64], b: &[i64]) -> ExactPoly {
        let mut rest = b.to_vec();
        let mut shared = Vec::new();
        for r in a {
            if let Some(pos) = rest.iter().position(|s| s == r) {
                rest.remove(pos);
                shared.push(*r);
            }
        }
        from_roots(&shared)
    }

    proptest! {
        #[test]
        fn gcd_matches_shared_linear_factors(
            a in proptest::collection::vec(-3i64..=3, 0..=6),
            b in proptest::collection::vec(-3i64..=3, 0..=6),
            ca in 1i64..5, cb in -4i64..-1,
        ) {
            let pa = from_roots(&a).scale(&rat(ca));
            let pb = from_roots(&b).scale(&rat(cb));
            prop_assert_eq!(gcd_univariate(&pa, &pb).unwrap(), shared_product(&a, &b));
        }
    }
}
