//! Closed-form counts and bounds, evaluated exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::format_rational;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn overflow() -> Error {
    Error::Spec("count does not fit in 128 bits".into())
}

/// `(a+1)(a+2)/2 * (m+1)(m+2)(m+3)/6`.
pub fn dof(a: u64, m: u64) -> Result<u128> {
    let (a, m) = (u128::from(a), u128::from(m));
    let monos = (a + 1).checked_mul(a + 2).ok_or_else(overflow)? / 2;
    let tuples = (m + 1).checked_mul(m + 2).and_then(|t| t.checked_mul(m + 3)).ok_or_else(overflow)? / 6;
    monos.checked_mul(tuples).ok_or_else(overflow)
}

/// `(m+1) d (d + dm + em)`.
pub fn constraint_bound(d: u64, e: u64, m: u64) -> Result<u128> {
    if d == 0 || e == 0 || m == 0 {
        return Err(Error::Spec("constraint_bound needs positive d, e, m".into()));
    }
    let (d, e, m) = (u128::from(d), u128::from(e), u128::from(m));
    let inner = d.checked_mul(m).and_then(|dm| e.checked_mul(m).and_then(|em| d.checked_add(dm)?.checked_add(em)));
    inner
        .and_then(|i| (m + 1).checked_mul(d)?.checked_mul(i))
        .ok_or_else(overflow)
}

/// `d^3/93312 - 61 d^2/7776 - 17 d/108 - 28/27`.
pub fn cubic_value(d: i64) -> BigRational {
    let x = q(d);
    &x * &x * &x * frac(1, 93312) - &x * &x * frac(61, 7776) - &x * frac(17, 108) - frac(28, 27)
}

/// Least positive `d` with `cubic_value(d) >= 0`.
pub fn minimal_admissible_d() -> u64 {
    // the cubic is negative and decreasing until its single positive root
    (1u64..).find(|&d| !cubic_value(d as i64).is_negative()).expect("the cubic is eventually positive")
}

/// `floor(d / 12)`.
pub fn choose_m(d: u64) -> Result<u64> {
    if d < 12 {
        return Err(Error::Spec(format!("choose_m needs d >= 12, got {d}")));
    }
    Ok(d / 12)
}

/// `floor(d^2 / 648)`.
pub fn e_upper_bound(d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::Spec("e_upper_bound needs d >= 1".into()));
    }
    Ok(d * d / 648)
}

/// `(1/12)(4/9) d^2 (d/12 - 1)^3`, the minorant of the degrees of freedom.
pub fn dof_minorant(d: u64) -> BigRational {
    let x = q(d as i64);
    let t = &x / q(12) - BigRational::one();
    frac(1, 27) * &x * &x * &t * &t * &t
}

/// `(d/12 + 1) d [d + d d/12 + e d/12]`, the majorant of the constraints.
pub fn constraint_majorant(d: u64, e: u64) -> BigRational {
    let (x, y) = (q(d as i64), q(e as i64));
    let t = &x / q(12);
    (&t + BigRational::one()) * &x * (&x + &x * &t + &y * &t)
}

/// Both guarantees for the prescription `m = floor(d/12)`, `a = d - 4m`, `c = d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionBound {
    pub m: u64,
    pub a: u64,
    /// `dof - constraint_bound`, possibly negative.
    pub combinatorial: String,
    /// `max(0, combinatorial)`.
    pub guaranteed: String,
    pub printed_cubic: String,
    /// `combinatorial >= printed_cubic`.
    pub chain_holds: bool,
}

pub fn dimension_lower_bound(d: u64, e: u64) -> Result<DimensionBound> {
    let m = choose_m(d)?;
    let a = d - 4 * m;
    let comb = BigInt::from(dof(a, m)?) - BigInt::from(constraint_bound(d, e, m)?);
    let cubic = cubic_value(d as i64);
    let chain = BigRational::from_integer(comb.clone()) >= cubic;
    let guaranteed = if comb.is_negative() { BigInt::zero() } else { comb.clone() };
    Ok(DimensionBound {
        m,
        a,
        combinatorial: comb.to_string(),
        guaranteed: guaranteed.to_string(),
        printed_cubic: format_rational(&cubic),
        chain_holds: chain,
    })
}

/// The printed bracket divided by `1!2!3!4! = 288`, evaluated as written.
pub fn euler_characteristic(d: i64, e: i64, m: i64) -> BigRational {
    let [c3, c2, c1, c0] = euler_coefficients(d, e);
    let m = q(m);
    ((c3 * &m + c2) * &m + c1) * &m + c0
}

/// Coefficients of `m^3, m^2, m, 1` in the printed formula.
pub fn euler_coefficients(d: i64, e: i64) -> [BigRational; 4] {
    let (d, e) = (BigInt::from(d), BigInt::from(e));
    let d2e2 = &d * &d * &e * &e;
    let mixed2 = &d * &d * &e + &d * &e * &e;
    let mixed3 = &d * &d * &d * &e + &d * &e * &e * &e;
    let de = &d * &e;
    let n = |x: i64| BigInt::from(x);
    let c3 = n(24) * &d2e2 - n(120) * &mixed2 + n(360) * &de;
    let c2 = n(-72) * &d2e2 - n(72) * &mixed3 + n(360) * &mixed2 - n(720) * &de;
    let c1 = n(-60) * &d2e2 - n(48) * &mixed3 + n(300) * &mixed2 - n(660) * &de;
    let c0 = n(36) * &d2e2 + n(24) * &mixed3 - n(180) * &mixed2 + n(420) * &de;
    [c3, c2, c1, c0].map(|c| BigRational::new(c, BigInt::from(288)))
}

/// `chi(O_X)` of a smooth complete intersection of degrees `(d, e)` in P^4 by
/// Noether's formula: `de[(d+e-5)^2 + d^2 + de + e^2 - 5(d+e) + 10] / 12`.
pub fn classical_chi_structure_sheaf(d: i64, e: i64) -> BigRational {
    let s = d + e;
    frac(d * e * ((s - 5) * (s - 5) + d * d + d * e + e * e - 5 * s + 10), 12)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiCrossCheck {
    pub printed_at_m0: String,
    pub classical: String,
    pub agrees: bool,
    /// `classical / printed` when the printed value is nonzero.
    pub ratio: Option<String>,
}

/// Compares the printed formula at `m = 0` with `chi(O_X)`.
pub fn chi_cross_check(d: i64, e: i64) -> ChiCrossCheck {
    let printed = euler_characteristic(d, e, 0);
    let classical = classical_chi_structure_sheaf(d, e);
    let ratio = (!printed.is_zero()).then(|| format_rational(&(&classical / &printed)));
    ChiCrossCheck { printed_at_m0: format_rational(&printed), classical: format_rational(&classical), agrees: printed == classical, ratio }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub d: u64,
    pub e: u64,
    pub m: u64,
    pub a: u64,
    pub c: u64,
    pub dof: String,
    pub constraint_bound: String,
    pub dof_lower: String,
    pub constraint_upper: String,
    pub cubic_value: String,
    pub chi: String,
    pub combinatorial_bound: String,
    pub chain_holds: bool,
    pub chi_cross_check: ChiCrossCheck,
}

/// `m`, `a`, `c` default to `floor(d/12)` (at least 1), `d - 4m` (at least 0) and `d`.
pub fn count_report(d: u64, e: u64, m: Option<u64>, a: Option<u64>, c: Option<u64>) -> Result<CountReport> {
    if d == 0 || e == 0 {
        return Err(Error::Spec("d and e must be positive".into()));
    }
    let m = m.unwrap_or((d / 12).max(1));
    let a = a.unwrap_or(d.saturating_sub(4 * m));
    let c = c.unwrap_or(d);
    let dof_v = dof(a, m)?;
    let bound = constraint_bound(d, e, m)?;
    let comb = BigInt::from(dof_v) - BigInt::from(bound);
    let cubic = cubic_value(d as i64);
    Ok(CountReport {
        d,
        e,
        m,
        a,
        c,
        dof: dof_v.to_string(),
        constraint_bound: bound.to_string(),
        dof_lower: format_rational(&dof_minorant(d)),
        constraint_upper: format_rational(&constraint_majorant(d, e)),
        cubic_value: format_rational(&cubic),
        chi: format_rational(&euler_characteristic(d as i64, e as i64, m as i64)),
        chain_holds: BigRational::from_integer(comb.clone()) >= cubic,
        combinatorial_bound: comb.to_string(),
        chi_cross_check: chi_cross_check(d as i64, e as i64),
    })
}
