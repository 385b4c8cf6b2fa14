//! Audit of the generic-position hypotheses on `{R = 0}`, `{S = 0}` and
//! their partial-derivative curves, decided with resultants, gcds and
//! squarefree tests after random rational shears `x -> x + s y`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jetbuilder::SurfacePair;
use crate::polyring::{common_zero_locus, format_rational, resultant_y, Degree, ExactPoly, UniPoly, VarSet};

/// Number of shears tried before giving up.
pub const MAX_SHEARS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

fn xy_lift(p: &ExactPoly) -> Result<ExactPoly> {
    Ok(p.lift(&VarSet::xy())?)
}

fn nonconstant(p: &ExactPoly, what: &str) -> Result<u32> {
    match p.total_degree() {
        Degree::Finite(n) if n >= 1 => Ok(n),
        _ => Err(Error::Degenerate(format!("{what}: expected a nonconstant polynomial, got {p}"))),
    }
}

/// `p(x + s y, y)`.
pub fn shear(p: &ExactPoly, s: &BigRational) -> Result<ExactPoly> {
    let xy = VarSet::xy();
    let p = xy_lift(p)?;
    let image = &ExactPoly::var_at(&xy, 0) + &ExactPoly::var_at(&xy, 1).scale(s);
    Ok(p.substitute(&[("x", image)])?)
}

/// Rational with numerator in `+-[1, 97]` and denominator in `[1, 97]`.
pub fn random_shear<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let n: i64 = rng.gen_range(1..=97) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let d: i64 = rng.gen_range(1..=97);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Coefficient of `y^n` in `p(x + s y, y)`, i.e. `p_top(s, 1)`.
fn sheared_leading(p: &ExactPoly, n: u32, s: &BigRational) -> BigRational {
    p.homogeneous_part(n).terms().map(|(m, c)| c * num_traits::pow(s.clone(), m.exponents()[0] as usize)).sum()
}

/// `F(t, 1)` for a binary form `F(x, y)`.
fn dehomogenize(form: &ExactPoly) -> UniPoly {
    UniPoly::from_poly(form, 0)
}

/// Whether nonzero binary forms `(F_i, deg F_i)` share a projective root; zero forms are skipped.
fn binary_common_root(forms: &[(ExactPoly, u32)]) -> bool {
    let live: Vec<&(ExactPoly, u32)> = forms.iter().filter(|(f, _)| !f.is_zero()).collect();
    if live.is_empty() {
        return true;
    }
    let at_infinity = live.iter().all(|(f, n)| dehomogenize(f).degree().unwrap_or(0) < *n as usize);
    let g = live.iter().fold(UniPoly::zero(), |g, (f, _)| g.gcd(&dehomogenize(f)));
    at_infinity || !g.is_constant()
}

/// A nonzero binary form of degree `n` without repeated projective roots.
fn binary_squarefree(form: &ExactPoly, n: u32) -> bool {
    if form.is_zero() {
        return false;
    }
    let f = dehomogenize(form);
    let deg = f.degree().unwrap_or(0);
    deg + 1 >= n as usize && f.gcd(&f.derivative()).is_constant()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub degree_product: u32,
    pub resultant_degree: Option<u32>,
    pub squarefree: bool,
    pub all_affine: bool,
    /// The accepted shear `s` in `x -> x + s y`, when one was found.
    pub shear_used: Option<String>,
    pub shear_seed: u64,
    pub attempts: usize,
    pub verdict: Verdict,
    /// The last resultant examined.
    pub witness: Option<String>,
}

/// Transversality with the full Bezout count of simple affine points.
pub fn pair_transversality_check(p: &ExactPoly, q: &ExactPoly, seed: u64) -> Result<IntersectionReport> {
    let (p, q) = (xy_lift(p)?, xy_lift(q)?);
    let dp = nonconstant(&p, "pair_transversality_check")?;
    let dq = nonconstant(&q, "pair_transversality_check")?;
    let product = dp * dq;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IntersectionReport {
        degree_product: product,
        resultant_degree: None,
        squarefree: false,
        all_affine: true,
        shear_used: None,
        shear_seed: seed,
        attempts: 0,
        verdict: Verdict::Inconclusive,
        witness: None,
    };
    let mut nondegenerate = 0;
    for attempt in 1..=MAX_SHEARS {
        report.attempts = attempt;
        let s = random_shear(&mut rng);
        if sheared_leading(&p, dp, &s).is_zero() || sheared_leading(&q, dq, &s).is_zero() {
            continue;
        }
        nondegenerate += 1;
        let (ps, qs) = (shear(&p, &s)?, shear(&q, &s)?);
        let r = resultant_y(&ps, &qs)?;
        report.witness = Some(r.to_string());
        if r.is_zero() {
            // a common component
            report.resultant_degree = Some(0);
            report.all_affine = false;
            report.verdict = Verdict::Fail;
            return Ok(report);
        }
        let deg = r.total_degree().finite().unwrap_or(0);
        report.resultant_degree = Some(deg);
        if deg < product {
            // constant y-leading coefficients: the deficit counts points at infinity
            report.all_affine = false;
            report.verdict = Verdict::Fail;
            report.shear_used = Some(format_rational(&s));
            return Ok(report);
        }
        if crate::polyring::squarefree_univariate(&r)? {
            report.squarefree = true;
            report.shear_used = Some(format_rational(&s));
            report.verdict = Verdict::Pass;
            return Ok(report);
        }
    }
    report.verdict = if nondegenerate > 0 { Verdict::Fail } else { Verdict::Inconclusive };
    Ok(report)
}

/// One line of the audit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
    pub shear_seed: Option<u64>,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, verdict: Verdict, witness: Option<String>, shear_seed: Option<u64>) -> Self {
        CheckOutcome { name: name.into(), verdict, witness, shear_seed }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// A shear making every `y`-leading coefficient constant.
fn common_shear(polys: &[(&ExactPoly, u32)], rng: &mut ChaCha8Rng) -> Option<BigRational> {
    (0..MAX_SHEARS).map(|_| random_shear(rng)).find(|s| polys.iter().all(|(p, n)| !sheared_leading(p, *n, s).is_zero()))
}

/// Smoothness of the affine curve and of its closure along the line at infinity.
pub fn curve_smooth_check(p: &ExactPoly, seed: u64) -> Result<CheckOutcome> {
    let p = xy_lift(p)?;
    let n = nonconstant(&p, "curve_smooth_check")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = "smooth";
    let Some(s) = common_shear(&[(&p, n)], &mut rng) else {
        return Ok(CheckOutcome::new(name, Verdict::Inconclusive, None, Some(seed)));
    };
    let ps = shear(&p, &s)?;
    let (px, py) = (ps.diff("x")?, ps.diff("y")?);
    let ry = resultant_y(&ps, &py)?;
    if ry.is_zero() {
        // a repeated component
        return Ok(CheckOutcome::new(name, Verdict::Fail, Some(ry.to_string()), Some(seed)));
    }
    let candidates = if px.is_zero() {
        ry
    } else {
        let rx = resultant_y(&ps, &px)?;
        if rx.is_zero() {
            ry
        } else {
            crate::polyring::gcd_univariate(&ry, &rx)?
        }
    };
    if !candidates.is_constant() {
        let locus = common_zero_locus(&[ps.clone(), px, py], "y", &candidates)?;
        if !locus.is_constant() {
            return Ok(CheckOutcome::new(name, Verdict::Fail, Some(locus.to_string()), Some(seed)));
        }
    }
    // [X : Y : 0] is singular iff dF_n/dX, dF_n/dY and F_{n-1} vanish there
    let top = p.homogeneous_part(n);
    let sub = p.homogeneous_part(n - 1);
    let forms = [(top.diff("x")?, n - 1), (top.diff("y")?, n - 1), (sub, n - 1)];
    if n > 1 && binary_common_root(&forms) {
        return Ok(CheckOutcome::new(name, Verdict::Fail, Some(top.to_string()), Some(seed)));
    }
    Ok(CheckOutcome::new(name, Verdict::Pass, None, Some(seed)))
}

/// No point common to all three curves.
pub fn no_triple_check(p: &ExactPoly, q: &ExactPoly, r: &ExactPoly, seed: u64) -> Result<CheckOutcome> {
    let polys = [xy_lift(p)?, xy_lift(q)?, xy_lift(r)?];
    let degs = polys.iter().map(|f| nonconstant(f, "no_triple_check")).collect::<Result<Vec<_>>>()?;
    let name = "triple";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(&ExactPoly, u32)> = polys.iter().zip(degs.iter().copied()).collect();
    let Some(s) = common_shear(&pairs, &mut rng) else {
        return Ok(CheckOutcome::new(name, Verdict::Inconclusive, None, Some(seed)));
    };
    let sheared = polys.iter().map(|f| shear(f, &s)).collect::<Result<Vec<_>>>()?;
    let r1 = resultant_y(&sheared[0], &sheared[1])?;
    let r2 = resultant_y(&sheared[0], &sheared[2])?;
    let g = match (r1.is_zero(), r2.is_zero()) {
        (true, true) => resultant_y(&sheared[1], &sheared[2])?,
        (true, false) => r2,
        (false, true) => r1,
        (false, false) => crate::polyring::gcd_univariate(&r1, &r2)?,
    };
    if g.is_zero() {
        return Ok(CheckOutcome::new(name, Verdict::Fail, Some("0".into()), Some(seed)));
    }
    if g.is_constant() {
        return Ok(CheckOutcome::new(name, Verdict::Pass, None, Some(seed)));
    }
    let locus = common_zero_locus(&sheared, "y", &g)?;
    let verdict = Verdict::from_bool(locus.is_constant());
    Ok(CheckOutcome::new(name, verdict, (!locus.is_constant()).then(|| locus.to_string()), Some(seed)))
}

fn restrict_y0(p: &ExactPoly) -> Result<ExactPoly> {
    let xy = VarSet::xy();
    Ok(p.substitute(&[("y", ExactPoly::zero(&xy))])?)
}

/// `{y = 0}` meets `{P = 0}` in `deg P` simple points where neither partial vanishes.
pub fn line_y0_curve_check(p: &ExactPoly) -> Result<(bool, Option<String>)> {
    let p = xy_lift(p)?;
    let n = nonconstant(&p, "line_y0_curve_check")?;
    let p0 = restrict_y0(&p)?;
    if p0.total_degree() != Degree::Finite(n) {
        return Ok((false, Some(p0.to_string())));
    }
    if !crate::polyring::squarefree_univariate(&p0)? {
        return Ok((false, Some(p0.to_string())));
    }
    for partial in [p.diff("x")?, p.diff("y")?] {
        let g = crate::polyring::gcd_univariate(&p0, &restrict_y0(&partial)?)?;
        if !g.is_constant() {
            return Ok((false, Some(g.to_string())));
        }
    }
    Ok((true, None))
}

pub fn line_y0_disposition_check(r: &ExactPoly, s: &ExactPoly) -> Result<CheckOutcome> {
    let mut witness = None;
    let mut ok = true;
    for p in [r, s] {
        let (good, w) = line_y0_curve_check(p)?;
        if !good && ok {
            witness = w;
        }
        ok &= good;
    }
    Ok(CheckOutcome::new("line_y0", Verdict::from_bool(ok), witness, None))
}

/// `{R = 0} ∩ {S = 0}` avoids the axis `y = 0`.
pub fn axis_ox_disposition_check(r: &ExactPoly, s: &ExactPoly) -> Result<CheckOutcome> {
    let (r0, s0) = (restrict_y0(&xy_lift(r)?)?, restrict_y0(&xy_lift(s)?)?);
    if r0.is_zero() || s0.is_zero() {
        return Ok(CheckOutcome::new("axis_ox", Verdict::Fail, Some("0".into()), None));
    }
    let g = crate::polyring::gcd_univariate(&r0, &s0)?;
    Ok(CheckOutcome::new("axis_ox", Verdict::from_bool(g.is_constant()), (!g.is_constant()).then(|| g.to_string()), None))
}

/// The leading forms share no projective root and each is squarefree.
pub fn infinity_disposition_check(r: &ExactPoly, s: &ExactPoly) -> Result<CheckOutcome> {
    let (r, s) = (xy_lift(r)?, xy_lift(s)?);
    let (d, e) = (nonconstant(&r, "infinity_disposition_check")?, nonconstant(&s, "infinity_disposition_check")?);
    let (rd, se) = (r.homogeneous_part(d), s.homogeneous_part(e));
    if binary_common_root(&[(rd.clone(), d), (se.clone(), e)]) {
        return Ok(CheckOutcome::new("infinity", Verdict::Fail, Some(format!("{rd} ; {se}")), None));
    }
    for (f, n) in [(&rd, d), (&se, e)] {
        if !binary_squarefree(f, n) {
            return Ok(CheckOutcome::new("infinity", Verdict::Fail, Some(f.to_string()), None));
        }
    }
    Ok(CheckOutcome::new("infinity", Verdict::Pass, None, None))
}

/// The curve meets the line at infinity in `deg P` distinct points.
pub fn transverse_to_infinity(p: &ExactPoly) -> Result<bool> {
    let p = xy_lift(p)?;
    let n = nonconstant(&p, "transverse_to_infinity")?;
    Ok(binary_squarefree(&p.homogeneous_part(n), n))
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericityReport {
    pub seed: u64,
    pub verdict: Verdict,
    pub pass: bool,
    pub checks: Vec<CheckOutcome>,
    pub intersections: Vec<(String, IntersectionReport)>,
    /// Transversality of each of the six curves to the line at infinity.
    pub optional: Vec<CheckOutcome>,
}

pub const CURVE_NAMES: [&str; 6] = ["R", "R_x", "R_y", "S", "S_x", "S_y"];

pub fn six_curves(surf: &SurfacePair) -> [ExactPoly; 6] {
    [surf.r(), surf.r_x(), surf.r_y(), surf.s(), surf.s_x(), surf.s_y()].map(Clone::clone)
}

fn derive_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index)
}

/// All hypotheses: smoothness of both curves, the 15 pairs and 20 triples
/// among the six curves, and the line, axis and infinity dispositions.
pub fn full_genericity_audit(surf: &SurfacePair, seed: u64) -> Result<GenericityReport> {
    let curves = six_curves(surf);
    let mut checks = Vec::new();
    for (idx, (name, p)) in [("R", surf.r()), ("S", surf.s())].into_iter().enumerate() {
        let mut c = curve_smooth_check(p, derive_seed(seed, idx as u64))?;
        c.name = format!("smooth:{name}");
        checks.push(c);
    }
    let pairs: Vec<(usize, usize)> = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).collect();
    let pair_reports = pairs
        .par_iter()
        .enumerate()
        .map(|(n, &(i, j))| {
            let sd = derive_seed(seed, 100 + n as u64);
            pair_transversality_check(&curves[i], &curves[j], sd).map(|r| (format!("pair:{},{}", CURVE_NAMES[i], CURVE_NAMES[j]), r))
        })
        .collect::<Result<Vec<_>>>()?;
    for (name, r) in &pair_reports {
        checks.push(CheckOutcome::new(name.clone(), r.verdict, r.witness.clone().filter(|_| r.verdict != Verdict::Pass), Some(r.shear_seed)));
    }
    let triples: Vec<(usize, usize, usize)> =
        (0..6).flat_map(|i| (i + 1..6).flat_map(move |j| (j + 1..6).map(move |k| (i, j, k)))).collect();
    let triple_reports = triples
        .par_iter()
        .enumerate()
        .map(|(n, &(i, j, k))| {
            let sd = derive_seed(seed, 200 + n as u64);
            no_triple_check(&curves[i], &curves[j], &curves[k], sd).map(|mut c| {
                c.name = format!("triple:{},{},{}", CURVE_NAMES[i], CURVE_NAMES[j], CURVE_NAMES[k]);
                c
            })
        })
        .collect::<Result<Vec<_>>>()?;
    checks.extend(triple_reports);
    checks.push(line_y0_disposition_check(surf.r(), surf.s())?);
    checks.push(axis_ox_disposition_check(surf.r(), surf.s())?);
    checks.push(infinity_disposition_check(surf.r(), surf.s())?);
    let optional = curves
        .iter()
        .zip(CURVE_NAMES)
        .map(|(p, name)| {
            transverse_to_infinity(p).map(|ok| CheckOutcome::new(format!("at_infinity:{name}"), Verdict::from_bool(ok), None, None))
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = checks.iter().fold(Verdict::Pass, |v, c| v.combine(c.verdict));
    Ok(GenericityReport { seed, verdict, pass: verdict == Verdict::Pass, checks, intersections: pair_reports, optional })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_surface;

    fn xy(s: &str) -> ExactPoly {
        ExactPoly::parse(s, &VarSet::xy()).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn shear_examples() {
        assert_eq!(shear(&xy("x"), &q(1)).unwrap(), xy("x + y"));
        assert_eq!(shear(&xy("y"), &q(7)).unwrap(), xy("y"));
        assert_eq!(shear(&xy("x^2"), &q(1)).unwrap(), xy("x^2 + 2*x*y + y^2"));
    }

    #[test]
    fn pair_examples() {
        let r = pair_transversality_check(&xy("y - x"), &xy("y + x"), 1).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.resultant_degree, Some(1));
        let r = pair_transversality_check(&xy("y - x^2"), &xy("y"), 1).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(!r.squarefree);
        let r = pair_transversality_check(&xy("x*y - 1"), &xy("x*y - 2"), 1).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(!r.all_affine);
        let r = pair_transversality_check(&xy("x^2 + y^2 - 1"), &xy("x^2 + y^2 - 1"), 1).unwrap();
        assert_eq!((r.verdict, r.resultant_degree), (Verdict::Fail, Some(0)));
        assert!(pair_transversality_check(&xy("3"), &xy("y"), 1).is_err());
    }

    #[test]
    fn pair_on_random_cubics() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..3 {
            let s = random_surface(3, 3, &mut rng);
            let r = pair_transversality_check(s.r(), s.s(), 5).unwrap();
            assert_eq!(r.verdict, Verdict::Pass);
            assert_eq!(r.resultant_degree, Some(9));
            let r = pair_transversality_check(s.r(), s.s_x(), 5).unwrap();
            assert_eq!((r.verdict, r.resultant_degree), (Verdict::Pass, Some(6)));
        }
    }

    #[test]
    fn pair_verdict_is_shear_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let s = random_surface(2, 3, &mut rng);
        let cases = [(s.r().clone(), s.s().clone()), (xy("y - x^2"), xy("y")), (xy("x*y - 1"), xy("x*y - 2"))];
        for (p, qq) in &cases {
            let base = pair_transversality_check(p, qq, 3).unwrap().verdict;
            for _ in 0..3 {
                let t = random_shear(&mut rng);
                let v = pair_transversality_check(&shear(p, &t).unwrap(), &shear(qq, &t).unwrap(), 4).unwrap().verdict;
                assert_eq!(v, base);
            }
        }
    }

    #[test]
    fn smoothness_examples() {
        assert!(curve_smooth_check(&xy("x^2 + y^2 - 1"), 1).unwrap().passed());
        assert!(!curve_smooth_check(&xy("y^2 - x^3"), 1).unwrap().passed());
        assert!(curve_smooth_check(&xy("y^2 - x^3 - x - 1"), 1).unwrap().passed());
        // node at the origin
        assert!(!curve_smooth_check(&xy("y^2 - x^2 - x^3"), 1).unwrap().passed());
        // two parallel lines meet at infinity
        assert!(!curve_smooth_check(&xy("(x - y)*(x - y + 1)"), 1).unwrap().passed());
        // a doubled conic
        assert!(!curve_smooth_check(&xy("(x^2 + y^2 - 1)^2"), 1).unwrap().passed());
        assert!(curve_smooth_check(&xy("x + 2*y + 3"), 1).unwrap().passed());
        // y^2 = x^3 - x^2 has its node at the origin; y^2 z = x^3 is singular only there
        assert!(!curve_smooth_check(&xy("y^2 - x^3 + x^2"), 1).unwrap().passed());
        // x^3 + y^3 + 1: smooth Fermat cubic
        assert!(curve_smooth_check(&xy("x^3 + y^3 + 1"), 1).unwrap().passed());
        // y = x^3 has a cusp at infinity
        assert!(!curve_smooth_check(&xy("y - x^3"), 1).unwrap().passed());
    }

    #[test]
    fn triple_examples() {
        assert!(no_triple_check(&xy("y - x"), &xy("y + x"), &xy("y - 1"), 1).unwrap().passed());
        assert!(!no_triple_check(&xy("y - x"), &xy("y + x"), &xy("y"), 1).unwrap().passed());
        // resultants share the root x = 2 but the y-values differ
        assert!(no_triple_check(&xy("x - 2"), &xy("y - 1"), &xy("x + y - 5"), 1).unwrap().passed());
        assert!(!no_triple_check(&xy("x - 2"), &xy("y - 1"), &xy("x + y - 3"), 1).unwrap().passed());
    }

    #[test]
    fn triple_positives_are_sound() {
        // three lines through rational points; decide by direct enumeration
        let lines = [xy("y - x"), xy("y + x - 2"), xy("y - 1"), xy("x - 3"), xy("y + 2*x")];
        for i in 0..5 {
            for j in i + 1..5 {
                for k in j + 1..5 {
                    let ok = no_triple_check(&lines[i], &lines[j], &lines[k], 2).unwrap().passed();
                    let mut common = false;
                    for x0 in -6..=6 {
                        for y0 in -6..=6 {
                            let pt = |p: &ExactPoly| {
                                p.substitute(&[("x", xy(&x0.to_string())), ("y", xy(&y0.to_string()))]).unwrap().is_zero()
                            };
                            common |= pt(&lines[i]) && pt(&lines[j]) && pt(&lines[k]);
                        }
                    }
                    assert_eq!(ok, !common, "lines {i} {j} {k}");
                }
            }
        }
    }

    #[test]
    fn line_y0_examples() {
        assert!(!line_y0_curve_check(&xy("x^2 + y^2 - 1")).unwrap().0);
        let (ok, w) = line_y0_curve_check(&xy("x^2 + y^2 + x*y + y - 1")).unwrap();
        assert!(!ok);
        assert_eq!(w.unwrap(), "x + 1");
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let s = random_surface(3, 3, &mut rng);
        assert!(line_y0_disposition_check(s.r(), s.s()).unwrap().passed());
    }

    #[test]
    fn axis_examples() {
        assert!(!axis_ox_disposition_check(&xy("y - x"), &xy("y + x")).unwrap().passed());
        assert!(axis_ox_disposition_check(&xy("y - 1"), &xy("y - 2")).unwrap().passed());
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let s = random_surface(3, 3, &mut rng);
        assert!(axis_ox_disposition_check(s.r(), s.s()).unwrap().passed());
    }

    #[test]
    fn infinity_examples() {
        assert!(infinity_disposition_check(&xy("x^2 + y^2 - 1"), &xy("x*y - 1")).unwrap().passed());
        assert!(!infinity_disposition_check(&xy("x*y - 1"), &xy("x*y - 2")).unwrap().passed());
        assert!(!infinity_disposition_check(&xy("x^2 - 1"), &xy("y^2 + x")).unwrap().passed());
        assert!(transverse_to_infinity(&xy("x*y - 1")).unwrap());
        assert!(!transverse_to_infinity(&xy("x^2 + y")).unwrap());
    }

    #[test]
    fn audit_random_and_degenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let s = random_surface(3, 3, &mut rng);
        let rep = full_genericity_audit(&s, 1).unwrap();
        let failing: Vec<_> = rep.checks.iter().filter(|c| !c.passed()).map(|c| c.name.clone()).collect();
        assert!(rep.pass, "failing: {failing:?}");
        assert_eq!(rep.checks.len(), 2 + 15 + 20 + 3);
        assert_eq!(rep.optional.len(), 6);
        let same = SurfacePair::new(s.r().clone(), s.r().clone()).unwrap();
        let rep = full_genericity_audit(&same, 1).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        let rs = rep.checks.iter().find(|c| c.name == "pair:R,S").unwrap();
        assert_eq!((rs.verdict, rs.witness.as_deref()), (Verdict::Fail, Some("0")));
    }

    #[test]
    fn verdict_combination() {
        assert_eq!(Verdict::Pass.combine(Verdict::Inconclusive), Verdict::Inconclusive);
        assert_eq!(Verdict::Inconclusive.combine(Verdict::Fail), Verdict::Fail);
        assert_eq!(Verdict::Fail.to_string(), "fail");
    }
}
