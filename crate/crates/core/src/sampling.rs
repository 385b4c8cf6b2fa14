//! Seeded random instances for tests, the CLI and the acceptance suite.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::jetbuilder::{index_tuples, plane_monomials, CoefficientField, SurfacePair};
use crate::polyring::{ExactPoly, Monomial, VarSet};

/// Default seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 0x6a65_7464_6966_6621;

fn small<R: Rng + ?Sized>(rng: &mut R, nonzero: bool) -> BigRational {
    loop {
        let c: i64 = rng.gen_range(-9..=9);
        if c != 0 || !nonzero {
            return BigRational::from_integer(BigInt::from(c));
        }
    }
}

/// Polynomial of degree `d` in `(x, y)` with every monomial present and
/// nonzero integer coefficients in `[-9, 9]`.
pub fn random_poly<R: Rng + ?Sized>(d: u32, rng: &mut R) -> ExactPoly {
    let terms: Vec<_> = plane_monomials(d).into_iter().map(|(h, i)| (Monomial::new(vec![h, i]), small(rng, true))).collect();
    ExactPoly::from_terms(&VarSet::xy(), terms)
}

pub fn random_surface<R: Rng + ?Sized>(d: u32, e: u32, rng: &mut R) -> SurfacePair {
    SurfacePair::new(random_poly(d, rng), random_poly(e, rng)).expect("sampled pair meets the normalization")
}

/// Field of order `m` with every entry a dense random polynomial of degree at most `a`.
pub fn random_field<R: Rng + ?Sized>(m: u32, a: u32, rng: &mut R) -> CoefficientField {
    let monos = plane_monomials(a);
    let entries: Vec<_> = index_tuples(m)
        .map(|t| {
            let terms: Vec<_> = monos.iter().map(|&(h, i)| (Monomial::new(vec![h, i]), small(rng, false))).collect();
            (t, ExactPoly::from_terms(&VarSet::xy(), terms))
        })
        .collect();
    CoefficientField::from_entries(m, a, entries).expect("entries respect the cap")
}
