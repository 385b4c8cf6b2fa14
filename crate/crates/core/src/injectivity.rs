//! Exact rank checks for the injectivity of `A -> J`, the `R_x`/`S_x`
//! proposition behind it, and the Bezout vanishing lemma.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genericity::{full_genericity_audit, pair_transversality_check, Verdict};
use crate::jetbuilder::{index_tuples, jet_vars, plane_monomials, unknown_labels, CoefficientField, IndexTuple, LambdaEngine, SurfacePair};
use crate::linalg::{echelon, kernel_from_echelon, rank_mod_prime, SparseMatrix, CERT_PRIME};
use crate::polyring::{format_rational, ExactPoly, Monomial, VarSet};
use crate::sampling::random_field;

/// Matrix of a linear map into a polynomial space, in the monomial basis.
#[derive(Clone, Debug)]
pub struct LinearMapMatrix {
    pub columns: Vec<String>,
    /// Codomain monomials, one per row, ascending.
    pub rows: Vec<Monomial>,
    pub vars: VarSet,
    pub matrix: SparseMatrix,
}

impl LinearMapMatrix {
    fn from_images(columns: Vec<String>, images: &[ExactPoly], vars: VarSet) -> Self {
        let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
        for img in images {
            for (mono, _) in img.terms() {
                index.entry(mono.clone()).or_insert(0);
            }
        }
        for (n, slot) in index.values_mut().enumerate() {
            *slot = n;
        }
        let mut rows: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); index.len()];
        for (c, img) in images.iter().enumerate() {
            for (mono, v) in img.terms() {
                rows[index[mono]].push((c, v.clone()));
            }
        }
        let mut matrix = SparseMatrix::new(columns.len());
        for row in rows {
            matrix.push_row(row);
        }
        LinearMapMatrix { columns, rows: index.into_keys().collect(), vars, matrix }
    }

    /// Coefficients of `p` in the row basis, or `None` if `p` leaves it.
    pub fn coefficient_vector(&self, p: &ExactPoly) -> Option<Vec<BigRational>> {
        let mut v = vec![BigRational::zero(); self.rows.len()];
        for (mono, c) in p.terms() {
            let at = self.rows.binary_search(mono).ok()?;
            v[at] = c.clone();
        }
        Some(v)
    }

    pub fn apply(&self, x: &[BigRational]) -> Result<ExactPoly> {
        let y = self.matrix.mul_vec(x)?;
        Ok(ExactPoly::from_terms(&self.vars, self.rows.iter().cloned().zip(y)))
    }
}

/// How a theorem instance is gated.
#[derive(Clone, Copy, Debug, Default)]
pub struct GateOptions {
    /// Skip the genericity audit; the outcome is then marked unverified.
    pub override_genericity: bool,
    /// Allow `a = d - 1` for the theorem, beyond its stated cap.
    pub allow_degree_cap: bool,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankOutcome {
    pub rank: usize,
    pub columns: usize,
    pub rows: usize,
    pub holds: bool,
    pub hypotheses_verified: bool,
    /// `"modular"` when full rank was certified mod a prime, else `"bareiss"`.
    pub method: &'static str,
    /// A nonzero kernel vector, by column label.
    pub kernel_witness: Option<BTreeMap<String, String>>,
}

fn gate(surf: &SurfacePair, opts: &GateOptions) -> Result<bool> {
    if opts.override_genericity {
        return Ok(false);
    }
    if full_genericity_audit(surf, opts.seed)?.pass {
        Ok(true)
    } else {
        Err(Error::GenericityGate)
    }
}

fn rank_outcome(map: &LinearMapMatrix, hypotheses_verified: bool) -> RankOutcome {
    let columns = map.columns.len();
    let mut out = RankOutcome {
        rank: columns,
        columns,
        rows: map.rows.len(),
        holds: true,
        hypotheses_verified,
        method: "modular",
        kernel_witness: None,
    };
    if rank_mod_prime(&map.matrix, CERT_PRIME) == Some(columns) {
        return out;
    }
    let ech = echelon(&map.matrix);
    out.method = "bareiss";
    out.rank = ech.rank();
    out.holds = out.rank == columns;
    if !out.holds {
        let kernel = kernel_from_echelon(&ech);
        out.kernel_witness = kernel.first().map(|v| {
            map.columns
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(l, c)| (l.clone(), format_rational(c)))
                .collect()
        });
    }
    out
}

fn structural_terms(surf: &SurfacePair, m: u32) -> Vec<(IndexTuple, ExactPoly)> {
    let jv = jet_vars();
    let lift = |p: &ExactPoly| p.lift(&jv).expect("(x, y) embeds in the jet ring");
    let xp = ExactPoly::var(&jv, "x'").expect("jet variable");
    let yp = ExactPoly::var(&jv, "y'").expect("jet variable");
    let r_prime = &(&xp * &lift(surf.r_x())) + &(&yp * &lift(surf.r_y()));
    let s_prime = &(&xp * &lift(surf.s_x())) + &(&yp * &lift(surf.s_y()));
    let (r, s) = (lift(surf.r()), lift(surf.s()));
    let tuples: Vec<IndexTuple> = index_tuples(m).collect();
    tuples
        .into_par_iter()
        .map(|t| {
            let body = &(&r_prime.pow(t.p) * &s_prime.pow(t.q)) * &(&r.pow(m - t.p) * &s.pow(m - t.q));
            (t, body.mul_monomial(&[0, 0, t.j, t.k], &BigRational::one()))
        })
        .collect()
}

/// The matrix of `A -> J` for entries of degree at most `a`, with no cap check.
pub fn jet_map_matrix(surf: &SurfacePair, m: u32, a: u32) -> LinearMapMatrix {
    let terms: BTreeMap<IndexTuple, ExactPoly> = structural_terms(surf, m).into_iter().collect();
    let labels = unknown_labels(m, a);
    let images: Vec<ExactPoly> =
        labels.iter().map(|l| terms[&l.tuple].mul_monomial(&[l.h, l.i, 0, 0], &BigRational::one())).collect();
    LinearMapMatrix::from_images(labels.iter().map(ToString::to_string).collect(), &images, jet_vars())
}

fn check_cap(surf: &SurfacePair, a: u32) -> Result<()> {
    if i64::from(a) > i64::from(surf.d()) - 2 {
        return Err(Error::Spec(format!("a = {a} exceeds the injectivity cap d - 2 = {}", i64::from(surf.d()) - 2)));
    }
    Ok(())
}

pub fn injectivity_matrix(surf: &SurfacePair, m: u32, a: u32) -> Result<LinearMapMatrix> {
    if m == 0 {
        return Err(Error::Spec("m must be positive".into()));
    }
    check_cap(surf, a)?;
    Ok(jet_map_matrix(surf, m, a))
}

/// Full column rank of `A -> J`: `J = 0` forces every `A = 0`.
pub fn verify_injectivity_theorem(surf: &SurfacePair, m: u32, a: u32, opts: &GateOptions) -> Result<RankOutcome> {
    if m == 0 {
        return Err(Error::Spec("m must be positive".into()));
    }
    if !opts.allow_degree_cap {
        check_cap(surf, a)?;
    } else if i64::from(a) > i64::from(surf.d()) - 1 {
        return Err(Error::Spec(format!("a = {a} exceeds d - 1")));
    }
    let verified = gate(surf, opts)?;
    Ok(rank_outcome(&jet_map_matrix(surf, m, a), verified))
}

/// Matrix of `(A_{p,q}) -> sum A_{p,q} R_x^p S_x^q R^(m-p) S^(m-q)` over
/// `p + q <= m`, each `A_{p,q}` of degree at most `cap`.
pub fn rx_sx_matrix(surf: &SurfacePair, m: u32, cap: u32) -> LinearMapMatrix {
    let pairs: Vec<(u32, u32)> = (0..=m).flat_map(|p| (0..=m - p).map(move |q| (p, q))).collect();
    let blocks: Vec<ExactPoly> = pairs
        .par_iter()
        .map(|&(p, q)| &(&surf.r_x().pow(p) * &surf.s_x().pow(q)) * &(&surf.r().pow(m - p) * &surf.s().pow(m - q)))
        .collect();
    let monos = plane_monomials(cap);
    let mut labels = Vec::new();
    let mut images = Vec::new();
    for (&(p, q), block) in pairs.iter().zip(&blocks) {
        for &(h, i) in &monos {
            labels.push(format!("{p},{q},{h},{i}"));
            images.push(block.mul_monomial(&[h, i], &BigRational::one()));
        }
    }
    LinearMapMatrix::from_images(labels, &images, VarSet::xy())
}

/// The proposition at cap `d - 1` unless another cap is given.
pub fn verify_rx_sx_proposition(surf: &SurfacePair, m: u32, cap: Option<u32>, opts: &GateOptions) -> Result<RankOutcome> {
    let cap = cap.unwrap_or(surf.d() - 1);
    let verified = gate(surf, opts)?;
    Ok(rank_outcome(&rx_sx_matrix(surf, m, cap), verified))
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingOutcome {
    pub truncation_degree: u32,
    pub generators: usize,
    pub slice_dimension: usize,
    pub holds: bool,
    /// A nonzero element of the ideal of degree at most `amax`.
    pub witness: Option<String>,
}

/// No nonzero polynomial of degree at most `amax` lies in `(P, Q)`, checked on
/// the Macaulay span of multiples of total degree at most `deg P + deg Q - 1 + extra`.
pub fn vanishing_lemma_check(p: &ExactPoly, q: &ExactPoly, amax: u32, extra_degree: u32, seed: u64) -> Result<VanishingOutcome> {
    let (p, q) = (p.lift(&VarSet::xy())?, q.lift(&VarSet::xy())?);
    let transversal = pair_transversality_check(&p, &q, seed)?;
    if transversal.verdict != Verdict::Pass {
        return Err(Error::Degenerate(format!("transversality of P and Q is {}", transversal.verdict)));
    }
    let (dp, dq) = (p.total_degree().finite().unwrap_or(0), q.total_degree().finite().unwrap_or(0));
    if amax + 1 > dp {
        return Err(Error::Spec(format!("amax = {amax} exceeds deg P - 1 = {}", dp - 1)));
    }
    let top = dp + dq - 1 + extra_degree;
    let mut images = Vec::new();
    for (g, dg) in [(&p, dp), (&q, dq)] {
        for (h, i) in plane_monomials(top - dg) {
            images.push(g.mul_monomial(&[h, i], &BigRational::one()));
        }
    }
    let labels = (0..images.len()).map(|n| n.to_string()).collect();
    let map = LinearMapMatrix::from_images(labels, &images, VarSet::xy());
    let high: Vec<usize> = (0..map.rows.len()).filter(|&r| map.rows[r].degree() > amax).collect();
    let kernel = kernel_from_echelon(&echelon(&map.matrix.select_rows(&high)));
    let low: Vec<ExactPoly> = kernel.iter().map(|v| map.apply(v)).collect::<Result<_>>()?;
    let low_span = if low.is_empty() {
        0
    } else {
        let m = LinearMapMatrix::from_images((0..low.len()).map(|n| n.to_string()).collect(), &low, VarSet::xy());
        echelon(&m.matrix).rank()
    };
    Ok(VanishingOutcome {
        truncation_degree: top,
        generators: images.len(),
        slice_dimension: low_span,
        holds: low_span == 0,
        witness: low.into_iter().find(|f| !f.is_zero()).map(|f| f.to_string()),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangularOutcome {
    /// `(k', identity holds)` for `k' = 0..=m`.
    pub slices: Vec<(u32, bool)>,
    pub holds: bool,
}

fn zero_below(field: &CoefficientField, k_min: u32) -> Result<CoefficientField> {
    let kept = field.entries().filter(|(t, _)| t.k >= k_min).map(|(t, a)| (*t, a.clone()));
    CoefficientField::from_entries(field.m(), field.a(), kept)
}

/// With every `A` of `k < k'` removed, the `beta = k'` slice of Lambda equals
/// `R^k' S^k' sum_{j+p+q=m-k'} A_{j,k',p,q} R_x^p S_x^q R^(m-k'-p) S^(m-k'-q)`.
pub fn triangular_identity(surf: &SurfacePair, field: &CoefficientField, k_prime: u32) -> Result<bool> {
    let m = field.m();
    if k_prime > m {
        return Err(Error::Spec(format!("k' = {k_prime} exceeds m = {m}")));
    }
    let reduced = zero_below(field, k_prime)?;
    let lhs = LambdaEngine::new(surf, m).expand(&reduced).get(m - k_prime).clone();
    let n = m - k_prime;
    let mut sum = ExactPoly::zero(&VarSet::xy());
    for (t, a) in reduced.entries().filter(|(t, _)| t.k == k_prime) {
        let body = &(&surf.r_x().pow(t.p) * &surf.s_x().pow(t.q)) * &(&surf.r().pow(n - t.p) * &surf.s().pow(n - t.q));
        sum = &sum + &(a * &body);
    }
    let rhs = &(&surf.r().pow(k_prime) * &surf.s().pow(k_prime)) * &sum;
    Ok(lhs == rhs)
}

/// The identity for every `k' <= m` on one random field per slice.
pub fn triangular_reduction_check<R: Rng + ?Sized>(surf: &SurfacePair, m: u32, a: u32, rng: &mut R) -> Result<TriangularOutcome> {
    if m > 3 {
        return Err(Error::Spec(format!("m = {m} is beyond desk scale (m <= 3)")));
    }
    let mut slices = Vec::new();
    for k in 0..=m {
        let field = random_field(m, a, rng);
        slices.push((k, triangular_identity(surf, &field, k)?));
    }
    let holds = slices.iter().all(|(_, ok)| *ok);
    Ok(TriangularOutcome { slices, holds })
}
