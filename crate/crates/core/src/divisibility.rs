//! The linear system expressing `y^c | Lambda_{alpha,beta}` for every
//! `alpha + beta = m`, its exact kernel, and certified sections.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::jetbuilder::{build_jet, unknown_labels, CoefficientField, JetSpec, LambdaEngine, SurfacePair, UnknownLabel};
use crate::linalg::{echelon, kernel_from_echelon, SparseMatrix};
use crate::polyring::{format_rational, ExactPoly, Monomial};
use crate::surfacecharts::{full_chart_transfer, restrict_to_surface, verify_infinity_exponents, Chart};

/// The coefficient of `x^h y^i` in `Lambda_{alpha,beta}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowLabel {
    pub alpha: u32,
    pub beta: u32,
    pub h: u32,
    pub i: u32,
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.alpha, self.beta, self.h, self.i)
    }
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub spec: JetSpec,
    pub columns: Vec<UnknownLabel>,
    /// Labels of the rows kept after dropping identically zero ones.
    pub rows: Vec<RowLabel>,
    pub matrix: SparseMatrix,
    /// Monomials `x^h y^i`, `i < c`, `h + i <= a + dm + em`, over all Lambda.
    pub candidate_rows: usize,
    /// `(m+1) c (a + dm + em + 1)`.
    pub rectangle_bound: usize,
}

/// Rows in lexicographic `(alpha, beta)` order, then graded-lex `(h, i)`.
fn candidate_labels(spec: &JetSpec, top: u32) -> Vec<RowLabel> {
    let mut monos: Vec<(u32, u32)> = (0..spec.c.min(top + 1)).flat_map(|i| (0..=top - i).map(move |h| (h, i))).collect();
    monos.sort_by(|a, b| Monomial::new(vec![a.0, a.1]).cmp(&Monomial::new(vec![b.0, b.1])));
    (0..=spec.m)
        .flat_map(|alpha| monos.iter().map(move |&(h, i)| RowLabel { alpha, beta: spec.m - alpha, h, i }))
        .collect()
}

pub fn assemble_divisibility_system(surf: &SurfacePair, spec: &JetSpec) -> ConstraintSystem {
    let engine = LambdaEngine::new(surf, spec.m);
    let columns = unknown_labels(spec.m, spec.a);
    let top = spec.a + surf.d() * spec.m + surf.e() * spec.m;
    let candidates = candidate_labels(spec, top);
    let index: BTreeMap<RowLabel, usize> = candidates.iter().enumerate().map(|(n, l)| (*l, n)).collect();
    let column_entries: Vec<Vec<(usize, BigRational)>> = columns
        .par_iter()
        .map(|label| {
            let lambda = engine.expand(&CoefficientField::unit(spec.m, spec.a, *label));
            let mut out = Vec::new();
            for (alpha, beta, poly) in lambda.iter() {
                for (mono, c) in poly.terms() {
                    let ex = mono.exponents();
                    if ex[1] < spec.c {
                        let row = RowLabel { alpha, beta, h: ex[0], i: ex[1] };
                        let n = *index.get(&row).expect("Lambda degree stays within a + dm + em");
                        out.push((n, c.clone()));
                    }
                }
            }
            out
        })
        .collect();
    let mut dense_rows: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); candidates.len()];
    for (col, entries) in column_entries.into_iter().enumerate() {
        for (row, c) in entries {
            dense_rows[row].push((col, c));
        }
    }
    let mut matrix = SparseMatrix::new(columns.len());
    let mut rows = Vec::new();
    for (label, entries) in candidates.iter().zip(dense_rows) {
        if !entries.is_empty() {
            matrix.push_row(entries);
            rows.push(*label);
        }
    }
    let rectangle_bound = ((spec.m + 1) * spec.c * (top + 1)) as usize;
    ConstraintSystem { spec: *spec, columns, rows, matrix, candidate_rows: candidates.len(), rectangle_bound }
}

/// Exact nullspace basis, one vector per free column.
pub fn kernel_basis(sys: &ConstraintSystem) -> Vec<Vec<BigRational>> {
    kernel_from_echelon(&echelon(&sys.matrix))
}

pub fn solution_dimension(surf: &SurfacePair, spec: &JetSpec) -> usize {
    let sys = assemble_divisibility_system(surf, spec);
    sys.columns.len() - echelon(&sys.matrix).rank()
}

/// Kernel vectors as objects `"j,k,p,q,h,i" -> rational`.
pub fn kernel_to_json(sys: &ConstraintSystem, basis: &[Vec<BigRational>]) -> Value {
    Value::Array(
        basis
            .iter()
            .map(|v| {
                Value::Object(
                    sys.columns
                        .iter()
                        .zip(v)
                        .map(|(l, c)| (l.to_string(), Value::String(format_rational(c))))
                        .collect::<Map<_, _>>(),
                )
            })
            .collect(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectionChecks {
    pub y_divisible: bool,
    pub surface_restriction_exact: bool,
    pub infinity_exponents_ok: bool,
    /// Both chart transfers reproduce the pullback; false when `a > c - 4m`.
    pub chart_transfer_verified: bool,
}

/// What the algebra certifies versus what rests on the analytic argument
/// (local graphing functions and extension across codimension two).
pub const ANALYTIC_SCOPE: &str = "certified: y^c divides J, restriction cancels z^{m(d-1)} t^{m(e-1)}, \
chart transfers are polynomial with prefactor exponent c-a-4m; not certified: holomorphy along the \
remaining finite sets, which relies on the implicit-function and Hartogs-type extension argument";

#[derive(Clone, Debug)]
pub struct SectionCertificate {
    pub field: CoefficientField,
    pub j: ExactPoly,
    pub jtilde: ExactPoly,
    pub checks: SectionChecks,
}

impl SectionCertificate {
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "A": self.field.to_json(),
            "J": self.j.to_string(),
            "Jtilde": self.jtilde.to_string(),
            "checks": self.checks,
        })
    }
}

/// Every `Lambda` of `field` is divisible by `y^c`.
pub fn lambdas_divisible(engine: &LambdaEngine, field: &CoefficientField, c: u32) -> Result<bool> {
    let lambda = engine.expand(field);
    for (_, _, p) in lambda.iter() {
        if !p.monomial_quotient("y", c)?.1 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn build_section(surf: &SurfacePair, spec: &JetSpec, v: &[BigRational]) -> Result<SectionCertificate> {
    let field = CoefficientField::from_vector(spec.m, spec.a, v)?;
    let j = build_jet(&field, surf, spec)?;
    let (jtilde, exact) = j.monomial_quotient("y", spec.c)?;
    if !exact {
        return Err(Error::Consistency("kernel vector does not make J divisible by y^c".into()));
    }
    let restriction = restrict_to_surface(&field, surf, spec)?;
    let infinity = verify_infinity_exponents(spec);
    let chart_ok = if spec.holomorphic_at_infinity() {
        let mut ok = true;
        for chart in Chart::ALL {
            ok &= full_chart_transfer(&field, surf, spec, chart)?.identity_holds;
        }
        ok
    } else {
        false
    };
    Ok(SectionCertificate {
        field,
        j,
        jtilde,
        checks: SectionChecks {
            y_divisible: true,
            surface_restriction_exact: restriction.exact,
            infinity_exponents_ok: infinity.passes,
            chart_transfer_verified: chart_ok,
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub d: u32,
    pub e: u32,
    pub m: u32,
    pub c: u32,
    pub a: u32,
    pub columns: usize,
    pub candidate_rows: usize,
    pub rows: usize,
    pub rectangle_bound: usize,
    pub rank: usize,
    pub dimension: usize,
    pub kernel: Value,
    pub certificates: Vec<Value>,
    pub scope: &'static str,
}

/// Assembles, solves and certifies every basis vector.
pub fn solve(surf: &SurfacePair, spec: &JetSpec) -> Result<SolveReport> {
    let sys = assemble_divisibility_system(surf, spec);
    let ech = echelon(&sys.matrix);
    let basis = kernel_from_echelon(&ech);
    let certificates = basis
        .par_iter()
        .map(|v| build_section(surf, spec, v).map(|c| c.to_json()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SolveReport {
        d: surf.d(),
        e: surf.e(),
        m: spec.m,
        c: spec.c,
        a: spec.a,
        columns: sys.columns.len(),
        candidate_rows: sys.candidate_rows,
        rows: sys.rows.len(),
        rectangle_bound: sys.rectangle_bound,
        rank: ech.rank(),
        dimension: basis.len(),
        kernel: kernel_to_json(&sys, &basis),
        certificates,
        scope: ANALYTIC_SCOPE,
    })
}

/// Checks `sys * v = 0` exactly.
pub fn in_kernel(sys: &ConstraintSystem, v: &[BigRational]) -> bool {
    sys.matrix.mul_vec(v).is_ok_and(|w| w.iter().all(Zero::is_zero))
}
