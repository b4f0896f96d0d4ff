//! Complete intersection defect and the `ν(H_1)` lower bounds.
//!
//! `cid(A) = ν(I) − m` for a presentation `A = k[[Y_1..Y_m]]/I` (the height
//! of an `m`-primary ideal is `m`). The same number is recomputed from `A`
//! alone as `dim_k H_1(y; A) − e`, where `y_1..y_e` minimally generate the
//! maximal ideal; the two routes share no code beyond the algebra itself.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    annihilator, ideal_span, lift_presentation, quotient_by_ideal, AlgebraError,
    AlgebraPresentation, LocalAlgebra,
};
use crate::koszul::{append_zero, transform_basis, HomologyReport, KoszulComplex, KoszulError};
use crate::linalg::{FieldElement, FieldMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
    #[error("lower bound violated: nu(H1) = {}, bound = {}", .0.nu_h1, .0.bound)]
    TheoremViolated(TheoremReport),
    #[error("presentation lift is inconsistent: {0}")]
    LiftMismatch(String),
}

pub fn cid_presentation(pres: &AlgebraPresentation) -> i64 {
    pres.nu_ideal() as i64 - pres.nvars() as i64
}

/// `dim H_1(minimal generators of m; A) − embdim(A)`.
pub fn cid_deviation(algebra: &LocalAlgebra) -> Result<i64, KoszulError> {
    let gens = algebra.max_ideal_generators();
    let e = gens.len();
    if e == 0 {
        return Ok(0);
    }
    let complex = KoszulComplex::build(algebra, &gens)?;
    Ok(complex.homology().dim(1) as i64 - e as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CidReport {
    pub via_presentation: i64,
    pub via_deviation: i64,
    pub embdim: usize,
    pub agree: bool,
}

impl CidReport {
    pub fn compute(algebra: &LocalAlgebra) -> Result<Self, KoszulError> {
        let via_presentation = cid_presentation(algebra.presentation());
        let via_deviation = cid_deviation(algebra)?;
        Ok(Self {
            via_presentation,
            via_deviation,
            embdim: algebra.embdim(),
            agree: via_presentation == via_deviation,
        })
    }

    /// Both routes agree and the value is non-negative.
    pub fn consistent(&self) -> bool {
        self.agree && self.via_presentation >= 0
    }
}

/// `ν(H_1(x; A)) ≥ n + cid(A) − cid(A/(x))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub nu_h1: usize,
    pub cid: i64,
    pub cid_quotient: i64,
    pub bound: i64,
    pub slack: i64,
    pub conjecture10_met: bool,
}

impl TheoremReport {
    pub fn evaluate(n: usize, nu_h1: usize, cid: i64, cid_quotient: i64) -> Self {
        let bound = n as i64 + cid - cid_quotient;
        Self {
            n,
            nu_h1,
            cid,
            cid_quotient,
            bound,
            slack: nu_h1 as i64 - bound,
            conjecture10_met: nu_h1 >= n,
        }
    }

    pub fn holds(&self) -> bool {
        self.slack >= 0
    }

    pub fn is_tight(&self) -> bool {
        self.slack == 0
    }
}

fn nu_h1_of(algebra: &LocalAlgebra, elements: &[Vec<FieldElement>]) -> Result<usize, KoszulError> {
    let complex = KoszulComplex::build(algebra, elements)?;
    Ok(if complex.n() == 0 { 0 } else { complex.homology().nu(1) })
}

/// Evaluates the lower bound; a negative slack is an engine defect and is
/// returned as an error.
pub fn check_main_theorem(
    algebra: &LocalAlgebra,
    elements: &[Vec<FieldElement>],
) -> Result<TheoremReport, InvariantError> {
    let nu_h1 = nu_h1_of(algebra, elements)?;
    let quotient = quotient_by_ideal(algebra, elements)?;
    let report = TheoremReport::evaluate(
        elements.len(),
        nu_h1,
        cid_presentation(algebra.presentation()),
        cid_presentation(quotient.presentation()),
    );
    if report.holds() {
        Ok(report)
    } else {
        Err(InvariantError::TheoremViolated(report))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Conjecture10Report {
    pub n: usize,
    pub nu_h1: usize,
    pub met: bool,
    pub slack: i64,
    /// `cid(A) ≥ cid(A/(x))`, where the bound `ν(H_1) ≥ n` is already proved.
    pub theorem_backed: bool,
}

impl Conjecture10Report {
    pub fn from_theorem(t: &TheoremReport) -> Self {
        Self {
            n: t.n,
            nu_h1: t.nu_h1,
            met: t.nu_h1 >= t.n,
            slack: t.nu_h1 as i64 - t.n as i64,
            theorem_backed: t.cid >= t.cid_quotient,
        }
    }

    /// A miss where the bound is a theorem, as opposed to a conjecture finding.
    pub fn is_theorem_violation(&self) -> bool {
        !self.met && self.theorem_backed
    }
}

/// Reports `ν(H_1) ≥ n`. Never fails on a miss; callers decide what a miss means.
pub fn check_conjecture10(
    algebra: &LocalAlgebra,
    elements: &[Vec<FieldElement>],
) -> Result<Conjecture10Report, InvariantError> {
    let nu_h1 = nu_h1_of(algebra, elements)?;
    let quotient = quotient_by_ideal(algebra, elements)?;
    let t = TheoremReport::evaluate(
        elements.len(),
        nu_h1,
        cid_presentation(algebra.presentation()),
        cid_presentation(quotient.presentation()),
    );
    Ok(Conjecture10Report::from_theorem(&t))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub n: usize,
    pub m: usize,
    pub nu_source: usize,
    pub nu_lifted: usize,
    pub cid: i64,
    pub lifted_cid: i64,
    pub length_preserved: bool,
}

impl LiftReport {
    /// `ν(𝔞) = cid(A) + n + m` and the lifted presentation has the same cid.
    pub fn consistent(&self) -> bool {
        self.nu_lifted as i64 == self.cid + (self.n + self.m) as i64
            && self.lifted_cid == self.cid
            && self.length_preserved
    }
}

pub fn check_lift_invariance(
    algebra: &LocalAlgebra,
    elements: &[Vec<FieldElement>],
) -> Result<LiftReport, InvariantError> {
    let lift = lift_presentation(algebra, elements)?;
    let report = LiftReport {
        n: lift.n(),
        m: algebra.nvars(),
        nu_source: lift.nu_source,
        nu_lifted: lift.nu_lifted,
        cid: cid_presentation(algebra.presentation()),
        lifted_cid: lift.lifted_cid(),
        length_preserved: lift.lifted_length == algebra.length(),
    };
    if report.consistent() {
        Ok(report)
    } else {
        Err(InvariantError::LiftMismatch(format!(
            "nu(a) = {}, cid(A) = {}, n + m = {}, lifted cid = {}",
            report.nu_lifted,
            report.cid,
            report.n + report.m,
            report.lifted_cid
        )))
    }
}

/// The `n = 1` and `n = 2` facts, where they apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallNReport {
    pub n: usize,
    /// n = 1: `ℓ(Ann x)`; n = 2: `ℓ(Ann(x_1, x_2))`.
    pub ann_length: usize,
    /// n = 2: `ℓ(A/(x_1,x_2))`.
    pub quotient_length: Option<usize>,
    /// n = 2: `ℓ(H_1) − ℓ(A/(x)) − ℓ(Ann(x))`.
    pub identity_value: Option<i64>,
    pub holds: bool,
}

pub fn check_small_n(
    algebra: &LocalAlgebra,
    elements: &[Vec<FieldElement>],
    homology: &HomologyReport,
) -> Result<Option<SmallNReport>, InvariantError> {
    let n = elements.len();
    if n == 0 || n > 2 {
        return Ok(None);
    }
    let ann = annihilator(algebra, elements)?.dim();
    let dim_h1 = homology.dims[1];
    if n == 1 {
        return Ok(Some(SmallNReport {
            n,
            ann_length: ann,
            quotient_length: None,
            identity_value: None,
            holds: dim_h1 == ann && dim_h1 >= 1,
        }));
    }
    let quotient_length = algebra.length() - ideal_span(algebra, elements)?.dim();
    let identity = dim_h1 as i64 - quotient_length as i64 - ann as i64;
    Ok(Some(SmallNReport {
        n,
        ann_length: ann,
        quotient_length: Some(quotient_length),
        identity_value: Some(identity),
        holds: identity == 0 && homology.nus[1] >= 2,
    }))
}

/// The vector `(dim H_0..dim H_n, ν(H_1))` compared across a change of basis.
pub fn remark8_signature(report: &HomologyReport) -> (Vec<usize>, Option<usize>) {
    (report.dims.clone(), report.nu_h1())
}

pub fn check_change_of_basis(
    algebra: &LocalAlgebra,
    elements: &[Vec<FieldElement>],
    baseline: &HomologyReport,
    transform: &FieldMatrix,
) -> Result<bool, InvariantError> {
    let moved = transform_basis(algebra.field(), elements, transform)?;
    let report = KoszulComplex::build(algebra, &moved)?.homology().report();
    Ok(remark8_signature(&report) == remark8_signature(baseline))
}

/// `H_1(x, 0) ≅ H_1(x) ⊕ H_0(x)` on dimensions and on `ν`.
pub fn check_append_zero(
    algebra: &LocalAlgebra,
    elements: &[Vec<FieldElement>],
    baseline: &HomologyReport,
) -> Result<bool, InvariantError> {
    let extended = append_zero(algebra, elements);
    let report = KoszulComplex::build(algebra, &extended)?.homology().report();
    let (h1, nu1) = match (baseline.dims.get(1), baseline.nus.get(1)) {
        (Some(&d), Some(&v)) => (d, v),
        _ => (0, 0),
    };
    Ok(report.dims[1] == h1 + baseline.dims[0] && report.nus[1] == nu1 + baseline.nus[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::poly::parse_poly;

    fn alg(p: u64, names: &[&str], gens: &[&str]) -> LocalAlgebra {
        let f = PrimeField::new(p).unwrap();
        let v: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let g = gens.iter().map(|g| parse_poly(g, &v, f, 64).unwrap()).collect();
        LocalAlgebra::from_generators(f, v, g, None, 12).unwrap()
    }

    fn elems(a: &LocalAlgebra, xs: &[&str]) -> Vec<Vec<FieldElement>> {
        xs.iter()
            .map(|t| {
                let p = parse_poly(t, a.presentation().vars(), a.field(), 64).unwrap();
                a.element_from_poly(&p).unwrap()
            })
            .collect()
    }

    const M2: [&str; 3] = ["y1^2", "y1*y2", "y2^2"];

    #[test]
    fn cid_presentation_examples() {
        assert_eq!(cid_presentation(alg(101, &["y"], &["y^3"]).presentation()), 0);
        assert_eq!(cid_presentation(alg(101, &["y1", "y2"], &M2).presentation()), 1);
        assert_eq!(cid_presentation(alg(101, &["y1", "y2"], &["y1", "y2"]).presentation()), 0);
    }

    #[test]
    fn cid_deviation_examples() {
        assert_eq!(cid_deviation(&alg(101, &["y"], &["y^3"])).unwrap(), 0);
        assert_eq!(cid_deviation(&alg(101, &["y1", "y2"], &M2)).unwrap(), 1);
        assert_eq!(cid_deviation(&alg(101, &[], &[])).unwrap(), 0);
    }

    #[test]
    fn cid_routes_agree_on_non_minimal_presentations() {
        // k[y1,y2]/(y1 - y2^2, y2^3) ≅ k[y]/(y^3): a complete intersection.
        let a = alg(101, &["y1", "y2"], &["y1 - y2^2", "y2^3", "y1*y2"]);
        let r = CidReport::compute(&a).unwrap();
        assert_eq!(r.embdim, 1);
        assert_eq!(r.via_presentation, 0);
        assert!(r.consistent());
    }

    #[test]
    fn theorem_examples() {
        let a = alg(101, &["y1", "y2"], &M2);
        let t = check_main_theorem(&a, &elems(&a, &["y1", "y2"])).unwrap();
        assert_eq!((t.nu_h1, t.bound, t.slack), (3, 3, 0));
        let t = check_main_theorem(&a, &elems(&a, &["y1"])).unwrap();
        assert_eq!((t.nu_h1, t.bound, t.slack), (2, 2, 0));

        let b = alg(101, &["y"], &["y^4"]);
        let t = check_main_theorem(&b, &elems(&b, &["y^2"])).unwrap();
        assert_eq!((t.nu_h1, t.bound, t.slack), (1, 1, 0));
    }

    #[test]
    fn conjecture_examples() {
        let a = alg(101, &["y1", "y2"], &M2);
        let c = check_conjecture10(&a, &elems(&a, &["y1 + y2"])).unwrap();
        assert!(c.met);
        let c = check_conjecture10(&a, &elems(&a, &["y1", "y2"])).unwrap();
        assert!(c.met && c.theorem_backed);
        assert_eq!(c.slack, 1);
    }

    #[test]
    fn lift_examples() {
        let a = alg(101, &["y"], &["y^3"]);
        let r = check_lift_invariance(&a, &[]).unwrap();
        assert_eq!(r.nu_lifted, r.nu_source);
        let r = check_lift_invariance(&a, &elems(&a, &["y"])).unwrap();
        assert_eq!((r.nu_lifted, r.cid), (2, 0));

        let b = alg(101, &["y1", "y2"], &M2);
        let r = check_lift_invariance(&b, &elems(&b, &["y1"])).unwrap();
        assert_eq!((r.nu_lifted, r.cid, r.n + r.m), (4, 1, 3));
    }

    #[test]
    fn small_n_facts() {
        let a = alg(3, &["y1", "y2"], &["y1^3", "y2^2"]);
        for xs in [vec!["y1"], vec!["y1 + y2", "y1^2"], vec!["y2", "y2"]] {
            let x = elems(&a, &xs);
            let h = KoszulComplex::build(&a, &x).unwrap().homology().report();
            let r = check_small_n(&a, &x, &h).unwrap().unwrap();
            assert!(r.holds, "{xs:?}: {r:?}");
        }
    }
}
