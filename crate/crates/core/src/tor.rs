//! `Tor_1(R/I, R/J)` for `m`-primary ideals of `R = k[[x_1..x_n]]`.
//!
//! Two independent routes:
//! - ideals: `(I ∩ J) / IJ`, computed in `R / m^E` with `m^E ⊆ IJ`;
//! - diagonal: `H_1(x_1 − x_1', …, x_n − x_n'; R/I ⊗_k R'/J')`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    ideal_intersect, ideal_product, ideal_span, tensor_product, verify_degree_bound,
    AlgebraError, AlgebraPresentation, LocalAlgebra, SubquotientModule,
};
use crate::koszul::{KoszulComplex, KoszulError};
use crate::linalg::PrimeField;
use crate::poly::{mono_enumerate, TruncatedPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorError {
    #[error("first ideal: {0}")]
    First(AlgebraError),
    #[error("second ideal: {0}")]
    Second(AlgebraError),
    #[error("m^{bound} is not contained in IJ")]
    ProductBoundNotCertified { bound: u32 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
}

/// Two `m`-primary ideals in the same variables, with certified bounds.
#[derive(Debug, Clone)]
pub struct TorInstance {
    first: AlgebraPresentation,
    second: AlgebraPresentation,
    product_bound: u32,
}

impl TorInstance {
    /// Certifies (or discovers, when `None`) each bound. The working
    /// truncation defaults to `D_I + D_J`; an override is checked against `IJ`.
    pub fn new(
        field: PrimeField,
        vars: Vec<String>,
        first: Vec<TruncatedPoly>,
        second: Vec<TruncatedPoly>,
        bounds: (Option<u32>, Option<u32>),
        product_bound: Option<u32>,
        d_max: u32,
    ) -> Result<Self, TorError> {
        let make = |gens: Vec<TruncatedPoly>, bound: Option<u32>| match bound {
            Some(d) => AlgebraPresentation::new(field, vars.clone(), gens, d),
            None => AlgebraPresentation::discover(field, vars.clone(), gens, d_max),
        };
        let first = make(first, bounds.0).map_err(TorError::First)?;
        let second = make(second, bounds.1).map_err(TorError::Second)?;
        let product_bound = match product_bound {
            None => first.bound() + second.bound(),
            Some(e) => {
                let bound = e.max(first.bound() + second.bound()) + 2;
                let products: Vec<TruncatedPoly> = first
                    .gens()
                    .iter()
                    .flat_map(|g| {
                        second.gens().iter().map(move |h| {
                            g.with_bound(bound).mul_trunc(&h.with_bound(bound)).expect("same ring")
                        })
                    })
                    .collect();
                if !verify_degree_bound(field, vars.len(), &products, e) {
                    return Err(TorError::ProductBoundNotCertified { bound: e });
                }
                e
            }
        };
        Ok(Self {
            first,
            second,
            product_bound,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.first.field()
    }
    pub fn vars(&self) -> &[String] {
        self.first.vars()
    }
    pub fn nvars(&self) -> usize {
        self.first.nvars()
    }
    pub fn first(&self) -> &AlgebraPresentation {
        &self.first
    }
    pub fn second(&self) -> &AlgebraPresentation {
        &self.second
    }
    pub fn product_bound(&self) -> u32 {
        self.product_bound
    }

    /// Same instance with the two ideals exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            first: self.second.clone(),
            second: self.first.clone(),
            product_bound: self.product_bound,
        }
    }
}

/// Length and minimal number of generators of one Tor computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TorSide {
    pub length: usize,
    pub nu: usize,
}

/// `R / m^E` as a local algebra.
fn truncated_ring(field: PrimeField, vars: &[String], e: u32) -> Result<LocalAlgebra, AlgebraError> {
    let n = vars.len();
    let top: Vec<TruncatedPoly> = mono_enumerate(n, e)
        .into_iter()
        .filter(|m| m.degree() == e)
        .map(|m| TruncatedPoly::monomial(field, e + 1, m, 1))
        .collect();
    let pres = AlgebraPresentation::new(field, vars.to_vec(), top, e)?;
    Ok(LocalAlgebra::build(pres))
}

pub fn tor_via_ideals(inst: &TorInstance) -> Result<TorSide, TorError> {
    let ring = truncated_ring(inst.field(), inst.vars(), inst.product_bound)?;
    let to_elements = |gens: &[TruncatedPoly]| -> Result<Vec<_>, AlgebraError> {
        gens.iter().map(|g| ring.element_from_poly(g)).collect()
    };
    let i = ideal_span(&ring, &to_elements(inst.first.gens())?)?;
    let j = ideal_span(&ring, &to_elements(inst.second.gens())?)?;
    let cap = ideal_intersect(&i, &j)?;
    let prod = ideal_product(&i, &j)?;
    let module = SubquotientModule::new(&ring, 1, cap.space().clone(), prod.space().clone())?;
    Ok(TorSide {
        length: module.length(),
        nu: module.nu(),
    })
}

pub fn tor_via_diagonal(inst: &TorInstance) -> Result<TorSide, TorError> {
    let left = LocalAlgebra::build(inst.first.clone());
    let right = LocalAlgebra::build(inst.second.clone());
    let b = tensor_product(&left, &right)?;
    let n = inst.nvars();
    let field = inst.field();
    let diagonal: Vec<_> = (0..n)
        .map(|i| {
            let x = TruncatedPoly::var(field, 2 * n, b.bound(), i);
            let x_primed = TruncatedPoly::var(field, 2 * n, b.bound(), n + i);
            b.element_from_poly(&x.sub(&x_primed).expect("same ring"))
        })
        .collect::<Result<_, _>>()?;
    let complex = KoszulComplex::build(&b, &diagonal)?;
    if n == 0 {
        return Ok(TorSide { length: 0, nu: 0 });
    }
    let h = complex.homology();
    Ok(TorSide {
        length: h.dim(1),
        nu: h.nu(1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Conjecture9Report {
    pub n: usize,
    pub nu: usize,
    pub slack: i64,
    pub met: bool,
}

/// `ν(Tor_1) ≥ n` for `m`-primary `I, J`. A report, never an assertion.
pub fn check_conjecture9(inst: &TorInstance) -> Result<Conjecture9Report, TorError> {
    let side = tor_via_ideals(inst)?;
    Ok(conjecture9_from(inst.nvars(), side.nu))
}

fn conjecture9_from(n: usize, nu: usize) -> Conjecture9Report {
    let slack = nu as i64 - n as i64;
    Conjecture9Report {
        n,
        nu,
        slack,
        met: slack >= 0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TorReport {
    pub len_ideal: usize,
    pub nu_ideal: usize,
    pub len_diag: usize,
    pub nu_diag: usize,
    pub agree: bool,
    pub c9_slack: i64,
}

impl TorReport {
    pub fn compute(inst: &TorInstance) -> Result<Self, TorError> {
        let ideal = tor_via_ideals(inst)?;
        let diag = tor_via_diagonal(inst)?;
        let c9 = conjecture9_from(inst.nvars(), ideal.nu);
        Ok(Self {
            len_ideal: ideal.length,
            nu_ideal: ideal.nu,
            len_diag: diag.length,
            nu_diag: diag.nu,
            agree: ideal == diag,
            c9_slack: c9.slack,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn inst(p: u64, names: &[&str], i: &[&str], j: &[&str]) -> TorInstance {
        let f = PrimeField::new(p).unwrap();
        let v: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let parse = |gs: &[&str]| gs.iter().map(|g| parse_poly(g, &v, f, 64).unwrap()).collect();
        TorInstance::new(f, v.clone(), parse(i), parse(j), (None, None), None, 12).unwrap()
    }

    #[test]
    fn ideal_route_examples() {
        let t = inst(101, &["x"], &["x^2"], &["x^3"]);
        assert_eq!(tor_via_ideals(&t).unwrap(), TorSide { length: 2, nu: 1 });
        let t = inst(101, &["x"], &["x^2"], &["x^2"]);
        assert_eq!(tor_via_ideals(&t).unwrap(), TorSide { length: 2, nu: 1 });
        let t = inst(101, &["x"], &["x"], &["x"]);
        assert_eq!(tor_via_ideals(&t).unwrap(), TorSide { length: 1, nu: 1 });
    }

    #[test]
    fn diagonal_route_examples() {
        let t = inst(101, &["x"], &["x^2"], &["x^3"]);
        let b = tensor_product(
            &LocalAlgebra::build(t.first().clone()),
            &LocalAlgebra::build(t.second().clone()),
        )
        .unwrap();
        assert_eq!(b.length(), 6);
        assert_eq!(tor_via_diagonal(&t).unwrap(), TorSide { length: 2, nu: 1 });
        let t = inst(101, &["x"], &["x"], &["x"]);
        assert_eq!(tor_via_diagonal(&t).unwrap().length, 1);
    }

    #[test]
    fn swap_symmetry() {
        let t = inst(7, &["y1", "y2"], &["y1^2", "y2"], &["y1", "y2^3"]);
        assert_eq!(TorReport::compute(&t).unwrap(), TorReport::compute(&t.swapped()).unwrap());
    }

    #[test]
    fn one_variable_length_matches_quotient() {
        for (a, b) in [(2, 3), (1, 4), (3, 3), (4, 2)] {
            let t = inst(5, &["x"], &[&format!("x^{a}")], &[&format!("x^{b}")]);
            let side = tor_via_diagonal(&t).unwrap();
            assert_eq!(side.length, a.min(b) as usize);
        }
    }

    #[test]
    fn product_bound_override_is_checked() {
        let f = PrimeField::new(101).unwrap();
        let v = vec!["x".to_string()];
        let g = |s: &str| vec![parse_poly(s, &v, f, 64).unwrap()];
        let err = TorInstance::new(f, v.clone(), g("x^2"), g("x^3"), (None, None), Some(4), 12);
        assert_eq!(err.unwrap_err(), TorError::ProductBoundNotCertified { bound: 4 });
        let ok = TorInstance::new(f, v.clone(), g("x^2"), g("x^3"), (None, None), Some(6), 12).unwrap();
        assert_eq!(ok.product_bound(), 6);
    }

    #[test]
    fn conjecture9_two_variables() {
        let t = inst(101, &["y1", "y2"], &["y1^2", "y1*y2", "y2^2"], &["y1^2", "y1*y2", "y2^2"]);
        let r = check_conjecture9(&t).unwrap();
        assert_eq!(r.nu, 3);
        assert!(r.met);
    }
}
