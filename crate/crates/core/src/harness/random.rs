//! Seeded random instances.
//!
//! Draw order, all from one [`SplitMix64`] stream seeded with the instance seed:
//!
//! 1. `m` from `params.vars`, then `D` from `params.degree`, then `r` from
//!    `params.extra_gens`;
//! 2. for each of the `r` extra generators: `s` from `params.terms`, then for
//!    each term its degree in `[2, D−1]`, the index of a monomial of that
//!    degree (graded-lex order) and a coefficient in `[1, p−1]`. When `D = 2`
//!    the degree range is empty and this step draws nothing;
//! 3. `n` from `params.n`;
//! 4. for each of the `n` Koszul elements, one coefficient in `[0, p−1]` per
//!    positive-degree standard monomial of `A`, in basis order.
//!
//! Every range draw uses [`SplitMix64::range`], so a fixed range still
//! consumes one draw.

use serde::Serialize;

use crate::algebra::{AlgebraPresentation, LocalAlgebra};
use crate::linalg::PrimeField;
use crate::poly::{mono_enumerate, Monomial, TruncatedPoly};

use super::instance::{InstanceSpec, Provenance, PARSE_BOUND};
use super::rng::SplitMix64;

/// Inclusive ranges for each random choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneratorParams {
    pub field: u64,
    pub vars: (usize, usize),
    pub degree: (u32, u32),
    pub extra_gens: (usize, usize),
    pub terms: (usize, usize),
    pub n: (usize, usize),
}

impl GeneratorParams {
    /// `m ∈ [1, max_vars]`, `D ∈ [2, max_deg]`, `r ∈ [0, 3]`, `s ∈ [1, 3]`,
    /// `n ∈ [0, max_n]`.
    pub fn search(field: u64, max_vars: usize, max_deg: u32, max_n: usize) -> Self {
        Self {
            field,
            vars: (1, max_vars),
            degree: (2, max_deg),
            extra_gens: (0, 3),
            terms: (1, 3),
            n: (0, max_n),
        }
    }

    pub fn validate(&self) -> Result<PrimeField, String> {
        let field = PrimeField::new(self.field).map_err(|_| format!("modulus must be prime, got {}", self.field))?;
        let ordered = |name: &str, lo: u64, hi: u64, min: u64| {
            if lo > hi || lo < min {
                Err(format!("invalid {name} range [{lo}, {hi}]"))
            } else {
                Ok(())
            }
        };
        ordered("vars", self.vars.0 as u64, self.vars.1 as u64, 1)?;
        ordered("degree", self.degree.0 as u64, self.degree.1 as u64, 2)?;
        ordered("extra_gens", self.extra_gens.0 as u64, self.extra_gens.1 as u64, 0)?;
        ordered("terms", self.terms.0 as u64, self.terms.1 as u64, 1)?;
        ordered("n", self.n.0 as u64, self.n.1 as u64, 0)?;
        if self.degree.1 >= PARSE_BOUND - 1 {
            return Err(format!("degree {} is too large", self.degree.1));
        }
        Ok(field)
    }
}

fn draw(rng: &mut SplitMix64, (lo, hi): (usize, usize)) -> usize {
    rng.range(lo as u64, hi as u64) as usize
}

/// Panics if `params` fails [`GeneratorParams::validate`].
pub fn random_instance(seed: u64, params: &GeneratorParams) -> InstanceSpec {
    let field = params.validate().expect("valid generator parameters");
    let p = field.modulus() as u64;
    let mut rng = SplitMix64::new(seed);

    let m = draw(&mut rng, params.vars);
    let d = rng.range(params.degree.0 as u64, params.degree.1 as u64) as u32;
    let r = draw(&mut rng, params.extra_gens);

    let by_degree: Vec<Vec<Monomial>> = (0..=d)
        .map(|k| mono_enumerate(m, k).into_iter().filter(|mo| mo.degree() == k).collect())
        .collect();
    let mut gens: Vec<TruncatedPoly> = by_degree[d as usize]
        .iter()
        .map(|mo| TruncatedPoly::monomial(field, PARSE_BOUND, mo.clone(), 1))
        .collect();
    if d >= 3 {
        for _ in 0..r {
            let s = draw(&mut rng, params.terms);
            let mut g = TruncatedPoly::zero(field, m, PARSE_BOUND);
            for _ in 0..s {
                let k = rng.range(2, d as u64 - 1) as usize;
                let mo = &by_degree[k][rng.below(by_degree[k].len() as u64) as usize];
                let c = rng.range(1, p - 1) as u32;
                g.add_term(mo.clone(), c);
            }
            gens.push(g);
        }
    }

    let n = draw(&mut rng, params.n);
    let vars: Vec<String> = (1..=m).map(|i| format!("y{i}")).collect();
    let truncated: Vec<TruncatedPoly> = gens.iter().map(|g| g.with_bound(d + 1)).collect();
    let pres = AlgebraPresentation::new(field, vars.clone(), truncated, d)
        .expect("all degree-D monomials are generators");
    let algebra = LocalAlgebra::build(pres);
    let positive: Vec<Monomial> = algebra
        .basis_monomials()
        .into_iter()
        .filter(|mo| mo.degree() > 0)
        .cloned()
        .collect();
    let koszul = (0..n)
        .map(|_| {
            let terms: Vec<(Monomial, u32)> = positive
                .iter()
                .map(|mo| (mo.clone(), rng.below(p) as u32))
                .collect();
            TruncatedPoly::from_terms(field, m, PARSE_BOUND, terms)
        })
        .collect();

    InstanceSpec {
        field,
        vars,
        gens,
        bound: Some(d),
        koszul: Some(koszul),
        gens2: None,
        provenance: Provenance::Seed { seed },
    }
}

/// Per-instance seeds of a search: the first `count` outputs of the stream
/// seeded with `seed`.
pub fn instance_seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = SplitMix64::new(seed);
    (0..count).map(|_| rng.next_u64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::instance::parse_instance;
    use crate::invariants::cid_presentation;
    use crate::poly::mono_enumerate;

    #[test]
    fn same_seed_same_spec() {
        let params = GeneratorParams::search(101, 3, 5, 3);
        for seed in [0, 1, 42, u64::MAX] {
            assert_eq!(random_instance(seed, &params), random_instance(seed, &params));
        }
        assert_ne!(random_instance(1, &params), random_instance(2, &params));
    }

    #[test]
    fn pure_power_instances() {
        let mut params = GeneratorParams::search(3, 3, 5, 0);
        params.extra_gens = (0, 0);
        for seed in instance_seeds(9, 20) {
            let spec = random_instance(seed, &params);
            let m = spec.vars.len();
            let d = spec.bound.unwrap();
            let top = mono_enumerate(m, d).iter().filter(|mo| mo.degree() == d).count();
            assert_eq!(spec.gens.len(), top);
            let alg = LocalAlgebra::from_generators(spec.field, spec.vars.clone(), spec.gens.clone(), spec.bound, 12)
                .unwrap();
            assert_eq!(cid_presentation(alg.presentation()), top as i64 - m as i64);
            assert_eq!(spec.koszul.as_ref().unwrap().len(), 0);
        }
    }

    #[test]
    fn generated_specs_are_well_formed() {
        let params = GeneratorParams::search(2, 3, 5, 3);
        for seed in instance_seeds(5, 40) {
            let spec = random_instance(seed, &params);
            assert!(spec.gens.iter().all(|g| g.constant_term() == 0));
            for x in spec.koszul.as_ref().unwrap() {
                assert_eq!(x.constant_term(), 0);
            }
            let back = parse_instance(&spec.to_text(), spec.provenance.clone()).unwrap();
            assert_eq!(back, spec);
        }
    }

    #[test]
    fn validation() {
        assert!(GeneratorParams::search(4, 3, 5, 3).validate().is_err());
        assert!(GeneratorParams::search(5, 0, 5, 3).validate().is_err());
        assert!(GeneratorParams::search(5, 2, 1, 3).validate().is_err());
    }
}
