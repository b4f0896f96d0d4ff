//! Koszul complexes `K(x_1..x_n; A)` over a [`LocalAlgebra`].
//!
//! `K_i` is free of rank `C(n,i)` on basis `e_S`, `S` a sorted `i`-subset of
//! `{1..n}` in lexicographic order, and
//! `d(e_S) = Σ_t (−1)^{t−1} x_{j_t} e_{S∖{j_t}}` for `S = {j_1 < … < j_i}`.
//! Every differential is expanded to a k-linear matrix of size
//! `C(n,i−1)·ℓ × C(n,i)·ℓ`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, LocalAlgebra, SubquotientModule};
use crate::linalg::{image_basis, kernel_basis, FieldElement, FieldMatrix, PrimeField, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KoszulError {
    #[error("Koszul element {index} is not in the maximal ideal")]
    NotInMaximalIdeal { index: usize },
    #[error("Koszul element {index} has {found} coordinates, expected {expected}")]
    WrongLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("change-of-basis matrix must be invertible and {expected}x{expected}")]
    SingularTransform { expected: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Sorted `size`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            if n - j < size - cur.len() {
                break;
            }
            cur.push(j);
            go(j + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        go(0, n, size, &mut Vec::new(), &mut out);
    }
    out
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub struct KoszulComplex<'a> {
    algebra: &'a LocalAlgebra,
    elements: Vec<Vec<FieldElement>>,
    subsets: Vec<Vec<Vec<usize>>>,
    /// `diffs[i - 1]` is `d_i : K_i → K_{i-1}`.
    diffs: Vec<FieldMatrix>,
}

impl<'a> KoszulComplex<'a> {
    pub fn build(algebra: &'a LocalAlgebra, elements: &[Vec<FieldElement>]) -> Result<Self, KoszulError> {
        let len = algebra.length();
        for (index, x) in elements.iter().enumerate() {
            if x.len() != len {
                return Err(KoszulError::WrongLength {
                    index,
                    expected: len,
                    found: x.len(),
                });
            }
            if !algebra.is_in_max_ideal(x) {
                return Err(KoszulError::NotInMaximalIdeal { index });
            }
        }
        let n = elements.len();
        let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|i| subsets(n, i)).collect();
        let ops: Vec<FieldMatrix> = elements.iter().map(|x| algebra.mul_op(x)).collect();
        let field = algebra.field();

        let mut diffs = Vec::with_capacity(n);
        for i in 1..=n {
            let lower: HashMap<&[usize], usize> = subsets[i - 1]
                .iter()
                .enumerate()
                .map(|(k, s)| (s.as_slice(), k))
                .collect();
            let mut d = FieldMatrix::zeros(field, subsets[i - 1].len() * len, subsets[i].len() * len);
            for (col, s) in subsets[i].iter().enumerate() {
                for (t, &j) in s.iter().enumerate() {
                    let face: Vec<usize> = s.iter().copied().filter(|&v| v != j).collect();
                    let row = lower[face.as_slice()];
                    let sign = if t % 2 == 0 { 1 } else { field.neg(1) };
                    let op = &ops[j];
                    for r in 0..len {
                        for c in 0..len {
                            let v = op.get(r, c);
                            if v != 0 {
                                let (rr, cc) = (row * len + r, col * len + c);
                                d.set(rr, cc, field.add(d.get(rr, cc), field.mul(sign, v)));
                            }
                        }
                    }
                }
            }
            diffs.push(d);
        }
        Ok(Self {
            algebra,
            elements: elements.to_vec(),
            subsets,
            diffs,
        })
    }

    pub fn algebra(&self) -> &'a LocalAlgebra {
        self.algebra
    }
    pub fn elements(&self) -> &[Vec<FieldElement>] {
        &self.elements
    }
    pub fn n(&self) -> usize {
        self.elements.len()
    }
    /// Free rank of `K_i`.
    pub fn rank(&self, i: usize) -> usize {
        self.subsets.get(i).map_or(0, Vec::len)
    }
    pub fn basis_subsets(&self, i: usize) -> &[Vec<usize>] {
        &self.subsets[i]
    }
    /// `d_i`, for `1 <= i <= n`.
    pub fn differential(&self, i: usize) -> Option<&FieldMatrix> {
        if i == 0 {
            None
        } else {
            self.diffs.get(i - 1)
        }
    }

    /// `d_i ∘ d_{i+1} = 0` for every `i`, checked as exact matrix products.
    pub fn dd_zero(&self) -> bool {
        self.diffs
            .windows(2)
            .all(|w| w[0].mul(&w[1]).expect("composable").is_zero())
    }

    /// Adds 1 to one entry of the top differential. Exists so the harness can
    /// demonstrate that a broken complex is caught.
    pub fn corrupt_differential(&mut self) {
        if let Some(d) = self.diffs.last_mut() {
            if d.rows() > 0 && d.cols() > 0 {
                let f = d.field();
                let v = d.get(0, 0);
                d.set(0, 0, f.add(v, 1));
            }
        }
    }

    pub fn cycles(&self, i: usize) -> Subspace {
        let dim = self.rank(i) * self.algebra.length();
        match self.differential(i) {
            Some(d) => kernel_basis(d),
            None => Subspace::full(self.algebra.field(), dim),
        }
    }

    pub fn boundaries(&self, i: usize) -> Subspace {
        let dim = self.rank(i) * self.algebra.length();
        match self.differential(i + 1) {
            Some(d) => image_basis(d),
            None => Subspace::zero(self.algebra.field(), dim),
        }
    }

    pub fn homology(&self) -> KoszulHomology<'_, 'a> {
        KoszulHomology::compute(self)
    }
}

/// Cycle and boundary spaces of every degree, computed once.
pub struct KoszulHomology<'c, 'a> {
    complex: &'c KoszulComplex<'a>,
    cycles: Vec<Subspace>,
    boundaries: Vec<Subspace>,
}

impl<'c, 'a> KoszulHomology<'c, 'a> {
    pub fn compute(complex: &'c KoszulComplex<'a>) -> Self {
        let n = complex.n();
        Self {
            complex,
            cycles: (0..=n).map(|i| complex.cycles(i)).collect(),
            boundaries: (0..=n).map(|i| complex.boundaries(i)).collect(),
        }
    }

    /// `H_i` as a subquotient of `A^{C(n,i)}`. Cycles are not validated to
    /// contain boundaries, so a corrupted complex still yields a module.
    pub fn module(&self, i: usize) -> SubquotientModule<'a> {
        let mut z = self.cycles[i].clone();
        for b in self.boundaries[i].basis() {
            z.insert(b.clone());
        }
        SubquotientModule::trusted(self.complex.algebra, self.complex.rank(i), z, self.boundaries[i].clone())
    }

    pub fn dim(&self, i: usize) -> usize {
        self.module(i).length()
    }

    pub fn nu(&self, i: usize) -> usize {
        self.module(i).nu()
    }

    pub fn report(&self) -> HomologyReport {
        let n = self.complex.n();
        let dims: Vec<usize> = (0..=n).map(|i| self.dim(i)).collect();
        let nus: Vec<usize> = (0..=n).map(|i| self.nu(i)).collect();
        HomologyReport::new(dims, nus)
    }

    /// Each `x_j` maps `Z_i` into `B_i`.
    pub fn killed_by_elements(&self) -> bool {
        let a = self.complex.algebra;
        self.complex.elements.iter().all(|x| {
            let op = a.mul_op(x);
            (0..=self.complex.n()).all(|i| {
                let r = self.complex.rank(i);
                self.cycles[i]
                    .basis()
                    .iter()
                    .all(|z| self.boundaries[i].contains(&a.act_blockwise(&op, z, r)))
            })
        })
    }

    /// Multiplication by each basis element of `A` preserves cycles and
    /// boundaries, so it induces multiplication on every `H_i`.
    pub fn action_is_induced(&self) -> bool {
        let a = self.complex.algebra;
        (0..a.length()).all(|k| {
            let op = a.mult_op(k);
            (0..=self.complex.n()).all(|i| {
                let r = self.complex.rank(i);
                let preserves = |s: &Subspace| s.basis().iter().all(|v| s.contains(&a.act_blockwise(op, v, r)));
                preserves(&self.cycles[i]) && preserves(&self.boundaries[i])
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    /// `dim_k H_i = ℓ(H_i)`.
    pub dims: Vec<usize>,
    /// `ν(H_i)`.
    pub nus: Vec<usize>,
    pub euler: i64,
}

impl HomologyReport {
    pub fn new(dims: Vec<usize>, nus: Vec<usize>) -> Self {
        let euler = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        Self { dims, nus, euler }
    }

    pub fn n(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn nu_h1(&self) -> Option<usize> {
        self.nus.get(1).copied()
    }

    pub fn dim_h1(&self) -> Option<usize> {
        self.dims.get(1).copied()
    }
}

pub fn build_complex<'a>(
    algebra: &'a LocalAlgebra,
    elements: &[Vec<FieldElement>],
) -> Result<KoszulComplex<'a>, KoszulError> {
    KoszulComplex::build(algebra, elements)
}

pub fn homology(complex: &KoszulComplex<'_>) -> HomologyReport {
    complex.homology().report()
}

/// `χ = Σ (−1)^i ℓ(H_i)`.
pub fn euler_characteristic(complex: &KoszulComplex<'_>) -> i64 {
    let h = complex.homology();
    (0..=complex.n())
        .map(|i| if i % 2 == 0 { h.dim(i) as i64 } else { -(h.dim(i) as i64) })
        .sum()
}

/// `ν(H_1(x; A))`. With no elements `H_1 = 0`.
pub fn nu_h1(algebra: &LocalAlgebra, elements: &[Vec<FieldElement>]) -> Result<usize, KoszulError> {
    let c = KoszulComplex::build(algebra, elements)?;
    if c.n() == 0 {
        return Ok(0);
    }
    Ok(c.homology().nu(1))
}

/// `x' = L·x`, i.e. `x'_i = Σ_j L_ij x_j`. `L` must be invertible.
pub fn transform_basis(
    field: PrimeField,
    elements: &[Vec<FieldElement>],
    transform: &FieldMatrix,
) -> Result<Vec<Vec<FieldElement>>, KoszulError> {
    let n = elements.len();
    if transform.rows() != n || transform.cols() != n || transform.rank() != n {
        return Err(KoszulError::SingularTransform { expected: n });
    }
    let len = elements.first().map_or(0, Vec::len);
    Ok((0..n)
        .map(|i| {
            let mut v = vec![0; len];
            for (j, x) in elements.iter().enumerate() {
                field.axpy(&mut v, transform.get(i, j), x);
            }
            v
        })
        .collect())
}

/// `(x_1..x_n, 0)`.
pub fn append_zero(algebra: &LocalAlgebra, elements: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let mut out = elements.to_vec();
    out.push(algebra.zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::annihilator;
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

    fn report(a: &LocalAlgebra, xs: &[&str]) -> HomologyReport {
        homology(&build_complex(a, &elems(a, xs)).unwrap())
    }

    #[test]
    fn subset_order() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
        for n in 0..6 {
            for i in 0..=n {
                assert_eq!(subsets(n, i).len(), binomial(n, i));
            }
        }
    }

    #[test]
    fn n1_differential_is_multiplication() {
        let a = alg(101, &["y"], &["y^3"]);
        let x = elems(&a, &["y"]);
        let c = build_complex(&a, &x).unwrap();
        assert_eq!(c.differential(1).unwrap(), &a.mul_op(&x[0]));
    }

    #[test]
    fn n2_and_n3_sign_pattern() {
        // Over k itself every x is 0, so use A = k[y1,y2,y3]/m^2 and read off
        // the blocks acting on 1 (column 0 of each block).
        let a = alg(101, &["y1", "y2", "y3"], &["y1^2", "y1*y2", "y1*y3", "y2^2", "y2*y3", "y3^2"]);
        let xs = elems(&a, &["y1", "y2", "y3"]);
        let len = a.length();
        let f = a.field();
        let block_at_one = |d: &FieldMatrix, row: usize, col: usize| -> Vec<FieldElement> {
            (0..len).map(|r| d.get(row * len + r, col * len)).collect()
        };
        let neg = |v: &Vec<FieldElement>| v.iter().map(|&c| f.neg(c)).collect::<Vec<_>>();

        let c2 = build_complex(&a, &xs[..2]).unwrap();
        let d2 = c2.differential(2).unwrap();
        assert_eq!(block_at_one(d2, 0, 0), neg(&xs[1]));
        assert_eq!(block_at_one(d2, 1, 0), xs[0]);
        let d1 = c2.differential(1).unwrap();
        assert_eq!(block_at_one(d1, 0, 0), xs[0]);
        assert_eq!(block_at_one(d1, 0, 1), xs[1]);

        let c3 = build_complex(&a, &xs).unwrap();
        let d2 = c3.differential(2).unwrap();
        let zero = a.zero();
        // columns {1,2}, {1,3}, {2,3}; rows {1}, {2}, {3}
        let expected = [
            [neg(&xs[1]), xs[0].clone(), zero.clone()],
            [neg(&xs[2]), zero.clone(), xs[0].clone()],
            [zero.clone(), neg(&xs[2]), xs[1].clone()],
        ];
        for (col, rows) in expected.iter().enumerate() {
            for (row, v) in rows.iter().enumerate() {
                assert_eq!(&block_at_one(d2, row, col), v, "column {col} row {row}");
            }
        }
        assert!(c3.dd_zero());
    }

    #[test]
    fn rejects_units() {
        let a = alg(101, &["y"], &["y^3"]);
        let x = elems(&a, &["1 + y"]);
        assert_eq!(
            build_complex(&a, &x).err(),
            Some(KoszulError::NotInMaximalIdeal { index: 0 })
        );
    }

    #[test]
    fn homology_examples() {
        let a = alg(101, &["y"], &["y^3"]);
        let r = report(&a, &["y"]);
        assert_eq!(r.dims, vec![1, 1]);
        let ann = annihilator(&a, &elems(&a, &["y"])).unwrap();
        assert_eq!(ann.dim(), 1);

        let k = alg(101, &[], &[]);
        let r = homology(&build_complex(&k, &[k.zero(), k.zero()]).unwrap());
        assert_eq!(r.dims, vec![1, 2, 1]);

        let a = alg(101, &["y"], &["y^2"]);
        let xs = elems(&a, &["y", "y"]);
        let c = build_complex(&a, &xs).unwrap();
        let h = c.homology();
        assert_eq!(h.dim(1), 2);
        assert_eq!(c.cycles(1).dim(), 3);
        assert_eq!(c.boundaries(1).dim(), 1);
        assert_eq!(h.nu(1), 2);
    }

    #[test]
    fn nu_h1_examples() {
        let a = alg(101, &["y1", "y2"], &["y1^2", "y1*y2", "y2^2"]);
        assert_eq!(nu_h1(&a, &elems(&a, &["y1", "y2"])).unwrap(), 3);
        assert_eq!(nu_h1(&a, &elems(&a, &["y1"])).unwrap(), 2);
        let k = alg(101, &[], &[]);
        assert_eq!(nu_h1(&k, &[k.zero()]).unwrap(), 1);
    }

    #[test]
    fn euler_examples() {
        let a = alg(101, &["y"], &["y^2"]);
        let c = build_complex(&a, &elems(&a, &["y", "y"])).unwrap();
        let r = homology(&c);
        assert_eq!(r.dims, vec![1, 2, 1]);
        assert_eq!(r.euler, 0);
        assert_eq!(euler_characteristic(&c), 0);

        let b = alg(7, &["y1", "y2"], &["y1^3", "y2^2"]);
        let x = elems(&b, &["y1 + y2"]);
        let c = build_complex(&b, &x).unwrap();
        let h = c.homology();
        let ax = crate::algebra::ideal_span(&b, &x).unwrap();
        assert_eq!(h.dim(0), b.length() - ax.dim());
        assert_eq!(h.dim(1), annihilator(&b, &x).unwrap().dim());
        assert_eq!(euler_characteristic(&c), 0);
    }

    #[test]
    fn transform_examples() {
        let a = alg(101, &["y"], &["y^2"]);
        let f = a.field();
        let xs = elems(&a, &["y", "y"]);
        let id = FieldMatrix::identity(f, 2);
        assert_eq!(transform_basis(f, &xs, &id).unwrap(), xs);

        let l = FieldMatrix::from_rows(f, &[[1, 0], [-1, 1]]);
        let ys = transform_basis(f, &xs, &l).unwrap();
        assert_eq!(ys, vec![xs[0].clone(), a.zero()]);
        assert_eq!(report(&a, &["y", "y"]).dims, homology(&build_complex(&a, &ys).unwrap()).dims);

        let singular = FieldMatrix::from_rows(f, &[[1, 1], [1, 1]]);
        assert_eq!(
            transform_basis(f, &xs, &singular).unwrap_err(),
            KoszulError::SingularTransform { expected: 2 }
        );
    }

    #[test]
    fn append_zero_examples() {
        let a = alg(101, &["y"], &["y^2"]);
        let xs = elems(&a, &["y"]);
        let r = homology(&build_complex(&a, &append_zero(&a, &xs)).unwrap());
        assert_eq!(r.dims[1], 2);

        let r = homology(&build_complex(&a, &append_zero(&a, &[])).unwrap());
        assert_eq!(r.dims[1], a.length());

        let b = alg(101, &["y1", "y2"], &["y1^2", "y1*y2", "y2^2"]);
        let xs = elems(&b, &["y1"]);
        let r = homology(&build_complex(&b, &append_zero(&b, &xs)).unwrap());
        assert_eq!(r.dims[1], 4);
    }

    #[test]
    fn corrupted_complex_fails_dd() {
        let a = alg(101, &["y"], &["y^3"]);
        let mut c = build_complex(&a, &elems(&a, &["y", "y^2"])).unwrap();
        assert!(c.dd_zero());
        c.corrupt_differential();
        assert!(!c.dd_zero());
    }

    #[test]
    fn prop7_and_functoriality() {
        let a = alg(5, &["y1", "y2"], &["y1^3", "y2^2", "y1*y2"]);
        let c = build_complex(&a, &elems(&a, &["y1", "y1^2 + y2", "3*y2"])).unwrap();
        let h = c.homology();
        assert!(h.killed_by_elements());
        assert!(h.action_is_induced());
    }
}
