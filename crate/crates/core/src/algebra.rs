//! Artinian local algebras `A = k[[Y]] / I` built by linear algebra in `P / m^D`.
//!
//! Once `m^D ⊆ I` is certified the quotient is finite dimensional and equals
//! `P_{<D} / V`, where `V` is the span of all truncated multiples of the
//! generators. The standard monomials (non-pivot columns of the echelonized
//! `V`) form the k-basis of `A`; elements are coordinate vectors over it.

use std::fmt;

use thiserror::Error;

use crate::linalg::{
    kernel_basis, subspace_intersect, FieldElement, FieldMatrix, LinalgError, PrimeField,
    Subspace,
};
use crate::poly::{Monomial, MonomialIndex, PolyError, TruncatedPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("generator {index} has a nonzero constant term; ideals must lie in the maximal ideal")]
    ConstantTerm { index: usize },
    #[error("degree bound must be at least 1")]
    ZeroBound,
    #[error("m^{bound} is not contained in the ideal")]
    BoundNotCertified { bound: u32 },
    #[error("not certified Artinian within degree bound {d_max}")]
    NotArtinian { d_max: u32 },
    #[error("element {index} is not in the maximal ideal")]
    NotInMaximalIdeal { index: usize },
    #[error("expected {expected} coordinates, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("ideals belong to different algebras")]
    ParentMismatch,
    #[error("submodule is not closed under the algebra action")]
    NotClosed,
    #[error("boundaries are not contained in cycles")]
    BoundariesNotInCycles,
    #[error("representative {index} does not reduce to its element")]
    InconsistentRepresentative { index: usize },
    #[error("lifted presentation is not isomorphic to the source algebra: {0}")]
    LiftMismatch(String),
}

/// A finite presentation `k[[Y_1..Y_m]] / (g_1..g_s)` with a certified bound
/// `D` such that `m^D ⊆ (g)`.
///
/// Generators are stored as exact polynomials; truncating them at any degree
/// above `D` generates the same ideal.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    field: PrimeField,
    vars: Vec<String>,
    gens: Vec<TruncatedPoly>,
    bound: u32,
}

impl fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.fmt_with(&self.vars)).collect();
        f.debug_struct("AlgebraPresentation")
            .field("p", &self.field.modulus())
            .field("vars", &self.vars)
            .field("gens", &gens)
            .field("bound", &self.bound)
            .finish()
    }
}

impl AlgebraPresentation {
    /// Validates generators and checks `m^bound ⊆ I`.
    pub fn new(
        field: PrimeField,
        vars: Vec<String>,
        gens: Vec<TruncatedPoly>,
        bound: u32,
    ) -> Result<Self, AlgebraError> {
        check_generators(field, vars.len(), &gens)?;
        if bound == 0 {
            return Err(AlgebraError::ZeroBound);
        }
        if !verify_degree_bound(field, vars.len(), &gens, bound) {
            return Err(AlgebraError::BoundNotCertified { bound });
        }
        Ok(Self {
            field,
            vars,
            gens,
            bound,
        })
    }

    /// Like [`new`](Self::new) but searches for the smallest certified bound.
    pub fn discover(
        field: PrimeField,
        vars: Vec<String>,
        gens: Vec<TruncatedPoly>,
        d_max: u32,
    ) -> Result<Self, AlgebraError> {
        check_generators(field, vars.len(), &gens)?;
        let bound = find_degree_bound(field, vars.len(), &gens, d_max)
            .ok_or(AlgebraError::NotArtinian { d_max })?;
        Ok(Self {
            field,
            vars,
            gens,
            bound,
        })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn vars(&self) -> &[String] {
        &self.vars
    }
    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
    #[inline]
    pub fn gens(&self) -> &[TruncatedPoly] {
        &self.gens
    }
    #[inline]
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn gens_text(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.fmt_with(&self.vars)).collect()
    }

    /// Minimal number of generators of `I` as an ideal of `k[[Y]]`, computed
    /// at truncation `D + 1` where `m^{D+1} ⊆ m·I`.
    pub fn nu_ideal(&self) -> usize {
        nu_of_ideal(self.field, self.nvars(), &self.gens, self.bound)
    }
}

fn check_generators(
    field: PrimeField,
    nvars: usize,
    gens: &[TruncatedPoly],
) -> Result<(), AlgebraError> {
    for (index, g) in gens.iter().enumerate() {
        if g.field() != field {
            return Err(PolyError::FieldMismatch(g.field().modulus(), field.modulus()).into());
        }
        if g.nvars() != nvars {
            return Err(PolyError::VariableMismatch(g.nvars(), nvars).into());
        }
        if g.constant_term() != 0 {
            return Err(AlgebraError::ConstantTerm { index });
        }
    }
    Ok(())
}

/// The ideal `(gens)` inside `P / m^bound`, as a subspace of monomial
/// coordinates.
pub fn ideal_in_truncation(
    field: PrimeField,
    nvars: usize,
    gens: &[TruncatedPoly],
    bound: u32,
) -> (MonomialIndex, Subspace) {
    let index = MonomialIndex::new(nvars, bound);
    let seeds: Vec<Vec<FieldElement>> = gens
        .iter()
        .map(|g| g.with_bound(bound).to_vector(&index))
        .collect();
    let space = Subspace::closure(field, index.len(), seeds, nvars, |j, v| index.shift(j, v));
    (index, space)
}

/// Decides `m^D ⊆ (gens)` in `k[[Y]]`: by Nakayama it suffices that every
/// monomial of degree exactly `D` lies in the ideal modulo `m^{D+1}`.
pub fn verify_degree_bound(
    field: PrimeField,
    nvars: usize,
    gens: &[TruncatedPoly],
    bound: u32,
) -> bool {
    if bound == 0 {
        return false;
    }
    let (index, ideal) = ideal_in_truncation(field, nvars, gens, bound + 1);
    index.degree_range(bound).all(|i| {
        let mut e = vec![0; index.len()];
        e[i] = 1;
        ideal.contains(&e)
    })
}

/// Smallest `D <= d_max` with `m^D ⊆ (gens)`.
pub fn find_degree_bound(
    field: PrimeField,
    nvars: usize,
    gens: &[TruncatedPoly],
    d_max: u32,
) -> Option<u32> {
    (1..=d_max).find(|&d| verify_degree_bound(field, nvars, gens, d))
}

/// `ν(I) = dim I/mI`, evaluated in `P / m^{D+1}`. Requires `m^D ⊆ I`.
pub fn nu_of_ideal(field: PrimeField, nvars: usize, gens: &[TruncatedPoly], bound: u32) -> usize {
    let (index, ideal) = ideal_in_truncation(field, nvars, gens, bound + 1);
    let mut m_ideal = Subspace::zero(field, index.len());
    for v in ideal.basis() {
        for j in 0..nvars {
            m_ideal.insert(index.shift(j, v));
        }
    }
    ideal.dim() - m_ideal.dim()
}

/// A finite-dimensional local algebra with its standard-monomial basis.
pub struct LocalAlgebra {
    presentation: AlgebraPresentation,
    index: MonomialIndex,
    relations: Subspace,
    basis: Vec<usize>,
    normal_forms: Vec<Vec<FieldElement>>,
    products: Vec<Vec<Option<usize>>>,
    mult_ops: Vec<FieldMatrix>,
    max_ideal_gens: Vec<usize>,
    max_ideal_sq: Subspace,
}

impl fmt::Debug for LocalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LocalAlgebra")
            .field("presentation", &self.presentation)
            .field("basis", &self.basis_text())
            .finish()
    }
}

impl LocalAlgebra {
    pub fn build(presentation: AlgebraPresentation) -> Self {
        let field = presentation.field;
        let nvars = presentation.nvars();
        let (index, relations) =
            ideal_in_truncation(field, nvars, &presentation.gens, presentation.bound);
        let basis = relations.non_pivots();
        let len = basis.len();
        debug_assert_eq!(basis.first(), Some(&0), "1 must be a standard monomial");

        let mut basis_pos = vec![usize::MAX; index.len()];
        for (k, &i) in basis.iter().enumerate() {
            basis_pos[i] = k;
        }
        let mut normal_forms = vec![Vec::new(); index.len()];
        for (k, &i) in basis.iter().enumerate() {
            let mut e = vec![0; len];
            e[k] = 1;
            normal_forms[i] = e;
        }
        for (row, &pc) in relations.basis().iter().zip(relations.pivots()) {
            // monomial = (monomial - row) + row with row ∈ V.
            let nf = basis.iter().map(|&c| field.neg(row[c])).collect();
            normal_forms[pc] = nf;
        }

        let products: Vec<Vec<Option<usize>>> = basis
            .iter()
            .map(|&i| {
                basis
                    .iter()
                    .map(|&j| index.times_monomial(i, index.monomial(j)))
                    .collect()
            })
            .collect();

        let mult_ops = (0..len)
            .map(|a| {
                let mut m = FieldMatrix::zeros(field, len, len);
                for b in 0..len {
                    if let Some(t) = products[a][b] {
                        for (r, &v) in normal_forms[t].iter().enumerate() {
                            m.set(r, b, v);
                        }
                    }
                }
                m
            })
            .collect::<Vec<_>>();

        let mut max_ideal_sq = Subspace::zero(field, len);
        for a in 1..len {
            for b in a..len {
                if let Some(t) = products[a][b] {
                    max_ideal_sq.insert(normal_forms[t].clone());
                }
            }
        }
        let mut span = max_ideal_sq.clone();
        let mut max_ideal_gens = Vec::new();
        for a in 1..len {
            let mut e = vec![0; len];
            e[a] = 1;
            if span.insert(e).is_some() {
                max_ideal_gens.push(a);
            }
        }

        Self {
            presentation,
            index,
            relations,
            basis,
            normal_forms,
            products,
            mult_ops,
            max_ideal_gens,
            max_ideal_sq,
        }
    }

    /// Certifies the bound (or discovers it) and builds the algebra.
    pub fn from_generators(
        field: PrimeField,
        vars: Vec<String>,
        gens: Vec<TruncatedPoly>,
        bound: Option<u32>,
        d_max: u32,
    ) -> Result<Self, AlgebraError> {
        let pres = match bound {
            Some(d) => AlgebraPresentation::new(field, vars, gens, d)?,
            None => AlgebraPresentation::discover(field, vars, gens, d_max)?,
        };
        Ok(Self::build(pres))
    }

    #[inline]
    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }
    #[inline]
    pub fn field(&self) -> PrimeField {
        self.presentation.field
    }
    #[inline]
    pub fn nvars(&self) -> usize {
        self.presentation.nvars()
    }
    #[inline]
    pub fn bound(&self) -> u32 {
        self.presentation.bound
    }
    /// `ℓ(A) = dim_k A`.
    #[inline]
    pub fn length(&self) -> usize {
        self.basis.len()
    }
    /// Dimension of the relation space `V` inside `P_{<D}`.
    pub fn relation_dim(&self) -> usize {
        self.relations.dim()
    }
    pub fn ambient_dim(&self) -> usize {
        self.index.len()
    }
    /// `dim_k m/m^2`.
    #[inline]
    pub fn embdim(&self) -> usize {
        self.max_ideal_gens.len()
    }

    pub fn basis_monomials(&self) -> Vec<&Monomial> {
        self.basis.iter().map(|&i| self.index.monomial(i)).collect()
    }

    pub fn basis_text(&self) -> Vec<String> {
        self.basis_monomials()
            .iter()
            .map(|m| m.fmt_with(&self.presentation.vars))
            .collect()
    }

    pub fn mult_op(&self, basis_elem: usize) -> &FieldMatrix {
        &self.mult_ops[basis_elem]
    }

    pub fn unit_vector(&self, k: usize) -> Vec<FieldElement> {
        let mut e = vec![0; self.length()];
        e[k] = 1;
        e
    }

    pub fn one(&self) -> Vec<FieldElement> {
        self.unit_vector(0)
    }

    pub fn zero(&self) -> Vec<FieldElement> {
        vec![0; self.length()]
    }

    /// Minimal generators of the maximal ideal, as standard-monomial elements.
    pub fn max_ideal_generators(&self) -> Vec<Vec<FieldElement>> {
        self.max_ideal_gens.iter().map(|&k| self.unit_vector(k)).collect()
    }

    pub fn max_ideal_square(&self) -> &Subspace {
        &self.max_ideal_sq
    }

    pub fn max_ideal(&self) -> Subspace {
        Subspace::from_vectors(self.field(), self.length(), (1..self.length()).map(|k| self.unit_vector(k)))
    }

    #[inline]
    pub fn is_in_max_ideal(&self, a: &[FieldElement]) -> bool {
        a[0] == 0
    }

    fn check_len(&self, a: &[FieldElement]) -> Result<(), AlgebraError> {
        if a.len() != self.length() {
            return Err(AlgebraError::WrongLength {
                expected: self.length(),
                found: a.len(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.field();
        let mut out = self.zero();
        for (i, &ai) in a.iter().enumerate().filter(|(_, &c)| c != 0) {
            for (j, &bj) in b.iter().enumerate().filter(|(_, &c)| c != 0) {
                if let Some(t) = self.products[i][j] {
                    f.axpy(&mut out, f.mul(ai, bj), &self.normal_forms[t]);
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `a`.
    pub fn mul_op(&self, a: &[FieldElement]) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(self.field(), self.length(), self.length());
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                m.add_scaled(c, &self.mult_ops[i]);
            }
        }
        m
    }

    /// Normal form of a polynomial, read modulo `m^D`.
    pub fn element_from_poly(&self, f: &TruncatedPoly) -> Result<Vec<FieldElement>, AlgebraError> {
        if f.field() != self.field() {
            return Err(PolyError::FieldMismatch(f.field().modulus(), self.field().modulus()).into());
        }
        if f.nvars() != self.nvars() {
            return Err(PolyError::VariableMismatch(f.nvars(), self.nvars()).into());
        }
        let field = self.field();
        let mut out = self.zero();
        for (m, c) in f.terms() {
            if let Some(i) = self.index.position(m) {
                field.axpy(&mut out, c, &self.normal_forms[i]);
            }
        }
        Ok(out)
    }

    /// The representative `Σ a_k b_k` in standard monomials, with bound `D`.
    pub fn element_to_poly(&self, a: &[FieldElement]) -> TruncatedPoly {
        TruncatedPoly::from_terms(
            self.field(),
            self.nvars(),
            self.bound(),
            a.iter()
                .zip(&self.basis)
                .filter(|(&c, _)| c != 0)
                .map(|(&c, &i)| (self.index.monomial(i).clone(), c)),
        )
    }

    pub fn format_element(&self, a: &[FieldElement]) -> String {
        self.element_to_poly(a).fmt_with(&self.presentation.vars)
    }

    /// Normal form of a monomial of arbitrary degree.
    pub fn monomial_element(&self, m: &Monomial) -> Vec<FieldElement> {
        match self.index.position(m) {
            Some(i) => self.normal_forms[i].clone(),
            None => self.zero(),
        }
    }

    /// Applies multiplication by `op` to each of the `rank` blocks of `v`.
    pub fn act_blockwise(&self, op: &FieldMatrix, v: &[FieldElement], rank: usize) -> Vec<FieldElement> {
        let len = self.length();
        debug_assert_eq!(v.len(), rank * len);
        let mut out = Vec::with_capacity(v.len());
        for block in v.chunks(len) {
            out.extend(op.mul_vec(block));
        }
        out
    }

    /// Checks that a subspace of `A^rank` is an `A`-submodule.
    pub fn is_submodule(&self, s: &Subspace, rank: usize) -> bool {
        self.max_ideal_gens.iter().all(|&g| {
            let op = &self.mult_ops[g];
            s.basis()
                .iter()
                .all(|v| s.contains(&self.act_blockwise(op, v, rank)))
        })
    }

    /// `m·S` for a submodule `S ⊆ A^rank`.
    pub fn max_ideal_times(&self, s: &Subspace, rank: usize) -> Subspace {
        let mut out = Subspace::zero(self.field(), s.ambient_dim());
        for &g in &self.max_ideal_gens {
            let op = &self.mult_ops[g];
            for v in s.basis() {
                out.insert(self.act_blockwise(op, v, rank));
            }
        }
        out
    }

    /// Submodule of `A^rank` generated by the given vectors.
    pub fn submodule_span<I>(&self, rank: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = Vec<FieldElement>>,
    {
        let gens = &self.max_ideal_gens;
        Subspace::closure(self.field(), rank * self.length(), vectors, gens.len(), |k, v| {
            self.act_blockwise(&self.mult_ops[gens[k]], v, rank)
        })
    }
}

/// `Z / B` with `B ⊆ Z ⊆ A^rank`, both `A`-submodules.
pub struct SubquotientModule<'a> {
    algebra: &'a LocalAlgebra,
    rank: usize,
    cycles: Subspace,
    boundaries: Subspace,
}

impl<'a> SubquotientModule<'a> {
    pub fn new(
        algebra: &'a LocalAlgebra,
        rank: usize,
        cycles: Subspace,
        boundaries: Subspace,
    ) -> Result<Self, AlgebraError> {
        let expected = rank * algebra.length();
        for s in [&cycles, &boundaries] {
            if s.ambient_dim() != expected {
                return Err(LinalgError::DimensionMismatch {
                    expected,
                    found: s.ambient_dim(),
                }
                .into());
            }
        }
        if !boundaries.is_subspace_of(&cycles) {
            return Err(AlgebraError::BoundariesNotInCycles);
        }
        if !algebra.is_submodule(&cycles, rank) || !algebra.is_submodule(&boundaries, rank) {
            return Err(AlgebraError::NotClosed);
        }
        Ok(Self {
            algebra,
            rank,
            cycles,
            boundaries,
        })
    }

    /// For pairs that are submodules by construction (kernels and images of
    /// `A`-linear maps).
    pub(crate) fn trusted(
        algebra: &'a LocalAlgebra,
        rank: usize,
        cycles: Subspace,
        boundaries: Subspace,
    ) -> Self {
        debug_assert!(boundaries.is_subspace_of(&cycles));
        Self {
            algebra,
            rank,
            cycles,
            boundaries,
        }
    }

    pub fn algebra(&self) -> &'a LocalAlgebra {
        self.algebra
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }
    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    /// `ℓ(Z/B) = dim_k Z − dim_k B`.
    pub fn length(&self) -> usize {
        self.cycles.dim() - self.boundaries.dim()
    }

    /// Minimal number of generators: `dim_k Z − dim_k(m·Z + B)`.
    pub fn nu(&self) -> usize {
        let mut mz = self.algebra.max_ideal_times(&self.cycles, self.rank);
        for b in self.boundaries.basis() {
            mz.insert(b.clone());
        }
        self.cycles.dim() - mz.dim()
    }
}

/// Free function form of [`SubquotientModule::nu`].
pub fn nu(module: &SubquotientModule<'_>) -> usize {
    module.nu()
}

/// An ideal of a [`LocalAlgebra`], as a subspace of its coordinate space.
#[derive(Clone)]
pub struct IdealSubspace<'a> {
    algebra: &'a LocalAlgebra,
    space: Subspace,
}

impl fmt::Debug for IdealSubspace<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdealSubspace").field("space", &self.space).finish()
    }
}

impl PartialEq for IdealSubspace<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.algebra, other.algebra) && self.space == other.space
    }
}

impl<'a> IdealSubspace<'a> {
    pub fn algebra(&self) -> &'a LocalAlgebra {
        self.algebra
    }
    pub fn space(&self) -> &Subspace {
        &self.space
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn contains(&self, a: &[FieldElement]) -> bool {
        self.space.contains(a)
    }
    pub fn is_subideal_of(&self, other: &IdealSubspace<'_>) -> bool {
        self.space.is_subspace_of(&other.space)
    }

    fn same_parent(&self, other: &IdealSubspace<'_>) -> Result<(), AlgebraError> {
        if std::ptr::eq(self.algebra, other.algebra) {
            Ok(())
        } else {
            Err(AlgebraError::ParentMismatch)
        }
    }

    /// As a module `I / 0` over its algebra.
    pub fn as_module(&self) -> SubquotientModule<'a> {
        SubquotientModule::trusted(
            self.algebra,
            1,
            self.space.clone(),
            Subspace::zero(self.algebra.field(), self.algebra.length()),
        )
    }
}

pub fn ideal_span<'a>(
    algebra: &'a LocalAlgebra,
    elements: &[Vec<FieldElement>],
) -> Result<IdealSubspace<'a>, AlgebraError> {
    for e in elements {
        algebra.check_len(e)?;
    }
    Ok(IdealSubspace {
        algebra,
        space: algebra.submodule_span(1, elements.iter().cloned()),
    })
}

/// `IJ`, spanned by products of basis vectors.
pub fn ideal_product<'a>(
    i: &IdealSubspace<'a>,
    j: &IdealSubspace<'a>,
) -> Result<IdealSubspace<'a>, AlgebraError> {
    i.same_parent(j)?;
    let a = i.algebra;
    let mut space = Subspace::zero(a.field(), a.length());
    for u in i.space.basis() {
        for v in j.space.basis() {
            space.insert(a.mul(u, v));
        }
    }
    Ok(IdealSubspace { algebra: a, space })
}

pub fn ideal_intersect<'a>(
    i: &IdealSubspace<'a>,
    j: &IdealSubspace<'a>,
) -> Result<IdealSubspace<'a>, AlgebraError> {
    i.same_parent(j)?;
    Ok(IdealSubspace {
        algebra: i.algebra,
        space: subspace_intersect(&i.space, &j.space)?,
    })
}

pub fn ideal_sum<'a>(
    i: &IdealSubspace<'a>,
    j: &IdealSubspace<'a>,
) -> Result<IdealSubspace<'a>, AlgebraError> {
    i.same_parent(j)?;
    Ok(IdealSubspace {
        algebra: i.algebra,
        space: crate::linalg::subspace_sum(&i.space, &j.space)?,
    })
}

/// `{a : a·x_j = 0 for all j}`, the kernel of the stacked multiplication maps.
pub fn annihilator<'a>(
    algebra: &'a LocalAlgebra,
    elements: &[Vec<FieldElement>],
) -> Result<IdealSubspace<'a>, AlgebraError> {
    let len = algebra.length();
    let mut stacked = FieldMatrix::zeros(algebra.field(), elements.len() * len, len);
    for (k, x) in elements.iter().enumerate() {
        algebra.check_len(x)?;
        let op = algebra.mul_op(x);
        for r in 0..len {
            for c in 0..len {
                stacked.set(k * len + r, c, op.get(r, c));
            }
        }
    }
    Ok(IdealSubspace {
        algebra,
        space: kernel_basis(&stacked),
    })
}

/// `A / (x_1..x_n)A`, rebuilt from the presentation extended by representatives.
pub fn quotient_by_ideal(
    algebra: &LocalAlgebra,
    elements: &[Vec<FieldElement>],
) -> Result<LocalAlgebra, AlgebraError> {
    let pres = algebra.presentation();
    let mut gens = pres.gens.clone();
    for (index, x) in elements.iter().enumerate() {
        algebra.check_len(x)?;
        if !algebra.is_in_max_ideal(x) {
            return Err(AlgebraError::NotInMaximalIdeal { index });
        }
        let rep = algebra.element_to_poly(x);
        if !rep.is_zero() {
            gens.push(rep);
        }
    }
    // m^D ⊆ I ⊆ I + (x): the old bound stays certified.
    let pres = AlgebraPresentation {
        field: pres.field,
        vars: pres.vars.clone(),
        gens,
        bound: pres.bound,
    };
    Ok(LocalAlgebra::build(pres))
}

/// Renames `name` by appending primes until it avoids `taken`.
pub fn fresh_name(name: &str, taken: &[String]) -> String {
    let mut candidate = format!("{name}'");
    while taken.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}

/// `A1 ⊗_k A2 = k[[Y, Y']] / (I + I')`, with the right-hand variables placed
/// after the left-hand ones (renamed by priming on collision).
pub fn tensor_product(a1: &LocalAlgebra, a2: &LocalAlgebra) -> Result<LocalAlgebra, AlgebraError> {
    let (p1, p2) = (a1.presentation(), a2.presentation());
    if p1.field != p2.field {
        return Err(LinalgError::FieldMismatch(p1.field.modulus(), p2.field.modulus()).into());
    }
    let m1 = p1.nvars();
    let nvars = m1 + p2.nvars();
    let mut vars = p1.vars.clone();
    for v in &p2.vars {
        let name = if vars.contains(v) { fresh_name(v, &vars) } else { v.clone() };
        vars.push(name);
    }
    // A monomial of degree D1 + D2 - 1 has Y-degree >= D1 or Y'-degree >= D2.
    let bound = p1.bound + p2.bound - 1;
    let gens = p1
        .gens
        .iter()
        .map(|g| g.embed(nvars, 0, g.bound().max(bound + 1)))
        .chain(p2.gens.iter().map(|g| g.embed(nvars, m1, g.bound().max(bound + 1))))
        .collect();
    let pres = AlgebraPresentation::new(p1.field, vars, gens, bound)?;
    Ok(LocalAlgebra::build(pres))
}

/// The presentation of `A` over `k[[X_1..X_n, Y_1..Y_m]]` obtained by adjoining
/// `X_i − ξ_i` to the generators of `I`, where `ξ_i` represents `x_i`.
#[derive(Debug, Clone)]
pub struct PresentationLift {
    pub source: AlgebraPresentation,
    pub elements: Vec<Vec<FieldElement>>,
    pub representatives: Vec<TruncatedPoly>,
    pub lifted: AlgebraPresentation,
    /// `ν(I)` over `k[[Y]]`.
    pub nu_source: usize,
    /// `ν(𝔞)` over `k[[X, Y]]`.
    pub nu_lifted: usize,
    pub lifted_length: usize,
}

impl PresentationLift {
    pub fn n(&self) -> usize {
        self.elements.len()
    }
    pub fn lifted_nvars(&self) -> usize {
        self.lifted.nvars()
    }
    /// `ν(𝔞) − dim T`.
    pub fn lifted_cid(&self) -> i64 {
        self.nu_lifted as i64 - self.lifted.nvars() as i64
    }
}

pub fn lift_presentation(
    algebra: &LocalAlgebra,
    elements: &[Vec<FieldElement>],
) -> Result<PresentationLift, AlgebraError> {
    let reps: Vec<TruncatedPoly> = elements.iter().map(|x| algebra.element_to_poly(x)).collect();
    lift_presentation_with_reps(algebra, elements, &reps)
}

pub fn lift_presentation_with_reps(
    algebra: &LocalAlgebra,
    elements: &[Vec<FieldElement>],
    reps: &[TruncatedPoly],
) -> Result<PresentationLift, AlgebraError> {
    assert_eq!(elements.len(), reps.len(), "one representative per element");
    for (index, (x, rep)) in elements.iter().zip(reps).enumerate() {
        algebra.check_len(x)?;
        if !algebra.is_in_max_ideal(x) {
            return Err(AlgebraError::NotInMaximalIdeal { index });
        }
        if algebra.element_from_poly(rep)? != *x {
            return Err(AlgebraError::InconsistentRepresentative { index });
        }
    }
    let source = algebra.presentation().clone();
    let n = elements.len();
    let m = source.nvars();
    let nvars = n + m;
    let field = source.field;

    let mut vars = Vec::with_capacity(nvars);
    for i in 1..=n {
        let base = format!("X{i}");
        let name = if source.vars.contains(&base) { fresh_name(&base, &source.vars) } else { base };
        vars.push(name);
    }
    vars.extend(source.vars.iter().cloned());

    let store = source.bound + 2;
    let mut gens: Vec<TruncatedPoly> = source
        .gens
        .iter()
        .map(|g| g.embed(nvars, n, g.bound().max(store)))
        .collect();
    for (i, rep) in reps.iter().enumerate() {
        let xi = TruncatedPoly::var(field, nvars, store, i);
        gens.push(xi.sub(&rep.embed(nvars, n, store))?);
    }
    // X^a Y^b − ξ^a Y^b ∈ 𝔞 and ξ^a Y^b ∈ m_Y^D ⊆ I, so the source bound works.
    let bound = find_degree_bound(field, nvars, &gens, source.bound).ok_or_else(|| {
        AlgebraError::LiftMismatch(format!("m^{} not contained in lifted ideal", source.bound))
    })?;
    let lifted = AlgebraPresentation {
        field,
        vars,
        gens,
        bound,
    };
    let lifted_alg = LocalAlgebra::build(lifted.clone());
    check_lift_isomorphism(algebra, elements, &lifted_alg)?;

    Ok(PresentationLift {
        nu_source: source.nu_ideal(),
        nu_lifted: lifted.nu_ideal(),
        lifted_length: lifted_alg.length(),
        source,
        elements: elements.to_vec(),
        representatives: reps.to_vec(),
        lifted,
    })
}

/// Verifies that `X_i ↦ x_i, Y_j ↦ y_j` induces an algebra isomorphism from
/// the lifted algebra onto `A`.
fn check_lift_isomorphism(
    algebra: &LocalAlgebra,
    elements: &[Vec<FieldElement>],
    lifted: &LocalAlgebra,
) -> Result<(), AlgebraError> {
    if lifted.length() != algebra.length() {
        return Err(AlgebraError::LiftMismatch(format!(
            "length {} != {}",
            lifted.length(),
            algebra.length()
        )));
    }
    let n = elements.len();
    let m = algebra.nvars();
    let image = |mono: &Monomial| -> Vec<FieldElement> {
        let e = mono.exponents();
        let y_part = Monomial::new(e[n..].to_vec());
        let mut acc = algebra.monomial_element(&y_part);
        for (i, x) in elements.iter().enumerate() {
            for _ in 0..e[i] {
                acc = algebra.mul(&acc, x);
            }
        }
        debug_assert_eq!(y_part.nvars(), m);
        acc
    };
    let phi: Vec<Vec<FieldElement>> = lifted.basis_monomials().into_iter().map(image).collect();
    let phi_matrix = FieldMatrix::from_columns(algebra.field(), algebra.length(), &phi);
    if phi_matrix.rank() != algebra.length() {
        return Err(AlgebraError::LiftMismatch("induced map is not bijective".into()));
    }
    for a in 0..lifted.length() {
        for b in 0..lifted.length() {
            let prod = lifted.mult_op(a).column(b);
            let lhs = phi_matrix.mul_vec(&prod);
            let rhs = algebra.mul(&phi[a], &phi[b]);
            if lhs != rhs {
                return Err(AlgebraError::LiftMismatch(format!(
                    "multiplication differs on basis pair ({a}, {b})"
                )));
            }
        }
    }
    Ok(())
}
