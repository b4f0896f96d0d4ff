//! Truncated power series `k[[Y_1..Y_m]] / m^D` and the polynomial expression
//! grammar used by instance files.
//!
//! Monomials are ordered graded-lexicographically: total degree first, then
//! the exponent vectors compared lexicographically in declared variable order.
//! Coordinate vectors list monomials in increasing order, so the constant
//! monomial is always coordinate 0.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::linalg::{FieldElement, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Self::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, j: usize) -> Self {
        let mut e = vec![0; nvars];
        e[j] = 1;
        Self::new(e)
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// Places this monomial's variables at `offset` inside `nvars` variables.
    pub fn embed(&self, nvars: usize, offset: usize) -> Monomial {
        assert!(offset + self.nvars() <= nvars);
        let mut e = vec![0; nvars];
        e[offset..offset + self.nvars()].copy_from_slice(&self.exps);
        Monomial {
            exps: e,
            degree: self.degree,
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .zip(names)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_owned()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `var_count` variables of degree at most `max_deg`, in
/// increasing graded-lex order.
pub fn mono_enumerate(var_count: usize, max_deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=max_deg {
        let mut layer = Vec::new();
        let mut cur = vec![0u32; var_count];
        fill_degree(&mut cur, 0, d, &mut layer);
        layer.sort();
        out.extend(layer);
    }
    out
}

fn fill_degree(cur: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 >= cur.len() {
        if cur.is_empty() {
            if remaining == 0 {
                out.push(Monomial::new(Vec::new()));
            }
            return;
        }
        cur[pos] = remaining;
        out.push(Monomial::new(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        cur[pos] = e;
        fill_degree(cur, pos + 1, remaining - e, out);
    }
    cur[pos] = 0;
}

/// Coordinate system for `P / m^bound`: every monomial of degree `< bound`,
/// with precomputed multiplication-by-variable tables.
#[derive(Debug, Clone)]
pub struct MonomialIndex {
    nvars: usize,
    bound: u32,
    monos: Vec<Monomial>,
    position: HashMap<Monomial, usize>,
    times_var: Vec<Vec<Option<usize>>>,
}

impl MonomialIndex {
    pub fn new(nvars: usize, bound: u32) -> Self {
        let monos = if bound == 0 {
            Vec::new()
        } else {
            mono_enumerate(nvars, bound - 1)
        };
        let position: HashMap<Monomial, usize> =
            monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let times_var = (0..nvars)
            .map(|j| {
                let y = Monomial::var(nvars, j);
                monos.iter().map(|m| position.get(&m.mul(&y)).copied()).collect()
            })
            .collect();
        Self {
            nvars,
            bound,
            monos,
            position,
            times_var,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.monos.len()
    }
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }
    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    #[inline]
    pub fn bound(&self) -> u32 {
        self.bound
    }
    #[inline]
    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }
    #[inline]
    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monos[i]
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.position.get(m).copied()
    }

    /// Index of `Y_j * monos[i]`, or `None` when it is truncated away.
    #[inline]
    pub fn times_var(&self, j: usize, i: usize) -> Option<usize> {
        self.times_var[j][i]
    }

    pub fn times_monomial(&self, i: usize, m: &Monomial) -> Option<usize> {
        self.position(&self.monos[i].mul(m))
    }

    /// `Y_j * v` on coordinate vectors.
    pub fn shift(&self, j: usize, v: &[FieldElement]) -> Vec<FieldElement> {
        let mut out = vec![0; self.len()];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                if let Some(t) = self.times_var[j][i] {
                    out[t] = c;
                }
            }
        }
        out
    }

    pub fn degree_range(&self, deg: u32) -> std::ops::Range<usize> {
        let start = self.monos.partition_point(|m| m.degree() < deg);
        let end = self.monos.partition_point(|m| m.degree() <= deg);
        start..end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("truncation bound mismatch: {0} vs {1}")]
    BoundMismatch(u32, u32),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),
}

/// A polynomial with every monomial of degree `>= bound` discarded.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedPoly {
    field: PrimeField,
    nvars: usize,
    bound: u32,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl fmt::Debug for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("y{i}")).collect();
        write!(f, "TruncatedPoly({} mod m^{})", self.fmt_with(&names), self.bound)
    }
}

impl TruncatedPoly {
    pub fn zero(field: PrimeField, nvars: usize, bound: u32) -> Self {
        Self {
            field,
            nvars,
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, bound: u32, c: FieldElement) -> Self {
        Self::monomial(field, bound, Monomial::one(nvars), c)
    }

    pub fn var(field: PrimeField, nvars: usize, bound: u32, j: usize) -> Self {
        Self::monomial(field, bound, Monomial::var(nvars, j), 1)
    }

    pub fn monomial(field: PrimeField, bound: u32, m: Monomial, c: FieldElement) -> Self {
        let mut p = Self::zero(field, m.nvars(), bound);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(field: PrimeField, nvars: usize, bound: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut p = Self::zero(field, nvars, bound);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    #[inline]
    pub fn bound(&self) -> u32 {
        self.bound
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElement)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).copied().unwrap_or(0)
    }
    pub fn constant_term(&self) -> FieldElement {
        self.coeff(&Monomial::one(self.nvars))
    }
    /// Lowest degree carrying a nonzero term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Adds `c * m`, dropping it when `deg m >= bound`.
    pub fn add_term(&mut self, m: Monomial, c: FieldElement) {
        assert_eq!(m.nvars(), self.nvars, "monomial has wrong variable count");
        let c = c % self.field.modulus();
        if c == 0 || m.degree() >= self.bound {
            return;
        }
        let f = self.field;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        if self.nvars != other.nvars {
            return Err(PolyError::VariableMismatch(self.nvars, other.nvars));
        }
        if self.bound != other.bound {
            return Err(PolyError::BoundMismatch(self.bound, other.bound));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.scaled(self.field.neg(1)))
    }

    pub fn scaled(&self, c: FieldElement) -> Self {
        let mut out = Self::zero(self.field, self.nvars, self.bound);
        for (m, a) in self.terms() {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    /// Product in `P / m^bound`.
    pub fn mul_trunc(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let f = self.field;
        let mut out = Self::zero(f, self.nvars, self.bound);
        for (ma, a) in self.terms() {
            for (mb, b) in other.terms() {
                if ma.degree() + mb.degree() < self.bound {
                    out.add_term(ma.mul(mb), f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn pow_trunc(&self, e: u32) -> Result<Self, PolyError> {
        let mut acc = Self::constant(self.field, self.nvars, self.bound, 1);
        for _ in 0..e {
            acc = acc.mul_trunc(self)?;
        }
        Ok(acc)
    }

    /// Same polynomial read in `P / m^bound`: terms at or above the new bound
    /// are dropped; raising the bound keeps the stored terms as they are.
    pub fn with_bound(&self, bound: u32) -> Self {
        Self::from_terms(
            self.field,
            self.nvars,
            bound,
            self.terms().map(|(m, c)| (m.clone(), c)),
        )
    }

    /// Moves this polynomial into a ring with `nvars` variables, its own
    /// variables occupying positions `offset..offset + self.nvars()`.
    pub fn embed(&self, nvars: usize, offset: usize, bound: u32) -> Self {
        Self::from_terms(
            self.field,
            nvars,
            bound,
            self.terms().map(|(m, c)| (m.embed(nvars, offset), c)),
        )
    }

    pub fn to_vector(&self, index: &MonomialIndex) -> Vec<FieldElement> {
        assert_eq!(index.nvars(), self.nvars);
        let mut v = vec![0; index.len()];
        for (m, c) in self.terms() {
            if let Some(i) = index.position(m) {
                v[i] = c;
            }
        }
        v
    }

    pub fn from_vector(field: PrimeField, index: &MonomialIndex, v: &[FieldElement]) -> Self {
        assert_eq!(v.len(), index.len());
        Self::from_terms(
            field,
            index.nvars(),
            index.bound(),
            v.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (index.monomial(i).clone(), c)),
        )
    }

    /// Canonical text form, parseable by [`parse_poly`]. Terms appear in
    /// increasing graded-lex order.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_owned();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                if m.degree() == 0 {
                    c.to_string()
                } else if c == 1 {
                    m.fmt_with(names)
                } else {
                    format!("{c}*{}", m.fmt_with(names))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Coordinate vector over the graded-lex monomial basis of `P / m^D`.
pub fn poly_to_vector(f: &TruncatedPoly) -> Vec<FieldElement> {
    f.to_vector(&MonomialIndex::new(f.nvars(), f.bound()))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
}

/// Parses `expression := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := integer | variable | variable '^' integer | '(' expression ')'`.
///
/// A single leading sign is also accepted. Integer literals are reduced mod p.
pub fn parse_poly(
    text: &str,
    vars: &[String],
    field: PrimeField,
    bound: u32,
) -> Result<TruncatedPoly, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
        field,
        bound,
    };
    let p = parser.expression()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
    field: PrimeField,
    bound: u32,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_owned(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expression(&mut self) -> Result<TruncatedPoly, ParseError> {
        let negate_first = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate_first {
            acc = acc.scaled(self.field.neg(1));
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t).expect("same ring");
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t).expect("same ring");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TruncatedPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul_trunc(&f).expect("same ring");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<TruncatedPoly, ParseError> {
        let nvars = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expression()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer_mod_p();
                Ok(TruncatedPoly::constant(self.field, nvars, self.bound, v))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric()
                        || self.src[self.pos] == b'_'
                        || self.src[self.pos] == b'\'')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let j = self.vars.iter().position(|v| v == name).ok_or_else(|| {
                    ParseError::UnknownVariable {
                        pos: start,
                        name: name.to_owned(),
                    }
                })?;
                let mut exp = 1u64;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    match self.peek() {
                        Some(c) if c.is_ascii_digit() => exp = self.integer_saturating(),
                        _ => return Err(self.error("expected integer exponent after `^`")),
                    }
                }
                let mut e = vec![0u32; nvars];
                e[j] = exp.min(u32::MAX as u64) as u32;
                if exp >= self.bound as u64 {
                    return Ok(TruncatedPoly::zero(self.field, nvars, self.bound));
                }
                Ok(TruncatedPoly::monomial(
                    self.field,
                    self.bound,
                    Monomial::new(e),
                    1,
                ))
            }
            Some(_) => Err(self.error("expected integer, variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer_mod_p(&mut self) -> FieldElement {
        let p = self.field.modulus() as u64;
        let mut v = 0u64;
        while let Some(&c) = self.src.get(self.pos).filter(|c| c.is_ascii_digit()) {
            v = (v * 10 + (c - b'0') as u64) % p;
            self.pos += 1;
        }
        v as u32
    }

    fn integer_saturating(&mut self) -> u64 {
        let mut v = 0u64;
        while let Some(&c) = self.src.get(self.pos).filter(|c| c.is_ascii_digit()) {
            v = v.saturating_mul(10).saturating_add((c - b'0') as u64);
            self.pos += 1;
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("y{i}")).collect()
    }

    fn binom(n: u64, r: u64) -> u64 {
        (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn enumerate_one_variable() {
        let ms = mono_enumerate(1, 2);
        let exps: Vec<&[u32]> = ms.iter().map(|m| m.exponents()).collect();
        assert_eq!(exps, vec![&[0][..], &[1], &[2]]);
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(mono_enumerate(2, 2).len(), 6);
        assert_eq!(mono_enumerate(4, 0), vec![Monomial::one(4)]);
        for m in 1..4 {
            for d in 0..5 {
                let ms = mono_enumerate(m, d);
                assert_eq!(ms.len() as u64, binom(m as u64 + d as u64, m as u64));
                assert!(ms.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn truncation_kills_high_products() {
        let f = k(101);
        let y = TruncatedPoly::var(f, 1, 2, 0);
        assert!(y.mul_trunc(&y).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let f = k(101);
        let v = names(1);
        let a = parse_poly("1 + y1", &v, f, 3).unwrap();
        let b = parse_poly("1 - y1", &v, f, 3).unwrap();
        assert_eq!(a.mul_trunc(&b).unwrap(), parse_poly("1 - y1^2", &v, f, 3).unwrap());
        let one = TruncatedPoly::constant(f, 1, 3, 1);
        assert_eq!(a.mul_trunc(&one).unwrap(), a);
    }

    #[test]
    fn bound_mismatch_is_an_error() {
        let f = k(5);
        let a = TruncatedPoly::var(f, 1, 2, 0);
        let b = TruncatedPoly::var(f, 1, 3, 0);
        assert_eq!(a.mul_trunc(&b), Err(PolyError::BoundMismatch(2, 3)));
    }

    #[test]
    fn parse_examples() {
        let f = k(101);
        let v = names(2);
        let p = parse_poly("y1^2 + 3*y1*y2", &v, f, 4).unwrap();
        assert_eq!(p.coeff(&Monomial::new(vec![2, 0])), 1);
        assert_eq!(p.coeff(&Monomial::new(vec![1, 1])), 3);
        assert_eq!(p.terms().count(), 2);

        let p = parse_poly("y1 - y2", &v, k(5), 4).unwrap();
        assert_eq!(p.coeff(&Monomial::var(2, 0)), 1);
        assert_eq!(p.coeff(&Monomial::var(2, 1)), 4);

        assert!(parse_poly("0", &v, f, 4).unwrap().is_zero());
        assert_eq!(
            parse_poly("-(y1 + 2)*y2", &v, f, 4).unwrap(),
            parse_poly("100*y1*y2 + 99*y2", &v, f, 4).unwrap()
        );
        assert!(parse_poly("y1^7", &v, f, 4).unwrap().is_zero());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let f = k(7);
        let v = names(2);
        assert_eq!(
            parse_poly("y1 + z", &v, f, 3),
            Err(ParseError::UnknownVariable {
                pos: 5,
                name: "z".into()
            })
        );
        assert!(matches!(
            parse_poly("y1 y2", &v, f, 3),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(parse_poly("(y1", &v, f, 3), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("y1^", &v, f, 3), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("", &v, f, 3), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn vector_encoding() {
        let f = k(5);
        let v = names(1);
        assert_eq!(poly_to_vector(&TruncatedPoly::zero(f, 1, 3)), vec![0, 0, 0]);
        assert_eq!(poly_to_vector(&parse_poly("y1", &v, f, 3).unwrap()), vec![0, 1, 0]);
        assert_eq!(poly_to_vector(&parse_poly("2 + y1^2", &v, f, 3).unwrap()), vec![2, 0, 1]);
    }

    fn poly_strategy(nvars: usize, bound: u32) -> impl Strategy<Value = TruncatedPoly> {
        let monos = mono_enumerate(nvars, bound - 1);
        prop::collection::vec(0u32..101, monos.len()).prop_map(move |cs| {
            TruncatedPoly::from_terms(k(101), nvars, bound, monos.iter().cloned().zip(cs))
        })
    }

    fn max_ideal_poly(nvars: usize, bound: u32) -> impl Strategy<Value = TruncatedPoly> {
        poly_strategy(nvars, bound).prop_map(|p| {
            let c = p.constant_term();
            p.sub(&TruncatedPoly::constant(p.field(), p.nvars(), p.bound(), c))
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly_strategy(2, 4), b in poly_strategy(2, 4), c in poly_strategy(2, 4)) {
            prop_assert_eq!(a.mul_trunc(&b).unwrap(), b.mul_trunc(&a).unwrap());
            prop_assert_eq!(
                a.mul_trunc(&b).unwrap().mul_trunc(&c).unwrap(),
                a.mul_trunc(&b.mul_trunc(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul_trunc(&b.add(&c).unwrap()).unwrap(),
                a.mul_trunc(&b).unwrap().add(&a.mul_trunc(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn nilpotent_maximal_ideal(fs in prop::collection::vec(max_ideal_poly(2, 3), 3)) {
            let prod = fs.iter().skip(1).fold(fs[0].clone(), |acc, f| acc.mul_trunc(f).unwrap());
            prop_assert!(prod.is_zero());
        }

        #[test]
        fn print_parse_round_trip(a in poly_strategy(3, 3)) {
            let v = names(3);
            let text = a.fmt_with(&v);
            prop_assert_eq!(parse_poly(&text, &v, k(101), 3).unwrap(), a.clone());
            let idx = MonomialIndex::new(3, 3);
            prop_assert_eq!(TruncatedPoly::from_vector(k(101), &idx, &a.to_vector(&idx)), a);
        }
    }
}
