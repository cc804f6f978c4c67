//! Exact representation of `k[Y]`, `X**`, `N = [Y]X**` and the free
//! non-associative `k[Y]`-algebra `k[Y](X)` over the rationals.
//!
//! Generators are identified by their rank inside their alphabet: rank 0 is
//! the largest generator. The ordering itself lives in [`crate::order`]; the
//! `Ord` impls used as `BTreeMap` keys here come from there.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Scalars of the ground field `k = Q`.
pub type Coefficient = BigRational;

/// A generator of either alphabet, with its declared position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub rank: u32,
}

/// A commutative monomial in `[Y]`, stored sparsely as `(rank, exponent)`
/// pairs sorted by rank. Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct YMonomial {
    exps: Vec<(u32, u32)>,
    degree: u32,
}

impl YMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(rank: u32) -> Self {
        Self::power(rank, 1)
    }

    pub fn power(rank: u32, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        YMonomial {
            exps: vec![(rank, exp)],
            degree: exp,
        }
    }

    /// Builds a monomial from arbitrary `(rank, exponent)` pairs; repeated
    /// ranks are summed.
    pub fn from_exponents<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut map = BTreeMap::new();
        for (g, e) in pairs {
            *map.entry(g).or_insert(0u32) += e;
        }
        let exps: Vec<_> = map.into_iter().filter(|&(_, e)| e > 0).collect();
        let degree = exps.iter().map(|&(_, e)| e).sum();
        YMonomial { exps, degree }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, rank: u32) -> u32 {
        self.exps
            .binary_search_by_key(&rank, |&(g, _)| g)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    /// `(rank, exponent)` pairs in ascending rank, i.e. descending generator.
    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.exps
    }

    fn merge(&self, other: &Self, op: impl Fn(u32, u32) -> u32) -> Self {
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        let mut exps = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            let (g, e) = match (a.get(i), b.get(j)) {
                (Some(&(ga, ea)), Some(&(gb, eb))) if ga == gb => {
                    i += 1;
                    j += 1;
                    (ga, op(ea, eb))
                }
                (Some(&(ga, ea)), Some(&(gb, _))) if ga < gb => {
                    i += 1;
                    (ga, op(ea, 0))
                }
                (Some(&(ga, ea)), None) => {
                    i += 1;
                    (ga, op(ea, 0))
                }
                (_, Some(&(gb, eb))) => {
                    j += 1;
                    (gb, op(0, eb))
                }
                (None, None) => unreachable!(),
            };
            if e > 0 {
                exps.push((g, e));
            }
        }
        let degree = exps.iter().map(|&(_, e)| e).sum();
        YMonomial { exps, degree }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        self.merge(other, |a, b| a + b)
    }

    /// Exponentwise maximum.
    pub fn lcm(&self, other: &Self) -> Self {
        self.merge(other, |a, b| a.max(b))
    }

    /// Exponentwise minimum.
    pub fn gcd(&self, other: &Self) -> Self {
        self.merge(other, |a, b| a.min(b))
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.degree > other.degree {
            return false;
        }
        self.exps.iter().all(|&(g, e)| other.exponent(g) >= e)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        Some(other.merge(self, |a, b| a - b))
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.gcd(other).is_one()
    }
}

impl fmt::Debug for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, &(g, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "y#{g}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A non-associative word: a binary tree with generator leaves.
///
/// Nodes are shared behind an `Arc` and carry their degree and a structural
/// hash, so equality and subtree search short-circuit on mismatch.
#[derive(Clone)]
pub struct XTerm(Arc<XNode>);

struct XNode {
    kind: XKind,
    degree: u32,
    hash: u64,
}

pub enum XKind {
    Leaf(u32),
    Node(XTerm, XTerm),
}

fn mix(a: u64, b: u64) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    (a, b).hash(&mut h);
    h.finish()
}

impl XTerm {
    pub fn leaf(rank: u32) -> Self {
        XTerm(Arc::new(XNode {
            kind: XKind::Leaf(rank),
            degree: 1,
            hash: mix(0x6c65_6166, rank as u64),
        }))
    }

    pub fn node(left: XTerm, right: XTerm) -> Self {
        let degree = left.degree() + right.degree();
        let hash = mix(left.0.hash, right.0.hash.rotate_left(17) ^ 0x6e6f_6465);
        XTerm(Arc::new(XNode {
            kind: XKind::Node(left, right),
            degree,
            hash,
        }))
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn kind(&self) -> &XKind {
        &self.0.kind
    }

    pub fn as_leaf(&self) -> Option<u32> {
        match self.0.kind {
            XKind::Leaf(g) => Some(g),
            XKind::Node(..) => None,
        }
    }

    pub fn children(&self) -> Option<(&XTerm, &XTerm)> {
        match &self.0.kind {
            XKind::Leaf(_) => None,
            XKind::Node(l, r) => Some((l, r)),
        }
    }

    pub fn ptr_eq(&self, other: &XTerm) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Rebuilds the tree with every leaf replaced by `f(rank)`.
    pub fn map_leaves(&self, f: &impl Fn(u32) -> XTerm) -> XTerm {
        match &self.0.kind {
            XKind::Leaf(g) => f(*g),
            XKind::Node(l, r) => XTerm::node(l.map_leaves(f), r.map_leaves(f)),
        }
    }

    /// Leaf ranks from left to right.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        fn walk(t: &XTerm, out: &mut Vec<u32>) {
            match t.kind() {
                XKind::Leaf(g) => out.push(*g),
                XKind::Node(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }
}

impl PartialEq for XTerm {
    fn eq(&self, other: &Self) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        if self.0.hash != other.0.hash || self.0.degree != other.0.degree {
            return false;
        }
        match (&self.0.kind, &other.0.kind) {
            (XKind::Leaf(a), XKind::Leaf(b)) => a == b,
            (XKind::Node(l1, r1), XKind::Node(l2, r2)) => l1 == l2 && r1 == r2,
            _ => false,
        }
    }
}

impl Eq for XTerm {}

impl Hash for XTerm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for XTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            XKind::Leaf(g) => write!(f, "x#{g}"),
            XKind::Node(l, r) => write!(f, "({l:?} {r:?})"),
        }
    }
}

/// An element `u = u^Y u^X` of `N = [Y]X**`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NMonomial {
    pub y: YMonomial,
    pub x: XTerm,
}

impl NMonomial {
    pub fn new(y: YMonomial, x: XTerm) -> Self {
        NMonomial { y, x }
    }

    pub fn from_x(x: XTerm) -> Self {
        NMonomial {
            y: YMonomial::one(),
            x,
        }
    }

    /// Combined degree `|u^Y| + deg(u^X)`.
    pub fn degree(&self) -> u32 {
        self.y.degree() + self.x.degree()
    }

    /// `uv = u^Y v^Y (u^X v^X)`.
    pub fn mul(&self, other: &NMonomial) -> NMonomial {
        NMonomial {
            y: self.y.mul(&other.y),
            x: XTerm::node(self.x.clone(), other.x.clone()),
        }
    }

    pub fn scale_y(&self, t: &YMonomial) -> NMonomial {
        NMonomial {
            y: self.y.mul(t),
            x: self.x.clone(),
        }
    }
}

impl fmt::Debug for NMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_one() {
            write!(f, "{:?}", self.x)
        } else {
            write!(f, "{:?} {:?}", self.y, self.x)
        }
    }
}

pub fn mono_mul(u: &NMonomial, v: &NMonomial) -> NMonomial {
    u.mul(v)
}

/// An element of `k[Y](X)`: a finite map from monomials to nonzero
/// coefficients, kept in ascending monomial order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<NMonomial, Coefficient>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: NMonomial) -> Self {
        Self::term(Coefficient::one(), m)
    }

    pub fn term(c: Coefficient, m: NMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &NMonomial) -> Option<&Coefficient> {
        self.terms.get(m)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&NMonomial, &Coefficient)> + '_ {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl DoubleEndedIterator<Item = &NMonomial> + '_ {
        self.terms.keys()
    }

    pub fn add_term(&mut self, m: NMonomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(NMonomial, Coefficient)> {
        self.terms.pop_last()
    }

    pub fn leading_term(&self) -> Result<(&NMonomial, &Coefficient)> {
        self.terms.last_key_value().ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Result<&NMonomial> {
        self.leading_term().map(|(m, _)| m)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_term().is_ok_and(|(_, c)| c.is_one())
    }

    pub fn make_monic(&self) -> Result<Polynomial> {
        let (_, lc) = self.leading_term()?;
        if lc.is_one() {
            return Ok(self.clone());
        }
        let inv = lc.recip();
        Ok(self.scale(&inv))
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    /// Multiplies every term by the commutative monomial `t`. Order-preserving.
    pub fn scale_y(&self, t: &YMonomial) -> Polynomial {
        if t.is_one() {
            return self.clone();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.scale_y(t), a.clone()))
                .collect(),
        }
    }

    /// Largest combined degree among the terms; 0 for the zero polynomial.
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(NMonomial::degree).max().unwrap_or(0)
    }

    /// Every non-leading term has combined degree at most that of the leading
    /// term, so reduction by this polynomial never raises degree.
    pub fn is_degree_compatible(&self) -> bool {
        match self.leading_monomial() {
            Ok(lead) => self.max_degree() == lead.degree(),
            Err(_) => true,
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Polynomial, c: &Coefficient) {
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }
}

impl FromIterator<(NMonomial, Coefficient)> for Polynomial {
    fn from_iter<I: IntoIterator<Item = (NMonomial, Coefficient)>>(iter: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{m:?}")?;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Coefficient::one());
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &-Coefficient::one());
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Coefficient::one())
    }
}

/// Bilinear extension of [`mono_mul`].
impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }
}

pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Polynomial {
    f * g
}

/// An element of `k[Y]`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CPolynomial {
    terms: BTreeMap<YMonomial, Coefficient>,
}

impl CPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Coefficient::one(), YMonomial::one())
    }

    pub fn term(c: Coefficient, m: YMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&YMonomial, &Coefficient)> + '_ {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: YMonomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(YMonomial, Coefficient)> {
        self.terms.pop_last()
    }

    pub fn leading_term(&self) -> Result<(&YMonomial, &Coefficient)> {
        self.terms.last_key_value().ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Result<&YMonomial> {
        self.leading_term().map(|(m, _)| m)
    }

    pub fn make_monic(&self) -> Result<CPolynomial> {
        let (_, lc) = self.leading_term()?;
        let inv = lc.recip();
        Ok(self.scale(&inv))
    }

    pub fn scale(&self, c: &Coefficient) -> CPolynomial {
        if c.is_zero() {
            return CPolynomial::zero();
        }
        CPolynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_monomial(&self, t: &YMonomial) -> CPolynomial {
        CPolynomial {
            terms: self.terms.iter().map(|(m, a)| (m.mul(t), a.clone())).collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, other: &CPolynomial, c: &Coefficient) {
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    /// `g · p` for `g` in `k[Y]` acting on `p` in `k[Y](X)`.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (v, b) in &self.terms {
            for (u, a) in p.terms() {
                out.add_term(u.scale_y(v), a * b);
            }
        }
        out
    }

    /// `g · x` as an element of `k[Y](X)`.
    pub fn times_x(&self, x: &XTerm) -> Polynomial {
        self.apply(&Polynomial::monomial(NMonomial::from_x(x.clone())))
    }
}

impl FromIterator<(YMonomial, Coefficient)> for CPolynomial {
    fn from_iter<I: IntoIterator<Item = (YMonomial, Coefficient)>>(iter: I) -> Self {
        let mut p = CPolynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }
}

impl fmt::Debug for CPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{m:?}")?;
        }
        Ok(())
    }
}

impl Mul for &CPolynomial {
    type Output = CPolynomial;

    fn mul(self, rhs: &CPolynomial) -> CPolynomial {
        let mut out = CPolynomial::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }
}

pub fn cpoly_scale_apply(g: &CPolynomial, p: &Polynomial) -> Polynomial {
    g.apply(p)
}

pub fn leading_term(f: &Polynomial) -> Result<(NMonomial, Coefficient)> {
    f.leading_term().map(|(m, c)| (m.clone(), c.clone()))
}

pub fn make_monic(f: &Polynomial) -> Result<Polynomial> {
    f.make_monic()
}
