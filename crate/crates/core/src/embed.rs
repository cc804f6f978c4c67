//! Embedding a finitely generated presentation over `k[Y|R]` into one
//! generated by two letters `a > b`, with `x_i ↦ a(b^i)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{CPolynomial, Coefficient, NMonomial, Polynomial, XTerm};
use crate::complete::{complete_commutative, is_gsb, shirshov_complete, CompletionConfig, CompletionStatus, Failure};
use crate::compose::{AmbiguityKind, ShapeBound};
use crate::error::{Error, Result};
use crate::order::{Alphabet, OrderContext};
use crate::reduce::{irr_members, normal_form};

/// `k[Y|R](X|S)`: commutative relations `crels` on the coefficients and
/// mixed relations `rels` (already lifted to `k[Y](X)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub ctx: OrderContext,
    pub crels: Vec<CPolynomial>,
    pub rels: Vec<Polynomial>,
}

impl Presentation {
    pub fn new(ctx: OrderContext) -> Self {
        Presentation {
            ctx,
            crels: Vec::new(),
            rels: Vec::new(),
        }
    }

    /// The same algebra presented over `k[Y]`: `rels ∪ {g·x : g ∈ crels, x ∈ X}`.
    pub fn lifted(&self) -> Vec<Polynomial> {
        let mut out = self.rels.clone();
        for g in &self.crels {
            for x in 0..self.ctx.x_gens() {
                out.push(g.times_x(&XTerm::leaf(x)));
            }
        }
        out
    }

    /// Monic relations, duplicates removed, sorted by descending leading
    /// monomial.
    pub fn canonicalize(&self) -> Result<Presentation> {
        let mut crels: Vec<CPolynomial> = self.crels.iter().map(|g| g.make_monic()).collect::<Result<_>>()?;
        crels.sort_by(|a, b| b.leading_monomial().unwrap().cmp(a.leading_monomial().unwrap()).then_with(|| desc_terms_c(b, a)));
        crels.dedup();
        let mut rels: Vec<Polynomial> = self.rels.iter().map(|f| f.make_monic()).collect::<Result<_>>()?;
        rels.sort_by(|a, b| desc_terms(b, a));
        rels.dedup();
        Ok(Presentation {
            ctx: self.ctx.clone(),
            crels,
            rels,
        })
    }
}

fn desc_terms(a: &Polynomial, b: &Polynomial) -> std::cmp::Ordering {
    a.terms().rev().cmp(b.terms().rev())
}

fn desc_terms_c(a: &CPolynomial, b: &CPolynomial) -> std::cmp::Ordering {
    a.terms().rev().cmp(b.terms().rev())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    F1,
    F2,
    F3,
    F4,
    F5,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = match self {
            Family::F1 => 1,
            Family::F2 => 2,
            Family::F3 => 3,
            Family::F4 => 4,
            Family::F5 => 5,
        };
        write!(f, "f{i}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingData {
    /// The source with `crels` completed in `k[Y]` and `rels` replaced by
    /// the completed lift, minus the `g·x` family.
    pub source: Presentation,
    /// Completed lift of the source, a basis of `k[Y](X)`.
    pub source_basis: Vec<Polynomial>,
    /// `k[Y](a, b, X | s1)`; every relation appears in `rels`.
    pub target: Presentation,
    /// The relations of `target`, tagged.
    pub s1: Vec<(Family, Polynomial)>,
    /// `image[i]` is the target word for source generator `i`.
    pub image: Vec<XTerm>,
}

pub const RESERVED: [&str; 2] = ["a", "b"];

/// `b^i`, right-normed: `b^1 = b`, `b^i = (b b^{i-1})`.
pub fn b_power(i: u32) -> XTerm {
    let b = XTerm::leaf(1);
    let mut t = b.clone();
    for _ in 1..i {
        t = XTerm::node(b.clone(), t);
    }
    t
}

fn shift(t: &XTerm) -> XTerm {
    t.map_leaves(&|r| XTerm::leaf(r + 2))
}

fn shift_poly(f: &Polynomial) -> Polynomial {
    f.terms()
        .map(|(m, c)| (NMonomial::new(m.y.clone(), shift(&m.x)), c.clone()))
        .collect()
}

pub fn build_embedding(p: &Presentation, config: &CompletionConfig) -> Result<EmbeddingData> {
    config.validate()?;
    for name in RESERVED {
        if p.ctx.x.contains(name) || p.ctx.y.contains(name) {
            return Err(Error::ReservedName(name.to_string()));
        }
    }
    let crels = complete_commutative(&p.crels)?;
    let completed_source = Presentation {
        ctx: p.ctx.clone(),
        crels: crels.clone(),
        rels: p.rels.clone(),
    };
    let report = shirshov_complete(&p.ctx, &completed_source.lifted(), config)?;
    if report.status == CompletionStatus::BoundReached {
        return Err(Error::SourceIncomplete {
            max_deg: config.max_deg,
        });
    }
    let n = p.ctx.x_gens();
    let gx: Vec<Polynomial> = crels
        .iter()
        .flat_map(|g| (0..n).map(move |x| g.times_x(&XTerm::leaf(x))))
        .collect();
    let f1: Vec<Polynomial> = report.basis.iter().filter(|f| !gx.contains(f)).cloned().collect();

    let mut x_names = vec!["a".to_string(), "b".to_string()];
    x_names.extend(p.ctx.x.names().iter().cloned());
    let target_ctx = OrderContext::new(Alphabet::new(x_names)?, p.ctx.y.clone())?;

    let image: Vec<XTerm> = (1..=n).map(|i| XTerm::node(XTerm::leaf(0), b_power(i))).collect();
    let mut s1 = Vec::new();
    for f in &f1 {
        s1.push((Family::F1, shift_poly(f)));
    }
    for f in &gx {
        s1.push((Family::F2, shift_poly(f)));
    }
    for (i, w) in image.iter().enumerate() {
        let f3: Polynomial = [
            (NMonomial::from_x(w.clone()), Coefficient::from_integer(1.into())),
            (NMonomial::from_x(XTerm::leaf(i as u32 + 2)), Coefficient::from_integer((-1).into())),
        ]
        .into_iter()
        .collect();
        assert_eq!(f3.leading_monomial().unwrap().x, *w);
        s1.push((Family::F3, f3));
    }
    for g in &crels {
        s1.push((Family::F4, g.times_x(&XTerm::leaf(0))));
    }
    for g in &crels {
        s1.push((Family::F5, g.times_x(&XTerm::leaf(1))));
    }

    let target = Presentation {
        ctx: target_ctx,
        crels: Vec::new(),
        rels: s1.iter().map(|(_, f)| f.clone()).collect(),
    };
    Ok(EmbeddingData {
        source: Presentation {
            ctx: p.ctx.clone(),
            crels,
            rels: f1,
        },
        source_basis: report.basis,
        target,
        s1,
        image,
    })
}

impl EmbeddingData {
    pub fn family(&self, f: Family) -> impl Iterator<Item = &Polynomial> + '_ {
        self.s1.iter().filter(move |(g, _)| *g == f).map(|(_, p)| p)
    }

    pub fn family_size(&self, f: Family) -> usize {
        self.family(f).count()
    }

    pub fn rules(&self) -> Vec<Polynomial> {
        self.s1.iter().map(|(_, f)| f.clone()).collect()
    }

    /// The image of a source monomial: `x_i ↦ a(b^i)`, Y part unchanged.
    pub fn map_monomial(&self, m: &NMonomial) -> NMonomial {
        NMonomial::new(m.y.clone(), m.x.map_leaves(&|r| self.image[r as usize].clone()))
    }
}

/// Compositions `i∧j` between two families. For X-inclusions `i` is the
/// family of the outer rule; for Y-intersections, of the rule whose leading
/// word sits leftmost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTally {
    pub first: Family,
    pub second: Family,
    pub kind: AmbiguityKind,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCompositionReport {
    pub families: Vec<FamilyTally>,
    pub shape_bound: ShapeBound,
    /// Number of source generators the `a(b^i)` family was instantiated for.
    pub truncated_to: usize,
    pub passed: bool,
}

impl EmbeddingCompositionReport {
    pub fn family(&self, first: Family, second: Family) -> impl Iterator<Item = &FamilyTally> + '_ {
        self.families
            .iter()
            .filter(move |t| t.first == first && t.second == second)
    }
}

pub fn check_embedding_compositions(
    e: &EmbeddingData,
    config: &CompletionConfig,
) -> Result<EmbeddingCompositionReport> {
    let rules = e.rules();
    let report = is_gsb(&e.target.ctx, &rules, config)?;
    let mut merged: BTreeMap<(Family, Family, AmbiguityKind), FamilyTally> = BTreeMap::new();
    for t in report.tallies {
        let (first, second) = (e.s1[t.first].0, e.s1[t.second].0);
        let entry = merged.entry((first, second, t.kind)).or_insert_with(|| FamilyTally {
            first,
            second,
            kind: t.kind,
            checked: 0,
            failures: Vec::new(),
        });
        entry.checked += t.checked;
        entry.failures.extend(t.failures);
    }
    Ok(EmbeddingCompositionReport {
        families: merged.into_values().collect(),
        shape_bound: config.shape_bound,
        truncated_to: e.image.len(),
        passed: report.is_gsb,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityReport {
    pub degree_bound: u32,
    /// Irreducible source monomials with the normal forms of their images.
    pub images: Vec<(NMonomial, Polynomial)>,
    pub all_nonzero: bool,
    pub pairwise_distinct: bool,
}

impl InjectivityReport {
    pub fn passed(&self) -> bool {
        self.all_nonzero && self.pairwise_distinct
    }
}

pub fn check_injectivity(e: &EmbeddingData, degree_bound: u32, config: &CompletionConfig) -> Result<InjectivityReport> {
    let rules = e.rules();
    if !is_gsb(&e.source.ctx, &e.source_basis, config)?.is_gsb || !is_gsb(&e.target.ctx, &rules, config)?.is_gsb {
        return Err(Error::NotGsb);
    }
    Ok(injectivity_unchecked(e, &rules, degree_bound))
}

/// The injectivity window without re-establishing the basis property.
pub fn injectivity_unchecked(e: &EmbeddingData, rules: &[Polynomial], degree_bound: u32) -> InjectivityReport {
    let images: Vec<(NMonomial, Polynomial)> = irr_members(&e.source.ctx, &e.source_basis, degree_bound)
        .into_iter()
        .map(|m| {
            let nf = normal_form(&Polynomial::monomial(e.map_monomial(&m)), rules);
            (m, nf)
        })
        .collect();
    let all_nonzero = images.iter().all(|(_, nf)| !nf.is_zero());
    let mut keys: Vec<Vec<_>> = images.iter().map(|(_, nf)| nf.terms().collect()).collect();
    keys.sort();
    keys.dedup();
    InjectivityReport {
        degree_bound,
        pairwise_distinct: keys.len() == images.len(),
        all_nonzero,
        images,
    }
}
