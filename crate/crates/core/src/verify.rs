//! Brute-force linear algebra over bounded-degree slices of an ideal, used
//! to cross-check the rewriting machinery.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Coefficient, NMonomial, Polynomial};
use crate::complete::{is_gsb, CompletionConfig};
use crate::compose::ShapeBound;
use crate::enumerate::{frames_of_degree, monomials_up_to, ymonomials_up_to};
use crate::error::{Error, Result};
use crate::order::OrderContext;
use crate::par;
use crate::reduce::{irr_members, is_reducible};

type Row = BTreeMap<usize, Coefficient>;

/// Echelon basis of `Id(S) ∩ span{monomials of degree <= bound}` as
/// generated by the s-words that fit in the window. Columns follow the
/// monomial order, and each row is monic at its largest column, so the
/// pivot columns are exactly the leading monomials of the slice.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    pub degree_bound: u32,
    monomials: Vec<NMonomial>,
    index: HashMap<NMonomial, usize>,
    pivots: BTreeMap<usize, Row>,
    generators: Vec<Polynomial>,
}

impl SpanBasis {
    fn new(ctx: &OrderContext, degree_bound: u32) -> Self {
        let monomials = monomials_up_to(ctx, degree_bound);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        SpanBasis {
            degree_bound,
            monomials,
            index,
            pivots: BTreeMap::new(),
            generators: Vec::new(),
        }
    }

    fn to_row(&self, f: &Polynomial) -> Result<Row> {
        let mut row = Row::new();
        for (m, c) in f.terms() {
            let col = self.index.get(m).ok_or(Error::DegreeOverflow {
                degree: m.degree(),
                bound: self.degree_bound,
            })?;
            row.insert(*col, c.clone());
        }
        Ok(row)
    }

    fn to_polynomial(&self, row: &Row) -> Polynomial {
        row.iter()
            .map(|(&c, v)| (self.monomials[c].clone(), v.clone()))
            .collect()
    }

    /// Eliminates against the pivots. Returns the leftover row, empty iff
    /// the input lies in the span.
    fn eliminate(&self, mut row: Row) -> Row {
        while let Some((&col, v)) = row.last_key_value() {
            let Some(pivot) = self.pivots.get(&col) else {
                break;
            };
            let v = v.clone();
            for (&c, pv) in pivot {
                let entry = row.entry(c).or_insert_with(Coefficient::zero);
                *entry -= &v * pv;
                if entry.is_zero() {
                    row.remove(&c);
                }
            }
        }
        row
    }

    fn insert(&mut self, row: Row) {
        let mut row = self.eliminate(row);
        if let Some((&col, lead)) = row.last_key_value() {
            let inv = Coefficient::one() / lead;
            for v in row.values_mut() {
                *v *= &inv;
            }
            self.pivots.insert(col, row);
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn monomials(&self) -> &[NMonomial] {
        &self.monomials
    }

    /// Leading monomials of nonzero slice elements, ascending.
    pub fn pivot_monomials(&self) -> Vec<NMonomial> {
        self.pivots.keys().map(|&c| self.monomials[c].clone()).collect()
    }

    /// The s-words the span was generated from.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The echelon rows as polynomials, by ascending leading monomial.
    pub fn rows(&self) -> Vec<Polynomial> {
        self.pivots.values().map(|r| self.to_polynomial(r)).collect()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        let row = self.to_row(f)?;
        Ok(self.eliminate(row).is_empty())
    }
}

/// Every polynomial `u|_s` with `s` in `rules` whose monomials all have
/// degree `<= bound`, in a fixed order.
pub fn swords_within(ctx: &OrderContext, rules: &[Polynomial], bound: u32) -> Vec<Polynomial> {
    let mut tasks = Vec::new();
    for (i, s) in rules.iter().enumerate() {
        let d = s.max_degree();
        if s.is_zero() || d > bound {
            continue;
        }
        for k in 0..=bound - d {
            for frame in frames_of_degree(ctx.x_gens(), k) {
                tasks.push((i, frame, bound - d - k));
            }
        }
    }
    par::flat_map(&tasks, |(i, frame, room)| {
        ymonomials_up_to(ctx.y_gens(), *room)
            .into_iter()
            .map(|y| frame.clone().with_y(y).substitute(&rules[*i]))
            .collect()
    })
}

pub fn ideal_span(ctx: &OrderContext, rules: &[Polynomial], degree_bound: u32) -> SpanBasis {
    let mut span = SpanBasis::new(ctx, degree_bound);
    let generators = swords_within(ctx, rules, degree_bound);
    for g in &generators {
        let row = span.to_row(g).expect("s-words are generated within the bound");
        span.insert(row);
    }
    span.generators = generators;
    span
}

pub fn membership(f: &Polynomial, span: &SpanBasis) -> Result<bool> {
    span.contains(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdReport {
    pub degree_bound: u32,
    pub shape_bound: ShapeBound,
    /// Every composition reduces to zero.
    pub gsb: bool,
    /// Every nonzero element of the slice has a reducible leading monomial.
    pub leading_reducible: bool,
    /// First slice element found with an irreducible leading monomial.
    pub leading_witness: Option<Polynomial>,
    pub rank: usize,
    pub irreducible: usize,
    pub total: usize,
    /// Every rule's terms stay at or below its leading degree, so the
    /// s-words inside the window generate the whole slice.
    pub window_exact: bool,
}

impl CdReport {
    /// `rank + |Irr| = total`.
    pub fn dimension_identity(&self) -> bool {
        self.rank + self.irreducible == self.total
    }

    pub fn all_equal(&self) -> bool {
        self.gsb == self.leading_reducible && self.leading_reducible == self.dimension_identity()
    }

    /// What must hold at any bound: a basis always passes the leading-term
    /// test, and on an exact window the leading-term test and the dimension
    /// identity coincide. A basis failing only above the bound may pass the
    /// other two.
    pub fn consistent(&self) -> bool {
        (!self.gsb || self.leading_reducible)
            && (!self.window_exact || self.leading_reducible == self.dimension_identity())
    }
}

pub fn check_cd_equivalence(
    ctx: &OrderContext,
    rules: &[Polynomial],
    degree_bound: u32,
    shape_bound: ShapeBound,
    seed: u64,
) -> Result<CdReport> {
    let rules: Vec<Polynomial> = rules.iter().map(|r| r.make_monic()).collect::<Result<_>>()?;
    let config = CompletionConfig {
        shape_bound,
        ..Default::default()
    };
    let gsb = is_gsb(ctx, &rules, &config)?.is_gsb;
    let span = ideal_span(ctx, &rules, degree_bound);

    let mut witness = span
        .rows()
        .into_iter()
        .find(|r| !is_reducible(r.leading_monomial().unwrap(), &rules));
    let gens = span.generators();
    if witness.is_none() && !gens.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let mut f = Polynomial::zero();
            for _ in 0..rng.gen_range(1..=4) {
                let g = &gens[rng.gen_range(0..gens.len())];
                let mut c = rng.gen_range(-5i64..=5);
                if c == 0 {
                    c = 1;
                }
                f.add_assign_scaled(g, &Coefficient::from_integer(c.into()));
            }
            if let Ok(m) = f.leading_monomial() {
                if !is_reducible(m, &rules) {
                    witness = Some(f);
                    break;
                }
            }
        }
    }

    Ok(CdReport {
        degree_bound,
        shape_bound,
        gsb,
        leading_reducible: witness.is_none(),
        leading_witness: witness,
        rank: span.rank(),
        irreducible: irr_members(ctx, &rules, degree_bound).len(),
        total: span.monomials().len(),
        window_exact: rules.iter().all(|r| r.is_degree_compatible()),
    })
}
