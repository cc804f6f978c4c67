//! Reduction modulo a set of monic rules: single rewrites, normal forms,
//! traced decompositions and `Irr(S)`.

use num_traits::Zero;

use crate::algebra::{Coefficient, NMonomial, Polynomial};
use crate::context::{first_occurrence, occurrences, StarContext};
use crate::enumerate::monomials_up_to;
use crate::error::{Error, Result};
use crate::order::OrderContext;
use crate::par;

/// Witness that a monomial equals `u|_{s̄}` for the rule `rules[rule]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reducer {
    pub context: StarContext,
    pub rule: usize,
}

impl Reducer {
    /// The quotient `m^Y / s̄^Y`.
    pub fn cofactor(&self) -> &crate::algebra::YMonomial {
        &self.context.y
    }
}

fn placement(m: &NMonomial, lead: &NMonomial) -> Option<StarContext> {
    let cofactor = lead.y.quotient_of(&m.y)?;
    let path = first_occurrence(&lead.x, &m.x)?;
    StarContext::from_host(cofactor, &m.x, &path)
}

/// First rule (in slice order) with a placement in `m`, at its first
/// occurrence in preorder.
pub fn find_reducer(m: &NMonomial, rules: &[Polynomial]) -> Option<Reducer> {
    rules.iter().enumerate().find_map(|(i, s)| {
        let lead = s.leading_monomial().ok()?;
        placement(m, lead).map(|context| Reducer { context, rule: i })
    })
}

/// Every way of writing `m = u|_{s̄}` with `s` in `rules`.
pub fn all_reducers(m: &NMonomial, rules: &[Polynomial]) -> Vec<Reducer> {
    let mut out = Vec::new();
    for (i, s) in rules.iter().enumerate() {
        let Ok(lead) = s.leading_monomial() else {
            continue;
        };
        let Some(cofactor) = lead.y.quotient_of(&m.y) else {
            continue;
        };
        for path in occurrences(&lead.x, &m.x) {
            let context = StarContext::from_host(cofactor.clone(), &m.x, &path).unwrap();
            out.push(Reducer { context, rule: i });
        }
    }
    out
}

pub fn is_reducible(m: &NMonomial, rules: &[Polynomial]) -> bool {
    rules.iter().any(|s| {
        s.leading_monomial().is_ok_and(|lead| {
            lead.y.divides(&m.y) && first_occurrence(&lead.x, &m.x).is_some()
        })
    })
}

/// `f - α·u|_s` where `α` is the leading coefficient of `f`.
pub fn reduce_once(f: &Polynomial, rules: &[Polynomial]) -> Result<Polynomial> {
    let (lead, lc) = f.leading_term()?;
    let r = find_reducer(lead, rules).ok_or(Error::NotReducible)?;
    let mut out = f.clone();
    out.add_assign_scaled(&r.context.substitute(&rules[r.rule]), &-lc);
    Ok(out)
}

/// Subtracts `c·u|_s` from `work`, skipping the leading term of `s`, which
/// the caller has already removed.
fn rewrite_tail(work: &mut Polynomial, ctx: &StarContext, rule: &Polynomial, c: &Coefficient) {
    for (m, a) in rule.terms().rev().skip(1) {
        work.add_term(ctx.plug_monomial(m), -(c * a));
    }
}

/// Fully reduced form: no monomial of the result is reducible.
pub fn normal_form(f: &Polynomial, rules: &[Polynomial]) -> Polynomial {
    let mut work = f.clone();
    let mut remainder = Polynomial::zero();
    while let Some((m, c)) = work.pop_leading() {
        match find_reducer(&m, rules) {
            None => remainder.add_term(m, c),
            Some(r) => {
                debug_assert!(rules[r.rule].is_monic());
                rewrite_tail(&mut work, &r.context, &rules[r.rule], &c);
            }
        }
    }
    remainder
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub monomial: NMonomial,
    pub reducer: Reducer,
    pub coefficient: Coefficient,
}

/// `f = Σ coefficient·u|_s + remainder`, with the steps in rewrite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub remainder: Polynomial,
}

impl ReductionTrace {
    pub fn replay(&self, rules: &[Polynomial]) -> Polynomial {
        let mut out = self.remainder.clone();
        for step in &self.steps {
            out.add_assign_scaled(
                &step.reducer.context.substitute(&rules[step.reducer.rule]),
                &step.coefficient,
            );
        }
        out
    }
}

pub fn decompose(f: &Polynomial, rules: &[Polynomial]) -> ReductionTrace {
    let mut work = f.clone();
    let mut remainder = Polynomial::zero();
    let mut steps = Vec::new();
    while let Some((m, c)) = work.pop_leading() {
        match find_reducer(&m, rules) {
            None => remainder.add_term(m, c),
            Some(r) => {
                rewrite_tail(&mut work, &r.context, &rules[r.rule], &c);
                steps.push(TraceStep {
                    monomial: m,
                    reducer: r,
                    coefficient: c,
                });
            }
        }
    }
    ReductionTrace { steps, remainder }
}

/// Irreducible monomials of combined degree `<= max_deg`, ascending.
pub fn irr_members(ctx: &OrderContext, rules: &[Polynomial], max_deg: u32) -> Vec<NMonomial> {
    let all = monomials_up_to(ctx, max_deg);
    let keep = par::map(&all, |m| !is_reducible(m, rules));
    all.into_iter()
        .zip(keep)
        .filter_map(|(m, k)| k.then_some(m))
        .collect()
}

/// Normal form with an arbitrary choice among all placements at each step,
/// driven by `pick(m, candidates) -> index`. Used to test confluence.
pub fn normal_form_with(
    f: &Polynomial,
    rules: &[Polynomial],
    mut pick: impl FnMut(&NMonomial, usize) -> usize,
) -> Polynomial {
    let mut work = f.clone();
    let mut remainder = Polynomial::zero();
    while let Some((m, c)) = work.pop_leading() {
        let options = all_reducers(&m, rules);
        if options.is_empty() {
            remainder.add_term(m, c);
            continue;
        }
        let r = &options[pick(&m, options.len()) % options.len()];
        rewrite_tail(&mut work, &r.context, &rules[r.rule], &c);
    }
    debug_assert!(remainder.terms().all(|(_, c)| !c.is_zero()));
    remainder
}
