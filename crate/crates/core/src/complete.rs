//! Shirshov completion: saturate a rule set with the reduced remainders of
//! its nontrivial compositions, within explicit degree and shape bounds.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{CPolynomial, NMonomial, Polynomial};
use crate::compose::{for_each_composition, Ambiguity, AmbiguityKind, ShapeBound};
use crate::error::{Error, Result};
use crate::order::OrderContext;
use crate::par;
use crate::reduce::{is_reducible, normal_form};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletionConfig {
    /// New rules whose leading monomial has combined degree above this are
    /// discarded and reported.
    pub max_deg: usize,
    pub shape_bound: ShapeBound,
    pub interreduce: bool,
}

impl Default for CompletionConfig {
    fn default() -> Self {
        CompletionConfig {
            max_deg: 6,
            shape_bound: ShapeBound::Minimal,
            interreduce: true,
        }
    }
}

impl CompletionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_deg < 1 {
            return Err(Error::InvalidConfig("max-deg must be at least 1".into()));
        }
        if let ShapeBound::AtMost(n) = self.shape_bound {
            if n < 2 {
                return Err(Error::InvalidConfig("shape-bound must be at least 2".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionStatus {
    Complete,
    BoundReached,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionReport {
    /// Monic rules sorted by ascending leading monomial.
    pub basis: Vec<Polynomial>,
    pub status: CompletionStatus,
    pub pairs_processed: usize,
    pub rules_added: usize,
    pub discarded_over_bound: Vec<NMonomial>,
    pub config: CompletionConfig,
}

/// Compositions of one kind between `first` and `second`. For X-inclusions
/// `first` is the outer rule; for Y-intersections it is the rule whose
/// leading word sits leftmost in the ambiguity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTally {
    pub first: usize,
    pub second: usize,
    pub kind: AmbiguityKind,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub f: usize,
    pub g: usize,
    pub ambiguity: Ambiguity,
    pub remainder: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GsbReport {
    pub is_gsb: bool,
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub tallies: Vec<PairTally>,
    pub shape_bound: ShapeBound,
}

/// Unordered rule pairs `(i, j)` with `i <= j` and the compositions they own:
/// both X-inclusion directions and the Y-intersections.
fn pair_compositions(
    rules: &[Polynomial],
    i: usize,
    j: usize,
    shape: ShapeBound,
    x_gens: u32,
    mut visit: impl FnMut(usize, usize, crate::compose::CompositionResult),
) -> Result<()> {
    let (f, g) = (&rules[i], &rules[j]);
    if i != j {
        for_each_composition(f, g, true, false, shape, x_gens, |c| visit(i, j, c))?;
        for_each_composition(g, f, true, false, shape, x_gens, |c| visit(j, i, c))?;
    }
    for_each_composition(f, g, false, true, shape, x_gens, |c| visit(i, j, c))
}

/// Checks every composition among `rules` by reduction to zero.
pub fn is_gsb(ctx: &OrderContext, rules: &[Polynomial], config: &CompletionConfig) -> Result<GsbReport> {
    for r in rules {
        if !r.is_monic() {
            return Err(if r.is_zero() { Error::ZeroPolynomial } else { Error::NotMonic });
        }
    }
    let pairs: Vec<(usize, usize)> = (0..rules.len())
        .flat_map(|i| (i..rules.len()).map(move |j| (i, j)))
        .collect();
    let per_pair = par::map(&pairs, |&(i, j)| {
        let mut tallies: BTreeMap<(usize, usize, AmbiguityKind), PairTally> = BTreeMap::new();
        pair_compositions(rules, i, j, config.shape_bound, ctx.x_gens(), |f, g, c| {
            let kind = c.ambiguity.kind;
            let (first, second) = if c.ambiguity.f_first() { (f, g) } else { (g, f) };
            let tally = tallies.entry((first, second, kind)).or_insert_with(|| PairTally {
                first,
                second,
                kind,
                checked: 0,
                failures: Vec::new(),
            });
            tally.checked += 1;
            if c.value.is_zero() {
                return;
            }
            let remainder = normal_form(&c.value, rules);
            if !remainder.is_zero() {
                tally.failures.push(Failure {
                    f,
                    g,
                    ambiguity: c.ambiguity,
                    remainder,
                });
            }
        })
        .map(|_| tallies)
    });
    let mut merged: BTreeMap<(usize, usize, AmbiguityKind), PairTally> = BTreeMap::new();
    for tallies in per_pair {
        for (key, t) in tallies? {
            match merged.get_mut(&key) {
                Some(m) => {
                    m.checked += t.checked;
                    m.failures.extend(t.failures);
                }
                None => {
                    merged.insert(key, t);
                }
            }
        }
    }
    let tallies: Vec<PairTally> = merged.into_values().collect();
    let mut failures: Vec<Failure> = tallies.iter().flat_map(|t| t.failures.iter().cloned()).collect();
    failures.sort_by(|a, b| {
        a.ambiguity
            .w
            .cmp(&b.ambiguity.w)
            .then_with(|| (a.f, a.g).cmp(&(b.f, b.g)))
            .then_with(|| a.ambiguity.g_placement.path().cmp(&b.ambiguity.g_placement.path()))
            .then_with(|| a.ambiguity.f_placement.path().cmp(&b.ambiguity.f_placement.path()))
    });
    Ok(GsbReport {
        is_gsb: failures.is_empty(),
        checked: tallies.iter().map(|t| t.checked).sum(),
        failures,
        tallies,
        shape_bound: config.shape_bound,
    })
}

struct Completion<'a> {
    ctx: &'a OrderContext,
    config: CompletionConfig,
    rules: Vec<Polynomial>,
    ids: Vec<u64>,
    next_id: u64,
    pending: BTreeSet<(u64, u64)>,
    discarded: Vec<NMonomial>,
    started: bool,
    dirty: bool,
}

impl Completion<'_> {
    fn remove(&mut self, idx: usize) -> Polynomial {
        let id = self.ids.remove(idx);
        self.pending.retain(|&(a, b)| a != id && b != id);
        if self.started {
            self.dirty = true;
        }
        self.rules.remove(idx)
    }

    /// Inserts `p` (and whatever interreduction knocks loose). Returns
    /// whether `p` itself became a rule. Only a `bounded` `p` is subject to
    /// the degree cap; rules already in the basis never are.
    fn insert(&mut self, p: Polynomial, bounded: bool) -> bool {
        let mut work = vec![(p, true)];
        let mut inserted_first = false;
        while let Some((p, is_first)) = work.pop() {
            let p = if self.config.interreduce {
                normal_form(&p, &self.rules)
            } else {
                p
            };
            if p.is_zero() {
                continue;
            }
            let p = p.make_monic().unwrap();
            let lead = p.leading_monomial().unwrap().clone();
            if bounded && is_first && lead.degree() as usize > self.config.max_deg {
                self.discarded.push(lead);
                continue;
            }
            if self.rules.contains(&p) {
                continue;
            }
            if self.config.interreduce {
                let single = std::slice::from_ref(&p);
                let mut i = 0;
                while i < self.rules.len() {
                    if is_reducible(self.rules[i].leading_monomial().unwrap(), single) {
                        let old = self.remove(i);
                        work.push((old, false));
                    } else {
                        i += 1;
                    }
                }
            }
            let pos = self
                .rules
                .partition_point(|r| r.leading_monomial().unwrap() <= &lead);
            let id = self.next_id;
            self.next_id += 1;
            for &other in &self.ids {
                self.pending.insert((other, id));
            }
            self.pending.insert((id, id));
            self.rules.insert(pos, p);
            self.ids.insert(pos, id);
            inserted_first |= is_first;
        }
        inserted_first
    }

    fn index_of(&self, id: u64) -> Option<usize> {
        self.ids.iter().position(|&i| i == id)
    }

    /// Rewrites each tail to normal form. A rule cannot rewrite its own
    /// strictly smaller tail, so reducing against the whole basis is safe.
    fn tail_reduce(&mut self) {
        let mut i = 0;
        while i < self.rules.len() {
            let r = &self.rules[i];
            let mut tail = r.clone();
            let (lead, lc) = tail.pop_leading().unwrap();
            let mut reduced = normal_form(&tail, &self.rules);
            reduced.add_term(lead, lc);
            if &reduced != r {
                self.remove(i);
                self.insert(reduced, false);
                i = 0;
            } else {
                i += 1;
            }
        }
    }
}

pub fn shirshov_complete(
    ctx: &OrderContext,
    input: &[Polynomial],
    config: &CompletionConfig,
) -> Result<CompletionReport> {
    config.validate()?;
    let mut monic = Vec::with_capacity(input.len());
    for p in input {
        monic.push(p.make_monic()?);
    }
    monic.sort_by(|a, b| a.leading_monomial().unwrap().cmp(b.leading_monomial().unwrap()));

    let mut state = Completion {
        ctx,
        config: *config,
        rules: Vec::new(),
        ids: Vec::new(),
        next_id: 0,
        pending: BTreeSet::new(),
        discarded: Vec::new(),
        started: false,
        dirty: false,
    };
    for p in monic {
        state.insert(p, false);
    }
    state.started = true;

    let mut pairs_processed = 0;
    let mut rules_added = 0;
    loop {
        while !state.pending.is_empty() {
            let pairs: Vec<(u64, u64)> = std::mem::take(&mut state.pending).into_iter().collect();
            pairs_processed += pairs.len();
            let snapshot = state.rules.clone();
            let index: Vec<(usize, usize)> = pairs
                .iter()
                .filter_map(|&(a, b)| Some((state.index_of(a)?, state.index_of(b)?)))
                .collect();
            let x_gens = state.ctx.x_gens();
            let shape = state.config.shape_bound;
            let found = par::flat_map(&index, |&(i, j)| {
                let (i, j) = (i.min(j), i.max(j));
                let mut out = Vec::new();
                pair_compositions(&snapshot, i, j, shape, x_gens, |f, g, c| {
                    if c.value.is_zero() {
                        return;
                    }
                    let r = normal_form(&c.value, &snapshot);
                    if !r.is_zero() {
                        out.push((c.ambiguity.w, i, j, f, g, r));
                    }
                })
                .expect("basis rules are monic");
                out
            });
            let mut found = found;
            found.sort_by(|a, b| (&a.0, a.1, a.2, a.3, a.4).cmp(&(&b.0, b.1, b.2, b.3, b.4)));
            for (.., remainder) in found {
                let r = normal_form(&remainder, &state.rules);
                if !r.is_zero() && state.insert(r, true) {
                    rules_added += 1;
                }
            }
        }
        if state.config.interreduce {
            state.tail_reduce();
            if !state.pending.is_empty() {
                continue;
            }
        }
        if state.dirty {
            // Rules were removed after their pairs were checked; recheck the
            // surviving basis as a whole.
            state.dirty = false;
            for (k, &a) in state.ids.iter().enumerate() {
                for &b in &state.ids[k..] {
                    state.pending.insert((a.min(b), a.max(b)));
                }
            }
            continue;
        }
        break;
    }

    let status = if state.discarded.is_empty() {
        CompletionStatus::Complete
    } else {
        CompletionStatus::BoundReached
    };
    Ok(CompletionReport {
        basis: state.rules,
        status,
        pairs_processed,
        rules_added,
        discarded_over_bound: state.discarded,
        config: *config,
    })
}

/// Buchberger completion in `k[Y]` under deg-lex, returning the reduced
/// basis sorted by ascending leading monomial.
pub fn complete_commutative(input: &[CPolynomial]) -> Result<Vec<CPolynomial>> {
    let mut basis: Vec<CPolynomial> = Vec::new();
    for p in input {
        basis.push(p.make_monic()?);
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (i + 1..basis.len()).map(move |j| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let (li, lj) = (
            basis[i].leading_monomial()?.clone(),
            basis[j].leading_monomial()?.clone(),
        );
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let mut s = basis[i].scale_monomial(&li.quotient_of(&l).unwrap());
        s.add_assign_scaled(
            &basis[j].scale_monomial(&lj.quotient_of(&l).unwrap()),
            &-crate::algebra::Coefficient::from_integer(1.into()),
        );
        let r = cnormal_form(&s, &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.make_monic()?);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // Minimalize, then tail-reduce.
    let mut minimal: Vec<CPolynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.leading_monomial()?;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.leading_monomial().unwrap();
            j != i && lh.divides(lg) && (lh != lg || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<CPolynomial> = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<CPolynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, h)| h.clone())
            .collect();
        reduced.push(cnormal_form(g, &others));
    }
    reduced.sort_by(|a, b| a.leading_monomial().unwrap().cmp(b.leading_monomial().unwrap()));
    Ok(reduced)
}

/// Full remainder of `f` on division by monic `basis` in `k[Y]`.
pub fn cnormal_form(f: &CPolynomial, basis: &[CPolynomial]) -> CPolynomial {
    let mut work = f.clone();
    let mut rem = CPolynomial::zero();
    while let Some((m, c)) = work.pop_leading() {
        let hit = basis.iter().find_map(|g| {
            let lg = g.leading_monomial().ok()?;
            lg.quotient_of(&m).map(|q| (g, q))
        });
        match hit {
            None => rem.add_term(m, c),
            Some((g, q)) => {
                for (gm, gc) in g.terms().rev().skip(1) {
                    work.add_term(gm.mul(&q), -(&c * gc));
                }
            }
        }
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{mx, n, poly, q, x};
    use crate::algebra::{Coefficient, YMonomial};

    fn cubic() -> Vec<Polynomial> {
        vec![
            poly(&[(1, mx(n(n(x(0), x(0)), x(0)))), (-1, mx(x(1)))]),
            poly(&[(1, mx(n(x(0), x(0)))), (-1, mx(x(2)))]),
        ]
    }

    fn completed_cubic() -> Vec<Polynomial> {
        vec![
            poly(&[(1, mx(n(x(2), x(0)))), (-1, mx(x(1)))]),
            poly(&[(1, mx(n(x(0), x(0)))), (-1, mx(x(2)))]),
        ]
    }

    #[test]
    fn completes_the_cubic_example() {
        let ctx = OrderContext::standard(3, 0);
        let report = shirshov_complete(&ctx, &cubic(), &CompletionConfig::default()).unwrap();
        assert_eq!(report.status, CompletionStatus::Complete);
        assert_eq!(report.basis, completed_cubic());
        assert!(is_gsb(&ctx, &report.basis, &CompletionConfig::default()).unwrap().is_gsb);
    }

    #[test]
    fn completion_without_interreduction_keeps_the_input() {
        let ctx = OrderContext::standard(3, 0);
        let config = CompletionConfig {
            interreduce: false,
            ..Default::default()
        };
        let report = shirshov_complete(&ctx, &cubic(), &config).unwrap();
        assert_eq!(report.status, CompletionStatus::Complete);
        assert_eq!(report.rules_added, 1);
        assert_eq!(report.basis.len(), 3);
        assert!(is_gsb(&ctx, &report.basis, &config).unwrap().is_gsb);
    }

    #[test]
    fn existing_basis_is_unchanged() {
        let ctx = OrderContext::standard(3, 0);
        let s = vec![poly(&[(1, mx(n(x(0), x(0)))), (-1, mx(x(2)))])];
        let report = shirshov_complete(&ctx, &s, &CompletionConfig::default()).unwrap();
        assert_eq!(report.basis, s);
        assert_eq!(report.rules_added, 0);
        assert_eq!(report.status, CompletionStatus::Complete);

        let again = shirshov_complete(&ctx, &completed_cubic(), &CompletionConfig::default()).unwrap();
        assert_eq!(again.basis, completed_cubic());
        assert_eq!(again.rules_added, 0);

        let empty = shirshov_complete(&ctx, &[], &CompletionConfig::default()).unwrap();
        assert!(empty.basis.is_empty());
        assert_eq!(empty.status, CompletionStatus::Complete);
    }

    #[test]
    fn zero_input_is_an_error() {
        let ctx = OrderContext::standard(1, 0);
        assert!(matches!(
            shirshov_complete(&ctx, &[Polynomial::zero()], &CompletionConfig::default()),
            Err(Error::ZeroPolynomial)
        ));
        let bad = CompletionConfig {
            shape_bound: ShapeBound::AtMost(1),
            ..Default::default()
        };
        assert!(shirshov_complete(&ctx, &[], &bad).is_err());
    }

    #[test]
    fn is_gsb_examples() {
        let ctx = OrderContext::standard(3, 0);
        let config = CompletionConfig::default();
        assert!(is_gsb(&ctx, &completed_cubic(), &config).unwrap().is_gsb);
        let report = is_gsb(&ctx, &cubic(), &config).unwrap();
        assert!(!report.is_gsb);
        assert_eq!(report.failures.len(), 1);
        let fail = &report.failures[0];
        assert_eq!(fail.ambiguity.kind, AmbiguityKind::XInclusion);
        assert_eq!(fail.ambiguity.w, mx(n(n(x(0), x(0)), x(0))));
        assert!(is_gsb(&ctx, &[], &config).unwrap().is_gsb);
    }

    fn y_pair() -> Vec<Polynomial> {
        let y1 = YMonomial::var(0);
        vec![
            poly(&[(1, NMonomial::new(y1.clone(), x(0))), (-1, mx(x(1)))]),
            poly(&[(1, NMonomial::new(y1, x(1))), (-1, mx(x(2)))]),
        ]
    }

    #[test]
    fn bound_reached_is_reported() {
        let ctx = OrderContext::standard(3, 1);
        let mut s = y_pair();
        s.push(poly(&[(1, mx(n(x(1), x(0)))), (-1, mx(n(x(0), x(2))))]));
        let config = CompletionConfig {
            max_deg: 2,
            ..Default::default()
        };
        let report = shirshov_complete(&ctx, &s, &config).unwrap();
        assert_eq!(report.status, CompletionStatus::BoundReached);
        assert!(!report.discarded_over_bound.is_empty());
        assert!(report.discarded_over_bound.iter().all(|m| m.degree() > 2));
        assert!(report.basis.iter().all(|r| r.leading_monomial().unwrap().degree() <= 2));

        let wider = CompletionConfig { max_deg: 3, ..config };
        let report = shirshov_complete(&ctx, &s, &wider).unwrap();
        assert_eq!(report.status, CompletionStatus::Complete);
        assert!(is_gsb(&ctx, &report.basis, &wider).unwrap().is_gsb);
    }

    #[test]
    fn y_intersection_drives_completion() {
        let ctx = OrderContext::standard(3, 1);
        let config = CompletionConfig::default();

        // y1 x1 - x2 alone: y1 (x1 x1) is reachable through either factor.
        let single = &y_pair()[..1];
        let report = is_gsb(&ctx, single, &config).unwrap();
        assert!(!report.is_gsb);
        assert_eq!(report.failures[0].ambiguity.kind, AmbiguityKind::YIntersection);
        let done = shirshov_complete(&ctx, single, &config).unwrap();
        assert_eq!(
            done.basis,
            vec![
                single[0].clone(),
                poly(&[(1, mx(n(x(0), x(1)))), (-1, mx(n(x(1), x(0))))]),
            ]
        );

        let report = shirshov_complete(&ctx, &y_pair(), &config).unwrap();
        assert_eq!(report.status, CompletionStatus::Complete);
        assert!(report.rules_added > 0);
        assert!(is_gsb(&ctx, &report.basis, &config).unwrap().is_gsb);
    }

    #[test]
    fn minimal_shapes_do_not_suffice() {
        let ctx = OrderContext::standard(2, 2);
        let (y1, y2) = (YMonomial::var(0), YMonomial::var(1));
        let half = Coefficient::new((-1).into(), 2.into());
        let rule = |x0: u32| {
            let mut f = Polynomial::monomial(NMonomial::new(y1.clone(), x(x0)));
            f.add_term(NMonomial::new(y2.clone(), x(1)), half.clone());
            f
        };
        let s = vec![rule(0), rule(1)];
        let minimal = CompletionConfig::default();
        let padded = CompletionConfig {
            shape_bound: ShapeBound::AtMost(3),
            ..Default::default()
        };
        let basis = shirshov_complete(&ctx, &s, &minimal).unwrap().basis;
        assert!(is_gsb(&ctx, &basis, &minimal).unwrap().is_gsb);
        let report = is_gsb(&ctx, &basis, &padded).unwrap();
        assert!(!report.is_gsb);
        assert!(report.failures.iter().all(|f| f.ambiguity.kind == AmbiguityKind::YIntersection));
        assert!(report.failures.iter().all(|f| f.ambiguity.w.x.degree() == 3));

        let basis = shirshov_complete(&ctx, &s, &padded).unwrap().basis;
        assert!(is_gsb(&ctx, &basis, &padded).unwrap().is_gsb);
    }

    #[test]
    fn commutative_completion() {
        let y = |a: u32, b: u32| YMonomial::from_exponents([(0, a), (1, b)]);
        // y1^2 - y1 is already a basis.
        let g: CPolynomial = [(y(2, 0), q(1)), (y(1, 0), q(-1))].into_iter().collect();
        assert_eq!(complete_commutative(std::slice::from_ref(&g)).unwrap(), vec![g.clone()]);

        // {y1 y2 - y2, y2^2 - y1}: the S-polynomial adds y1^2 ... relations.
        let a: CPolynomial = [(y(1, 1), q(1)), (y(0, 1), q(-1))].into_iter().collect();
        let b: CPolynomial = [(y(0, 2), q(1)), (y(1, 0), q(-1))].into_iter().collect();
        let gb = complete_commutative(&[a.clone(), b.clone()]).unwrap();
        // Every S-polynomial of the result reduces to zero.
        for i in 0..gb.len() {
            for j in i + 1..gb.len() {
                let (li, lj) = (gb[i].leading_monomial().unwrap(), gb[j].leading_monomial().unwrap());
                let l = li.lcm(lj);
                let mut s = gb[i].scale_monomial(&li.quotient_of(&l).unwrap());
                s.add_assign_scaled(&gb[j].scale_monomial(&lj.quotient_of(&l).unwrap()), &q(-1));
                assert!(cnormal_form(&s, &gb).is_zero());
            }
        }
        assert!(cnormal_form(&a, &gb).is_zero());
        assert!(cnormal_form(&b, &gb).is_zero());
    }
}
