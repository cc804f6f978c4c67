//! Deg-lex orderings on `[Y]` and `X**`, and the X-dominant product
//! ordering on `N = [Y]X**`.
//!
//! Generator identity is the rank inside its alphabet, so the orderings are
//! plain `Ord` impls; [`OrderContext`] carries the alphabets (names and
//! declared order) alongside them.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::algebra::{Generator, NMonomial, XKind, XTerm, YMonomial};
use crate::error::{Error, Result};

impl Ord for YMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (self.exponents(), other.exponents());
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(ga, ea)), Some(&(gb, eb))) => {
                        if ga < gb {
                            return Ordering::Greater;
                        }
                        if ga > gb {
                            return Ordering::Less;
                        }
                        match ea.cmp(&eb) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            ord => return ord,
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for YMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for XTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.ptr_eq(other) {
            return Ordering::Equal;
        }
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match (self.kind(), other.kind()) {
            // Rank 0 is the largest generator.
            (XKind::Leaf(a), XKind::Leaf(b)) => b.cmp(a),
            (XKind::Node(l1, r1), XKind::Node(l2, r2)) => l1.cmp(l2).then_with(|| r1.cmp(r2)),
            _ => unreachable!("equal degree implies equal leaf/node kind"),
        }
    }
}

impl PartialOrd for XTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }
}

impl PartialOrd for NMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An ordered set of generator names. Position is rank; rank 0 is largest.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alpha = Alphabet::default();
        for name in names {
            alpha.push(name.into())?;
        }
        Ok(alpha)
    }

    /// Appends a generator below all existing ones.
    pub fn push(&mut self, name: String) -> Result<u32> {
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateGenerator(name));
        }
        let rank = self.names.len() as u32;
        self.index.insert(name.clone(), rank);
        self.names.push(name);
        Ok(rank)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn rank(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn name(&self, rank: u32) -> &str {
        &self.names[rank as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.names.iter().enumerate().map(|(r, n)| Generator {
            name: n.clone(),
            rank: r as u32,
        })
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }
}

/// The two declared generator orders `>_X` and `>_Y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderContext {
    pub x: Alphabet,
    pub y: Alphabet,
}

impl OrderContext {
    pub fn new(x: Alphabet, y: Alphabet) -> Result<Self> {
        if let Some(clash) = x.names().iter().find(|n| y.contains(n)) {
            return Err(Error::DuplicateGenerator(clash.clone()));
        }
        Ok(OrderContext { x, y })
    }

    /// Anonymous alphabets `x1 > x2 > ...` and `y1 > y2 > ...`.
    pub fn standard(x_gens: usize, y_gens: usize) -> Self {
        OrderContext {
            x: Alphabet::new((1..=x_gens).map(|i| format!("x{i}"))).unwrap(),
            y: Alphabet::new((1..=y_gens).map(|i| format!("y{i}"))).unwrap(),
        }
    }

    pub fn x_gens(&self) -> u32 {
        self.x.len() as u32
    }

    pub fn y_gens(&self) -> u32 {
        self.y.len() as u32
    }

    pub fn cmp_y(&self, u: &YMonomial, v: &YMonomial) -> Ordering {
        u.cmp(v)
    }

    pub fn cmp_x(&self, u: &XTerm, v: &XTerm) -> Ordering {
        u.cmp(v)
    }

    pub fn cmp_n(&self, u: &NMonomial, v: &NMonomial) -> Ordering {
        u.cmp(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{arb_nmono, arb_ymono, mx, n, x};
    use crate::enumerate::monomials_up_to;
    use proptest::prelude::*;

    fn ctx() -> OrderContext {
        OrderContext::standard(3, 2)
    }

    #[test]
    fn cmp_y_examples() {
        let c = ctx();
        let y1 = YMonomial::var(0);
        let y2 = YMonomial::var(1);
        assert_eq!(c.cmp_y(&YMonomial::power(0, 2), &y1.mul(&y2)), Ordering::Greater);
        assert_eq!(c.cmp_y(&y1, &y1), Ordering::Equal);
        assert_eq!(c.cmp_y(&YMonomial::one(), &y2), Ordering::Less);
        assert_eq!(c.cmp_y(&y1.mul(&y2), &YMonomial::power(1, 2)), Ordering::Greater);
    }

    #[test]
    fn cmp_x_examples() {
        let c = ctx();
        assert_eq!(c.cmp_x(&x(0), &x(1)), Ordering::Greater);
        assert_eq!(c.cmp_x(&n(x(0), x(1)), &x(0)), Ordering::Greater);
        assert_eq!(
            c.cmp_x(&n(n(x(0), x(1)), x(2)), &n(x(0), n(x(1), x(2)))),
            Ordering::Greater
        );
        // Left factor decides before right.
        assert_eq!(c.cmp_x(&n(x(0), x(2)), &n(x(1), x(0))), Ordering::Greater);
    }

    #[test]
    fn cmp_n_examples() {
        let c = ctx();
        let a = NMonomial::new(YMonomial::power(0, 2), x(1));
        assert_eq!(c.cmp_n(&a, &mx(x(0))), Ordering::Less);
        let b = NMonomial::new(YMonomial::var(0), x(0));
        let d = NMonomial::new(YMonomial::var(1), x(0));
        assert_eq!(c.cmp_n(&b, &d), Ordering::Greater);
        assert_eq!(c.cmp_n(&mx(x(0)), &mx(x(0))), Ordering::Equal);
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert!(matches!(
            Alphabet::new(["x1", "x2", "x1"]),
            Err(Error::DuplicateGenerator(_))
        ));
        let x = Alphabet::new(["a"]).unwrap();
        let y = Alphabet::new(["a"]).unwrap();
        assert!(OrderContext::new(x, y).is_err());
    }

    #[test]
    fn bounded_downsets_are_finite_and_exact() {
        // Exhaustive: 2 X-gens, 1 Y-gen, combined degree <= 4.
        let c = OrderContext::standard(2, 1);
        let all = monomials_up_to(&c, 4);
        for m in &all {
            let below: Vec<_> = all
                .iter()
                .filter(|v| v.degree() <= m.degree() && *v < m)
                .collect();
            // The sorted enumeration places exactly these before m.
            let pos = all.iter().position(|v| v == m).unwrap();
            let before = all[..pos].iter().filter(|v| v.degree() <= m.degree()).count();
            assert_eq!(below.len(), before);
        }
        for w in all.windows(2) {
            assert_eq!(w[0].cmp(&w[1]), Ordering::Less);
        }
    }

    proptest! {
        #[test]
        fn y_order_is_total_and_monomial(a in arb_ymono(2, 3), b in arb_ymono(2, 3), t in arb_ymono(2, 2)) {
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
            prop_assert_eq!(a.mul(&t).cmp(&b.mul(&t)), a.cmp(&b));
        }

        #[test]
        fn n_order_is_monomial(u in arb_nmono(3, 2), v in arb_nmono(3, 2), w in arb_nmono(3, 2)) {
            prop_assume!(u != v);
            let (hi, lo) = if u > v { (u, v) } else { (v, u) };
            prop_assert!(w.mul(&hi) > w.mul(&lo));
            prop_assert!(hi.mul(&w) > lo.mul(&w));
            prop_assert!(hi.scale_y(&w.y) > lo.scale_y(&w.y));
        }

        #[test]
        fn n_order_is_transitive(a in arb_nmono(3, 2), b in arb_nmono(3, 2), c in arb_nmono(3, 2)) {
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }
    }
}
