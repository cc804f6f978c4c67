//! Star-words (one-hole contexts), subtree occurrence search and s-word
//! substitution `u|_s`.

use std::fmt;

use crate::algebra::{NMonomial, Polynomial, XKind, XTerm, YMonomial};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// Address of a subtree: the sequence of child choices from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(pub Vec<Side>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, side: Side) -> Path {
        let mut p = self.0.clone();
        p.push(side);
        Path(p)
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.starts_with(&self.0)
    }
}

/// Subtree of `host` at `path`.
pub fn subterm<'a>(host: &'a XTerm, path: &Path) -> Option<&'a XTerm> {
    let mut t = host;
    for side in &path.0 {
        let (l, r) = t.children()?;
        t = match side {
            Side::Left => l,
            Side::Right => r,
        };
    }
    Some(t)
}

/// One step down the spine: the hole continues on `side`, and `sibling` is
/// the subtree on the other side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub side: Side,
    pub sibling: XTerm,
}

/// A star-word `u^Y (a ⋆ b)`: a Y-cofactor and an X-word with one hole.
///
/// Stored as the root-to-hole spine, which makes plugging and equality
/// independent of whatever the hole used to contain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StarContext {
    pub y: YMonomial,
    spine: Vec<Step>,
}

impl StarContext {
    pub fn identity() -> Self {
        StarContext {
            y: YMonomial::one(),
            spine: Vec::new(),
        }
    }

    pub fn from_spine(y: YMonomial, spine: Vec<Step>) -> Self {
        StarContext { y, spine }
    }

    /// The context obtained by cutting `host` at `path`.
    pub fn from_host(y: YMonomial, host: &XTerm, path: &Path) -> Option<Self> {
        let mut spine = Vec::with_capacity(path.0.len());
        let mut t = host;
        for &side in &path.0 {
            let (l, r) = t.children()?;
            let (next, sibling) = match side {
                Side::Left => (l, r),
                Side::Right => (r, l),
            };
            spine.push(Step {
                side,
                sibling: sibling.clone(),
            });
            t = next;
        }
        Some(StarContext { y, spine })
    }

    pub fn spine(&self) -> &[Step] {
        &self.spine
    }

    pub fn path(&self) -> Path {
        Path(self.spine.iter().map(|s| s.side).collect())
    }

    /// Number of generator leaves outside the hole.
    pub fn frame_degree(&self) -> u32 {
        self.spine.iter().map(|s| s.sibling.degree()).sum()
    }

    pub fn with_y(mut self, y: YMonomial) -> Self {
        self.y = y;
        self
    }

    pub fn scale_y(&self, t: &YMonomial) -> Self {
        StarContext {
            y: self.y.mul(t),
            spine: self.spine.clone(),
        }
    }

    /// `self[inner[⋆]]`: the hole of `self` is filled by `inner`.
    pub fn compose(&self, inner: &StarContext) -> StarContext {
        let mut spine = self.spine.clone();
        spine.extend(inner.spine.iter().cloned());
        StarContext {
            y: self.y.mul(&inner.y),
            spine,
        }
    }

    /// Fills the hole of the X-frame; the Y-cofactor is not involved.
    pub fn plug(&self, t: &XTerm) -> XTerm {
        self.spine.iter().rev().fold(t.clone(), |acc, step| match step.side {
            Side::Left => XTerm::node(acc, step.sibling.clone()),
            Side::Right => XTerm::node(step.sibling.clone(), acc),
        })
    }

    pub fn plug_monomial(&self, m: &NMonomial) -> NMonomial {
        NMonomial::new(m.y.mul(&self.y), self.plug(&m.x))
    }

    /// `u|_p`, linear in `p`.
    pub fn substitute(&self, p: &Polynomial) -> Polynomial {
        p.terms()
            .map(|(m, c)| (self.plug_monomial(m), c.clone()))
            .collect()
    }
}

impl fmt::Debug for StarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn show(spine: &[Step], f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match spine.split_first() {
                None => write!(f, "⋆"),
                Some((step, rest)) => {
                    write!(f, "(")?;
                    match step.side {
                        Side::Left => {
                            show(rest, f)?;
                            write!(f, " {:?})", step.sibling)
                        }
                        Side::Right => {
                            write!(f, "{:?} ", step.sibling)?;
                            show(rest, f)?;
                            write!(f, ")")
                        }
                    }
                }
            }
        }
        if !self.y.is_one() {
            write!(f, "{:?} ", self.y)?;
        }
        show(&self.spine, f)
    }
}

pub fn substitute(c: &StarContext, p: &Polynomial) -> Polynomial {
    c.substitute(p)
}

/// All paths at which `pattern` occurs in `host`, in preorder.
pub fn occurrences(pattern: &XTerm, host: &XTerm) -> Vec<Path> {
    fn walk(pattern: &XTerm, t: &XTerm, path: &mut Vec<Side>, out: &mut Vec<Path>) {
        if t.degree() < pattern.degree() {
            return;
        }
        if t.degree() == pattern.degree() {
            if t == pattern {
                out.push(Path(path.clone()));
            }
            return;
        }
        if let XKind::Node(l, r) = t.kind() {
            path.push(Side::Left);
            walk(pattern, l, path, out);
            path.pop();
            path.push(Side::Right);
            walk(pattern, r, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    walk(pattern, host, &mut Vec::new(), &mut out);
    out
}

/// First occurrence of `pattern` in `host` in preorder.
pub fn first_occurrence(pattern: &XTerm, host: &XTerm) -> Option<Path> {
    fn walk(pattern: &XTerm, t: &XTerm, path: &mut Vec<Side>) -> bool {
        if t.degree() < pattern.degree() {
            return false;
        }
        if t.degree() == pattern.degree() {
            return t == pattern;
        }
        let Some((l, r)) = t.children() else {
            return false;
        };
        path.push(Side::Left);
        if walk(pattern, l, path) {
            return true;
        }
        *path.last_mut().unwrap() = Side::Right;
        if walk(pattern, r, path) {
            return true;
        }
        path.pop();
        false
    }
    let mut path = Vec::new();
    walk(pattern, host, &mut path).then_some(Path(path))
}

/// An s-word `u|_s` with `s != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SWord {
    pub context: StarContext,
    pub body: Polynomial,
}

impl SWord {
    pub fn new(context: StarContext, body: Polynomial) -> Result<Self> {
        if body.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(SWord { context, body })
    }

    pub fn expand(&self) -> Polynomial {
        self.context.substitute(&self.body)
    }

    /// `u|_{s̄}`, the leading monomial of the s-word.
    pub fn leading(&self) -> NMonomial {
        let lead = self.body.leading_monomial().expect("SWord body is nonzero");
        let cheap = self.context.plug_monomial(lead);
        debug_assert_eq!(
            Some(&cheap),
            self.expand().leading_monomial().ok(),
            "leading term must commute with substitution"
        );
        cheap
    }
}

pub fn sword_leading(u: &SWord) -> Result<NMonomial> {
    if u.body.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(u.leading())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{arb_poly, arb_xterm, arb_ymono, mx, n, poly, x};
    use crate::enumerate::xterms_of_degree;
    use proptest::prelude::*;

    fn ctx_at(y: YMonomial, host: XTerm, path: &[Side]) -> StarContext {
        StarContext::from_host(y, &host, &Path(path.to_vec())).unwrap()
    }

    #[test]
    fn substitute_examples() {
        use Side::*;
        let c = ctx_at(YMonomial::one(), n(x(9), x(1)), &[Left]);
        assert_eq!(
            substitute(&c, &poly(&[(1, mx(x(0)))])),
            poly(&[(1, mx(n(x(0), x(1))))])
        );

        let y1 = YMonomial::var(0);
        let c = ctx_at(y1.clone(), n(n(x(2), x(9)), x(1)), &[Left, Right]);
        let p = poly(&[(1, mx(x(0))), (-1, mx(x(3)))]);
        assert_eq!(
            substitute(&c, &p),
            poly(&[
                (1, NMonomial::new(y1.clone(), n(n(x(2), x(0)), x(1)))),
                (-1, NMonomial::new(y1, n(n(x(2), x(3)), x(1)))),
            ])
        );

        let f = poly(&[(2, mx(n(x(0), x(1)))), (-1, mx(x(2)))]);
        assert_eq!(substitute(&StarContext::identity(), &f), f);
        assert!(substitute(&c, &Polynomial::zero()).is_zero());
    }

    #[test]
    fn occurrences_examples() {
        use Side::*;
        let host = n(n(x(0), x(0)), x(0));
        assert_eq!(occurrences(&n(x(0), x(0)), &host), vec![Path(vec![Left])]);
        assert_eq!(
            occurrences(&x(0), &n(x(0), x(0))),
            vec![Path(vec![Left]), Path(vec![Right])]
        );
        assert!(occurrences(&n(x(1), x(2)), &x(0)).is_empty());
        assert_eq!(occurrences(&host, &host), vec![Path::root()]);
        assert_eq!(first_occurrence(&x(0), &host), Some(Path(vec![Left, Left])));
        assert_eq!(first_occurrence(&x(1), &host), None);
    }

    #[test]
    fn sword_leading_examples() {
        use Side::*;
        let c = ctx_at(YMonomial::one(), n(x(9), x(1)), &[Left]);
        let s = SWord::new(c, poly(&[(1, mx(x(0))), (1, mx(x(2)))])).unwrap();
        assert_eq!(sword_leading(&s).unwrap(), mx(n(x(0), x(1))));

        let c = StarContext::identity().with_y(YMonomial::var(0));
        let s = SWord::new(c, poly(&[(1, mx(x(0)))])).unwrap();
        assert_eq!(sword_leading(&s).unwrap(), NMonomial::new(YMonomial::var(0), x(0)));

        let c = ctx_at(YMonomial::one(), n(x(2), x(9)), &[Right]);
        let s = SWord::new(c, poly(&[(1, mx(n(x(0), x(1)))), (-1, mx(x(0)))])).unwrap();
        assert_eq!(sword_leading(&s).unwrap(), mx(n(x(2), n(x(0), x(1)))));

        assert!(SWord::new(StarContext::identity(), Polynomial::zero()).is_err());
    }

    #[test]
    fn host_and_spine_round_trip() {
        use Side::*;
        let host = n(n(x(0), x(1)), n(x(2), x(0)));
        for path in [vec![], vec![Left], vec![Right, Left], vec![Left, Right]] {
            let p = Path(path);
            let c = StarContext::from_host(YMonomial::one(), &host, &p).unwrap();
            assert_eq!(c.path(), p);
            assert_eq!(c.plug(subterm(&host, &p).unwrap()), host);
        }
        assert!(StarContext::from_host(YMonomial::one(), &x(0), &Path(vec![Left])).is_none());
    }

    fn all_subterm_paths(t: &XTerm) -> Vec<(Path, XTerm)> {
        let mut out = vec![(Path::root(), t.clone())];
        if let Some((l, r)) = t.children() {
            for (p, s) in all_subterm_paths(l) {
                let mut v = vec![Side::Left];
                v.extend(p.0);
                out.push((Path(v), s));
            }
            for (p, s) in all_subterm_paths(r) {
                let mut v = vec![Side::Right];
                v.extend(p.0);
                out.push((Path(v), s));
            }
        }
        out
    }

    #[test]
    fn occurrences_agree_with_brute_force() {
        // Every host of degree <= 5 over 2 generators, every pattern of degree <= 3.
        let patterns: Vec<XTerm> = (1..=3).flat_map(|d| xterms_of_degree(2, d)).collect();
        for d in 1..=5 {
            for host in xterms_of_degree(2, d) {
                let subs = all_subterm_paths(&host);
                for pat in &patterns {
                    let expected: Vec<Path> = subs
                        .iter()
                        .filter(|(_, s)| s == pat)
                        .map(|(p, _)| p.clone())
                        .collect();
                    assert_eq!(occurrences(pat, &host), expected);
                    assert_eq!(first_occurrence(pat, &host), expected.first().cloned());
                }
            }
        }
    }

    fn arb_context() -> impl Strategy<Value = StarContext> {
        (arb_ymono(2, 2), arb_xterm(3, 5), any::<u64>()).prop_map(|(y, host, seed)| {
            let subs = all_subterm_paths(&host);
            let (path, _) = &subs[(seed % subs.len() as u64) as usize];
            StarContext::from_host(y, &host, path).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn leading_term_commutes_with_substitution(c in arb_context(), s in arb_poly(3, 2)) {
            prop_assume!(!s.is_zero());
            let expanded = c.substitute(&s);
            let lead = expanded.leading_monomial().unwrap().clone();
            prop_assert_eq!(lead, c.plug_monomial(s.leading_monomial().unwrap()));
        }

        #[test]
        fn occurrences_are_disjoint_or_nested(host in arb_xterm(2, 6), a in arb_xterm(2, 3), b in arb_xterm(2, 3)) {
            for p in occurrences(&a, &host) {
                for q in occurrences(&b, &host) {
                    let nested = p.is_prefix_of(&q) || q.is_prefix_of(&p);
                    let disjoint = p.0.iter().zip(&q.0).any(|(x, y)| x != y);
                    prop_assert!(nested ^ disjoint);
                }
            }
        }
    }
}
