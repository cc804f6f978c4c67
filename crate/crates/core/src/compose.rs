//! Compositions of X-inclusion and of Y-intersection only, and the
//! reduction-to-zero triviality test.

use std::fmt;

use crate::algebra::{NMonomial, Polynomial, XTerm, YMonomial};
use crate::context::{occurrences, Path, Side, StarContext};
use crate::error::{Error, Result};
use crate::reduce::normal_form;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AmbiguityKind {
    XInclusion,
    YIntersection,
}

impl fmt::Display for AmbiguityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbiguityKind::XInclusion => write!(f, "X-inclusion"),
            AmbiguityKind::YIntersection => write!(f, "Y-intersection"),
        }
    }
}

/// The monomial `w` at which `f̄` and `ḡ` overlap, with both placements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub w: NMonomial,
    pub f_placement: StarContext,
    pub g_placement: StarContext,
}

impl Ambiguity {
    /// For Y-intersections, whether `f̄^X` sits to the left of `ḡ^X` in `w^X`.
    /// X-inclusions always report `true` (f is the outer word).
    pub fn f_first(&self) -> bool {
        match self.kind {
            AmbiguityKind::XInclusion => true,
            AmbiguityKind::YIntersection => self.f_placement.path() < self.g_placement.path(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionResult {
    pub ambiguity: Ambiguity,
    pub value: Polynomial,
}

impl CompositionResult {
    fn new(ambiguity: Ambiguity, f: &Polynomial, g: &Polynomial) -> Self {
        let value = composition_value(&ambiguity, f, g);
        debug_assert_eq!(
            ambiguity.f_placement.plug_monomial(f.leading_monomial().unwrap()),
            ambiguity.w
        );
        debug_assert_eq!(
            ambiguity.g_placement.plug_monomial(g.leading_monomial().unwrap()),
            ambiguity.w
        );
        debug_assert!(
            value.leading_monomial().map_or(true, |m| m < &ambiguity.w),
            "composition must drop below its ambiguity"
        );
        CompositionResult { ambiguity, value }
    }
}

/// `f_placement|_f - g_placement|_g`. The two leading terms cancel by
/// construction, so only the tails are expanded.
fn composition_value(a: &Ambiguity, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (m, c) in f.terms().rev().skip(1) {
        out.add_term(a.f_placement.plug_monomial(m), c.clone());
    }
    for (m, c) in g.terms().rev().skip(1) {
        out.add_term(a.g_placement.plug_monomial(m), -c.clone());
    }
    out
}

pub fn y_lcm(u: &YMonomial, v: &YMonomial) -> YMonomial {
    u.lcm(v)
}

fn monic_lead(p: &Polynomial) -> Result<&NMonomial> {
    let (m, c) = p.leading_term()?;
    if !num_traits::One::is_one(c) {
        return Err(Error::NotMonic);
    }
    Ok(m)
}

/// One composition per occurrence of `ḡ^X` inside `f̄^X`. The root
/// occurrence is skipped when `f == g`, where it would be zero.
pub fn x_inclusion_compositions(f: &Polynomial, g: &Polynomial) -> Result<Vec<CompositionResult>> {
    let mut out = Vec::new();
    for_each_x_inclusion(f, g, |c| out.push(c))?;
    Ok(out)
}

pub fn for_each_x_inclusion(
    f: &Polynomial,
    g: &Polynomial,
    mut visit: impl FnMut(CompositionResult),
) -> Result<()> {
    let fl = monic_lead(f)?;
    let gl = monic_lead(g)?;
    let same = f == g;
    let l = fl.y.lcm(&gl.y);
    let f_cof = fl.y.quotient_of(&l).unwrap();
    let g_cof = gl.y.quotient_of(&l).unwrap();
    for path in occurrences(&gl.x, &fl.x) {
        if same && path.is_root() {
            continue;
        }
        let ambiguity = Ambiguity {
            kind: AmbiguityKind::XInclusion,
            w: NMonomial::new(l.clone(), fl.x.clone()),
            f_placement: StarContext::identity().with_y(f_cof.clone()),
            g_placement: StarContext::from_host(g_cof.clone(), &fl.x, &path).unwrap(),
        };
        visit(CompositionResult::new(ambiguity, f, g));
    }
    Ok(())
}

/// `deg(f̄^X) + deg(ḡ^X)`, the degree of the two bare juxtapositions.
pub fn minimal_shape(f: &Polynomial, g: &Polynomial) -> Result<usize> {
    Ok((f.leading_monomial()?.x.degree() + g.leading_monomial()?.x.degree()) as usize)
}

/// How far Y-intersection shapes are padded with extra generators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ShapeBound {
    /// Only the bare juxtapositions `(f̄^X ḡ^X)` and `(ḡ^X f̄^X)`.
    #[default]
    Minimal,
    /// Every shape with `deg(w^X) <= n`.
    AtMost(usize),
}

impl ShapeBound {
    /// Effective bound for a pair; never below the minimal shape.
    pub fn resolve(&self, minimal: usize) -> usize {
        match *self {
            ShapeBound::Minimal => minimal,
            ShapeBound::AtMost(n) => n.max(minimal),
        }
    }
}

impl fmt::Display for ShapeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeBound::Minimal => write!(f, "minimal"),
            ShapeBound::AtMost(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    F,
    G,
    Pad(u32),
}

/// Binary tree shapes with a fixed number of leaves.
#[derive(Clone)]
enum Shape {
    Leaf,
    Node(Box<Shape>, Box<Shape>, usize),
}

impl Shape {
    fn leaves(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(_, _, n) => *n,
        }
    }
}

fn shapes(leaves: usize) -> Vec<Shape> {
    let mut table: Vec<Vec<Shape>> = vec![Vec::new(), vec![Shape::Leaf]];
    for n in 2..=leaves {
        let mut level = Vec::new();
        for k in 1..n {
            for l in &table[k] {
                for r in &table[n - k] {
                    level.push(Shape::Node(Box::new(l.clone()), Box::new(r.clone()), n));
                }
            }
        }
        table.push(level);
    }
    table.swap_remove(leaves)
}

struct Built {
    term: XTerm,
    f_path: Path,
    g_path: Path,
}

fn build(shape: &Shape, labels: &[Slot], fx: &XTerm, gx: &XTerm, path: &mut Vec<Side>, out: &mut Built) -> XTerm {
    match shape {
        Shape::Leaf => match labels[0] {
            Slot::F => {
                out.f_path = Path(path.clone());
                fx.clone()
            }
            Slot::G => {
                out.g_path = Path(path.clone());
                gx.clone()
            }
            Slot::Pad(r) => XTerm::leaf(r),
        },
        Shape::Node(l, r, _) => {
            let k = l.leaves();
            path.push(Side::Left);
            let lt = build(l, &labels[..k], fx, gx, path, out);
            *path.last_mut().unwrap() = Side::Right;
            let rt = build(r, &labels[k..], fx, gx, path, out);
            path.pop();
            XTerm::node(lt, rt)
        }
    }
}

/// Y-intersection compositions: `w = L(f̄^Y, ḡ^Y)·w^X` where `w^X` holds
/// disjoint copies of `f̄^X` and `ḡ^X` plus padding generators drawn from
/// the first `x_gens` ranks, with `deg(w^X) <= shape_bound`. Empty when
/// `f̄^Y` and `ḡ^Y` are coprime.
pub fn y_intersection_compositions(
    f: &Polynomial,
    g: &Polynomial,
    shape_bound: usize,
    x_gens: u32,
) -> Result<Vec<CompositionResult>> {
    let mut out = Vec::new();
    for_each_y_intersection(f, g, shape_bound, x_gens, |c| out.push(c))?;
    out.sort_by(|a, b| {
        a.ambiguity
            .w
            .cmp(&b.ambiguity.w)
            .then_with(|| a.ambiguity.f_placement.path().cmp(&b.ambiguity.f_placement.path()))
            .then_with(|| a.ambiguity.g_placement.path().cmp(&b.ambiguity.g_placement.path()))
    });
    Ok(out)
}

pub fn for_each_y_intersection(
    f: &Polynomial,
    g: &Polynomial,
    shape_bound: usize,
    x_gens: u32,
    mut visit: impl FnMut(CompositionResult),
) -> Result<()> {
    let fl = monic_lead(f)?;
    let gl = monic_lead(g)?;
    let minimal = (fl.x.degree() + gl.x.degree()) as usize;
    if shape_bound < minimal {
        return Err(Error::BoundBelowMinimalShape {
            bound: shape_bound,
            minimal,
        });
    }
    if fl.y.is_coprime(&gl.y) {
        return Ok(());
    }
    let same = f == g;
    let l = fl.y.lcm(&gl.y);
    let f_cof = fl.y.quotient_of(&l).unwrap();
    let g_cof = gl.y.quotient_of(&l).unwrap();

    let pads = if x_gens == 0 { 0 } else { shape_bound - minimal };
    for p in 0..=pads {
        let n = p + 2;
        let shapes = shapes(n);
        let mut labels = vec![Slot::Pad(0); n];
        for fi in 0..n {
            for gi in 0..n {
                if fi == gi || (same && gi < fi) {
                    continue;
                }
                // Odometer over the padding generators.
                let pad_positions: Vec<usize> = (0..n).filter(|&k| k != fi && k != gi).collect();
                let mut digits = vec![0u32; p];
                loop {
                    labels[fi] = Slot::F;
                    labels[gi] = Slot::G;
                    for (d, &pos) in digits.iter().zip(&pad_positions) {
                        labels[pos] = Slot::Pad(*d);
                    }
                    for shape in &shapes {
                        let mut built = Built {
                            term: XTerm::leaf(0),
                            f_path: Path::root(),
                            g_path: Path::root(),
                        };
                        built.term = build(shape, &labels, &fl.x, &gl.x, &mut Vec::new(), &mut built);
                        let ambiguity = Ambiguity {
                            kind: AmbiguityKind::YIntersection,
                            w: NMonomial::new(l.clone(), built.term.clone()),
                            f_placement: StarContext::from_host(f_cof.clone(), &built.term, &built.f_path)
                                .unwrap(),
                            g_placement: StarContext::from_host(g_cof.clone(), &built.term, &built.g_path)
                                .unwrap(),
                        };
                        visit(CompositionResult::new(ambiguity, f, g));
                    }
                    // Advance the odometer.
                    let mut k = 0;
                    while k < p {
                        digits[k] += 1;
                        if digits[k] < x_gens {
                            break;
                        }
                        digits[k] = 0;
                        k += 1;
                    }
                    if k == p {
                        break;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Reduction to zero modulo `rules`. Every rewrite happens strictly below
/// the ambiguity, so a zero normal form witnesses triviality modulo `(S, w)`.
pub fn is_trivial(c: &CompositionResult, rules: &[Polynomial]) -> bool {
    c.value.is_zero() || normal_form(&c.value, rules).is_zero()
}

/// Every composition of the ordered pair `(f, g)`: X-inclusions of `g` in
/// `f` (when `include_inclusion`) and, when `include_intersection`,
/// Y-intersections at the resolved shape bound.
pub fn for_each_composition(
    f: &Polynomial,
    g: &Polynomial,
    include_inclusion: bool,
    include_intersection: bool,
    shape: ShapeBound,
    x_gens: u32,
    mut visit: impl FnMut(CompositionResult),
) -> Result<()> {
    if include_inclusion {
        for_each_x_inclusion(f, g, &mut visit)?;
    }
    if include_intersection {
        let bound = shape.resolve(minimal_shape(f, g)?);
        for_each_y_intersection(f, g, bound, x_gens, &mut visit)?;
    }
    Ok(())
}
