//! Seeded random inputs shared by the integration tests.
#![allow(dead_code)]

use nagsb::algebra::{Coefficient, NMonomial, Polynomial, XTerm, YMonomial};
use nagsb::context::{Side, StarContext, Step};
use nagsb::order::OrderContext;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coeff(rng: &mut TestRng) -> Coefficient {
    let mut c = rng.gen_range(-3i64..=3);
    if c == 0 {
        c = 1;
    }
    Coefficient::from_integer(c.into())
}

/// A uniformly bracketed tree of exactly `degree` leaves.
pub fn xterm(rng: &mut TestRng, gens: u32, degree: u32) -> XTerm {
    if degree == 1 {
        return XTerm::leaf(rng.gen_range(0..gens));
    }
    let left = rng.gen_range(1..degree);
    XTerm::node(xterm(rng, gens, left), xterm(rng, gens, degree - left))
}

pub fn ymonomial(rng: &mut TestRng, gens: u32, degree: u32) -> YMonomial {
    let mut y = YMonomial::one();
    for _ in 0..degree {
        y = y.mul(&YMonomial::var(rng.gen_range(0..gens)));
    }
    y
}

/// A monomial of combined degree at most `max`.
pub fn monomial(rng: &mut TestRng, ctx: &OrderContext, max: u32) -> NMonomial {
    let total = rng.gen_range(1..=max);
    let dy = if ctx.y_gens() == 0 { 0 } else { rng.gen_range(0..total) };
    NMonomial::new(ymonomial(rng, ctx.y_gens(), dy), xterm(rng, ctx.x_gens(), total - dy))
}

/// A nonzero relation of combined degree at most `max` whose terms share
/// one Y-degree, so reduction by it never raises degree.
pub fn relation(rng: &mut TestRng, ctx: &OrderContext, max: u32) -> Polynomial {
    loop {
        let dy = if ctx.y_gens() == 0 { 0 } else { rng.gen_range(0..=1.min(max - 1)) };
        let mut f = Polynomial::zero();
        for k in 0..rng.gen_range(1..=3) {
            // The first term fixes the degree; the rest may sit lower.
            let dx = if k == 0 { max - dy } else { rng.gen_range(1..=max - dy) };
            let m = NMonomial::new(ymonomial(rng, ctx.y_gens(), dy), xterm(rng, ctx.x_gens(), dx));
            f.add_term(m, coeff(rng));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// At most 4 relations of degree at most 3 over at most 3 X- and 2
/// Y-generators.
pub fn presentation(rng: &mut TestRng) -> (OrderContext, Vec<Polynomial>) {
    let ctx = OrderContext::standard(rng.gen_range(1..=3), rng.gen_range(0..=2));
    let rels = (0..rng.gen_range(1..=4))
        .map(|_| {
            let d = rng.gen_range(2..=3);
            relation(rng, &ctx, d)
        })
        .collect();
    (ctx, rels)
}

/// A random one-hole context with `extra` non-hole leaves.
pub fn context(rng: &mut TestRng, ctx: &OrderContext, extra: u32, y_degree: u32) -> StarContext {
    let mut spine = Vec::new();
    let mut left = extra;
    while left > 0 {
        let d = rng.gen_range(1..=left);
        left -= d;
        let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
        spine.push(Step {
            side,
            sibling: xterm(rng, ctx.x_gens(), d),
        });
    }
    let y = if ctx.y_gens() == 0 { YMonomial::one() } else { ymonomial(rng, ctx.y_gens(), y_degree) };
    StarContext::from_spine(y, spine)
}

/// A random combination of up to four of `words`.
pub fn combination(rng: &mut TestRng, words: &[Polynomial]) -> Polynomial {
    let mut f = Polynomial::zero();
    if words.is_empty() {
        return f;
    }
    for _ in 0..rng.gen_range(1..=4) {
        f.add_assign_scaled(&words[rng.gen_range(0..words.len())], &coeff(rng));
    }
    f
}
