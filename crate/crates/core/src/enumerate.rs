//! Exhaustive enumeration of bounded-degree monomials and one-hole frames.

use crate::algebra::{NMonomial, XTerm, YMonomial};
use crate::context::{Side, StarContext, Step};
use crate::order::OrderContext;

/// All X-words of exactly `degree` leaves over `gens` generators.
pub fn xterms_of_degree(gens: u32, degree: u32) -> Vec<XTerm> {
    xterm_table(gens, degree).pop().unwrap_or_default()
}

/// `table[d - 1]` holds every X-word of degree `d`, for `d <= max_degree`.
pub fn xterm_table(gens: u32, max_degree: u32) -> Vec<Vec<XTerm>> {
    let mut table: Vec<Vec<XTerm>> = Vec::with_capacity(max_degree as usize);
    for d in 1..=max_degree {
        let level = if d == 1 {
            (0..gens).map(XTerm::leaf).collect()
        } else {
            let mut level = Vec::new();
            for left_deg in 1..d {
                for l in &table[(left_deg - 1) as usize] {
                    for r in &table[(d - left_deg - 1) as usize] {
                        level.push(XTerm::node(l.clone(), r.clone()));
                    }
                }
            }
            level
        };
        table.push(level);
    }
    table
}

/// All commutative monomials of exactly `degree` over `gens` generators.
pub fn ymonomials_of_degree(gens: u32, degree: u32) -> Vec<YMonomial> {
    fn go(g: u32, gens: u32, left: u32, acc: &mut Vec<(u32, u32)>, out: &mut Vec<YMonomial>) {
        if left == 0 {
            out.push(YMonomial::from_exponents(acc.iter().copied()));
            return;
        }
        if g == gens {
            return;
        }
        for e in (0..=left).rev() {
            acc.push((g, e));
            go(g + 1, gens, left - e, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, gens, degree, &mut Vec::new(), &mut out);
    out
}

pub fn ymonomials_up_to(gens: u32, degree: u32) -> Vec<YMonomial> {
    (0..=degree).flat_map(|d| ymonomials_of_degree(gens, d)).collect()
}

/// Every monomial of combined degree `<= bound`, sorted ascending.
pub fn monomials_up_to(ctx: &OrderContext, bound: u32) -> Vec<NMonomial> {
    let table = xterm_table(ctx.x_gens(), bound);
    let ys: Vec<Vec<YMonomial>> = (0..bound).map(|e| ymonomials_up_to(ctx.y_gens(), e)).collect();
    let mut out = Vec::new();
    for (i, level) in table.iter().enumerate() {
        let dx = i as u32 + 1;
        for x in level {
            for y in &ys[(bound - dx) as usize] {
                out.push(NMonomial::new(y.clone(), x.clone()));
            }
        }
    }
    out.sort();
    out
}

/// Every one-hole frame over `gens` generators whose non-hole leaves number
/// exactly `degree`. The Y part is 1.
pub fn frames_of_degree(gens: u32, degree: u32) -> Vec<StarContext> {
    let table = xterm_table(gens, degree);
    let mut memo: Vec<Vec<Vec<Step>>> = vec![vec![Vec::new()]];
    for k in 1..=degree {
        let mut level = Vec::new();
        for sib_deg in 1..=k {
            for inner in &memo[(k - sib_deg) as usize] {
                for sib in &table[(sib_deg - 1) as usize] {
                    for side in [Side::Left, Side::Right] {
                        let mut spine = Vec::with_capacity(inner.len() + 1);
                        spine.push(Step { side, sibling: sib.clone() });
                        spine.extend(inner.iter().cloned());
                        level.push(spine);
                    }
                }
            }
        }
        memo.push(level);
    }
    memo.pop()
        .unwrap_or_default()
        .into_iter()
        .map(|spine| StarContext::from_spine(YMonomial::one(), spine))
        .collect()
}

/// Number of monomials of combined degree `<= bound`, by the closed formula
/// `sum_d Catalan(d-1) * |X|^d * C(bound - d + |Y|, |Y|)`.
pub fn count_monomials_up_to(x_gens: u32, y_gens: u32, bound: u32) -> u128 {
    fn binom(n: u128, k: u128) -> u128 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
    }
    fn catalan(n: u128) -> u128 {
        binom(2 * n, n) / (n + 1)
    }
    (1..=bound as u128)
        .map(|d| {
            catalan(d - 1)
                * (x_gens as u128).pow(d as u32)
                * binom(bound as u128 - d + y_gens as u128, y_gens as u128)
        })
        .sum()
}
