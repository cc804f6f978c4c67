use std::fmt::Write;

use num_traits::{One, Signed};

use crate::algebra::{CPolynomial, Coefficient, NMonomial, Polynomial, XKind, XTerm, YMonomial};
use crate::embed::Presentation;
use crate::order::{Alphabet, OrderContext};

pub fn xterm(ctx: &OrderContext, t: &XTerm) -> String {
    let mut s = String::new();
    write_xterm(&mut s, &ctx.x, t);
    s
}

fn write_xterm(s: &mut String, x: &Alphabet, t: &XTerm) {
    match t.kind() {
        XKind::Leaf(g) => s.push_str(x.name(*g)),
        XKind::Node(l, r) => {
            s.push('(');
            write_xterm(s, x, l);
            s.push(' ');
            write_xterm(s, x, r);
            s.push(')');
        }
    }
}

/// Space-separated powers in declared order; empty for 1.
pub fn ymonomial(ctx: &OrderContext, y: &YMonomial) -> String {
    let mut s = String::new();
    for &(g, e) in y.exponents() {
        if !s.is_empty() {
            s.push(' ');
        }
        s.push_str(ctx.y.name(g));
        if e > 1 {
            write!(s, "^{e}").unwrap();
        }
    }
    s
}

pub fn monomial(ctx: &OrderContext, m: &NMonomial) -> String {
    let y = ymonomial(ctx, &m.y);
    let x = xterm(ctx, &m.x);
    if y.is_empty() {
        x
    } else {
        format!("{y} {x}")
    }
}

fn join_terms(terms: impl Iterator<Item = (String, Coefficient)>) -> String {
    let mut s = String::new();
    for (k, (body, c)) in terms.enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        match (k, negative) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if body.is_empty() {
            write!(s, "{abs}").unwrap();
        } else if abs.is_one() {
            s.push_str(&body);
        } else {
            write!(s, "{abs} {body}").unwrap();
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Terms by descending monomial.
pub fn polynomial(ctx: &OrderContext, f: &Polynomial) -> String {
    join_terms(f.terms().rev().map(|(m, c)| (monomial(ctx, m), c.clone())))
}

pub fn cpolynomial(ctx: &OrderContext, g: &CPolynomial) -> String {
    join_terms(g.terms().rev().map(|(m, c)| (ymonomial(ctx, m), c.clone())))
}

/// Canonical text of a presentation; the caller canonicalizes first.
pub fn presentation(p: &Presentation) -> String {
    let mut s = String::from("field: Q\n");
    let header = |names: &[String]| {
        if names.is_empty() {
            String::new()
        } else {
            format!(" {}", names.join(" > "))
        }
    };
    writeln!(s, "yvars:{}", header(p.ctx.y.names())).unwrap();
    writeln!(s, "xvars:{}", header(p.ctx.x.names())).unwrap();
    for g in &p.crels {
        writeln!(s, "crel: {}", cpolynomial(&p.ctx, g)).unwrap();
    }
    for f in &p.rels {
        writeln!(s, "rel: {}", polynomial(&p.ctx, f)).unwrap();
    }
    s
}
