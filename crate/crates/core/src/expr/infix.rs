//! Human-readable infix rendering.

use std::fmt::Write;

use super::activity::Activity;
use super::genotype::Genotype;
use super::inline::{inline, Expr};
use super::symbol::Symbol;
use super::template::right_offset;

/// Renders a genotype as infix text.
///
/// With `inline = false` the first line is the output expression, calling
/// used trees as `f<j>(...)`, followed by one definition line per used tree
/// (`f1(a0, a1) = ...`). With `inline = true` all calls are expanded into a
/// single expression.
pub fn to_infix(genotype: &Genotype, inline: bool) -> String {
    to_infix_named(genotype, inline, &[])
}

/// As [`to_infix`], printing `names[k]` for feature `k` where available.
pub fn to_infix_named(genotype: &Genotype, inline_calls: bool, names: &[String]) -> String {
    let p = Printer { names };
    if inline_calls {
        let mut s = String::new();
        p.expr(&inline(genotype), true, &mut s);
        return s;
    }
    let activity = Activity::of(genotype);
    let out = genotype.output_index();
    let mut text = String::new();
    p.slot(genotype, &activity, out, 0, 0, true, &mut text);
    for j in (0..out).filter(|&j| activity.tree_is_active(j)) {
        let mut body = String::new();
        p.slot(genotype, &activity, j, 0, 0, true, &mut body);
        let _ = write!(text, "\nf{j}{} = {body}", params(activity.uses_args(j)));
    }
    text
}

fn params(uses: [bool; 2]) -> &'static str {
    match uses {
        [_, true] => "(a0, a1)",
        [true, false] => "(a0)",
        [false, false] => "",
    }
}

struct Printer<'a> {
    names: &'a [String],
}

impl Printer<'_> {
    fn feature(&self, k: u32, out: &mut String) {
        match self.names.get(k as usize) {
            Some(name) => out.push_str(name),
            None => {
                let _ = write!(out, "x{k}");
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn slot(&self, g: &Genotype, act: &Activity, tree: usize, slot: usize, depth: usize, top: bool, out: &mut String) {
        let t = g.tree(tree);
        let right = slot + if depth < t.depth() { right_offset(depth, t.depth()) } else { 0 };
        match t.nodes()[slot] {
            Symbol::Feature(k) => self.feature(k, out),
            Symbol::Coefficient { value, .. } => {
                let _ = write!(out, "{value}");
            }
            Symbol::Arg(k) => {
                let _ = write!(out, "a{k}");
            }
            Symbol::Unary(op) => {
                out.push_str(op.token());
                out.push('(');
                self.slot(g, act, tree, slot + 1, depth + 1, true, out);
                out.push(')');
            }
            Symbol::Binary(op) => {
                if !top {
                    out.push('(');
                }
                self.slot(g, act, tree, slot + 1, depth + 1, false, out);
                let _ = write!(out, " {} ", op.token());
                self.slot(g, act, tree, right, depth + 1, false, out);
                if !top {
                    out.push(')');
                }
            }
            Symbol::Subexpr(j) => {
                let _ = write!(out, "f{j}");
                match act.uses_args(j as usize) {
                    [false, false] => {}
                    [true, false] => {
                        out.push('(');
                        self.slot(g, act, tree, slot + 1, depth + 1, true, out);
                        out.push(')');
                    }
                    [_, true] => {
                        out.push('(');
                        self.slot(g, act, tree, slot + 1, depth + 1, true, out);
                        out.push_str(", ");
                        self.slot(g, act, tree, right, depth + 1, true, out);
                        out.push(')');
                    }
                }
            }
        }
    }

    fn expr(&self, e: &Expr, top: bool, out: &mut String) {
        match e {
            Expr::Feature(k) => self.feature(*k, out),
            Expr::Constant(c) => {
                let _ = write!(out, "{c}");
            }
            Expr::Unary(op, a) => {
                out.push_str(op.token());
                out.push('(');
                self.expr(a, true, out);
                out.push(')');
            }
            Expr::Binary(op, a, b) => {
                if !top {
                    out.push('(');
                }
                self.expr(a, false, out);
                let _ = write!(out, " {} ", op.token());
                self.expr(b, false, out);
                if !top {
                    out.push(')');
                }
            }
        }
    }
}
