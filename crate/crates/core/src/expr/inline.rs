//! Fully expanded, call-free form of a genotype.

use super::activity::Activity;
use super::genotype::Genotype;
use super::symbol::{BinaryOp, Symbol, UnaryOp};
use super::template::{right_offset, Tree};
use crate::error::{Error, Result};

/// A plain expression tree without calls or argument nodes.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Feature(u32),
    Constant(f64),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Scalar evaluation on one row of features.
    pub fn eval_row(&self, row: &[f64]) -> f64 {
        match self {
            Expr::Feature(k) => row[*k as usize],
            Expr::Constant(c) => *c,
            Expr::Unary(op, a) => op.apply(a.eval_row(row)),
            Expr::Binary(op, a, b) => op.apply(a.eval_row(row), b.eval_row(row)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Expr::Feature(_) | Expr::Constant(_) => 1,
            Expr::Unary(_, a) => 1 + a.size(),
            Expr::Binary(_, a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Depth of the expression (a lone terminal has height 0).
    pub fn height(&self) -> usize {
        match self {
            Expr::Feature(_) | Expr::Constant(_) => 0,
            Expr::Unary(_, a) => 1 + a.height(),
            Expr::Binary(_, a, b) => 1 + a.height().max(b.height()),
        }
    }

    /// Lays the expression into a single template just deep enough to hold it.
    pub fn to_genotype(&self) -> Result<Genotype> {
        let depth = self.height();
        if depth > super::template::MAX_DEPTH {
            return Err(Error::InvalidGenotype(format!("expansion of height {depth} is too deep")));
        }
        let mut nodes = vec![Symbol::coefficient(0.0); super::template::template_size(depth)];
        self.place(&mut nodes, 0, 0, depth);
        Genotype::single(Tree::new(depth, nodes)?)
    }

    fn place(&self, nodes: &mut [Symbol], slot: usize, depth: usize, max: usize) {
        match self {
            Expr::Feature(k) => nodes[slot] = Symbol::Feature(*k),
            Expr::Constant(c) => nodes[slot] = Symbol::coefficient(*c),
            Expr::Unary(op, a) => {
                nodes[slot] = Symbol::Unary(*op);
                a.place(nodes, slot + 1, depth + 1, max);
            }
            Expr::Binary(op, a, b) => {
                nodes[slot] = Symbol::Binary(*op);
                a.place(nodes, slot + 1, depth + 1, max);
                b.place(nodes, slot + right_offset(depth, max), depth + 1, max);
            }
        }
    }
}

/// Substitutes every call by the callee's body, with argument nodes replaced
/// by the caller's argument subtrees.
pub fn inline(genotype: &Genotype) -> Expr {
    let activity = Activity::of(genotype);
    let out = genotype.output_index();
    build(genotype, &activity, out, 0, 0, &[None, None])
}

fn build(
    g: &Genotype,
    activity: &Activity,
    tree: usize,
    slot: usize,
    depth: usize,
    args: &[Option<Expr>; 2],
) -> Expr {
    let t = g.tree(tree);
    let right = || slot + right_offset(depth, t.depth());
    match t.nodes()[slot] {
        Symbol::Feature(k) => Expr::Feature(k),
        Symbol::Coefficient { value, .. } => Expr::Constant(value),
        Symbol::Arg(k) => args[k as usize].clone().unwrap_or(Expr::Constant(f64::NAN)),
        Symbol::Unary(op) => Expr::Unary(op, Box::new(build(g, activity, tree, slot + 1, depth + 1, args))),
        Symbol::Binary(op) => Expr::Binary(
            op,
            Box::new(build(g, activity, tree, slot + 1, depth + 1, args)),
            Box::new(build(g, activity, tree, right(), depth + 1, args)),
        ),
        Symbol::Subexpr(j) => {
            let [u0, u1] = activity.uses_args(j as usize);
            let a0 = u0.then(|| build(g, activity, tree, slot + 1, depth + 1, args));
            let a1 = u1.then(|| build(g, activity, tree, right(), depth + 1, args));
            build(g, activity, j as usize, 0, 0, &[a0, a1])
        }
    }
}
