//! Geometry of fixed-size full binary tree templates stored in pre-order.

use serde::{Deserialize, Serialize};

use super::symbol::Symbol;
use crate::error::{Error, Result};

/// Deepest template the crate accepts.
pub const MAX_DEPTH: usize = 16;

/// Number of slots in a full binary template of the given depth.
pub fn template_size(depth: usize) -> usize {
    (1usize << (depth + 1)) - 1
}

/// Children of a pre-order slot, or `None` for slots at the template's
/// maximal depth.
///
/// Returns an error when `index` is outside the template or `node_depth`
/// exceeds `template_depth`.
pub fn preorder_children(
    index: usize,
    node_depth: usize,
    template_depth: usize,
) -> Result<Option<(usize, usize)>> {
    if template_depth > MAX_DEPTH || index >= template_size(template_depth) || node_depth > template_depth {
        return Err(Error::InvalidGenotype(format!(
            "slot {index} at depth {node_depth} is outside a depth-{template_depth} template"
        )));
    }
    if node_depth == template_depth {
        return Ok(None);
    }
    Ok(Some((index + 1, index + (1usize << (template_depth - node_depth)))))
}

/// Right-child offset for a non-leaf slot at `node_depth`.
#[inline(always)]
pub(crate) fn right_offset(node_depth: usize, template_depth: usize) -> usize {
    1usize << (template_depth - node_depth)
}

/// Depth of every slot of a template, in pre-order.
pub fn slot_depths(template_depth: usize) -> Vec<u8> {
    fn walk(depth: usize, max: usize, out: &mut Vec<u8>) {
        out.push(depth as u8);
        if depth < max {
            walk(depth + 1, max, out);
            walk(depth + 1, max, out);
        }
    }
    let mut out = Vec::with_capacity(template_size(template_depth));
    walk(0, template_depth, &mut out);
    out
}

/// One fixed-size expression template.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    depth: usize,
    nodes: Vec<Symbol>,
}

impl Tree {
    /// Builds a tree from a complete pre-order slot array. Slots at maximal
    /// depth must hold terminals.
    pub fn new(depth: usize, nodes: Vec<Symbol>) -> Result<Self> {
        if depth > MAX_DEPTH {
            return Err(Error::InvalidGenotype(format!("depth {depth} exceeds {MAX_DEPTH}")));
        }
        if nodes.len() != template_size(depth) {
            return Err(Error::InvalidGenotype(format!(
                "depth-{depth} template needs {} slots, got {}",
                template_size(depth),
                nodes.len()
            )));
        }
        for (slot, (sym, d)) in nodes.iter().zip(slot_depths(depth)).enumerate() {
            if d as usize == depth && !sym.is_terminal() {
                return Err(Error::InvalidGenotype(format!(
                    "slot {slot} is a leaf but holds operator `{sym}`"
                )));
            }
        }
        Ok(Tree { depth, nodes })
    }

    /// Lays a pre-order expression (active part only) into a template of
    /// the given depth. Slots the expression does not reach are filled with
    /// `filler`, which must be a terminal.
    ///
    /// ```
    /// use modular_gomea::expr::{Symbol, Tree};
    /// let t = Tree::from_expression(2, "sin + x0 x1", Symbol::coefficient(0.0)).unwrap();
    /// assert_eq!(t.len(), 7);
    /// ```
    pub fn from_expression(depth: usize, expression: &str, filler: Symbol) -> Result<Self> {
        if !filler.is_terminal() {
            return Err(Error::InvalidGenotype("filler must be a terminal".into()));
        }
        let tokens = expression
            .split_whitespace()
            .map(|t| t.parse::<Symbol>().map_err(Error::InvalidGenotype))
            .collect::<Result<Vec<_>>>()?;
        let mut nodes = vec![filler; template_size(depth)];
        let mut cursor = 0;
        place(&tokens, &mut cursor, &mut nodes, 0, 0, depth)?;
        if cursor != tokens.len() {
            return Err(Error::InvalidGenotype(format!(
                "expression has {} trailing tokens",
                tokens.len() - cursor
            )));
        }
        Tree::new(depth, nodes)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Symbol] {
        &self.nodes
    }

    pub fn root(&self) -> &Symbol {
        &self.nodes[0]
    }

    pub(crate) fn nodes_mut(&mut self) -> &mut [Symbol] {
        &mut self.nodes
    }
}

fn place(
    tokens: &[Symbol],
    cursor: &mut usize,
    nodes: &mut [Symbol],
    slot: usize,
    depth: usize,
    max_depth: usize,
) -> Result<()> {
    let Some(&sym) = tokens.get(*cursor) else {
        return Err(Error::InvalidGenotype("expression ended early".into()));
    };
    *cursor += 1;
    if depth == max_depth && !sym.is_terminal() {
        return Err(Error::InvalidGenotype(format!(
            "expression does not fit a depth-{max_depth} template"
        )));
    }
    nodes[slot] = sym;
    let arity = sym.arity();
    if arity >= 1 {
        place(tokens, cursor, nodes, slot + 1, depth + 1, max_depth)?;
    }
    if arity == 2 {
        let right = slot + right_offset(depth, max_depth);
        place(tokens, cursor, nodes, right, depth + 1, max_depth)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Explicit pre-order enumeration of a full binary tree: returns
    /// (index, depth, children) triples.
    fn enumerate(depth: usize) -> Vec<(usize, usize, Option<(usize, usize)>)> {
        fn rec(
            d: usize,
            max: usize,
            next: &mut usize,
            out: &mut Vec<(usize, usize, Option<(usize, usize)>)>,
        ) -> usize {
            let me = *next;
            *next += 1;
            out.push((me, d, None));
            if d < max {
                let l = rec(d + 1, max, next, out);
                let r = rec(d + 1, max, next, out);
                let pos = out.iter().position(|e| e.0 == me).unwrap();
                out[pos].2 = Some((l, r));
            }
            me
        }
        let mut out = Vec::new();
        let mut next = 0;
        rec(0, depth, &mut next, &mut out);
        out
    }

    #[test]
    fn template_sizes() {
        assert_eq!(template_size(0), 1);
        assert_eq!(template_size(4), 31);
        assert_eq!(template_size(7), 255);
        // level-by-level count
        for d in 0..=10 {
            let levels: usize = (0..=d).map(|l| 1usize << l).sum();
            assert_eq!(template_size(d), levels);
        }
    }

    #[test]
    fn children_match_enumeration() {
        assert_eq!(preorder_children(0, 0, 2).unwrap(), Some((1, 4)));
        assert_eq!(preorder_children(1, 1, 3).unwrap(), Some((2, 5)));
        assert_eq!(preorder_children(3, 2, 2).unwrap(), None);
        assert!(preorder_children(7, 2, 2).is_err());
        for d in 0..=10 {
            for (idx, depth, kids) in enumerate(d) {
                assert_eq!(preorder_children(idx, depth, d).unwrap(), kids);
            }
        }
    }

    #[test]
    fn every_non_root_slot_is_a_child_exactly_once() {
        for d in 0..=10 {
            let depths = slot_depths(d);
            let mut seen = vec![0u32; template_size(d)];
            for (i, &nd) in depths.iter().enumerate() {
                if let Some((l, r)) = preorder_children(i, nd as usize, d).unwrap() {
                    seen[l] += 1;
                    seen[r] += 1;
                }
            }
            assert_eq!(seen[0], 0);
            assert!(seen[1..].iter().all(|&c| c == 1));
        }
    }

    #[test]
    fn leaves_must_be_terminals() {
        let bad = vec![Symbol::Feature(0), Symbol::Unary(UnaryOp::Sin), Symbol::Feature(1)];
        assert!(Tree::new(1, bad).is_err());
        assert!(Tree::new(1, vec![Symbol::Feature(0); 2]).is_err());
    }

    #[test]
    fn expression_layout() {
        let t = Tree::from_expression(2, "sin + x0 x1", Symbol::Feature(9)).unwrap();
        let s: Vec<String> = t.nodes().iter().map(|s| s.to_string()).collect();
        assert_eq!(s, ["sin", "+", "x0", "x1", "x9", "x9", "x9"]);
        assert!(Tree::from_expression(1, "sin sin x0", Symbol::Feature(0)).is_err());
        assert!(Tree::from_expression(2, "+ x0", Symbol::Feature(0)).is_err());
        assert!(Tree::from_expression(2, "x0 x1", Symbol::Feature(0)).is_err());
    }

    use super::super::symbol::UnaryOp;
}
