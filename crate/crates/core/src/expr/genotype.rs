use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::symbol::{Symbol, COEFFICIENT_BINS};
use super::template::Tree;
use crate::error::{Error, Result};

/// A vector of tree templates. The last tree is the output; tree `i` may
/// call any tree `j < i` through a `Subexpr` node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Genotype {
    trees: Vec<Tree>,
}

impl Genotype {
    /// Validates reference and argument rules and wraps the trees.
    pub fn new(trees: Vec<Tree>) -> Result<Self> {
        if trees.is_empty() {
            return Err(Error::InvalidGenotype("a genotype needs at least one tree".into()));
        }
        let n = trees.len();
        for (i, tree) in trees.iter().enumerate() {
            for (slot, sym) in tree.nodes().iter().enumerate() {
                match *sym {
                    Symbol::Subexpr(j) if j as usize >= i => {
                        return Err(Error::InvalidGenotype(format!(
                            "tree {i} slot {slot}: f{j} is not an earlier tree"
                        )));
                    }
                    Symbol::Arg(k) if k > 1 => {
                        return Err(Error::InvalidGenotype(format!(
                            "tree {i} slot {slot}: argument index {k} exceeds arity 2"
                        )));
                    }
                    Symbol::Arg(_) if i == 0 || i == n - 1 => {
                        return Err(Error::InvalidGenotype(format!(
                            "tree {i} slot {slot}: argument nodes are not allowed in this tree"
                        )));
                    }
                    Symbol::Coefficient { bin, .. } if bin >= COEFFICIENT_BINS => {
                        return Err(Error::InvalidGenotype(format!(
                            "tree {i} slot {slot}: coefficient bin {bin} out of range"
                        )));
                    }
                    _ => {}
                }
            }
        }
        Ok(Genotype { trees })
    }

    /// Single-tree genotype.
    pub fn single(tree: Tree) -> Result<Self> {
        Genotype::new(vec![tree])
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn tree(&self, i: usize) -> &Tree {
        &self.trees[i]
    }

    pub fn n_trees(&self) -> usize {
        self.trees.len()
    }

    pub fn output_index(&self) -> usize {
        self.trees.len() - 1
    }

    /// Total number of template slots over all trees.
    pub fn total_slots(&self) -> usize {
        self.trees.iter().map(Tree::len).sum()
    }

    /// Largest feature index referenced anywhere, active or not.
    pub fn max_feature(&self) -> Option<u32> {
        self.symbols()
            .filter_map(|s| match s {
                Symbol::Feature(k) => Some(*k),
                _ => None,
            })
            .max()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.trees.iter().flat_map(|t| t.nodes().iter())
    }

    /// Whether two genotypes have identical tree counts and depths.
    pub fn same_shape(&self, other: &Genotype) -> bool {
        self.trees.len() == other.trees.len()
            && self.trees.iter().zip(&other.trees).all(|(a, b)| a.depth() == b.depth())
    }

    /// Overwrites `slots` of tree `tree` with the donor's symbols.
    /// Caller guarantees matching shapes.
    pub(crate) fn copy_slots_from(&mut self, donor: &Genotype, tree: usize, slots: &[usize]) {
        let dst = self.trees[tree].nodes_mut();
        let src = donor.trees[tree].nodes();
        for &s in slots {
            dst[s] = src[s];
        }
    }

    pub(crate) fn tree_nodes_mut(&mut self, tree: usize) -> &mut [Symbol] {
        self.trees[tree].nodes_mut()
    }

    pub(crate) fn replace_tree(&mut self, i: usize, tree: Tree) {
        self.trees[i] = tree;
    }

    /// Compact text form: one line per tree, pre-order slot symbols separated
    /// by spaces.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for tree in &self.trees {
            let line: Vec<String> = tree.nodes().iter().map(Symbol::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the compact text form. Blank lines are ignored; each tree's
    /// depth is inferred from its slot count.
    pub fn from_lines(text: &str) -> Result<Self> {
        let mut trees = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let nodes = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<Symbol>().map_err(|message| Error::Parse {
                        line: lineno + 1,
                        message,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let depth = (nodes.len() + 1).trailing_zeros() as usize;
            if depth == 0 || (1usize << depth) != nodes.len() + 1 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("{} symbols is not a full template size", nodes.len()),
                });
            }
            trees.push(Tree::new(depth - 1, nodes).map_err(|e| Error::Parse {
                line: lineno + 1,
                message: e.to_string(),
            })?);
        }
        Genotype::new(trees)
    }
}

impl fmt::Display for Genotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_lines())
    }
}

impl FromStr for Genotype {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Genotype::from_lines(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(depth: usize, expr: &str) -> Tree {
        Tree::from_expression(depth, expr, Symbol::coefficient(0.0)).unwrap()
    }

    #[test]
    fn forward_references_are_rejected() {
        assert!(Genotype::new(vec![tree(1, "f0 x0 x1")]).is_err());
        assert!(Genotype::new(vec![tree(1, "x0"), tree(1, "f1 x0 x1")]).is_err());
        assert!(Genotype::new(vec![tree(1, "x0"), tree(1, "f0 x0 x1")]).is_ok());
    }

    #[test]
    fn argument_nodes_only_in_middle_trees() {
        assert!(Genotype::new(vec![tree(1, "a0")]).is_err());
        assert!(Genotype::new(vec![tree(1, "+ a0 x0"), tree(1, "x0")]).is_err());
        assert!(Genotype::new(vec![tree(1, "x0"), tree(1, "x0"), tree(1, "a1")]).is_err());
        assert!(Genotype::new(vec![tree(1, "x0"), tree(1, "+ a0 a1"), tree(1, "f1 x0 x1")]).is_ok());
        assert!(Genotype::new(vec![tree(1, "x0"), tree(0, "a2"), tree(1, "x0")]).is_err());
    }

    #[test]
    fn line_format_parses_back() {
        let g = Genotype::new(vec![tree(1, "x0"), tree(2, "sin * a0 a1"), tree(2, "+ f1 x1 x0 c-1.5")]).unwrap();
        let text = g.to_lines();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().nth(2).unwrap().starts_with("+ f1 x1 x0"));
        let back = Genotype::from_lines(&text).unwrap();
        assert_eq!(back, g);
        assert!(Genotype::from_lines("x0 x1").is_err());
        assert!(Genotype::from_lines("+ x0 q").is_err());
    }
}
