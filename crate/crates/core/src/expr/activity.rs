//! Which slots of a genotype influence the output.
//!
//! Activity is computed in two passes. The local pass walks each tree from
//! its own root in index order: binary nodes activate both children, unary
//! nodes the left child, and a call `f_j` activates child `k` only when tree
//! `j` actively reads argument `k`. The global pass then keeps the local set
//! of every tree reachable from the output through active calls.

use super::genotype::Genotype;
use super::symbol::Symbol;
use super::template::right_offset;

/// Per-tree activity of a genotype.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Activity {
    local: Vec<Vec<bool>>,
    uses_arg: Vec<[bool; 2]>,
    tree_active: Vec<bool>,
}

impl Activity {
    pub fn of(genotype: &Genotype) -> Self {
        let n = genotype.n_trees();
        let mut local = Vec::with_capacity(n);
        let mut uses_arg = Vec::with_capacity(n);
        for tree in genotype.trees() {
            let mut mask = vec![false; tree.len()];
            let mut args = [false; 2];
            mark(tree.nodes(), tree.depth(), 0, 0, &uses_arg, &mut mask, &mut args);
            local.push(mask);
            uses_arg.push(args);
        }

        let mut tree_active = vec![false; n];
        tree_active[n - 1] = true;
        for i in (0..n).rev() {
            if !tree_active[i] {
                continue;
            }
            for (sym, &on) in genotype.tree(i).nodes().iter().zip(&local[i]) {
                if let (Symbol::Subexpr(j), true) = (sym, on) {
                    tree_active[*j as usize] = true;
                }
            }
        }
        Activity {
            local,
            uses_arg,
            tree_active,
        }
    }

    /// Whether slot `slot` of tree `tree` is connected to the output.
    #[inline]
    pub fn is_active(&self, tree: usize, slot: usize) -> bool {
        self.tree_active[tree] && self.local[tree][slot]
    }

    pub fn tree_is_active(&self, tree: usize) -> bool {
        self.tree_active[tree]
    }

    /// Activity of tree `tree` when evaluated from its own root, whether or
    /// not the output reaches it.
    pub fn local_mask(&self, tree: usize) -> &[bool] {
        &self.local[tree]
    }

    /// Arguments tree `tree` reads along its active paths.
    pub fn uses_args(&self, tree: usize) -> [bool; 2] {
        self.uses_arg[tree]
    }

    /// Global mask: one boolean per slot, per tree.
    pub fn mask(&self) -> Vec<Vec<bool>> {
        self.local
            .iter()
            .zip(&self.tree_active)
            .map(|(m, &on)| m.iter().map(|&b| b && on).collect())
            .collect()
    }

    /// Number of active slots in the whole genotype.
    pub fn active_count(&self) -> usize {
        (0..self.local.len())
            .filter(|&t| self.tree_active[t])
            .map(|t| self.local[t].iter().filter(|&&b| b).count())
            .sum()
    }
}

/// Active-node mask of a genotype, one boolean array per tree.
pub fn active_mask(genotype: &Genotype) -> Vec<Vec<bool>> {
    Activity::of(genotype).mask()
}

fn mark(
    nodes: &[Symbol],
    max_depth: usize,
    slot: usize,
    depth: usize,
    callee_args: &[[bool; 2]],
    mask: &mut [bool],
    args: &mut [bool; 2],
) {
    mask[slot] = true;
    let sym = nodes[slot];
    let (left, right) = if depth < max_depth {
        (slot + 1, slot + right_offset(depth, max_depth))
    } else {
        (slot, slot)
    };
    match sym {
        Symbol::Binary(_) => {
            mark(nodes, max_depth, left, depth + 1, callee_args, mask, args);
            mark(nodes, max_depth, right, depth + 1, callee_args, mask, args);
        }
        Symbol::Unary(_) => mark(nodes, max_depth, left, depth + 1, callee_args, mask, args),
        Symbol::Subexpr(j) => {
            let [a0, a1] = callee_args[j as usize];
            if a0 {
                mark(nodes, max_depth, left, depth + 1, callee_args, mask, args);
            }
            if a1 {
                mark(nodes, max_depth, right, depth + 1, callee_args, mask, args);
            }
        }
        Symbol::Arg(k) => args[k as usize] = true,
        Symbol::Feature(_) | Symbol::Coefficient { .. } => {}
    }
}
