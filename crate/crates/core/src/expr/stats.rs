//! Size and subexpression-usage statistics.

use serde::{Deserialize, Serialize};

use super::activity::Activity;
use super::genotype::Genotype;
use super::symbol::Symbol;
use super::template::right_offset;

/// Subexpression usage and node counts of one genotype.
///
/// Reference counts consider active call nodes only, one per occurrence.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UsageStats {
    /// Non-output trees reachable from the output.
    pub subexpressions_used: usize,
    /// Non-output trees referenced at least twice.
    pub subexpressions_reused: usize,
    /// Trees referenced at least twice that actively read an argument.
    pub reused_as_function: usize,
    /// Active slots over all trees, call and argument nodes included.
    pub nodes_total: usize,
    /// Size of the fully inlined expression.
    pub nodes_expanded: usize,
    /// Expanded size with every re-used tree body counted once.
    pub nodes_deduplicated: usize,
}

/// Size of an expansion as an affine function of the argument sizes:
/// `constant + per_arg[0] * |a0| + per_arg[1] * |a1|`.
#[derive(Debug, Clone, Copy, Default)]
struct SizeForm {
    constant: u64,
    per_arg: [u64; 2],
}

impl SizeForm {
    fn unit() -> Self {
        SizeForm {
            constant: 1,
            per_arg: [0, 0],
        }
    }

    fn plus(self, other: SizeForm) -> Self {
        SizeForm {
            constant: self.constant.saturating_add(other.constant),
            per_arg: [
                self.per_arg[0].saturating_add(other.per_arg[0]),
                self.per_arg[1].saturating_add(other.per_arg[1]),
            ],
        }
    }

    fn scaled(self, k: u64) -> Self {
        SizeForm {
            constant: self.constant.saturating_mul(k),
            per_arg: [self.per_arg[0].saturating_mul(k), self.per_arg[1].saturating_mul(k)],
        }
    }
}

impl UsageStats {
    pub fn of(genotype: &Genotype) -> Self {
        Self::with_activity(genotype, &Activity::of(genotype))
    }

    pub fn with_activity(genotype: &Genotype, activity: &Activity) -> Self {
        let n = genotype.n_trees();
        let out = n - 1;

        let mut refs = vec![0usize; n];
        for t in (0..n).filter(|&t| activity.tree_is_active(t)) {
            for (slot, sym) in genotype.tree(t).nodes().iter().enumerate() {
                if let (Symbol::Subexpr(j), true) = (sym, activity.is_active(t, slot)) {
                    refs[*j as usize] += 1;
                }
            }
        }

        let mut forms: Vec<SizeForm> = Vec::with_capacity(n);
        for t in 0..n {
            let tree = genotype.tree(t);
            let f = size_form(tree.nodes(), tree.depth(), 0, 0, activity, &forms);
            forms.push(f);
        }

        let subexpressions_used = (0..out).filter(|&t| activity.tree_is_active(t)).count();
        let subexpressions_reused = (0..out).filter(|&t| refs[t] >= 2).count();
        let reused_as_function = (0..out)
            .filter(|&t| refs[t] >= 2 && activity.uses_args(t).iter().any(|&u| u))
            .count();

        let expanded = forms[out].constant;
        let duplicated: u64 = (0..out)
            .filter(|&t| refs[t] >= 2)
            .map(|t| ((refs[t] - 1) as u64).saturating_mul(forms[t].constant))
            .fold(0u64, u64::saturating_add);

        UsageStats {
            subexpressions_used,
            subexpressions_reused,
            reused_as_function,
            nodes_total: activity.active_count(),
            nodes_expanded: clamp(expanded),
            nodes_deduplicated: clamp(expanded.saturating_sub(duplicated)),
        }
    }
}

fn clamp(v: u64) -> usize {
    usize::try_from(v).unwrap_or(usize::MAX)
}

fn size_form(
    nodes: &[Symbol],
    max_depth: usize,
    slot: usize,
    depth: usize,
    activity: &Activity,
    callee_forms: &[SizeForm],
) -> SizeForm {
    let right = || slot + right_offset(depth, max_depth);
    match nodes[slot] {
        Symbol::Feature(_) | Symbol::Coefficient { .. } => SizeForm::unit(),
        Symbol::Arg(k) => {
            let mut f = SizeForm::default();
            f.per_arg[k as usize] = 1;
            f
        }
        Symbol::Unary(_) => {
            SizeForm::unit().plus(size_form(nodes, max_depth, slot + 1, depth + 1, activity, callee_forms))
        }
        Symbol::Binary(_) => SizeForm::unit()
            .plus(size_form(nodes, max_depth, slot + 1, depth + 1, activity, callee_forms))
            .plus(size_form(nodes, max_depth, right(), depth + 1, activity, callee_forms)),
        Symbol::Subexpr(j) => {
            let callee = callee_forms[j as usize];
            let [u0, u1] = activity.uses_args(j as usize);
            let mut f = SizeForm {
                constant: callee.constant,
                per_arg: [0, 0],
            };
            if u0 {
                let a = size_form(nodes, max_depth, slot + 1, depth + 1, activity, callee_forms);
                f = f.plus(a.scaled(callee.per_arg[0]));
            }
            if u1 {
                let b = size_form(nodes, max_depth, right(), depth + 1, activity, callee_forms);
                f = f.plus(b.scaled(callee.per_arg[1]));
            }
            f
        }
    }
}

/// Usage statistics of a genotype.
pub fn usage_stats(genotype: &Genotype) -> UsageStats {
    UsageStats::of(genotype)
}
