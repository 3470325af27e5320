//! Multi-tree genotypes: representation, evaluation, activity and statistics.

mod activity;
mod eval;
mod genotype;
mod infix;
mod inline;
mod stats;
mod symbol;
mod template;

pub use activity::{active_mask, Activity};
pub use eval::{evaluate, Evaluator};
pub use genotype::Genotype;
pub use infix::{to_infix, to_infix_named};
pub use inline::{inline, Expr};
pub use stats::{usage_stats, UsageStats};
pub use symbol::{BinaryOp, Symbol, UnaryOp, COEFFICIENT_BINS};
pub use template::{preorder_children, slot_depths, template_size, Tree, MAX_DEPTH};
