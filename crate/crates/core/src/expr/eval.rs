//! Column-at-a-time evaluation of genotypes.

use super::activity::Activity;
use super::genotype::Genotype;
use super::symbol::Symbol;
use super::template::right_offset;
use crate::data::Matrix;
use crate::error::{Error, Result};

type Frame<'a> = [Option<&'a [f64]>; 2];

/// Rows evaluated per block. Blocks keep buffers in cache and let callers
/// stop early.
pub const BLOCK_ROWS: usize = 256;

/// Reusable evaluation workspace.
///
/// Buffers are recycled across calls, so one evaluator per worker avoids
/// allocation in the inner loop. Rows are processed in blocks of
/// [`BLOCK_ROWS`]; within a block, calls whose callee reads no argument are
/// computed once and reused.
#[derive(Debug, Default)]
pub struct Evaluator {
    pool: Vec<Vec<f64>>,
    cache: Vec<Option<Vec<f64>>>,
    len: usize,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Output-tree values for every row of `features`.
    pub fn evaluate(&mut self, genotype: &Genotype, features: &Matrix) -> Result<Vec<f64>> {
        let mut out = vec![0.0; features.rows()];
        self.evaluate_into(genotype, features, &mut out)?;
        Ok(out)
    }

    /// As [`Evaluator::evaluate`], writing into `out` (resized to the row count).
    pub fn evaluate_into(
        &mut self,
        genotype: &Genotype,
        features: &Matrix,
        out: &mut Vec<f64>,
    ) -> Result<()> {
        let activity = Activity::of(genotype);
        self.evaluate_with(genotype, &activity, features, out)
    }

    /// Evaluation with a precomputed [`Activity`] of the same genotype.
    pub fn evaluate_with(
        &mut self,
        genotype: &Genotype,
        activity: &Activity,
        features: &Matrix,
        out: &mut Vec<f64>,
    ) -> Result<()> {
        out.clear();
        out.resize(features.rows(), 0.0);
        self.evaluate_blocks(genotype, activity, features, |start, block| {
            out[start..start + block.len()].copy_from_slice(block);
            true
        })?;
        Ok(())
    }

    /// Evaluates block by block, handing each block's output values and
    /// first row index to `visit`. Stops as soon as `visit` returns false.
    /// Returns whether every block was visited.
    pub fn evaluate_blocks(
        &mut self,
        genotype: &Genotype,
        activity: &Activity,
        features: &Matrix,
        mut visit: impl FnMut(usize, &[f64]) -> bool,
    ) -> Result<bool> {
        if let Some(k) = genotype.max_feature() {
            if k as usize >= features.cols() {
                return Err(Error::InvalidGenotype(format!(
                    "feature x{k} referenced but data has {} columns",
                    features.cols()
                )));
            }
        }
        let rows = features.rows();
        let mut out = self.take_len(BLOCK_ROWS);
        let mut start = 0;
        let mut complete = true;
        while start < rows {
            let len = BLOCK_ROWS.min(rows - start);
            self.set_len(len);
            self.cache.resize_with(genotype.n_trees(), || None);
            let ctx = Ctx {
                genotype,
                activity,
                features,
                start,
            };
            self.node(&ctx, genotype.output_index(), 0, 0, [None, None], &mut out[..len]);
            if !visit(start, &out[..len]) {
                complete = false;
                break;
            }
            start += len;
        }
        self.pool.push(out);
        self.release_cache();
        Ok(complete)
    }

    fn release_cache(&mut self) {
        for slot in self.cache.iter_mut() {
            if let Some(buf) = slot.take() {
                self.pool.push(buf);
            }
        }
    }

    fn set_len(&mut self, len: usize) {
        self.release_cache();
        self.len = len;
    }

    fn take_len(&mut self, len: usize) -> Vec<f64> {
        let mut b = self.pool.pop().unwrap_or_default();
        b.resize(len.max(BLOCK_ROWS), 0.0);
        b
    }

    fn take(&mut self) -> Vec<f64> {
        self.take_len(self.len)
    }

    fn give(&mut self, buf: Vec<f64>) {
        self.pool.push(buf);
    }

    fn node(&mut self, ctx: &Ctx<'_>, tree: usize, slot: usize, depth: usize, frame: Frame<'_>, out: &mut [f64]) {
        let t = ctx.genotype.tree(tree);
        let max_depth = t.depth();
        let len = out.len();
        match t.nodes()[slot] {
            Symbol::Feature(k) => out.copy_from_slice(&ctx.features.column(k as usize)[ctx.start..ctx.start + len]),
            Symbol::Coefficient { value, .. } => out.fill(value),
            Symbol::Arg(k) => match frame[k as usize] {
                Some(bound) => out.copy_from_slice(bound),
                None => out.fill(f64::NAN),
            },
            Symbol::Unary(op) => {
                self.node(ctx, tree, slot + 1, depth + 1, frame, out);
                for v in out.iter_mut() {
                    *v = op.apply(*v);
                }
            }
            Symbol::Binary(op) => {
                let right = slot + right_offset(depth, max_depth);
                self.node(ctx, tree, slot + 1, depth + 1, frame, out);
                let mut tmp = self.take();
                self.node(ctx, tree, right, depth + 1, frame, &mut tmp[..len]);
                for (o, &r) in out.iter_mut().zip(&tmp[..len]) {
                    *o = op.apply(*o, r);
                }
                self.give(tmp);
            }
            Symbol::Subexpr(j) => {
                let j = j as usize;
                let [use0, use1] = ctx.activity.uses_args(j);
                if !use0 && !use1 {
                    if let Some(cached) = &self.cache[j] {
                        out.copy_from_slice(&cached[..len]);
                        return;
                    }
                    self.node(ctx, j, 0, 0, [None, None], out);
                    let mut keep = self.take();
                    keep[..len].copy_from_slice(out);
                    self.cache[j] = Some(keep);
                    return;
                }
                let right = slot + right_offset(depth, max_depth);
                let a0 = use0.then(|| {
                    let mut b = self.take();
                    self.node(ctx, tree, slot + 1, depth + 1, frame, &mut b[..len]);
                    b
                });
                let a1 = use1.then(|| {
                    let mut b = self.take();
                    self.node(ctx, tree, right, depth + 1, frame, &mut b[..len]);
                    b
                });
                let bound = [a0.as_deref().map(|b| &b[..len]), a1.as_deref().map(|b| &b[..len])];
                self.node(ctx, j, 0, 0, bound, out);
                if let Some(b) = a0 {
                    self.give(b);
                }
                if let Some(b) = a1 {
                    self.give(b);
                }
            }
        }
    }
}

struct Ctx<'a> {
    genotype: &'a Genotype,
    activity: &'a Activity,
    features: &'a Matrix,
    start: usize,
}

/// Convenience wrapper around a throwaway [`Evaluator`].
pub fn evaluate(genotype: &Genotype, features: &Matrix) -> Result<Vec<f64>> {
    Evaluator::new().evaluate(genotype, features)
}
