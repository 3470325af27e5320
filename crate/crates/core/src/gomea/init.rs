//! Random symbols and half-and-half initialization.

use rand::Rng;

use super::config::{RunConfig, TerminalPolicy};
use crate::error::{Error, Result};
use crate::expr::{template_size, Genotype, Symbol, Tree};

/// Legal symbols of one tree of a multi-tree configuration.
#[derive(Debug, Clone)]
pub struct SymbolSampler {
    functions: Vec<Symbol>,
    variables: Vec<Symbol>,
    coefficient_range: Option<(f64, f64)>,
    p_terminal: f64,
    p_coefficient: f64,
}

impl SymbolSampler {
    /// Symbol set of tree `tree`: the configured operators plus calls to every
    /// earlier tree; features, coefficients and (for trees `1..n-1`)
    /// argument nodes as terminals, restricted by the terminal policy.
    pub fn for_tree(config: &RunConfig, tree: usize, n_features: usize, coefficient_range: (f64, f64)) -> Result<Self> {
        let n = config.n_trees;
        let callable = tree > 0 && tree + 1 < n;
        let koza = callable && config.terminal_policy == TerminalPolicy::Koza;

        let mut functions: Vec<Symbol> = config.binary_ops.iter().map(|&op| Symbol::Binary(op)).collect();
        functions.extend(config.unary_ops.iter().map(|&op| Symbol::Unary(op)));
        functions.extend((0..tree as u32).map(Symbol::Subexpr));

        let mut variables = Vec::new();
        if !koza {
            variables.extend((0..n_features as u32).map(Symbol::Feature));
        }
        if callable {
            variables.extend([Symbol::Arg(0), Symbol::Arg(1)]);
        }
        let coefficient_range = (config.coefficients && !koza).then_some(coefficient_range);
        if variables.is_empty() && coefficient_range.is_none() {
            return Err(Error::InvalidConfig(format!("tree {tree} has an empty terminal set")));
        }
        if functions.is_empty() && config.tree_depth > 0 {
            return Err(Error::InvalidConfig(format!("tree {tree} has an empty function set")));
        }
        Ok(SymbolSampler {
            functions,
            variables,
            coefficient_range,
            p_terminal: config.p_terminal_grow,
            p_coefficient: config.p_coefficient,
        })
    }

    pub fn functions(&self) -> &[Symbol] {
        &self.functions
    }

    /// Non-coefficient terminals.
    pub fn variables(&self) -> &[Symbol] {
        &self.variables
    }

    pub fn coefficient_range(&self) -> Option<(f64, f64)> {
        self.coefficient_range
    }

    pub fn function<R: Rng + ?Sized>(&self, rng: &mut R) -> Symbol {
        self.functions[rng.random_range(0..self.functions.len())]
    }

    /// A coefficient with the configured probability (when coefficients are
    /// available), otherwise a uniform feature or argument node.
    pub fn terminal<R: Rng + ?Sized>(&self, rng: &mut R) -> Symbol {
        match self.coefficient_range {
            Some((lo, hi)) if self.variables.is_empty() || rng.random_bool(self.p_coefficient) => {
                Symbol::coefficient(lo + (hi - lo) * rng.random::<f64>())
            }
            _ => self.variables[rng.random_range(0..self.variables.len())],
        }
    }

    /// Symbol for an internal slot reached by the grow method.
    pub fn grow_slot<R: Rng + ?Sized>(&self, rng: &mut R) -> Symbol {
        if self.functions.is_empty() || rng.random_bool(self.p_terminal) {
            self.terminal(rng)
        } else {
            self.function(rng)
        }
    }

    /// Random legal symbol for a slot at `slot_depth` of a depth-`depth` template.
    pub fn slot<R: Rng + ?Sized>(&self, slot_depth: usize, depth: usize, rng: &mut R) -> Symbol {
        if slot_depth == depth {
            self.terminal(rng)
        } else {
            self.grow_slot(rng)
        }
    }

    /// Operators at every internal slot and terminals at every leaf.
    pub fn full_tree<R: Rng + ?Sized>(&self, depth: usize, rng: &mut R) -> Tree {
        let nodes = crate::expr::slot_depths(depth)
            .into_iter()
            .map(|d| {
                if d as usize == depth {
                    self.terminal(rng)
                } else {
                    self.function(rng)
                }
            })
            .collect();
        Tree::new(depth, nodes).expect("full tree places terminals at leaves")
    }

    /// Grow-method tree: each reached internal slot becomes a terminal with
    /// the grow probability. Unreached slots keep random intron symbols.
    pub fn grow_tree<R: Rng + ?Sized>(&self, depth: usize, rng: &mut R) -> Tree {
        let mut tree = self.full_tree(depth, rng);
        let nodes = tree.nodes_mut();
        let mut stack = vec![(0usize, 0usize)];
        while let Some((idx, d)) = stack.pop() {
            if d == depth {
                continue;
            }
            let sym = self.grow_slot(rng);
            nodes[idx] = sym;
            let right = idx + template_size(depth - d - 1) + 1;
            match sym.arity() {
                2 => {
                    stack.push((right, d + 1));
                    stack.push((idx + 1, d + 1));
                }
                1 => stack.push((idx + 1, d + 1)),
                _ => {}
            }
        }
        tree
    }
}

/// One sampler per tree.
pub fn samplers(config: &RunConfig, n_features: usize, coefficient_range: (f64, f64)) -> Result<Vec<SymbolSampler>> {
    (0..config.n_trees)
        .map(|t| SymbolSampler::for_tree(config, t, n_features, coefficient_range))
        .collect()
}

/// Half-and-half population: even-indexed individuals are built with the
/// full method, odd-indexed ones with grow.
pub fn initialize_population<R: Rng + ?Sized>(
    config: &RunConfig,
    samplers: &[SymbolSampler],
    rng: &mut R,
) -> Result<Vec<Genotype>> {
    config.validate()?;
    (0..config.population_size)
        .map(|k| {
            let trees = samplers
                .iter()
                .map(|s| {
                    if k % 2 == 0 {
                        s.full_tree(config.tree_depth, rng)
                    } else {
                        s.grow_tree(config.tree_depth, rng)
                    }
                })
                .collect();
            Genotype::new(trees)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Activity;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(42)
    }

    #[test]
    fn single_tree_has_no_calls_or_arguments() {
        let config = RunConfig::new(1, 4, 64, 0);
        let s = samplers(&config, 3, (0.0, 1.0)).unwrap();
        let pop = initialize_population(&config, &s, &mut rng()).unwrap();
        assert!(pop
            .iter()
            .flat_map(|g| g.symbols())
            .all(|s| !matches!(s, Symbol::Subexpr(_) | Symbol::Arg(_))));
    }

    #[test]
    fn full_tree_depth_two() {
        let config = RunConfig::new(1, 2, 2, 0);
        let s = SymbolSampler::for_tree(&config, 0, 2, (0.0, 1.0)).unwrap();
        let t = s.full_tree(2, &mut rng());
        let depths = crate::expr::slot_depths(2);
        for (sym, d) in t.nodes().iter().zip(depths) {
            assert_eq!(sym.is_terminal(), d == 2);
        }
    }

    #[test]
    fn grow_frequencies() {
        let config = RunConfig::new(3, 4, 2, 0);
        let s = SymbolSampler::for_tree(&config, 1, 5, (-1.0, 1.0)).unwrap();
        let mut r = rng();
        let n = 100_000;
        let mut terminals = 0;
        let mut coefficients = 0;
        for _ in 0..n {
            let sym = s.grow_slot(&mut r);
            if sym.is_terminal() {
                terminals += 1;
                coefficients += matches!(sym, Symbol::Coefficient { .. }) as usize;
            }
        }
        let pt = terminals as f64 / n as f64;
        let pc = coefficients as f64 / terminals as f64;
        assert!((pt - 0.5).abs() < 0.01, "{pt}");
        assert!((pc - 0.5).abs() < 0.01, "{pc}");
    }

    #[test]
    fn grow_trees_stop_at_terminals() {
        let config = RunConfig::new(1, 5, 2, 0);
        let s = SymbolSampler::for_tree(&config, 0, 2, (0.0, 1.0)).unwrap();
        let mut r = rng();
        let mut sizes = Vec::new();
        for _ in 0..200 {
            let g = Genotype::single(s.grow_tree(5, &mut r)).unwrap();
            sizes.push(Activity::of(&g).active_count());
        }
        assert!(sizes.contains(&1));
        assert!(sizes.iter().any(|&n| n > 7));
    }

    #[test]
    fn koza_policy_restricts_callable_trees() {
        let mut config = RunConfig::new(4, 3, 2, 0);
        config.terminal_policy = TerminalPolicy::Koza;
        let t0 = SymbolSampler::for_tree(&config, 0, 3, (0.0, 1.0)).unwrap();
        let t1 = SymbolSampler::for_tree(&config, 1, 3, (0.0, 1.0)).unwrap();
        let t3 = SymbolSampler::for_tree(&config, 3, 3, (0.0, 1.0)).unwrap();
        assert_eq!(t1.variables(), [Symbol::Arg(0), Symbol::Arg(1)]);
        assert!(t1.coefficient_range().is_none());
        assert!(t0.coefficient_range().is_some() && t0.variables().len() == 3);
        assert_eq!(t3.variables().len(), 3);
        assert!(t3.functions().contains(&Symbol::Subexpr(2)));
    }
}
