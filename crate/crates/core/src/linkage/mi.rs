use std::collections::HashMap;

use crate::error::{Error, Result};

/// Symmetric matrix of pairwise mutual information between loci, with the
/// per-locus entropies on the diagonal. Natural-log units.
#[derive(Debug, Clone, PartialEq)]
pub struct MiMatrix {
    size: usize,
    values: Vec<f64>,
}

impl MiMatrix {
    pub fn zeros(size: usize) -> Self {
        MiMatrix {
            size,
            values: vec![0.0; size * size],
        }
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = MiMatrix::zeros(size);
        for i in 0..size {
            for j in i..size {
                let v = f(i, j);
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.size + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[i * self.size + j] = v;
        self.values[j * self.size + i] = v;
    }

    /// Marginal entropy of locus `i`.
    pub fn entropy(&self, i: usize) -> f64 {
        self.get(i, i)
    }

    /// Entry-wise `max(self - initial, 0)`.
    pub fn subtract_bias(&self, initial: &MiMatrix) -> Result<MiMatrix> {
        if initial.size != self.size {
            return Err(Error::SizeMismatch {
                expected: self.size,
                found: initial.size,
            });
        }
        Ok(MiMatrix {
            size: self.size,
            values: self
                .values
                .iter()
                .zip(&initial.values)
                .map(|(c, b)| (c - b).max(0.0))
                .collect(),
        })
    }
}

/// Entry-wise `max(current - initial, 0)`.
pub fn subtract_bias(current: &MiMatrix, initial: &MiMatrix) -> Result<MiMatrix> {
    current.subtract_bias(initial)
}

/// Maximum-likelihood mutual information between every pair of loci.
///
/// `columns[i]` holds the categorical symbol id of locus `i` in every
/// individual. `M[i][j] = H(i) + H(j) - H(i, j)` with plug-in entropies.
pub fn estimate_mi(columns: &[Vec<u64>]) -> Result<MiMatrix> {
    let rows = columns.first().map_or(0, Vec::len);
    if columns.is_empty() || rows == 0 {
        return Err(Error::EmptyPopulation);
    }
    if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
        return Err(Error::SizeMismatch {
            expected: rows,
            found: bad.len(),
        });
    }

    // Dense relabelling makes joint counts a flat array lookup.
    let mut dense: Vec<Vec<u32>> = Vec::with_capacity(columns.len());
    let mut arity: Vec<usize> = Vec::with_capacity(columns.len());
    for col in columns {
        let mut ids: HashMap<u64, u32> = HashMap::new();
        let labels: Vec<u32> = col
            .iter()
            .map(|v| {
                let next = ids.len() as u32;
                *ids.entry(*v).or_insert(next)
            })
            .collect();
        arity.push(ids.len());
        dense.push(labels);
    }

    let n = rows as f64;
    let plogp = |count: usize| -> f64 {
        if count == 0 {
            0.0
        } else {
            let p = count as f64 / n;
            -p * p.ln()
        }
    };

    let l = columns.len();
    let mut m = MiMatrix::zeros(l);
    let mut entropy = vec![0.0; l];
    for i in 0..l {
        let mut counts = vec![0usize; arity[i]];
        for &s in &dense[i] {
            counts[s as usize] += 1;
        }
        entropy[i] = counts.iter().map(|&c| plogp(c)).sum();
        m.set(i, i, entropy[i]);
    }

    let mut joint: Vec<usize> = Vec::new();
    for i in 0..l {
        for j in (i + 1)..l {
            let mi = if arity[i] == 1 || arity[j] == 1 {
                0.0
            } else {
                let width = arity[j];
                joint.clear();
                joint.resize(arity[i] * width, 0);
                for (&a, &b) in dense[i].iter().zip(&dense[j]) {
                    joint[a as usize * width + b as usize] += 1;
                }
                let h_ij: f64 = joint.iter().map(|&c| plogp(c)).sum();
                (entropy[i] + entropy[j] - h_ij).max(0.0)
            };
            m.set(i, j, mi);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn perfectly_dependent_pair() {
        // A = [+,+,x,x], B = [sin,sin,cos,cos]
        let m = estimate_mi(&[vec![0, 0, 1, 1], vec![7, 7, 8, 8]]).unwrap();
        assert!((m.get(0, 1) - LN2).abs() < 1e-12);
        assert!((m.entropy(0) - LN2).abs() < 1e-12);
    }

    #[test]
    fn independent_pair() {
        let m = estimate_mi(&[vec![0, 0, 1, 1], vec![7, 8, 7, 8]]).unwrap();
        assert!(m.get(0, 1).abs() < 1e-12);
    }

    #[test]
    fn constant_column_has_no_information() {
        let m = estimate_mi(&[vec![3, 3, 3, 3], vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(m.get(0, 1), 0.0);
        assert_eq!(m.entropy(0), 0.0);
    }

    #[test]
    fn rejects_empty_and_ragged() {
        assert!(estimate_mi(&[]).is_err());
        assert!(estimate_mi(&[vec![]]).is_err());
        assert!(estimate_mi(&[vec![1, 2], vec![1]]).is_err());
    }

    #[test]
    fn bias_subtraction_clamps() {
        let cur = MiMatrix::from_fn(2, |i, j| if i == j { 1.0 } else { 0.3 });
        let init = MiMatrix::from_fn(2, |i, j| if i == j { 1.0 } else { 0.5 });
        let d = subtract_bias(&cur, &init).unwrap();
        assert_eq!(d.get(0, 1), 0.0);
        assert_eq!(subtract_bias(&cur, &cur).unwrap(), MiMatrix::zeros(2));
        assert_eq!(subtract_bias(&cur, &MiMatrix::zeros(2)).unwrap(), cur);
        assert!(subtract_bias(&cur, &MiMatrix::zeros(3)).is_err());
    }
}
