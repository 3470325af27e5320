//! Elitist archive of mutually non-dominated solutions over
//! (size, R²): size is minimized and R² maximized.
//!
//! When an insertion pushes the archive over its capacity, the bounding box
//! of the archived objectives is cut into a uniform `D x D` grid and only
//! the best entry of each cell (highest R², then smallest size) is kept.
//! `D` is the largest count not above the capacity for which the survivors
//! fit. Until the next overflow, a candidate that lands in a cell already
//! held by a better entry is rejected unless it dominates some entry.

use std::collections::HashMap;

/// One archived solution.
#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveEntry<T> {
    pub size: f64,
    pub r2: f64,
    pub item: T,
}

impl<T> ArchiveEntry<T> {
    /// Pareto dominance: no worse in both objectives and better in one.
    pub fn dominates(&self, size: f64, r2: f64) -> bool {
        self.size <= size && self.r2 >= r2 && (self.size < size || self.r2 > r2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Grid {
    size: (f64, f64),
    r2: (f64, f64),
    divisions: usize,
}

impl Grid {
    fn axis(v: f64, (lo, hi): (f64, f64), d: usize) -> usize {
        if hi <= lo {
            return 0;
        }
        (((v - lo) / (hi - lo) * d as f64) as usize).min(d - 1)
    }

    fn cell(&self, size: f64, r2: f64) -> Option<(usize, usize)> {
        let inside = |v: f64, (lo, hi): (f64, f64)| v >= lo && v <= hi;
        (inside(size, self.size) && inside(r2, self.r2)).then(|| {
            (
                Grid::axis(size, self.size, self.divisions),
                Grid::axis(r2, self.r2, self.divisions),
            )
        })
    }
}

/// Adaptive-grid elitist archive with a target capacity.
#[derive(Debug, Clone)]
pub struct ParetoArchive<T> {
    entries: Vec<ArchiveEntry<T>>,
    capacity: usize,
    grid: Option<Grid>,
    changes: u64,
}

impl<T> ParetoArchive<T> {
    pub const DEFAULT_CAPACITY: usize = 100;

    pub fn new(capacity: usize) -> Self {
        ParetoArchive {
            entries: Vec::new(),
            capacity: capacity.max(1),
            grid: None,
            changes: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of accepted insertions so far.
    pub fn changes(&self) -> u64 {
        self.changes
    }

    /// Entries by ascending size; R² strictly increases along the list.
    pub fn front(&self) -> &[ArchiveEntry<T>] {
        &self.entries
    }

    /// Entry with the highest R² (smallest size among ties).
    pub fn best(&self) -> Option<&ArchiveEntry<T>> {
        // sorted by size with increasing R²: the last entry
        self.entries.last()
    }

    /// Offers a candidate; returns whether it was inserted. Non-finite
    /// objectives are rejected.
    pub fn try_insert(&mut self, size: f64, r2: f64, item: T) -> bool {
        if !size.is_finite() || !r2.is_finite() {
            return false;
        }
        if self
            .entries
            .iter()
            .any(|e| e.dominates(size, r2) || (e.size == size && e.r2 == r2))
        {
            return false;
        }
        let dominates_some = self.entries.iter().any(|e| {
            let c = ArchiveEntry { size, r2, item: () };
            c.dominates(e.size, e.r2)
        });
        if !dominates_some {
            if let Some(cell) = self.grid.and_then(|g| g.cell(size, r2)) {
                let grid = self.grid.unwrap();
                let held = self
                    .entries
                    .iter()
                    .any(|e| grid.cell(e.size, e.r2) == Some(cell) && e.r2 >= r2);
                if held {
                    return false;
                }
            }
        }
        self.entries.retain(|e| {
            let c = ArchiveEntry { size, r2, item: () };
            !c.dominates(e.size, e.r2)
        });
        let at = self.entries.partition_point(|e| e.size < size);
        self.entries.insert(at, ArchiveEntry { size, r2, item });
        self.changes += 1;
        if self.entries.len() > self.capacity {
            self.regrid();
        }
        true
    }

    fn regrid(&mut self) {
        let bounds = |f: fn(&ArchiveEntry<T>) -> f64| {
            self.entries
                .iter()
                .map(f)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
        };
        let size = bounds(|e| e.size);
        let r2 = bounds(|e| e.r2);
        for divisions in (1..=self.capacity).rev() {
            let grid = Grid { size, r2, divisions };
            let mut best: HashMap<(usize, usize), usize> = HashMap::new();
            for (i, e) in self.entries.iter().enumerate() {
                let cell = grid.cell(e.size, e.r2).expect("entries lie inside their bounding box");
                best.entry(cell)
                    .and_modify(|j| {
                        let o = &self.entries[*j];
                        if e.r2 > o.r2 || (e.r2 == o.r2 && e.size < o.size) {
                            *j = i;
                        }
                    })
                    .or_insert(i);
            }
            if best.len() <= self.capacity {
                let mut keep = vec![false; self.entries.len()];
                for i in best.into_values() {
                    keep[i] = true;
                }
                let mut k = keep.into_iter();
                self.entries.retain(|_| k.next().unwrap());
                self.grid = Some(grid);
                return;
            }
        }
    }
}

impl<T> Default for ParetoArchive<T> {
    fn default() -> Self {
        ParetoArchive::new(Self::DEFAULT_CAPACITY)
    }
}
