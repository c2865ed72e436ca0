use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A finite binary operation as a dense k×k table with entries 0..k.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperationTable {
    order: usize,
    vals: Vec<usize>,
}

impl OperationTable {
    pub fn new(order: usize, vals: Vec<usize>) -> Result<Self> {
        assert_eq!(vals.len(), order * order, "table must be k*k entries");
        for (i, &v) in vals.iter().enumerate() {
            if v >= order {
                return Err(Error::EntryOutOfRange {
                    row: i / order + 1,
                    col: i % order + 1,
                    entry: v + 1,
                    order,
                });
            }
        }
        Ok(OperationTable { order, vals })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        let mut vals = Vec::with_capacity(order * order);
        for row in rows {
            assert_eq!(row.len(), order, "table rows must be square");
            vals.extend_from_slice(row);
        }
        OperationTable::new(order, vals)
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut vals = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                vals.push(f(a, b));
            }
        }
        OperationTable::new(order, vals)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, a: usize, b: usize) -> usize {
        self.vals[a * self.order + b]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.vals[a * self.order..(a + 1) * self.order]
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order).filter(|&a| self.get(a, a) == a).collect()
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotents().len() == self.order
    }

    pub fn is_associative(&self) -> bool {
        let k = self.order;
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if self.get(self.get(a, b), c) != self.get(a, self.get(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The isomorphic table t' with t'(p(a), p(b)) = p(t(a, b)).
    pub fn apply_iso(&self, p: &Permutation) -> OperationTable {
        let k = self.order;
        let mut vals = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                vals[p.apply(a) * k + p.apply(b)] = p.apply(self.get(a, b));
            }
        }
        OperationTable { order: k, vals }
    }
}

impl fmt::Debug for OperationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "OperationTable(order {})", self.order)?;
        for a in 0..self.order {
            for b in 0..self.order {
                write!(f, "{:>3}", self.get(a, b) + 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
