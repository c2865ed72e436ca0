//! Checks for externally supplied tables and matrices: the central groupoid
//! axiom, A² = J on the incidence matrix, unique 2-paths counted directly on
//! the digraph, and the idempotent count. The matrix product and the path
//! count are the same property computed by different routes, which is the
//! point: they must agree.

use std::fmt;

use upp2_core::algebra::{cg_axiom_witness, cg_digraph, integer_sqrt};
use upp2_core::{Digraph, OperationTable};

use crate::tablefmt::ParsedGrid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail(String),
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }

    fn fail(msg: impl Into<String>) -> Self {
        CheckOutcome::Fail(msg.into())
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckOutcome::Pass => write!(f, "ok"),
            CheckOutcome::Fail(msg) => write!(f, "FAIL ({msg})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub order: usize,
    pub kind: &'static str,
    pub cg_axiom: CheckOutcome,
    pub a2_equals_j: CheckOutcome,
    pub unique_two_paths: CheckOutcome,
    pub idempotent_count: CheckOutcome,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.cg_axiom.passed()
            && self.a2_equals_j.passed()
            && self.unique_two_paths.passed()
            && self.idempotent_count.passed()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {} {}", self.order, self.kind)?;
        writeln!(f, "  central groupoid axiom: {}", self.cg_axiom)?;
        writeln!(f, "  A^2 = J:                {}", self.a2_equals_j)?;
        writeln!(f, "  unique 2-paths:         {}", self.unique_two_paths)?;
        writeln!(f, "  idempotents = sqrt(k):  {}", self.idempotent_count)?;
        write!(
            f,
            "{}",
            if self.all_pass() { "PASS" } else { "FAIL" }
        )
    }
}

pub fn verify_grid(grid: &ParsedGrid) -> VerifyReport {
    match grid {
        ParsedGrid::Table(table) => verify_table(table),
        ParsedGrid::Matrix(rows) => verify_matrix(rows),
    }
}

pub fn verify_table(table: &OperationTable) -> VerifyReport {
    let g = cg_digraph(table);
    VerifyReport {
        order: table.order(),
        kind: "table",
        cg_axiom: axiom_outcome(table),
        a2_equals_j: a2_outcome(&g),
        unique_two_paths: paths_outcome(&g),
        idempotent_count: idempotent_outcome(table.order(), table.idempotents().len()),
    }
}

pub fn verify_matrix(rows: &[Vec<u8>]) -> VerifyReport {
    let k = rows.len();
    let mut g = Digraph::new(k);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                g.add_edge(i, j);
            }
        }
    }
    let a2 = a2_outcome(&g);
    let paths = paths_outcome(&g);
    // The midpoint operation exists only when paths are unique; without it
    // there is no table to check.
    let (axiom, idem) = match midpoint_table(&g) {
        Some(table) => (
            axiom_outcome(&table),
            idempotent_outcome(k, table.idempotents().len()),
        ),
        None => (
            CheckOutcome::fail("no midpoint operation: 2-paths are not unique"),
            idempotent_outcome(k, (0..k).filter(|&v| g.has_edge(v, v)).count()),
        ),
    };
    VerifyReport {
        order: k,
        kind: "matrix",
        cg_axiom: axiom,
        a2_equals_j: a2,
        unique_two_paths: paths,
        idempotent_count: idem,
    }
}

fn axiom_outcome(table: &OperationTable) -> CheckOutcome {
    match cg_axiom_witness(table) {
        None => CheckOutcome::Pass,
        Some((a, b, c)) => {
            let got = table.get(table.get(a, b), table.get(b, c));
            CheckOutcome::fail(format!(
                "({}*{})*({}*{}) = {}, expected {}",
                a + 1,
                b + 1,
                b + 1,
                c + 1,
                got + 1,
                b + 1
            ))
        }
    }
}

/// Integer matrix multiplication route.
fn a2_outcome(g: &Digraph) -> CheckOutcome {
    let k = g.node_count();
    let a: Vec<Vec<u32>> = (0..k)
        .map(|i| (0..k).map(|j| u32::from(g.has_edge(i, j))).collect())
        .collect();
    for i in 0..k {
        for j in 0..k {
            let entry: u32 = (0..k).map(|l| a[i][l] * a[l][j]).sum();
            if entry != 1 {
                return CheckOutcome::fail(format!(
                    "(A^2)[{},{}] = {entry}",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    CheckOutcome::Pass
}

/// Direct path-count route on adjacency sets.
fn paths_outcome(g: &Digraph) -> CheckOutcome {
    let k = g.node_count();
    let in_masks = g.in_masks();
    for i in 0..k {
        for (j, mask) in in_masks.iter().enumerate() {
            let count = (g.out_mask(i) & mask).count_ones();
            if count != 1 {
                return CheckOutcome::fail(format!(
                    "{count} directed 2-paths from {} to {}",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    CheckOutcome::Pass
}

fn idempotent_outcome(order: usize, got: usize) -> CheckOutcome {
    match integer_sqrt(order) {
        None => CheckOutcome::fail(format!("order {order} is not a perfect square")),
        Some(n) if got == n => CheckOutcome::Pass,
        Some(n) => CheckOutcome::fail(format!("{got} idempotents, expected {n}")),
    }
}

/// The midpoint operation of a unique-2-path digraph: a∘b is the middle node
/// of the one path a → c → b.
fn midpoint_table(g: &Digraph) -> Option<OperationTable> {
    let k = g.node_count();
    let in_masks = g.in_masks();
    let mut vals = Vec::with_capacity(k * k);
    for a in 0..k {
        for mask in &in_masks {
            let meet = g.out_mask(a) & mask;
            if meet.count_ones() != 1 {
                return None;
            }
            vals.push(meet.trailing_zeros() as usize);
        }
    }
    OperationTable::new(k, vals).ok()
}
