//! Semicentral bigroupoids, central groupoids, liftings, and conversions
//! between structures, operation tables, and graph pairs.
//!
//! Axiom checks are exhaustive triple loops; the orders in play stay at or
//! below 16 so there is nothing to optimize.

use crate::canon::Digraph;
use crate::error::{Error, Result};
use crate::graphpair::GraphPair;
use crate::perm::Permutation;
use crate::rect::{BaseSet, Prs, Rectangle};
use crate::table::OperationTable;

/// A two-operation algebra satisfying (a•b)∘(b•c) = b and (a∘b)•(b∘c) = b.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemicentralBigroupoid {
    bullet: OperationTable,
    circ: OperationTable,
}

impl SemicentralBigroupoid {
    pub fn new(bullet: OperationTable, circ: OperationTable) -> Result<Self> {
        if bullet.order() != circ.order() {
            return Err(Error::OrderMismatch(bullet.order(), circ.order()));
        }
        if let Some((a, b, c)) = scb_axiom_witness(&bullet, &circ) {
            return Err(Error::ScbAxiom {
                a: a + 1,
                b: b + 1,
                c: c + 1,
            });
        }
        Ok(SemicentralBigroupoid { bullet, circ })
    }

    pub fn order(&self) -> usize {
        self.bullet.order()
    }

    pub fn bullet(&self) -> &OperationTable {
        &self.bullet
    }

    pub fn circ(&self) -> &OperationTable {
        &self.circ
    }

    /// Both operations are idempotent together; checking the first suffices,
    /// but both are checked since this doubles as a theory test.
    pub fn is_idempotent(&self) -> bool {
        self.bullet.is_idempotent() && self.circ.is_idempotent()
    }

    /// The dual algebra with the operations exchanged.
    pub fn dual(&self) -> SemicentralBigroupoid {
        SemicentralBigroupoid {
            bullet: self.circ.clone(),
            circ: self.bullet.clone(),
        }
    }
}

/// A one-operation algebra satisfying (a•b)•(b•c) = b. Construction validates
/// the axiom, the square order, and the idempotent count, and reports the
/// offending witness on failure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CentralGroupoid {
    op: OperationTable,
}

impl CentralGroupoid {
    pub fn new(op: OperationTable) -> Result<Self> {
        let k = op.order();
        let n = integer_sqrt(k).ok_or(Error::NonSquareOrder(k))?;
        if let Some((a, b, c)) = cg_axiom_witness(&op) {
            return Err(Error::CgAxiom {
                a: a + 1,
                b: b + 1,
                c: c + 1,
                got: op.get(op.get(a, b), op.get(b, c)) + 1,
            });
        }
        let idem = op.idempotents().len();
        if idem != n {
            return Err(Error::IdempotentCount {
                order: k,
                got: idem,
                want: n,
            });
        }
        Ok(CentralGroupoid { op })
    }

    pub fn order(&self) -> usize {
        self.op.order()
    }

    pub fn table(&self) -> &OperationTable {
        &self.op
    }

    pub fn as_scb(&self) -> SemicentralBigroupoid {
        SemicentralBigroupoid {
            bullet: self.op.clone(),
            circ: self.op.clone(),
        }
    }
}

pub fn integer_sqrt(k: usize) -> Option<usize> {
    let r = (k as f64).sqrt().round() as usize;
    (r.saturating_sub(1)..=r + 1).find(|&n| n * n == k)
}

/// First triple violating either semicentral identity, if any.
pub fn scb_axiom_witness(
    bullet: &OperationTable,
    circ: &OperationTable,
) -> Option<(usize, usize, usize)> {
    let k = bullet.order();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if circ.get(bullet.get(a, b), bullet.get(b, c)) != b
                    || bullet.get(circ.get(a, b), circ.get(b, c)) != b
                {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

pub fn check_scb(bullet: &OperationTable, circ: &OperationTable) -> bool {
    bullet.order() == circ.order() && scb_axiom_witness(bullet, circ).is_none()
}

/// First triple violating (a•b)•(b•c) = b, if any.
pub fn cg_axiom_witness(op: &OperationTable) -> Option<(usize, usize, usize)> {
    let k = op.order();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if op.get(op.get(a, b), op.get(b, c)) != b {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Central groupoid test with the square-order fast path: non-square orders
/// carry no central groupoid at all.
pub fn check_central_groupoid(op: &OperationTable) -> bool {
    integer_sqrt(op.order()).is_some() && cg_axiom_witness(op).is_none()
}

/// The square map x ↦ x•x, which is a permutation for every semicentral
/// bigroupoid. A non-bijective image signals invalid input.
pub fn square_map(scb: &SemicentralBigroupoid) -> Result<Permutation> {
    let k = scb.order();
    let mut images = Vec::with_capacity(k);
    let mut source = vec![usize::MAX; k];
    for x in 0..k {
        let sq = scb.bullet().get(x, x);
        if source[sq] != usize::MAX {
            return Err(Error::SquareMapNotBijective {
                a: source[sq] + 1,
                b: x + 1,
                image: sq + 1,
            });
        }
        source[sq] = x;
        images.push(sq);
    }
    Permutation::from_images(images)
}

/// The lifting of (S,•,∘) by φ: the algebra (S,∗,+) with a∗b = φ⁻¹(a•b) and
/// a+b = φ(a)∘φ(b). Always a semicentral bigroupoid again; the output is
/// re-validated anyway.
pub fn lift(scb: &SemicentralBigroupoid, phi: &Permutation) -> Result<SemicentralBigroupoid> {
    let k = scb.order();
    if phi.degree() != k {
        return Err(Error::DegreeMismatch {
            got: phi.degree(),
            want: k,
        });
    }
    let inv = phi.inverse();
    let star = OperationTable::from_fn(k, |a, b| inv.apply(scb.bullet().get(a, b)))?;
    let plus = OperationTable::from_fn(k, |a, b| scb.circ().get(phi.apply(a), phi.apply(b)))?;
    SemicentralBigroupoid::new(star, plus)
}

/// Lifting by the square map, which makes both operations idempotent.
pub fn idempotent_lifting(
    scb: &SemicentralBigroupoid,
) -> Result<(SemicentralBigroupoid, Permutation)> {
    let phi = square_map(scb)?;
    let lifted = lift(scb, &phi)?;
    if !lifted.is_idempotent() {
        return Err(Error::TheoryViolation(
            "lifting by the square map did not produce an idempotent algebra".into(),
        ));
    }
    Ok((lifted, phi))
}

/// The rectangular structure of an idempotent semicentral bigroupoid:
/// one rectangle (S•x, x•S) per element, with middle x.
pub fn scb_to_rs(scb: &SemicentralBigroupoid) -> Result<Prs> {
    let k = scb.order();
    if let Some(x) = (0..k).find(|&x| scb.bullet().get(x, x) != x) {
        return Err(Error::NotIdempotent(x + 1));
    }
    if let Some(x) = (0..k).find(|&x| scb.circ().get(x, x) != x) {
        return Err(Error::NotIdempotent(x + 1));
    }
    let rect_for = |x: usize| -> Result<Rectangle> {
        let rows = (0..k).map(|a| scb.bullet().get(a, x)).collect();
        let cols = (0..k).map(|b| scb.bullet().get(x, b)).collect();
        Rectangle::new(rows, cols)
    };
    let first = rect_for(0).map_err(theory)?;
    let (n, m) = first.format();
    if n * m != k {
        return Err(theory(Error::NonSquareOrder(k)));
    }
    let base = BaseSet::new(n, m)?;
    let mut prs = Prs::empty(base);
    for x in 0..k {
        let rect = rect_for(x).map_err(theory)?;
        if rect.middle() != x {
            return Err(Error::TheoryViolation(format!(
                "rectangle of element {} has middle {}",
                x + 1,
                rect.middle() + 1
            )));
        }
        prs = prs.with_rectangle(&rect).map_err(theory)?;
    }
    prs.validate_full().map_err(theory)?;
    Ok(prs)
}

fn theory(e: Error) -> Error {
    match e {
        Error::TheoryViolation(_) => e,
        other => Error::TheoryViolation(format!(
            "a validated algebra must yield a rectangular structure: {other}"
        )),
    }
}

/// The idempotent semicentral bigroupoid of a full rectangular structure:
/// s•t is the unique element of (d⁻¹(s))₂ ∩ (d⁻¹(t))₁ and s∘t is the middle
/// of the rectangle covering (s, t).
pub fn rs_to_operations(rs: &Prs) -> Result<SemicentralBigroupoid> {
    rs.validate_full()?;
    let k = rs.base().size();
    let mut by_middle: Vec<Option<&Rectangle>> = vec![None; k];
    for r in rs.rectangles() {
        by_middle[r.middle()] = Some(r);
    }
    let mut bullet = Vec::with_capacity(k * k);
    let mut circ = Vec::with_capacity(k * k);
    for s in 0..k {
        let rs_rect = by_middle[s].expect("middle map is onto for full structures");
        for (t, rt) in by_middle.iter().enumerate() {
            let rt_rect = rt.expect("middle map is onto for full structures");
            let meet = rs_rect.cols().intersection(rt_rect.rows());
            if meet.len() != 1 {
                return Err(Error::TheoryViolation(format!(
                    "cols of {} and rows of {} meet in {} elements",
                    s + 1,
                    t + 1,
                    meet.len()
                )));
            }
            bullet.push(meet.min_elem().unwrap());
            let covering = rs
                .rectangle_covering(s, t)
                .expect("full structures cover every pair");
            circ.push(covering.middle());
        }
    }
    let scb = SemicentralBigroupoid::new(
        OperationTable::new(k, bullet)?,
        OperationTable::new(k, circ)?,
    )
    .map_err(theory)?;
    if !scb.is_idempotent() {
        return Err(Error::TheoryViolation(
            "operations of a rectangular structure must be idempotent".into(),
        ));
    }
    Ok(scb)
}

/// Red edges a → a•c, blue edges a → a∘c.
pub fn scb_to_graph_pair(scb: &SemicentralBigroupoid) -> GraphPair {
    let k = scb.order();
    let mut pair = GraphPair::empty(k);
    for a in 0..k {
        for c in 0..k {
            pair.red_mut().add_edge(a, scb.bullet().get(a, c));
            pair.blue_mut().add_edge(a, scb.circ().get(a, c));
        }
    }
    pair
}

/// The digraph of a central groupoid table: edges a → a•c.
pub fn cg_digraph(op: &OperationTable) -> Digraph {
    let k = op.order();
    let mut g = Digraph::new(k);
    for a in 0..k {
        for c in 0..k {
            g.add_edge(a, op.get(a, c));
        }
    }
    g
}

/// True iff red·blue and blue·red path counts are 1 for every ordered pair:
/// the incidence matrices satisfy AB = BA = J.
pub fn verify_product_j(pair: &GraphPair) -> bool {
    let n = pair.node_count();
    let red_in = pair.red().in_masks();
    let blue_in = pair.blue().in_masks();
    for i in 0..n {
        for j in 0..n {
            if (pair.red().out_mask(i) & blue_in[j]).count_ones() != 1 {
                return false;
            }
            if (pair.blue().out_mask(i) & red_in[j]).count_ones() != 1 {
                return false;
            }
        }
    }
    true
}

/// a∗b = b∗a forces a = b.
pub fn anticommutativity_check(table: &OperationTable) -> bool {
    let k = table.order();
    for a in 0..k {
        for b in (a + 1)..k {
            if table.get(a, b) == table.get(b, a) {
                return false;
            }
        }
    }
    true
}

/// a∘b = c∘d = x forces a∘d = c∘b = x.
pub fn swap_property_check(table: &OperationTable) -> bool {
    let k = table.order();
    for a in 0..k {
        for b in 0..k {
            let x = table.get(a, b);
            for c in 0..k {
                for d in 0..k {
                    if table.get(c, d) == x && (table.get(a, d) != x || table.get(c, b) != x) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The natural central groupoid on A×A, |A| = n: (a,b)•(c,d) = (b,c), with
/// the pair (a, b) at index a·n + b.
pub fn natural_central_groupoid(n: usize) -> CentralGroupoid {
    let table = OperationTable::from_fn(n * n, |i, j| (i % n) * n + j / n)
        .expect("entries stay in range");
    CentralGroupoid::new(table).expect("the natural construction satisfies the axiom")
}
