use std::fmt;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// The carrier of an n×m structure: elements 0..n·m, viewed as rows-per-
/// rectangle n and columns-per-rectangle m.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BaseSet {
    n: usize,
    m: usize,
}

impl BaseSet {
    /// The size cap keeps the doubled node set of the graph embedding within
    /// one machine word.
    pub const MAX_SIZE: usize = 32;

    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::EmptyFormat(n, m));
        }
        if n * m > Self::MAX_SIZE {
            return Err(Error::BaseTooLarge(n * m));
        }
        Ok(BaseSet { n, m })
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> usize {
        self.n * self.m
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.size()
    }

    pub fn element_set(&self) -> ElemSet {
        ElemSet::full(self.size())
    }
}

/// An ordered pair of element sets sharing exactly one element, the middle.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rectangle {
    rows: ElemSet,
    cols: ElemSet,
}

impl Rectangle {
    pub fn new(rows: ElemSet, cols: ElemSet) -> Result<Self> {
        let shared = rows.intersection_len(cols);
        if shared != 1 {
            return Err(Error::InvalidRectangle(shared));
        }
        Ok(Rectangle { rows, cols })
    }

    /// Construction from 1-based element labels, the convention of all the
    /// text formats.
    pub fn from_labels(rows: &[usize], cols: &[usize]) -> Result<Self> {
        let to_set = |labels: &[usize]| -> Result<ElemSet> {
            let mut s = ElemSet::EMPTY;
            for &l in labels {
                if l == 0 || l > ElemSet::MAX_ELEMS {
                    return Err(Error::NotBijective);
                }
                s.insert(l - 1);
            }
            Ok(s)
        };
        Rectangle::new(to_set(rows)?, to_set(cols)?)
    }

    pub fn rows(&self) -> ElemSet {
        self.rows
    }

    pub fn cols(&self) -> ElemSet {
        self.cols
    }

    /// The unique element of rows ∩ cols.
    pub fn middle(&self) -> usize {
        self.rows
            .intersection(self.cols)
            .min_elem()
            .expect("rectangle invariant: rows and cols share one element")
    }

    pub fn format(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    pub fn apply(&self, g: &Permutation) -> Rectangle {
        Rectangle {
            rows: self.rows.apply(g),
            cols: self.cols.apply(g),
        }
    }
}

impl fmt::Debug for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.rows, self.cols)
    }
}

/// Which sides of a full structure partition the base set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PartitionSides {
    Both,
    LeftOnly,
    RightOnly,
    Neither,
}

impl PartitionSides {
    pub fn is_partitioned(self) -> bool {
        self != PartitionSides::Neither
    }

    pub fn is_doubly(self) -> bool {
        self == PartitionSides::Both
    }
}

/// A partial rectangular structure: pairwise compatible rectangles over a
/// fixed base set, kept sorted. The coverage map makes extension validity a
/// handful of mask operations per existing rectangle.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Prs {
    base: BaseSet,
    rects: Vec<Rectangle>,
    /// cover[a] = all b such that the ordered pair (a, b) is covered.
    cover: Vec<ElemSet>,
    middles: ElemSet,
}

impl Prs {
    pub fn empty(base: BaseSet) -> Self {
        Prs {
            base,
            rects: Vec::new(),
            cover: vec![ElemSet::EMPTY; base.size()],
            middles: ElemSet::EMPTY,
        }
    }

    pub fn base(&self) -> BaseSet {
        self.base
    }

    pub fn rectangles(&self) -> &[Rectangle] {
        &self.rects
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// Full structures are rectangular structures: one rectangle per element.
    pub fn is_full(&self) -> bool {
        self.rects.len() == self.base.size()
    }

    pub fn middles(&self) -> ElemSet {
        self.middles
    }

    /// All b with (a, b) already covered.
    pub fn covered_from(&self, a: usize) -> ElemSet {
        self.cover[a]
    }

    pub fn contains(&self, r: &Rectangle) -> bool {
        self.rects.binary_search(r).is_ok()
    }

    /// The hereditary property of the search: true iff the structure stays a
    /// partial rectangular structure with `r` added.
    pub fn is_valid_extension(&self, r: &Rectangle) -> bool {
        if r.format() != (self.base.rows(), self.base.cols()) {
            return false;
        }
        for q in &self.rects {
            if q.rows().intersection_len(r.cols()) != 1
                || r.rows().intersection_len(q.cols()) != 1
            {
                return false;
            }
        }
        for a in r.rows().iter() {
            if !self.cover[a].is_disjoint(r.cols()) {
                return false;
            }
        }
        true
    }

    pub fn with_rectangle(&self, r: &Rectangle) -> Result<Prs> {
        if r.format() != (self.base.rows(), self.base.cols()) {
            return Err(Error::FormatMismatch {
                got_rows: r.format().0,
                got_cols: r.format().1,
                rows: self.base.rows(),
                cols: self.base.cols(),
            });
        }
        if !self.is_valid_extension(r) {
            return Err(Error::InvalidExtension);
        }
        let mut next = self.clone();
        let pos = next.rects.binary_search(r).unwrap_err();
        next.rects.insert(pos, *r);
        for a in r.rows().iter() {
            next.cover[a] = next.cover[a].union(r.cols());
        }
        next.middles.insert(r.middle());
        Ok(next)
    }

    /// The image structure under a base permutation.
    pub fn apply(&self, g: &Permutation) -> Prs {
        let mut out = Prs::empty(self.base);
        let mut rects: Vec<Rectangle> = self.rects.iter().map(|r| r.apply(g)).collect();
        rects.sort();
        for r in &rects {
            for a in r.rows().iter() {
                out.cover[a] = out.cover[a].union(r.cols());
            }
            out.middles.insert(r.middle());
        }
        out.rects = rects;
        out
    }

    /// Checks every axiom of a rectangular structure on a full candidate:
    /// formats, pairwise intersections, and exactly-once coverage.
    pub fn validate_full(&self) -> Result<()> {
        let k = self.base.size();
        if self.rects.len() != k {
            return Err(Error::NotFull {
                got: self.rects.len(),
                want: k,
            });
        }
        for r in &self.rects {
            if r.format() != (self.base.rows(), self.base.cols()) {
                return Err(Error::FormatMismatch {
                    got_rows: r.format().0,
                    got_cols: r.format().1,
                    rows: self.base.rows(),
                    cols: self.base.cols(),
                });
            }
        }
        for q in &self.rects {
            for r in &self.rects {
                if q.rows().intersection_len(r.cols()) != 1 {
                    return Err(Error::InvalidExtension);
                }
            }
        }
        let mut counts = vec![0usize; k * k];
        for r in &self.rects {
            for a in r.rows().iter() {
                for b in r.cols().iter() {
                    counts[a * k + b] += 1;
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                if counts[a * k + b] != 1 {
                    return Err(Error::BadCoverage(a + 1, b + 1, counts[a * k + b]));
                }
            }
        }
        Ok(())
    }

    /// The rectangle whose middle is `e`, if any.
    pub fn rectangle_with_middle(&self, e: usize) -> Option<&Rectangle> {
        self.rects.iter().find(|r| r.middle() == e)
    }

    /// The rectangle covering the ordered pair (a, b), if any.
    pub fn rectangle_covering(&self, a: usize, b: usize) -> Option<&Rectangle> {
        self.rects
            .iter()
            .find(|r| r.rows().contains(a) && r.cols().contains(b))
    }

    fn side_partitions(&self, pick: impl Fn(&Rectangle) -> ElemSet) -> bool {
        // The distinct side sets must be pairwise equal-or-disjoint; their
        // union is automatically the base set since every element is a middle.
        let mut distinct: Vec<ElemSet> = Vec::new();
        for r in &self.rects {
            let s = pick(r);
            if !distinct.contains(&s) {
                distinct.push(s);
            }
        }
        for (i, a) in distinct.iter().enumerate() {
            for b in &distinct[i + 1..] {
                if !a.is_disjoint(*b) {
                    return false;
                }
            }
        }
        let mut union = ElemSet::EMPTY;
        for s in &distinct {
            union = union.union(*s);
        }
        union == self.base.element_set()
    }

    pub fn is_left_partitioned(&self) -> Result<bool> {
        self.require_full()?;
        Ok(self.side_partitions(|r| r.rows()))
    }

    pub fn is_right_partitioned(&self) -> Result<bool> {
        self.require_full()?;
        Ok(self.side_partitions(|r| r.cols()))
    }

    pub fn is_doubly_partitioned(&self) -> Result<bool> {
        Ok(self.is_left_partitioned()? && self.is_right_partitioned()?)
    }

    pub fn partition_sides(&self) -> Result<PartitionSides> {
        let left = self.is_left_partitioned()?;
        let right = self.is_right_partitioned()?;
        Ok(match (left, right) {
            (true, true) => PartitionSides::Both,
            (true, false) => PartitionSides::LeftOnly,
            (false, true) => PartitionSides::RightOnly,
            (false, false) => PartitionSides::Neither,
        })
    }

    fn require_full(&self) -> Result<()> {
        if !self.is_full() {
            return Err(Error::NotFull {
                got: self.rects.len(),
                want: self.base.size(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Prs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Prs[{}x{}]{:?}",
            self.base.rows(),
            self.base.cols(),
            self.rects
        )
    }
}

/// The product-of-points structure of format n×m: on S = A×B with |A| = m
/// and |B| = n, the rectangle ({a}×B, A×{b}) for every pair (a, b), with
/// element (a, b) at index a·n + b. Doubly partitioned by construction;
/// every format has at least this structure.
pub fn product_of_points(n: usize, m: usize) -> Result<Prs> {
    let base = BaseSet::new(n, m)?;
    let mut prs = Prs::empty(base);
    for a in 0..m {
        for b in 0..n {
            let rows: ElemSet = (0..n).map(|j| a * n + j).collect();
            let cols: ElemSet = (0..m).map(|i| i * n + b).collect();
            let rect = Rectangle::new(rows, cols)?;
            prs = prs.with_rectangle(&rect)?;
        }
    }
    Ok(prs)
}
