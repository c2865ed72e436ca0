use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of {0, ..., n-1}, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotBijective);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Permutation { images }
    }

    /// The n-cycle (0 1 2 ... n-1).
    pub fn rotation(n: usize) -> Self {
        Permutation {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img] = i;
        }
        Permutation { images: inv }
    }

    /// Composition `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Permutation) -> Self {
        debug_assert_eq!(self.degree(), inner.degree());
        Permutation {
            images: inner.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// True iff the permutation squares to the identity (fixed points allowed).
    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &img)| self.images[img] == i)
    }

    /// Nontrivial cycles, each starting at its least element, sorted by that
    /// element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// Disjoint-cycle notation with 1-based element labels, e.g.
    /// "(1,9)(2,7)(4,8)". The identity is written "()".
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for cycle in cycles {
            s.push('(');
            for (i, e) in cycle.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&(e + 1).to_string());
            }
            s.push(')');
        }
        s
    }

    /// Parses the output of [`to_cycle_string`]; labels are 1-based.
    pub fn parse_cycle_string(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "()" {
            return Ok(Permutation { images });
        }
        let mut moved = vec![false; degree];
        for chunk in trimmed.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk
                .strip_prefix('(')
                .ok_or_else(|| Error::BadCycleString(text.to_string()))?;
            let mut cycle = Vec::new();
            for tok in body.split(',') {
                let label: usize = tok
                    .trim()
                    .parse()
                    .map_err(|_| Error::BadCycleString(text.to_string()))?;
                if label == 0 || label > degree {
                    return Err(Error::BadCycleString(text.to_string()));
                }
                let e = label - 1;
                if moved[e] {
                    return Err(Error::BadCycleString(text.to_string()));
                }
                moved[e] = true;
                cycle.push(e);
            }
            if cycle.len() < 2 {
                return Err(Error::BadCycleString(text.to_string()));
            }
            for i in 0..cycle.len() {
                images[cycle[i]] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.images)
    }
}

/// Generators of the full symmetric group on n points.
pub fn symmetric_group_generators(n: usize) -> Vec<Permutation> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![Permutation::transposition(2, 0, 1)],
        _ => vec![Permutation::transposition(n, 0, 1), Permutation::rotation(n)],
    }
}

/// All elements of the group generated by `gens`, identity included, in
/// sorted order. Group orders in this crate stay small (automorphism groups
/// of the structures under study), so plain closure is fine.
pub fn generate_group(gens: &[Permutation], degree: usize) -> Vec<Permutation> {
    let mut group: BTreeSet<Permutation> = BTreeSet::new();
    group.insert(Permutation::identity(degree));
    let mut frontier: Vec<Permutation> = vec![Permutation::identity(degree)];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = g.compose(&p);
            if group.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    group.into_iter().collect()
}
