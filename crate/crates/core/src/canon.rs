//! Canonical labeling and automorphism groups of finite digraphs.
//!
//! The algorithm is the usual individualization-refinement scheme: refine an
//! ordered partition of the nodes to equitability using in/out degree counts
//! against every cell, branch on the first non-singleton cell, and keep the
//! lexicographically least relabeled edge list over all leaves as the
//! canonical form. Leaves with equal images yield automorphisms, which prune
//! sibling branches. Loops are ordinary edges and participate in refinement.
//!
//! Target graphs here have at most 64 nodes (twice the base-set cap), so the
//! implementation favours clarity over asymptotics.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::perm::{generate_group, Permutation};

/// A directed graph on nodes 0..n with loops allowed, adjacency as bitmasks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    adj: Vec<u64>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 64, "digraphs are capped at 64 nodes");
        Digraph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Digraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n);
        self.adj[u] |= 1u64 << v;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & (1u64 << v) != 0
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn out_mask(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut mask = self.adj[u];
            while mask != 0 {
                let v = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                out.push((u, v));
            }
        }
        out
    }

    /// In-neighbor masks, indexed by target node.
    pub fn in_masks(&self) -> Vec<u64> {
        let mut inc = vec![0u64; self.n];
        for u in 0..self.n {
            let mut mask = self.adj[u];
            while mask != 0 {
                let v = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                inc[v] |= 1u64 << u;
            }
        }
        inc
    }

    /// The image graph with edge (u, v) mapped to (p(u), p(v)).
    pub fn relabeled(&self, p: &Permutation) -> Digraph {
        assert_eq!(p.degree(), self.n);
        let mut g = Digraph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(p.apply(u), p.apply(v));
        }
        g
    }

    fn edge_list_compact(&self) -> Vec<(u16, u16)> {
        self.edges()
            .into_iter()
            .map(|(u, v)| (u as u16, v as u16))
            .collect()
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Output of [`canonicalize`].
#[derive(Clone, Debug)]
pub struct CanonicalResult {
    /// Node → canonical label; relabeling the input by this yields exactly
    /// `canonical_form`.
    pub labeling: Permutation,
    /// Sorted edge list of the canonically relabeled graph.
    pub canonical_form: Vec<(u16, u16)>,
    /// Generators of the automorphism group of the input graph.
    pub automorphism_generators: Vec<Permutation>,
}

type Cells = Vec<Vec<usize>>;

struct Searcher<'g> {
    g: &'g Digraph,
    in_adj: Vec<u64>,
    n: usize,
    /// Image edge list → labeling of the first leaf that produced it.
    leaves: BTreeMap<Vec<(u16, u16)>, Vec<usize>>,
    gens: Vec<Permutation>,
    prefix: Vec<usize>,
}

impl<'g> Searcher<'g> {
    fn new(g: &'g Digraph) -> Self {
        Searcher {
            g,
            in_adj: g.in_masks(),
            n: g.node_count(),
            leaves: BTreeMap::new(),
            gens: Vec::new(),
            prefix: Vec::new(),
        }
    }

    /// Refines cells to equitability. Signatures count out/in edges into each
    /// cell; all cells split simultaneously per pass and subcells are ordered
    /// by signature, so the process depends only on isomorphism-invariant
    /// data.
    fn refine(&self, cells: &mut Cells) {
        loop {
            let masks: Vec<u64> = cells
                .iter()
                .map(|c| c.iter().fold(0u64, |m, &v| m | (1u64 << v)))
                .collect();
            let sig = |u: usize| -> Vec<(u32, u32)> {
                masks
                    .iter()
                    .map(|&m| {
                        (
                            (self.g.adj[u] & m).count_ones(),
                            (self.in_adj[u] & m).count_ones(),
                        )
                    })
                    .collect()
            };
            let mut next: Cells = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(u32, u32)>, usize)> =
                    cell.iter().map(|&u| (sig(u), u)).collect();
                keyed.sort();
                let mut start = 0;
                while start < keyed.len() {
                    let mut end = start + 1;
                    while end < keyed.len() && keyed[end].0 == keyed[start].0 {
                        end += 1;
                    }
                    next.push(keyed[start..end].iter().map(|(_, u)| *u).collect());
                    start = end;
                }
            }
            let split = next.len() != cells.len();
            *cells = next;
            if !split {
                return;
            }
        }
    }

    fn search(&mut self, mut cells: Cells) {
        self.refine(&mut cells);
        if cells.iter().all(|c| c.len() == 1) {
            self.process_leaf(&cells);
            return;
        }
        let target_idx = cells.iter().position(|c| c.len() >= 2).unwrap();
        let target = cells[target_idx].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &target {
            if self.pruned_by_orbit(v, &explored) {
                continue;
            }
            let mut child = cells.clone();
            child[target_idx] = vec![v];
            let rest: Vec<usize> = target.iter().copied().filter(|&u| u != v).collect();
            child.insert(target_idx + 1, rest);
            self.prefix.push(v);
            self.search(child);
            self.prefix.pop();
            explored.push(v);
        }
    }

    /// True iff some known automorphism fixing the current prefix pointwise
    /// maps `v` into the already explored siblings.
    fn pruned_by_orbit(&self, v: usize, explored: &[usize]) -> bool {
        if explored.is_empty() || self.gens.is_empty() {
            return false;
        }
        let applicable: Vec<&Permutation> = self
            .gens
            .iter()
            .filter(|g| self.prefix.iter().all(|&x| g.apply(x) == x))
            .collect();
        if applicable.is_empty() {
            return false;
        }
        // Orbit of v under the applicable generators. Forward closure
        // suffices: the closure is finite and each generator permutes it.
        let mut orbit = 1u64 << v;
        let mut frontier = vec![v];
        while let Some(x) = frontier.pop() {
            for g in &applicable {
                let y = g.apply(x);
                if orbit & (1u64 << y) == 0 {
                    orbit |= 1u64 << y;
                    frontier.push(y);
                }
            }
        }
        explored.iter().any(|&u| orbit & (1u64 << u) != 0)
    }

    fn process_leaf(&mut self, cells: &Cells) {
        let mut labeling = vec![0usize; self.n];
        for (label, cell) in cells.iter().enumerate() {
            labeling[cell[0]] = label;
        }
        let mut image: Vec<(u16, u16)> = Vec::with_capacity(self.g.edge_count());
        for (u, v) in self.g.edges() {
            image.push((labeling[u] as u16, labeling[v] as u16));
        }
        image.sort_unstable();
        if let Some(first) = self.leaves.get(&image) {
            // Two labelings with the same image differ by an automorphism.
            let mut first_inv = vec![0usize; self.n];
            for (node, &label) in first.iter().enumerate() {
                first_inv[label] = node;
            }
            let gen: Vec<usize> = labeling.iter().map(|&l| first_inv[l]).collect();
            let gen = Permutation::from_images(gen).expect("leaf maps are bijections");
            if !gen.is_identity() && !self.gens.contains(&gen) {
                self.gens.push(gen);
            }
        } else {
            self.leaves.insert(image, labeling);
        }
    }
}

/// Computes the canonical labeling, canonical form, and automorphism group
/// generators of a digraph. Isomorphic graphs have equal canonical forms.
pub fn canonicalize(g: &Digraph) -> CanonicalResult {
    let n = g.node_count();
    if n == 0 {
        return CanonicalResult {
            labeling: Permutation::identity(0),
            canonical_form: Vec::new(),
            automorphism_generators: Vec::new(),
        };
    }
    let mut searcher = Searcher::new(g);
    searcher.search(vec![(0..n).collect()]);
    let (form, labeling) = searcher
        .leaves
        .iter()
        .next()
        .map(|(f, l)| (f.clone(), l.clone()))
        .expect("search visits at least one leaf");
    let labeling = if g.edge_list_compact() == form {
        // Already canonical; the identity is a valid canonical labeling.
        Permutation::identity(n)
    } else {
        Permutation::from_images(labeling).expect("leaf labeling is a bijection")
    };
    CanonicalResult {
        labeling,
        canonical_form: form,
        automorphism_generators: searcher.gens,
    }
}

/// A permutation carrying the edges of `g1` onto `g2`, if one exists.
pub fn are_isomorphic(g1: &Digraph, g2: &Digraph) -> Option<Permutation> {
    if g1.node_count() != g2.node_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let r1 = canonicalize(g1);
    let r2 = canonicalize(g2);
    if r1.canonical_form != r2.canonical_form {
        return None;
    }
    // g1^(q^-1 ∘ p) = g2 for p = labeling(g1), q = labeling(g2).
    let w = r2.labeling.inverse().compose(&r1.labeling);
    debug_assert_eq!(&g1.relabeled(&w), g2);
    Some(w)
}

/// Every permutation carrying `g1` onto `g2`: one witness composed with the
/// full automorphism group of `g1`. Sorted for determinism.
pub fn all_isomorphisms(g1: &Digraph, g2: &Digraph) -> Vec<Permutation> {
    let Some(w) = are_isomorphic(g1, g2) else {
        return Vec::new();
    };
    let gens = canonicalize(g1).automorphism_generators;
    let group = generate_group(&gens, g1.node_count());
    let mut out: Vec<Permutation> = group.iter().map(|a| w.compose(a)).collect();
    out.sort();
    out
}

/// The order of a graph's automorphism group.
pub fn automorphism_group_order(g: &Digraph) -> usize {
    let gens = canonicalize(g).automorphism_generators;
    generate_group(&gens, g.node_count()).len()
}

/// Like [`canonicalize`] but only re-checks invariants in debug builds.
pub fn canonical_form(g: &Digraph) -> Vec<(u16, u16)> {
    canonicalize(g).canonical_form
}

/// Sanity helper used by the pipelines: the canonical result must satisfy its
/// own contract.
pub fn validate_canonical_result(g: &Digraph, res: &CanonicalResult) -> Result<()> {
    let relabeled = g.relabeled(&res.labeling);
    if relabeled.edge_list_compact() != res.canonical_form {
        return Err(crate::error::Error::TheoryViolation(
            "canonical labeling does not produce the canonical form".into(),
        ));
    }
    for gen in &res.automorphism_generators {
        if &g.relabeled(gen) != g {
            return Err(crate::error::Error::TheoryViolation(
                "reported automorphism does not stabilize the edge set".into(),
            ));
        }
    }
    Ok(())
}
