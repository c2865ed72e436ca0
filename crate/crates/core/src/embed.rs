//! The canonical embedding: a partial rectangular structure becomes a graph
//! pair, and the pair becomes a single digraph on doubled nodes whose
//! automorphisms are exactly the structure's symmetries. This is what lets
//! the canonical-labeling engine drive the orderly algorithm.

use crate::canon::{canonicalize, Digraph};
use crate::error::{Error, Result};
use crate::graphpair::GraphPair;
use crate::perm::{symmetric_group_generators, Permutation};
use crate::rect::{Prs, Rectangle};

/// The combined graph of a pair on k nodes: an a-layer copy of the red graph
/// (indices 0..k), a b-layer copy of the blue graph (indices k..2k), a cross
/// edge (a,x) → (b,x) per element, and a marker loop on every a-layer node.
pub struct EmbeddedGraph {
    graph: Digraph,
    base_size: usize,
}

impl EmbeddedGraph {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn a_node(&self, x: usize) -> usize {
        x
    }

    pub fn b_node(&self, x: usize) -> usize {
        self.base_size + x
    }

    /// Rectangles are labeled by their middles: R maps to the a-layer node
    /// (a, m(R)).
    pub fn rectangle_node(&self, r: &Rectangle) -> usize {
        r.middle()
    }
}

/// Red edges (m(R), y) for y in R₂, blue edges (x, m(R)) for x in R₁. On a
/// full structure this is exactly the graph pair of the derived idempotent
/// semicentral bigroupoid; on partial structures it is the same formula.
pub fn prs_to_graph_pair(x: &Prs) -> GraphPair {
    let mut pair = GraphPair::empty(x.base().size());
    for r in x.rectangles() {
        let mid = r.middle();
        for y in r.cols().iter() {
            pair.red_mut().add_edge(mid, y);
        }
        for v in r.rows().iter() {
            pair.blue_mut().add_edge(v, mid);
        }
    }
    pair
}

/// Two graph pairs are isomorphic iff their combined graphs are.
pub fn combine(pair: &GraphPair) -> EmbeddedGraph {
    let k = pair.node_count();
    let mut g = Digraph::new(2 * k);
    for (u, v) in pair.red().edges() {
        g.add_edge(u, v);
    }
    for (u, v) in pair.blue().edges() {
        g.add_edge(k + u, k + v);
    }
    for x in 0..k {
        g.add_edge(x, k + x);
        g.add_edge(x, x);
    }
    EmbeddedGraph {
        graph: g,
        base_size: k,
    }
}

/// Reads base permutations off automorphisms of a combined graph. Every
/// automorphism must preserve the layers and act identically on both; a
/// violation would break the canonical embedding and is reported as such.
pub fn restrict_generators(gens: &[Permutation], k: usize) -> Result<Vec<Permutation>> {
    let mut out = Vec::with_capacity(gens.len());
    for gen in gens {
        debug_assert_eq!(gen.degree(), 2 * k);
        for x in 0..k {
            if gen.apply(x) >= k {
                return Err(Error::TheoryViolation(
                    "combined-graph automorphism crosses the embedding layers".into(),
                ));
            }
            if gen.apply(k + x) != k + gen.apply(x) {
                return Err(Error::TheoryViolation(
                    "combined-graph automorphism acts differently on the two layers".into(),
                ));
            }
        }
        let base = Permutation::from_images(gen.images()[..k].to_vec())?;
        if !base.is_identity() && !out.contains(&base) {
            out.push(base);
        }
    }
    Ok(out)
}

/// Generators of the stabilizer of `x` in the symmetric group of its base
/// set, obtained from the automorphisms of the combined graph.
pub fn prs_automorphisms(x: &Prs) -> Result<Vec<Permutation>> {
    let k = x.base().size();
    if x.is_empty() {
        return Ok(symmetric_group_generators(k));
    }
    let embedded = combine(&prs_to_graph_pair(x));
    let res = canonicalize(embedded.graph());
    restrict_generators(&res.automorphism_generators, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::generate_group;
    use crate::rect::{product_of_points, BaseSet};

    fn rect(rows: &[usize], cols: &[usize]) -> Rectangle {
        Rectangle::from_labels(rows, cols).unwrap()
    }

    /// All base permutations stabilizing the structure, by brute force.
    fn brute_stabilizer(x: &Prs) -> Vec<Permutation> {
        let k = x.base().size();
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        permute_all(&mut idx, 0, &mut |images| {
            let g = Permutation::from_images(images.to_vec()).unwrap();
            if &x.apply(&g) == x {
                out.push(g);
            }
        });
        out
    }

    fn permute_all(items: &mut [usize], at: usize, f: &mut impl FnMut(&[usize])) {
        if at == items.len() {
            f(items);
            return;
        }
        for i in at..items.len() {
            items.swap(at, i);
            permute_all(items, at + 1, f);
            items.swap(at, i);
        }
    }

    #[test]
    fn empty_structure_pair_is_empty() {
        let x = Prs::empty(BaseSet::new(2, 2).unwrap());
        let pair = prs_to_graph_pair(&x);
        assert_eq!(pair.red().edge_count(), 0);
        assert_eq!(pair.blue().edge_count(), 0);
    }

    #[test]
    fn one_by_one_structure_is_a_double_loop() {
        let x = Prs::empty(BaseSet::new(1, 1).unwrap())
            .with_rectangle(&rect(&[1], &[1]))
            .unwrap();
        let pair = prs_to_graph_pair(&x);
        assert_eq!(pair.red().edges(), vec![(0, 0)]);
        assert_eq!(pair.blue().edges(), vec![(0, 0)]);
    }

    #[test]
    fn full_product_pair_is_regular_with_loops() {
        let x = product_of_points(2, 2).unwrap();
        let pair = prs_to_graph_pair(&x);
        for v in 0..4 {
            assert_eq!(pair.red().out_degree(v), 2);
            assert_eq!(pair.blue().out_degree(v), 2);
            assert!(pair.red().has_edge(v, v));
            assert!(pair.blue().has_edge(v, v));
        }
        assert!(crate::algebra::verify_product_j(&pair));
    }

    #[test]
    fn pair_construction_agrees_with_algebra_route() {
        let x = product_of_points(2, 3).unwrap();
        let scb = crate::algebra::rs_to_operations(&x).unwrap();
        assert_eq!(prs_to_graph_pair(&x), crate::algebra::scb_to_graph_pair(&scb));
    }

    #[test]
    fn combined_graph_of_empty_pair() {
        let emb = combine(&GraphPair::empty(1));
        let mut edges = emb.graph().edges();
        edges.sort_unstable();
        assert_eq!(edges, vec![(0, 0), (0, 1)]);
    }

    #[test]
    fn combined_graph_with_loop_pair() {
        let mut pair = GraphPair::empty(1);
        pair.red_mut().add_edge(0, 0);
        pair.blue_mut().add_edge(0, 0);
        let emb = combine(&pair);
        let mut edges = emb.graph().edges();
        edges.sort_unstable();
        // Red loop and marker loop coincide as set elements.
        assert_eq!(edges, vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn pair_construction_is_covariant() {
        let x = product_of_points(2, 2).unwrap();
        let g = Permutation::from_images(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(prs_to_graph_pair(&x.apply(&g)), prs_to_graph_pair(&x).apply(&g));
    }

    #[test]
    fn empty_structure_has_the_symmetric_group() {
        let x = Prs::empty(BaseSet::new(2, 2).unwrap());
        let gens = prs_automorphisms(&x).unwrap();
        assert_eq!(generate_group(&gens, 4).len(), 24);
    }

    #[test]
    fn single_rectangle_stabilizer_matches_brute_force() {
        let x = Prs::empty(BaseSet::new(2, 2).unwrap())
            .with_rectangle(&rect(&[1, 2], &[1, 3]))
            .unwrap();
        let brute = brute_stabilizer(&x);
        let gens = prs_automorphisms(&x).unwrap();
        let group = generate_group(&gens, 4);
        assert_eq!(group.len(), brute.len());
        // The rectangle pins everything: middle fixed, each side fixed, and
        // the one untouched element has nowhere else to go.
        assert_eq!(group.len(), 1);
        for g in &group {
            assert!(brute.contains(g));
        }
    }

    #[test]
    fn product_structure_stabilizer_matches_brute_force() {
        // Four automorphisms: pairs of side permutations. The side-swapping
        // map is not among them, because it exchanges the two components of
        // the ordered rectangle pairs.
        let x = product_of_points(2, 2).unwrap();
        let brute = brute_stabilizer(&x);
        assert_eq!(brute.len(), 4);
        let gens = prs_automorphisms(&x).unwrap();
        let group = generate_group(&gens, 4);
        assert_eq!(group.len(), 4);
        for g in &group {
            assert!(brute.contains(g));
        }
    }

    #[test]
    fn restriction_is_exact_on_small_structures() {
        // Every returned generator stabilizes the structure, and the group
        // order matches the brute-force stabilizer for assorted partial
        // structures.
        let base = BaseSet::new(2, 2).unwrap();
        let mut samples = vec![Prs::empty(base)];
        let r1 = rect(&[1, 2], &[1, 3]);
        let r2 = rect(&[3, 4], &[2, 3]);
        let x1 = samples[0].with_rectangle(&r1).unwrap();
        let x2 = x1.with_rectangle(&r2).unwrap();
        samples.push(x1);
        samples.push(x2);
        samples.push(product_of_points(2, 2).unwrap());
        for x in &samples {
            let gens = prs_automorphisms(x).unwrap();
            for g in &gens {
                assert_eq!(&x.apply(g), x);
            }
            let group = generate_group(&gens, 4);
            assert_eq!(group.len(), brute_stabilizer(x).len(), "structure {x:?}");
        }
    }

    #[test]
    fn full_structure_aut_is_intersection_of_colour_auts() {
        // Aut(S) = Aut(G_red) ∩ Aut(G_blue), computed independently.
        let x = product_of_points(2, 2).unwrap();
        let pair = prs_to_graph_pair(&x);
        let red_group = generate_group(
            &canonicalize(pair.red()).automorphism_generators,
            4,
        );
        let blue_group = generate_group(
            &canonicalize(pair.blue()).automorphism_generators,
            4,
        );
        let meet: Vec<_> = red_group
            .iter()
            .filter(|g| blue_group.contains(g))
            .cloned()
            .collect();
        let struct_group = generate_group(&prs_automorphisms(&x).unwrap(), 4);
        assert_eq!(meet.len(), struct_group.len());
        for g in &struct_group {
            assert!(meet.contains(g));
        }
    }

    #[test]
    fn combined_isomorphism_reflects_pair_isomorphism() {
        // For 2×2 structures: combined graphs isomorphic iff some base
        // permutation carries one pair to the other, checked by brute force.
        let x1 = product_of_points(2, 2).unwrap();
        let base = BaseSet::new(2, 2).unwrap();
        let x2 = Prs::empty(base)
            .with_rectangle(&rect(&[1, 2], &[1, 3]))
            .unwrap()
            .with_rectangle(&rect(&[3, 4], &[2, 3]))
            .unwrap();
        let g = Permutation::from_images(vec![1, 3, 0, 2]).unwrap();
        let x3 = x1.apply(&g);
        for (a, b) in [(&x1, &x2), (&x1, &x3), (&x2, &x3)] {
            let pa = prs_to_graph_pair(a);
            let pb = prs_to_graph_pair(b);
            let combined_iso = crate::canon::are_isomorphic(
                combine(&pa).graph(),
                combine(&pb).graph(),
            )
            .is_some();
            let mut pair_iso = false;
            let mut idx: Vec<usize> = (0..4).collect();
            permute_all(&mut idx, 0, &mut |images| {
                let p = Permutation::from_images(images.to_vec()).unwrap();
                if pa.apply(&p) == pb {
                    pair_iso = true;
                }
            });
            assert_eq!(combined_iso, pair_iso);
        }
    }
}
