//! Canonicalization checked against the all-permutations oracle: exhaustive
//! on 3-node digraphs, randomized with a fixed seed up to 6 nodes.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use upp2_core::canon::{are_isomorphic, automorphism_group_order, canonical_form, Digraph};
use upp2_core::Permutation;

fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn rec(items: &mut Vec<usize>, at: usize, out: &mut Vec<Permutation>) {
        if at == items.len() {
            out.push(Permutation::from_images(items.clone()).unwrap());
            return;
        }
        for i in at..items.len() {
            items.swap(at, i);
            rec(items, at + 1, out);
            items.swap(at, i);
        }
    }
    rec(&mut items, 0, &mut out);
    out
}

fn brute_isomorphic(g1: &Digraph, g2: &Digraph) -> bool {
    if g1.node_count() != g2.node_count() {
        return false;
    }
    all_permutations(g1.node_count())
        .iter()
        .any(|p| &g1.relabeled(p) == g2)
}

fn graph_from_bits(n: usize, bits: u32) -> Digraph {
    let mut g = Digraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if bits >> (u * n + v) & 1 == 1 {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn random_digraph(rng: &mut ChaCha8Rng, n: usize) -> Digraph {
    let mut g = Digraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(0.3) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[test]
fn exhaustive_three_node_forms_are_relabeling_invariant() {
    let perms = all_permutations(3);
    for bits in 0u32..512 {
        let g = graph_from_bits(3, bits);
        let form = canonical_form(&g);
        for p in &perms {
            assert_eq!(canonical_form(&g.relabeled(p)), form, "graph bits {bits}");
        }
    }
}

#[test]
fn exhaustive_three_node_group_orders_match_brute_force() {
    let perms = all_permutations(3);
    for bits in 0u32..512 {
        let g = graph_from_bits(3, bits);
        let brute = perms.iter().filter(|p| g.relabeled(p) == g).count();
        assert_eq!(automorphism_group_order(&g), brute, "graph bits {bits}");
    }
}

#[test]
fn random_graphs_up_to_six_nodes_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for round in 0..200 {
        let n = rng.gen_range(1..=6);
        let g = random_digraph(&mut rng, n);
        // Form invariance under a random relabeling.
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(&mut rng);
        let p = Permutation::from_images(images).unwrap();
        assert_eq!(canonical_form(&g), canonical_form(&g.relabeled(&p)), "round {round}");
        // Verdict against the brute-force oracle, with both isomorphic and
        // unrelated partners.
        let partner = if round % 2 == 0 {
            g.relabeled(&p)
        } else {
            random_digraph(&mut rng, n)
        };
        assert_eq!(
            are_isomorphic(&g, &partner).is_some(),
            brute_isomorphic(&g, &partner),
            "round {round}"
        );
        if let Some(w) = are_isomorphic(&g, &partner) {
            assert_eq!(g.relabeled(&w), partner, "witness must carry edges, round {round}");
        }
    }
}

#[test]
fn forms_invariant_under_every_permutation_up_to_six_nodes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 4..=6 {
        let perms = all_permutations(n);
        for _ in 0..5 {
            let g = random_digraph(&mut rng, n);
            let form = canonical_form(&g);
            for p in &perms {
                assert_eq!(canonical_form(&g.relabeled(p)), form);
            }
        }
    }
}

#[test]
fn automorphism_orders_match_oracle_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for _ in 0..60 {
        let n = rng.gen_range(1..=5);
        let g = random_digraph(&mut rng, n);
        let brute = all_permutations(n)
            .iter()
            .filter(|p| g.relabeled(p) == g)
            .count();
        assert_eq!(automorphism_group_order(&g), brute);
    }
}
