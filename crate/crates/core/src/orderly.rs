//! The orderly algorithm: grow partial rectangular structures one rectangle
//! at a time, accepting an extension only when the added rectangle lies in
//! the canonical orbit of the extended structure. The output contains
//! exactly one representative per isomorphism class of full structures.
//!
//! Acceptance is staged: cheap permutation-invariant values (v1, v2, v3)
//! decide most tests outright; only ties fall through to the canonical
//! labeling of the embedded graph.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bitset::ElemSet;
use crate::canon::canonicalize;
use crate::embed::{combine, prs_to_graph_pair, restrict_generators};
use crate::error::{Error, Result};
use crate::perm::{symmetric_group_generators, Permutation};
use crate::rect::{BaseSet, Prs, Rectangle};

/// The permutation-invariant score of a rectangle within a structure,
/// ordered lexicographically by (v1, v2, v3).
///
/// v1 counts rectangles whose rows contain the middle, v2 those whose
/// columns do, and v3 pairs the sorted multisets of row-row and column-
/// column intersection sizes against every rectangle of the structure.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CombinatorialValue {
    pub v1: u32,
    pub v2: u32,
    pub v3: (Vec<u8>, Vec<u8>),
}

/// Computes the full combinatorial value of a rectangle of `x`.
pub fn combinatorial_value(x: &Prs, r: &Rectangle) -> Result<CombinatorialValue> {
    if !x.contains(r) {
        return Err(Error::NotInStructure(format!("{r:?}")));
    }
    let mid = r.middle();
    let v1 = x
        .rectangles()
        .iter()
        .filter(|q| q.rows().contains(mid))
        .count() as u32;
    let v2 = x
        .rectangles()
        .iter()
        .filter(|q| q.cols().contains(mid))
        .count() as u32;
    Ok(CombinatorialValue {
        v1,
        v2,
        v3: v3_of(x, r),
    })
}

fn v3_of(x: &Prs, r: &Rectangle) -> (Vec<u8>, Vec<u8>) {
    let mut rows: Vec<u8> = x
        .rectangles()
        .iter()
        .map(|q| r.rows().intersection_len(q.rows()) as u8)
        .collect();
    let mut cols: Vec<u8> = x
        .rectangles()
        .iter()
        .map(|q| r.cols().intersection_len(q.cols()) as u8)
        .collect();
    rows.sort_unstable();
    cols.sort_unstable();
    (rows, cols)
}

/// All rectangles that validly extend `x`, in sorted order. Generation runs
/// middle-by-middle over the unused elements, enumerating row and column
/// sets through the middle against the structure's constraints; the universe
/// of all rectangles is never materialized.
pub fn candidate_extensions(x: &Prs) -> Vec<Rectangle> {
    let base = x.base();
    let k = base.size();
    let (n, m) = (base.rows(), base.cols());
    let mut out = Vec::new();
    for t in 0..k {
        if x.middles().contains(t) {
            continue;
        }
        let others: Vec<usize> = (0..k).filter(|&e| e != t).collect();
        let mut row_sets: Vec<ElemSet> = Vec::new();
        for_each_subset(&others, n - 1, &mut |extra| {
            let mut rows = ElemSet::singleton(t);
            for &e in extra {
                rows.insert(e);
            }
            if x.rectangles()
                .iter()
                .all(|q| rows.intersection_len(q.cols()) == 1)
            {
                row_sets.push(rows);
            }
        });
        if row_sets.is_empty() {
            continue;
        }
        let mut col_sets: Vec<ElemSet> = Vec::new();
        for_each_subset(&others, m - 1, &mut |extra| {
            let mut cols = ElemSet::singleton(t);
            for &e in extra {
                cols.insert(e);
            }
            if x.rectangles()
                .iter()
                .all(|q| q.rows().intersection_len(cols) == 1)
            {
                col_sets.push(cols);
            }
        });
        for &rows in &row_sets {
            'cols: for &cols in &col_sets {
                if rows.intersection_len(cols) != 1 {
                    continue;
                }
                for a in rows.iter() {
                    if !x.covered_from(a).is_disjoint(cols) {
                        continue 'cols;
                    }
                }
                out.push(Rectangle::new(rows, cols).expect("middle is the one shared element"));
            }
        }
    }
    out.sort();
    out
}

/// Calls `f` with every size-`size` subset of `items`, as a slice.
fn for_each_subset(items: &[usize], size: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(
        items: &[usize],
        size: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if chosen.len() == size {
            f(chosen);
            return;
        }
        let needed = size - chosen.len();
        for i in start..=items.len().saturating_sub(needed) {
            chosen.push(items[i]);
            rec(items, size, i + 1, chosen, f);
            chosen.pop();
        }
    }
    if size > items.len() {
        return;
    }
    rec(items, size, 0, &mut Vec::with_capacity(size), f);
}

/// Search statistics. The interesting ratio is canonical labelings to theta
/// tests: the combinatorial values exist to keep it small.
#[derive(Clone, Debug, Default)]
pub struct Counters {
    /// Search-tree nodes visited (accepted structures of every size).
    pub nodes: u64,
    /// Valid extensions generated across all nodes.
    pub candidates: u64,
    /// Orbit representatives actually theta-tested.
    pub theta_tests: u64,
    /// Theta tests settled by the combinatorial values alone: accepts.
    pub v_accepts: u64,
    /// Theta tests settled by the combinatorial values alone: rejects.
    pub v_rejects: u64,
    /// Theta ties that required canonicalizing the embedded graph.
    pub canonical_labelings: u64,
    /// Ties settled because the v-minimal rectangles form a single orbit.
    pub orbit_resolved: u64,
    /// Ties settled by comparing canonical labels of rectangle nodes.
    pub label_resolved: u64,
    /// Stabilizer computations for accepted structures.
    pub automorphism_computations: u64,
}

impl Counters {
    fn merge(&mut self, other: &Counters) {
        self.nodes += other.nodes;
        self.candidates += other.candidates;
        self.theta_tests += other.theta_tests;
        self.v_accepts += other.v_accepts;
        self.v_rejects += other.v_rejects;
        self.canonical_labelings += other.canonical_labelings;
        self.orbit_resolved += other.orbit_resolved;
        self.label_resolved += other.label_resolved;
        self.automorphism_computations += other.automorphism_computations;
    }
}

/// Result of a full enumeration: one structure per isomorphism class, sorted
/// by the canonical form of the combined graph.
#[derive(Clone, Debug)]
pub struct EnumerationReport {
    pub n: usize,
    pub m: usize,
    pub structures: Vec<Prs>,
    /// Canonical forms of the combined graphs, parallel to `structures`.
    pub canonical_forms: Vec<Vec<(u16, u16)>>,
    pub counters: Counters,
    pub wall_time: Duration,
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Worker count; subtrees of the search are independent, and reports are
    /// merged and sorted so parallel and serial runs emit identical output.
    pub jobs: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { jobs: 1 }
    }
}

struct ThetaOutcome {
    accepted: bool,
    /// Stabilizer generators of the extended structure, when the tie path
    /// computed them anyway.
    child_generators: Option<Vec<Permutation>>,
}

/// Public theta test: is the added rectangle in the canonical orbit of the
/// extended structure?
pub fn theta_accept(x_new: &Prs, r_new: &Rectangle) -> Result<bool> {
    let mut counters = Counters::default();
    Ok(theta_accept_inner(x_new, r_new, &mut counters)?.accepted)
}

fn theta_accept_inner(
    x_new: &Prs,
    r_new: &Rectangle,
    counters: &mut Counters,
) -> Result<ThetaOutcome> {
    if !x_new.contains(r_new) {
        return Err(Error::NotInStructure(format!("{r_new:?}")));
    }
    counters.theta_tests += 1;
    let rects = x_new.rectangles();
    let k = x_new.base().size();

    // Stage v1/v2: per-element membership counts cover all rectangles at once.
    let mut row_count = vec![0u32; k];
    let mut col_count = vec![0u32; k];
    for q in rects {
        for e in q.rows().iter() {
            row_count[e] += 1;
        }
        for e in q.cols().iter() {
            col_count[e] += 1;
        }
    }
    let mut survivors: Vec<usize> = (0..rects.len()).collect();
    for key in [&row_count, &col_count] {
        let min = survivors
            .iter()
            .map(|&i| key[rects[i].middle()])
            .min()
            .unwrap();
        survivors.retain(|&i| key[rects[i].middle()] == min);
        if let Some(outcome) = check_survivors(&survivors, rects, r_new, counters) {
            return Ok(outcome);
        }
    }

    // Stage v3, computed only for the remaining ties.
    type V3 = (Vec<u8>, Vec<u8>);
    let v3s: Vec<(usize, V3)> = survivors
        .iter()
        .map(|&i| (i, v3_of(x_new, &rects[i])))
        .collect();
    let min_v3 = v3s.iter().map(|(_, v)| v).min().unwrap().clone();
    survivors = v3s
        .into_iter()
        .filter(|(_, v)| *v == min_v3)
        .map(|(i, _)| i)
        .collect();
    if let Some(outcome) = check_survivors(&survivors, rects, r_new, counters) {
        return Ok(outcome);
    }

    // Tie: canonicalize the embedded graph. The same search yields both the
    // labeling and the stabilizer generators.
    counters.canonical_labelings += 1;
    let embedded = combine(&prs_to_graph_pair(x_new));
    let res = canonicalize(embedded.graph());
    let gens = restrict_generators(&res.automorphism_generators, k)?;

    let orbit_of_new = rectangle_orbit(r_new, &gens);
    let accepted = if survivors
        .iter()
        .all(|&i| orbit_of_new.contains(&rects[i]))
    {
        // All v-minimal rectangles form one orbit, which must be the
        // canonical orbit; no need to consult the labels.
        counters.orbit_resolved += 1;
        true
    } else {
        counters.label_resolved += 1;
        let best = survivors
            .iter()
            .copied()
            .min_by_key(|&i| res.labeling.apply(embedded.rectangle_node(&rects[i])))
            .unwrap();
        orbit_of_new.contains(&rects[best])
    };
    Ok(ThetaOutcome {
        accepted,
        child_generators: Some(gens),
    })
}

/// Shortcut checks shared by the v-stages: reject when the new rectangle
/// fell out of the minimal set, accept when it is the unique minimum.
fn check_survivors(
    survivors: &[usize],
    rects: &[Rectangle],
    r_new: &Rectangle,
    counters: &mut Counters,
) -> Option<ThetaOutcome> {
    let holds = survivors.iter().any(|&i| &rects[i] == r_new);
    if !holds {
        counters.v_rejects += 1;
        return Some(ThetaOutcome {
            accepted: false,
            child_generators: None,
        });
    }
    if survivors.len() == 1 {
        counters.v_accepts += 1;
        return Some(ThetaOutcome {
            accepted: true,
            child_generators: None,
        });
    }
    None
}

fn rectangle_orbit(start: &Rectangle, gens: &[Permutation]) -> HashSet<Rectangle> {
    let mut orbit = HashSet::new();
    orbit.insert(*start);
    let mut frontier = vec![*start];
    while let Some(r) = frontier.pop() {
        for g in gens {
            let img = r.apply(g);
            if orbit.insert(img) {
                frontier.push(img);
            }
        }
    }
    orbit
}

/// One representative per orbit of the generated group on the candidate
/// list: the lexicographically least rectangle of each orbit.
fn orbit_representatives(candidates: &[Rectangle], gens: &[Permutation]) -> Vec<Rectangle> {
    if gens.is_empty() {
        return candidates.to_vec();
    }
    let mut seen: HashSet<Rectangle> = HashSet::new();
    let mut reps = Vec::new();
    for r in candidates {
        if seen.contains(r) {
            continue;
        }
        reps.push(*r);
        for img in rectangle_orbit(r, gens) {
            seen.insert(img);
        }
    }
    reps
}

/// Expands one node: for each orbit representative among the valid
/// extensions, theta-test the extension and hand accepted children (with
/// their stabilizer generators) or completed structures to the callbacks.
fn expand_node(
    x: &Prs,
    gens: &[Permutation],
    counters: &mut Counters,
    on_child: &mut impl FnMut(Prs, Vec<Permutation>) -> Result<()>,
    on_full: &mut impl FnMut(Prs) -> Result<()>,
) -> Result<()> {
    counters.nodes += 1;
    let candidates = candidate_extensions(x);
    counters.candidates += candidates.len() as u64;
    let reps = orbit_representatives(&candidates, gens);
    for r in reps {
        let x_new = x.with_rectangle(&r)?;
        let outcome = theta_accept_inner(&x_new, &r, counters)?;
        if !outcome.accepted {
            continue;
        }
        if x_new.is_full() {
            on_full(x_new)?;
        } else {
            let child_gens = match outcome.child_generators {
                Some(g) => g,
                None => {
                    counters.automorphism_computations += 1;
                    crate::embed::prs_automorphisms(&x_new)?
                }
            };
            on_child(x_new, child_gens)?;
        }
    }
    Ok(())
}

fn dfs(
    x: &Prs,
    gens: &[Permutation],
    counters: &mut Counters,
    out: &mut Vec<Prs>,
) -> Result<()> {
    let mut children: Vec<(Prs, Vec<Permutation>)> = Vec::new();
    expand_node(
        x,
        gens,
        counters,
        &mut |child, child_gens| {
            children.push((child, child_gens));
            Ok(())
        },
        &mut |full| {
            out.push(full);
            Ok(())
        },
    )?;
    for (child, child_gens) in children {
        dfs(&child, &child_gens, counters, out)?;
    }
    Ok(())
}

/// Enumerates all n×m rectangular structures up to isomorphism.
pub fn enumerate(n: usize, m: usize) -> Result<EnumerationReport> {
    enumerate_with(n, m, &EnumerateOptions::default())
}

pub fn enumerate_with(n: usize, m: usize, opts: &EnumerateOptions) -> Result<EnumerationReport> {
    let start = Instant::now();
    let base = BaseSet::new(n, m)?;
    let root = Prs::empty(base);
    let root_gens = symmetric_group_generators(base.size());

    let mut counters = Counters::default();
    let mut structures: Vec<Prs> = Vec::new();

    if opts.jobs <= 1 {
        dfs(&root, &root_gens, &mut counters, &mut structures)?;
    } else {
        // Expand a frontier until there is enough independent work, then let
        // the workers take disjoint subtrees.
        let mut frontier: Vec<(Prs, Vec<Permutation>)> = vec![(root, root_gens)];
        let mut depth = 0;
        while depth < base.size() && frontier.len() < 4 * opts.jobs && !frontier.is_empty() {
            let mut next = Vec::new();
            for (x, gens) in &frontier {
                expand_node(
                    x,
                    gens,
                    &mut counters,
                    &mut |child, child_gens| {
                        next.push((child, child_gens));
                        Ok(())
                    },
                    &mut |full| {
                        structures.push(full);
                        Ok(())
                    },
                )?;
            }
            frontier = next;
            depth += 1;
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::TheoryViolation(format!("worker pool: {e}")))?;
        let results: Vec<Result<(Vec<Prs>, Counters)>> = pool.install(|| {
            frontier
                .par_iter()
                .map(|(x, gens)| {
                    let mut local_counters = Counters::default();
                    let mut local_out = Vec::new();
                    dfs(x, gens, &mut local_counters, &mut local_out)?;
                    Ok((local_out, local_counters))
                })
                .collect()
        });
        for res in results {
            let (local_out, local_counters) = res?;
            structures.extend(local_out);
            counters.merge(&local_counters);
        }
    }

    // Sort by canonical form so output order is independent of the search
    // schedule, and certify that no class appears twice.
    let mut keyed: Vec<(Vec<(u16, u16)>, Prs)> = structures
        .into_iter()
        .map(|s| {
            s.validate_full()?;
            let form = canonicalize(combine(&prs_to_graph_pair(&s)).graph()).canonical_form;
            Ok((form, s))
        })
        .collect::<Result<_>>()?;
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.rectangles().cmp(b.1.rectangles())));
    for pair in keyed.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(Error::TheoryViolation(
                "two emitted structures share a canonical form".into(),
            ));
        }
    }
    let (canonical_forms, structures): (Vec<_>, Vec<_>) = keyed.into_iter().unzip();

    Ok(EnumerationReport {
        n,
        m,
        structures,
        canonical_forms,
        counters,
        wall_time: start.elapsed(),
    })
}
