mod common;

use common::StepChecks;
use cubic_matching::generator::{k4, petersen, random_expand, theta};
use cubic_matching::reducer::{ReductionKind, ReductionRecord, SolverState, TypeIISubcase};
use cubic_matching::{oracle, CubicMultigraph, EdgeId, Error};

fn is_theta(g: &CubicMultigraph) -> bool {
    let (n, edges) = g.alive_edge_list();
    n == 2 && edges.len() == 3 && edges.iter().all(|&(u, v)| u != v)
}

fn tree_edges(s: &SolverState) -> Vec<EdgeId> {
    s.graph().edge_ids().filter(|&e| s.graph().edge(e).in_tree()).collect()
}

#[test]
fn init_on_theta() {
    let mut s = SolverState::init(theta()).unwrap();
    let tree = tree_edges(&s);
    assert_eq!(tree.len(), 1);
    let c = s.cover(tree[0]).unwrap();
    assert_ne!(c, tree[0]);
    assert!(!s.graph().edge(c).in_tree());
    assert_eq!(s.e_cur(), EdgeId(0));
}

#[test]
fn init_covers_k4_and_petersen() {
    for g in [k4(), petersen()] {
        let n = g.vertex_count();
        let mut s = SolverState::init(g).unwrap();
        assert_eq!(tree_edges(&s).len(), n - 1);
        assert_eq!(oracle::cover_violation(&mut s), None);
    }
}

#[test]
fn init_rejects_wrong_degree_and_disconnected() {
    let mut g = k4();
    g.detach(EdgeId(5)).unwrap();
    assert!(matches!(SolverState::init(g), Err(Error::Degree { .. })));
    let two_thetas = CubicMultigraph::build(4, &[(0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3)]).unwrap();
    assert!(matches!(SolverState::init(two_thetas), Err(Error::Structure(_))));
}

#[test]
fn swap_on_theta_is_forced() {
    let mut s = SolverState::init(theta()).unwrap();
    let t = tree_edges(&s)[0];
    let c = s.cover(t).unwrap();
    s.swap(t).unwrap();
    assert_eq!(tree_edges(&s), vec![c]);
    assert_eq!(s.cover(c).unwrap(), t);
}

#[test]
fn swaps_on_k4_keep_the_invariant() {
    for pick in 0..3 {
        let mut s = SolverState::init(k4()).unwrap();
        let t = tree_edges(&s)[pick];
        s.swap(t).unwrap();
        assert_eq!(oracle::cover_violation(&mut s), None);
        let again = tree_edges(&s)[pick];
        s.swap(again).unwrap();
        assert_eq!(tree_edges(&s).len(), 3);
        assert_eq!(oracle::cover_violation(&mut s), None);
    }
}

#[test]
fn swap_rejects_non_tree_edge() {
    let mut s = SolverState::init(k4()).unwrap();
    let off = s.graph().edge_ids().find(|&e| !s.graph().edge(e).in_tree()).unwrap();
    assert!(matches!(s.swap(off), Err(Error::State(_))));
}

#[test]
fn k4_reduction_must_cross() {
    // tracked edge {0,2}; reducing {0,1} puts both a and c at vertex 2
    let g = CubicMultigraph::build(4, &[(0, 2), (0, 1), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let pair = oracle::frink_pair(&g, EdgeId(1)).unwrap();
    assert!(pair.h1.has_loop() && !pair.h1_bridgeless);
    assert!(pair.h2_bridgeless);

    let mut s = SolverState::init(g).unwrap();
    s.reduce_type_i(EdgeId(1)).unwrap();
    let ReductionRecord::TypeI(rec) = &s.log()[0] else { panic!("expected a type I record") };
    assert_eq!((rec.v.0, rec.w.0), (0, 1));
    assert_eq!(rec.at_v[0].far.0, 2);
    // the stub paired with `a` must lead to the other far vertex
    let partner = match rec.kind {
        ReductionKind::Straight => rec.at_w[0],
        ReductionKind::Crossing => rec.at_w[1],
    };
    assert_ne!(partner.far, rec.at_v[0].far);
    assert!(is_theta(s.graph()));
    assert_eq!(s.e_cur(), rec.added[0]);
    assert_eq!(oracle::cover_violation(&mut s), None);
}

#[test]
fn type_i_preconditions() {
    let mut s = SolverState::init(k4()).unwrap();
    // edge 5 = {2,3} does not touch the tracked edge {0,1}
    assert!(matches!(s.reduce_type_i(EdgeId(5)), Err(Error::State(_))));
    assert!(matches!(s.reduce_type_i(EdgeId(0)), Err(Error::State(_))));
    let mut t = SolverState::init(theta()).unwrap();
    assert!(matches!(t.reduce_type_i(EdgeId(1)), Err(Error::State(_))));
}

fn gadget() -> CubicMultigraph {
    // a=0, v=1, w=2, b=3: single a-v, double v-w, single w-b, double a-b
    CubicMultigraph::build(4, &[(0, 1), (1, 2), (1, 2), (2, 3), (0, 3), (0, 3)]).unwrap()
}

#[test]
fn type_ii_gadget_collapses_to_theta() {
    let mut s = SolverState::init(gadget()).unwrap();
    assert_eq!(s.graph().single_edge_incident(s.e_cur()), None);
    s.reduce_type_ii().unwrap();
    assert!(is_theta(s.graph()));
    let ReductionRecord::TypeII(rec) = &s.log()[0] else { panic!("expected a type II record") };
    // the gadget is symmetric: either double edge may be collapsed
    let mut pair = [rec.v.0, rec.w.0];
    pair.sort();
    assert!(pair == [1, 2] || pair == [0, 3], "{pair:?}");
    assert_eq!(rec.e_old, EdgeId(0));
    assert!([rec.a.0, rec.v.0] == [0, 1] || [rec.a.0, rec.v.0] == [1, 0]);
    assert_eq!(s.e_cur(), rec.e_next);
    let (x, y) = s.graph().endpoints(rec.e_next);
    assert_eq!([x, y].map(|z| z.0).iter().copied().min().unwrap(), rec.a.0.min(rec.b.0));
    assert!(s.graph().is_alive(rec.a) && s.graph().is_alive(rec.b));
    if rec.subcase == TypeIISubcase::Reuse {
        assert!(rec.e_next == rec.e_old || rec.e_next == rec.bw);
    }
    assert_eq!(oracle::cover_violation(&mut s), None);
}

#[test]
fn both_tree_subcase_inherits_the_cover() {
    let mut seen = 0;
    for n in [4, 6, 8, 10, 12] {
        for seed in 0..300 {
            let mut s = SolverState::init(random_expand(n, seed).unwrap()).unwrap();
            while s.graph().alive_vertex_count() > 2 {
                let e = s.e_cur();
                let before = if s.graph().single_edge_incident(e).is_none() && s.graph().edge(e).in_tree() {
                    Some(s.cover(e).unwrap())
                } else {
                    None
                };
                s.step_with(&mut ()).unwrap();
                if let (Some(old), Some(ReductionRecord::TypeII(rec))) = (before, s.log().last().cloned()) {
                    if rec.subcase == TypeIISubcase::BothTree {
                        seen += 1;
                        assert_eq!(s.cover(rec.e_next).unwrap(), old);
                    }
                }
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn forward_pass_lengths() {
    let mut s = SolverState::init(theta()).unwrap();
    s.forward_pass().unwrap();
    assert!(s.log().is_empty());

    let mut s = SolverState::init(k4()).unwrap();
    s.forward_pass().unwrap();
    assert_eq!(s.log().len(), 1);
    assert!(is_theta(s.graph()));

    let mut s = SolverState::init(random_expand(1024, 11).unwrap()).unwrap();
    s.forward_pass().unwrap();
    assert_eq!(s.log().len(), 511);
    assert!(is_theta(s.graph()));
    assert!(matches!(s.step_with(&mut ()), Err(Error::State(_))));
}

#[test]
fn every_step_keeps_all_invariants() {
    for n in [4usize, 6, 8, 10, 14, 20, 32, 64] {
        for seed in 0..40 {
            let g = random_expand(n, seed).unwrap();
            let mut checks = StepChecks::default();
            let mut s = SolverState::init_with(g, &mut checks).unwrap();
            s.forward_pass_with(&mut checks).unwrap();
            checks.assert_clean(&format!("n={n} seed={seed}"));
            assert_eq!(checks.reductions_seen, n / 2 - 1);
        }
    }
}

#[test]
fn every_branch_is_exercised() {
    let mut totals = cubic_matching::reducer::Stats::default();
    for n in [4usize, 6, 8, 12, 20, 64] {
        for seed in 0..200 {
            let mut s = SolverState::init(random_expand(n, seed).unwrap()).unwrap();
            s.forward_pass().unwrap();
            let st = s.stats();
            totals.type_i += st.type_i;
            totals.type_ii += st.type_ii;
            totals.straight += st.straight;
            totals.crossing += st.crossing;
            totals.tree2 += st.tree2;
            totals.tree3 += st.tree3;
            totals.both_tree += st.both_tree;
            totals.reuse += st.reuse;
            totals.swaps += st.swaps;
        }
    }
    for (name, count) in [
        ("straight", totals.straight),
        ("crossing", totals.crossing),
        ("two tree stubs", totals.tree2),
        ("three tree stubs", totals.tree3),
        ("both tree", totals.both_tree),
        ("reuse", totals.reuse),
        ("swaps", totals.swaps),
    ] {
        assert!(count > 0, "{name} never happened");
    }
    assert_eq!(totals.type_i, totals.straight + totals.crossing);
    assert_eq!(totals.type_i, totals.tree2 + totals.tree3);
    assert_eq!(totals.type_ii, totals.both_tree + totals.reuse);
}

/// Upper bound on dynamic-forest primitives per reduction, swaps included.
const OPS_PER_REDUCTION: u64 = 120;

#[test]
fn constant_work_per_reduction() {
    for n in [64usize, 1024, 8192] {
        for seed in 0..5 {
            let mut s = SolverState::init(random_expand(n, seed).unwrap()).unwrap();
            let mut worst = 0;
            while s.graph().alive_vertex_count() > 2 {
                let before = s.forest().ops();
                s.step_with(&mut ()).unwrap();
                worst = worst.max(s.forest().ops() - before);
            }
            assert!(worst <= OPS_PER_REDUCTION, "n={n} seed={seed}: {worst} primitives in one reduction");
            assert!(s.stats().max_swaps_per_reduction <= 4);
        }
    }
}

#[test]
fn trace_lines_have_five_fields() {
    let mut s = SolverState::init(random_expand(32, 4).unwrap()).unwrap();
    s.forward_pass().unwrap();
    for rec in s.log() {
        let line = rec.trace_line();
        let fields: Vec<&str> = line.split('\t').collect();
        assert_eq!(fields.len(), 5, "{line}");
        assert!(fields[0] == "I" || fields[0] == "II");
    }
}
