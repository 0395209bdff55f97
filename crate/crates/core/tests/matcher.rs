mod common;

use common::StepChecks;
use cubic_matching::generator::{k4, petersen, random_expand, theta};
use cubic_matching::matcher::{solve_with, Matching};
use cubic_matching::reducer::{ReductionRecord, SolverState, TypeIISubcase};
use cubic_matching::{oracle, solve, CubicMultigraph, EdgeId, Error};

#[test]
fn matching_text_round_trip() {
    let m = Matching::new(vec![EdgeId(4), EdgeId(1), EdgeId(9)]);
    assert_eq!(m.to_text(), "3\n1\n4\n9\n");
    assert_eq!(Matching::parse(&m.to_text()).unwrap(), m);
    assert!(Matching::parse("2\n1\n").is_err());
    assert!(matches!(Matching::parse("1\n1\n2\n"), Err(Error::Format { line: 3, .. })));
    assert!(matches!(Matching::parse("1\nx\n"), Err(Error::Format { line: 2, .. })));
    assert!(matches!(Matching::parse(""), Err(Error::Format { line: 1, .. })));
}

#[test]
fn base_matching_skips_the_tracked_copy() {
    let mut s = SolverState::init(theta()).unwrap();
    s.forward_pass().unwrap();
    s.base_matching().unwrap();
    assert_eq!(s.current_matching().edges(), &[EdgeId(1)]);

    let mut s = SolverState::init(k4()).unwrap();
    s.forward_pass().unwrap();
    s.base_matching().unwrap();
    let m = s.current_matching();
    assert_eq!(m.len(), 1);
    assert!(!m.contains(s.e_cur()));

    let mut s = SolverState::init(k4()).unwrap();
    assert!(matches!(s.base_matching(), Err(Error::State(_))));
}

#[test]
fn k4_pipeline_ends_in_case_a() {
    let g = k4();
    let r = solve_with(&g, &mut ()).unwrap();
    assert_eq!((r.stats.case_a, r.stats.case_b, r.stats.case_c), (1, 0, 0));
    assert_eq!(r.matching.len(), 2);
    assert!(!r.matching.contains(EdgeId(0)));
    assert!(oracle::is_perfect_matching(&g, r.matching.edges()));
}

#[test]
fn case_b_moves_the_match_onto_the_stubs() {
    let mut s = SolverState::init(k4()).unwrap();
    s.forward_pass().unwrap();
    let ReductionRecord::TypeI(rec) = s.log()[0].clone() else { panic!("K4 reduces by type I") };
    // match the added edge that is not tracked
    s.graph_mut().clear_matching();
    s.graph_mut().set_in_matching(rec.added[1], true);
    s.revert_last().unwrap();
    let m = s.current_matching();
    let (sv, sw) = rec.replaced[1];
    assert!(m.contains(sv.edge) && m.contains(sw.edge));
    assert!(!m.contains(rec.vw));
    assert_eq!(s.stats().case_b, 1);
    assert!(oracle::is_perfect_matching(s.graph(), m.edges()));
    assert_eq!(s.e_cur(), rec.e_prev);
}

#[test]
fn matched_tracked_edge_is_an_error() {
    let mut s = SolverState::init(k4()).unwrap();
    s.forward_pass().unwrap();
    let e = s.e_cur();
    s.graph_mut().set_in_matching(e, true);
    assert!(matches!(s.revert_last(), Err(Error::State(_))));
    assert_eq!(s.stats().case_c, 1);
}

fn gadget() -> CubicMultigraph {
    CubicMultigraph::build(4, &[(0, 1), (1, 2), (1, 2), (2, 3), (0, 3), (0, 3)]).unwrap()
}

#[test]
fn type_ii_revert_restores_the_gadget() {
    let original = gadget();
    let mut s = SolverState::init(original.clone()).unwrap();
    s.forward_pass().unwrap();
    let ReductionRecord::TypeII(rec) = s.log()[0].clone() else { panic!("gadget reduces by type II") };
    let reused_before = rec.reused_ends;
    s.backward_pass().unwrap();
    let m = s.current_matching();
    assert!(m.contains(rec.f1));
    assert!(oracle::is_perfect_matching(&original, m.edges()));
    assert_eq!(s.e_cur(), rec.e_old);
    assert_eq!(s.graph().serialize(), original.serialize());
    if rec.subcase == TypeIISubcase::Reuse {
        let (x, y) = reused_before.unwrap();
        assert_eq!(s.graph().endpoints(rec.e_next), (x, y));
    }
}

#[test]
fn reverts_restore_the_input_exactly() {
    for seed in 0..30 {
        let g = random_expand(40, seed).unwrap();
        let mut s = SolverState::init(g.clone()).unwrap();
        s.forward_pass().unwrap();
        s.backward_pass().unwrap();
        assert_eq!(s.graph().serialize(), g.serialize());
        assert_eq!(s.e_cur(), EdgeId(0));
        assert_eq!(s.graph().alive_edge_count(), g.alive_edge_count());
    }
}

#[test]
fn solve_small_named_graphs() {
    let m = solve(&theta()).unwrap();
    assert_eq!(m.len(), 1);
    assert!(m.edges()[0] == EdgeId(1) || m.edges()[0] == EdgeId(2));

    let g = k4();
    let m = solve(&g).unwrap();
    assert_eq!(m.len(), 2);
    assert!(!m.contains(EdgeId(0)));

    let g = petersen();
    let m = solve(&g).unwrap();
    assert_eq!(m.len(), 5);
    let all = oracle::enumerate_perfect_matchings(&g).unwrap();
    assert_eq!(all.len(), 6);
    assert!(all.contains(&m));
}

#[test]
fn every_revert_keeps_a_perfect_matching() {
    for n in [4usize, 6, 10, 16, 32, 64, 128] {
        for seed in 0..25 {
            let g = random_expand(n, seed).unwrap();
            let mut checks = StepChecks::default();
            let r = solve_with(&g, &mut checks).unwrap();
            checks.assert_clean(&format!("n={n} seed={seed}"));
            assert_eq!(checks.reverts_seen, n / 2);
            assert_eq!(r.stats.case_c, 0);
            assert_eq!(r.stats.case_a + r.stats.case_b, r.stats.type_i);
        }
    }
}

#[test]
fn solve_is_deterministic() {
    let g = random_expand(2000, 77).unwrap();
    let text = g.serialize();
    let a = solve(&CubicMultigraph::parse(&text).unwrap()).unwrap();
    let b = solve(&CubicMultigraph::parse(&text).unwrap()).unwrap();
    assert_eq!(a.to_text(), b.to_text());
}

#[test]
fn bridged_input_errors_or_still_matches() {
    // two triangles with a doubled side each, joined by a bridge
    let g = CubicMultigraph::build(6, &[(0, 1), (0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5), (4, 5)]).unwrap();
    assert!(!oracle::is_bridgeless(&g));
    match solve(&g) {
        Err(Error::Structure(_)) | Err(Error::Loop { .. }) => {}
        Ok(m) => assert!(oracle::is_perfect_matching(&g, m.edges())),
        Err(e) => panic!("unexpected error kind: {e}"),
    }
}
