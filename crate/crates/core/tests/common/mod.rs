#![allow(dead_code)]

use cubic_matching::oracle;
use cubic_matching::reducer::{Observer, SolverState};
use cubic_matching::EdgeId;

/// Runs every oracle check the solver state admits after each step and
/// collects failures instead of panicking mid-run.
#[derive(Default)]
pub struct StepChecks {
    pub failures: Vec<String>,
    pub swaps_seen: usize,
    pub reductions_seen: usize,
    pub reverts_seen: usize,
}

impl StepChecks {
    fn cover(&mut self, s: &mut SolverState, what: &str) {
        if let Some(v) = oracle::cover_violation(s) {
            self.failures.push(format!("after {what} at step {}: {v}", s.iteration()));
        }
    }

    pub fn assert_clean(&self, context: &str) {
        assert!(
            self.failures.is_empty(),
            "{context}: {} failures, first: {:?}",
            self.failures.len(),
            &self.failures[..self.failures.len().min(3)]
        );
    }
}

impl Observer for StepChecks {
    fn after_init(&mut self, s: &mut SolverState) {
        self.cover(s, "init");
    }

    fn after_swap(&mut self, s: &mut SolverState, e: EdgeId) {
        self.swaps_seen += 1;
        self.cover(s, &format!("swap of {e}"));
    }

    fn after_reduction(&mut self, s: &mut SolverState) {
        self.reductions_seen += 1;
        self.cover(s, "reduction");
        if !oracle::is_cubic(s.graph()) || !oracle::is_bridgeless(s.graph()) {
            self.failures.push(format!("step {}: graph is not cubic and bridgeless", s.iteration()));
        }
        if !s.graph().edge(s.e_cur()).alive() {
            self.failures.push(format!("step {}: tracked edge is dead", s.iteration()));
        }
    }

    fn after_revert(&mut self, s: &mut SolverState) {
        self.reverts_seen += 1;
        let m = s.current_matching();
        if !oracle::is_perfect_matching(s.graph(), m.edges()) {
            self.failures.push(format!("revert to step {}: matching is not perfect", s.iteration()));
        }
        if m.contains(s.e_cur()) {
            self.failures.push(format!("revert to step {}: tracked edge is matched", s.iteration()));
        }
    }
}
