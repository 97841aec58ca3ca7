//! The full verification battery: every cross-check between the recurrences,
//! the planar networks, the closed forms and the sequence tests, at desk scale.

mod battery;
mod criteria;

pub use battery::{battery, random_sequences, BatteryScheme};
pub use criteria::{
    fixed_values, lgv_suite, oracle_equivalence, riordan_agreement, sequence_properties, structural_identities,
    tp_suite,
};

use serde::Serialize;

/// At most this many failures are listed per criterion.
pub const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub checks: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

/// Running count of checks and failures for one criterion.
#[derive(Default)]
pub(crate) struct Tally {
    checks: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    pub(crate) fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
    }

    pub(crate) fn fail(&mut self, what: String) {
        self.failed += 1;
        if self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(what);
        }
    }

    /// Counts `r` as a check that passes when it is `Ok(true)`.
    pub(crate) fn result<E: std::fmt::Display>(&mut self, r: Result<bool, E>, what: impl Fn() -> String) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => {
                self.checks += 1;
                self.fail(format!("{}: {e}", what()));
            }
        }
    }

    pub(crate) fn finish(self, id: u8, name: &str) -> CriterionResult {
        CriterionResult {
            id,
            name: name.to_string(),
            passed: self.failed == 0 && self.checks > 0,
            checks: self.checks,
            failed: self.failed,
            failures: self.failures,
        }
    }
}

/// Runs criteria 1 to 7 in order.
pub fn run_all(seed: u64) -> VerifyReport {
    let b = battery(seed);
    let criteria = vec![
        oracle_equivalence(&b),
        fixed_values(),
        structural_identities(&b),
        lgv_suite(),
        tp_suite(&b),
        riordan_agreement(&b),
        sequence_properties(&b, seed),
    ];
    let passed = criteria.iter().all(|c| c.passed);
    VerifyReport { seed, criteria, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_counts_and_caps_failures() {
        let mut t = Tally::default();
        t.check(true, || unreachable!());
        for i in 0..30 {
            t.check(false, || format!("bad {i}"));
        }
        t.result(Err::<bool, _>("broken"), || "io".into());
        let r = t.finish(9, "demo");
        assert_eq!((r.checks, r.failed, r.passed), (32, 31, false));
        assert_eq!(r.failures.len(), MAX_LISTED_FAILURES);
        assert_eq!(r.failures[0], "bad 0");
    }

    #[test]
    fn empty_criterion_does_not_pass() {
        assert!(!Tally::default().finish(1, "nothing").passed);
    }

    #[test]
    fn fixed_values_hold() {
        let r = fixed_values();
        assert!(r.passed, "{:?}", r.failures);
        assert_eq!(r.checks, 20);
    }
}
