use serde::Serialize;

/// Inputs and both evaluations for the worst failing case.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub inputs: Vec<Vec<f64>>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
}

/// Outcome of comparing two evaluations of the same quantity over a batch
/// of cases.
///
/// `pass` is derived: it holds exactly when `max_abs_error <= tolerance`.
/// `expect_pass` is false for fixtures built to violate an identity; such a
/// report is satisfied when it fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub name: String,
    pub tolerance: f64,
    pub max_abs_error: f64,
    pub cases: usize,
    pub pass: bool,
    pub expect_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl OracleReport {
    pub fn new(name: impl Into<String>, tolerance: f64) -> Self {
        OracleReport {
            name: name.into(),
            tolerance,
            max_abs_error: 0.0,
            cases: 0,
            pass: true,
            expect_pass: true,
            witness: None,
        }
    }

    /// Marks the identity as one the fixture is expected to break.
    pub fn expecting_failure(mut self) -> Self {
        self.expect_pass = false;
        self
    }

    /// Records one case. The witness closure runs only when this case is
    /// the worst failure seen so far.
    pub fn record(&mut self, error: f64, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        let error = if error.is_nan() { f64::INFINITY } else { error };
        let worse = error > self.max_abs_error;
        if worse {
            self.max_abs_error = error;
        }
        if error > self.tolerance && (worse || self.witness.is_none()) {
            self.witness = Some(witness());
        }
        self.pass = self.max_abs_error <= self.tolerance;
    }

    /// Folds another report for the same identity into this one.
    pub fn merge(&mut self, other: OracleReport) {
        self.cases += other.cases;
        if other.max_abs_error > self.max_abs_error {
            self.max_abs_error = other.max_abs_error;
            if other.witness.is_some() {
                self.witness = other.witness;
            }
        } else if self.witness.is_none() {
            self.witness = other.witness;
        }
        self.pass = self.max_abs_error <= self.tolerance;
    }

    pub fn meets_expectation(&self) -> bool {
        self.pass == self.expect_pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Witness {
        Witness { inputs: vec![vec![1.0]], lhs: vec![1.0], rhs: vec![2.0] }
    }

    #[test]
    fn pass_tracks_tolerance() {
        let mut r = OracleReport::new("t", 1e-9);
        r.record(1e-12, w);
        assert!(r.pass);
        assert!(r.witness.is_none());
        r.record(0.5, w);
        assert!(!r.pass);
        assert_eq!(r.cases, 2);
        assert_eq!(r.witness, Some(w()));
        assert_eq!(r.max_abs_error, 0.5);
    }

    #[test]
    fn nan_counts_as_failure() {
        let mut r = OracleReport::new("t", 1.0);
        r.record(f64::NAN, w);
        assert!(!r.pass);
    }

    #[test]
    fn expected_failures() {
        let mut r = OracleReport::new("t", 0.0).expecting_failure();
        assert!(!r.meets_expectation());
        r.record(1.0, w);
        assert!(r.meets_expectation());
    }
}
