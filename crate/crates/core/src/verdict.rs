use std::fmt;

/// Outcome of an axiom check; a failure carries the first violation found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<V> {
    Pass,
    Fail(V),
}

impl<V> Verdict<V> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn failure(&self) -> Option<&V> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(v) => Some(v),
        }
    }
}

impl<V: fmt::Display> fmt::Display for Verdict<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail(v) => write!(f, "fail: {v}"),
        }
    }
}
