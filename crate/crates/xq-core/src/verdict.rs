//! Query verdicts.

/// Outcome of a decision query. A `Yes` always carries a witness that
/// itself satisfies the query's defining condition (a changed instance for
/// minimum-change, a sufficient reason for minimum-sufficient-reason).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Yes(W),
    No,
}

impl<W> Verdict<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Yes(w) => Some(w),
            Verdict::No => None,
        }
    }
}
