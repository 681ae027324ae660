pub mod deform;
pub mod map;
pub mod means;
pub mod report;
pub mod search_p0;
pub mod symmetrize;
pub mod verify;

use steinsym::verify::{Gate, Outcome, Verdict};

use crate::error::{CliError, CliResult};

/// Fails with a theorem violation if any hard-gated verdict failed.
pub(crate) fn gate(verdicts: &[Verdict]) -> CliResult<()> {
    let bad: Vec<_> = verdicts
        .iter()
        .filter(|v| v.gate == Gate::Theorem && v.outcome == Outcome::Fail)
        .collect();
    if bad.is_empty() {
        return Ok(());
    }
    let first = bad[0];
    Err(CliError::TheoremViolation(format!(
        "{} verdict(s) failed beyond budget, first: {} on {} ({}) margin {:e}",
        bad.len(),
        first.theorem,
        first.fixture,
        first.params,
        first.margin
    )))
}
