//! Library side of the `dpquot` command: configuration, dispatch and rendering.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub mod commands;
pub mod config;
pub mod report;

pub use config::{Command, Format, RunConfig};
pub use report::Report;

/// Bad flags, bad config, unknown ids or unparsable generator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug)]
pub enum RunError {
    Usage(UsageError),
    Failed(anyhow::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => EXIT_USAGE,
            RunError::Failed(_) => EXIT_MISMATCH,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Usage(e) => write!(f, "{e}"),
            RunError::Failed(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<UsageError> for RunError {
    fn from(e: UsageError) -> Self {
        RunError::Usage(e)
    }
}

/// Errors from the library caused by the input rather than by a failed check.
pub(crate) fn classify(e: dpquot::Error) -> RunError {
    use dpquot::Error::*;
    match e {
        UnknownName(_) | NotInGroup(_) | DegreeOutOfRange(_) | Parse(_) | UnknownLabel(_)
        | ClosureTooLarge(_) => RunError::Usage(UsageError(e.to_string())),
        other => RunError::Failed(other.into()),
    }
}

/// Runs `f` on every id with `jobs` workers, returning results in input order.
pub fn run_parallel<T: Send>(ids: &[String], jobs: usize, f: impl Fn(&str) -> T + Sync) -> Vec<T> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..ids.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, ids.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= ids.len() {
                    break;
                }
                let out = f(&ids[i]);
                slots.lock().unwrap()[i] = Some(out);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|x| x.expect("every task ran"))
        .collect()
}

/// Validates and dispatches one configuration.
pub fn run(cfg: &RunConfig) -> Result<Report, RunError> {
    cfg.validate()?;
    match cfg.command()? {
        Command::Lines => commands::lines(cfg),
        Command::WeylOrder => commands::weyl_order(cfg),
        Command::Orbits => commands::orbits(cfg),
        Command::Verdict => commands::verdict(cfg),
        Command::Replay => commands::replay(cfg),
        Command::Table1 => commands::table1(),
        Command::Hj => commands::hj(cfg),
        Command::VerifyExample => commands::verify_example(cfg),
        Command::S5Lemma => commands::s5_lemma(),
    }
}

/// Exit status for a finished run.
pub fn exit_code(result: &Result<Report, RunError>) -> i32 {
    match result {
        Ok(r) if r.ok => EXIT_OK,
        Ok(_) => EXIT_MISMATCH,
        Err(e) => e.exit_code(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_order_is_input_order() {
        let ids: Vec<String> = (0..20).map(|i| i.to_string()).collect();
        let out = run_parallel(&ids, 4, |s| s.parse::<u32>().unwrap() * 2);
        assert_eq!(out, (0..20).map(|i| i * 2).collect::<Vec<u32>>());
        assert!(run_parallel(&[], 3, |s: &str| s.len()).is_empty());
    }
}
