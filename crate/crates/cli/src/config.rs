//! Run configuration, shared by the command line and `--config` files.

use serde::{Deserialize, Serialize};

use crate::UsageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Lines,
    WeylOrder,
    Orbits,
    Verdict,
    Replay,
    Table1,
    Hj,
    VerifyExample,
    S5Lemma,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Lines => "lines",
            Command::WeylOrder => "weyl-order",
            Command::Orbits => "orbits",
            Command::Verdict => "verdict",
            Command::Replay => "replay",
            Command::Table1 => "table1",
            Command::Hj => "hj",
            Command::VerifyExample => "verify-example",
            Command::S5Lemma => "s5-lemma",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    #[serde(default)]
    pub degree: Option<i64>,
    /// Generator words such as `i12` or `(12)(34)i15`.
    #[serde(default)]
    pub group_spec: Vec<String>,
    #[serde(default)]
    pub galois_spec: Vec<String>,
    #[serde(default)]
    pub has_point: bool,
    #[serde(default)]
    pub output_format: Format,
    /// Replay or example id for `replay` and `verify-example`.
    #[serde(default)]
    pub id: Option<String>,
    /// Run every id of the manifest.
    #[serde(default)]
    pub all: bool,
    /// `m q` for `hj`.
    #[serde(default)]
    pub hj: Option<(i64, i64)>,
    #[serde(default)]
    pub jobs: Option<usize>,
}

/// Splits a generator list on commas, semicolons and whitespace.
pub fn split_words(s: &str) -> Vec<String> {
    s.split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|w| !w.is_empty())
        .map(String::from)
        .collect()
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig, UsageError> {
        serde_json::from_str(text).map_err(|e| UsageError(format!("config: {e}")))
    }

    pub fn command(&self) -> Result<Command, UsageError> {
        self.command
            .ok_or_else(|| UsageError("no command given".into()))
    }

    pub fn degree(&self) -> Result<i64, UsageError> {
        let d = self.degree.ok_or_else(|| {
            UsageError(format!(
                "`{}` needs --degree",
                self.command.map_or("?", Command::name)
            ))
        })?;
        if !(4..=9).contains(&d) {
            return Err(UsageError(format!("degree {d} is outside 4..=9")));
        }
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        let cmd = self.command()?;
        match cmd {
            Command::Lines | Command::WeylOrder | Command::Orbits | Command::Verdict => {
                self.degree()?;
            }
            Command::Replay | Command::VerifyExample => match (&self.id, self.all) {
                (Some(_), true) => {
                    return Err(UsageError(format!(
                        "`{}` takes an id or --all, not both",
                        cmd.name()
                    )))
                }
                (None, false) => {
                    return Err(UsageError(format!("`{}` needs an id or --all", cmd.name())))
                }
                _ => {}
            },
            Command::Hj => {
                let (m, _) = self
                    .hj
                    .ok_or_else(|| UsageError("`hj` needs m and q".into()))?;
                if m < 1 {
                    return Err(UsageError(format!("m = {m} must be positive")));
                }
            }
            Command::Table1 | Command::S5Lemma => {}
        }
        if matches!(cmd, Command::Lines | Command::WeylOrder)
            && !(self.group_spec.is_empty() && self.galois_spec.is_empty())
        {
            return Err(UsageError(format!("`{}` takes no group", cmd.name())));
        }
        if self.jobs == Some(0) {
            return Err(UsageError("--jobs must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words() {
        assert_eq!(split_words("i12, i13"), ["i12", "i13"]);
        assert_eq!(split_words("(12)(34)i15"), ["(12)(34)i15"]);
        assert!(split_words("").is_empty());
    }

    #[test]
    fn json_round_trip() {
        let c = RunConfig::from_json(
            r#"{"command":"verdict","degree":4,"group_spec":["(12)(34)i15"],"has_point":true,"output_format":"json"}"#,
        )
        .unwrap();
        assert_eq!(c.command, Some(Command::Verdict));
        assert_eq!(c.output_format, Format::Json);
        assert!(c.validate().is_ok());
        assert!(RunConfig::from_json(r#"{"command":"verdict","colour":1}"#).is_err());
    }

    #[test]
    fn validation_messages() {
        let c = RunConfig {
            command: Some(Command::Lines),
            degree: Some(3),
            ..Default::default()
        };
        assert_eq!(c.validate().unwrap_err().0, "degree 3 is outside 4..=9");
        let c = RunConfig {
            command: Some(Command::Replay),
            ..Default::default()
        };
        assert!(c.validate().unwrap_err().0.contains("--all"));
    }
}
