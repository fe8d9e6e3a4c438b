//! The `sod` command line as a library: [`run_command`] maps an argument
//! vector to a [`CommandResult`] without touching stdout, so it can be tested
//! directly.

mod args;
mod commands;
mod random;
mod table;
pub mod verify;

use clap::error::ErrorKind;
use clap::Parser;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use args::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    VerificationFailed,
    UsageError,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 1,
            Status::UsageError => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub human_text: String,
    #[serde(skip)]
    pub format: Option<Format>,
}

impl CommandResult {
    pub fn ok(payload: Value, human_text: String) -> Self {
        CommandResult { status: Status::Ok, payload, human_text, format: None }
    }

    pub fn failed(payload: Value, human_text: String) -> Self {
        CommandResult { status: Status::VerificationFailed, payload, human_text, format: None }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        let message = message.into();
        CommandResult {
            status: Status::UsageError,
            payload: serde_json::json!({ "error": message }),
            human_text: message,
            format: None,
        }
    }

    pub fn exit_code(&self) -> u8 {
        self.status.exit_code()
    }

    /// What the binary prints: the payload for `--format json`, the human text
    /// otherwise.
    pub fn rendered(&self) -> String {
        match self.format {
            Some(Format::Json) => {
                let mut s = serde_json::to_string_pretty(&self.payload).expect("payload serializes");
                s.push('\n');
                s
            }
            _ => {
                let mut s = self.human_text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }
}

/// `argv[0]` is the program name, as in `std::env::args`.
pub fn run_command<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CommandResult { format: Some(Format::Table), ..CommandResult::ok(Value::Null, text) }
                }
                _ => CommandResult { format: Some(Format::Table), ..CommandResult::usage(text) },
            };
        }
    };
    let mut result = commands::dispatch(cli.command);
    result.format = Some(cli.format);
    result
}
