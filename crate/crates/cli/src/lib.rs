//! Command pipelines behind the `chainext` binary. Every command returns an
//! [`Output`]: facts, tables and a pass/fail [`Report`], rendered as text or
//! JSON in a fixed order so identical inputs give byte-identical reports.

use std::fmt::Write as _;
use std::path::PathBuf;

use chainext_core::{Error, Report};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub mod commands;

pub const DEFAULT_TRUNC: usize = 4;
pub const DEFAULT_CAP: u32 = 6;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Flags shared by every command. `trunc` and `cap` fall back to the input
/// file, then to 4 and 6.
#[derive(Clone, Debug, Default, Args)]
pub struct RunConfig {
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// t-truncation order N.
    #[arg(long)]
    pub trunc: Option<usize>,
    /// Polynomial degree cap.
    #[arg(long)]
    pub cap: Option<u32>,
    /// Highest deformation order to attempt.
    #[arg(long)]
    pub order: Option<usize>,
    /// 1-based index of the H² representative to use as α₁.
    #[arg(long)]
    pub alpha1: Option<usize>,
    /// Rerun the construction through the generic extension engine.
    #[arg(long)]
    pub cross_check: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of random instances for `fuzz`.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// H², [α₁, α₁] and order-by-order deformation of a Lie algebra.
    Lie(RunConfig),
    /// The sh-Lie structure induced by a first-order deformation.
    Shlie(RunConfig),
    /// The BRST operator of a first-class constraint system.
    Brst(RunConfig),
    /// The chain extension of a consistent deformation of a master action.
    Bv(RunConfig),
    /// The generic construction on a resolution file.
    Extend(RunConfig),
    /// Seeded random instances of the generic construction.
    Fuzz(RunConfig),
}

#[derive(Debug, Parser)]
#[command(name = "chainext", version, about = "Exact chain extensions of D-algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

impl Command {
    pub fn config(&self) -> &RunConfig {
        match self {
            Command::Lie(c) | Command::Shlie(c) | Command::Brst(c) | Command::Bv(c) | Command::Extend(c) | Command::Fuzz(c) => c,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Lie(_) => "lie",
            Command::Shlie(_) => "shlie",
            Command::Brst(_) => "brst",
            Command::Bv(_) => "bv",
            Command::Extend(_) => "extend",
            Command::Fuzz(_) => "fuzz",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    pub rows: Vec<Fact>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Output {
    pub command: String,
    pub facts: Vec<Fact>,
    pub tables: Vec<Table>,
    pub report: Report,
}

impl Output {
    pub fn new(command: &str) -> Self {
        Output { command: command.into(), ..Default::default() }
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.facts.push(Fact { key: key.into(), value: value.to_string() });
    }

    pub fn table(&mut self, title: impl Into<String>, rows: Vec<(String, String)>) {
        let rows = rows.into_iter().map(|(key, value)| Fact { key, value }).collect();
        self.tables.push(Table { title: title.into(), rows });
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.facts.iter().find(|f| f.key == key).map(|f| f.value.as_str())
    }

    pub fn get_table(&self, title: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.title == title)
    }

    pub fn exit_code(&self) -> i32 {
        if self.report.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("plain data") + "\n",
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for f in &self.facts {
            let _ = writeln!(out, "{}: {}", f.key, f.value);
        }
        for t in &self.tables {
            let _ = writeln!(out, "\n[{}]", t.title);
            if t.rows.is_empty() {
                let _ = writeln!(out, "  (empty)");
            }
            for r in &t.rows {
                let _ = writeln!(out, "  {} = {}", r.key, r.value);
            }
        }
        let _ = writeln!(out, "\n[checks]");
        let _ = write!(out, "{}", self.report);
        let ok = self.report.checks.iter().filter(|c| c.passed).count();
        let verdict = if self.report.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "\nresult: {verdict} ({ok}/{} checks)", self.report.checks.len());
        out
    }
}

/// Runs a command; errors are input problems (exit code 2).
pub fn run(command: &Command) -> Result<Output, Error> {
    let cfg = command.config();
    match command {
        Command::Lie(_) => commands::cmd_lie(cfg),
        Command::Shlie(_) => commands::cmd_shlie(cfg),
        Command::Brst(_) => commands::cmd_brst(cfg),
        Command::Bv(_) => commands::cmd_bv(cfg),
        Command::Extend(_) => commands::cmd_extend(cfg),
        Command::Fuzz(_) => commands::cmd_fuzz(cfg),
    }
}
