use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sesame::config::{self, ValueError};
use sesame::driver::{self, DriverReport, MergeExit};
use sesame::harness;
use sesame_core::{EngineMode, Labels, MergeOptions, SeparatorSet};

#[derive(Parser)]
#[command(name = "sesame", version, about = "Three-way merge for Java sources")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Merge three versions of a file.
    Merge {
        base: PathBuf,
        left: PathBuf,
        right: PathBuf,
        /// Where to write the result.
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        options: OptionArgs,
    },
    /// Run as a git merge driver: `sesame git-driver %O %A %B`.
    GitDriver {
        ancestor: PathBuf,
        current: PathBuf,
        other: PathBuf,
        #[command(flatten)]
        options: OptionArgs,
    },
    /// Replay merge scenarios.
    Harness {
        #[command(subcommand)]
        command: HarnessCommand,
    },
}

#[derive(Args)]
struct OptionArgs {
    #[arg(long, value_parser = parse_mode)]
    mode: Option<EngineMode>,
    /// Comma-separated single characters, for example "{,},(,),;".
    #[arg(long, value_parser = parse_separators)]
    separators: Option<SeparatorSet>,
    /// Conflict marker labels as LEFT,BASE,RIGHT.
    #[arg(long, value_parser = parse_labels)]
    labels: Option<Labels>,
    /// Include the base version in conflict blocks.
    #[arg(long)]
    diff3_style: bool,
    /// Fail instead of falling back to unstructured merge on parse errors.
    #[arg(long)]
    no_fallback: bool,
    /// Key-value configuration file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum HarnessCommand {
    Run {
        scenarios: PathBuf,
        #[arg(long, value_delimiter = ',', value_parser = parse_mode,
              default_value = "unstructured,semistructured,sesame")]
        tools: Vec<EngineMode>,
        /// Comma-separated M:N tool pairs.
        #[arg(long, value_delimiter = ',', value_parser = parse_pair,
              default_value = "unstructured:sesame,semistructured:sesame")]
        pairs: Vec<(EngineMode, EngineMode)>,
        /// Report file; printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory receiving cases that need manual analysis.
        #[arg(long)]
        export_queue: Option<PathBuf>,
    },
}

fn parse_mode(s: &str) -> Result<EngineMode, String> {
    s.parse().map_err(|e: sesame_core::engine::UnknownMode| e.to_string())
}

fn parse_separators(s: &str) -> Result<SeparatorSet, String> {
    SeparatorSet::parse_list(s).map_err(|e| ValueError::from(e).to_string())
}

fn parse_labels(s: &str) -> Result<Labels, String> {
    config::parse_labels(s).map_err(|e| e.to_string())
}

fn parse_pair(s: &str) -> Result<(EngineMode, EngineMode), String> {
    let (m, n) = s.split_once(':').ok_or_else(|| format!("expected M:N, got `{s}`"))?;
    let pair = (parse_mode(m)?, parse_mode(n)?);
    if pair.0 == pair.1 {
        return Err(format!("pair `{s}` compares a tool with itself"));
    }
    Ok(pair)
}

impl OptionArgs {
    fn resolve(self) -> Result<MergeOptions, String> {
        let mut o = MergeOptions::default();
        if let Some(path) = &self.config {
            config::load_config(path, &mut o).map_err(|e| e.to_string())?;
        }
        if let Some(m) = self.mode {
            o.mode = m;
        }
        if let Some(s) = self.separators {
            o.separators = s;
        }
        if let Some(l) = self.labels {
            o.labels = l;
        }
        if self.diff3_style {
            o.render.base_section = true;
        }
        if self.no_fallback {
            o.fallback_on_parse_error = false;
        }
        Ok(o)
    }
}

fn finish(report: DriverReport) -> ExitCode {
    for w in &report.warnings {
        eprintln!("sesame: warning: {w}");
    }
    if let Some(e) = &report.error {
        eprintln!("sesame: error: {e}");
    }
    report.exit.into()
}

fn with_options(options: OptionArgs, run: impl FnOnce(&MergeOptions) -> DriverReport) -> ExitCode {
    match options.resolve() {
        Ok(o) => finish(run(&o)),
        Err(e) => {
            eprintln!("sesame: error: {e}");
            MergeExit::Failed.into()
        }
    }
}

fn run_harness(
    scenarios: &Path,
    tools: &[EngineMode],
    pairs: &[(EngineMode, EngineMode)],
    out: Option<&Path>,
    queue: Option<&Path>,
) -> Result<(), String> {
    let loaded = harness::load_scenarios(scenarios).map_err(|e| e.to_string())?;
    let run = harness::run_harness(&loaded, tools, pairs);
    for f in &run.files {
        for r in &f.results {
            if let Some(e) = &r.error {
                eprintln!("sesame: warning: {}/{} ({}): {e}", f.scenario, r.path, r.tool);
            }
        }
    }
    let text = harness::report(&run).to_text();
    match out {
        Some(p) => std::fs::write(p, &text).map_err(|e| format!("cannot write {}: {e}", p.display()))?,
        None => print!("{text}"),
    }
    if let Some(dir) = queue {
        let n = harness::export_queue(&run, dir).map_err(|e| format!("cannot export to {}: {e}", dir.display()))?;
        eprintln!("sesame: exported {n} case(s) for manual analysis to {}", dir.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Merge {
            base,
            left,
            right,
            output,
            options,
        } => with_options(options, |o| driver::merge_files(&base, &left, &right, &output, o)),
        Command::GitDriver {
            ancestor,
            current,
            other,
            options,
        } => with_options(options, |o| driver::git_driver_entry(&ancestor, &current, &other, o)),
        Command::Harness {
            command:
                HarnessCommand::Run {
                    scenarios,
                    tools,
                    pairs,
                    out,
                    export_queue,
                },
        } => match run_harness(&scenarios, &tools, &pairs, out.as_deref(), export_queue.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("sesame: error: {e}");
                MergeExit::Failed.into()
            }
        },
    }
}
