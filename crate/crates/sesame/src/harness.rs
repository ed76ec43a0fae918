//! Replays recorded merge scenarios through several engines and compares
//! the results with each other and with the integration that was committed.
//!
//! A scenario directory holds `base/`, `left/`, `right/` and `merge/`
//! subdirectories that mirror the project's file layout. A file missing from
//! one of them does not exist in that version. Hidden files are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sesame_core::{merge_source, EngineMode, MergeOptions};
use thiserror::Error;
use walkdir::WalkDir;

pub const VERSIONS: [&str; 4] = ["base", "left", "right", "merge"];

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("malformed scenario {dir}: missing `{missing}/` subdirectory")]
    Malformed { dir: PathBuf, missing: &'static str },
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("cannot walk {path}: {source}")]
    Walk { path: PathBuf, source: walkdir::Error },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileVersions {
    /// Relative path with `/` separators.
    pub path: String,
    pub base: Option<Vec<u8>>,
    pub left: Option<Vec<u8>>,
    pub right: Option<Vec<u8>>,
    /// The integration recorded in the repository.
    pub merge: Option<Vec<u8>>,
}

impl FileVersions {
    pub fn changed_on_both_sides(&self) -> bool {
        self.left != self.base && self.right != self.base
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeScenario {
    pub id: String,
    pub files: Vec<FileVersions>,
}

fn is_hidden(name: &std::ffi::OsStr) -> bool {
    name.to_string_lossy().starts_with('.')
}

fn read_tree(dir: &Path) -> Result<BTreeMap<String, Vec<u8>>, HarnessError> {
    let mut files = BTreeMap::new();
    let walker = WalkDir::new(dir)
        .sort_by_file_name()
        .into_iter()
        .filter_entry(|e| e.depth() == 0 || !is_hidden(e.file_name()));
    for entry in walker {
        let entry = entry.map_err(|source| HarnessError::Walk {
            path: dir.into(),
            source,
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let rel = entry.path().strip_prefix(dir).expect("walk stays below its root");
        let key = rel
            .components()
            .map(|c| c.as_os_str().to_string_lossy())
            .collect::<Vec<_>>()
            .join("/");
        let data = fs::read(entry.path()).map_err(|source| HarnessError::Io {
            path: entry.path().into(),
            source,
        })?;
        files.insert(key, data);
    }
    Ok(files)
}

pub fn load_scenario(dir: &Path) -> Result<MergeScenario, HarnessError> {
    let mut trees = Vec::with_capacity(4);
    for version in VERSIONS {
        let sub = dir.join(version);
        if !sub.is_dir() {
            return Err(HarnessError::Malformed {
                dir: dir.into(),
                missing: version,
            });
        }
        trees.push(read_tree(&sub)?);
    }
    let paths: BTreeSet<&String> = trees.iter().flat_map(BTreeMap::keys).collect();
    let files = paths
        .into_iter()
        .map(|p| FileVersions {
            path: p.clone(),
            base: trees[0].get(p).cloned(),
            left: trees[1].get(p).cloned(),
            right: trees[2].get(p).cloned(),
            merge: trees[3].get(p).cloned(),
        })
        .collect();
    let id = dir
        .file_name()
        .map_or_else(|| dir.display().to_string(), |n| n.to_string_lossy().into_owned());
    Ok(MergeScenario { id, files })
}

/// Loads every scenario directory directly below `root`, sorted by name.
pub fn load_scenarios(root: &Path) -> Result<Vec<MergeScenario>, HarnessError> {
    let io_err = |source| HarnessError::Io {
        path: root.into(),
        source,
    };
    let mut dirs = Vec::new();
    for entry in fs::read_dir(root).map_err(io_err)? {
        let entry = entry.map_err(io_err)?;
        if entry.file_type().map_err(io_err)?.is_dir() && !is_hidden(&entry.file_name()) {
            dirs.push(entry.path());
        }
    }
    dirs.sort();
    dirs.iter().map(|d| load_scenario(d)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToolResult {
    pub tool: EngineMode,
    pub path: String,
    pub output: Vec<u8>,
    pub conflicts: usize,
    /// Set when the engine fell back to unstructured merge.
    pub fallback: bool,
    pub error: Option<String>,
}

impl ToolResult {
    pub fn conflicting(&self) -> bool {
        self.conflicts >= 1
    }
}

/// Merges one file with `tool`. Files that need no merge are adopted as is.
pub fn run_tool(file: &FileVersions, tool: EngineMode) -> ToolResult {
    let mut result = ToolResult {
        tool,
        path: file.path.clone(),
        output: Vec::new(),
        conflicts: 0,
        fallback: false,
        error: None,
    };
    let adopted = match (&file.base, &file.left, &file.right) {
        (None, Some(only), None) | (None, None, Some(only)) => Some(only),
        (_, l, r) if l == r => l.as_ref(),
        _ => None,
    };
    if let Some(text) = adopted {
        result.output = text.clone();
        return result;
    }
    fn side(v: &Option<Vec<u8>>) -> &[u8] {
        v.as_deref().unwrap_or_default()
    }
    match merge_source(side(&file.base), side(&file.left), side(&file.right), &MergeOptions::with_mode(tool)) {
        Ok(merged) => {
            result.output = merged.text;
            result.conflicts = merged.conflicts;
            result.fallback = merged.fallback.is_some();
        }
        Err(e) => result.error = Some(e.to_string()),
    }
    result
}

/// Results for every file of `scenario`, file-major in tool order.
pub fn run_tools(scenario: &MergeScenario, tools: &[EngineMode]) -> Vec<ToolResult> {
    scenario
        .files
        .iter()
        .flat_map(|f| tools.iter().map(move |&t| run_tool(f, t)))
        .collect()
}

pub fn strip_whitespace(text: &[u8]) -> Vec<u8> {
    text.iter().copied().filter(|b| !b.is_ascii_whitespace()).collect()
}

pub fn tools_differ(a: &ToolResult, b: &ToolResult) -> bool {
    a.conflicts != b.conflicts || strip_whitespace(&a.output) != strip_whitespace(&b.output)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Agree,
    Differ,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    None,
    /// The tool reported a conflict the other tool resolved as the
    /// repository did.
    AddedFalsePositive(EngineMode),
    /// The tool resolved silently, unlike the repository, while the other
    /// tool reported a conflict.
    AddedFalseNegative(EngineMode),
    /// Needs manual analysis.
    Unclassified(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonRecord {
    pub scenario: String,
    pub path: String,
    pub tool_m: EngineMode,
    pub tool_n: EngineMode,
    pub verdict: Verdict,
    pub classification: Classification,
}

pub fn classify(m: &ToolResult, n: &ToolResult, merge: Option<&[u8]>) -> Classification {
    if !tools_differ(m, n) {
        return Classification::None;
    }
    if m.error.is_some() || n.error.is_some() {
        return Classification::Unclassified("engine error".into());
    }
    let Some(merge) = merge else {
        return Classification::Unclassified("no merge commit version".into());
    };
    let merge = strip_whitespace(merge);
    let matches = |r: &ToolResult| strip_whitespace(&r.output) == merge;
    match (m.conflicting(), n.conflicting()) {
        (true, false) if matches(n) => Classification::AddedFalsePositive(m.tool),
        (true, false) => Classification::AddedFalseNegative(n.tool),
        (false, true) if matches(m) => Classification::AddedFalsePositive(n.tool),
        (false, true) => Classification::AddedFalseNegative(m.tool),
        (true, true) => Classification::Unclassified("both tools report conflicts".into()),
        (false, false) => Classification::Unclassified("neither tool reports conflicts".into()),
    }
}

#[derive(Clone, Debug)]
pub struct FileRun {
    pub scenario: String,
    pub versions: FileVersions,
    pub results: Vec<ToolResult>,
}

impl FileRun {
    pub fn result(&self, tool: EngineMode) -> Option<&ToolResult> {
        self.results.iter().find(|r| r.tool == tool)
    }
}

#[derive(Clone, Debug, Default)]
pub struct HarnessRun {
    pub scenarios: usize,
    pub tools: Vec<EngineMode>,
    pub pairs: Vec<(EngineMode, EngineMode)>,
    pub files: Vec<FileRun>,
    pub records: Vec<ComparisonRecord>,
}

/// Runs `tools` over every scenario and compares each pair. Tools named only
/// in `pairs` are run as well.
pub fn run_harness(
    scenarios: &[MergeScenario],
    tools: &[EngineMode],
    pairs: &[(EngineMode, EngineMode)],
) -> HarnessRun {
    let mut all_tools = tools.to_vec();
    for &(m, n) in pairs {
        for t in [m, n] {
            if !all_tools.contains(&t) {
                all_tools.push(t);
            }
        }
    }
    let mut run = HarnessRun {
        scenarios: scenarios.len(),
        tools: all_tools,
        pairs: pairs.to_vec(),
        ..HarnessRun::default()
    };
    for s in scenarios {
        for f in &s.files {
            let results = run.tools.iter().map(|&t| run_tool(f, t)).collect();
            let file = FileRun {
                scenario: s.id.clone(),
                versions: f.clone(),
                results,
            };
            for &(m, n) in pairs {
                let (rm, rn) = (file.result(m).unwrap(), file.result(n).unwrap());
                run.records.push(ComparisonRecord {
                    scenario: s.id.clone(),
                    path: f.path.clone(),
                    tool_m: m,
                    tool_n: n,
                    verdict: if tools_differ(rm, rn) { Verdict::Differ } else { Verdict::Agree },
                    classification: classify(rm, rn, f.merge.as_deref()),
                });
            }
            run.files.push(file);
        }
    }
    run
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ToolTotals {
    pub tool: Option<EngineMode>,
    pub merge_conflicts: usize,
    pub conflicting_files: usize,
    pub fallbacks: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTotals {
    pub tool_m: EngineMode,
    pub tool_n: EngineMode,
    pub differ: usize,
    pub differ_changed_both: usize,
    pub afp_m: usize,
    pub afn_m: usize,
    pub afp_n: usize,
    pub afn_n: usize,
    pub unclassified: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MetricsReport {
    pub scenarios: usize,
    pub files_all: usize,
    pub files_changed_both: usize,
    pub tools: Vec<ToolTotals>,
    pub pairs: Vec<PairTotals>,
}

fn percent(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        part as f64 * 100.0 / whole as f64
    }
}

impl PairTotals {
    pub fn key(&self) -> String {
        format!("{}:{}", self.tool_m, self.tool_n)
    }
}

impl MetricsReport {
    pub fn differ_percent(&self, pair: &PairTotals) -> f64 {
        percent(pair.differ, self.files_all)
    }

    pub fn differ_percent_changed_both(&self, pair: &PairTotals) -> f64 {
        percent(pair.differ_changed_both, self.files_changed_both)
    }

    pub fn tool(&self, tool: EngineMode) -> Option<&ToolTotals> {
        self.tools.iter().find(|t| t.tool == Some(tool))
    }

    pub fn pair(&self, m: EngineMode, n: EngineMode) -> Option<&PairTotals> {
        self.pairs.iter().find(|p| p.tool_m == m && p.tool_n == n)
    }

    /// `key = value` records followed by a `#`-prefixed human-readable table.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scenarios = {}", self.scenarios);
        let _ = writeln!(s, "files.all = {}", self.files_all);
        let _ = writeln!(s, "files.changed_both = {}", self.files_changed_both);
        for t in &self.tools {
            let name = t.tool.map_or("?", EngineMode::name);
            let _ = writeln!(s, "tool.{name}.merge_conflicts = {}", t.merge_conflicts);
            let _ = writeln!(s, "tool.{name}.conflicting_files = {}", t.conflicting_files);
            let _ = writeln!(s, "tool.{name}.fallbacks = {}", t.fallbacks);
            let _ = writeln!(s, "tool.{name}.errors = {}", t.errors);
        }
        for p in &self.pairs {
            let k = p.key();
            let _ = writeln!(s, "pair.{k}.differ = {}", p.differ);
            let _ = writeln!(s, "pair.{k}.differ_percent = {:.2}", self.differ_percent(p));
            let _ = writeln!(s, "pair.{k}.differ_changed_both = {}", p.differ_changed_both);
            let _ = writeln!(s, "pair.{k}.differ_percent_changed_both = {:.2}", self.differ_percent_changed_both(p));
            let _ = writeln!(s, "pair.{k}.afp.{} = {}", p.tool_m, p.afp_m);
            let _ = writeln!(s, "pair.{k}.afn.{} = {}", p.tool_m, p.afn_m);
            let _ = writeln!(s, "pair.{k}.afp.{} = {}", p.tool_n, p.afp_n);
            let _ = writeln!(s, "pair.{k}.afn.{} = {}", p.tool_n, p.afn_n);
            let _ = writeln!(s, "pair.{k}.unclassified = {}", p.unclassified);
        }

        let _ = writeln!(s, "#");
        let _ = writeln!(s, "# {:<16} {:>10} {:>18}", "tool", "conflicts", "conflicting files");
        for t in &self.tools {
            let name = t.tool.map_or("?", EngineMode::name);
            let _ = writeln!(s, "# {:<16} {:>10} {:>18}", name, t.merge_conflicts, t.conflicting_files);
        }
        let _ = writeln!(s, "#");
        let _ = writeln!(
            s,
            "# {:<30} {:>6} {:>7} {:>6} {:>6} {:>6} {:>6} {:>12}",
            "pair (M:N)", "differ", "%", "aFP M", "aFN M", "aFP N", "aFN N", "unclassified"
        );
        for p in &self.pairs {
            let _ = writeln!(
                s,
                "# {:<30} {:>6} {:>7.2} {:>6} {:>6} {:>6} {:>6} {:>12}",
                p.key(),
                p.differ,
                self.differ_percent(p),
                p.afp_m,
                p.afn_m,
                p.afp_n,
                p.afn_n,
                p.unclassified
            );
        }
        s
    }
}

/// Reads the `key = value` records of a serialized report.
pub fn parse_report(text: &str) -> BTreeMap<String, String> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.into(), v.into()))
        .collect()
}

pub fn report(run: &HarnessRun) -> MetricsReport {
    let mut r = MetricsReport {
        scenarios: run.scenarios,
        files_all: run.files.len(),
        files_changed_both: run.files.iter().filter(|f| f.versions.changed_on_both_sides()).count(),
        ..MetricsReport::default()
    };
    for &tool in &run.tools {
        let mut t = ToolTotals {
            tool: Some(tool),
            ..ToolTotals::default()
        };
        for res in run.files.iter().filter_map(|f| f.result(tool)) {
            t.merge_conflicts += res.conflicts;
            t.conflicting_files += usize::from(res.conflicting());
            t.fallbacks += usize::from(res.fallback);
            t.errors += usize::from(res.error.is_some());
        }
        r.tools.push(t);
    }
    for (j, &(m, n)) in run.pairs.iter().enumerate() {
        let mut p = PairTotals {
            tool_m: m,
            tool_n: n,
            differ: 0,
            differ_changed_both: 0,
            afp_m: 0,
            afn_m: 0,
            afp_n: 0,
            afn_n: 0,
            unclassified: 0,
        };
        // records are stored file-major, one per pair
        for (file, recs) in run.files.iter().zip(run.records.chunks(run.pairs.len())) {
            let rec = &recs[j];
            if rec.verdict == Verdict::Differ {
                p.differ += 1;
                p.differ_changed_both += usize::from(file.versions.changed_on_both_sides());
            }
            match &rec.classification {
                Classification::AddedFalsePositive(t) if *t == m => p.afp_m += 1,
                Classification::AddedFalsePositive(_) => p.afp_n += 1,
                Classification::AddedFalseNegative(t) if *t == m => p.afn_m += 1,
                Classification::AddedFalseNegative(_) => p.afn_n += 1,
                Classification::Unclassified(_) => p.unclassified += 1,
                Classification::None => {}
            }
        }
        r.pairs.push(p);
    }
    r
}

fn queue_name(path: &str) -> String {
    path.replace('/', "__")
}

/// Writes every unclassified or added-false-negative record, with the outputs
/// of both tools and the committed merge side by side, below `dir`.
/// Returns the number of exported records.
pub fn export_queue(run: &HarnessRun, dir: &Path) -> io::Result<usize> {
    let mut count = 0;
    for rec in &run.records {
        let reason = match &rec.classification {
            Classification::Unclassified(why) => format!("unclassified: {why}"),
            Classification::AddedFalseNegative(t) => format!("added false negative for {t}"),
            _ => continue,
        };
        let file = run
            .files
            .iter()
            .find(|f| f.scenario == rec.scenario && f.versions.path == rec.path)
            .expect("record refers to a run file");
        let target = dir
            .join(&rec.scenario)
            .join(queue_name(&rec.path))
            .join(format!("{}-vs-{}", rec.tool_m, rec.tool_n));
        fs::create_dir_all(&target)?;
        let mut summary = format!("scenario = {}\npath = {}\nreason = {reason}\n", rec.scenario, rec.path);
        for tool in [rec.tool_m, rec.tool_n] {
            let res = file.result(tool).expect("paired tools were run");
            fs::write(target.join(tool.name()), &res.output)?;
            let _ = writeln!(summary, "{tool}.conflicts = {}", res.conflicts);
        }
        if let Some(m) = &file.versions.merge {
            fs::write(target.join("merge"), m)?;
        }
        fs::write(target.join("record.txt"), summary)?;
        count += 1;
    }
    Ok(count)
}
