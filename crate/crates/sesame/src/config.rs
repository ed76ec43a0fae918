//! Key-value configuration files for the merge driver.
//!
//! ```text
//! # comments and blank lines are ignored
//! mode = sesame
//! separators = {,},(,),;
//! labels = ours,base,theirs
//! diff3-style = false
//! fallback = true
//! ```
//!
//! Command-line flags override values read from the file.

use std::fs;
use std::path::{Path, PathBuf};

use sesame_core::separator::SeparatorError;
use sesame_core::{Labels, MergeOptions, SeparatorSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: {message}")]
    Value { line: usize, message: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValueError {
    #[error("{0}")]
    Mode(#[from] sesame_core::engine::UnknownMode),
    #[error("invalid separators: {0}")]
    Separators(#[from] SeparatorError),
    #[error("labels must be three comma-separated names")]
    Labels,
    #[error("expected true or false, got `{0}`")]
    Bool(String),
}

pub fn parse_labels(s: &str) -> Result<Labels, ValueError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [l, b, r] => Ok(Labels {
            left: (*l).into(),
            base: (*b).into(),
            right: (*r).into(),
        }),
        _ => Err(ValueError::Labels),
    }
}

pub fn parse_bool(s: &str) -> Result<bool, ValueError> {
    match s {
        "true" | "yes" | "on" => Ok(true),
        "false" | "no" | "off" => Ok(false),
        _ => Err(ValueError::Bool(s.into())),
    }
}

/// Applies one setting to `options`.
pub fn apply_setting(options: &mut MergeOptions, key: &str, value: &str) -> Result<bool, ValueError> {
    match key {
        "mode" => options.mode = value.parse()?,
        "separators" => options.separators = SeparatorSet::parse_list(value)?,
        "labels" => options.labels = parse_labels(value)?,
        "diff3-style" => options.render.base_section = parse_bool(value)?,
        "fallback" => options.fallback_on_parse_error = parse_bool(value)?,
        _ => return Ok(false),
    }
    Ok(true)
}

pub fn parse_config(text: &str, options: &mut MergeOptions) -> Result<(), ConfigError> {
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let entry = raw.trim();
        if entry.is_empty() || entry.starts_with('#') {
            continue;
        }
        let (key, value) = entry.split_once('=').ok_or(ConfigError::Syntax { line })?;
        let key = key.trim();
        match apply_setting(options, key, value.trim()) {
            Ok(true) => {}
            Ok(false) => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.into(),
                })
            }
            Err(e) => {
                return Err(ConfigError::Value {
                    line,
                    message: e.to_string(),
                })
            }
        }
    }
    Ok(())
}

pub fn load_config(path: &Path, options: &mut MergeOptions) -> Result<(), ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.into(),
        source,
    })?;
    parse_config(&text, options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sesame_core::EngineMode;

    #[test]
    fn reads_every_key() {
        let mut o = MergeOptions::default();
        parse_config(
            "# driver\nmode = semistructured\nseparators = {,}\nlabels = a, b ,c\n\ndiff3-style = true\nfallback=off\n",
            &mut o,
        )
        .unwrap();
        assert_eq!(o.mode, EngineMode::Semistructured);
        assert_eq!(o.separators, SeparatorSet::parse_list("{,}").unwrap());
        assert_eq!((o.labels.left.as_str(), o.labels.base.as_str(), o.labels.right.as_str()), ("a", "b", "c"));
        assert!(o.render.base_section);
        assert!(!o.fallback_on_parse_error);
    }

    #[test]
    fn reports_line_numbers() {
        let mut o = MergeOptions::default();
        assert!(matches!(parse_config("\nmode\n", &mut o), Err(ConfigError::Syntax { line: 2 })));
        assert!(matches!(parse_config("colour = red", &mut o), Err(ConfigError::UnknownKey { line: 1, .. })));
        assert!(matches!(parse_config("mode = diff3", &mut o), Err(ConfigError::Value { line: 1, .. })));
        assert!(matches!(parse_config("labels = a,b", &mut o), Err(ConfigError::Value { .. })));
    }
}
