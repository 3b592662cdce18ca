// Copyright 2026 The qmean Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Reading raw input values from CSV or JSON files.

use std::fs;
use std::path::Path;

use clap::ValueEnum;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Csv,
    Json,
}

impl InputFormat {
    /// `.json` files are JSON, anything else is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => InputFormat::Json,
            _ => InputFormat::Csv,
        }
    }
}

pub fn load_dataset(path: &Path, format: Option<InputFormat>) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let values = match format.unwrap_or_else(|| InputFormat::from_path(path)) {
        InputFormat::Csv => parse_csv(&text)?,
        InputFormat::Json => parse_json(&text)?,
    };
    if values.is_empty() {
        return Err(CliError::Input(format!(
            "{} contains no values",
            path.display()
        )));
    }
    Ok(values)
}

/// One value per line, comma-separated values on a line, or both. Blank
/// lines and lines starting with `#` are skipped.
pub fn parse_csv(text: &str) -> Result<Vec<f64>, CliError> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        for (field, raw) in trimmed.split(',').enumerate() {
            let raw = raw.trim();
            let v: f64 = raw.parse().map_err(|_| {
                CliError::Input(format!(
                    "line {}, field {}: {raw:?} is not a number",
                    lineno + 1,
                    field + 1
                ))
            })?;
            values.push(v);
        }
    }
    Ok(values)
}

/// A flat JSON array of numbers.
pub fn parse_json(text: &str) -> Result<Vec<f64>, CliError> {
    serde_json::from_str::<Vec<f64>>(text)
        .map_err(|e| CliError::Input(format!("invalid JSON input: {e}")))
}
