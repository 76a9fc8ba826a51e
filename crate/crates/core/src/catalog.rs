//! Catalog files and line-oriented input.
//!
//! A catalog holds one level. After two `#` header lines (tool version, then
//! level metadata) every line is
//!
//! ```text
//! <hex key> <hex flow key> <S|A> GP1 ... # parent=<hex key> site=<face>,<dart_a>,<dart_b>
//! ```
//!
//! Classes without a parent (the two-point seed, or classes found by the
//! oracle) write `parent=- site=-`.

use std::fmt::Write as _;

use crate::arrangement::{ArrangementError, GaussPairCode};
use crate::generator::{Level, LevelClass};

pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn catalog_file_name(n_points: usize) -> String {
    format!("catalog-{n_points:02}.txt")
}

pub fn class_line(class: &LevelClass) -> String {
    let provenance = match &class.provenance {
        Some(p) => format!("parent={} site={}", p.parent, p.site),
        None => "parent=- site=-".to_string(),
    };
    format!(
        "{} {} {} {} # {provenance}",
        class.key,
        class.flow_key,
        class.symmetry.letter(),
        class.representative
    )
}

pub fn write_catalog(level: &Level) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {TOOL_NAME} {TOOL_VERSION}");
    let _ = writeln!(
        out,
        "# catalog points={} classes={} allow_swap={} allow_reflection={}",
        level.n_points,
        level.classes.len(),
        level.mode.allow_swap,
        level.mode.allow_reflection
    );
    for class in &level.classes {
        out.push_str(&class_line(class));
        out.push('\n');
    }
    out
}

/// One input line holding a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputLine {
    /// 1-based.
    pub line_number: usize,
    pub code: Result<GaussPairCode, ArrangementError>,
}

/// Extracts the code from every non-comment line. Accepts bare `GP1` lines
/// and catalog lines.
pub fn parse_lines(text: &str) -> Vec<InputLine> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                return None;
            }
            let code = match line.find("GP1") {
                None => Err(ArrangementError::MalformedCode("no GP1 field".into())),
                Some(start) => {
                    let rest = &line[start..];
                    let end = rest.find('#').unwrap_or(rest.len());
                    rest[..end].trim().parse()
                }
            };
            Some(InputLine {
                line_number: i + 1,
                code,
            })
        })
        .collect()
}
