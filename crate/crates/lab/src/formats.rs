//! Text formats for maps, policies and Q-table snapshots.
//!
//! Policy files hold one letter per cell (`U`, `D`, `L`, `R`), one map row per line:
//!
//! ```text
//! polreuse-policy
//! dims 21 24
//! actions U D L R
//! RRRRDD...
//! ```
//!
//! Q-table snapshots list one state per line in row-major order, four values in action
//! order Up, Down, Left, Right. Values are written in shortest round-trip form.

use std::fmt::Write as _;
use std::path::Path;

use polreuse_core::{Action, Error, GridMap, Policy, QTable, Result};

use crate::error::{read_text, write_text, LabError, LabResult};

const POLICY_MAGIC: &str = "polreuse-policy";
const QTABLE_MAGIC: &str = "polreuse-qtable";
const POLICY_ACTIONS: &str = "actions U D L R";
const QTABLE_ACTIONS: &str = "actions Up Down Left Right";

/// A policy together with the map dimensions it was written for.
#[derive(Clone, Debug, PartialEq)]
pub struct PolicyFile {
    pub width: usize,
    pub height: usize,
    pub policy: Policy,
}

/// A Q-table together with the map dimensions it was written for.
#[derive(Clone, Debug, PartialEq)]
pub struct QTableFile {
    pub width: usize,
    pub height: usize,
    pub table: QTable,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((i, l)) => {
                self.last = i + 1;
                Ok((i + 1, l.trim_end_matches('\r')))
            }
            None => Err(err(self.last + 1, 1, format!("unexpected end of file, expected {what}"))),
        }
    }

    fn expect(&mut self, exact: &str) -> Result<()> {
        let (n, l) = self.next_line(exact)?;
        if l.trim_end() != exact {
            return Err(err(n, 1, format!("expected `{exact}`")));
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<()> {
        for (i, l) in self.inner.by_ref() {
            if !l.trim().is_empty() {
                return Err(err(i + 1, 1, "trailing content"));
            }
        }
        Ok(())
    }
}

fn parse_dims(lines: &mut Lines<'_>) -> Result<(usize, usize)> {
    let (n, l) = lines.next_line("dims")?;
    let mut it = l.split_whitespace();
    if it.next() != Some("dims") {
        return Err(err(n, 1, "expected `dims <width> <height>`"));
    }
    let mut num = |name: &str| -> Result<usize> {
        it.next()
            .and_then(|t| t.parse().ok())
            .filter(|&v: &usize| v > 0)
            .ok_or_else(|| err(n, 1, format!("missing or invalid {name}")))
    };
    let dims = (num("width")?, num("height")?);
    if it.next().is_some() {
        return Err(err(n, 1, "extra fields after dims"));
    }
    Ok(dims)
}

pub fn policy_to_string(width: usize, height: usize, policy: &Policy) -> String {
    assert_eq!(policy.states(), width * height, "policy does not match dims");
    let mut out = format!("{POLICY_MAGIC}\ndims {width} {height}\n{POLICY_ACTIONS}\n");
    for row in policy.actions().chunks(width) {
        out.extend(row.iter().map(|a| a.short()));
        out.push('\n');
    }
    out
}

pub fn parse_policy(text: &str) -> Result<PolicyFile> {
    let mut lines = Lines::new(text);
    lines.expect(POLICY_MAGIC)?;
    let (width, height) = parse_dims(&mut lines)?;
    lines.expect(POLICY_ACTIONS)?;
    let mut actions = Vec::with_capacity(width * height);
    for _ in 0..height {
        let (n, l) = lines.next_line("a policy row")?;
        let l = l.trim_end();
        let mut count = 0;
        for (col, c) in l.chars().enumerate() {
            let a = Action::from_short(c)
                .ok_or_else(|| err(n, col + 1, format!("unknown action `{c}`")))?;
            actions.push(a);
            count += 1;
        }
        if count != width {
            return Err(err(n, 1, format!("row has {count} cells, expected {width}")));
        }
    }
    lines.finish()?;
    Ok(PolicyFile {
        width,
        height,
        policy: Policy::new(actions),
    })
}

pub fn qtable_to_string(width: usize, height: usize, table: &QTable) -> String {
    assert_eq!(table.states(), width * height, "table does not match dims");
    let mut out = format!("{QTABLE_MAGIC}\ndims {width} {height}\n{QTABLE_ACTIONS}\n");
    for r in table.rows() {
        let _ = writeln!(out, "{} {} {} {}", r[0], r[1], r[2], r[3]);
    }
    out
}

pub fn parse_qtable(text: &str) -> Result<QTableFile> {
    let mut lines = Lines::new(text);
    lines.expect(QTABLE_MAGIC)?;
    let (width, height) = parse_dims(&mut lines)?;
    lines.expect(QTABLE_ACTIONS)?;
    let mut rows = Vec::with_capacity(width * height);
    for _ in 0..width * height {
        let (n, l) = lines.next_line("a Q-table row")?;
        let mut row = [0.0; 4];
        let mut fields = l.split_whitespace();
        for (i, slot) in row.iter_mut().enumerate() {
            let tok = fields
                .next()
                .ok_or_else(|| err(n, 1, format!("expected 4 values, found {i}")))?;
            *slot = tok
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(n, 1, format!("invalid value `{tok}`")))?;
        }
        if fields.next().is_some() {
            return Err(err(n, 1, "more than 4 values"));
        }
        rows.push(row);
    }
    lines.finish()?;
    Ok(QTableFile {
        width,
        height,
        table: QTable::from_rows(rows),
    })
}

pub fn load_map(path: &Path) -> LabResult<GridMap> {
    let text = read_text(path)?;
    GridMap::parse(&text).map_err(|e| LabError::in_file(path, e))
}

pub fn load_policy(path: &Path) -> LabResult<PolicyFile> {
    let text = read_text(path)?;
    parse_policy(&text).map_err(|e| LabError::in_file(path, e))
}

pub fn save_policy(path: &Path, width: usize, height: usize, policy: &Policy) -> LabResult<()> {
    write_text(path, &policy_to_string(width, height, policy))
}

pub fn load_qtable(path: &Path) -> LabResult<QTableFile> {
    let text = read_text(path)?;
    parse_qtable(&text).map_err(|e| LabError::in_file(path, e))
}

pub fn save_qtable(path: &Path, width: usize, height: usize, table: &QTable) -> LabResult<()> {
    write_text(path, &qtable_to_string(width, height, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy_text_layout() {
        let p = Policy::new(vec![Action::Up, Action::Down, Action::Left, Action::Right, Action::Up, Action::Up]);
        let text = policy_to_string(3, 2, &p);
        assert_eq!(text, "polreuse-policy\ndims 3 2\nactions U D L R\nUDL\nRUU\n");
        assert_eq!(parse_policy(&text).unwrap().policy, p);
    }

    #[test]
    fn policy_errors_carry_positions() {
        let bad = "polreuse-policy\ndims 3 2\nactions U D L R\nUDL\nRXU\n";
        match parse_policy(bad) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (5, 2)),
            other => panic!("{other:?}"),
        }
        let short = "polreuse-policy\ndims 3 2\nactions U D L R\nUDL\n";
        assert!(matches!(parse_policy(short), Err(Error::Parse { line: 5, .. })));
        let ragged = "polreuse-policy\ndims 3 2\nactions U D L R\nUDL\nRU\n";
        assert!(matches!(parse_policy(ragged), Err(Error::Parse { line: 5, .. })));
        assert!(parse_policy("polreuse-qtable\n").is_err());
    }

    #[test]
    fn qtable_rejects_non_finite() {
        let text = "polreuse-qtable\ndims 1 1\nactions Up Down Left Right\n0 NaN 0 0\n";
        assert!(matches!(parse_qtable(text), Err(Error::Parse { line: 4, .. })));
    }
}
