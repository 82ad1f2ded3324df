//! Task manifest: one map plus named goal cells.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use polreuse_core::GridMap;
use serde::Deserialize;

use crate::config::parse_toml;
use crate::error::{read_text, LabError, LabResult};
use crate::formats::load_map;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestFile {
    map: PathBuf,
    tasks: BTreeMap<String, TaskEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TaskEntry {
    goal: [usize; 2],
    #[serde(default)]
    note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Task {
    pub name: String,
    pub goal: (usize, usize),
    pub note: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Manifest {
    pub path: PathBuf,
    pub map_path: PathBuf,
    pub map: GridMap,
    tasks: BTreeMap<String, Task>,
}

impl Manifest {
    /// Loads the manifest and its map, checking that every goal can be placed.
    pub fn load(path: &Path) -> LabResult<Manifest> {
        let text = read_text(path)?;
        let file: ManifestFile = parse_toml(path, &text)?;
        let map_path = relative_to(path, &file.map);
        let map = load_map(&map_path)?;
        let mut tasks = BTreeMap::new();
        for (name, entry) in file.tasks {
            let goal = (entry.goal[0], entry.goal[1]);
            map.with_goal(&[goal]).map_err(|e| {
                LabError::Validation(format!("{}: task `{name}`: {e}", path.display()))
            })?;
            tasks.insert(
                name.clone(),
                Task {
                    name,
                    goal,
                    note: entry.note,
                },
            );
        }
        Ok(Manifest {
            path: path.to_path_buf(),
            map_path,
            map,
            tasks,
        })
    }

    pub fn task(&self, name: &str) -> LabResult<&Task> {
        self.tasks.get(name).ok_or_else(|| {
            LabError::Validation(format!(
                "{}: no task named `{name}`",
                self.path.display()
            ))
        })
    }

    pub fn tasks(&self) -> impl Iterator<Item = &Task> {
        self.tasks.values()
    }

    /// The shared map with the goal moved to the task's cell.
    pub fn task_map(&self, name: &str) -> LabResult<GridMap> {
        let task = self.task(name)?;
        Ok(self.map.with_goal(&[task.goal])?)
    }
}

/// Resolves `p` against the directory holding `file`.
pub(crate) fn relative_to(file: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        return p.to_path_buf();
    }
    match file.parent() {
        Some(dir) => dir.join(p),
        None => p.to_path_buf(),
    }
}
