//! Fixtures shared by unit tests.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::gridworld::{CellKind, GridMap, StateId};

/// 5×5 open interior, goal in the bottom-right corner.
pub const OPEN5: &str = "\
#######
#.....#
#.....#
#.....#
#.....#
#....G#
#######
";

/// 5×5 interior with an internal wall segment.
pub const WALLED5: &str = "\
#######
#.....#
#.###.#
#...#.#
#.#...#
#.#..G#
#######
";

pub fn deterministic(text: &str) -> GridMap {
    GridMap::parse(text).unwrap().with_noise(0.0)
}

/// Moves needed to reach a goal cell from each cell, by breadth-first search
/// over the raw cell grid. `None` for walls and unreachable cells.
pub fn bfs_moves(map: &GridMap) -> Vec<Option<usize>> {
    let (w, h) = (map.width(), map.height());
    let mut dist = vec![None; w * h];
    let mut queue = VecDeque::new();
    for i in 0..w * h {
        if map.kind(StateId(i)) == CellKind::Goal {
            dist[i] = Some(0);
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        let (x, y) = ((i % w) as isize, (i / w) as isize);
        let d = dist[i].unwrap();
        for (dx, dy) in [(0, -1), (0, 1), (-1, 0), (1, 0)] {
            let (nx, ny) = (x + dx, y + dy);
            if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                continue;
            }
            let j = ny as usize * w + nx as usize;
            if dist[j].is_none() && map.kind(StateId(j)) == CellKind::Free {
                dist[j] = Some(d + 1);
                queue.push_back(j);
            }
        }
    }
    dist
}
