//! The spanning tree of one angular sector of the heptagrid.
//!
//! Each of the seven sectors around the central heptagon is spanned by the
//! same infinite tree, built from two kinds of nodes: black nodes have two
//! sons (a black one, then a white one) and white nodes have three (black,
//! white, white). The root is white. Nodes are numbered breadth-first,
//! level by level and left to right, with the root at 1; index 0 is
//! reserved for the central heptagon, which acts as the root's father.
//!
//! Level sizes follow the odd-index Fibonacci pattern 1, 3, 8, 21, 55, ...
//! so the tables are generated level by level on demand and memoized,
//! which makes every query exact and O(1) after the covering level exists.

use std::sync::RwLock;

use thiserror::Error;

/// Kind of a tree node: black nodes have two sons, white nodes three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Black,
    White,
}

/// Everything the navigation layer needs to know about one tree node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeRecord {
    /// Tree index, root = 1.
    pub nu: u64,
    pub status: Status,
    /// Index of the father; 0 denotes the central heptagon (root only).
    pub father: u64,
    /// The distinguished same-status son: a black node's black son,
    /// a white node's middle son.
    pub preferred_son: u64,
    /// Depth in the tree, root = 1.
    pub level: u32,
    /// First index of its level.
    pub on_leftmost: bool,
    /// Last index of its level.
    pub on_rightmost: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("node index 0 is the central-cell sentinel, not a tree node")]
    IndexZero,
    #[error("level numbering starts at 1")]
    LevelZero,
}

/// One fully built level of the tree.
struct LevelData {
    /// Index of the first node on this level.
    start: u64,
    statuses: Vec<Status>,
    fathers: Vec<u64>,
    /// Preferred sons; filled when the next level is built.
    sigmas: Vec<u64>,
}

impl LevelData {
    fn len(&self) -> u64 {
        self.statuses.len() as u64
    }

    fn end(&self) -> u64 {
        self.start + self.len() - 1
    }
}

/// Memoized level-by-level realization of the sector tree.
///
/// Tables grow on demand to cover the largest index queried. Growth is
/// serialized behind a write lock, so concurrent readers never observe a
/// partially built level; reads take a shared lock only.
pub struct SectorTree {
    levels: RwLock<Vec<LevelData>>,
}

impl Default for SectorTree {
    fn default() -> Self {
        Self::new()
    }
}

impl SectorTree {
    pub fn new() -> Self {
        let root_level = LevelData {
            start: 1,
            statuses: vec![Status::White],
            fathers: vec![0],
            sigmas: Vec::new(),
        };
        SectorTree {
            levels: RwLock::new(vec![root_level]),
        }
    }

    /// Pre-sizes the tables for callers that know how deep they will go.
    pub fn with_level_capacity(levels: u32) -> Self {
        let tree = Self::new();
        tree.ensure_levels(levels.max(1));
        tree
    }

    /// The unique record consistent with breadth-first numbering.
    pub fn node_record(&self, nu: u64) -> Result<NodeRecord, TreeError> {
        if nu == 0 {
            return Err(TreeError::IndexZero);
        }
        self.ensure_node(nu);
        let levels = self.levels.read().unwrap();
        let li = locate_level(&levels, nu);
        let level = &levels[li];
        let idx = (nu - level.start) as usize;
        Ok(NodeRecord {
            nu,
            status: level.statuses[idx],
            father: level.fathers[idx],
            preferred_son: level.sigmas[idx],
            level: (li + 1) as u32,
            on_leftmost: nu == level.start,
            on_rightmost: nu == level.end(),
        })
    }

    /// Number of nodes on level `level` (root level = 1).
    pub fn level_count(&self, level: u32) -> Result<u64, TreeError> {
        if level == 0 {
            return Err(TreeError::LevelZero);
        }
        self.ensure_levels(level);
        let levels = self.levels.read().unwrap();
        Ok(levels[(level - 1) as usize].len())
    }

    /// Index of the first node on `level`.
    pub fn level_start(&self, level: u32) -> Result<u64, TreeError> {
        if level == 0 {
            return Err(TreeError::LevelZero);
        }
        self.ensure_levels(level);
        let levels = self.levels.read().unwrap();
        Ok(levels[(level - 1) as usize].start)
    }

    /// Total number of nodes on levels 1..=`level`; the ball enumerations
    /// iterate `1..=nodes_through_level(l)`.
    pub fn nodes_through_level(&self, level: u32) -> Result<u64, TreeError> {
        if level == 0 {
            return Err(TreeError::LevelZero);
        }
        self.ensure_levels(level);
        let levels = self.levels.read().unwrap();
        Ok(levels[(level - 1) as usize].end())
    }

    /// Level of node `nu`.
    pub fn level_of(&self, nu: u64) -> Result<u32, TreeError> {
        if nu == 0 {
            return Err(TreeError::IndexZero);
        }
        self.ensure_node(nu);
        let levels = self.levels.read().unwrap();
        Ok((locate_level(&levels, nu) + 1) as u32)
    }

    /// Grows the tables until `nu`'s level and the level below it exist,
    /// so that `nu`'s preferred son is known.
    fn ensure_node(&self, nu: u64) {
        loop {
            {
                let levels = self.levels.read().unwrap();
                let last = levels.last().unwrap();
                // nu strictly above the last level start: its own level is
                // complete and its sons live at most on the last level.
                if nu < last.start {
                    return;
                }
            }
            self.grow_one_level();
        }
    }

    fn ensure_levels(&self, level: u32) {
        loop {
            {
                let levels = self.levels.read().unwrap();
                if levels.len() >= level as usize {
                    return;
                }
            }
            self.grow_one_level();
        }
    }

    fn grow_one_level(&self) {
        let mut levels = self.levels.write().unwrap();
        let last = levels.last().unwrap();
        let next_start = last.end() + 1;
        let parent_count = last.statuses.len();
        // 2 sons per black node, 3 per white.
        let mut statuses = Vec::with_capacity(parent_count * 3);
        let mut fathers = Vec::with_capacity(parent_count * 3);
        let mut sigmas = Vec::with_capacity(parent_count);
        for (i, status) in last.statuses.iter().enumerate() {
            let father = last.start + i as u64;
            let first_son = next_start + statuses.len() as u64;
            match status {
                Status::Black => {
                    // B -> B W, preferred son first
                    statuses.push(Status::Black);
                    statuses.push(Status::White);
                    sigmas.push(first_son);
                }
                Status::White => {
                    // W -> B W W, preferred son in the middle
                    statuses.push(Status::Black);
                    statuses.push(Status::White);
                    statuses.push(Status::White);
                    sigmas.push(first_son + 1);
                }
            }
            for _ in 0..(statuses.len() - fathers.len()) {
                fathers.push(father);
            }
        }
        let parent = levels.last_mut().unwrap();
        parent.sigmas = sigmas;
        levels.push(LevelData {
            start: next_start,
            statuses,
            fathers,
            sigmas: Vec::new(),
        });
    }
}

fn locate_level(levels: &[LevelData], nu: u64) -> usize {
    // Last level whose start is <= nu.
    match levels.binary_search_by(|l| l.start.cmp(&nu)) {
        Ok(i) => i,
        Err(i) => i - 1,
    }
}
