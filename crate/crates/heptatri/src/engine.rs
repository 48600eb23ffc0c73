//! Sparse synchronous cellular-automaton engine.
//!
//! State is a sparse map from cells to non-quiescent states; the
//! quiescent state `W` is never stored. One step evaluates every colored
//! cell plus every quiescent cell with at least one colored neighbor
//! against the previous configuration, simultaneously. For the freezing
//! rules shipped in [`crate::rules`] this update region is exact, not an
//! approximation: nothing outside it can change.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::hepta::HeptaCoord;
use crate::tree::SectorTree;
use crate::tri::{self, TriCoord};

/// State of a cell, a small integer. 0 is the quiescent medium `W`;
/// the shipped rules use the palette `W, B, R, Y, V`, but the engine
/// accepts any number of states up to 255.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellState(pub u8);

impl CellState {
    pub const W: CellState = CellState(0);
    pub const B: CellState = CellState(1);
    pub const R: CellState = CellState(2);
    pub const Y: CellState = CellState(3);
    pub const V: CellState = CellState(4);

    pub fn is_quiescent(self) -> bool {
        self.0 == 0
    }

    /// Letter used in snapshots and stats for the shipped palette.
    pub fn letter(self) -> Option<char> {
        match self {
            CellState::W => Some('W'),
            CellState::B => Some('B'),
            CellState::R => Some('R'),
            CellState::Y => Some('Y'),
            CellState::V => Some('V'),
            _ => None,
        }
    }

    pub fn from_letter(c: char) -> Option<CellState> {
        match c {
            'W' => Some(CellState::W),
            'B' => Some(CellState::B),
            'R' => Some(CellState::R),
            'Y' => Some(CellState::Y),
            'V' => Some(CellState::V),
            _ => None,
        }
    }
}

/// A synchronous transition rule over the three-neighbor grid.
///
/// `transition` must be pure. Neighbors arrive in neighbor-index order.
/// Rules that declare themselves `freezing` are guarded by the engine:
/// changing a non-quiescent cell is an integrity error.
pub trait Rule {
    fn name(&self) -> &str;

    fn transition(
        &self,
        cell: CellState,
        neighbors: [CellState; 3],
        slice: u8,
        place: u8,
    ) -> CellState;

    fn freezing(&self) -> bool {
        true
    }
}

/// Sparse world state: colored cells plus a step counter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    cells: BTreeMap<TriCoord, CellState>,
    step: u64,
}

impl Configuration {
    pub fn empty() -> Self {
        Configuration {
            cells: BTreeMap::new(),
            step: 0,
        }
    }

    pub fn from_cells(cells: BTreeMap<TriCoord, CellState>, step: u64) -> Self {
        let mut cfg = Configuration { cells, step };
        cfg.cells.retain(|_, s| !s.is_quiescent());
        cfg
    }

    pub fn get(&self, t: &TriCoord) -> CellState {
        self.cells.get(t).copied().unwrap_or(CellState::W)
    }

    /// Stores a state; storing `W` removes the entry (canonical sparseness).
    pub fn set(&mut self, t: TriCoord, s: CellState) {
        if s.is_quiescent() {
            self.cells.remove(&t);
        } else {
            self.cells.insert(t, s);
        }
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn colored_count(&self) -> u64 {
        self.cells.len() as u64
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TriCoord, &CellState)> {
        self.cells.iter()
    }

    pub fn count_of(&self, s: CellState) -> u64 {
        self.cells.values().filter(|&&v| v == s).count() as u64
    }
}

/// Named initial configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitId {
    /// The seven place-2 cells of the central heptagon, in state `R`.
    Core2,
    /// All 28 cells of the central heptagon: places 2 and 3 in `R`,
    /// place 0 in `V`, place 1 in `Y`.
    HeptaCore,
}

impl std::str::FromStr for InitId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "core2" => Ok(InitId::Core2),
            "hepta-core" => Ok(InitId::HeptaCore),
            other => Err(format!("unknown init '{other}' (expected core2 or hepta-core)")),
        }
    }
}

impl std::fmt::Display for InitId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InitId::Core2 => "core2",
            InitId::HeptaCore => "hepta-core",
        })
    }
}

pub fn init_config(id: InitId) -> Configuration {
    let mut cfg = Configuration::empty();
    let central = HeptaCoord::CENTRAL;
    match id {
        InitId::Core2 => {
            for slice in 1..=7 {
                cfg.set(TriCoord { hepta: central, slice, place: 2 }, CellState::R);
            }
        }
        InitId::HeptaCore => {
            for slice in 1..=7 {
                cfg.set(TriCoord { hepta: central, slice, place: 2 }, CellState::R);
                cfg.set(TriCoord { hepta: central, slice, place: 3 }, CellState::R);
                cfg.set(TriCoord { hepta: central, slice, place: 0 }, CellState::V);
                cfg.set(TriCoord { hepta: central, slice, place: 1 }, CellState::Y);
            }
        }
    }
    cfg
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("cell budget exceeded at step {step}: {cells} cells materialized (limit {limit})")]
    BudgetExceeded { step: u64, cells: u64, limit: u64 },
    #[error("freezing rule '{rule}' changed a non-quiescent cell at step {step}")]
    FrozenCellChanged { rule: String, step: u64 },
}

/// Run parameters. The grid grows exponentially with distance from the
/// center, so runs carry a hard cell budget instead of allocating freely.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub max_cells: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { max_cells: 10_000_000 }
    }
}

/// Per-step population counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepStats {
    pub step: u64,
    /// Colored cells per state.
    pub counts: BTreeMap<CellState, u64>,
    /// Quiescent cells adjacent to at least one colored cell.
    pub boundary_white: u64,
    /// Cells that left the quiescent state on this step (for step 0,
    /// the size of the initial configuration).
    pub newly_colored: u64,
}

fn collect_stats(tree: &SectorTree, cfg: &Configuration, newly: u64) -> StepStats {
    let mut counts = BTreeMap::new();
    for (_, &s) in cfg.iter() {
        *counts.entry(s).or_insert(0) += 1;
    }
    let mut boundary = BTreeSet::new();
    for (&t, _) in cfg.iter() {
        for n in tri::neighbors(tree, t) {
            if cfg.get(&n).is_quiescent() {
                boundary.insert(n);
            }
        }
    }
    StepStats {
        step: cfg.step(),
        counts,
        boundary_white: boundary.len() as u64,
        newly_colored: newly,
    }
}

/// One synchronous step: evaluates the colored set and its quiescent
/// boundary against the current configuration.
pub fn step(
    tree: &SectorTree,
    cfg: &Configuration,
    rule: &dyn Rule,
) -> Result<Configuration, EngineError> {
    let mut region: BTreeSet<TriCoord> = BTreeSet::new();
    for (&t, _) in cfg.iter() {
        region.insert(t);
        for n in tri::neighbors(tree, t) {
            if cfg.get(&n).is_quiescent() {
                region.insert(n);
            }
        }
    }
    let mut next = BTreeMap::new();
    for &t in &region {
        let current = cfg.get(&t);
        let nbrs = tri::neighbors(tree, t).map(|n| cfg.get(&n));
        let out = rule.transition(current, nbrs, t.slice, t.place);
        if rule.freezing() && !current.is_quiescent() && out != current {
            return Err(EngineError::FrozenCellChanged {
                rule: rule.name().to_string(),
                step: cfg.step(),
            });
        }
        if !out.is_quiescent() {
            next.insert(t, out);
        }
    }
    Ok(Configuration {
        cells: next,
        step: cfg.step() + 1,
    })
}

/// `steps`-fold [`step`], with per-step population counts.
pub fn run(
    tree: &SectorTree,
    init: Configuration,
    rule: &dyn Rule,
    steps: u64,
    opts: RunOptions,
) -> Result<(Configuration, Vec<StepStats>), EngineError> {
    let mut cfg = init;
    let mut stats = Vec::with_capacity(steps as usize + 1);
    stats.push(collect_stats(tree, &cfg, cfg.colored_count()));
    for _ in 0..steps {
        let before = cfg.colored_count();
        cfg = step(tree, &cfg, rule)?;
        let step_stats = collect_stats(tree, &cfg, cfg.colored_count() - before);
        let materialized = cfg.colored_count() + step_stats.boundary_white;
        if materialized > opts.max_cells {
            return Err(EngineError::BudgetExceeded {
                step: cfg.step(),
                cells: materialized,
                limit: opts.max_cells,
            });
        }
        stats.push(step_stats);
    }
    Ok((cfg, stats))
}
