//! Cell coordinates and the three-neighbor relation of the heptatrigrid.
//!
//! A cell is one of the 28 small triangles of a heptagon: `slice` names
//! the coarse triangle built on the heptagon side with the same number,
//! `place` the sub-triangle inside it. Places 0 and 1 sit at the two
//! endpoints of the heptagon side (0 at the lower-numbered vertex),
//! place 2 at the heptagon center, place 3 is the medial triangle.
//!
//! Every cell shares a side with exactly three others. Only places 0
//! and 1 touch the heptagon's boundary, so only they have a neighbor in
//! another heptagon; crossing swaps places 0 and 1 and renumbers the
//! slice by the side correspondence of [`crate::hepta::neighbor`].

use crate::hepta::{self, CoordError, HeptaCoord, SideId};
use crate::tree::SectorTree;

/// Address of a cell: heptagon, slice in 1..=7, place in 0..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriCoord {
    pub hepta: HeptaCoord,
    pub slice: u8,
    pub place: u8,
}

impl TriCoord {
    pub fn new(hepta: HeptaCoord, slice: u8, place: u8) -> Result<Self, CoordError> {
        if !(1..=7).contains(&slice) {
            return Err(CoordError::BadSlice(slice));
        }
        if place > 3 {
            return Err(CoordError::BadPlace(place));
        }
        Ok(TriCoord { hepta, slice, place })
    }
}

/// Which of a cell's three neighbors; the cell itself is index 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeighborIdx(u8);

impl NeighborIdx {
    pub fn new(value: u8) -> Result<Self, CoordError> {
        if (1..=3).contains(&value) {
            Ok(NeighborIdx(value))
        } else {
            Err(CoordError::BadNeighborIdx(value))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = NeighborIdx> {
        (1..=3).map(NeighborIdx)
    }
}

fn cyc(slice: u8, delta: i8) -> u8 {
    hepta::sector_add(slice, delta)
}

/// Neighbor across the heptagon side the cell's slice rests on.
fn cross_edge(tree: &SectorTree, t: TriCoord, place: u8) -> TriCoord {
    let (k, side_in_k) = hepta::neighbor(tree, t.hepta, SideId::new(t.slice).unwrap());
    TriCoord {
        hepta: k,
        slice: side_in_k.get(),
        place,
    }
}

/// The cell sharing side `i` of `t`.
pub fn neighbor(tree: &SectorTree, t: TriCoord, i: NeighborIdx) -> TriCoord {
    let same = |slice, place| TriCoord { hepta: t.hepta, slice, place };
    match (t.place, i.get()) {
        (0, 1) => same(t.slice, 3),
        (0, 2) => cross_edge(tree, t, 1),
        (0, 3) => same(cyc(t.slice, -1), 1),
        (1, 1) => cross_edge(tree, t, 0),
        (1, 2) => same(t.slice, 3),
        (1, 3) => same(cyc(t.slice, 1), 0),
        (2, 1) => same(cyc(t.slice, -1), 2),
        (2, 2) => same(cyc(t.slice, 1), 2),
        (2, 3) => same(t.slice, 3),
        (3, 1) => same(t.slice, 0),
        (3, 2) => same(t.slice, 1),
        (3, 3) => same(t.slice, 2),
        _ => unreachable!("place validated at construction"),
    }
}

/// All three neighbors of `t`, in neighbor-index order.
pub fn neighbors(tree: &SectorTree, t: TriCoord) -> [TriCoord; 3] {
    [
        neighbor(tree, t, NeighborIdx(1)),
        neighbor(tree, t, NeighborIdx(2)),
        neighbor(tree, t, NeighborIdx(3)),
    ]
}

/// The 28 cells of one heptagon.
pub fn cells_of(hepta: HeptaCoord) -> impl Iterator<Item = TriCoord> {
    (1..=7).flat_map(move |slice| (0..=3).map(move |place| TriCoord { hepta, slice, place }))
}

/// Every cell of every heptagon whose tree level is at most `level`
/// (the central heptagon included).
pub fn ball(tree: &SectorTree, level: u32) -> Vec<TriCoord> {
    let mut out: Vec<TriCoord> = cells_of(HeptaCoord::CENTRAL).collect();
    if level == 0 {
        return out;
    }
    let last = tree.nodes_through_level(level).unwrap();
    for sector in 1..=7 {
        for nu in 1..=last {
            out.extend(cells_of(HeptaCoord { sector, nu }));
        }
    }
    out
}
