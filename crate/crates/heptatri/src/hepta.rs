//! Heptagon-level coordinates and neighbor algebra.
//!
//! A heptagon is addressed by `(sector, nu)`: one of seven angular sectors
//! plus the index of the heptagon in that sector's spanning tree. `(0, 0)`
//! is the central heptagon. Sides are numbered 1..=7 around each tile:
//! side 1 faces the father (the central cell's sides face the seven sector
//! roots), sides 4 and 5 face sons, side 7 a same-level neighbor.
//!
//! `neighbor` resolves one side crossing: which heptagon lies across a
//! side, and what that side is numbered from the other side. The index
//! arithmetic depends on the node's profile: interior black or white,
//! leftmost-branch black, rightmost-branch white, or the sector root,
//! which lies on both border branches and has a profile of its own.

use thiserror::Error;

use crate::tree::{SectorTree, Status};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoordError {
    #[error("heptagon sector must be 0 (central) or 1..=7, got {0}")]
    BadSector(u8),
    #[error("heptagon index 0 is only valid for the central cell")]
    BadIndex,
    #[error("side number must be in 1..=7, got {0}")]
    BadSide(u8),
    #[error("slice number must be in 1..=7, got {0}")]
    BadSlice(u8),
    #[error("place number must be in 0..=3, got {0}")]
    BadPlace(u8),
    #[error("neighbor index must be in 1..=3, got {0}")]
    BadNeighborIdx(u8),
}

/// Address of a heptagon: `(0, 0)` is the central cell, otherwise
/// `sector` is in 1..=7 and `nu >= 1` indexes the sector tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeptaCoord {
    pub sector: u8,
    pub nu: u64,
}

impl HeptaCoord {
    pub const CENTRAL: HeptaCoord = HeptaCoord { sector: 0, nu: 0 };

    pub fn new(sector: u8, nu: u64) -> Result<Self, CoordError> {
        match (sector, nu) {
            (0, 0) => Ok(Self::CENTRAL),
            (0, _) | (8.., _) => Err(CoordError::BadSector(sector)),
            (_, 0) => Err(CoordError::BadIndex),
            _ => Ok(HeptaCoord { sector, nu }),
        }
    }

    /// Head of a sector's tree.
    pub fn root(sector: u8) -> Self {
        debug_assert!((1..=7).contains(&sector));
        HeptaCoord { sector, nu: 1 }
    }

    pub fn is_central(&self) -> bool {
        self.nu == 0
    }
}

/// Side of a heptagon, 1..=7.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SideId(u8);

impl SideId {
    pub fn new(value: u8) -> Result<Self, CoordError> {
        if (1..=7).contains(&value) {
            Ok(SideId(value))
        } else {
            Err(CoordError::BadSide(value))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = SideId> {
        (1..=7).map(SideId)
    }
}

/// Cyclic +/- on 1..=7: subtracting 1 from 1 gives 7, adding 1 to 7 gives 1.
pub fn sector_add(s: u8, delta: i8) -> u8 {
    debug_assert!((1..=7).contains(&s));
    let z = (s as i16 - 1 + delta as i16).rem_euclid(7);
    z as u8 + 1
}

/// The side of `father` that faces `child`: 3, 4 or 5 for a white father's
/// first, preferred and last son; 4 or 5 for a black father's two sons.
pub(crate) fn father_side(tree: &SectorTree, father: u64, child: u64) -> u8 {
    let sigma = tree
        .node_record(father)
        .expect("father is a tree node")
        .preferred_son;
    if child + 1 == sigma {
        3
    } else if child == sigma {
        4
    } else {
        debug_assert_eq!(child, sigma + 1);
        5
    }
}

/// The heptagon across `side` of `h`, and the number of the shared side
/// as seen from that neighbor.
pub fn neighbor(tree: &SectorTree, h: HeptaCoord, side: SideId) -> (HeptaCoord, SideId) {
    let s = side.get();
    if h.is_central() {
        // The central cell's sides are numbered 1 in all of its neighbors.
        return (HeptaCoord::root(s), SideId(1));
    }
    let rec = tree.node_record(h.nu).expect("valid heptagon index");
    let sigma = rec.preferred_son;

    // Neighbor index and sector shift. The root has a specific profile:
    // it lies on both border branches. A leftmost (black) node reaches the
    // adjacent sector through sides 2 and 3, a rightmost (white) node
    // through sides 6 and 7.
    let (k_nu, shift): (u64, i8) = if h.nu == 1 {
        match s {
            1 => {
                // Father of the root is the central cell; its side facing
                // sector `sector` carries that sector's number.
                return (HeptaCoord::CENTRAL, SideId(h.sector));
            }
            2 => (1, -1),
            3 => (sigma - 1, 0),
            4 => (sigma, 0),
            5 => (sigma + 1, 0),
            6 => (2, 1),
            7 => (1, 1),
            _ => unreachable!(),
        }
    } else if rec.on_leftmost {
        match s {
            1 => (rec.father, 0),
            2 => (h.nu - 1, -1),
            3 => (sigma - 1, -1),
            4 => (sigma, 0),
            5 => (sigma + 1, 0),
            6 => (sigma + 2, 0),
            7 => (h.nu + 1, 0),
            _ => unreachable!(),
        }
    } else if rec.on_rightmost {
        match s {
            1 => (rec.father, 0),
            2 => (h.nu - 1, 0),
            3 => (sigma - 1, 0),
            4 => (sigma, 0),
            5 => (sigma + 1, 0),
            6 => (h.nu + 1, 1),
            7 => (rec.father + 1, 1),
            _ => unreachable!(),
        }
    } else if rec.status == Status::Black {
        match s {
            1 => (rec.father, 0),
            2 => (rec.father - 1, 0),
            3 => (h.nu - 1, 0),
            4 => (sigma, 0),
            5 => (sigma + 1, 0),
            6 => (sigma + 2, 0),
            7 => (h.nu + 1, 0),
            _ => unreachable!(),
        }
    } else {
        match s {
            1 => (rec.father, 0),
            2 => (h.nu - 1, 0),
            3 => (sigma - 1, 0),
            4 => (sigma, 0),
            5 => (sigma + 1, 0),
            6 => (sigma + 2, 0),
            7 => (h.nu + 1, 0),
            _ => unreachable!(),
        }
    };

    let k = HeptaCoord {
        sector: sector_add(h.sector, shift),
        nu: k_nu,
    };

    // Number of the shared side from the neighbor's side. Sides 2..=7
    // depend only on the statuses involved; side 1 is resolved by the
    // child's position among the father's sons.
    let side_in_k = match (s, rec.status) {
        (1, _) => father_side(tree, rec.father, h.nu),
        (2, Status::Black) => 6,
        (2, Status::White) => 7,
        (3, Status::Black) => 7,
        (3, Status::White) => 1,
        (4, _) | (5, _) => 1,
        (6, _) => 2,
        (7, Status::Black) => 2,
        (7, Status::White) => {
            match tree.node_record(k_nu).expect("valid neighbor").status {
                Status::Black => 3,
                Status::White => 2,
            }
        }
        _ => unreachable!(),
    };
    (k, SideId(side_in_k))
}
