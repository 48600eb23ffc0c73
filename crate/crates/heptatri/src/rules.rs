//! The three colony-growth rule sets.
//!
//! All three are freezing: a cell that leaves the medium state never
//! changes again. Growth is driven by neighbor counts; the four-state
//! variants differ in what a newborn cell is allowed to know: v1 sees
//! only its neighbors' colors, v2 additionally knows its own place and
//! whether it lies in slice 1.
//!
//! The rule statements do not claim to cover every input, so every rule
//! is made total here: an uncovered case leaves the cell unchanged.

use crate::engine::{CellState, Rule};

/// Identifier of a shipped rule; these strings are the CLI vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleId {
    TwoState,
    FourV1,
    FourV2,
}

impl std::str::FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "two-state" => Ok(RuleId::TwoState),
            "four-v1" => Ok(RuleId::FourV1),
            "four-v2" => Ok(RuleId::FourV2),
            other => Err(format!(
                "unknown rule '{other}' (expected two-state, four-v1 or four-v2)"
            )),
        }
    }
}

impl std::fmt::Display for RuleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RuleId::TwoState => "two-state",
            RuleId::FourV1 => "four-v1",
            RuleId::FourV2 => "four-v2",
        })
    }
}

pub fn rule(id: RuleId) -> &'static dyn Rule {
    match id {
        RuleId::TwoState => &TwoState,
        RuleId::FourV1 => &FourStateV1,
        RuleId::FourV2 => &FourStateV2,
    }
}

fn colored_count(n: &[CellState; 3]) -> usize {
    n.iter().filter(|s| !s.is_quiescent()).count()
}

fn the_colored(n: &[CellState; 3]) -> CellState {
    *n.iter().find(|s| !s.is_quiescent()).unwrap()
}

/// Two states: medium and colony. A medium cell joins the colony iff
/// exactly one of its neighbors belongs to it; with two colonized
/// neighbors it stays medium forever, which produces the characteristic
/// pairs of adjacent never-colonized cells.
pub struct TwoState;

impl Rule for TwoState {
    fn name(&self) -> &str {
        "two-state"
    }

    fn transition(&self, cell: CellState, n: [CellState; 3], _: u8, _: u8) -> CellState {
        if !cell.is_quiescent() {
            return cell;
        }
        if colored_count(&n) == 1 {
            CellState::B
        } else {
            CellState::W
        }
    }
}

/// Four states, local knowledge only: a medium cell with exactly one
/// colonized neighbor copies that neighbor's color. Two differently
/// colored neighbors block a cell just like two black ones do in
/// [`TwoState`], so the never-colonized residue is the same.
pub struct FourStateV1;

impl Rule for FourStateV1 {
    fn name(&self) -> &str {
        "four-v1"
    }

    fn transition(&self, cell: CellState, n: [CellState; 3], _: u8, _: u8) -> CellState {
        if !cell.is_quiescent() {
            return cell;
        }
        if colored_count(&n) == 1 {
            match the_colored(&n) {
                c @ (CellState::R | CellState::Y | CellState::V) => c,
                _ => CellState::W,
            }
        } else {
            CellState::W
        }
    }
}

/// Four states plus a little geometry: cells know their place and
/// whether they sit in slice 1. Clause order: keep color, then the
/// red-rebuilding clause (e), then slice-1 copying (b), then the
/// place-2 color rotation (c), then red-driven spread (d), so (d)
/// only ever fires outside slice 1 on places 0, 1 and 3.
pub struct FourStateV2;

impl Rule for FourStateV2 {
    fn name(&self) -> &str {
        "four-v2"
    }

    fn transition(&self, cell: CellState, n: [CellState; 3], slice: u8, place: u8) -> CellState {
        if !cell.is_quiescent() {
            return cell; // (a)
        }
        let whites = 3 - colored_count(&n);
        // (e) one white, one yellow, one vermilion, in the medial cell
        // of slice 1: rebuild red.
        if slice == 1 && place == 3 && whites == 1 {
            let mut sorted = n;
            sorted.sort();
            if sorted == [CellState::W, CellState::Y, CellState::V] {
                return CellState::R;
            }
        }
        if whites == 2 {
            let c = the_colored(&n);
            // (b) slice 1 copies the color of its single colored neighbor.
            if slice == 1 {
                return c;
            }
            // (c) place 2 rotates it: R -> Y -> V -> R.
            if place == 2 {
                return match c {
                    CellState::R => CellState::Y,
                    CellState::Y => CellState::V,
                    CellState::V => CellState::R,
                    _ => CellState::W,
                };
            }
            // (d) red spreads by place: the medial cell copies it, the
            // two edge places take vermilion and yellow.
            if c == CellState::R {
                return match place {
                    3 => CellState::R,
                    0 => CellState::V,
                    1 => CellState::Y,
                    _ => CellState::W,
                };
            }
        }
        CellState::W
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PALETTE: [CellState; 5] = [
        CellState::W,
        CellState::B,
        CellState::R,
        CellState::Y,
        CellState::V,
    ];

    #[test]
    fn two_state_examples() {
        let w = CellState::W;
        let b = CellState::B;
        let r = TwoState;
        assert_eq!(r.transition(w, [b, w, w], 3, 0), b);
        assert_eq!(r.transition(w, [b, b, w], 3, 0), w);
        assert_eq!(r.transition(b, [b, b, b], 3, 0), b);
        // Any single colonized neighbor recruits, whatever its color.
        assert_eq!(r.transition(w, [CellState::R, w, w], 1, 2), b);
    }

    #[test]
    fn four_v1_examples() {
        let w = CellState::W;
        let r = FourStateV1;
        assert_eq!(r.transition(w, [CellState::Y, w, w], 3, 0), CellState::Y);
        assert_eq!(r.transition(w, [CellState::Y, CellState::V, w], 3, 0), w);
        assert_eq!(
            r.transition(CellState::R, [CellState::Y, CellState::V, w], 3, 0),
            CellState::R
        );
    }

    #[test]
    fn four_v2_examples() {
        let w = CellState::W;
        let r = FourStateV2;
        assert_eq!(r.transition(w, [CellState::V, w, w], 1, 0), CellState::V);
        assert_eq!(r.transition(w, [CellState::R, w, w], 4, 2), CellState::Y);
        assert_eq!(
            r.transition(w, [w, CellState::Y, CellState::V], 1, 3),
            CellState::R
        );
        // (d): red next to a non-slice-1 cell, by place.
        assert_eq!(r.transition(w, [CellState::R, w, w], 4, 3), CellState::R);
        assert_eq!(r.transition(w, [CellState::R, w, w], 4, 0), CellState::V);
        assert_eq!(r.transition(w, [CellState::R, w, w], 4, 1), CellState::Y);
        // Yellow alone outside slice 1 recruits nobody off the ring.
        assert_eq!(r.transition(w, [CellState::Y, w, w], 4, 3), w);
    }

    #[test]
    fn exhaustively_total_and_freezing() {
        for id in [RuleId::TwoState, RuleId::FourV1, RuleId::FourV2] {
            let r = rule(id);
            assert!(r.freezing());
            for &cell in &PALETTE {
                for &a in &PALETTE {
                    for &b in &PALETTE {
                        for &c in &PALETTE {
                            for slice in 1..=7 {
                                for place in 0..=3 {
                                    let out = r.transition(cell, [a, b, c], slice, place);
                                    assert!(PALETTE.contains(&out));
                                    if !cell.is_quiescent() {
                                        assert_eq!(out, cell, "{id:?} recolored a cell");
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn quiescent_preserving() {
        let w = CellState::W;
        for id in [RuleId::TwoState, RuleId::FourV1, RuleId::FourV2] {
            let r = rule(id);
            for slice in 1..=7 {
                for place in 0..=3 {
                    assert_eq!(r.transition(w, [w, w, w], slice, place), w);
                }
            }
        }
    }
}
