//! Invariant suites behind `heptatri validate`.
//!
//! Each suite returns a report instead of panicking so the CLI can print
//! one pass/fail line per suite and exit accordingly.

use std::collections::BTreeSet;

use crate::geometry::Embedder;
use crate::hepta::{self, HeptaCoord, SideId};
use crate::tree::{SectorTree, Status};
use crate::tri::{self, TriCoord};

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl SuiteReport {
    fn pass(name: &'static str, details: String) -> Self {
        SuiteReport { name, passed: true, details }
    }

    fn fail(name: &'static str, details: String) -> Self {
        SuiteReport { name, passed: false, details }
    }
}

fn heptagons_through(tree: &SectorTree, level: u32) -> Vec<HeptaCoord> {
    let mut out = vec![HeptaCoord::CENTRAL];
    if level == 0 {
        return out;
    }
    let last = tree.nodes_through_level(level).unwrap();
    for sector in 1..=7 {
        for nu in 1..=last {
            out.push(HeptaCoord { sector, nu });
        }
    }
    out
}

/// Tree laws: father/preferred-son inversion up to 10^5 and level counts
/// against direct expansion of the production rules.
pub fn tree_suite(tree: &SectorTree) -> SuiteReport {
    const NAME: &str = "tree-laws";
    for nu in 2..=100_000u64 {
        let r = tree.node_record(nu).unwrap();
        if !(r.father < nu && nu < r.preferred_son) {
            return SuiteReport::fail(NAME, format!("ordering broken at node {nu}"));
        }
        if tree.node_record(r.preferred_son).unwrap().father != nu {
            return SuiteReport::fail(NAME, format!("father(sigma({nu})) != {nu}"));
        }
    }
    // Independent expansion of B -> BW, W -> BWW.
    let mut level: Vec<Status> = vec![Status::White];
    let mut counts = Vec::new();
    for _ in 0..10 {
        counts.push(level.len() as u64);
        let mut next = Vec::new();
        for s in &level {
            match s {
                Status::Black => next.extend([Status::Black, Status::White]),
                Status::White => next.extend([Status::Black, Status::White, Status::White]),
            }
        }
        level = next;
    }
    for (i, &expected) in counts.iter().enumerate() {
        let got = tree.level_count(i as u32 + 1).unwrap();
        if got != expected {
            return SuiteReport::fail(
                NAME,
                format!("level {} count {} != {}", i + 1, got, expected),
            );
        }
    }
    for i in 2..counts.len() {
        if counts[i] != 3 * counts[i - 1] - counts[i - 2] {
            return SuiteReport::fail(NAME, format!("recurrence broken at level {}", i + 1));
        }
    }
    SuiteReport::pass(
        NAME,
        format!("f(sigma(nu)) = nu for nu <= 100000; level counts {counts:?}"),
    )
}

/// Heptagon navigation: involution, distinct neighbors, son and father
/// consistency, for every heptagon up to `level`.
pub fn hepta_suite(tree: &SectorTree, level: u32) -> SuiteReport {
    const NAME: &str = "hepta-involution";
    let mut checked = 0u64;
    for h in heptagons_through(tree, level) {
        let mut seen = BTreeSet::new();
        for side in SideId::all() {
            let (k, t) = hepta::neighbor(tree, h, side);
            if k == h {
                return SuiteReport::fail(NAME, format!("{h:?} is its own neighbor"));
            }
            if !seen.insert(k) {
                return SuiteReport::fail(NAME, format!("duplicate neighbor of {h:?}"));
            }
            let (back, s) = hepta::neighbor(tree, k, t);
            if back != h || s != side {
                return SuiteReport::fail(
                    NAME,
                    format!("involution broken at {h:?} side {}", side.get()),
                );
            }
            checked += 1;
        }
        if !h.is_central() {
            let rec = tree.node_record(h.nu).unwrap();
            let (son, t) = hepta::neighbor(tree, h, SideId::new(4).unwrap());
            if son.nu != rec.preferred_son || t.get() != 1 {
                return SuiteReport::fail(NAME, format!("side 4 of {h:?} is not the preferred son"));
            }
            if h.nu > 1 {
                let (father, t) = hepta::neighbor(tree, h, SideId::new(1).unwrap());
                if father.nu != rec.father || !(3..=5).contains(&t.get()) {
                    return SuiteReport::fail(NAME, format!("side 1 of {h:?} is not the father"));
                }
            }
        }
    }
    SuiteReport::pass(NAME, format!("{checked} directed sides, level <= {level}"))
}

/// Cell navigation: neighbor symmetry and the locality laws for every
/// cell up to `level`.
pub fn tri_suite(tree: &SectorTree, level: u32) -> SuiteReport {
    const NAME: &str = "tri-involution";
    let mut checked = 0u64;
    for t in tri::ball(tree, level) {
        let ns = tri::neighbors(tree, t);
        let mut outside = 0;
        for n in ns {
            if n == t {
                return SuiteReport::fail(NAME, format!("{t:?} is its own neighbor"));
            }
            if !tri::neighbors(tree, n).contains(&t) {
                return SuiteReport::fail(NAME, format!("asymmetric edge {t:?} -> {n:?}"));
            }
            if n.hepta != t.hepta {
                outside += 1;
            }
            checked += 1;
        }
        if ns[0] == ns[1] || ns[0] == ns[2] || ns[1] == ns[2] {
            return SuiteReport::fail(NAME, format!("duplicate neighbors of {t:?}"));
        }
        let expected = u32::from(t.place <= 1);
        if outside != expected {
            return SuiteReport::fail(
                NAME,
                format!("{t:?} has {outside} cross-heptagon neighbors, expected {expected}"),
            );
        }
    }
    SuiteReport::pass(NAME, format!("{checked} directed edges, level <= {level}"))
}

/// Combinatorial neighbors against brute-force geometric edge matching.
pub fn oracle_suite(tree: &SectorTree, level: u32) -> SuiteReport {
    const NAME: &str = "oracle-equivalence";
    let mut emb = Embedder::new(tree, level + 1);
    let geometric = match emb.geometric_adjacency(level) {
        Ok(pairs) => pairs,
        Err(e) => return SuiteReport::fail(NAME, format!("embedding failed: {e}")),
    };
    let in_ball =
        |h: &HeptaCoord| h.is_central() || tree.level_of(h.nu).unwrap() <= level;
    let mut combinatorial: BTreeSet<(TriCoord, TriCoord)> = BTreeSet::new();
    for t in tri::ball(tree, level) {
        for n in tri::neighbors(tree, t) {
            if in_ball(&n.hepta) {
                combinatorial.insert(if t < n { (t, n) } else { (n, t) });
            }
        }
    }
    if geometric != combinatorial {
        let missing: Vec<_> = combinatorial.difference(&geometric).take(3).collect();
        let extra: Vec<_> = geometric.difference(&combinatorial).take(3).collect();
        return SuiteReport::fail(
            NAME,
            format!(
                "sets differ: {} combinatorial vs {} geometric; missing {missing:?}; extra {extra:?}",
                combinatorial.len(),
                geometric.len()
            ),
        );
    }
    // Patches with all neighbors inside the ball must match on all
    // three sides.
    let inner_level = level.saturating_sub(1);
    let mut degree: std::collections::BTreeMap<TriCoord, usize> = std::collections::BTreeMap::new();
    for (a, b) in &geometric {
        *degree.entry(*a).or_default() += 1;
        *degree.entry(*b).or_default() += 1;
    }
    for t in tri::ball(tree, inner_level) {
        if degree.get(&t).copied().unwrap_or(0) != 3 {
            return SuiteReport::fail(NAME, format!("interior patch {t:?} lacks 3 matches"));
        }
    }
    SuiteReport::pass(NAME, format!("{} shared sides, level <= {level}", geometric.len()))
}

/// Every suite at its conventional depth.
pub fn run_all(tree: &SectorTree, level: u32) -> Vec<SuiteReport> {
    vec![
        tree_suite(tree),
        hepta_suite(tree, level),
        tri_suite(tree, level),
        oracle_suite(tree, level),
    ]
}
