//! Metric realization of the heptatrigrid in the Poincaré disc.
//!
//! The unit disc models the hyperbolic plane; geodesics are diameters or
//! circle arcs orthogonal to the boundary. Disc isometries are Möbius
//! maps `z -> (a z + b)/(conj(b) z + conj(a))` with `|a|^2 - |b|^2 = 1`,
//! optionally composed with conjugation for the orientation-reversing
//! ones.
//!
//! Every heptagon is placed by composing, along its father path, the
//! fixed step isometry that carries a tile onto one of its neighbors.
//! Placement is derived from coordinates alone; tiles are never
//! deduplicated by floating-point comparison, so each coordinate owns
//! exactly one patch of the disc. The central heptagon is centered at
//! the origin with its side-1 midpoint on the positive x axis.

use std::collections::{BTreeSet, HashMap};
use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::hepta::{self, HeptaCoord};
use crate::tree::SectorTree;
use crate::tri::{self, TriCoord};

/// Matching tolerance for endpoints and isometry checks. Patches of the
/// levels handled here stay separated by many orders of magnitude more.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("point ({x}, {y}) lies outside the open unit disc")]
    OutsideDisc { x: String, y: String },
    #[error("heptagon {nu} at level {level} exceeds the embedding budget of {max} levels")]
    LevelBudget { nu: u64, level: u32, max: u32 },
}

/// A point strictly inside the unit disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint {
    pub x: f64,
    pub y: f64,
}

impl DiscPoint {
    pub const ORIGIN: DiscPoint = DiscPoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Result<Self, GeometryError> {
        if x * x + y * y < 1.0 {
            Ok(DiscPoint { x, y })
        } else {
            Err(GeometryError::OutsideDisc {
                x: format!("{x}"),
                y: format!("{y}"),
            })
        }
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    fn from_complex(z: Complex64) -> Self {
        debug_assert!(z.norm_sqr() < 1.0, "isometry image left the disc");
        DiscPoint { x: z.re, y: z.im }
    }

    pub fn euclidean_distance(self, other: DiscPoint) -> f64 {
        (self.to_complex() - other.to_complex()).norm()
    }
}

/// Hyperbolic distance between two disc points.
pub fn hyper_distance(p: DiscPoint, q: DiscPoint) -> f64 {
    let a = p.to_complex();
    let b = q.to_complex();
    let d2 = (a - b).norm_sqr();
    (1.0 + 2.0 * d2 / ((1.0 - a.norm_sqr()) * (1.0 - b.norm_sqr()))).acosh()
}

/// The point halfway along the geodesic from `a` to `b`.
pub fn hyper_midpoint(a: DiscPoint, b: DiscPoint) -> DiscPoint {
    if a == b {
        return a;
    }
    let to_origin = Isometry::translation_to_origin(a);
    let image = to_origin.apply(b).to_complex();
    let r = image.norm();
    // Halving a distance along a diameter: tanh(d/2) = r / (1 + sqrt(1 - r^2)).
    let half = image * (1.0 / (1.0 + (1.0 - r * r).sqrt()));
    to_origin.inverse().apply(DiscPoint::from_complex(half))
}

/// A disc-preserving Möbius map with an orientation flag.
///
/// `apply` computes `(a w + b)/(conj(b) w + conj(a))` where `w` is `z`
/// or `conj(z)` depending on the flag; `|a|^2 - |b|^2` is kept at 1.
#[derive(Debug, Clone, Copy)]
pub struct Isometry {
    a: Complex64,
    b: Complex64,
    flip: bool,
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            flip: false,
        }
    }

    /// Rotation about the origin by `theta`.
    pub fn rotation(theta: f64) -> Self {
        Isometry {
            a: Complex64::from_polar(1.0, theta / 2.0),
            b: Complex64::new(0.0, 0.0),
            flip: false,
        }
    }

    /// Translation along the positive x axis by hyperbolic distance `d`.
    pub fn translation_x(d: f64) -> Self {
        let t = (d / 2.0).tanh();
        let s = 1.0 / (1.0 - t * t).sqrt();
        Isometry {
            a: Complex64::new(s, 0.0),
            b: Complex64::new(s * t, 0.0),
            flip: false,
        }
    }

    /// The translation taking `p` to the origin: `z -> (z - p)/(1 - conj(p) z)`.
    pub fn translation_to_origin(p: DiscPoint) -> Self {
        let c = p.to_complex();
        let s = 1.0 / (1.0 - c.norm_sqr()).sqrt();
        Isometry {
            a: Complex64::new(s, 0.0),
            b: -c * s,
            flip: false,
        }
    }

    /// Reflection across the x axis.
    pub fn reflection_x() -> Self {
        Isometry {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            flip: true,
        }
    }

    pub fn is_orientation_reversing(&self) -> bool {
        self.flip
    }

    pub fn apply(&self, p: DiscPoint) -> DiscPoint {
        let z = p.to_complex();
        let w = if self.flip { z.conj() } else { z };
        DiscPoint::from_complex((self.a * w + self.b) / (self.b.conj() * w + self.a.conj()))
    }

    /// `self` after `other`: `(self.compose(other)).apply(z) = self(other(z))`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let (oa, ob) = if self.flip {
            (other.a.conj(), other.b.conj())
        } else {
            (other.a, other.b)
        };
        let mut out = Isometry {
            a: self.a * oa + self.b * ob.conj(),
            b: self.a * ob + self.b * oa.conj(),
            flip: self.flip ^ other.flip,
        };
        out.renormalize();
        out
    }

    pub fn inverse(&self) -> Isometry {
        if self.flip {
            Isometry {
                a: self.a,
                b: -self.b.conj(),
                flip: true,
            }
        } else {
            Isometry {
                a: self.a.conj(),
                b: -self.b,
                flip: false,
            }
        }
    }

    fn renormalize(&mut self) {
        let det = self.a.norm_sqr() - self.b.norm_sqr();
        debug_assert!(det > 0.0, "degenerate isometry");
        let s = 1.0 / det.sqrt();
        self.a *= s;
        self.b *= s;
    }
}

/// Angle in 1..=7 layout: side or sector `k` sits at `(k-1) * 2pi/7`.
fn side_angle(k: u8) -> f64 {
    f64::from(k - 1) * (2.0 * PI / 7.0)
}

/// Tile constants of the {7,3} heptagon.
#[derive(Debug, Clone, Copy)]
pub struct TileMetrics {
    /// Center-to-vertex hyperbolic distance.
    pub circumradius: f64,
    /// Center-to-side hyperbolic distance; adjacent centers are `2 *
    /// inradius` apart.
    pub inradius: f64,
}

impl TileMetrics {
    pub fn heptagrid() -> Self {
        // Right triangle (center, side midpoint, vertex) with angles
        // pi/7 at the center and pi/3 at the vertex.
        let circumradius = ((PI / 7.0).tan().recip() * (PI / 3.0).tan().recip()).acosh();
        let inradius = ((PI / 3.0).cos() / (PI / 7.0).sin()).acosh();
        TileMetrics {
            circumradius,
            inradius,
        }
    }
}

/// The three disc points realizing one cell.
///
/// Vertex `k` of the patch carries the cell's vertex number `k`: for the
/// corner places 0..=2 that is the coarse triangle's vertex they own
/// (place 2 owns the heptagon center), for the medial place 3 vertex `k`
/// is the midpoint opposite the coarse vertex `k`.
#[derive(Debug, Clone)]
pub struct TrianglePatch {
    pub coord: TriCoord,
    pub vertices: [DiscPoint; 3],
}

impl TrianglePatch {
    pub fn sides(&self) -> [(DiscPoint, DiscPoint); 3] {
        let [v0, v1, v2] = self.vertices;
        [(v0, v1), (v1, v2), (v2, v0)]
    }
}

/// Hyperbolic area of a geodesic triangle (angle defect).
pub fn hyper_area(vertices: &[DiscPoint; 3]) -> f64 {
    let mut angle_sum = 0.0;
    for i in 0..3 {
        let v = vertices[i];
        let p = vertices[(i + 1) % 3];
        let q = vertices[(i + 2) % 3];
        let to_origin = Isometry::translation_to_origin(v);
        let dp = to_origin.apply(p).to_complex();
        let dq = to_origin.apply(q).to_complex();
        let mut d = (dp.arg() - dq.arg()).abs();
        if d > PI {
            d = 2.0 * PI - d;
        }
        angle_sum += d;
    }
    PI - angle_sum
}

/// Reference tile centered at the origin: vertex positions and the 28
/// cell patches, everything else is an isometric copy of these.
struct ReferenceTile {
    vertices: [DiscPoint; 7],
    /// `patches[slice - 1][place]`.
    patches: Vec<[[DiscPoint; 3]; 4]>,
}

impl ReferenceTile {
    fn build(metrics: TileMetrics) -> Self {
        let vr = (metrics.circumradius / 2.0).tanh();
        let mut vertices = [DiscPoint::ORIGIN; 7];
        for (k, v) in vertices.iter_mut().enumerate() {
            // Side k joins vertices k-1 and k, so vertex k sits half an
            // angular step past side k's midpoint: vertex 0 at -pi/7,
            // vertex 1 at +pi/7, bracketing side 1 on the x axis.
            let angle = side_angle(k as u8 + 1) - PI / 7.0;
            *v = DiscPoint {
                x: vr * angle.cos(),
                y: vr * angle.sin(),
            };
        }
        let mut patches = Vec::with_capacity(7);
        for slice in 1..=7usize {
            let p0 = vertices[slice - 1];
            let p1 = vertices[slice % 7];
            let p2 = DiscPoint::ORIGIN;
            let m01 = hyper_midpoint(p0, p1);
            let m12 = hyper_midpoint(p1, p2);
            let m02 = hyper_midpoint(p0, p2);
            patches.push([
                [p0, m01, m02],
                [m01, p1, m12],
                [m02, m12, p2],
                [m12, m02, m01],
            ]);
        }
        ReferenceTile { vertices, patches }
    }
}

/// Places heptagons in the disc and answers geometric queries about the
/// resulting patches. Placements are cached per heptagon.
pub struct Embedder<'t> {
    tree: &'t SectorTree,
    max_level: u32,
    metrics: TileMetrics,
    reference: ReferenceTile,
    placements: HashMap<HeptaCoord, Isometry>,
}

impl<'t> Embedder<'t> {
    pub fn new(tree: &'t SectorTree, max_level: u32) -> Self {
        let metrics = TileMetrics::heptagrid();
        Embedder {
            tree,
            max_level,
            metrics,
            reference: ReferenceTile::build(metrics),
            placements: HashMap::new(),
        }
    }

    pub fn metrics(&self) -> TileMetrics {
        self.metrics
    }

    /// Isometry carrying the reference tile onto the tile across the
    /// reference's side `out_side`, numbered so that the shared side is
    /// the neighbor's side `back_side`.
    fn step_isometry(&self, out_side: u8, back_side: u8) -> Isometry {
        Isometry::rotation(side_angle(out_side))
            .compose(&Isometry::translation_x(2.0 * self.metrics.inradius))
            .compose(&Isometry::rotation(PI - side_angle(back_side)))
    }

    /// Isometry carrying the reference tile onto heptagon `h`.
    pub fn placement(&mut self, h: HeptaCoord) -> Result<Isometry, GeometryError> {
        if let Some(iso) = self.placements.get(&h) {
            return Ok(*iso);
        }
        if h.is_central() {
            let id = Isometry::identity();
            self.placements.insert(h, id);
            return Ok(id);
        }
        let record = self.tree.node_record(h.nu).expect("valid coordinate");
        if record.level > self.max_level {
            return Err(GeometryError::LevelBudget {
                nu: h.nu,
                level: record.level,
                max: self.max_level,
            });
        }
        let (father, out_side) = if h.nu == 1 {
            (HeptaCoord::CENTRAL, h.sector)
        } else {
            let side = hepta::father_side(self.tree, record.father, h.nu);
            (HeptaCoord { sector: h.sector, nu: record.father }, side)
        };
        let base = self.placement(father)?;
        let iso = base.compose(&self.step_isometry(out_side, 1));
        self.placements.insert(h, iso);
        Ok(iso)
    }

    /// Center and the seven vertices of `h`; side `k` joins vertices
    /// `k - 1` and `k` (mod 7) of the returned array.
    pub fn embed_heptagon(
        &mut self,
        h: HeptaCoord,
    ) -> Result<(DiscPoint, [DiscPoint; 7]), GeometryError> {
        let iso = self.placement(h)?;
        let center = iso.apply(DiscPoint::ORIGIN);
        let mut vertices = [DiscPoint::ORIGIN; 7];
        for (v, r) in vertices.iter_mut().zip(self.reference.vertices.iter()) {
            *v = iso.apply(*r);
        }
        Ok((center, vertices))
    }

    pub fn tri_patch(&mut self, t: TriCoord) -> Result<TrianglePatch, GeometryError> {
        let iso = self.placement(t.hepta)?;
        let reference = &self.reference.patches[(t.slice - 1) as usize][t.place as usize];
        Ok(TrianglePatch {
            coord: t,
            vertices: reference.map(|v| iso.apply(v)),
        })
    }

    /// Brute-force edge matching: all patches of all heptagons up to tree
    /// level `level`, paired whenever two patches share a full side with
    /// both endpoints within [`TOLERANCE`]. This is the oracle the
    /// combinatorial navigation is validated against.
    pub fn geometric_adjacency(
        &mut self,
        level: u32,
    ) -> Result<BTreeSet<(TriCoord, TriCoord)>, GeometryError> {
        let cells = tri::ball(self.tree, level);
        let mut sides: Vec<(TriCoord, DiscPoint, DiscPoint)> = Vec::with_capacity(cells.len() * 3);
        for &c in &cells {
            let patch = self.tri_patch(c)?;
            for (a, b) in patch.sides() {
                sides.push((c, a, b));
            }
        }

        // Bucket by quantized side midpoint; matching sides land in the
        // same or an adjacent bucket.
        const QUANTUM: f64 = 5e-7;
        let key = |p: DiscPoint, q: DiscPoint| -> (i64, i64) {
            (
                (((p.x + q.x) / 2.0) / QUANTUM).round() as i64,
                (((p.y + q.y) / 2.0) / QUANTUM).round() as i64,
            )
        };
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, &(_, a, b)) in sides.iter().enumerate() {
            buckets.entry(key(a, b)).or_default().push(i);
        }

        let same_side = |i: usize, j: usize| -> bool {
            let (_, a1, b1) = sides[i];
            let (_, a2, b2) = sides[j];
            (a1.euclidean_distance(a2) < TOLERANCE && b1.euclidean_distance(b2) < TOLERANCE)
                || (a1.euclidean_distance(b2) < TOLERANCE && b1.euclidean_distance(a2) < TOLERANCE)
        };

        let mut pairs = BTreeSet::new();
        for (i, &(ci, a, b)) in sides.iter().enumerate() {
            let (kx, ky) = key(a, b);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    let Some(candidates) = buckets.get(&(kx + dx, ky + dy)) else {
                        continue;
                    };
                    for &j in candidates {
                        let cj = sides[j].0;
                        if cj == ci || !same_side(i, j) {
                            continue;
                        }
                        let pair = if ci < cj { (ci, cj) } else { (cj, ci) };
                        pairs.insert(pair);
                    }
                }
            }
        }
        Ok(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn midpoint_of_coincident_points() {
        let p = DiscPoint::new(0.3, -0.2).unwrap();
        assert_eq!(hyper_midpoint(p, p), p);
    }

    #[test]
    fn midpoint_on_a_diameter() {
        // d(0, r) = 2 artanh r; artanh 0.6 = ln 2, so the midpoint sits
        // at tanh(ln sqrt 2) = 1/3 exactly.
        let m = hyper_midpoint(DiscPoint::ORIGIN, DiscPoint::new(0.6, 0.0).unwrap());
        assert_close(m.x, 1.0 / 3.0, 1e-12);
        assert_close(m.y, 0.0, 1e-12);
    }

    #[test]
    fn midpoint_is_equidistant() {
        let a = DiscPoint::new(-0.42, 0.17).unwrap();
        let b = DiscPoint::new(0.55, 0.61).unwrap();
        let m = hyper_midpoint(a, b);
        assert_close(hyper_distance(a, m), hyper_distance(m, b), 1e-12);
        assert_close(
            hyper_distance(a, m) + hyper_distance(m, b),
            hyper_distance(a, b),
            1e-12,
        );
        let m2 = hyper_midpoint(b, a);
        assert!(m.euclidean_distance(m2) < 1e-12);
    }

    #[test]
    fn isometries_preserve_distance() {
        let iso = Isometry::rotation(1.1)
            .compose(&Isometry::translation_x(0.8))
            .compose(&Isometry::reflection_x())
            .compose(&Isometry::translation_x(-0.3));
        assert!(iso.is_orientation_reversing());
        let pts = [
            DiscPoint::new(0.0, 0.0).unwrap(),
            DiscPoint::new(0.7, -0.2).unwrap(),
            DiscPoint::new(-0.55, 0.66).unwrap(),
            DiscPoint::new(0.01, 0.93).unwrap(),
        ];
        for &p in &pts {
            for &q in &pts {
                assert_close(
                    hyper_distance(iso.apply(p), iso.apply(q)),
                    hyper_distance(p, q),
                    TOLERANCE,
                );
            }
        }
    }

    #[test]
    fn inverse_undoes() {
        let iso = Isometry::rotation(0.4).compose(&Isometry::translation_x(1.2));
        let p = DiscPoint::new(0.3, 0.5).unwrap();
        let back = iso.inverse().apply(iso.apply(p));
        assert!(p.euclidean_distance(back) < 1e-12);
        let flip = iso.compose(&Isometry::reflection_x());
        let back2 = flip.inverse().apply(flip.apply(p));
        assert!(p.euclidean_distance(back2) < 1e-12);
    }

    #[test]
    fn central_vertex_radius() {
        let tree = SectorTree::new();
        let mut emb = Embedder::new(&tree, 8);
        let (center, vertices) = emb.embed_heptagon(HeptaCoord::CENTRAL).unwrap();
        assert_eq!(center, DiscPoint::ORIGIN);
        // tanh(R/2) for cosh R = cot(pi/7) cot(pi/3).
        let expected = (emb.metrics().circumradius / 2.0).tanh();
        assert_close(expected, 0.300_742_6, 1e-6);
        for v in vertices {
            assert_close((v.x * v.x + v.y * v.y).sqrt(), expected, TOLERANCE);
        }
    }

    #[test]
    fn all_sides_equal() {
        let tree = SectorTree::new();
        let mut emb = Embedder::new(&tree, 8);
        for h in [HeptaCoord::CENTRAL, HeptaCoord::root(4), HeptaCoord { sector: 2, nu: 7 }] {
            let (_, v) = emb.embed_heptagon(h).unwrap();
            let side = hyper_distance(v[0], v[1]);
            for k in 0..7 {
                assert_close(hyper_distance(v[k], v[(k + 1) % 7]), side, TOLERANCE);
            }
        }
    }

    #[test]
    fn place_two_patch_touches_the_center() {
        let tree = SectorTree::new();
        let mut emb = Embedder::new(&tree, 8);
        for h in [HeptaCoord::CENTRAL, HeptaCoord::root(6), HeptaCoord { sector: 1, nu: 12 }] {
            let (center, _) = emb.embed_heptagon(h).unwrap();
            for slice in 1..=7 {
                let patch = emb.tri_patch(TriCoord { hepta: h, slice, place: 2 }).unwrap();
                assert!(patch.vertices[2].euclidean_distance(center) < TOLERANCE);
            }
        }
    }

    #[test]
    fn medial_patch_vertices_are_midpoints() {
        let tree = SectorTree::new();
        let mut emb = Embedder::new(&tree, 8);
        let h = HeptaCoord::root(3);
        let (center, v) = emb.embed_heptagon(h).unwrap();
        let slice = 5u8;
        let p0 = v[4];
        let p1 = v[5];
        let medial = emb.tri_patch(TriCoord { hepta: h, slice, place: 3 }).unwrap();
        let expected = [
            hyper_midpoint(p1, center),
            hyper_midpoint(p0, center),
            hyper_midpoint(p0, p1),
        ];
        for (got, want) in medial.vertices.iter().zip(expected.iter()) {
            assert!(got.euclidean_distance(*want) < TOLERANCE);
        }
    }

    #[test]
    fn patches_tile_the_heptagon() {
        // Angle defect of the {7,3} heptagon: 5 pi - 7 * (2 pi / 3) = pi / 3.
        let tree = SectorTree::new();
        let mut emb = Embedder::new(&tree, 8);
        for h in [HeptaCoord::CENTRAL, HeptaCoord { sector: 5, nu: 3 }] {
            let mut total = 0.0;
            for t in tri::cells_of(h) {
                total += hyper_area(&emb.tri_patch(t).unwrap().vertices);
            }
            assert_close(total, PI / 3.0, 1e-6);
        }
    }

    #[test]
    fn all_points_stay_inside_the_disc() {
        let tree = SectorTree::new();
        let mut emb = Embedder::new(&tree, 6);
        for t in tri::ball(&tree, 4) {
            for v in emb.tri_patch(t).unwrap().vertices {
                assert!(v.x * v.x + v.y * v.y <= 1.0 - 1e-12);
            }
        }
    }

    #[test]
    fn level_budget_is_enforced() {
        let tree = SectorTree::new();
        let mut emb = Embedder::new(&tree, 2);
        let far = HeptaCoord { sector: 1, nu: 40 }; // level 4
        assert!(matches!(
            emb.placement(far),
            Err(GeometryError::LevelBudget { .. })
        ));
    }

    #[test]
    fn oracle_matches_navigation_at_level_two() {
        let tree = SectorTree::new();
        let mut emb = Embedder::new(&tree, 4);
        let geometric = emb.geometric_adjacency(2).unwrap();
        let mut combinatorial = BTreeSet::new();
        let in_ball = |h: HeptaCoord| {
            h.is_central() || tree.level_of(h.nu).unwrap() <= 2
        };
        for t in tri::ball(&tree, 2) {
            for n in tri::neighbors(&tree, t) {
                if in_ball(n.hepta) {
                    combinatorial.insert(if t < n { (t, n) } else { (n, t) });
                }
            }
        }
        assert_eq!(geometric, combinatorial);
    }
}
