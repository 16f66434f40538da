//! Exact planar lattice geometry: convex hulls, edge inequality systems,
//! boundary/interior lattice counts, and rational halfplane clipping.
//!
//! All predicates are decided in integer arithmetic (cross products, GCD
//! counts) or exact rational arithmetic ([`point_in_hull`]); floating point
//! appears only in explicitly approximate quantities (perimeter, angles).

mod feasibility;

pub use feasibility::{hulls_intersect, point_in_hull};

use crate::error::{Error, Result};
use crate::grid::{GridSpec, LatticePoint};
use num::rational::BigRational;
use num::{BigInt, ToPrimitive, Zero};

pub type Pt = (i64, i64);

#[inline]
pub(crate) fn cross(o: Pt, a: Pt, b: Pt) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn gcd(a: i64, b: i64) -> i64 {
    num::integer::gcd(a, b)
}

/// Shape of a convex hull of lattice points.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolygonKind {
    Point,
    Segment,
    Polygon,
}

/// Convex hull of a nonempty planar lattice point set.
///
/// Vertices are stored counterclockwise starting from the lexicographically
/// smallest vertex, with no three consecutive vertices collinear; one vertex
/// means a single point, two a segment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticePolygon {
    vertices: Vec<Pt>,
}

impl LatticePolygon {
    pub fn kind(&self) -> PolygonKind {
        match self.vertices.len() {
            1 => PolygonKind::Point,
            2 => PolygonKind::Segment,
            _ => PolygonKind::Polygon,
        }
    }

    pub fn vertices(&self) -> &[Pt] {
        &self.vertices
    }

    pub fn vertex_points(&self) -> Vec<LatticePoint> {
        self.vertices
            .iter()
            .map(|&(x, y)| LatticePoint::xy(x, y))
            .collect()
    }

    /// Directed edges of the boundary; empty for a single point, one edge for
    /// a segment, the full ring otherwise.
    pub fn edges(&self) -> Vec<(Pt, Pt)> {
        match self.kind() {
            PolygonKind::Point => vec![],
            PolygonKind::Segment => vec![(self.vertices[0], self.vertices[1])],
            PolygonKind::Polygon => {
                let k = self.vertices.len();
                (0..k)
                    .map(|i| (self.vertices[i], self.vertices[(i + 1) % k]))
                    .collect()
            }
        }
    }

    /// Twice the enclosed area (shoelace); 0 for points and segments.
    pub fn twice_area(&self) -> i64 {
        let v = &self.vertices;
        let k = v.len();
        if k < 3 {
            return 0;
        }
        let mut s = 0i64;
        for i in 0..k {
            let (x1, y1) = v[i];
            let (x2, y2) = v[(i + 1) % k];
            s += x1 * y2 - x2 * y1;
        }
        debug_assert!(s > 0, "vertices must be counterclockwise");
        s
    }

    /// Closed membership test, exact.
    pub fn contains(&self, p: Pt) -> bool {
        match self.kind() {
            PolygonKind::Point => self.vertices[0] == p,
            PolygonKind::Segment => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                cross(a, b, p) == 0
                    && p.0 >= a.0.min(b.0)
                    && p.0 <= a.0.max(b.0)
                    && p.1 >= a.1.min(b.1)
                    && p.1 <= a.1.max(b.1)
            }
            PolygonKind::Polygon => {
                let k = self.vertices.len();
                (0..k).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % k], p) >= 0)
            }
        }
    }

    /// Strict interior membership; always false for points and segments.
    pub fn contains_strictly(&self, p: Pt) -> bool {
        if self.kind() != PolygonKind::Polygon {
            return false;
        }
        let k = self.vertices.len();
        (0..k).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % k], p) > 0)
    }

    pub fn bounding_box(&self) -> (Pt, Pt) {
        let xs = self.vertices.iter().map(|p| p.0);
        let ys = self.vertices.iter().map(|p| p.1);
        (
            (xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            (xs.max().unwrap(), ys.max().unwrap()),
        )
    }
}

/// Convex hull of planar lattice points by monotone chain, exact.
pub fn convex_hull_2d(points: &[LatticePoint]) -> Result<LatticePolygon> {
    let mut pts = Vec::with_capacity(points.len());
    for p in points {
        pts.push(p.as_xy()?);
    }
    hull_of_pts(&pts).ok_or(Error::EmptyInput("convex hull of no points"))
}

/// Monotone-chain hull over raw coordinate pairs; `None` for empty input.
pub(crate) fn hull_of_pts(points: &[Pt]) -> Option<LatticePolygon> {
    if points.is_empty() {
        return None;
    }
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() == 1 {
        return Some(LatticePolygon { vertices: pts });
    }
    let mut lower: Vec<Pt> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Pt> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    // Drop the duplicated chain endpoints; collinear sets collapse to the two
    // extreme points.
    lower.pop();
    upper.pop();
    let mut vertices = lower;
    vertices.extend(upper);
    if vertices.len() == 2 && vertices[0] == vertices[1] {
        vertices.pop();
    }
    Some(LatticePolygon { vertices })
}

/// Number of lattice points on the closed segment `[a, b]`
/// (`gcd(|dx|,|dy|,...) + 1`; `1` when `a == b`). Works in any dimension.
pub fn segment_lattice_count(a: &LatticePoint, b: &LatticePoint) -> Result<u64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let g = a
        .coords()
        .iter()
        .zip(b.coords())
        .fold(0i64, |acc, (&x, &y)| gcd(acc, (x - y).abs()));
    Ok(g as u64 + 1)
}

/// Lattice points strictly between `a` and `b` on their segment.
pub(crate) fn strictly_between(a: Pt, b: Pt) -> Vec<Pt> {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let g = gcd(dx.abs(), dy.abs());
    if g <= 1 {
        return vec![];
    }
    let (sx, sy) = (dx / g, dy / g);
    (1..g).map(|t| (a.0 + sx * t, a.1 + sy * t)).collect()
}

/// Boundary and interior lattice point sets of a hull, plus twice its area.
///
/// When the area is positive the counts are asserted to satisfy Pick's
/// identity `2A = 2i + b - 2` exactly.
#[derive(Clone, Debug)]
pub struct LatticeCounts {
    pub boundary: Vec<LatticePoint>,
    pub interior: Vec<LatticePoint>,
    pub twice_area: i64,
}

impl LatticeCounts {
    pub fn total(&self) -> usize {
        self.boundary.len() + self.interior.len()
    }
}

/// Exact boundary/interior lattice point sets of a hull.
pub fn lattice_counts(poly: &LatticePolygon) -> LatticeCounts {
    match poly.kind() {
        PolygonKind::Point => LatticeCounts {
            boundary: poly.vertex_points(),
            interior: vec![],
            twice_area: 0,
        },
        PolygonKind::Segment => {
            let (a, b) = (poly.vertices[0], poly.vertices[1]);
            let mut boundary = vec![a];
            boundary.extend(strictly_between(a, b));
            boundary.push(b);
            boundary.sort_unstable();
            LatticeCounts {
                boundary: boundary
                    .into_iter()
                    .map(|(x, y)| LatticePoint::xy(x, y))
                    .collect(),
                interior: vec![],
                twice_area: 0,
            }
        }
        PolygonKind::Polygon => {
            let mut boundary: Vec<Pt> = Vec::new();
            for (u, v) in poly.edges() {
                boundary.push(u);
                boundary.extend(strictly_between(u, v));
            }
            boundary.sort_unstable();
            boundary.dedup();
            let ((x0, y0), (x1, y1)) = poly.bounding_box();
            let mut interior: Vec<Pt> = Vec::new();
            for x in x0..=x1 {
                for y in y0..=y1 {
                    if poly.contains_strictly((x, y)) {
                        interior.push((x, y));
                    }
                }
            }
            let twice_area = poly.twice_area();
            assert_eq!(
                twice_area,
                2 * interior.len() as i64 + boundary.len() as i64 - 2,
                "Pick identity must hold exactly for {:?}",
                poly.vertices
            );
            LatticeCounts {
                boundary: boundary
                    .into_iter()
                    .map(|(x, y)| LatticePoint::xy(x, y))
                    .collect(),
                interior: interior
                    .into_iter()
                    .map(|(x, y)| LatticePoint::xy(x, y))
                    .collect(),
                twice_area,
            }
        }
    }
}

/// Closed halfplane `a1*x + a2*y <= a0` with primitive normal
/// (`gcd(|a1|,|a2|) = 1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Halfplane {
    pub a1: i64,
    pub a2: i64,
    pub a0: i64,
}

impl Halfplane {
    pub fn new(a1: i64, a2: i64, a0: i64) -> Result<Self> {
        if gcd(a1.abs(), a2.abs()) != 1 {
            return Err(Error::Degenerate(format!(
                "halfplane normal ({a1},{a2}) is not primitive"
            )));
        }
        Ok(Halfplane { a1, a2, a0 })
    }

    #[inline]
    pub fn eval(&self, p: Pt) -> i64 {
        self.a1 * p.0 + self.a2 * p.1
    }

    #[inline]
    pub fn satisfies(&self, p: Pt) -> bool {
        self.eval(p) <= self.a0
    }

    /// Same boundary line, opposite side.
    pub fn flipped(&self) -> Halfplane {
        Halfplane {
            a1: -self.a1,
            a2: -self.a2,
            a0: -self.a0,
        }
    }

    /// Boundary moved outward by one lattice step of the normal form
    /// (right-hand side increased by 1).
    pub fn relaxed(&self) -> Halfplane {
        Halfplane {
            a0: self.a0 + 1,
            ..*self
        }
    }
}

/// Edge inequality system of a hull: one outward halfplane per polygon edge,
/// or the two opposite halfplanes of the carrier line for a segment. Every
/// point of the hull satisfies every returned halfplane, with equality
/// exactly on the corresponding edge.
pub fn edge_system(poly: &LatticePolygon) -> Result<Vec<Halfplane>> {
    match poly.kind() {
        PolygonKind::Point => Err(Error::Degenerate(
            "a single point has no edge system".into(),
        )),
        PolygonKind::Segment => {
            let (u, v) = (poly.vertices[0], poly.vertices[1]);
            let (dx, dy) = (v.0 - u.0, v.1 - u.1);
            let g = gcd(dx.abs(), dy.abs());
            let hp = Halfplane {
                a1: dy / g,
                a2: -dx / g,
                a0: (dy / g) * u.0 + (-dx / g) * u.1,
            };
            Ok(vec![hp, hp.flipped()])
        }
        PolygonKind::Polygon => poly
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (dx, dy) = (v.0 - u.0, v.1 - u.1);
                let g = gcd(dx.abs(), dy.abs());
                let (a1, a2) = (dy / g, -dx / g);
                Ok(Halfplane {
                    a1,
                    a2,
                    a0: a1 * u.0 + a2 * u.1,
                })
            })
            .collect(),
    }
}

/// Perimeter and minimum interior angle (radians) of a positive-area polygon.
/// Exact up to floating-point rounding; callers compare with tolerance 1e-9.
pub fn perimeter_and_min_angle(poly: &LatticePolygon) -> Result<(f64, f64)> {
    if poly.kind() != PolygonKind::Polygon {
        return Err(Error::Degenerate(
            "perimeter/angle requires positive area".into(),
        ));
    }
    let v = poly.vertices();
    let k = v.len();
    let mut perimeter = 0.0;
    let mut min_angle = f64::INFINITY;
    for i in 0..k {
        let prev = v[(i + k - 1) % k];
        let cur = v[i];
        let next = v[(i + 1) % k];
        let e = (next.0 - cur.0, next.1 - cur.1);
        perimeter += ((e.0 * e.0 + e.1 * e.1) as f64).sqrt();
        let u = (prev.0 - cur.0, prev.1 - cur.1);
        let w = e;
        let dot = (u.0 * w.0 + u.1 * w.1) as f64;
        let crs = (u.0 * w.1 - u.1 * w.0).abs() as f64;
        let angle = crs.atan2(dot);
        min_angle = min_angle.min(angle);
    }
    Ok((perimeter, min_angle))
}

/// Sum over vertices of `cot(q_i / 2)` for the interior angles `q_i`,
/// computed as `(|u||w| + u.w) / |u x w|` per vertex (no trig calls).
pub fn cot_half_angle_sum(poly: &LatticePolygon) -> Result<f64> {
    if poly.kind() != PolygonKind::Polygon {
        return Err(Error::Degenerate(
            "angle sum requires positive area".into(),
        ));
    }
    let v = poly.vertices();
    let k = v.len();
    let mut sum = 0.0;
    for i in 0..k {
        let prev = v[(i + k - 1) % k];
        let cur = v[i];
        let next = v[(i + 1) % k];
        let u = (prev.0 - cur.0, prev.1 - cur.1);
        let w = (next.0 - cur.0, next.1 - cur.1);
        let dot = (u.0 * w.0 + u.1 * w.1) as f64;
        let crs = (u.0 * w.1 - u.1 * w.0).abs() as f64;
        let lu = (u.0 * u.0 + u.1 * u.1) as f64;
        let lw = (w.0 * w.0 + w.1 * w.1) as f64;
        sum += ((lu * lw).sqrt() + dot) / crs;
    }
    Ok(sum)
}

/// Exact test for closed-segment intersection (shared point counts).
pub fn segments_intersect(p: (Pt, Pt), q: (Pt, Pt)) -> bool {
    let d1 = cross(q.0, q.1, p.0).signum();
    let d2 = cross(q.0, q.1, p.1).signum();
    let d3 = cross(p.0, p.1, q.0).signum();
    let d4 = cross(p.0, p.1, q.1).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    let on = |a: Pt, b: Pt, c: Pt| {
        cross(a, b, c) == 0
            && c.0 >= a.0.min(b.0)
            && c.0 <= a.0.max(b.0)
            && c.1 >= a.1.min(b.1)
            && c.1 <= a.1.max(b.1)
    };
    on(q.0, q.1, p.0) || on(q.0, q.1, p.1) || on(p.0, p.1, q.0) || on(p.0, p.1, q.1)
}

/// Exact disjointness of two hulls (closed sets share no point).
pub fn hulls_disjoint(a: &LatticePolygon, b: &LatticePolygon) -> bool {
    if a.vertices().iter().any(|&v| b.contains(v)) {
        return false;
    }
    if b.vertices().iter().any(|&v| a.contains(v)) {
        return false;
    }
    for ea in a.edges() {
        for eb in b.edges() {
            if segments_intersect(ea, eb) {
                return false;
            }
        }
    }
    true
}

/// All grid points lying in the hull (closed), in lexicographic order.
pub fn grid_points_in_hull(grid: GridSpec, poly: &LatticePolygon) -> Vec<LatticePoint> {
    let n = grid.n() as i64;
    let ((x0, y0), (x1, y1)) = poly.bounding_box();
    let (x0, y0) = (x0.max(0), y0.max(0));
    let (x1, y1) = (x1.min(n - 1), y1.min(n - 1));
    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            if poly.contains((x, y)) {
                out.push(LatticePoint::xy(x, y));
            }
        }
    }
    out
}

pub type RatPoint = (BigRational, BigRational);

/// Intersection of closed halfplanes, clipped against the box
/// `[-bound, bound]^2`, as a counterclockwise rational-vertex ring (possibly
/// empty). Exact (Sutherland–Hodgman with rational intersections).
pub fn clip_halfplanes(halfplanes: &[Halfplane], bound: i64) -> Vec<RatPoint> {
    let r = |v: i64| BigRational::from_integer(BigInt::from(v));
    let mut ring: Vec<RatPoint> = vec![
        (r(-bound), r(-bound)),
        (r(bound), r(-bound)),
        (r(bound), r(bound)),
        (r(-bound), r(bound)),
    ];
    for hp in halfplanes {
        if ring.is_empty() {
            break;
        }
        let a1 = r(hp.a1);
        let a2 = r(hp.a2);
        let a0 = r(hp.a0);
        let eval = |p: &RatPoint| &a1 * &p.0 + &a2 * &p.1;
        let mut out: Vec<RatPoint> = Vec::with_capacity(ring.len() + 1);
        for i in 0..ring.len() {
            let cur = &ring[i];
            let nxt = &ring[(i + 1) % ring.len()];
            let ec = eval(cur);
            let en = eval(nxt);
            let cur_in = ec <= a0;
            let nxt_in = en <= a0;
            if cur_in {
                out.push(cur.clone());
            }
            if cur_in != nxt_in {
                // boundary crossing: cur + t*(nxt - cur) with a.(point) = a0
                let t = (&a0 - &ec) / (&en - &ec);
                out.push((
                    &cur.0 + &t * (&nxt.0 - &cur.0),
                    &cur.1 + &t * (&nxt.1 - &cur.1),
                ));
            }
        }
        // collapse duplicate consecutive vertices introduced by touching cases
        out.dedup();
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        ring = out;
    }
    ring
}

/// Perimeter of a rational-vertex ring, in floating point.
pub fn ring_perimeter(ring: &[RatPoint]) -> f64 {
    if ring.len() < 2 {
        return 0.0;
    }
    let mut p = 0.0;
    for i in 0..ring.len() {
        let a = &ring[i];
        let b = &ring[(i + 1) % ring.len()];
        let dx = (&b.0 - &a.0).to_f64().unwrap_or(0.0);
        let dy = (&b.1 - &a.1).to_f64().unwrap_or(0.0);
        p += (dx * dx + dy * dy).sqrt();
    }
    p
}

/// True when every coordinate of every ring vertex is integral (used to
/// sanity-check clips that should reproduce integer polygons).
pub fn ring_is_integral(ring: &[RatPoint]) -> bool {
    ring.iter().all(|(x, y)| x.is_integer() && y.is_integer())
}

/// Signed doubled area of a rational ring (positive when counterclockwise).
pub fn ring_twice_area(ring: &[RatPoint]) -> BigRational {
    let mut s = BigRational::zero();
    for i in 0..ring.len() {
        let a = &ring[i];
        let b = &ring[(i + 1) % ring.len()];
        s += &a.0 * &b.1 - &b.0 * &a.1;
    }
    s
}
