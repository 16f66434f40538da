//! Essential points and teaching sets of convex-lattice-set functions,
//! computed from the geometry of the 1-set rather than by class sweeps.
//!
//! For a function whose 1-set is a convex lattice set, the essential points
//! are the vertices of the 1-set's hull together with the "attachable"
//! 0-points (those whose hull-join with the 1-set captures no other
//! 0-point), and that set is the unique minimal teaching set within the
//! class. The brute-force module provides the oracles these claims are
//! tested against.

use crate::classes::is_polytopal;
use crate::error::{Error, Result};
use crate::geometry::{
    clip_halfplanes, convex_hull_2d, cot_half_angle_sum, edge_system, grid_points_in_hull,
    hull_of_pts, perimeter_and_min_angle, point_in_hull, ring_perimeter, Halfplane,
    PolygonKind, Pt,
};
use crate::grid::{GridFunction, LatticePoint};

/// Essential-point census of a function together with the teaching facts
/// that follow from it.
#[derive(Debug, Clone)]
pub struct TeachingReport {
    /// Essential points, lexicographically sorted.
    pub essential: Vec<LatticePoint>,
    /// Minimum teaching-set size.
    pub sigma: usize,
    /// Number of inclusion-minimal teaching sets.
    pub j_count: u64,
    /// Whether the essential set is itself the unique minimal teaching set.
    pub is_unique_minimal: bool,
}

fn require_polytopal(f: &GridFunction) -> Result<()> {
    if is_polytopal(f) {
        Ok(())
    } else {
        Err(Error::NotInClass)
    }
}

/// The 0-points `x` such that the convex hull of the 1-set plus `x` captures
/// no 0-point other than `x` itself. Attaching such a point (and only such a
/// point) to the 1-set keeps it a convex lattice set.
pub fn attachable_zeros(f: &GridFunction) -> Result<Vec<LatticePoint>> {
    require_polytopal(f)?;
    let ones = f.ones_points();
    if ones.is_empty() {
        return Err(Error::EmptyInput("attachable zeros need a nonempty 1-set"));
    }
    let grid = f.grid();
    let mut out = Vec::new();
    if grid.d() == 2 {
        let hull = convex_hull_2d(&ones)?;
        let vert: Vec<Pt> = hull.vertices().to_vec();
        let mut joined = Vec::with_capacity(vert.len() + 1);
        for x in f.zeros_points() {
            joined.clear();
            joined.extend_from_slice(&vert);
            joined.push(x.as_xy()?);
            let h2 = hull_of_pts(&joined).expect("nonempty point set has a hull");
            let clean = grid_points_in_hull(grid, &h2)
                .iter()
                .all(|q| *q == x || f.value(q).unwrap());
            if clean {
                out.push(x);
            }
        }
    } else {
        let zeros = f.zeros_points();
        let mut joined = ones.clone();
        for x in &zeros {
            joined.push(x.clone());
            let clean = zeros
                .iter()
                .filter(|y| *y != x)
                .all(|y| !point_in_hull(y, &joined).unwrap());
            if clean {
                out.push(x.clone());
            }
            joined.pop();
        }
    }
    Ok(out)
}

/// The grid points gained when every edge inequality of the 1-set's hull is
/// relaxed by one (the hull must have positive area). The result is sorted
/// lexicographically and excludes the hull's own points.
pub fn delta_region(f: &GridFunction) -> Result<Vec<LatticePoint>> {
    let grid = f.grid();
    if grid.d() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: grid.d(),
        });
    }
    let ones = f.ones_points();
    if ones.is_empty() {
        return Err(Error::EmptyInput("the relaxed region needs a nonempty 1-set"));
    }
    let hull = convex_hull_2d(&ones)?;
    if hull.kind() != PolygonKind::Polygon {
        return Err(Error::Degenerate(
            "the relaxed region requires a 1-set hull with positive area".into(),
        ));
    }
    let relaxed: Vec<Halfplane> = edge_system(&hull)?.iter().map(Halfplane::relaxed).collect();
    let mut out = Vec::new();
    for p in grid.points() {
        let q = p.as_xy()?;
        if relaxed.iter().all(|h| h.satisfies(q)) && !hull.contains(q) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Essential points of a convex-lattice-set function, from the structure of
/// its 1-set: hull vertices plus attachable 0-points. The essential set is
/// the unique minimal teaching set within the class of such functions, so
/// the report also carries `sigma` and the census count.
pub fn essential_polytopal(f: &GridFunction) -> Result<TeachingReport> {
    require_polytopal(f)?;
    let grid = f.grid();
    let mut essential: Vec<LatticePoint>;
    if f.count_ones() == 0 {
        // every flip creates a one-point 1-set, so every point is essential
        essential = grid.points().collect();
    } else {
        let ones = f.ones_points();
        let mut vertices: Vec<LatticePoint> = if grid.d() == 2 {
            convex_hull_2d(&ones)?.vertex_points()
        } else {
            ones.iter()
                .filter(|x| {
                    let others: Vec<LatticePoint> =
                        ones.iter().filter(|y| y != x).cloned().collect();
                    !point_in_hull(x, &others).unwrap()
                })
                .cloned()
                .collect()
        };
        essential = attachable_zeros(f)?;
        essential.append(&mut vertices);
        essential.sort();
    }
    let sigma = essential.len();
    Ok(TeachingReport {
        essential,
        sigma,
        j_count: 1,
        is_unique_minimal: true,
    })
}

/// Does `t` teach `f` among convex-lattice-set functions? Since the
/// essential set is the unique minimal teaching set, this is exactly the
/// question of whether `t` covers it.
pub fn is_teaching_polytopal(f: &GridFunction, t: &[LatticePoint]) -> Result<bool> {
    let grid = f.grid();
    for p in t {
        grid.check_point(p)?;
    }
    let essential = essential_polytopal(f)?.essential;
    let have: std::collections::HashSet<&LatticePoint> = t.iter().collect();
    Ok(essential.iter().all(|e| have.contains(e)))
}

/// Essential points of a function with a one-point 1-set `{x'}`, within any
/// class of conjunctions of at least two threshold functions: `x'` itself
/// plus every point whose coordinate differences from `x'` have greatest
/// common divisor one. This set is also the unique teaching set.
pub fn singleton_essential(f: &GridFunction, k: u32) -> Result<Vec<LatticePoint>> {
    if k < 2 {
        return Err(Error::Precondition(
            "the one-point characterization needs conjunctions of at least two halfspaces".into(),
        ));
    }
    let grid = f.grid();
    if grid.d() < 2 {
        return Err(Error::Precondition(
            "the one-point characterization needs dimension at least two".into(),
        ));
    }
    if f.count_ones() != 1 {
        return Err(Error::Precondition(
            "the 1-set must consist of exactly one point".into(),
        ));
    }
    let center = f.ones_points().remove(0);
    let mut out = Vec::new();
    for p in grid.points() {
        let g = p
            .coords()
            .iter()
            .zip(center.coords())
            .fold(0i64, |acc, (a, b)| num::integer::gcd(acc, (a - b).abs()));
        if g == 1 || p == center {
            out.push(p);
        }
    }
    Ok(out)
}

/// Size and perimeter bounds for the essential set of a positive-area
/// convex-lattice-set function.
#[derive(Debug, Clone)]
pub struct PerimeterReport {
    /// Number of essential points.
    pub essential_size: usize,
    /// Perimeter of the 1-set's hull.
    pub hull_perimeter: f64,
    /// Perimeter of the polygon cut out by the relaxed edge system.
    pub relaxed_perimeter: f64,
    /// Sum of `cot(q/2)` over the hull's interior angles.
    pub cot_half_sum: f64,
    /// Smallest interior angle of the hull (radians).
    pub min_angle: f64,
    /// `min(n, perimeter + 1/min_angle)`.
    pub size_bound: f64,
    /// `essential_size / size_bound`.
    pub size_ratio: f64,
    /// Whether the relaxed perimeter stays within
    /// `hull_perimeter + 2 * cot_half_sum` (up to 1e-9).
    pub relaxed_ok: bool,
}

/// Check the perimeter growth law and the essential-set size bound on one
/// positive-area convex-lattice-set function.
///
/// The relaxed polygon is computed exactly by rational halfplane clipping;
/// the clip window is padded by `2 / sin(min angle)`, which bounds how far
/// any vertex can travel when both of its edges are relaxed by one.
pub fn perimeter_bound_check(f: &GridFunction) -> Result<PerimeterReport> {
    require_polytopal(f)?;
    let grid = f.grid();
    if grid.d() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: grid.d(),
        });
    }
    let ones = f.ones_points();
    if ones.is_empty() {
        return Err(Error::EmptyInput("the perimeter law needs a nonempty 1-set"));
    }
    let hull = convex_hull_2d(&ones)?;
    if hull.kind() != PolygonKind::Polygon {
        return Err(Error::Degenerate(
            "the perimeter law requires a 1-set hull with positive area".into(),
        ));
    }
    let (hull_perimeter, min_angle) = perimeter_and_min_angle(&hull)?;
    let cot_half_sum = cot_half_angle_sum(&hull)?;
    let gained = delta_region(f)?;
    let essential_size = hull.vertices().len() + gained.len();
    let relaxed: Vec<Halfplane> = edge_system(&hull)?.iter().map(Halfplane::relaxed).collect();
    let pad = (grid.n() as f64 + 2.0 / min_angle.sin() + 8.0).ceil() as i64;
    let ring = clip_halfplanes(&relaxed, pad);
    let relaxed_perimeter = ring_perimeter(&ring);
    let relaxed_ok = relaxed_perimeter <= hull_perimeter + 2.0 * cot_half_sum + 1e-9;
    let n = grid.n() as f64;
    let size_bound = n.min(hull_perimeter + 1.0 / min_angle);
    Ok(PerimeterReport {
        essential_size,
        hull_perimeter,
        relaxed_perimeter,
        cot_half_sum,
        min_angle,
        size_bound,
        size_ratio: essential_size as f64 / size_bound,
        relaxed_ok,
    })
}
