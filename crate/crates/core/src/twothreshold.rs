//! Structure of planar threshold functions and their pairwise conjunctions:
//! essential points split by value, separating lines, defining pairs, a
//! nine-point teaching-set construction for conjunctions whose 1-set touches
//! the grid border, and a parametric family of conjunctions whose number of
//! minimal teaching sets grows quadratically.

use crate::classes::{is_threshold, EnumeratedClass};
use crate::error::{Error, Result};
use crate::geometry::{
    grid_points_in_hull, hull_of_pts, hulls_disjoint, lattice_counts, segment_lattice_count,
    LatticePolygon, Pt,
};
use crate::grid::{ClassKind, GridFunction, GridSpec, LatticePoint};

fn to_pts(points: &[LatticePoint]) -> Result<Vec<Pt>> {
    points.iter().map(|p| p.as_xy()).collect()
}

/// Essential points of a non-constant planar threshold function, split as
/// `(zero-valued, one-valued)` and sorted lexicographically.
///
/// Only hull vertices of either value class can be essential: flipping any
/// other point leaves it inside both hulls, which then overlap. Each hull
/// vertex is tested by rebuilding the two hulls after the flip.
pub fn threshold_essential(
    f: &GridFunction,
) -> Result<(Vec<LatticePoint>, Vec<LatticePoint>)> {
    let grid = f.grid();
    if grid.d() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: grid.d(),
        });
    }
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    if !is_threshold(f) {
        return Err(Error::NotInClass);
    }
    let ones = to_pts(&f.ones_points())?;
    let zeros = to_pts(&f.zeros_points())?;
    let flip_stays_threshold = |from: &[Pt], to: &[Pt], x: Pt| -> bool {
        let reduced: Vec<Pt> = from.iter().copied().filter(|&p| p != x).collect();
        let mut grown = to.to_vec();
        grown.push(x);
        match (hull_of_pts(&reduced), hull_of_pts(&grown)) {
            (Some(a), Some(b)) => hulls_disjoint(&a, &b),
            _ => true, // one side became empty: a constant, still a threshold
        }
    };
    let mut s1: Vec<Pt> = hull_of_pts(&ones)
        .expect("non-constant function has 1-points")
        .vertices()
        .iter()
        .copied()
        .filter(|&v| flip_stays_threshold(&ones, &zeros, v))
        .collect();
    let mut s0: Vec<Pt> = hull_of_pts(&zeros)
        .expect("non-constant function has 0-points")
        .vertices()
        .iter()
        .copied()
        .filter(|&v| flip_stays_threshold(&zeros, &ones, v))
        .collect();
    s0.sort_unstable();
    s1.sort_unstable();
    debug_assert!((1..=2).contains(&s0.len()) && (1..=2).contains(&s1.len()));
    let lift = |v: Vec<Pt>| v.into_iter().map(LatticePoint::from).collect();
    Ok((lift(s0), lift(s1)))
}

/// A halfplane `a1*x1 + a2*x2 <= a0` with a primitive normal, describing one
/// value class of a threshold function; its boundary line carries the
/// essential points of that class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparationLine {
    pub a1: i64,
    pub a2: i64,
    pub a0: i64,
}

impl SeparationLine {
    pub fn satisfies(&self, p: Pt) -> bool {
        self.a1 * p.0 + self.a2 * p.1 <= self.a0
    }

    pub fn on_boundary(&self, p: Pt) -> bool {
        self.a1 * p.0 + self.a2 * p.1 == self.a0
    }
}

/// Does the halfplane trace exactly the chosen value class of `f`?
pub fn separation_invariant_holds(f: &GridFunction, one_side: bool, line: &SeparationLine) -> bool {
    f.grid().points().all(|p| {
        let q = p.as_xy().expect("planar grid");
        (f.value(&p).unwrap() == one_side) == line.satisfies(q)
    })
}

/// A halfplane whose trace is exactly the `one_side` value class of `f` and
/// whose boundary passes through every essential point of that class.
///
/// With two essential points the direction is forced; with one, the
/// direction of the opposite class's line is tried first (the two lines are
/// parallel for threshold functions), then all primitive directions with
/// components up to twice the grid span. The choice is deterministic.
pub fn separation_line(f: &GridFunction, one_side: bool) -> Result<SeparationLine> {
    let (s0, s1) = threshold_essential(f)?;
    let own = if one_side { &s1 } else { &s0 };
    let other = if one_side { &s0 } else { &s1 };
    let try_line = |a1: i64, a2: i64| -> Option<SeparationLine> {
        let p = own[0].as_xy().unwrap();
        let line = SeparationLine {
            a1,
            a2,
            a0: a1 * p.0 + a2 * p.1,
        };
        let through_all = own
            .iter()
            .all(|s| line.on_boundary(s.as_xy().unwrap()));
        if through_all && separation_invariant_holds(f, one_side, &line) {
            Some(line)
        } else {
            None
        }
    };
    let forced_direction = |pts: &[LatticePoint]| -> Option<(i64, i64)> {
        if pts.len() != 2 {
            return None;
        }
        let p = pts[0].as_xy().unwrap();
        let q = pts[1].as_xy().unwrap();
        let (dx, dy) = (q.0 - p.0, q.1 - p.1);
        let g = num::integer::gcd(dx.abs(), dy.abs());
        Some((dy / g, -dx / g))
    };
    if let Some((a1, a2)) = forced_direction(own) {
        for (b1, b2) in [(a1, a2), (-a1, -a2)] {
            if let Some(line) = try_line(b1, b2) {
                return Ok(line);
            }
        }
        return Err(Error::Degenerate(
            "no halfplane through both essential points traces the value class".into(),
        ));
    }
    if let Some((a1, a2)) = forced_direction(other) {
        for (b1, b2) in [(a1, a2), (-a1, -a2)] {
            if let Some(line) = try_line(b1, b2) {
                return Ok(line);
            }
        }
    }
    let lim = 2 * (f.grid().n() as i64 - 1);
    for a1 in -lim..=lim {
        for a2 in -lim..=lim {
            if (a1, a2) == (0, 0) || num::integer::gcd(a1.abs(), a2.abs()) != 1 {
                continue;
            }
            if let Some(line) = try_line(a1, a2) {
                return Ok(line);
            }
        }
    }
    Err(Error::Degenerate(
        "no halfplane through the essential point traces the value class".into(),
    ))
}

/// An unordered pair of threshold functions whose conjunction is a given
/// function, annotated with whether each factor keeps its essential points
/// inside the other factor's 1-set.
#[derive(Debug, Clone)]
pub struct DefiningPair {
    pub first: GridFunction,
    pub second: GridFunction,
    pub system_holds: bool,
}

/// All unordered pairs from the enumerated threshold class whose conjunction
/// equals `f`, in class-index order.
pub fn defining_pairs(
    f: &GridFunction,
    thresholds: &EnumeratedClass,
) -> Result<Vec<DefiningPair>> {
    if thresholds.spec().kind != ClassKind::Threshold {
        return Err(Error::Precondition(
            "defining pairs are drawn from an enumerated threshold class".into(),
        ));
    }
    if thresholds.spec().grid != f.grid() {
        return Err(Error::Precondition(
            "threshold class grid differs from the function grid".into(),
        ));
    }
    let grid = f.grid();
    let supersets: Vec<usize> = (0..thresholds.len())
        .filter(|&i| f.mask().is_subset_of(thresholds.members()[i].mask()))
        .collect();
    // essential-point mask per superset factor; constants flip to threshold
    // functions everywhere, so their essential set is the whole grid
    let mut essential_masks = Vec::with_capacity(supersets.len());
    for &i in &supersets {
        let g = &thresholds.members()[i];
        let mask = if g.is_constant() {
            crate::bitset::Bitset::full(grid.size())
        } else {
            let (s0, s1) = threshold_essential(g)?;
            let mut m = crate::bitset::Bitset::new(grid.size());
            for p in s0.iter().chain(s1.iter()) {
                m.set(grid.index_of(p)?, true);
            }
            m
        };
        essential_masks.push(mask);
    }
    let mut out = Vec::new();
    for (ai, &i) in supersets.iter().enumerate() {
        for (bj, &j) in supersets.iter().enumerate().skip(ai) {
            let gi = &thresholds.members()[i];
            let gj = &thresholds.members()[j];
            if gi.mask().and(gj.mask()) != *f.mask() {
                continue;
            }
            let system_holds = essential_masks[ai].is_subset_of(gj.mask())
                && essential_masks[bj].is_subset_of(gi.mask());
            out.push(DefiningPair {
                first: gi.clone(),
                second: gj.clone(),
                system_holds,
            });
        }
    }
    Ok(out)
}

/// Compact teaching set for a conjunction of two threshold functions whose
/// 1-set reaches the grid border, built from a defining pair that keeps each
/// factor's essential points inside the other factor's 1-set.
///
/// The set is the union of the factors' essential points; when both factors
/// have two zero-valued essential points, the lexicographically smallest
/// border point of the conjunction's 1-set is added. At most nine points.
pub fn nine_point_teaching_set(
    f: &GridFunction,
    pair: &DefiningPair,
) -> Result<Vec<LatticePoint>> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    if pair.first.mask().and(pair.second.mask()) != *f.mask() {
        return Err(Error::Precondition(
            "the pair's conjunction must equal the target function".into(),
        ));
    }
    if !pair.system_holds {
        return Err(Error::Precondition(
            "each factor's essential points must lie in the other factor's 1-set".into(),
        ));
    }
    let grid = f.grid();
    let border_one = grid
        .points()
        .find(|p| grid.on_border(p) && f.value(p).unwrap());
    let Some(border_point) = border_one else {
        return Err(Error::Precondition(
            "the conjunction's 1-set must reach the grid border".into(),
        ));
    };
    let (a0, a1) = threshold_essential(&pair.first)?;
    let (b0, b1) = threshold_essential(&pair.second)?;
    let mut t: Vec<LatticePoint> = a1.into_iter().chain(b1).chain(a0.iter().cloned()).chain(b0.iter().cloned()).collect();
    if a0.len() >= 2 && b0.len() >= 2 {
        t.push(border_point);
    }
    t.sort();
    t.dedup();
    debug_assert!(t.len() <= 9);
    Ok(t)
}

/// One member of the quadratic-census family: a strip `25 <= 3x1 + 4x2 <=
/// 12m - 1` on the `n`-grid, `m = floor((n-1)/4)`, presented as the
/// conjunction of its two halfplane factors, together with the factors'
/// essential points in closed form and the triangle that indexes the
/// family's many minimal teaching sets.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub n: usize,
    pub m: i64,
    /// The strip itself: conjunction of the two factors.
    pub conj: GridFunction,
    /// Factor enforcing `3x1 + 4x2 >= 25`.
    pub lower_factor: GridFunction,
    /// Factor enforcing `3x1 + 4x2 <= 12m - 1`.
    pub upper_factor: GridFunction,
    /// Zero-valued essential points of the lower factor: `(8,0), (0,6)`.
    pub lower_zero: Vec<LatticePoint>,
    /// One-valued essential points of the lower factor: `(7,1), (3,4)`.
    pub lower_one: Vec<LatticePoint>,
    /// Zero-valued essential points of the upper factor: `(4m,0), (0,3m)`.
    pub upper_zero: Vec<LatticePoint>,
    /// One-valued essential points of the upper factor: `(4m-3,2), (1,3m-1)`.
    pub upper_one: Vec<LatticePoint>,
}

impl FamilyInstance {
    /// `3x1 + 4x2`, the linear form defining the strip.
    pub fn strip_value(p: Pt) -> i64 {
        3 * p.0 + 4 * p.1
    }

    /// Endpoints of the segment where the strip meets its upper boundary
    /// line, i.e. the upper factor's one-valued essential points.
    pub fn boundary_segment(&self) -> (LatticePoint, LatticePoint) {
        (self.upper_one[0].clone(), self.upper_one[1].clone())
    }

    /// The closed triangle spanned by the boundary segment and the far grid
    /// corner; its lattice points off the segment index pairwise-conjunction
    /// alternatives that agree with the strip on all eight closed-form
    /// essential points.
    pub fn corner_triangle(&self) -> LatticePolygon {
        let (a, b) = self.boundary_segment();
        let c = (self.n as i64 - 1, self.n as i64 - 1);
        hull_of_pts(&[a.as_xy().unwrap(), b.as_xy().unwrap(), c])
            .expect("triangle corners exist")
    }

    /// Grid points of the corner triangle, lexicographically sorted.
    pub fn triangle_points(&self) -> Vec<LatticePoint> {
        grid_points_in_hull(self.conj.grid(), &self.corner_triangle())
    }

    /// Grid points of the boundary segment, lexicographically sorted.
    pub fn segment_points(&self) -> Vec<LatticePoint> {
        let (a, b) = self.boundary_segment();
        let seg = hull_of_pts(&[a.as_xy().unwrap(), b.as_xy().unwrap()])
            .expect("segment endpoints exist");
        grid_points_in_hull(self.conj.grid(), &seg)
    }
}

/// Build the family member on the `n`-grid (`n >= 21`).
pub fn family_instance(n: usize) -> Result<FamilyInstance> {
    if n < 21 {
        return Err(Error::Precondition(
            "the quadratic-census family starts at n = 21".into(),
        ));
    }
    let grid = GridSpec::new(2, n)?;
    let m = (n as i64 - 1) / 4;
    let lower = |p: Pt| FamilyInstance::strip_value(p) >= 25;
    let upper = |p: Pt| FamilyInstance::strip_value(p) <= 12 * m - 1;
    let build = |pred: &dyn Fn(Pt) -> bool| -> Result<GridFunction> {
        GridFunction::from_points(
            grid,
            grid.points()
                .filter(|q| pred(q.as_xy().unwrap()))
                .collect::<Vec<_>>(),
        )
    };
    let lower_factor = build(&lower)?;
    let upper_factor = build(&upper)?;
    let conj = GridFunction::from_mask(grid, lower_factor.mask().and(upper_factor.mask()));
    let pts = |list: &[(i64, i64)]| -> Vec<LatticePoint> {
        let mut v: Vec<LatticePoint> = list.iter().map(|&q| LatticePoint::from(q)).collect();
        v.sort();
        v
    };
    Ok(FamilyInstance {
        n,
        m,
        conj,
        lower_factor,
        upper_factor,
        lower_zero: pts(&[(8, 0), (0, 6)]),
        lower_one: pts(&[(7, 1), (3, 4)]),
        upper_zero: pts(&[(4 * m, 0), (0, 3 * m)]),
        upper_one: pts(&[(4 * m - 3, 2), (1, 3 * m - 1)]),
    })
}

/// The crossed pair of coordinate halfplanes that witnesses ambiguity:
/// `x2 >= 1` and `x1 >= 1`. Their conjunction agrees with the strip on all
/// eight closed-form essential points yet differs on the corner triangle.
#[derive(Debug, Clone)]
pub struct CrossedWitness {
    /// `x2 >= 1`: zero exactly on the x-axis row.
    pub row_factor: GridFunction,
    /// `x1 >= 1`: zero exactly on the y-axis column.
    pub col_factor: GridFunction,
    /// Their conjunction.
    pub conj: GridFunction,
}

/// Build and verify the crossed-pair witness for a family member.
pub fn crossed_pair_witness(inst: &FamilyInstance) -> Result<CrossedWitness> {
    let grid = inst.conj.grid();
    let build = |pred: &dyn Fn(Pt) -> bool| -> Result<GridFunction> {
        GridFunction::from_points(
            grid,
            grid.points()
                .filter(|q| pred(q.as_xy().unwrap()))
                .collect::<Vec<_>>(),
        )
    };
    let row_factor = build(&|p: Pt| p.1 >= 1)?;
    let col_factor = build(&|p: Pt| p.0 >= 1)?;
    let conj = GridFunction::from_mask(grid, row_factor.mask().and(col_factor.mask()));
    let fail = |msg: &str| Err(Error::Degenerate(format!("crossed-pair witness: {msg}")));
    if !is_threshold(&row_factor) || !is_threshold(&col_factor) {
        return fail("factors must be threshold functions");
    }
    // one zero-valued essential point of each strip factor lands in each
    // crossed factor's 0-set (the pattern that defeats pairwise separation)
    let on_axis = |p: &LatticePoint, coord: usize| p.coords()[coord] == 0;
    if !(on_axis(&inst.lower_zero[0], 1) || on_axis(&inst.lower_zero[1], 1)) {
        return fail("the lower factor must have a zero-valued essential point on the x-axis");
    }
    if !(on_axis(&inst.upper_zero[0], 1) || on_axis(&inst.upper_zero[1], 1)) {
        return fail("the upper factor must have a zero-valued essential point on the x-axis");
    }
    // agreement on all eight closed-form essential points
    for p in inst
        .lower_zero
        .iter()
        .chain(&inst.lower_one)
        .chain(&inst.upper_zero)
        .chain(&inst.upper_one)
    {
        if conj.value(p)? != inst.conj.value(p)? {
            return fail("the witness must agree with the strip on every essential point");
        }
    }
    if conj.mask() == inst.conj.mask() {
        return fail("the witness must differ from the strip somewhere");
    }
    // the witness is 1 across the whole corner triangle, the strip only on
    // its boundary segment
    for p in inst.triangle_points() {
        if !conj.value(&p)? {
            return fail("the witness must be 1 on the corner triangle");
        }
        let on_seg = FamilyInstance::strip_value(p.as_xy()?) == 12 * inst.m - 1;
        if inst.conj.value(&p)? != on_seg {
            return fail("the strip must meet the triangle exactly in the boundary segment");
        }
    }
    Ok(CrossedWitness {
        row_factor,
        col_factor,
        conj,
    })
}

/// Number of corner-triangle grid points off the boundary segment. Each
/// indexes a distinct pairwise-conjunction alternative, so the family's
/// count of minimal teaching sets grows like the triangle's area. Verifies
/// that every counted point is 0 under the strip and 1 under the crossed
/// witness, and that the count meets its closed-form area lower bound.
pub fn distinguishing_count(inst: &FamilyInstance) -> Result<u64> {
    let witness = crossed_pair_witness(inst)?;
    let tri = inst.corner_triangle();
    let counts = lattice_counts(&tri);
    let (a, b) = inst.boundary_segment();
    let seg = segment_lattice_count(&a, &b)?;
    let total = counts.total() as u64;
    debug_assert_eq!(total as usize, inst.triangle_points().len());
    let count = total - seg;
    let seg_level = 12 * inst.m - 1;
    let mut seen = 0u64;
    for p in inst.triangle_points() {
        if FamilyInstance::strip_value(p.as_xy()?) == seg_level {
            continue;
        }
        seen += 1;
        if inst.conj.value(&p)? || !witness.conj.value(&p)? {
            return Err(Error::Degenerate(
                "a counted point must be 0 under the strip and 1 under the witness".into(),
            ));
        }
    }
    debug_assert_eq!(seen, count);
    let m = inst.m;
    let n = inst.n as i64;
    let area_bound = ((m - 1) * (12 * m - 7 * n + 6)).abs() / 2 - (m + 1);
    if (count as i64) < area_bound {
        return Err(Error::Degenerate(
            "the distinguishing count fell below its area lower bound".into(),
        ));
    }
    Ok(count)
}

/// Sum of Euler's totient over `1..=limit`, via a linear sieve. Grows like
/// `(3/pi^2) * limit^2`, which is the asymptotic size of the essential set
/// of a one-point function anchored at a grid corner.
pub fn totient_sum(limit: usize) -> u64 {
    if limit == 0 {
        return 0;
    }
    let mut phi = vec![0u32; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    phi[1] = 1;
    for i in 2..=limit {
        if phi[i] == 0 {
            phi[i] = i as u32 - 1;
            primes.push(i);
        }
        for &p in &primes {
            let ip = i * p;
            if ip > limit {
                break;
            }
            if i % p == 0 {
                phi[ip] = phi[i] * p as u32;
                break;
            }
            phi[ip] = phi[i] * (p as u32 - 1);
        }
    }
    phi[1..=limit].iter().map(|&v| v as u64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{
        enumerate_class, essential_bruteforce_split, is_teaching_bruteforce,
    };
    use crate::grid::{ClassSpec, GridSpec};

    fn f(n: usize, ones: &[(i64, i64)]) -> GridFunction {
        let grid = GridSpec::new(2, n).unwrap();
        GridFunction::from_points(grid, ones.iter().map(|&q| LatticePoint::from(q))).unwrap()
    }

    fn pts(list: &[(i64, i64)]) -> Vec<LatticePoint> {
        let mut v: Vec<LatticePoint> = list.iter().map(|&q| LatticePoint::from(q)).collect();
        v.sort();
        v
    }

    #[test]
    fn essential_split_of_a_bottom_row() {
        let g = f(3, &[(0, 0), (1, 0), (2, 0)]);
        let (s0, s1) = threshold_essential(&g).unwrap();
        assert_eq!(s1, pts(&[(0, 0), (2, 0)]));
        assert_eq!(s0, pts(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn essential_split_matches_brute_force_for_all_thresholds() {
        for n in [3usize, 4] {
            let grid = GridSpec::new(2, n).unwrap();
            let cls = enumerate_class(&ClassSpec::new(ClassKind::Threshold, grid)).unwrap();
            for g in cls.members() {
                if g.is_constant() {
                    continue;
                }
                let (s0, s1) = threshold_essential(g).unwrap();
                let (b0, b1) = essential_bruteforce_split(g, &cls).unwrap();
                assert_eq!(s0, b0, "ones = {:?}", g.ones_points());
                assert_eq!(s1, b1, "ones = {:?}", g.ones_points());
            }
        }
    }

    #[test]
    fn essential_split_rejects_constants_and_non_thresholds() {
        assert!(matches!(
            threshold_essential(&f(3, &[])),
            Err(Error::ConstantFunction)
        ));
        assert!(matches!(
            threshold_essential(&f(2, &[(0, 0), (1, 1)])),
            Err(Error::NotInClass)
        ));
    }

    #[test]
    fn separation_lines_of_a_bottom_row() {
        let g = f(3, &[(0, 0), (1, 0), (2, 0)]);
        let one = separation_line(&g, true).unwrap();
        assert_eq!(one, SeparationLine { a1: 0, a2: 1, a0: 0 });
        let zero = separation_line(&g, false).unwrap();
        assert_eq!(
            zero,
            SeparationLine {
                a1: 0,
                a2: -1,
                a0: -1
            }
        );
    }

    #[test]
    fn separation_line_with_a_single_essential_point() {
        let g = f(3, &[(0, 0)]);
        let one = separation_line(&g, true).unwrap();
        assert_eq!(one, SeparationLine { a1: 1, a2: 1, a0: 0 });
        let zero = separation_line(&g, false).unwrap();
        assert_eq!(
            zero,
            SeparationLine {
                a1: -1,
                a2: -1,
                a0: -1
            }
        );
        // the two lines are parallel with opposite orientation and adjacent
        // integer levels: no lattice point fits strictly between them
        assert_eq!((one.a1, one.a2), (-zero.a1, -zero.a2));
        assert_eq!(one.a0 + zero.a0, -1);
    }

    #[test]
    fn defining_pairs_of_a_middle_row() {
        let g = f(4, &[(0, 1), (1, 1), (2, 1), (3, 1)]);
        let grid = g.grid();
        let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, grid)).unwrap();
        let pairs = defining_pairs(&g, &thr).unwrap();
        assert!(!pairs.is_empty());
        for p in &pairs {
            assert_eq!(p.first.mask().and(p.second.mask()), *g.mask());
        }
        let qualifying: Vec<&DefiningPair> =
            pairs.iter().filter(|p| p.system_holds).collect();
        assert_eq!(qualifying.len(), 1);
        let pair = qualifying[0];
        let rows: Vec<Vec<LatticePoint>> = vec![
            pair.first.ones_points(),
            pair.second.ones_points(),
        ];
        // the qualifying pair is the two halfplanes hugging the row
        let below: Vec<LatticePoint> = grid
            .points()
            .filter(|p| p.coords()[1] <= 1)
            .collect();
        let above: Vec<LatticePoint> = grid
            .points()
            .filter(|p| p.coords()[1] >= 1)
            .collect();
        assert!(rows.contains(&below) && rows.contains(&above));
    }

    #[test]
    fn nine_point_set_of_a_middle_row_teaches_it() {
        let g = f(4, &[(0, 1), (1, 1), (2, 1), (3, 1)]);
        let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, g.grid())).unwrap();
        let pairs = defining_pairs(&g, &thr).unwrap();
        let pair = pairs.iter().find(|p| p.system_holds).unwrap();
        let t = nine_point_teaching_set(&g, pair).unwrap();
        assert_eq!(
            t,
            pts(&[(0, 0), (3, 0), (0, 1), (3, 1), (0, 2), (3, 2)])
        );
        let two = enumerate_class(&ClassSpec::new(ClassKind::KThreshold(2), g.grid())).unwrap();
        assert!(is_teaching_bruteforce(&g, &t, &two).unwrap());
        // minimal: dropping any point breaks it
        for drop in 0..t.len() {
            let mut smaller = t.clone();
            smaller.remove(drop);
            assert!(!is_teaching_bruteforce(&g, &smaller, &two).unwrap());
        }
    }

    #[test]
    fn a_grid_hugging_row_has_exactly_one_defining_pair() {
        // column convexity forbids any halfplane pair other than the two
        // hugging halfplanes from cutting out a full middle row
        let g = f(4, &[(0, 1), (1, 1), (2, 1), (3, 1)]);
        let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, g.grid())).unwrap();
        assert_eq!(defining_pairs(&g, &thr).unwrap().len(), 1);
    }

    #[test]
    fn nine_point_preconditions_are_enforced() {
        // a threshold function pairs with the constant-one factor, whose
        // essential points (the whole grid) spill outside the other 1-set
        let g = f(4, &[(0, 0), (1, 0), (2, 0), (3, 0)]);
        let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, g.grid())).unwrap();
        let pairs = defining_pairs(&g, &thr).unwrap();
        assert!(pairs.len() > 1);
        let bad = pairs.iter().find(|p| !p.system_holds).unwrap();
        assert!(matches!(
            nine_point_teaching_set(&g, bad),
            Err(Error::Precondition(_))
        ));
        // a 1-set that avoids the border fails the border precondition
        let interior = f(4, &[(1, 1), (2, 1)]);
        let pairs = defining_pairs(&interior, &thr).unwrap();
        if let Some(p) = pairs.iter().find(|p| p.system_holds) {
            assert!(matches!(
                nine_point_teaching_set(&interior, p),
                Err(Error::Precondition(_))
            ));
        }
    }

    #[test]
    fn family_instance_closed_forms_match_flip_tests() {
        let inst = family_instance(21).unwrap();
        assert_eq!(inst.m, 5);
        let (l0, l1) = threshold_essential(&inst.lower_factor).unwrap();
        assert_eq!(l0, inst.lower_zero);
        assert_eq!(l1, inst.lower_one);
        let (u0, u1) = threshold_essential(&inst.upper_factor).unwrap();
        assert_eq!(u0, inst.upper_zero);
        assert_eq!(u1, inst.upper_one);
        assert_eq!(inst.upper_one, pts(&[(17, 2), (1, 14)]));
        assert_eq!(inst.upper_zero, pts(&[(20, 0), (0, 15)]));
    }

    #[test]
    fn family_segment_and_triangle_counts_at_smallest_size() {
        let inst = family_instance(21).unwrap();
        assert_eq!(inst.segment_points().len(), 5);
        assert_eq!(inst.triangle_points().len(), 167);
        assert_eq!(distinguishing_count(&inst).unwrap(), 162);
    }

    #[test]
    fn family_counts_grow_quadratically() {
        assert_eq!(distinguishing_count(&family_instance(41).unwrap()).unwrap(), 721);
        let c21 = distinguishing_count(&family_instance(21).unwrap()).unwrap() as f64;
        let c41 = distinguishing_count(&family_instance(41).unwrap()).unwrap() as f64;
        assert!(c41 / c21 >= 3.5);
    }

    #[test]
    fn family_nine_point_set_uses_the_expected_border_point() {
        let inst = family_instance(21).unwrap();
        let pair = DefiningPair {
            first: inst.lower_factor.clone(),
            second: inst.upper_factor.clone(),
            system_holds: true,
        };
        let t = nine_point_teaching_set(&inst.conj, &pair).unwrap();
        assert_eq!(t.len(), 9);
        let mut expect: Vec<LatticePoint> = inst
            .lower_zero
            .iter()
            .chain(&inst.lower_one)
            .chain(&inst.upper_zero)
            .chain(&inst.upper_one)
            .cloned()
            .collect();
        expect.push(LatticePoint::xy(0, 7));
        expect.sort();
        assert_eq!(t, expect);
        // the chosen border point really is the first 1 on the border
        assert!(inst.conj.grid().on_border(&LatticePoint::xy(0, 7)));
        assert!(inst.conj.value(&LatticePoint::xy(0, 7)).unwrap());
    }

    #[test]
    fn family_system_holds_for_its_own_pair() {
        for n in [21usize, 30, 47] {
            let inst = family_instance(n).unwrap();
            let (l0, l1) = threshold_essential(&inst.lower_factor).unwrap();
            let (u0, u1) = threshold_essential(&inst.upper_factor).unwrap();
            for p in l0.iter().chain(&l1) {
                assert!(inst.upper_factor.value(p).unwrap());
            }
            for p in u0.iter().chain(&u1) {
                assert!(inst.lower_factor.value(p).unwrap());
            }
        }
    }

    #[test]
    fn crossed_witness_checks_out_at_several_sizes() {
        for n in [21usize, 29, 36] {
            let inst = family_instance(n).unwrap();
            let w = crossed_pair_witness(&inst).unwrap();
            assert_ne!(w.conj.mask(), inst.conj.mask());
            assert_eq!(
                w.conj.count_ones(),
                (inst.n - 1) * (inst.n - 1),
                "the crossed conjunction is 1 off the two axes"
            );
        }
    }

    #[test]
    fn family_rejects_small_grids() {
        assert!(matches!(family_instance(20), Err(Error::Precondition(_))));
    }

    #[test]
    fn totient_sums_are_exact_for_small_inputs() {
        assert_eq!(totient_sum(1), 1);
        assert_eq!(totient_sum(2), 2);
        assert_eq!(totient_sum(10), 32);
        assert_eq!(totient_sum(0), 0);
    }

    #[test]
    fn totient_sum_tracks_its_quadratic_asymptotic() {
        let limit = 100_000u64;
        let got = totient_sum(limit as usize) as f64;
        let expect = 3.0 / (std::f64::consts::PI * std::f64::consts::PI)
            * (limit as f64)
            * (limit as f64);
        assert!((got / expect - 1.0).abs() < 0.01);
    }
}
