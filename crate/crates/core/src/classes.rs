//! Brute-force ground truth on small grids: class membership predicates,
//! exhaustive class enumeration, definitional essential points, teaching-set
//! verdicts, and minimal-teaching-set counting via hypergraph transversals.
//!
//! Everything here is definitional and exhaustive. The formula-based modules
//! are tested against these oracles, never the other way around.

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::geometry::{grid_points_in_hull, hull_of_pts, hulls_disjoint, hulls_intersect, Pt};
use crate::grid::{ClassKind, ClassSpec, GridFunction, GridSpec, LatticePoint};
use std::collections::{HashMap, HashSet};

/// Node budget for transversal enumeration and cover search; breaching it is
/// an error, never a silently truncated count.
pub const SEARCH_BUDGET: u64 = 10_000_000;

fn xy_points(points: &[LatticePoint]) -> Result<Vec<Pt>> {
    points.iter().map(|p| p.as_xy()).collect()
}

/// Is `f` a threshold function, i.e. is there a closed halfspace whose grid
/// trace is exactly the 1-set of `f`? Decided exactly as convex-hull
/// disjointness of the 1-set and the 0-set; constant functions qualify.
pub fn is_threshold(f: &GridFunction) -> bool {
    let ones = f.ones_points();
    let zeros = f.zeros_points();
    if ones.is_empty() || zeros.is_empty() {
        return true;
    }
    if f.grid().d() == 2 {
        let a = hull_of_pts(&xy_points(&ones).unwrap()).unwrap();
        let b = hull_of_pts(&xy_points(&zeros).unwrap()).unwrap();
        hulls_disjoint(&a, &b)
    } else {
        !hulls_intersect(&ones, &zeros).unwrap()
    }
}

/// Is the 1-set of `f` a convex lattice set (no 0-point inside its hull)?
pub fn is_polytopal(f: &GridFunction) -> bool {
    let ones = f.ones_points();
    if ones.is_empty() {
        return true;
    }
    if f.grid().d() == 2 {
        let hull = hull_of_pts(&xy_points(&ones).unwrap()).unwrap();
        grid_points_in_hull(f.grid(), &hull).len() == ones.len()
    } else {
        f.zeros_points()
            .iter()
            .all(|z| !point_in_hull_nd(z, &ones))
    }
}

fn point_in_hull_nd(x: &LatticePoint, points: &[LatticePoint]) -> bool {
    crate::geometry::point_in_hull(x, points).unwrap()
}

/// A fully enumerated function class on a small grid, indexed by bitmask.
pub struct EnumeratedClass {
    spec: ClassSpec,
    members: Vec<GridFunction>,
    index: HashMap<Bitset, usize>,
}

impl EnumeratedClass {
    fn from_masks(spec: ClassSpec, masks: impl IntoIterator<Item = Bitset>) -> Self {
        let mut sorted: Vec<Bitset> = masks.into_iter().collect();
        sorted.sort();
        sorted.dedup();
        let index = sorted
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let members = sorted
            .into_iter()
            .map(|m| GridFunction::from_mask(spec.grid, m))
            .collect();
        EnumeratedClass {
            spec,
            members,
            index,
        }
    }

    pub fn spec(&self) -> &ClassSpec {
        &self.spec
    }

    pub fn members(&self) -> &[GridFunction] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &GridFunction) -> bool {
        self.index.contains_key(f.mask())
    }

    pub fn index_of(&self, f: &GridFunction) -> Option<usize> {
        self.index.get(f.mask()).copied()
    }

    fn require_member(&self, f: &GridFunction) -> Result<usize> {
        self.index_of(f).ok_or(Error::NotInClass)
    }
}

/// All threshold-function bitmasks of a 2D grid.
///
/// Candidates are the grid traces of halfplanes with primitive normal
/// components up to twice the grid span. That range is complete: the trace of
/// a halfplane changes only when its direction crosses one perpendicular to a
/// difference of two grid points, and between two neighbouring difference
/// directions their mediant (component sums, hence at most twice the span)
/// realizes the whole open arc. Completeness is additionally cross-checked in
/// tests by filtering every function on tiny grids.
fn threshold_masks(grid: GridSpec) -> Vec<Bitset> {
    let n = grid.n() as i64;
    let size = grid.size();
    let pts: Vec<Pt> = (0..size)
        .map(|i| grid.point_at(i).as_xy().unwrap())
        .collect();
    let lim = 2 * (n - 1);
    let mut masks: HashSet<Bitset> = HashSet::new();
    masks.insert(Bitset::new(size)); // constant zero
    let mut order: Vec<(i64, usize)> = Vec::with_capacity(size);
    for a1 in -lim..=lim {
        for a2 in -lim..=lim {
            if (a1, a2) == (0, 0) || num::integer::gcd(a1.abs(), a2.abs()) != 1 {
                continue;
            }
            order.clear();
            order.extend(pts.iter().enumerate().map(|(i, p)| (a1 * p.0 + a2 * p.1, i)));
            order.sort_unstable();
            let mut mask = Bitset::new(size);
            let mut i = 0;
            while i < order.len() {
                let v = order[i].0;
                while i < order.len() && order[i].0 == v {
                    mask.set(order[i].1, true);
                    i += 1;
                }
                masks.insert(mask.clone());
            }
        }
    }
    masks.into_iter().collect()
}

/// All convex-lattice-set bitmasks of a 2D grid.
///
/// Depth-first growth in lexicographic point order. A set closed under
/// "lattice points between two members" stays prefix-reachable because the
/// points between two grid points are lexicographically between them; each
/// such set is kept when its hull captures no grid point outside it. A branch
/// dies once the hull captures an outside point that precedes the last added
/// point, since later additions can never absorb it.
fn polytopal_masks_2d(grid: GridSpec) -> Vec<Bitset> {
    let size = grid.size();
    let pts: Vec<Pt> = (0..size)
        .map(|i| grid.point_at(i).as_xy().unwrap())
        .collect();
    let point_index = |p: Pt| -> usize { (p.0 as usize) * grid.n() + p.1 as usize };
    // between[i][j]: indices strictly between point i and point j
    let mut between: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); size]; size];
    for i in 0..size {
        for j in 0..size {
            between[i][j] = crate::geometry::strictly_between(pts[i], pts[j])
                .into_iter()
                .map(|p| point_index(p) as u32)
                .collect();
        }
    }
    let mut result: Vec<Bitset> = vec![Bitset::new(size)];
    let mut members: Vec<usize> = Vec::new();
    let mut mask = Bitset::new(size);

    fn dfs(
        grid: GridSpec,
        pts: &[Pt],
        between: &[Vec<Vec<u32>>],
        members: &mut Vec<usize>,
        mask: &mut Bitset,
        start: usize,
        result: &mut Vec<Bitset>,
    ) {
        for p in start..pts.len() {
            if !members
                .iter()
                .all(|&m| between[m][p].iter().all(|&b| mask.get(b as usize)))
            {
                continue;
            }
            mask.set(p, true);
            members.push(p);
            let hull = hull_of_pts(&members.iter().map(|&i| pts[i]).collect::<Vec<_>>()).unwrap();
            let captured = grid_points_in_hull(grid, &hull);
            let mut dead = false;
            let mut convex = true;
            for c in &captured {
                let ci = grid.index_of(c).unwrap();
                if !mask.get(ci) {
                    convex = false;
                    if ci < p {
                        dead = true;
                        break;
                    }
                }
            }
            if convex {
                result.push(mask.clone());
            }
            if !dead {
                dfs(grid, pts, between, members, mask, p + 1, result);
            }
            members.pop();
            mask.set(p, false);
        }
    }
    dfs(grid, &pts, &between, &mut members, &mut mask, 0, &mut result);
    result
}

fn polytopal_masks_filter_all(grid: GridSpec) -> Vec<Bitset> {
    let size = grid.size();
    assert!(size <= 20, "filter-all enumeration is for tiny grids only");
    (0..1usize << size)
        .map(|bits| {
            let mut m = Bitset::new(size);
            for i in 0..size {
                if bits >> i & 1 == 1 {
                    m.set(i, true);
                }
            }
            m
        })
        .filter(|m| is_polytopal(&GridFunction::from_mask(grid, m.clone())))
        .collect()
}

/// Exhaustively enumerate a class on a small grid.
///
/// Supported ranges: Threshold and KThreshold(k <= 2) for d = 2, n <= 6;
/// Polytopal for d = 2, n <= 5 or d = 3, n = 2.
pub fn enumerate_class(spec: &ClassSpec) -> Result<EnumeratedClass> {
    let grid = spec.grid;
    match spec.kind {
        ClassKind::Threshold | ClassKind::KThreshold(1) => {
            if grid.d() != 2 || grid.n() > 6 {
                return Err(Error::UnsupportedClass(format!(
                    "threshold enumeration supports d = 2, n <= 6; got d = {}, n = {}",
                    grid.d(),
                    grid.n()
                )));
            }
            Ok(EnumeratedClass::from_masks(*spec, threshold_masks(grid)))
        }
        ClassKind::KThreshold(2) => {
            if grid.d() != 2 || grid.n() > 6 {
                return Err(Error::UnsupportedClass(format!(
                    "2-threshold enumeration supports d = 2, n <= 6; got d = {}, n = {}",
                    grid.d(),
                    grid.n()
                )));
            }
            let ts = threshold_masks(grid);
            let mut masks: HashSet<Bitset> = HashSet::new();
            for i in 0..ts.len() {
                for j in i..ts.len() {
                    masks.insert(ts[i].and(&ts[j]));
                }
            }
            Ok(EnumeratedClass::from_masks(*spec, masks))
        }
        ClassKind::KThreshold(k) => Err(Error::UnsupportedClass(format!(
            "no enumerator for {k}-threshold classes (k > 2)"
        ))),
        ClassKind::Polytopal => {
            if grid.d() == 2 && grid.n() <= 5 {
                Ok(EnumeratedClass::from_masks(*spec, polytopal_masks_2d(grid)))
            } else if grid.d() == 3 && grid.n() == 2 {
                Ok(EnumeratedClass::from_masks(
                    *spec,
                    polytopal_masks_filter_all(grid),
                ))
            } else {
                Err(Error::UnsupportedClass(format!(
                    "convex-set enumeration supports d = 2, n <= 5 or d = 3, n = 2; got d = {}, n = {}",
                    grid.d(),
                    grid.n()
                )))
            }
        }
    }
}

/// Is `f` a conjunction of at most `k` threshold functions? Exact, via the
/// enumerated threshold class of the same grid.
///
/// Any workable conjunction can use inclusion-minimal threshold supersets of
/// the 1-set of `f`, so it suffices to cover the 0-set of `f` by the
/// zero-sets of at most `k` such minimal supersets (branch-and-bound set
/// cover).
pub fn is_k_threshold(f: &GridFunction, k: u32, thresholds: &EnumeratedClass) -> Result<bool> {
    if thresholds.spec.grid != f.grid() {
        return Err(Error::Precondition(
            "threshold class grid differs from the function grid".into(),
        ));
    }
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    if is_threshold(f) {
        return Ok(true);
    }
    if k == 1 {
        return Ok(false);
    }
    let m1 = f.mask();
    let zeros = m1.complement();
    // Inclusion-minimal threshold supersets of the 1-set.
    let sups: Vec<&Bitset> = thresholds
        .members()
        .iter()
        .map(|t| t.mask())
        .filter(|t| m1.is_subset_of(t))
        .collect();
    let mut minimal: Vec<&Bitset> = Vec::new();
    for t in &sups {
        if !sups.iter().any(|s| s != t && s.is_subset_of(t)) {
            minimal.push(t);
        }
    }
    let excluded: Vec<Bitset> = minimal.iter().map(|t| zeros.minus(t)).collect();
    let mut budget = SEARCH_BUDGET;
    cover_within(&zeros, &excluded, k as usize, &mut budget)
}

fn cover_within(
    remaining: &Bitset,
    sets: &[Bitset],
    k: usize,
    budget: &mut u64,
) -> Result<bool> {
    if remaining.is_empty() {
        return Ok(true);
    }
    if k == 0 {
        return Ok(false);
    }
    if *budget == 0 {
        return Err(Error::BudgetExceeded {
            visited: SEARCH_BUDGET,
        });
    }
    *budget -= 1;
    // branch on the hardest-to-cover remaining element
    let mut pick = None;
    let mut pick_count = usize::MAX;
    for z in remaining.iter_ones() {
        let c = sets.iter().filter(|s| s.get(z)).count();
        if c < pick_count {
            pick_count = c;
            pick = Some(z);
        }
    }
    let z = pick.unwrap();
    if pick_count == 0 {
        return Ok(false);
    }
    let mut options: Vec<&Bitset> = sets.iter().filter(|s| s.get(z)).collect();
    options.sort_by_key(|s| std::cmp::Reverse(s.and(remaining).count_ones()));
    for s in options {
        if cover_within(&remaining.minus(s), sets, k - 1, budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The definitional essential points of `f` within an enumerated class:
/// points whose flip stays inside the class.
pub fn essential_bruteforce(f: &GridFunction, cls: &EnumeratedClass) -> Result<Vec<LatticePoint>> {
    cls.require_member(f)?;
    let grid = f.grid();
    let mut out = Vec::new();
    for i in 0..grid.size() {
        let mut m = f.mask().clone();
        m.toggle(i);
        if cls.index.contains_key(&m) {
            out.push(grid.point_at(i));
        }
    }
    Ok(out)
}

/// Essential points split by the function's value: `(zero-valued, one-valued)`.
pub fn essential_bruteforce_split(
    f: &GridFunction,
    cls: &EnumeratedClass,
) -> Result<(Vec<LatticePoint>, Vec<LatticePoint>)> {
    let all = essential_bruteforce(f, cls)?;
    let mut s0 = Vec::new();
    let mut s1 = Vec::new();
    for p in all {
        if f.value(&p)? {
            s1.push(p);
        } else {
            s0.push(p);
        }
    }
    Ok((s0, s1))
}

fn points_mask(grid: GridSpec, points: &[LatticePoint]) -> Result<Bitset> {
    let mut m = Bitset::new(grid.size());
    for p in points {
        m.set(grid.index_of(p)?, true);
    }
    Ok(m)
}

/// Is `teaching` a teaching set of `f` within the enumerated class, i.e. does
/// no other member agree with `f` on all of it?
pub fn is_teaching_bruteforce(
    f: &GridFunction,
    teaching: &[LatticePoint],
    cls: &EnumeratedClass,
) -> Result<bool> {
    cls.require_member(f)?;
    let t = points_mask(f.grid(), teaching)?;
    Ok(!cls
        .members
        .iter()
        .any(|g| g.mask() != f.mask() && g.mask().xor(f.mask()).is_disjoint(&t)))
}

/// The disagreement hypergraph of `f` within a class: for every other member
/// the set of points where they differ, reduced to the inclusion-minimal
/// antichain. Teaching sets of `f` are exactly the transversals of `sets`.
pub struct DisagreementFamily {
    pub target: GridFunction,
    pub sets: Vec<Bitset>,
}

pub fn disagreement_family(f: &GridFunction, cls: &EnumeratedClass) -> Result<DisagreementFamily> {
    cls.require_member(f)?;
    let mut diffs: Vec<Bitset> = cls
        .members
        .iter()
        .filter(|g| g.mask() != f.mask())
        .map(|g| g.mask().xor(f.mask()))
        .collect();
    diffs.sort();
    diffs.dedup();
    diffs.sort_by_key(|d| d.count_ones());
    let mut minimal: Vec<Bitset> = Vec::new();
    for d in diffs {
        if !minimal.iter().any(|m| m.is_subset_of(&d)) {
            minimal.push(d);
        }
    }
    Ok(DisagreementFamily {
        target: f.clone(),
        sets: minimal,
    })
}

/// Exact minimal-teaching-set census of `f` within an enumerated class.
pub struct MtsReport {
    /// Number of inclusion-minimal teaching sets.
    pub j_count: u64,
    /// Minimum teaching-set cardinality.
    pub sigma: usize,
    /// Minimal teaching sets (lexicographically sorted point lists),
    /// truncated to the requested cap; `j_count` and `sigma` are never
    /// truncated.
    pub witnesses: Vec<Vec<LatticePoint>>,
}

/// Enumerate all inclusion-minimal transversals of the disagreement family.
///
/// Depth-first search branching on an uncovered difference set; a vertex
/// tried at a branch point is withheld from its sibling branches, so every
/// minimal transversal is produced exactly once. A chosen vertex must keep a
/// "critical" difference set (one only it hits) and so must every earlier
/// choice, which prunes non-minimal extensions immediately.
pub fn minimal_teaching_sets(
    f: &GridFunction,
    cls: &EnumeratedClass,
    cap: usize,
) -> Result<MtsReport> {
    let family = disagreement_family(f, cls)?;
    let grid = f.grid();
    let nv = grid.size();
    let ne = family.sets.len();
    if ne == 0 {
        // singleton class: the empty set teaches f
        return Ok(MtsReport {
            j_count: 1,
            sigma: 0,
            witnesses: vec![vec![]],
        });
    }
    // incidence: for each vertex, the difference sets containing it
    let mut edges_of: Vec<Bitset> = vec![Bitset::new(ne); nv];
    for (ei, e) in family.sets.iter().enumerate() {
        for v in e.iter_ones() {
            edges_of[v].set(ei, true);
        }
    }
    struct Search<'a> {
        edges_of: &'a [Bitset],
        family: &'a [Bitset],
        budget: u64,
        j_count: u64,
        sigma: usize,
        witnesses: Vec<Vec<usize>>,
        cap: usize,
    }
    impl Search<'_> {
        fn run(
            &mut self,
            chosen: &mut Vec<usize>,
            crit: &mut Vec<Bitset>,
            uncov: &Bitset,
            cand: &mut Bitset,
        ) -> Result<()> {
            if self.budget == 0 {
                return Err(Error::BudgetExceeded {
                    visited: SEARCH_BUDGET,
                });
            }
            self.budget -= 1;
            if uncov.is_empty() {
                self.j_count += 1;
                self.sigma = self.sigma.min(chosen.len());
                if self.witnesses.len() < self.cap {
                    let mut w = chosen.clone();
                    w.sort_unstable();
                    self.witnesses.push(w);
                }
                return Ok(());
            }
            // branch on the uncovered set with the fewest allowed vertices
            let mut best: Option<(usize, Vec<usize>)> = None;
            for ei in uncov.iter_ones() {
                let vs: Vec<usize> = self.family[ei]
                    .iter_ones()
                    .filter(|&v| cand.get(v))
                    .collect();
                if best.as_ref().map_or(true, |(_, b)| vs.len() < b.len()) {
                    let empty = vs.is_empty();
                    best = Some((ei, vs));
                    if empty {
                        break;
                    }
                }
            }
            let (_, vs) = best.unwrap();
            let mut tried: Vec<usize> = Vec::with_capacity(vs.len());
            for v in vs {
                cand.set(v, false);
                tried.push(v);
                // v's critical sets: previously uncovered sets it hits
                let v_crit = uncov.and(&self.edges_of[v]);
                let mut ok = !v_crit.is_empty();
                let mut undo: Vec<(usize, Bitset)> = Vec::new();
                if ok {
                    for (i, c) in crit.iter_mut().enumerate() {
                        let reduced = c.minus(&self.edges_of[v]);
                        if reduced.is_empty() {
                            ok = false;
                        }
                        undo.push((i, std::mem::replace(c, reduced)));
                        if !ok {
                            break;
                        }
                    }
                }
                if ok {
                    chosen.push(v);
                    crit.push(v_crit);
                    let next_uncov = uncov.minus(&self.edges_of[v]);
                    self.run(chosen, crit, &next_uncov, cand)?;
                    crit.pop();
                    chosen.pop();
                }
                for (i, old) in undo {
                    crit[i] = old;
                }
            }
            for v in tried {
                cand.set(v, true);
            }
            Ok(())
        }
    }
    let mut search = Search {
        edges_of: &edges_of,
        family: &family.sets,
        budget: SEARCH_BUDGET,
        j_count: 0,
        sigma: usize::MAX,
        witnesses: Vec::new(),
        cap,
    };
    let mut uncov = Bitset::new(ne);
    for i in 0..ne {
        uncov.set(i, true);
    }
    let mut cand = Bitset::new(nv);
    for i in 0..nv {
        cand.set(i, true);
    }
    search.run(&mut Vec::new(), &mut Vec::new(), &uncov, &mut cand)?;
    let mut witnesses: Vec<Vec<LatticePoint>> = search
        .witnesses
        .iter()
        .map(|w| w.iter().map(|&i| grid.point_at(i)).collect())
        .collect();
    witnesses.sort();
    Ok(MtsReport {
        j_count: search.j_count,
        sigma: search.sigma,
        witnesses,
    })
}

/// Outcome of the conjunction inheritance sweep over all threshold pairs.
pub struct ConjunctionReport {
    pub pairs_checked: u64,
    pub unique_pairs: u64,
    pub checks: u64,
    pub violations: u64,
    pub notes: Vec<String>,
}

/// Sweep every pair of threshold functions on `E_n^2` (both orientations of
/// every unordered pair) and check the essential-point inheritance laws of
/// conjunctions:
///
/// 1. a factor's one-valued essential points that stay 1 in the conjunction
///    are essential for the conjunction;
/// 2. a factor's zero-valued essential points lying in the other factor's
///    1-set are essential for the conjunction;
/// 3. when the pair is the unique one producing its conjunction, each
///    factor's essential points lie inside the other factor's 1-set, and the
///    union of the factors' essential points (by value) is contained in the
///    conjunction's essential points.
pub fn conjunction_property_suite(n: usize, k: u32) -> Result<ConjunctionReport> {
    conjunction_sweep(n, k, false)
}

/// Negative control: same sweep with the conjunction-class essential sets
/// deliberately emptied; must report violations.
pub fn conjunction_property_suite_corrupted(n: usize, k: u32) -> Result<ConjunctionReport> {
    conjunction_sweep(n, k, true)
}

fn conjunction_sweep(n: usize, k: u32, corrupt: bool) -> Result<ConjunctionReport> {
    if k != 2 {
        return Err(Error::Precondition(
            "the conjunction sweep covers pairwise conjunctions only".into(),
        ));
    }
    if n > 3 {
        return Err(Error::Precondition(
            "conjunction sweep is exhaustive and limited to n <= 3".into(),
        ));
    }
    let grid = GridSpec::new(2, n)?;
    let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, grid))?;
    let two = enumerate_class(&ClassSpec::new(ClassKind::KThreshold(2), grid))?;
    // essential masks (S0, S1) for every threshold member w.r.t. thresholds
    let mut thr_ess: Vec<(Bitset, Bitset)> = Vec::with_capacity(thr.len());
    for g in thr.members() {
        let (s0, s1) = essential_bruteforce_split(g, &thr)?;
        thr_ess.push((points_mask(grid, &s0)?, points_mask(grid, &s1)?));
    }
    // essential masks for every 2-threshold member w.r.t. the 2-threshold class
    let mut two_ess: Vec<(Bitset, Bitset)> = Vec::with_capacity(two.len());
    for g in two.members() {
        if corrupt {
            two_ess.push((Bitset::new(grid.size()), Bitset::new(grid.size())));
        } else {
            let (s0, s1) = essential_bruteforce_split(g, &two)?;
            two_ess.push((points_mask(grid, &s0)?, points_mask(grid, &s1)?));
        }
    }
    let mut report = ConjunctionReport {
        pairs_checked: 0,
        unique_pairs: 0,
        checks: 0,
        violations: 0,
        notes: Vec::new(),
    };
    let note = |report: &mut ConjunctionReport, msg: String| {
        if report.notes.len() < 8 {
            report.notes.push(msg);
        }
    };
    // conjunction mask -> list of unordered defining pairs
    let mut by_conj: HashMap<Bitset, Vec<(usize, usize)>> = HashMap::new();
    for i in 0..thr.len() {
        for j in i..thr.len() {
            let conj = thr.members()[i].mask().and(thr.members()[j].mask());
            by_conj.entry(conj).or_default().push((i, j));
        }
    }
    for (conj, pairs) in &by_conj {
        let fi = *two
            .index
            .get(conj)
            .expect("a conjunction of two thresholds is a 2-threshold member");
        let (f_s0, f_s1) = &two_ess[fi];
        for &(i, j) in pairs {
            report.pairs_checked += 1;
            for (a, b) in [(i, j), (j, i)] {
                let (a_s0, a_s1) = &thr_ess[a];
                let other_m1 = thr.members()[b].mask();
                // law 1
                report.checks += 1;
                if !a_s1.and(conj).is_subset_of(f_s1) {
                    report.violations += 1;
                    note(&mut report, format!(
                        "one-valued inheritance failed for pair ({i},{j}) factor {a}"
                    ));
                }
                // law 2
                report.checks += 1;
                if !a_s0.and(other_m1).is_subset_of(f_s0) {
                    report.violations += 1;
                    note(&mut report, format!(
                        "zero-valued inheritance failed for pair ({i},{j}) factor {a}"
                    ));
                }
            }
        }
        if pairs.len() == 1 {
            report.unique_pairs += 1;
            let (i, j) = pairs[0];
            for (a, b) in [(i, j), (j, i)] {
                let (a_s0, a_s1) = &thr_ess[a];
                let other_m1 = thr.members()[b].mask();
                // unique defining pair: essential points sit in the other 1-set
                report.checks += 1;
                if !a_s0.or(a_s1).is_subset_of(other_m1) {
                    report.violations += 1;
                    note(&mut report, format!(
                        "unique-pair containment failed for pair ({i},{j}) factor {a}"
                    ));
                }
                // and the factors' essential points are inherited wholesale
                report.checks += 2;
                if !a_s1.is_subset_of(f_s1) || !a_s0.is_subset_of(f_s0) {
                    report.violations += 1;
                    note(&mut report, format!(
                        "unique-pair inheritance failed for pair ({i},{j}) factor {a}"
                    ));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::parse_function;

    fn f(d: usize, n: usize, ones: &[(i64, i64)]) -> GridFunction {
        let grid = GridSpec::new(d, n).unwrap();
        GridFunction::from_points(grid, ones.iter().map(|&q| LatticePoint::from(q))).unwrap()
    }

    fn example_square() -> GridFunction {
        parse_function(r#"{"d":2,"n":4,"ones":[[1,2],[1,3],[2,2],[2,3]]}"#).unwrap()
    }

    fn pts(list: &[(i64, i64)]) -> Vec<LatticePoint> {
        list.iter().map(|&q| LatticePoint::from(q)).collect()
    }

    #[test]
    fn threshold_predicate_on_known_cases() {
        assert!(!is_threshold(&f(2, 2, &[(0, 0), (1, 1)]))); // crossing diagonals
        assert!(is_threshold(&f(2, 2, &[(0, 0), (0, 1), (1, 0)])));
        assert!(is_threshold(&f(2, 3, &[]))); // constant zero
        let full: Vec<(i64, i64)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        assert!(is_threshold(&f(2, 3, &full))); // constant one
    }

    #[test]
    fn polytopal_predicate_on_known_cases() {
        assert!(is_polytopal(&f(2, 2, &[(0, 0), (1, 1)])));
        assert!(!is_polytopal(&f(2, 3, &[(0, 0), (2, 0)]))); // (1,0) is a captured zero
        assert!(is_polytopal(&f(2, 3, &[])));
        assert!(is_polytopal(&f(2, 4, &[(1, 2), (2, 2), (2, 3)])));
    }

    #[test]
    fn tiny_class_cardinalities() {
        let g2 = GridSpec::new(2, 2).unwrap();
        let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, g2)).unwrap();
        let two = enumerate_class(&ClassSpec::new(ClassKind::KThreshold(2), g2)).unwrap();
        let poly = enumerate_class(&ClassSpec::new(ClassKind::Polytopal, g2)).unwrap();
        assert_eq!(thr.len(), 14); // all dichotomies except the two diagonals
        assert_eq!(two.len(), 16); // tilted strips recover the diagonals
        assert_eq!(poly.len(), 16);
        let g3 = GridSpec::new(3, 2).unwrap();
        let cube = enumerate_class(&ClassSpec::new(ClassKind::Polytopal, g3)).unwrap();
        assert_eq!(cube.len(), 256); // cube vertices are in convex position
    }

    fn filter_all(grid: GridSpec, pred: impl Fn(&GridFunction) -> bool) -> Vec<Bitset> {
        let size = grid.size();
        let mut out = Vec::new();
        for bits in 0..1usize << size {
            let mut m = Bitset::new(size);
            for i in 0..size {
                if bits >> i & 1 == 1 {
                    m.set(i, true);
                }
            }
            if pred(&GridFunction::from_mask(grid, m.clone())) {
                out.push(m);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumerators_match_filtering_every_function() {
        for n in 2..=3usize {
            let grid = GridSpec::new(2, n).unwrap();
            let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, grid)).unwrap();
            let got: Vec<Bitset> = thr.members().iter().map(|g| g.mask().clone()).collect();
            assert_eq!(got, filter_all(grid, is_threshold), "thresholds n={n}");

            let poly = enumerate_class(&ClassSpec::new(ClassKind::Polytopal, grid)).unwrap();
            let got: Vec<Bitset> = poly.members().iter().map(|g| g.mask().clone()).collect();
            assert_eq!(got, filter_all(grid, is_polytopal), "convex sets n={n}");

            let two = enumerate_class(&ClassSpec::new(ClassKind::KThreshold(2), grid)).unwrap();
            let got: Vec<Bitset> = two.members().iter().map(|g| g.mask().clone()).collect();
            let expect = filter_all(grid, |g| is_k_threshold(g, 2, &thr).unwrap());
            assert_eq!(got, expect, "2-threshold n={n}");
        }
    }

    #[test]
    fn threshold_enumeration_matches_filtering_at_n4() {
        let grid = GridSpec::new(2, 4).unwrap();
        let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, grid)).unwrap();
        let got: Vec<Bitset> = thr.members().iter().map(|g| g.mask().clone()).collect();
        assert_eq!(got, filter_all(grid, is_threshold));
    }

    #[test]
    fn two_threshold_enumeration_matches_filtering_at_n4() {
        let grid = GridSpec::new(2, 4).unwrap();
        let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, grid)).unwrap();
        let two = enumerate_class(&ClassSpec::new(ClassKind::KThreshold(2), grid)).unwrap();
        let got: Vec<Bitset> = two.members().iter().map(|g| g.mask().clone()).collect();
        let expect = filter_all(grid, |g| is_k_threshold(g, 2, &thr).unwrap());
        assert_eq!(got, expect);
    }

    #[test]
    fn class_cardinalities_are_stable() {
        // cross-checked against filtering every function at n <= 4; the
        // larger grids are regression-frozen from the same enumerators
        let expect_thr = [14usize, 58, 174, 402, 838];
        let expect_two = [16usize, 189, 1620, 8939, 38452];
        let expect_poly = [16usize, 214, 2856, 33367];
        for (i, n) in (2..=6usize).enumerate() {
            let grid = GridSpec::new(2, n).unwrap();
            let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, grid)).unwrap();
            assert_eq!(thr.len(), expect_thr[i], "thresholds n={n}");
            let two = enumerate_class(&ClassSpec::new(ClassKind::KThreshold(2), grid)).unwrap();
            assert_eq!(two.len(), expect_two[i], "2-thresholds n={n}");
            if n <= 5 {
                let poly = enumerate_class(&ClassSpec::new(ClassKind::Polytopal, grid)).unwrap();
                assert_eq!(poly.len(), expect_poly[i], "convex sets n={n}");
            }
        }
    }

    #[test]
    fn polytopal_enumeration_matches_filtering_at_n4() {
        let grid = GridSpec::new(2, 4).unwrap();
        let poly = enumerate_class(&ClassSpec::new(ClassKind::Polytopal, grid)).unwrap();
        let got: Vec<Bitset> = poly.members().iter().map(|g| g.mask().clone()).collect();
        assert_eq!(got, filter_all(grid, is_polytopal));
    }

    #[test]
    fn classes_nest_as_mask_sets() {
        for n in 2..=4usize {
            let grid = GridSpec::new(2, n).unwrap();
            let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, grid)).unwrap();
            let two = enumerate_class(&ClassSpec::new(ClassKind::KThreshold(2), grid)).unwrap();
            let poly = enumerate_class(&ClassSpec::new(ClassKind::Polytopal, grid)).unwrap();
            assert!(thr.members().iter().all(|g| two.contains(g)));
            assert!(two.members().iter().all(|g| poly.contains(g)));
            assert!(two.len() > thr.len());
        }
    }

    #[test]
    fn two_point_strip_is_two_threshold() {
        // {(1,1),(2,2)} needs a tilted strip: no single halfplane works, but
        // -2 <= 2x1 - 3x2 <= -1 captures exactly these two points.
        let g = f(2, 4, &[(1, 1), (2, 2)]);
        let grid = g.grid();
        let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, grid)).unwrap();
        assert!(!is_threshold(&g));
        assert!(is_k_threshold(&g, 2, &thr).unwrap());
    }

    #[test]
    fn triangle_needs_three_halfplanes() {
        let g = f(2, 4, &[(1, 2), (2, 2), (2, 3)]);
        let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, g.grid())).unwrap();
        assert!(is_polytopal(&g));
        assert!(!is_k_threshold(&g, 2, &thr).unwrap());
        assert!(is_k_threshold(&g, 3, &thr).unwrap());
    }

    #[test]
    fn essential_points_of_square_fixture() {
        let fx = example_square();
        let cls = enumerate_class(&ClassSpec::new(
            ClassKind::KThreshold(2),
            fx.grid(),
        ))
        .unwrap();
        let essential = essential_bruteforce(&fx, &cls).unwrap();
        assert_eq!(
            essential,
            pts(&[(0, 3), (1, 1), (1, 2), (2, 1), (2, 2), (3, 3)])
        );
    }

    #[test]
    fn essential_of_all_zero_within_convex_sets() {
        let z = f(2, 2, &[]);
        let cls = enumerate_class(&ClassSpec::new(ClassKind::Polytopal, z.grid())).unwrap();
        let essential = essential_bruteforce(&z, &cls).unwrap();
        assert_eq!(essential.len(), 4);
    }

    #[test]
    fn nonconstant_thresholds_have_three_or_four_essential_points() {
        let grid = GridSpec::new(2, 4).unwrap();
        let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, grid)).unwrap();
        for g in thr.members() {
            if g.is_constant() {
                continue;
            }
            let e = essential_bruteforce(g, &thr).unwrap();
            assert!(
                e.len() == 3 || e.len() == 4,
                "expected 3 or 4 essential points, got {} for {:?}",
                e.len(),
                g.ones_points()
            );
        }
    }

    #[test]
    fn teaching_verdicts_for_square_fixture() {
        let fx = example_square();
        let cls = enumerate_class(&ClassSpec::new(
            ClassKind::KThreshold(2),
            fx.grid(),
        ))
        .unwrap();
        let essential = essential_bruteforce(&fx, &cls).unwrap();
        assert!(!is_teaching_bruteforce(&fx, &essential, &cls).unwrap());
        for extra in [(1, 3), (2, 3)] {
            let mut t = essential.clone();
            t.push(LatticePoint::from(extra));
            assert!(is_teaching_bruteforce(&fx, &t, &cls).unwrap());
        }
        let all: Vec<LatticePoint> = fx.grid().points().collect();
        assert!(is_teaching_bruteforce(&fx, &all, &cls).unwrap());
    }

    #[test]
    fn rejects_functions_outside_the_class() {
        let xor = f(2, 2, &[(0, 0), (1, 1)]);
        let thr = enumerate_class(&ClassSpec::new(ClassKind::Threshold, xor.grid())).unwrap();
        assert!(matches!(
            essential_bruteforce(&xor, &thr),
            Err(Error::NotInClass)
        ));
        assert!(matches!(
            is_teaching_bruteforce(&xor, &[], &thr),
            Err(Error::NotInClass)
        ));
    }

    #[test]
    fn teaching_matches_transversals_of_disagreement_family() {
        let fx = example_square();
        let cls = enumerate_class(&ClassSpec::new(
            ClassKind::KThreshold(2),
            fx.grid(),
        ))
        .unwrap();
        let family = disagreement_family(&fx, &cls).unwrap();
        assert!(family.sets.iter().all(|s| !s.is_empty()));
        // antichain: no containment either way
        for (i, a) in family.sets.iter().enumerate() {
            for (j, b) in family.sets.iter().enumerate() {
                if i != j {
                    assert!(!a.is_subset_of(b));
                }
            }
        }
        // spot-check the equivalence on a spread of candidate sets
        let grid = fx.grid();
        for bits in (0..1u32 << 16).step_by(257) {
            let mut t = Bitset::new(16);
            for i in 0..16 {
                if bits >> i & 1 == 1 {
                    t.set(i, true);
                }
            }
            let t_points: Vec<LatticePoint> = t.iter_ones().map(|i| grid.point_at(i)).collect();
            let teaching = is_teaching_bruteforce(&fx, &t_points, &cls).unwrap();
            let hits_all = family.sets.iter().all(|s| !s.is_disjoint(&t));
            assert_eq!(teaching, hits_all);
        }
    }

    #[test]
    fn square_fixture_has_multiple_minimal_teaching_sets() {
        let fx = example_square();
        let cls = enumerate_class(&ClassSpec::new(
            ClassKind::KThreshold(2),
            fx.grid(),
        ))
        .unwrap();
        let report = minimal_teaching_sets(&fx, &cls, 1000).unwrap();
        assert!(report.j_count >= 2);
        assert_eq!(report.sigma, 7);
        let essential = essential_bruteforce(&fx, &cls).unwrap();
        for extra in [(1, 3), (2, 3)] {
            let mut t = essential.clone();
            t.push(LatticePoint::from(extra));
            t.sort();
            assert!(
                report.witnesses.contains(&t),
                "expected witness with {extra:?}"
            );
        }
        // every witness is a teaching set and minimal
        for w in &report.witnesses {
            assert!(is_teaching_bruteforce(&fx, w, &cls).unwrap());
            for drop in 0..w.len() {
                let mut smaller = w.clone();
                smaller.remove(drop);
                assert!(!is_teaching_bruteforce(&fx, &smaller, &cls).unwrap());
            }
        }
    }

    #[test]
    fn all_zero_needs_the_whole_grid_for_small_conjunction_classes() {
        for n in 2..=3usize {
            let grid = GridSpec::new(2, n).unwrap();
            let cls = enumerate_class(&ClassSpec::new(ClassKind::KThreshold(2), grid)).unwrap();
            let z = GridFunction::zero(grid);
            let report = minimal_teaching_sets(&z, &cls, 10).unwrap();
            assert_eq!(report.sigma, n * n);
            assert_eq!(report.j_count, 1);
        }
    }

    #[test]
    fn unique_minimal_transversal_matches_essential_for_convex_class() {
        let tri = f(2, 4, &[(1, 1), (1, 2), (2, 1)]);
        let cls = enumerate_class(&ClassSpec::new(ClassKind::Polytopal, tri.grid())).unwrap();
        let report = minimal_teaching_sets(&tri, &cls, 10).unwrap();
        assert_eq!(report.j_count, 1);
        let essential = essential_bruteforce(&tri, &cls).unwrap();
        assert_eq!(report.witnesses[0], essential);
        assert_eq!(report.sigma, 13);
    }

    #[test]
    fn conjunction_sweep_is_clean_and_corruption_is_detected() {
        for n in 2..=3usize {
            let clean = conjunction_property_suite(n, 2).unwrap();
            assert_eq!(clean.violations, 0, "n={n}: {:?}", clean.notes);
            assert!(clean.pairs_checked > 0);
            assert!(clean.unique_pairs > 0);
            let dirty = conjunction_property_suite_corrupted(n, 2).unwrap();
            assert!(dirty.violations > 0);
        }
        assert!(matches!(
            conjunction_property_suite(2, 3),
            Err(Error::Precondition(_))
        ));
    }
}
