//! Grids, lattice points and 0/1 grid functions.
//!
//! Points of the grid `{0..n-1}^d` are indexed row-major on coordinates, so
//! index order coincides with lexicographic order on coordinate vectors. A
//! [`GridFunction`] stores the set of 1-points as a bit mask over that index
//! space, which makes flips, comparisons and class-enumeration dedup cheap.

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Grid side length and dimension for `{0..n-1}^d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GridSpec {
    d: usize,
    n: usize,
}

/// Largest grid cardinality we accept (`n^d <= 2^32`).
const MAX_CARDINALITY: u128 = 1 << 32;

impl GridSpec {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidGrid("dimension must be at least 1".into()));
        }
        if n < 2 {
            return Err(Error::InvalidGrid("side length must be at least 2".into()));
        }
        let mut card: u128 = 1;
        for _ in 0..d {
            card = card.saturating_mul(n as u128);
            if card > MAX_CARDINALITY {
                return Err(Error::InvalidGrid(format!(
                    "grid cardinality {n}^{d} exceeds 2^32"
                )));
            }
        }
        Ok(GridSpec { d, n })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of points in the grid.
    pub fn size(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    /// Row-major index of a point; requires the point to be in range.
    pub fn index_of(&self, p: &LatticePoint) -> Result<usize> {
        self.check_point(p)?;
        let mut idx = 0usize;
        for &c in p.coords() {
            idx = idx * self.n + c as usize;
        }
        Ok(idx)
    }

    /// Inverse of [`GridSpec::index_of`].
    pub fn point_at(&self, mut idx: usize) -> LatticePoint {
        debug_assert!(idx < self.size());
        let mut coords = vec![0i64; self.d];
        for i in (0..self.d).rev() {
            coords[i] = (idx % self.n) as i64;
            idx /= self.n;
        }
        LatticePoint::new(coords)
    }

    pub fn check_point(&self, p: &LatticePoint) -> Result<()> {
        if p.dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: p.dim(),
            });
        }
        if p.coords().iter().any(|&c| c < 0 || c >= self.n as i64) {
            return Err(Error::OutOfRange {
                point: format!("{p:?}"),
                side: self.n,
            });
        }
        Ok(())
    }

    /// All grid points in index (= lexicographic) order.
    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        (0..self.size()).map(|i| self.point_at(i))
    }

    /// True if the point lies on the grid border (some coordinate is 0 or n-1).
    pub fn on_border(&self, p: &LatticePoint) -> bool {
        p.coords()
            .iter()
            .any(|&c| c == 0 || c == self.n as i64 - 1)
    }
}

/// Point of the integer lattice. Ordering is lexicographic on coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn xy(x: i64, y: i64) -> Self {
        LatticePoint(vec![x, y])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// The two coordinates of a planar point.
    pub fn as_xy(&self) -> Result<(i64, i64)> {
        if self.0.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.0.len(),
            });
        }
        Ok((self.0[0], self.0[1]))
    }
}

impl std::fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from(p: (i64, i64)) -> Self {
        LatticePoint::xy(p.0, p.1)
    }
}

/// 0/1 function on a grid, stored as the bit mask of its 1-points.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GridFunction {
    grid: GridSpec,
    ones: Bitset,
}

impl GridFunction {
    /// Constant-0 function.
    pub fn zero(grid: GridSpec) -> Self {
        GridFunction {
            grid,
            ones: Bitset::new(grid.size()),
        }
    }

    pub fn from_points<P>(grid: GridSpec, ones: impl IntoIterator<Item = P>) -> Result<Self>
    where
        P: Into<LatticePoint>,
    {
        let mut f = GridFunction::zero(grid);
        for p in ones {
            let idx = grid.index_of(&p.into())?;
            f.ones.set(idx, true);
        }
        Ok(f)
    }

    pub fn from_mask(grid: GridSpec, ones: Bitset) -> Self {
        debug_assert_eq!(ones.len(), grid.size());
        GridFunction { grid, ones }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn mask(&self) -> &Bitset {
        &self.ones
    }

    pub fn value(&self, p: &LatticePoint) -> Result<bool> {
        Ok(self.ones.get(self.grid.index_of(p)?))
    }

    pub fn count_ones(&self) -> usize {
        self.ones.count_ones()
    }

    pub fn is_constant(&self) -> bool {
        let c = self.count_ones();
        c == 0 || c == self.grid.size()
    }

    /// 1-points in lexicographic order.
    pub fn ones_points(&self) -> Vec<LatticePoint> {
        self.ones.iter_ones().map(|i| self.grid.point_at(i)).collect()
    }

    /// 0-points in lexicographic order.
    pub fn zeros_points(&self) -> Vec<LatticePoint> {
        self.ones
            .complement()
            .iter_ones()
            .map(|i| self.grid.point_at(i))
            .collect()
    }
}

/// Function class identifier.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ClassKind {
    /// Functions whose 1-set and 0-set are separable by a hyperplane.
    Threshold,
    /// Conjunctions of `k` threshold functions.
    KThreshold(u32),
    /// Conjunctions of any number of threshold functions; equivalently the
    /// functions whose 1-set is the full set of lattice points of its own
    /// convex hull.
    Polytopal,
}

/// A class together with the grid it lives on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ClassSpec {
    pub kind: ClassKind,
    pub grid: GridSpec,
}

impl ClassSpec {
    pub fn new(kind: ClassKind, grid: GridSpec) -> Self {
        ClassSpec { kind, grid }
    }
}

/// JSON wire format of a grid function: `{"d":..,"n":..,"ones":[[..],..]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionDoc {
    d: usize,
    n: usize,
    ones: Vec<Vec<i64>>,
}

/// Parses a grid function from its JSON document. Duplicate points are
/// tolerated (set semantics); malformed shapes, unknown keys, out-of-range
/// coordinates and oversized grids are rejected.
pub fn parse_function(json: &str) -> Result<GridFunction> {
    let doc: FunctionDoc = serde_json::from_str(json)?;
    let grid = GridSpec::new(doc.d, doc.n)?;
    let mut f = GridFunction::zero(grid);
    for coords in doc.ones {
        if coords.len() != doc.d {
            return Err(Error::DimensionMismatch {
                expected: doc.d,
                got: coords.len(),
            });
        }
        let idx = grid.index_of(&LatticePoint::new(coords))?;
        f.ones.set(idx, true);
    }
    Ok(f)
}

/// Serializes a grid function to canonical JSON: 1-points sorted
/// lexicographically, keys exactly `d`, `n`, `ones`.
pub fn serialize_function(f: &GridFunction) -> String {
    let doc = FunctionDoc {
        d: f.grid.d(),
        n: f.grid.n(),
        ones: f.ones_points().iter().map(|p| p.coords().to_vec()).collect(),
    };
    serde_json::to_string(&doc).expect("function document serializes")
}

/// Returns a copy of `f` with the value at `x` flipped.
pub fn flip(f: &GridFunction, x: &LatticePoint) -> Result<GridFunction> {
    let idx = f.grid.index_of(x)?;
    let mut out = f.clone();
    out.ones.toggle(idx);
    Ok(out)
}

/// The eight images of a planar grid function under the symmetries of the
/// square (rotations by 0/90/180/270 degrees and the four reflections), in a
/// fixed order starting with the identity.
pub fn symmetry_images(f: &GridFunction) -> Result<Vec<GridFunction>> {
    let grid = f.grid();
    if grid.d() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: grid.d(),
        });
    }
    let m = grid.n() as i64 - 1;
    let maps: [fn(i64, i64, i64) -> (i64, i64); 8] = [
        |x, y, _| (x, y),
        |x, y, m| (y, m - x),
        |x, y, m| (m - x, m - y),
        |x, y, m| (m - y, x),
        |x, y, m| (m - x, y),
        |x, y, m| (x, m - y),
        |x, y, _| (y, x),
        |x, y, m| (m - y, m - x),
    ];
    let mut out = Vec::with_capacity(8);
    for map in maps {
        let mut g = GridFunction::zero(grid);
        for p in f.ones_points() {
            let (x, y) = p.as_xy()?;
            let (ix, iy) = map(x, y, m);
            let idx = grid.index_of(&LatticePoint::xy(ix, iy))?;
            g.ones.set(idx, true);
        }
        out.push(g);
    }
    Ok(out)
}

/// Applies the same eight symmetries to a single point (same order as
/// [`symmetry_images`]).
pub fn symmetry_images_point(grid: GridSpec, p: &LatticePoint) -> Result<Vec<LatticePoint>> {
    let f = GridFunction::from_points(grid, [p.clone()])?;
    symmetry_images(&f)?
        .iter()
        .map(|g| {
            g.ones_points()
                .into_iter()
                .next()
                .ok_or_else(|| Error::EmptyInput("symmetry image"))
        })
        .collect()
}
