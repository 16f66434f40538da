//! Exact convex-hull membership and hull intersection in arbitrary dimension,
//! decided by a rational phase-1 simplex (Bland's rule, so it always
//! terminates). Coordinates never leave exact arithmetic.

use crate::error::{Error, Result};
use crate::grid::LatticePoint;
use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

type Rat = BigRational;

fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Does `A z = b, z >= 0` have a solution? Decided exactly.
fn system_feasible(a: &[Vec<Rat>], b: &[Rat]) -> bool {
    let m = a.len();
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    // Tableau with one artificial variable per row; minimize their sum.
    // Columns: 0..n original, n..n+m artificial, last = right-hand side.
    let cols = n + m + 1;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Rat> = Vec::with_capacity(cols);
        for j in 0..n {
            row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { Rat::one() } else { Rat::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        // Reduced cost of column j under cost 1 on artificials, 0 elsewhere:
        // r_j = c_j - sum over rows with artificial basis of t[i][j].
        let reduced = |t: &Vec<Vec<Rat>>, basis: &Vec<usize>, j: usize| -> Rat {
            let mut r = if j >= n { Rat::one() } else { Rat::zero() };
            for i in 0..m {
                if basis[i] >= n {
                    r -= &t[i][j];
                }
            }
            r
        };
        // Bland: entering column is the smallest index with negative reduced cost.
        let entering = (0..n + m).find(|&j| reduced(&t, &basis, j).is_negative());
        let Some(j) = entering else {
            let mut objective = Rat::zero();
            for i in 0..m {
                if basis[i] >= n {
                    objective += &t[i][cols - 1];
                }
            }
            return objective.is_zero();
        };
        // Ratio test; Bland tie-break on the leaving basic variable index.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if t[i][j].is_positive() {
                let ratio = &t[i][cols - 1] / &t[i][j];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        // Phase-1 objective is bounded below by zero, so a pivot row exists.
        let i = leave.expect("phase-1 simplex cannot be unbounded");
        let piv = t[i][j].clone();
        for x in t[i].iter_mut() {
            *x /= &piv;
        }
        for r in 0..m {
            if r != i && !t[r][j].is_zero() {
                let factor = t[r][j].clone();
                for c in 0..cols {
                    let delta = &factor * &t[i][c];
                    t[r][c] -= delta;
                }
            }
        }
        basis[i] = j;
    }
}

fn check_dims(points: &[LatticePoint], d: usize) -> Result<()> {
    for p in points {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
    }
    Ok(())
}

/// Is `x` in the convex hull of `points`? Exact, any dimension; the hull of
/// an empty set contains nothing.
pub fn point_in_hull(x: &LatticePoint, points: &[LatticePoint]) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    let d = x.dim();
    check_dims(points, d)?;
    // Find lambda >= 0 with sum lambda_j = 1 and sum lambda_j p_j = x.
    let n = points.len();
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(d + 1);
    let mut b: Vec<Rat> = Vec::with_capacity(d + 1);
    for k in 0..d {
        a.push((0..n).map(|j| rat(points[j].coords()[k])).collect());
        b.push(rat(x.coords()[k]));
    }
    a.push(vec![Rat::one(); n]);
    b.push(Rat::one());
    Ok(system_feasible(&a, &b))
}

/// Do the convex hulls of `left` and `right` share a point? Exact, any
/// dimension; an empty side never intersects anything.
pub fn hulls_intersect(left: &[LatticePoint], right: &[LatticePoint]) -> Result<bool> {
    if left.is_empty() || right.is_empty() {
        return Ok(false);
    }
    let d = left[0].dim();
    check_dims(left, d)?;
    check_dims(right, d)?;
    // lambda, mu >= 0; sum lambda = 1; sum mu = 1; sum lambda_j p_j = sum mu_k q_k.
    let nl = left.len();
    let nr = right.len();
    let cols = nl + nr;
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(d + 2);
    let mut b: Vec<Rat> = Vec::with_capacity(d + 2);
    for k in 0..d {
        let mut row: Vec<Rat> = Vec::with_capacity(cols);
        for p in left {
            row.push(rat(p.coords()[k]));
        }
        for q in right {
            row.push(-rat(q.coords()[k]));
        }
        a.push(row);
        b.push(Rat::zero());
    }
    let mut row = vec![Rat::one(); nl];
    row.extend(std::iter::repeat(Rat::zero()).take(nr));
    a.push(row);
    b.push(Rat::one());
    let mut row = vec![Rat::zero(); nl];
    row.extend(std::iter::repeat(Rat::one()).take(nr));
    a.push(row);
    b.push(Rat::one());
    Ok(system_feasible(&a, &b))
}
