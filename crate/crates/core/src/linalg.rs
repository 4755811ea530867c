//! Exact integer and rational linear algebra for the rank criterion.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{CanonicalOrder, Graph};

/// Dense arbitrary-precision integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().cloned().map(Into::into).collect(),
        })
    }

    /// Single column holding `values`.
    pub fn column<T: Into<BigInt>>(values: impl IntoIterator<Item = T>) -> Self {
        let entries: Vec<BigInt> = values.into_iter().map(Into::into).collect();
        Self {
            rows: entries.len(),
            cols: 1,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: impl Into<BigInt>) {
        self.entries[r * self.cols + c] = value.into();
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// `[self | other]`.
    pub fn augment(&self, other: &IntMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot augment {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            entries.extend_from_slice(self.row(r));
            entries.extend_from_slice(other.row(r));
        }
        Ok(Self {
            rows: self.rows,
            cols,
            entries,
        })
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rational vector; entries are always in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatVector(Vec<BigRational>);

impl RatVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        // BigRational::new reduces; values built via arithmetic are already reduced.
        Self(entries)
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Least positive integer `d` with `d·x` integral.
    pub fn denominator_lcm(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }

    /// `scale·x`, which must be integral.
    pub fn scaled_to_integers(&self, scale: &BigInt) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|q| {
                let s = q * BigRational::from_integer(scale.clone());
                s.is_integer().then(|| s.to_integer())
            })
            .collect()
    }
}

/// Rank by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry is a minor of the input, so each division is exact.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "inexact Bareiss division");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// A particular solution of `m·x = rhs` with every free variable set to 0.
///
/// Pivots are chosen column by column from the left, taking the first row
/// (top to bottom) with a nonzero entry. Returns `None` when inconsistent.
pub fn solve_particular(m: &IntMatrix, rhs: &IntMatrix) -> Result<Option<RatVector>> {
    if rhs.cols() != 1 || rhs.rows() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side is {}x{}, expected {}x1",
            rhs.rows(),
            rhs.cols(),
            m.rows()
        )));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let to_q = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            m.row(r)
                .iter()
                .chain(std::iter::once(rhs.get(r, 0)))
                .map(to_q)
                .collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..=cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if c == cols {
            // Pivot in the right-hand side column: 0 = nonzero.
            return Ok(None);
        }
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r][c..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row[c..=cols].iter_mut().zip(&pivot_row[c..=cols]) {
                *x -= &factor * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = a[row][cols].clone();
    }
    Ok(Some(RatVector::new(x)))
}

/// `m·x` for a rational vector.
pub fn mul_vector(m: &IntMatrix, x: &RatVector) -> Result<Vec<BigRational>> {
    if x.len() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "vector has {} entries, matrix has {} columns",
            x.len(),
            m.cols()
        )));
    }
    Ok((0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .zip(x.entries())
                .map(|(a, q)| q * BigRational::from_integer(a.clone()))
                .fold(BigRational::zero(), |acc, t| acc + t)
        })
        .collect())
}

/// Incidence matrix under a vertex order: entry `(i, j)` counts edges
/// from `order[i]` to `order[j]`.
pub fn incidence_matrix(g: &Graph, order: &[usize]) -> IntMatrix {
    let h = g.vertex_count();
    assert_eq!(
        order.len(),
        h,
        "order must be a permutation of the vertices"
    );
    let mut pos = vec![usize::MAX; h];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut counts = vec![0u64; h * h];
    for e in 0..g.edge_count() {
        counts[pos[g.source_of(e)] * h + pos[g.range_of(e)]] += 1;
    }
    IntMatrix {
        rows: h,
        cols: h,
        entries: counts.into_iter().map(BigInt::from).collect(),
    }
}

/// `Aᵗ − J` with the all-ones column, under the canonical vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionSystem {
    pub matrix: IntMatrix,
    pub rhs: IntMatrix,
    pub order: CanonicalOrder,
}

impl CriterionSystem {
    pub fn regular_count(&self) -> usize {
        self.order.regular_count
    }

    pub fn augmented(&self) -> IntMatrix {
        self.matrix
            .augment(&self.rhs)
            .expect("criterion system dimensions agree")
    }
}

pub fn criterion_system(g: &Graph) -> Result<CriterionSystem> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let order = g.canonical_order();
    let z = order.regular_count;
    let mut matrix = incidence_matrix(g, &order.order).transpose();
    for i in 0..z {
        let d = matrix.get(i, i) - 1;
        matrix.set(i, i, d);
    }
    let h = g.vertex_count();
    for r in 0..h {
        for c in z..h {
            assert!(
                matrix.get(r, c).is_zero(),
                "sink column {c} of the criterion matrix is nonzero"
            );
        }
    }
    Ok(CriterionSystem {
        matrix,
        rhs: IntMatrix::column(std::iter::repeat_n(1, h)),
        order,
    })
}
