//! Polynomial matrices and Mulders-Storjohann reduction to weak Popov form.
//!
//! Columns are numbered from 1 in pivot indices; 0 marks a zero row.

use std::fmt::Write as _;

use crate::field::FieldCtx;
use crate::poly::{Degree, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: Vec<Vec<Poly>>,
}

/// Rightmost column attaining the maximal degree of `row` (1-based), or 0.
pub fn pivot_index(row: &[Poly]) -> usize {
    let mut best = Degree::NegInf;
    let mut idx = 0;
    for (j, a) in row.iter().enumerate() {
        let d = a.degree();
        if d != Degree::NegInf && d >= best {
            best = d;
            idx = j + 1;
        }
    }
    idx
}

/// Counters collected while reducing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReductionStats {
    /// Simple transformations applied.
    pub transformations: usize,
    /// Multiply-subtract operations on `F_q` coefficients.
    pub field_ops: usize,
    /// Passes of the outer loop.
    pub sweeps: usize,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub reduced: PolyMatrix,
    /// `U` with `U * input = reduced`, when requested.
    pub transform: Option<PolyMatrix>,
    pub stats: ReductionStats,
}

impl PolyMatrix {
    pub fn new(rows: Vec<Vec<Poly>>) -> PolyMatrix {
        if let Some(first) = rows.first() {
            assert!(rows.iter().all(|r| r.len() == first.len()), "ragged matrix");
        }
        PolyMatrix { rows }
    }

    pub fn identity(n: usize, f: &FieldCtx) -> PolyMatrix {
        PolyMatrix::new(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { Poly::one(f) } else { Poly::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| pivot_index(r)).collect()
    }

    /// Degree of the pivot element of row `i`.
    pub fn pivot_degree(&self, i: usize) -> Degree {
        match pivot_index(&self.rows[i]) {
            0 => Degree::NegInf,
            j => self.rows[i][j - 1].degree(),
        }
    }

    /// Maximal entry degree of row `i`.
    pub fn row_degree(&self, i: usize) -> Degree {
        self.rows[i]
            .iter()
            .map(Poly::degree)
            .max()
            .unwrap_or(Degree::NegInf)
    }

    /// Nonzero pivot indices are pairwise distinct.
    pub fn is_weak_popov(&self) -> bool {
        max_repeat(&self.pivots()) <= 1
    }

    pub fn mul(&self, rhs: &PolyMatrix, f: &FieldCtx) -> PolyMatrix {
        assert_eq!(self.ncols(), rhs.nrows(), "shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..rhs.ncols())
                    .map(|j| {
                        r.iter()
                            .zip(&rhs.rows)
                            .fold(Poly::zero(), |acc, (a, b)| acc.add(&a.mul(&b[j], f), f))
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::new(rows)
    }

    /// `u * self` for a row vector `u`.
    pub fn left_mul_vec(&self, u: &[Poly], f: &FieldCtx) -> Vec<Poly> {
        assert_eq!(u.len(), self.nrows());
        (0..self.ncols())
            .map(|j| {
                u.iter()
                    .zip(&self.rows)
                    .fold(Poly::zero(), |acc, (a, r)| acc.add(&a.mul(&r[j], f), f))
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self, f: &FieldCtx) -> Poly {
        let n = self.nrows();
        assert_eq!(n, self.ncols(), "square matrix required");
        if n == 0 {
            return Poly::one(f);
        }
        let mut a = self.rows.clone();
        let mut negate = false;
        let mut prev = Poly::one(f);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Poly::zero();
                };
                a.swap(k, swap);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].mul(&a[k][k], f).sub(&a[i][k].mul(&a[k][j], f), f);
                    let (q, r) = num.divmod(&prev, f).expect("nonzero pivot");
                    debug_assert!(r.is_zero(), "Bareiss division is exact");
                    a[i][j] = q;
                }
                a[i][k] = Poly::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            det.neg(f)
        } else {
            det
        }
    }

    /// Reduces to weak Popov form.
    ///
    /// For every row `k` with a pivot and every other row `l`, the entry of
    /// `l` in the pivot column of `k` is reduced below the pivot degree with
    /// `A_l <- A_l - c x^e A_k`; passes repeat while a pivot index occurs
    /// twice. `track_transform` accumulates `U` with `U A = A'`.
    pub fn weak_popov(&self, f: &FieldCtx, track_transform: bool) -> Reduction {
        let n = self.nrows();
        let mut a = self.rows.clone();
        let mut u = track_transform.then(|| PolyMatrix::identity(n, f).rows);
        let mut piv: Vec<usize> = a.iter().map(|r| pivot_index(r)).collect();
        let mut stats = ReductionStats::default();

        while max_repeat(&piv) > 1 {
            stats.sweeps += 1;
            for k in 0..n {
                if piv[k] == 0 {
                    continue;
                }
                let col = piv[k] - 1;
                let row_k = a[k].clone();
                let u_k = u.as_ref().map(|u| u[k].clone());
                let Degree::Finite(dk) = row_k[col].degree() else {
                    unreachable!("pivot element is nonzero");
                };
                let inv_lead = f.inv(row_k[col].lead()).expect("nonzero lead");
                for l in 0..n {
                    if l == k {
                        continue;
                    }
                    while let Degree::Finite(dl) = a[l][col].degree() {
                        if dl < dk {
                            break;
                        }
                        let c = f.mul(a[l][col].lead(), inv_lead);
                        let e = dl - dk;
                        for (dst, src) in a[l].iter_mut().zip(&row_k) {
                            dst.sub_scaled_shift(c, e, src, f);
                            stats.field_ops += src.coeffs().len();
                        }
                        if let (Some(u), Some(u_k)) = (u.as_mut(), u_k.as_ref()) {
                            for (dst, src) in u[l].iter_mut().zip(u_k) {
                                dst.sub_scaled_shift(c, e, src, f);
                            }
                        }
                        stats.transformations += 1;
                    }
                    piv[l] = pivot_index(&a[l]);
                }
            }
        }
        Reduction {
            reduced: PolyMatrix::new(a),
            transform: u.map(PolyMatrix::new),
            stats,
        }
    }

    /// Row whose pivot has least degree; ties go to the lowest index.
    /// `None` if every row is zero.
    pub fn min_pivot_row(&self) -> Option<usize> {
        (0..self.nrows())
            .filter(|&i| pivot_index(&self.rows[i]) != 0)
            .min_by_key(|&i| (self.pivot_degree(i), i))
    }

    /// Entry degrees as a text grid, `.` for zero entries.
    pub fn degree_tableau(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|a| match a.degree() {
                    Degree::NegInf => ".".to_string(),
                    Degree::Finite(d) => d.to_string(),
                })
                .collect();
            writeln!(out, "{}", cells.join(" ")).unwrap();
        }
        out
    }
}

/// Largest multiplicity among the nonzero entries.
fn max_repeat(piv: &[usize]) -> usize {
    piv.iter()
        .filter(|&&v| v != 0)
        .map(|v| piv.iter().filter(|&&w| w == *v).count())
        .max()
        .unwrap_or(0)
}
