//! Exact integer and rational linear algebra: Smith and Hermite normal
//! forms over `BigInt`, lattice kernels and solvers, and Gaussian
//! elimination over `BigRational`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        IntMat { rows: r, cols: c, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let v: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMat::from_rows(&v)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += k * row[b]
    fn add_row(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self[(b, j)] * k;
            self[(a, j)] += t;
        }
    }

    /// col[a] += k * col[b]
    fn add_col(&mut self, a: usize, b: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self[(i, b)] * k;
            self[(i, a)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -self[(a, j)].clone();
            self[(a, j)] = t;
        }
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &self[(i, j)] * &x[j])
                    .sum::<BigInt>()
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form: `u * a * v = diag(d)` with `u`, `v` unimodular and
/// each diagonal entry dividing the next.
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub u: IntMat,
    pub v: IntMat,
    pub rank: usize,
}

pub fn smith_normal_form(a: &IntMat) -> Snf {
    let mut s = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let n = a.rows.min(a.cols);

    for t in 0..n {
        // move a pivot of minimal absolute value into (t, t)
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..s.rows {
                for j in t..s.cols {
                    if !s[(i, j)].is_zero() {
                        let better = match pivot {
                            None => true,
                            Some((pi, pj)) => s[(i, j)].abs() < s[(pi, pj)].abs(),
                        };
                        if better {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
            let (pi, pj) = match pivot {
                None => {
                    return finish_snf(s, u, v, t);
                }
                Some(p) => p,
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..s.rows {
                if !s[(i, t)].is_zero() {
                    let q = -(&s[(i, t)] / &s[(t, t)]);
                    s.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    if !s[(i, t)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..s.cols {
                if !s[(t, j)].is_zero() {
                    let q = -(&s[(t, j)] / &s[(t, t)]);
                    s.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    if !s[(t, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // divisibility fix: pivot must divide every remaining entry
            let mut fixed = true;
            'outer: for i in t + 1..s.rows {
                for j in t + 1..s.cols {
                    if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                        s.add_row(t, i, &BigInt::one());
                        u.add_row(t, i, &BigInt::one());
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish_snf(s, u, v, n)
}

fn finish_snf(s: IntMat, u: IntMat, v: IntMat, rank_bound: usize) -> Snf {
    let n = s.rows.min(s.cols);
    let mut diag = Vec::with_capacity(n);
    let mut rank = 0;
    for t in 0..n {
        let d = s[(t, t)].clone();
        if !d.is_zero() && t < rank_bound {
            rank += 1;
        }
        diag.push(d);
    }
    Snf { diag, u, v, rank }
}

/// Basis (as rows) of the right kernel `{ x : a x = 0 }`.
pub fn kernel_rows(a: &IntMat) -> IntMat {
    let snf = smith_normal_form(a);
    let mut rows = Vec::new();
    for j in snf.rank..a.cols {
        let col: Vec<BigInt> = (0..a.cols).map(|i| snf.v[(i, j)].clone()).collect();
        rows.push(col);
    }
    if rows.is_empty() {
        IntMat {
            rows: 0,
            cols: a.cols,
            data: vec![],
        }
    } else {
        IntMat::from_rows(&rows)
    }
}

/// One integer solution of `a x = b`, if any.
pub fn solve(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len());
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for i in 0..a.rows {
        if i < snf.diag.len() && !snf.diag[i].is_zero() {
            let (q, r) = ub[i].div_rem(&snf.diag[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ub[i].is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Hermite normal form of the row span: canonical upper-echelon basis,
/// zero rows dropped.
pub fn row_hnf(a: &IntMat) -> IntMat {
    let mut m = a.clone();
    let mut pivot_row = 0;
    for col in 0..m.cols {
        if pivot_row == m.rows {
            break;
        }
        // euclid on the entries of this column at or below pivot_row
        loop {
            let mut min: Option<usize> = None;
            for i in pivot_row..m.rows {
                if !m[(i, col)].is_zero() {
                    let better = match min {
                        None => true,
                        Some(k) => m[(i, col)].abs() < m[(k, col)].abs(),
                    };
                    if better {
                        min = Some(i);
                    }
                }
            }
            let k = match min {
                None => break,
                Some(k) => k,
            };
            m.swap_rows(pivot_row, k);
            let mut done = true;
            for i in pivot_row + 1..m.rows {
                if !m[(i, col)].is_zero() {
                    let q = -(&m[(i, col)] / &m[(pivot_row, col)]);
                    m.add_row(i, pivot_row, &q);
                    if !m[(i, col)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[(pivot_row, col)].is_zero() {
            continue;
        }
        if m[(pivot_row, col)].is_negative() {
            m.negate_row(pivot_row);
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..pivot_row {
            let q = -m[(i, col)].div_floor(&m[(pivot_row, col)]);
            m.add_row(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    let rows: Vec<Vec<BigInt>> = (0..pivot_row).map(|i| m.row(i).to_vec()).collect();
    if rows.is_empty() {
        IntMat {
            rows: 0,
            cols: a.cols,
            data: vec![],
        }
    } else {
        IntMat::from_rows(&rows)
    }
}

/// Index `[Z^n : L]` of the full-rank lattice spanned by the rows.
/// Returns `None` when the rows do not span a finite-index sublattice.
pub fn lattice_index(basis: &IntMat) -> Option<BigInt> {
    let h = row_hnf(basis);
    if h.rows != h.cols {
        return None;
    }
    let mut idx = BigInt::one();
    for i in 0..h.rows {
        idx *= &h[(i, i)];
    }
    Some(idx)
}

/// Solve `y * basis = target` over the integers (row-vector convention).
pub fn in_row_span(basis: &IntMat, target: &[BigInt]) -> Option<Vec<BigInt>> {
    // transpose to column convention: basis^T y^T = target^T
    let mut t = IntMat::zero(basis.cols, basis.rows);
    for i in 0..basis.rows {
        for j in 0..basis.cols {
            t[(j, i)] = basis[(i, j)].clone();
        }
    }
    solve(&t, target)
}

// ---------------------------------------------------------------------
// rational elimination

/// Rank of a matrix given as rows of exact rationals.
pub fn rat_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..m.len()).find(|&i| !m[i][col].is_zero());
        let pivot = match pivot {
            None => continue,
            Some(p) => p,
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for j in col..cols {
            let t = &m[rank][j] * &inv;
            m[rank][j] = t;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..cols {
                    let t = &m[rank][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Basis of the right kernel `{ x : m x = 0 }` over the rationals.
pub fn rat_kernel(m: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..a.len()).find(|&i| !a[i][col].is_zero());
        let pivot = match pivot {
            None => continue,
            Some(p) => p,
        };
        a.swap(rank, pivot);
        let inv = a[rank][col].recip();
        for j in 0..cols {
            let t = &a[rank][j] * &inv;
            a[rank][j] = t;
        }
        for i in 0..a.len() {
            if i != rank && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..cols {
                    let t = &a[rank][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut x = vec![BigRational::zero(); cols];
        x[f] = BigRational::one();
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = -a[r][f].clone();
        }
        basis.push(x);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_diag_divisibility() {
        let a = IntMat::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&a).mul(&snf.v).row(0)[0], snf.diag[0]);
        let d: Vec<i64> = snf
            .diag
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(d, vec![2, 2, 156]);
        for t in 0..2 {
            assert!((&snf.diag[t + 1] % &snf.diag[t]).is_zero());
        }
        // check u*a*v is the diagonal
        let prod = snf.u.mul(&a).mul(&snf.v);
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert_eq!(prod[(i, j)], snf.diag[i]);
                } else {
                    assert!(prod[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn kernel_annihilates() {
        let a = IntMat::from_i64(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = kernel_rows(&a);
        assert_eq!(k.rows, 2);
        for i in 0..k.rows {
            let prod = a.mul_vec(k.row(i));
            assert!(prod.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_roundtrip() {
        let a = IntMat::from_i64(&[vec![2, 0], vec![1, 3]]);
        let b = vec![BigInt::from(4), BigInt::from(11)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        // unsolvable: 2x = 3
        let a2 = IntMat::from_i64(&[vec![2]]);
        assert!(solve(&a2, &[BigInt::from(3)]).is_none());
    }

    #[test]
    fn hnf_canonical_and_index() {
        let a = IntMat::from_i64(&[vec![1, 0], vec![0, 2], vec![1, 2]]);
        let h = row_hnf(&a);
        assert_eq!(h.rows, 2);
        assert_eq!(lattice_index(&h).unwrap(), BigInt::from(2));
        // same lattice from a different generating set
        let b = IntMat::from_i64(&[vec![1, 2], vec![1, 0]]);
        assert_eq!(row_hnf(&b), h);
    }

    #[test]
    fn rational_rank_and_kernel() {
        let one = BigRational::one;
        let row = |v: &[i64]| -> Vec<BigRational> {
            v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
        };
        let m = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])];
        assert_eq!(rat_rank(&m), 2);
        let k = rat_kernel(&m, 3);
        assert_eq!(k.len(), 1);
        for r in &m {
            let dot: BigRational = r.iter().zip(&k[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        let _ = one();
    }
}
