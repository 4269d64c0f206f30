//! Dense matrices over a [`CoeffRing`] and valuation-pivot diagonalization.

use serde::{Deserialize, Serialize};

use crate::ring::CoeffRing;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>], cols: usize) -> Self {
        let mut m = Mat::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn from_cols(rows: usize, cols: &[Vec<u64>]) -> Self {
        let mut m = Mat::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &a) in c.iter().enumerate() {
                m.set(i, j, a);
            }
        }
        m
    }

    pub fn diag(vals: &[u64]) -> Self {
        let mut m = Mat::zero(vals.len(), vals.len());
        for (i, &a) in vals.iter().enumerate() {
            m.set(i, i, a);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: u64) {
        self.data[i * self.cols + j] = a;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    pub fn mul(&self, r: &CoeffRing, b: &Mat) -> Mat {
        assert_eq!(self.cols, b.rows, "shape mismatch in product");
        let mut out = Mat::zero(self.rows, b.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..b.cols {
                    let v = r.add(out.get(i, j), r.mul(a, b.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, r: &CoeffRing, x: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, j| r.add(acc, r.mul(self.get(i, j), x[j]))))
            .collect()
    }

    pub fn add(&self, r: &CoeffRing, b: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (b.rows, b.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&b.data).map(|(&x, &y)| r.add(x, y)).collect(),
        }
    }

    pub fn neg(&self, r: &CoeffRing) -> Mat {
        self.scale(r, r.neg(1))
    }

    pub fn sub(&self, r: &CoeffRing, b: &Mat) -> Mat {
        self.add(r, &b.neg(r))
    }

    pub fn scale(&self, r: &CoeffRing, c: u64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| r.mul(c, x)).collect(),
        }
    }

    /// `[self | b]`.
    pub fn hcat(&self, b: &Mat) -> Mat {
        assert_eq!(self.rows, b.rows);
        let mut m = Mat::zero(self.rows, self.cols + b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..b.cols {
                m.set(i, self.cols + j, b.get(i, j));
            }
        }
        m
    }

    /// `[self; b]`.
    pub fn vcat(&self, b: &Mat) -> Mat {
        assert_eq!(self.cols, b.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&b.data);
        Mat { rows: self.rows + b.rows, cols: self.cols, data }
    }

    /// Block diagonal `diag(self, b)`.
    pub fn dsum(&self, b: &Mat) -> Mat {
        let mut m = Mat::zero(self.rows + b.rows, self.cols + b.cols);
        m.put(0, 0, self);
        m.put(self.rows, self.cols, b);
        m
    }

    /// Copy `b` into the block starting at `(i0, j0)`.
    pub fn put(&mut self, i0: usize, j0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(i0 + i, j0 + j, b.get(i, j));
            }
        }
    }

    pub fn block(&self, i0: usize, j0: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(i0 + i, j0 + j));
            }
        }
        m
    }

    pub fn columns(&self, js: &[usize]) -> Mat {
        Mat::from_cols(self.rows, &js.iter().map(|&j| self.col(j)).collect::<Vec<_>>())
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }
}

/// `U·A·V = D` with `D` diagonal, `D[t][t] = π^{vals[t]}` for `t < rank` and
/// zero beyond. `u_inv` is `U⁻¹`.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub vals: Vec<u32>,
    pub rank: usize,
}

/// Diagonalize by unimodular row and column operations. The pivot at each
/// step is an entry of least valuation, smallest `(row, col)` on ties.
pub fn normal_form(r: &CoeffRing, a: &Mat) -> NormalForm {
    let (m, n) = (a.rows, a.cols);
    let mut a = a.clone();
    let mut u = Mat::identity(m);
    let mut u_inv = Mat::identity(m);
    let mut v = Mat::identity(n);
    let mut vals = Vec::new();
    for t in 0..m.min(n) {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let w = r.val(a.get(i, j));
                if w < r.k && best.is_none_or(|(b, _, _)| w < b) {
                    best = Some((w, i, j));
                }
            }
        }
        let Some((w, pi, pj)) = best else { break };
        swap_rows(&mut a, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut u_inv, t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        let unit = r.div_pi(a.get(t, t), w);
        let ui = r.unit_inv(unit);
        scale_row(r, &mut a, t, ui);
        scale_row(r, &mut u, t, ui);
        scale_col(r, &mut u_inv, t, unit);
        for i in t + 1..m {
            let x = a.get(i, t);
            if x == 0 {
                continue;
            }
            let c = r.div_pi(x, w);
            // row_i -= c·row_t
            add_row(r, &mut a, i, t, r.neg(c));
            add_row(r, &mut u, i, t, r.neg(c));
            // U⁻¹: col_t += c·col_i
            add_col(r, &mut u_inv, t, i, c);
        }
        for j in t + 1..n {
            let x = a.get(t, j);
            if x == 0 {
                continue;
            }
            let c = r.div_pi(x, w);
            add_col(r, &mut a, j, t, r.neg(c));
            add_col(r, &mut v, j, t, r.neg(c));
        }
        vals.push(w);
    }
    let rank = vals.len();
    NormalForm { u, u_inv, v, vals, rank }
}

fn swap_rows(a: &mut Mat, i: usize, j: usize) {
    if i != j {
        for c in 0..a.cols {
            a.data.swap(i * a.cols + c, j * a.cols + c);
        }
    }
}

fn swap_cols(a: &mut Mat, i: usize, j: usize) {
    if i != j {
        for r in 0..a.rows {
            a.data.swap(r * a.cols + i, r * a.cols + j);
        }
    }
}

fn scale_row(r: &CoeffRing, a: &mut Mat, i: usize, c: u64) {
    for j in 0..a.cols {
        let x = r.mul(c, a.get(i, j));
        a.set(i, j, x);
    }
}

fn scale_col(r: &CoeffRing, a: &mut Mat, j: usize, c: u64) {
    for i in 0..a.rows {
        let x = r.mul(c, a.get(i, j));
        a.set(i, j, x);
    }
}

/// row_i += c·row_j
fn add_row(r: &CoeffRing, a: &mut Mat, i: usize, j: usize, c: u64) {
    for l in 0..a.cols {
        let x = r.add(a.get(i, l), r.mul(c, a.get(j, l)));
        a.set(i, l, x);
    }
}

/// col_i += c·col_j
fn add_col(r: &CoeffRing, a: &mut Mat, i: usize, j: usize, c: u64) {
    for l in 0..a.rows {
        let x = r.add(a.get(l, i), r.mul(c, a.get(l, j)));
        a.set(l, i, x);
    }
}

impl NormalForm {
    /// Generators of `{x ∈ R^n : A x = 0}` as columns.
    pub fn kernel(&self, r: &CoeffRing) -> Mat {
        let n = self.v.rows;
        let mut cols = Vec::new();
        for t in 0..n {
            if t < self.rank {
                let w = self.vals[t];
                if w == 0 {
                    continue;
                }
                let c = r.pi_pow(r.k - w);
                cols.push(self.v.col(t).iter().map(|&x| r.mul(c, x)).collect());
            } else {
                cols.push(self.v.col(t));
            }
        }
        Mat::from_cols(n, &cols)
    }

    /// Some `y` with `A y = b`, if one exists.
    pub fn solve(&self, r: &CoeffRing, b: &[u64]) -> Option<Vec<u64>> {
        let c = self.u.apply(r, b);
        let n = self.v.rows;
        let mut z = vec![0; n];
        for (t, &ct) in c.iter().enumerate() {
            if t < self.rank {
                if r.val(ct) < self.vals[t] {
                    return None;
                }
                z[t] = r.div_pi(ct, self.vals[t]);
            } else if ct != 0 {
                return None;
            }
        }
        Some(self.v.apply(r, &z))
    }
}
