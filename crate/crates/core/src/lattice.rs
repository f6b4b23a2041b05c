//! Integer matrices, Hermite and Smith normal forms, and integer lattices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A dense integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from explicit rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row of length {} in a {cols}-column matrix",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(IntMat {
            rows: n,
            cols,
            data,
        })
    }

    /// Convenience constructor from small integers. Panics on ragged input.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
        .expect("ragged matrix literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Rows as machine integers.
    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| v.to_i64().ok_or(Error::Overflow))
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Append columns of `other` to the right.
    pub fn hstack(&self, other: &IntMat) -> Result<IntMat> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack with different row counts".into()));
        }
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(other.row(i)).cloned().collect())
            .collect();
        IntMat::from_rows(self.cols + other.cols, rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        Ok(sign * &m[n - 1][n - 1])
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

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j) + q * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) + q * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Row Hermite normal form: returns `(H, U)` with `U * M = H`, `U` unimodular.
///
/// Pivots are positive and entries above each pivot lie in `[0, pivot)`.
/// Zero rows are collected at the bottom of `H`.
pub fn hnf_row(m: &IntMat) -> (IntMat, IntMat) {
    let mut h = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut pivot_row = 0;
    for col in 0..m.cols {
        if pivot_row == m.rows {
            break;
        }
        loop {
            // smallest nonzero entry in this column at or below pivot_row
            let best = (pivot_row..m.rows)
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by(|&a, &b| h.get(a, col).abs().cmp(&h.get(b, col).abs()));
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut clean = true;
            for i in pivot_row + 1..m.rows {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let q = -(h.get(i, col) / h.get(pivot_row, col));
                h.add_row_multiple(i, pivot_row, &q);
                u.add_row_multiple(i, pivot_row, &q);
                if !h.get(i, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if pivot_row < m.rows && !h.get(pivot_row, col).is_zero() {
            if h.get(pivot_row, col).is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            let p = h.get(pivot_row, col).clone();
            for i in 0..pivot_row {
                let q = -h.get(i, col).div_floor(&p);
                h.add_row_multiple(i, pivot_row, &q);
                u.add_row_multiple(i, pivot_row, &q);
            }
            pivot_row += 1;
        }
    }
    (h, u)
}

/// Number of nonzero rows of a matrix in row echelon form.
fn echelon_rank(h: &IntMat) -> usize {
    (0..h.rows())
        .take_while(|&i| h.row(i).iter().any(|v| !v.is_zero()))
        .count()
}

/// A sublattice of `Z^ambient_dim`, stored by its row-HNF basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RelationLattice {
    ambient_dim: usize,
    basis: IntMat,
}

impl RelationLattice {
    /// Lattice generated by the rows of `gens` (need not be independent).
    pub fn from_generators(ambient_dim: usize, gens: &IntMat) -> Result<Self> {
        if gens.cols() != ambient_dim {
            return Err(Error::Dimension(format!(
                "generators have {} columns, ambient dimension is {ambient_dim}",
                gens.cols()
            )));
        }
        let (h, _) = hnf_row(gens);
        let rank = echelon_rank(&h);
        let basis = IntMat::from_rows(ambient_dim, (0..rank).map(|i| h.row(i).to_vec()).collect())?;
        Ok(RelationLattice { ambient_dim, basis })
    }

    /// Convenience constructor from small integer rows. Panics on ragged input.
    pub fn from_rows(ambient_dim: usize, rows: Vec<Vec<i64>>) -> Self {
        let m = IntMat::from_rows(
            ambient_dim,
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
        .expect("ragged lattice literal");
        Self::from_generators(ambient_dim, &m).expect("dimension checked above")
    }

    pub fn zero(ambient_dim: usize) -> Self {
        RelationLattice {
            ambient_dim,
            basis: IntMat::zeros(0, ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical HNF basis, one row per basis vector.
    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn basis_rows(&self) -> Result<Vec<Vec<i64>>> {
        self.basis.to_i64_rows()
    }

    pub fn equals(&self, other: &RelationLattice) -> Result<bool> {
        lattice_equal(self, other)
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        lattice_member(self, &v)
    }
}

/// Integer left kernel `{ n : n * M = 0 }`.
pub fn kernel_basis(m: &IntMat) -> RelationLattice {
    let (h, u) = hnf_row(m);
    let rank = echelon_rank(&h);
    let rows = (rank..m.rows()).map(|i| u.row(i).to_vec()).collect();
    let gens = IntMat::from_rows(m.rows(), rows).expect("rows of U have the right length");
    RelationLattice::from_generators(m.rows(), &gens).expect("dimension matches")
}

/// `{ n : n * M = 0 and n . t = 0 (mod q) }`.
pub fn kernel_with_congruence(m: &IntMat, t: &[BigInt], q: &BigInt) -> Result<RelationLattice> {
    if t.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "congruence vector of length {} for {} rows",
            t.len(),
            m.rows()
        )));
    }
    if !q.is_positive() {
        return Err(Error::ZeroArgument("kernel_with_congruence modulus"));
    }
    let r = m.rows();
    // rows [M_i | t_i] and an auxiliary row [0 | q]; its kernel, projected
    // onto the first r coordinates, is the wanted lattice
    let mut rows: Vec<Vec<BigInt>> = (0..r)
        .map(|i| m.row(i).iter().cloned().chain([t[i].clone()]).collect())
        .collect();
    rows.push(
        std::iter::repeat_n(BigInt::zero(), m.cols())
            .chain([q.clone()])
            .collect(),
    );
    let aug = IntMat::from_rows(m.cols() + 1, rows)?;
    let ker = kernel_basis(&aug);
    let projected = (0..ker.rank())
        .map(|i| ker.basis().row(i)[..r].to_vec())
        .collect();
    RelationLattice::from_generators(r, &IntMat::from_rows(r, projected)?)
}

pub fn lattice_equal(a: &RelationLattice, b: &RelationLattice) -> Result<bool> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::Dimension(format!(
            "comparing lattices in dimensions {} and {}",
            a.ambient_dim, b.ambient_dim
        )));
    }
    Ok(a.basis == b.basis)
}

pub fn lattice_member(l: &RelationLattice, v: &[BigInt]) -> Result<bool> {
    if v.len() != l.ambient_dim {
        return Err(Error::Dimension(format!(
            "vector of length {} for a lattice in dimension {}",
            v.len(),
            l.ambient_dim
        )));
    }
    let mut v = v.to_vec();
    for i in 0..l.rank() {
        let row = l.basis.row(i);
        let p = row
            .iter()
            .position(|x| !x.is_zero())
            .expect("basis rows are nonzero");
        if v[..p].iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
        let (q, rem) = v[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return Ok(false);
        }
        for (x, b) in v.iter_mut().zip(row) {
            *x -= &q * b;
        }
    }
    Ok(v.iter().all(Zero::is_zero))
}

/// Smith normal form `A * Z * B = D` together with `B^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub a: IntMat,
    pub b: IntMat,
    pub d: IntMat,
    pub b_inv: IntMat,
}

impl SnfResult {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|v| !v.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(z: &IntMat) -> SnfResult {
    let (u, r) = (z.rows(), z.cols());
    let mut d = z.clone();
    let mut a = IntMat::identity(u);
    let mut b = IntMat::identity(r);
    let mut b_inv = IntMat::identity(r);

    // column ops are mirrored on B (as column ops) and on B^-1 (as inverse row ops)
    let swap_cols = |d: &mut IntMat, b: &mut IntMat, b_inv: &mut IntMat, x: usize, y: usize| {
        d.swap_cols(x, y);
        b.swap_cols(x, y);
        b_inv.swap_rows(x, y);
    };
    let add_col =
        |d: &mut IntMat, b: &mut IntMat, b_inv: &mut IntMat, dst: usize, src: usize, q: &BigInt| {
            d.add_col_multiple(dst, src, q);
            b.add_col_multiple(dst, src, q);
            b_inv.add_row_multiple(src, dst, &-q);
        };

    for t in 0..u.min(r) {
        let smallest = (t..u)
            .flat_map(|i| (t..r).map(move |j| (i, j)))
            .filter(|&(i, j)| !d.get(i, j).is_zero())
            .min_by(|&(i1, j1), &(i2, j2)| d.get(i1, j1).abs().cmp(&d.get(i2, j2).abs()));
        let Some((pi, pj)) = smallest else { break };
        d.swap_rows(t, pi);
        a.swap_rows(t, pi);
        swap_cols(&mut d, &mut b, &mut b_inv, t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..u {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -(d.get(i, t) / d.get(t, t));
                d.add_row_multiple(i, t, &q);
                a.add_row_multiple(i, t, &q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..r {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -(d.get(t, j) / d.get(t, t));
                add_col(&mut d, &mut b, &mut b_inv, j, t, &q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                // move the smallest remaining entry of row t / column t to the pivot
                let in_col = (t..u).map(|i| (i, t));
                let in_row = (t + 1..r).map(|j| (t, j));
                let (pi, pj) = in_col
                    .chain(in_row)
                    .filter(|&(i, j)| !d.get(i, j).is_zero())
                    .min_by(|&(i1, j1), &(i2, j2)| d.get(i1, j1).abs().cmp(&d.get(i2, j2).abs()))
                    .expect("pivot row or column is nonzero");
                if pj == t {
                    d.swap_rows(t, pi);
                    a.swap_rows(t, pi);
                } else {
                    swap_cols(&mut d, &mut b, &mut b_inv, t, pj);
                }
                continue;
            }
            let p = d.get(t, t).clone();
            let bad = (t + 1..u).find(|&i| (t + 1..r).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    a.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            a.negate_row(t);
        }
    }
    SnfResult { a, b, d, b_inv }
}
