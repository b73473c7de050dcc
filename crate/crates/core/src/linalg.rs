//! Dense exact matrices and subspace arithmetic over any `Field`.
//!
//! Subspaces are represented by matrices whose columns span them.

use crate::scalar::{Field, Q, Qi};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Columns given as vectors of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out: Matrix<F> = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![F::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                let a = self.get(i, j);
                if a.is_zero() || x.is_zero() {
                    continue;
                }
                *o = o.add_ref(&a.mul_ref(x));
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add_ref(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub_ref(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        self.map(|x| x.mul_ref(s))
    }

    pub fn neg(&self) -> Matrix<F> {
        self.map(|x| -x.clone())
    }

    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix<F> {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn hstack(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, o.rows);
        Matrix::from_fn(self.rows, self.cols + o.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                o.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Largest entry magnitude; zero for an empty matrix.
    pub fn max_abs(&self) -> Q {
        self.data.iter().map(|x| x.magnitude()).fold(Q::from_integer(0.into()), |a, b| if b > a { b } else { a })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = F::one().div_ref(m.get(r, c));
            for j in c..m.cols {
                let idx = r * m.cols + j;
                if !m.data[idx].is_zero() {
                    m.data[idx] = m.data[idx].mul_ref(&inv);
                }
            }
            let prow: Vec<F> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    if prow[j].is_zero() {
                        continue;
                    }
                    let idx = i * m.cols + j;
                    m.data[idx] = m.data[idx].sub_ref(&f.mul_ref(&prow[j]));
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        if self.rows < self.cols {
            self.transpose().rref().1.len()
        } else {
            self.rref().1.len()
        }
    }

    /// Basis of the kernel, as columns.
    pub fn nullspace(&self) -> Matrix<F> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, F::one());
            for (i, &p) in pivots.iter().enumerate() {
                let v = r.get(i, f);
                if !v.is_zero() {
                    out.set(p, k, -v.clone());
                }
            }
        }
        out
    }

    /// Basis of the column space drawn from the original columns.
    pub fn column_basis(&self) -> Matrix<F> {
        let (_, pivots) = self.rref();
        Matrix::from_fn(self.rows, pivots.len(), |r, c| self.get(r, pivots[c]).clone())
    }

    /// One solution of `self x = b`, if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }
}

impl Matrix<Qi> {
    /// Real part if every entry is real, or the imaginary part if every entry is
    /// purely imaginary. Rank and kernels are then computed over `Q`.
    pub fn phase_real(&self) -> Option<Matrix<Q>> {
        if self.data.iter().all(|x| x.is_real()) {
            Some(self.map(|x| x.re.clone()))
        } else if self.data.iter().all(|x| x.is_imag()) {
            Some(self.map(|x| x.im.clone()))
        } else {
            None
        }
    }

    pub fn fast_rank(&self) -> usize {
        match self.phase_real() {
            Some(m) => m.rank(),
            None => self.rank(),
        }
    }

    pub fn fast_nullspace(&self) -> Matrix<Qi> {
        match self.phase_real() {
            Some(m) => m.nullspace().map(|x| Qi::real(x.clone())),
            None => self.nullspace(),
        }
    }
}

/// Dimension of the span of the columns of all given matrices.
pub fn span_dim<F: Field>(parts: &[&Matrix<F>]) -> usize {
    let Some(first) = parts.first() else { return 0 };
    let mut m = (*first).clone();
    for p in &parts[1..] {
        m = m.hstack(p);
    }
    m.rank()
}

/// Basis of the sum of two subspaces.
pub fn subspace_sum<F: Field>(u: &Matrix<F>, v: &Matrix<F>) -> Matrix<F> {
    u.hstack(v).column_basis()
}

/// Basis of `span(u) ∩ span(v)`.
pub fn intersection<F: Field>(u: &Matrix<F>, v: &Matrix<F>) -> Matrix<F> {
    let n = u.rows();
    if u.cols() == 0 || v.cols() == 0 {
        return Matrix::zeros(n, 0);
    }
    let u = u.column_basis();
    let v = v.column_basis();
    let ker = u.hstack(&v.neg()).nullspace();
    let coeff = Matrix::from_fn(u.cols(), ker.cols(), |r, c| ker.get(r, c).clone());
    u.mul(&coeff).column_basis()
}

pub fn contains<F: Field>(u: &Matrix<F>, v: &[F]) -> bool {
    let col = Matrix::from_columns(u.rows(), &[v.to_vec()]);
    u.rank() == u.hstack(&col).rank()
}

/// `span(v) ⊆ span(u)`.
pub fn contains_space<F: Field>(u: &Matrix<F>, v: &Matrix<F>) -> bool {
    u.rank() == u.hstack(v).rank()
}

pub fn subspace_eq<F: Field>(u: &Matrix<F>, v: &Matrix<F>) -> bool {
    let ru = u.rank();
    ru == v.rank() && ru == u.hstack(v).rank()
}

/// Orthogonal complement for the Hermitian product `⟨x,y⟩ = Σ x_i conj(y_i)`.
pub fn orthogonal_complement<F: Field>(u: &Matrix<F>) -> Matrix<F> {
    if u.cols() == 0 {
        return Matrix::identity(u.rows());
    }
    u.adjoint().nullspace()
}
