//! Exact linear algebra over a [`FieldCtx`]: row-vector products, Gaussian
//! elimination, rank, null spaces. Dimensions here never exceed 9.

use crate::field::{Elem, FieldCtx};

pub type Vector = Vec<Elem>;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn diagonal(entries: &[Elem]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = Elem::ZERO;
                for k in 0..self.cols {
                    s = ctx.add(s, ctx.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, s);
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn scale(&self, ctx: &FieldCtx, s: Elem) -> Matrix {
        self.map(|x| ctx.mul(x, s))
    }

    /// Determinant by elimination.
    pub fn det(&self, ctx: &FieldCtx) -> Elem {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Elem::ONE;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Elem::ZERO;
            };
            if piv != col {
                for c in 0..n {
                    let (a, b) = (m.get(piv, c), m.get(col, c));
                    m.set(piv, c, b);
                    m.set(col, c, a);
                }
                det = ctx.neg(det);
            }
            let p = m.get(col, col);
            det = ctx.mul(det, p);
            let pinv = ctx.inv(p).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = ctx.mul(m.get(r, col), pinv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = ctx.sub(m.get(r, c), ctx.mul(factor, m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }
}

/// Row vector times matrix.
pub fn vec_mat(ctx: &FieldCtx, v: &[Elem], m: &Matrix) -> Vector {
    assert_eq!(v.len(), m.rows);
    (0..m.cols)
        .map(|j| {
            v.iter()
                .enumerate()
                .fold(Elem::ZERO, |acc, (i, &x)| if x.is_zero() { acc } else { ctx.add(acc, ctx.mul(x, m.get(i, j))) })
        })
        .collect()
}

pub fn dot(ctx: &FieldCtx, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| ctx.add(acc, ctx.mul(x, y)))
}

/// Scales `v` so its last nonzero entry is one. `None` for the zero vector.
pub fn normalize(ctx: &FieldCtx, v: &[Elem]) -> Option<Vector> {
    let last = v.iter().rposition(|x| !x.is_zero())?;
    let s = ctx.inv(v[last]).expect("nonzero");
    Some(v.iter().map(|&x| ctx.mul(x, s)).collect())
}

/// Reduced row echelon form of the given rows; returns the nonzero rows and
/// their pivot columns.
pub fn row_reduce(ctx: &FieldCtx, rows: &[Vector]) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = ctx.inv(m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = ctx.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c];
                for k in 0..cols {
                    let v = ctx.sub(m[i][k], ctx.mul(factor, m[r][k]));
                    m[i][k] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(ctx: &FieldCtx, rows: &[Vector]) -> usize {
    row_reduce(ctx, rows).0.len()
}

/// Basis of `{x : A xᵀ = 0}` where `A` has the given rows.
pub fn null_space(ctx: &FieldCtx, rows: &[Vector], cols: usize) -> Vec<Vector> {
    let (rref, pivots) = row_reduce(ctx, rows);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![Elem::ZERO; cols];
            x[fc] = Elem::ONE;
            for (row, &pc) in rref.iter().zip(&pivots) {
                x[pc] = ctx.neg(row[fc]);
            }
            x
        })
        .collect()
}

/// Whether two row spaces coincide.
pub fn same_span(ctx: &FieldCtx, a: &[Vector], b: &[Vector]) -> bool {
    let ra = rank(ctx, a);
    let rb = rank(ctx, b);
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    ra == rb && rank(ctx, &both) == ra
}

/// All vectors of the span of `basis` (including zero), in a fixed order.
pub fn span_vectors(ctx: &FieldCtx, basis: &[Vector]) -> Vec<Vector> {
    let dim = basis.first().map_or(0, Vec::len);
    let mut out = vec![vec![Elem::ZERO; dim]];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * ctx.order() as usize);
        for v in &out {
            for s in ctx.elements() {
                next.push(v.iter().zip(b).map(|(&x, &y)| ctx.add(x, ctx.mul(s, y))).collect());
            }
        }
        out = next;
    }
    out
}
