//! Exact sparse linear algebra over Q(z): reduced echelon row spaces for
//! ideal construction and quotient coordinates, plus a small dense matrix
//! type for representing matrices.

use crate::field::RationalFunction;
use std::fmt;

/// A sparse vector: sorted (index, nonzero value) pairs.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparseVec {
    entries: Vec<(u32, RationalFunction)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: vec![] }
    }

    pub fn from_entries(mut entries: Vec<(u32, RationalFunction)>) -> Self {
        entries.retain(|(_, v)| !v.is_zero());
        entries.sort_by_key(|(i, _)| *i);
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries }
    }

    pub fn unit(i: u32) -> Self {
        SparseVec {
            entries: vec![(i, RationalFunction::one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(u32, RationalFunction)> {
        self.entries.iter()
    }

    pub fn leading_index(&self) -> Option<u32> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn get(&self, i: u32) -> Option<&RationalFunction> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn scale(&self, c: &RationalFunction) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// self + c * other, by sorted merge.
    pub fn axpy(&self, c: &RationalFunction, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ai = self.entries.get(a).map(|(i, _)| *i);
            let bi = other.entries.get(b).map(|(i, _)| *i);
            match (ai, bi) {
                (Some(i), Some(j)) if i == j => {
                    let v = &self.entries[a].1 + &(c * &other.entries[b].1);
                    if !v.is_zero() {
                        out.push((i, v));
                    }
                    a += 1;
                    b += 1;
                }
                (Some(i), Some(j)) if i < j => {
                    let _ = j;
                    out.push((i, self.entries[a].1.clone()));
                    a += 1;
                }
                (Some(_), Some(j)) => {
                    out.push((j, c * &other.entries[b].1));
                    b += 1;
                }
                (Some(i), None) => {
                    out.push((i, self.entries[a].1.clone()));
                    a += 1;
                }
                (None, Some(j)) => {
                    out.push((j, c * &other.entries[b].1));
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseVec { entries: out }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&-&RationalFunction::one(), other)
    }
}

/// A reduced-echelon row space over Q(z).
///
/// Rows are kept fully reduced: each pivot column appears in exactly one
/// row, with pivot value one. Reduction of any vector against the space is
/// then canonical, which makes ideal-membership and coset comparisons
/// structural equality checks.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    rows: Vec<SparseVec>, // sorted by pivot index
}

impl RowSpace {
    pub fn new() -> Self {
        RowSpace { rows: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().map(|r| r.leading_index().unwrap())
    }

    /// Canonical reduction of `v` modulo the row space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = v.clone();
        let mut i = 0;
        while i < acc.entries.len() {
            let idx = acc.entries[i].0;
            match self
                .rows
                .binary_search_by_key(&idx, |r| r.leading_index().unwrap())
            {
                Ok(pos) => {
                    let c = -&acc.entries[i].1;
                    acc = acc.axpy(&c, &self.rows[pos]);
                    // the entry at idx vanished; do not advance i
                }
                Err(_) => i += 1,
            }
        }
        acc
    }

    /// Inserts `v` if independent; returns true when the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let red = self.reduce(v);
        if red.is_zero() {
            return false;
        }
        self.insert_reduced(red);
        true
    }

    /// Inserts an already-reduced nonzero vector.
    pub fn insert_reduced(&mut self, red: SparseVec) {
        debug_assert!(!red.is_zero());
        let pivot = red.leading_index().unwrap();
        let inv = red.get(pivot).unwrap().inverse().expect("pivot nonzero");
        let new_row = red.scale(&inv);
        // eliminate the new pivot from existing rows to stay fully reduced
        for r in self.rows.iter_mut() {
            if let Some(c) = r.get(pivot) {
                let c = -c;
                *r = r.axpy(&c, &new_row);
            }
        }
        let pos = self
            .rows
            .binary_search_by_key(&pivot, |r| r.leading_index().unwrap())
            .unwrap_err();
        self.rows.insert(pos, new_row);
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }
}

/// An echelonized basis with coordinate bookkeeping: expresses vectors as
/// linear combinations of the original basis vectors.
#[derive(Clone, Debug)]
pub struct CoordBasis {
    rows: Vec<SparseVec>,
    /// expression of each echelon row in the original basis
    coeffs: Vec<Vec<RationalFunction>>,
    n_basis: usize,
}

impl CoordBasis {
    /// Builds from the given vectors; None if they are dependent.
    pub fn new(basis: &[SparseVec]) -> Option<Self> {
        let mut cb = CoordBasis {
            rows: vec![],
            coeffs: vec![],
            n_basis: basis.len(),
        };
        for (j, v) in basis.iter().enumerate() {
            let mut e = vec![RationalFunction::zero(); basis.len()];
            e[j] = RationalFunction::one();
            if !cb.insert_tracked(v, e) {
                return None;
            }
        }
        Some(cb)
    }

    fn insert_tracked(&mut self, v: &SparseVec, mut expr: Vec<RationalFunction>) -> bool {
        let mut acc = v.clone();
        let mut i = 0;
        while i < acc.entries.len() {
            let idx = acc.entries[i].0;
            match self
                .rows
                .binary_search_by_key(&idx, |r| r.leading_index().unwrap())
            {
                Ok(pos) => {
                    let c = -&acc.entries[i].1;
                    for (e, re) in expr.iter_mut().zip(&self.coeffs[pos]) {
                        *e = &*e + &(&c * re);
                    }
                    acc = acc.axpy(&c, &self.rows[pos]);
                }
                Err(_) => i += 1,
            }
        }
        if acc.is_zero() {
            return false;
        }
        let pivot = acc.leading_index().unwrap();
        let inv = acc.get(pivot).unwrap().inverse().unwrap();
        let row = acc.scale(&inv);
        for e in expr.iter_mut() {
            *e = &*e * &inv;
        }
        let pos = self
            .rows
            .binary_search_by_key(&pivot, |r| r.leading_index().unwrap())
            .unwrap_err();
        self.rows.insert(pos, row);
        self.coeffs.insert(pos, expr);
        true
    }

    /// Expresses `v` in the original basis; None when outside the span.
    pub fn express(&self, v: &SparseVec) -> Option<Vec<RationalFunction>> {
        let mut acc = v.clone();
        let mut out = vec![RationalFunction::zero(); self.n_basis];
        let mut i = 0;
        while i < acc.entries.len() {
            let idx = acc.entries[i].0;
            match self
                .rows
                .binary_search_by_key(&idx, |r| r.leading_index().unwrap())
            {
                Ok(pos) => {
                    let c = acc.entries[i].1.clone();
                    for (o, re) in out.iter_mut().zip(&self.coeffs[pos]) {
                        *o = &*o + &(&c * re);
                    }
                    let nc = -&c;
                    acc = acc.axpy(&nc, &self.rows[pos]);
                }
                Err(_) => i += 1,
            }
        }
        acc.is_zero().then_some(out)
    }
}

/// A small dense matrix over Q(z).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub rows: Vec<Vec<RationalFunction>>,
}

impl Matrix {
    pub fn zero(n: usize, m: usize) -> Self {
        Matrix {
            rows: vec![vec![RationalFunction::zero(); m]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.rows[i][i] = RationalFunction::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RationalFunction>>) -> Self {
        Matrix { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn at(&self, i: usize, j: usize) -> &RationalFunction {
        &self.rows[i][j]
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.m(), rhs.n());
        let mut out = Matrix::zero(self.n(), rhs.m());
        for i in 0..self.n() {
            for k in 0..self.m() {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..rhs.m() {
                    if rhs.rows[k][j].is_zero() {
                        continue;
                    }
                    out.rows[i][j] = &out.rows[i][j] + &(&self.rows[i][k] * &rhs.rows[k][j]);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.n() {
            for j in 0..self.m() {
                out.rows[i][j] = &out.rows[i][j] + &rhs.rows[i][j];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.n() {
            for j in 0..self.m() {
                out.rows[i][j] = &out.rows[i][j] - &rhs.rows[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: &RationalFunction) -> Matrix {
        Matrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|v| v * c).collect())
                .collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.m(), self.n());
        for i in 0..self.n() {
            for j in 0..self.m() {
                out.rows[j][i] = self.rows[i][j].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|v| v.is_zero()))
    }

    pub fn is_identity(&self) -> bool {
        self == &Matrix::identity(self.n())
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, v)| i == j || v.is_zero()))
    }

    pub fn diagonal(&self) -> Vec<RationalFunction> {
        (0..self.n().min(self.m()))
            .map(|i| self.rows[i][i].clone())
            .collect()
    }

    pub fn trace(&self) -> RationalFunction {
        let mut t = RationalFunction::zero();
        for i in 0..self.n().min(self.m()) {
            t = &t + &self.rows[i][i];
        }
        t
    }

    /// Gauss-Jordan inverse; None if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n();
        assert_eq!(n, self.m());
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.rows[r][col].is_zero())?;
            a.rows.swap(col, piv);
            inv.rows.swap(col, piv);
            let pv = a.rows[col][col].clone();
            let pinv = pv.inverse().ok()?;
            for j in 0..n {
                a.rows[col][j] = &a.rows[col][j] * &pinv;
                inv.rows[col][j] = &inv.rows[col][j] * &pinv;
            }
            for r in 0..n {
                if r != col && !a.rows[r][col].is_zero() {
                    let c = a.rows[r][col].clone();
                    for j in 0..n {
                        let t = &c * &a.rows[col][j];
                        a.rows[r][j] = &a.rows[r][j] - &t;
                        let t = &c * &inv.rows[col][j];
                        inv.rows[r][j] = &inv.rows[r][j] - &t;
                    }
                }
            }
        }
        Some(inv)
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let (n, m) = (a.n(), a.m());
        let mut rank = 0;
        for col in 0..m {
            if rank == n {
                break;
            }
            let Some(piv) = (rank..n).find(|&r| !a.rows[r][col].is_zero()) else {
                continue;
            };
            a.rows.swap(rank, piv);
            let pinv = a.rows[rank][col].inverse().unwrap();
            for j in 0..m {
                a.rows[rank][j] = &a.rows[rank][j] * &pinv;
            }
            for r in 0..n {
                if r != rank && !a.rows[r][col].is_zero() {
                    let c = a.rows[r][col].clone();
                    for j in 0..m {
                        let t = &c * &a.rows[rank][j];
                        a.rows[r][j] = &a.rows[r][j] - &t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            write!(f, "[")?;
            for (j, v) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_ratfn;

    fn rf(s: &str) -> RationalFunction {
        parse_ratfn(s).unwrap()
    }

    fn sv(entries: &[(u32, &str)]) -> SparseVec {
        SparseVec::from_entries(entries.iter().map(|(i, s)| (*i, rf(s))).collect())
    }

    #[test]
    fn rowspace_reduction_is_canonical() {
        let mut rs = RowSpace::new();
        assert!(rs.insert(&sv(&[(0, "1"), (2, "z")])));
        assert!(rs.insert(&sv(&[(1, "z"), (2, "1")])));
        // 2*row0 + 2z*row1 after normalization: rows are (1,0,z), (0,1,1/z)
        assert!(!rs.insert(&sv(&[(0, "2"), (1, "2*z"), (2, "2*z+2")])));
        let v = sv(&[(0, "1"), (1, "1"), (2, "1")]);
        let r1 = rs.reduce(&v);
        assert_eq!(rs.reduce(&r1), r1);
        assert!(rs.contains(&sv(&[(0, "z"), (2, "z^2")])));
        assert_eq!(rs.dim(), 2);
    }

    #[test]
    fn coord_basis_roundtrip() {
        let b = vec![
            sv(&[(0, "1"), (1, "1")]),
            sv(&[(1, "z")]),
            sv(&[(2, "1/z")]),
        ];
        let cb = CoordBasis::new(&b).unwrap();
        let v = sv(&[(0, "3"), (1, "3"), (2, "1")]);
        let x = cb.express(&v).unwrap();
        assert_eq!(x[0], rf("3"));
        assert_eq!(x[1], rf("0"));
        assert_eq!(x[2], rf("z"));
        assert!(CoordBasis::new(&[sv(&[(0, "1")]), sv(&[(0, "z")])]).is_none());
        assert!(cb.express(&sv(&[(3, "1")])).is_none());
    }

    #[test]
    fn matrix_inverse_roundtrip() {
        let m = Matrix::from_rows(vec![
            vec![rf("1"), rf("1/z")],
            vec![rf("0"), rf("(z-1)/z")],
        ]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        assert!(Matrix::zero(2, 2).inverse().is_none());
    }
}
