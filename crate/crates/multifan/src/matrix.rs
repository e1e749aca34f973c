//! Dense rational matrices with exact Gaussian elimination.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{dot, Rat};

/// Row-major matrix over `Rat`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        RatMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: Vec<Vec<Rat>>) -> Self {
        RatMat::from_rows(cols).transpose()
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += &self[(r, k)] * &other[(k, c)];
                }
                out[(r, c)] = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    /// Reduced row echelon form together with the pivot column of each row.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(i, j)] - &f * &m[(r, j)];
                        m[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det *= m[(c, c)].clone();
            let inv = m[(c, c)].recip();
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..m.cols {
                    let v = &m[(i, j)] - &f * &m[(c, j)];
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RatMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = RatMat::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rat::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::SingularMatrix);
        }
        let mut inv = RatMat::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Ok(inv)
    }

    /// One solution of `A x = b`, or `None` when inconsistent. For square
    /// nonsingular `A` this is the unique solution.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len());
        let mut aug = RatMat::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = red[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Basis of the right kernel `{x : A x = 0}` in echelon order, one
    /// vector per free column, each with leading entry `1`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (red, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -red[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }
}

/// Rows `u_i` dual to the given vectors: `<u_i, v_j> = delta_ij`.
///
/// The input must be a square independent configuration, i.e. the matrix
/// with columns `v_j` must be nonsingular.
pub fn dual_basis(vectors: &[Vec<Rat>]) -> Result<RatMat> {
    let n = vectors.len();
    if n == 0 {
        return Ok(RatMat::zero(0, 0));
    }
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch);
    }
    let m = RatMat::from_cols(vectors.to_vec());
    m.inverse().map_err(|_| Error::DegenerateCone)
}

/// The pairing `<u ^ w_1 ^ ... ^ w_{n-k}, e_1 ^ ... ^ e_{n-k+1}>` as the
/// determinant of the matrix of pairings of `u` and the annihilator basis
/// rows against the rows spanning `E`.
pub fn wedge_pairing(u: &[Rat], annihilator_rows: &[Vec<Rat>], e_rows: &[Vec<Rat>]) -> Result<Rat> {
    let size = annihilator_rows.len() + 1;
    if e_rows.len() != size {
        return Err(Error::DimensionMismatch);
    }
    let mut rows = Vec::with_capacity(size);
    rows.push(e_rows.iter().map(|w| dot(u, w)).collect::<Vec<_>>());
    for a in annihilator_rows {
        if a.len() != u.len() {
            return Err(Error::DimensionMismatch);
        }
        rows.push(e_rows.iter().map(|w| dot(a, w)).collect());
    }
    Ok(RatMat::from_rows(rows).det())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, rat};

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn dual_basis_standard_is_self_dual() {
        let d = dual_basis(&[rv(&[1, 0]), rv(&[0, 1])]).unwrap();
        assert_eq!(d.row(0), &rv(&[1, 0])[..]);
        assert_eq!(d.row(1), &rv(&[0, 1])[..]);
    }

    #[test]
    fn dual_basis_singular_cone_example() {
        let d = dual_basis(&[rv(&[-1, 0]), rv(&[1, 2])]).unwrap();
        assert_eq!(d.row(0), &[rat(-1), frac(1, 2)][..]);
        assert_eq!(d.row(1), &[rat(0), frac(1, 2)][..]);
    }

    #[test]
    fn dual_basis_satisfies_delta_property() {
        let vs = [rv(&[0, -1]), rv(&[1, 2])];
        let d = dual_basis(&vs).unwrap();
        assert_eq!(d.row(0), &rv(&[2, -1])[..]);
        for i in 0..2 {
            for (j, vj) in vs.iter().enumerate() {
                let expect = if i == j { rat(1) } else { rat(0) };
                assert_eq!(dot(d.row(i), vj), expect);
            }
        }
    }

    #[test]
    fn dual_basis_rejects_dependent_vectors() {
        assert_eq!(
            dual_basis(&[rv(&[1, 0]), rv(&[2, 0])]).unwrap_err(),
            Error::DegenerateCone
        );
    }

    #[test]
    fn wedge_pairing_rank_one_is_plain_pairing() {
        let got = wedge_pairing(&rv(&[3, 5]), &[], &[rv(&[1, 2])]).unwrap();
        assert_eq!(got, rat(13));
    }

    #[test]
    fn wedge_pairing_kills_annihilator_directions() {
        let got = wedge_pairing(&rv(&[0, 1]), &[rv(&[0, 1])], &[rv(&[1, 0]), rv(&[0, 1])]).unwrap();
        assert_eq!(got, rat(0));
    }

    #[test]
    fn wedge_pairing_standard_plane() {
        let got = wedge_pairing(&rv(&[1, 0]), &[rv(&[0, 1])], &[rv(&[1, 0]), rv(&[0, 1])]).unwrap();
        assert_eq!(got, rat(1));
    }

    #[test]
    fn solve_and_kernel_agree_on_rank() {
        let m = RatMat::from_rows(vec![rv(&[1, 2, 3]), rv(&[2, 4, 6])]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_basis().len(), 2);
        let sol = m.solve(&rv(&[6, 12])).unwrap();
        assert_eq!(m.mul_vec(&sol), rv(&[6, 12]));
        assert!(m.solve(&rv(&[1, 0])).is_none());
    }

    #[test]
    fn inverse_round_trips() {
        let m = RatMat::from_rows(vec![rv(&[2, 1]), rv(&[7, 4])]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMat::identity(2));
        assert_eq!(m.det(), rat(1));
    }
}
