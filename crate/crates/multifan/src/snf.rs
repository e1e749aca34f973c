//! Integer lattice algorithms: Smith normal form, saturation, kernel
//! lattices and finite quotient groups with explicit coset lifts.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::RatMat;
use crate::rat::{int_to_rat_vec, is_integer, Int, Rat};

/// Row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let c = rows.first().map_or(0, |row| row.len());
        IntMat::from_rows_cols(rows, c)
    }

    /// Like `from_rows` but keeps the ambient width when there are no
    /// rows at all.
    pub fn from_rows_cols(rows: Vec<Vec<Int>>, cols: usize) -> Self {
        let r = rows.len();
        assert!(rows.iter().all(|row| row.len() == cols));
        IntMat {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: Vec<Vec<Int>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        assert!(cols.iter().all(|col| col.len() == r));
        let mut m = IntMat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        IntMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
    }

    pub fn col(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Int::zero();
                for k in 0..self.cols {
                    acc += &self[(r, k)] * &other[(k, c)];
                }
                out[(r, c)] = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| &self[(r, c)] * &v[c]).sum())
            .collect()
    }

    pub fn to_rat(&self) -> RatMat {
        let mut m = RatMat::zero(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = Rat::from_integer(self[(r, c)].clone());
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = Int;
    fn index(&self, (r, c): (usize, usize)) -> &Int {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }
}

/// Exact decomposition `A = U * S * W` with `U`, `W` unimodular and `S`
/// diagonal, `s_1 | s_2 | ...` nonnegative, zeros last.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub u: IntMat,
    pub s: IntMat,
    pub w: IntMat,
    /// Inverse of `w`, tracked during reduction.
    pub w_inv: IntMat,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form over the integers.
pub fn snf(a: &IntMat) -> SnfResult {
    let (n, k) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMat::identity(n);
    let mut w = IntMat::identity(k);
    let mut w_inv = IntMat::identity(k);

    // Row op on s is compensated on u by the inverse column op, keeping
    // u * s * w == a at every step; same for column ops and w.
    let row_sub = |s: &mut IntMat, u: &mut IntMat, i: usize, t: usize, q: &Int| {
        for j in 0..s.cols {
            let v = &s[(i, j)] - q * &s[(t, j)];
            s[(i, j)] = v;
        }
        for r in 0..u.rows {
            let v = &u[(r, t)] + q * &u[(r, i)];
            u[(r, t)] = v;
        }
    };
    let col_sub = |s: &mut IntMat, w: &mut IntMat, w_inv: &mut IntMat, j: usize, t: usize, q: &Int| {
        for i in 0..s.rows {
            let v = &s[(i, j)] - q * &s[(i, t)];
            s[(i, j)] = v;
        }
        for c in 0..w.cols {
            let v = &w[(t, c)] + q * &w[(j, c)];
            w[(t, c)] = v;
        }
        for r in 0..w_inv.rows {
            let v = &w_inv[(r, j)] - q * &w_inv[(r, t)];
            w_inv[(r, j)] = v;
        }
    };

    let mut t = 0;
    while t < n.min(k) {
        // Deterministic pivot: smallest nonzero magnitude, then position.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..k {
                if s[(i, j)].is_zero() {
                    continue;
                }
                let better = match pivot {
                    None => true,
                    Some((pi, pj)) => s[(i, j)].abs() < s[(pi, pj)].abs(),
                };
                if better {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            for j in 0..k {
                let tmp = s[(t, j)].clone();
                s[(t, j)] = s[(pi, j)].clone();
                s[(pi, j)] = tmp;
            }
            for r in 0..n {
                let tmp = u[(r, t)].clone();
                u[(r, t)] = u[(r, pi)].clone();
                u[(r, pi)] = tmp;
            }
        }
        if pj != t {
            for i in 0..n {
                let tmp = s[(i, t)].clone();
                s[(i, t)] = s[(i, pj)].clone();
                s[(i, pj)] = tmp;
            }
            for c in 0..k {
                let tmp = w[(t, c)].clone();
                w[(t, c)] = w[(pj, c)].clone();
                w[(pj, c)] = tmp;
            }
            for r in 0..k {
                let tmp = w_inv[(r, t)].clone();
                w_inv[(r, t)] = w_inv[(r, pj)].clone();
                w_inv[(r, pj)] = tmp;
            }
        }

        loop {
            let mut clean = true;
            for i in t + 1..n {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = &s[(i, t)] / &s[(t, t)];
                if !q.is_zero() {
                    row_sub(&mut s, &mut u, i, t, &q);
                }
                if !s[(i, t)].is_zero() {
                    // Remainder is strictly smaller; promote it to pivot.
                    for j in 0..k {
                        let tmp = s[(t, j)].clone();
                        s[(t, j)] = s[(i, j)].clone();
                        s[(i, j)] = tmp;
                    }
                    for r in 0..n {
                        let tmp = u[(r, t)].clone();
                        u[(r, t)] = u[(r, i)].clone();
                        u[(r, i)] = tmp;
                    }
                    clean = false;
                }
            }
            for j in t + 1..k {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = &s[(t, j)] / &s[(t, t)];
                if !q.is_zero() {
                    col_sub(&mut s, &mut w, &mut w_inv, j, t, &q);
                }
                if !s[(t, j)].is_zero() {
                    for i in 0..n {
                        let tmp = s[(i, t)].clone();
                        s[(i, t)] = s[(i, j)].clone();
                        s[(i, j)] = tmp;
                    }
                    for c in 0..k {
                        let tmp = w[(t, c)].clone();
                        w[(t, c)] = w[(j, c)].clone();
                        w[(j, c)] = tmp;
                    }
                    for r in 0..k {
                        let tmp = w_inv[(r, t)].clone();
                        w_inv[(r, t)] = w_inv[(r, j)].clone();
                        w_inv[(r, j)] = tmp;
                    }
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: pull a bad entry into the pivot row.
            let mut bad = None;
            'scan: for i in t + 1..n {
                for j in t + 1..k {
                    if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                // Add the offending row to the pivot row; the next pass
                // pulls the non-divisible remainder into the pivot.
                Some(i) => {
                    let minus_one = -Int::one();
                    row_sub(&mut s, &mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            for j in 0..k {
                let v = -s[(t, j)].clone();
                s[(t, j)] = v;
            }
            for r in 0..n {
                let v = -u[(r, t)].clone();
                u[(r, t)] = v;
            }
        }
        t += 1;
    }

    SnfResult { u, s, w, w_inv }
}

/// Basis of the saturation of the column lattice of `b`: the columns
/// returned span the intersection of the Q-span of `b` with `Z^n`.
pub fn saturate(b: &IntMat) -> Result<IntMat> {
    let k = b.cols;
    let dec = snf(b);
    if dec.rank() < k {
        return Err(Error::RankDeficient);
    }
    let mut out = IntMat::zero(b.rows, k);
    for j in 0..k {
        for i in 0..b.rows {
            out[(i, j)] = dec.u[(i, j)].clone();
        }
    }
    Ok(out)
}

/// Basis of the saturated integer kernel lattice `{y in Z^n : a y = 0}`.
pub fn int_kernel_basis(a: &IntMat) -> Vec<Vec<Int>> {
    let dec = snf(a);
    let diag = dec.diagonal();
    let mut basis = Vec::new();
    for j in 0..a.cols {
        let zero_pivot = j >= diag.len() || diag[j].is_zero();
        if zero_pivot {
            basis.push(dec.w_inv.col(j));
        }
    }
    basis
}

/// Does `v` lie in the integer column lattice of `b`? The columns must
/// be linearly independent for the answer to be decisive.
pub fn in_col_lattice(b: &IntMat, v: &[Int]) -> bool {
    let rb = b.to_rat();
    match rb.solve(&int_to_rat_vec(v)) {
        Some(sol) => sol.iter().all(is_integer),
        None => false,
    }
}

/// The finite group `N_J / N_{J,V}` with explicit coset lifts.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    /// Invariant factors, one per generator, each at least 1.
    pub invariant_factors: Vec<Int>,
    pub order: Int,
    /// Lifts in ambient integer coordinates; the first entry is zero.
    pub lifts: Vec<Vec<Int>>,
    /// Coordinates of each lift in the generating-vector basis. These are
    /// the pairings of the lift against the dual basis of the generators.
    pub lift_coords: Vec<Vec<Rat>>,
}

impl QuotientGroup {
    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn order_usize(&self) -> usize {
        use num::ToPrimitive;
        self.order.to_usize().expect("group order fits in usize")
    }
}

/// Quotient of the saturation of the span of `vectors` by their integer
/// span. The vectors must be linearly independent in `Z^ambient_rank`.
pub fn quotient_group(vectors: &[Vec<Int>], ambient_rank: usize) -> Result<QuotientGroup> {
    let k = vectors.len();
    if k == 0 {
        return Ok(QuotientGroup {
            invariant_factors: vec![],
            order: Int::one(),
            lifts: vec![vec![Int::zero(); ambient_rank]],
            lift_coords: vec![vec![]],
        });
    }
    if vectors.iter().any(|v| v.len() != ambient_rank) {
        return Err(Error::DimensionMismatch);
    }
    let b = IntMat::from_cols(vectors.to_vec());
    let c = saturate(&b)?;
    let c_rat = c.to_rat();
    // Generators in saturation coordinates; entries are integers because
    // each generator lies in the saturated lattice.
    let mut a = IntMat::zero(k, k);
    for j in 0..k {
        let sol = c_rat
            .solve(&int_to_rat_vec(vectors[j].as_slice()))
            .ok_or_else(|| Error::Internal("saturation does not span generator".into()))?;
        for i in 0..k {
            debug_assert!(is_integer(&sol[i]));
            a[(i, j)] = sol[i].to_integer();
        }
    }
    let dec = snf(&a);
    let factors = dec.diagonal();
    let order: Int = factors.iter().product();
    debug_assert!(!order.is_zero());

    let b_rat = b.to_rat();
    let mut lifts = Vec::new();
    let mut lift_coords = Vec::new();
    let mut tuple = vec![Int::zero(); k];
    loop {
        let y = dec.u.mul_vec(&tuple);
        let lift = c.mul_vec(&y);
        let coords = b_rat
            .solve(&int_to_rat_vec(&lift))
            .ok_or_else(|| Error::Internal("lift outside rational span".into()))?;
        lifts.push(lift);
        lift_coords.push(coords);
        // Odometer over (t_1, ..., t_k), last index fastest.
        let mut pos = k;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < factors[pos] {
                break;
            }
            tuple[pos] = Int::zero();
            if pos == 0 {
                pos = usize::MAX;
                break;
            }
        }
        if pos == usize::MAX {
            break;
        }
    }
    Ok(QuotientGroup {
        invariant_factors: factors,
        order,
        lifts,
        lift_coords,
    })
}
