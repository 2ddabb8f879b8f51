//! Exact integer linear algebra: Smith normal form, linear congruences, and
//! subquotients of finite abelian groups.

pub mod howell;
mod subquotient;

pub use howell::Echelon;
pub use subquotient::{kernel, kernel_of_columns, snf_mod, SparseColumns, Subquotient};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("rows have different lengths".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_i64()).collect())
            .collect()
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
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

    /// `row[dst] += q · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = q * &self[(src, j)];
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += q · col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = q * &self[(i, src)];
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal with
/// nonnegative entries `d_1 | d_2 | …` (zeros last).
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Diagonal entries `d_1, …, d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t..rows, t..cols) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let p = a[(t, t)].clone();
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let q = -a[(i, t)].div_floor(&p);
                    a.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let q = -a[(t, j)].div_floor(&p);
                    a.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
            }
            // a remainder smaller than the pivot becomes the new pivot
            let below = (t + 1..rows).find(|&i| !a[(i, t)].is_zero());
            let right = (t + 1..cols).find(|&j| !a[(t, j)].is_zero());
            if below.is_some() || right.is_some() {
                let cand_r = below.map(|i| (i, t));
                let cand_c = right.map(|j| (t, j));
                let (i, j) = match (cand_r, cand_c) {
                    (Some(x), Some(y)) => {
                        if a[x].abs() <= a[y].abs() {
                            x
                        } else {
                            y
                        }
                    }
                    (Some(x), None) | (None, Some(x)) => x,
                    (None, None) => unreachable!(),
                };
                a.swap_rows(t, i);
                u.swap_rows(t, i);
                a.swap_cols(t, j);
                v.swap_cols(t, j);
                continue;
            }
            let p = a[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { u, d: a, v }
}

fn min_abs_entry(
    a: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = a[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| x < *b) {
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// A prepared system `M x ≡ t (mod moduli)`, reusable for many right-hand sides.
///
/// Row `i` of `M` is read modulo `moduli[i]`; a modulus of 0 means the row is
/// an equation over ℤ.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    cols: usize,
    snf: Snf,
    rank: usize,
    reduce_mod: Option<BigInt>,
}

impl LinearSystem {
    pub fn new(m: &IntMatrix, moduli: &[i64]) -> Result<Self> {
        if moduli.len() != m.rows {
            return Err(Error::Shape(format!(
                "{} moduli for a matrix with {} rows",
                moduli.len(),
                m.rows
            )));
        }
        let (rows, cols) = (m.rows, m.cols);
        let mut aug = IntMatrix::zeros(rows, cols + rows);
        for i in 0..rows {
            for j in 0..cols {
                aug[(i, j)] = m[(i, j)].clone();
            }
            aug[(i, cols + i)] = BigInt::from(moduli[i]);
        }
        let snf = smith_normal_form(&aug);
        let rank = snf.diagonal().iter().take_while(|d| !d.is_zero()).count();
        let reduce_mod = if moduli.iter().all(|&q| q > 0) {
            Some(BigInt::from(moduli.iter().fold(1i64, |e, &q| e.lcm(&q))))
        } else {
            None
        };
        Ok(Self { cols, snf, rank, reduce_mod })
    }

    /// A solution with entries reduced modulo the lcm of the moduli (when all
    /// are positive), or `None` if the system is inconsistent.
    pub fn solve(&self, target: &[i64]) -> Result<Option<Vec<BigInt>>> {
        let rows = self.snf.u.rows;
        if target.len() != rows {
            return Err(Error::Shape(format!("target has {} entries, expected {rows}", target.len())));
        }
        let t: Vec<BigInt> = target.iter().map(|&x| BigInt::from(x)).collect();
        let mut ut = vec![BigInt::zero(); rows];
        for (i, slot) in ut.iter_mut().enumerate() {
            for (k, tk) in t.iter().enumerate() {
                if !tk.is_zero() {
                    *slot += &self.snf.u[(i, k)] * tk;
                }
            }
        }
        let width = self.snf.v.rows;
        let mut y = vec![BigInt::zero(); width];
        for i in 0..rows {
            if i < self.rank {
                let d = &self.snf.d[(i, i)];
                if !ut[i].is_multiple_of(d) {
                    return Ok(None);
                }
                y[i] = &ut[i] / d;
            } else if !ut[i].is_zero() {
                return Ok(None);
            }
        }
        let mut x = vec![BigInt::zero(); self.cols];
        for (j, xj) in x.iter_mut().enumerate() {
            for (k, yk) in y.iter().enumerate() {
                if !yk.is_zero() {
                    *xj += &self.snf.v[(j, k)] * yk;
                }
            }
            if let Some(e) = &self.reduce_mod {
                *xj = xj.mod_floor(e);
            }
        }
        Ok(Some(x))
    }

    /// Like [`LinearSystem::solve`] but with `i64` output.
    pub fn solve_i64(&self, target: &[i64]) -> Result<Option<Vec<i64>>> {
        Ok(self.solve(target)?.map(|x| {
            x.iter().map(|v| v.to_i64().expect("solution fits in i64 after reduction")).collect()
        }))
    }
}

/// One-shot `M x ≡ t (mod moduli)`.
pub fn solve(m: &IntMatrix, target: &[i64], moduli: &[i64]) -> Result<Option<Vec<BigInt>>> {
    LinearSystem::new(m, moduli)?.solve(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_snf(m: &IntMatrix) {
        let s = smith_normal_form(m);
        let lhs = s.u.mul(m).unwrap().mul(&s.v).unwrap();
        assert_eq!(lhs, s.d);
        assert_eq!(s.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.determinant().unwrap().abs(), BigInt::one());
        for i in 0..s.d.rows {
            for j in 0..s.d.cols {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn diag_2_3() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        check_snf(&m);
    }

    #[test]
    fn zero_and_empty() {
        let m = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&m);
        assert!(s.diagonal().iter().all(|d| d.is_zero()));
        check_snf(&m);
        check_snf(&IntMatrix::zeros(0, 2));
    }

    #[test]
    fn congruences() {
        let m = IntMatrix::from_rows(&[vec![2]]).unwrap();
        assert_eq!(solve(&m, &[2], &[4]).unwrap().map(|x| x[0].clone()), Some(BigInt::from(1)));
        assert_eq!(solve(&m, &[1], &[4]).unwrap(), None);
        // over Z
        let m = IntMatrix::from_rows(&[vec![2, 3]]).unwrap();
        let x = solve(&m, &[1], &[0]).unwrap().unwrap();
        assert_eq!(BigInt::from(2) * &x[0] + BigInt::from(3) * &x[1], BigInt::one());
    }

    proptest! {
        #[test]
        fn snf_invariants(rows in 0usize..5, cols in 0usize..5, seed in proptest::collection::vec(-9i64..10, 25)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 5..i * 5 + cols].to_vec()).collect();
            let m = if rows == 0 { IntMatrix::zeros(0, cols) } else { IntMatrix::from_rows(&data).unwrap() };
            check_snf(&m);
        }

        #[test]
        fn solve_matches_brute_force(
            entries in proptest::collection::vec(0i64..6, 6),
            target in proptest::collection::vec(0i64..6, 3),
            moduli in proptest::collection::vec(2i64..7, 3),
        ) {
            // 3 equations in 2 unknowns; brute force over x in [0, lcm)^2
            let rows: Vec<Vec<i64>> = (0..3).map(|i| entries[2 * i..2 * i + 2].to_vec()).collect();
            let m = IntMatrix::from_rows(&rows).unwrap();
            let e = moduli.iter().fold(1i64, |e, &q| e.lcm(&q));
            let sat = |x: &[i64]| (0..3).all(|i| {
                (rows[i][0] * x[0] + rows[i][1] * x[1] - target[i]).rem_euclid(moduli[i]) == 0
            });
            let brute = (0..e).any(|a| (0..e).any(|b| sat(&[a, b])));
            let sys = LinearSystem::new(&m, &moduli).unwrap();
            match sys.solve_i64(&target).unwrap() {
                Some(x) => {
                    prop_assert!(sat(&x));
                    prop_assert!(x.iter().all(|&v| (0..e).contains(&v)));
                }
                None => prop_assert!(!brute),
            }
        }
    }
}
