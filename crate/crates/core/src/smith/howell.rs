//! Submodules of `(ℤ/e)^n` kept in Howell form.
//!
//! A subgroup of `⊕ ℤ/m_j` is the image of a lattice `L ⊆ ℤ^n` containing
//! `diag(m)ℤ^n`; when `e` is a common multiple of the `m_j`, `L` contains
//! `eℤ^n` and is determined by `L/eℤ^n`. Howell form is the echelon form
//! over `ℤ/e` in which the rows with pivot at or after column `j` span every
//! element whose first `j` coordinates vanish, so greedy reduction decides
//! membership and leading-zero rows span intersections with coordinate
//! subspaces.

use num_integer::Integer;

/// Howell-form basis of a submodule of `(ℤ/e)^n`; `rows[j]` has its pivot in column `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    modulus: i64,
    dim: usize,
    rows: Vec<Option<Vec<i64>>>,
}

impl Echelon {
    pub fn new(modulus: i64, dim: usize) -> Self {
        assert!(modulus >= 1);
        Self { modulus, dim, rows: vec![None; dim] }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Pivot rows in column order, as `(pivot column, row)`.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &[i64])> {
        self.rows.iter().enumerate().filter_map(|(j, r)| r.as_deref().map(|r| (j, r)))
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    /// `|submodule|` when it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        self.rows().try_fold(1u128, |acc, (j, r)| acc.checked_mul((self.modulus / r[j]) as u128))
    }

    pub fn insert(&mut self, v: &[i64]) {
        assert_eq!(v.len(), self.dim);
        let e = self.modulus;
        let mut pending = vec![v.iter().map(|x| x.rem_euclid(e)).collect::<Vec<i64>>()];
        while let Some(mut v) = pending.pop() {
            for j in 0..self.dim {
                if v[j] == 0 {
                    continue;
                }
                match self.rows[j].take() {
                    None => {
                        let (g, u) = unit_normalize(v[j], e);
                        for x in v.iter_mut() {
                            *x = mul_mod(*x, u, e);
                        }
                        debug_assert_eq!(v[j], g);
                        push_annihilator(&mut pending, &v, g, e);
                        self.rows[j] = Some(v);
                        break;
                    }
                    Some(row) => {
                        let p = row[j];
                        if v[j] % p == 0 {
                            let q = v[j] / p;
                            axpy(&mut v, -q, &row, e);
                            self.rows[j] = Some(row);
                        } else {
                            let x = v[j];
                            let gcd = p.extended_gcd(&x);
                            let (g, a, b) = (gcd.gcd, gcd.x, gcd.y);
                            let mut new_row = vec![0; self.dim];
                            let mut rest = vec![0; self.dim];
                            for k in 0..self.dim {
                                new_row[k] = (a as i128 * row[k] as i128 + b as i128 * v[k] as i128)
                                    .rem_euclid(e as i128) as i64;
                                rest[k] = ((x / g) as i128 * row[k] as i128
                                    - (p / g) as i128 * v[k] as i128)
                                    .rem_euclid(e as i128) as i64;
                            }
                            debug_assert_eq!(new_row[j], g);
                            debug_assert_eq!(rest[j], 0);
                            push_annihilator(&mut pending, &new_row, g, e);
                            self.rows[j] = Some(new_row);
                            v = rest;
                        }
                    }
                }
            }
        }
    }

    /// Greedy reduction against the pivot rows. Returns the coefficient of
    /// each pivot row (indexed by pivot column) and the remainder, whose
    /// pivot-column entries lie in `0..pivot`.
    pub fn reduce(&self, v: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let e = self.modulus;
        let mut v: Vec<i64> = v.iter().map(|x| x.rem_euclid(e)).collect();
        let mut coeffs = vec![0; self.dim];
        for j in 0..self.dim {
            if v[j] == 0 {
                continue;
            }
            if let Some(row) = &self.rows[j] {
                let q = v[j] / row[j];
                if q != 0 {
                    axpy(&mut v, -q, row, e);
                    coeffs[j] = q;
                }
            }
        }
        (coeffs, v)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).1.iter().all(|&x| x == 0)
    }

    /// Coefficients expressing `v` in the pivot rows, if `v` is a member.
    pub fn solve(&self, v: &[i64]) -> Option<Vec<i64>> {
        let (c, r) = self.reduce(v);
        r.iter().all(|&x| x == 0).then_some(c)
    }

    pub fn contains_all(&self, other: &Echelon) -> bool {
        other.rows().all(|(_, r)| self.contains(r))
    }

    pub fn same_submodule(&self, other: &Echelon) -> bool {
        self.modulus == other.modulus && self.contains_all(other) && other.contains_all(self)
    }

    /// Reduces entries above each pivot into `0..pivot`, making the form unique.
    pub fn canonicalize(&mut self) {
        let e = self.modulus;
        for j in (0..self.dim).rev() {
            let Some(mut row) = self.rows[j].take() else { continue };
            for k in j + 1..self.dim {
                if let Some(other) = &self.rows[k] {
                    let q = row[k] / other[k];
                    if q != 0 {
                        axpy(&mut row, -q, other, e);
                    }
                }
            }
            self.rows[j] = Some(row);
        }
    }

    /// Rows whose pivot lies at or after `start`, truncated to those columns.
    pub fn tail(&self, start: usize) -> Echelon {
        let mut out = Echelon::new(self.modulus, self.dim - start);
        for j in start..self.dim {
            if let Some(r) = &self.rows[j] {
                out.rows[j - start] = Some(r[start..].to_vec());
            }
        }
        out
    }
}

fn push_annihilator(pending: &mut Vec<Vec<i64>>, row: &[i64], pivot: i64, e: i64) {
    let ann = e / pivot;
    if ann == e {
        return;
    }
    let w: Vec<i64> = row.iter().map(|&x| mul_mod(x, ann, e)).collect();
    if w.iter().any(|&x| x != 0) {
        pending.push(w);
    }
}

#[inline]
pub(crate) fn mul_mod(a: i64, b: i64, e: i64) -> i64 {
    (a as i128 * b as i128).rem_euclid(e as i128) as i64
}

#[inline]
fn axpy(v: &mut [i64], q: i64, row: &[i64], e: i64) {
    for (x, &r) in v.iter_mut().zip(row) {
        if r != 0 {
            *x = (*x as i128 + q as i128 * r as i128).rem_euclid(e as i128) as i64;
        }
    }
}

/// For nonzero `a` in `ℤ/e`, returns `(g, u)` with `g = gcd(a, e)`, `u` a unit
/// and `a·u ≡ g (mod e)`.
pub(crate) fn unit_normalize(a: i64, e: i64) -> (i64, i64) {
    let a = a.rem_euclid(e);
    let g = a.gcd(&e);
    let (a1, e1) = (a / g, e / g);
    let u0 = if e1 == 1 { 0 } else { a1.extended_gcd(&e1).x.rem_euclid(e1) };
    let mut u = u0;
    while u.gcd(&e) != 1 {
        u += e1;
    }
    (g, u % e.max(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_normalization() {
        for e in 1..40i64 {
            for a in 1..e {
                let (g, u) = unit_normalize(a, e);
                assert_eq!(g, a.gcd(&e));
                assert_eq!(u.gcd(&e), 1);
                assert_eq!(mul_mod(a, u, e), g % e);
            }
        }
    }

    #[test]
    fn z4_submodules() {
        let mut h = Echelon::new(4, 2);
        h.insert(&[2, 1]);
        // span of (2,1) has order 4: (2,1),(0,2),(2,3),(0,0)
        assert_eq!(h.order(), Some(4));
        assert!(h.contains(&[0, 2]));
        assert!(!h.contains(&[2, 0]));
        assert!(!h.contains(&[0, 1]));
        let mut k = Echelon::new(4, 2);
        k.insert(&[2, 3]);
        assert!(h.same_submodule(&k));
    }

    #[test]
    fn order_matches_enumeration() {
        // brute-force span of a few vectors in (Z/6)^3
        let gens = [[2i64, 3, 0], [0, 4, 3], [3, 0, 2]];
        let mut h = Echelon::new(6, 3);
        for g in &gens {
            h.insert(g);
        }
        let mut span = std::collections::HashSet::new();
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    let v: Vec<i64> = (0..3)
                        .map(|k| (a * gens[0][k] + b * gens[1][k] + c * gens[2][k]).rem_euclid(6))
                        .collect();
                    span.insert(v);
                }
            }
        }
        assert_eq!(h.order(), Some(span.len() as u128));
        for x in 0..216i64 {
            let v = vec![x / 36, (x / 6) % 6, x % 6];
            assert_eq!(h.contains(&v), span.contains(&v), "{v:?}");
        }
    }
}
