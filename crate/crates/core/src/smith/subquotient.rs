use num_integer::Integer;

use super::howell::{mul_mod, Echelon};
use crate::error::{Error, Result};

fn lcm_all(moduli: &[i64]) -> i64 {
    moduli.iter().fold(1i64, |e, &m| e.lcm(&m))
}

/// Sparse matrix columns: `cols[j]` lists the nonzero `(row, entry)` pairs of column `j`.
pub type SparseColumns = Vec<Vec<(usize, i64)>>;

fn dense_to_columns(mat: &[Vec<i64>], cols: usize) -> SparseColumns {
    (0..cols)
        .map(|j| mat.iter().enumerate().filter(|(_, r)| r[j] != 0).map(|(k, r)| (k, r[j])).collect())
        .collect()
}

/// Kernel of `K : ⊕ℤ/x_j → ⊕ℤ/y_k` (`mat` is `|y| × |x|`) as a submodule of
/// `(ℤ/e)^{|x|}` containing `diag(x)`, for any common multiple `e` of all moduli.
pub fn kernel(x_mod: &[i64], y_mod: &[i64], mat: &[Vec<i64>], e: i64) -> Result<Echelon> {
    let (n, r) = (x_mod.len(), y_mod.len());
    if mat.len() != r || mat.iter().any(|row| row.len() != n) {
        return Err(Error::Shape(format!("expected a {r}x{n} matrix")));
    }
    kernel_of_columns(x_mod, y_mod, &dense_to_columns(mat, n), e)
}

/// [`kernel`] with the map given by sparse columns.
pub fn kernel_of_columns(x_mod: &[i64], y_mod: &[i64], cols: &[Vec<(usize, i64)>], e: i64) -> Result<Echelon> {
    let (n, r) = (x_mod.len(), y_mod.len());
    if cols.len() != n || cols.iter().flatten().any(|&(k, _)| k >= r) {
        return Err(Error::Shape(format!("expected {n} columns with rows below {r}")));
    }
    if x_mod.iter().chain(y_mod).any(|&m| m < 1 || e % m != 0) {
        return Err(Error::Shape("moduli must be positive divisors of the working modulus".into()));
    }
    for (j, col) in cols.iter().enumerate() {
        for &(k, a) in col {
            if mul_mod(x_mod[j], a, y_mod[k]) != 0 {
                return Err(Error::Shape(format!(
                    "map is not well defined: column {j} has order {} but entry {a} mod {}",
                    x_mod[j], y_mod[k]
                )));
            }
        }
    }
    let mut graph = Echelon::new(e, r + n);
    let mut v = vec![0; r + n];
    for k in 0..r {
        v.fill(0);
        v[k] = y_mod[k];
        graph.insert(&v);
    }
    for (j, col) in cols.iter().enumerate() {
        v.fill(0);
        for &(k, a) in col {
            v[k] = (v[k] + a).rem_euclid(e);
        }
        v[r + j] = 1;
        graph.insert(&v);
    }
    let mut ker = graph.tail(r);
    for j in 0..n {
        let mut w = vec![0; n];
        w[j] = x_mod[j];
        ker.insert(&w);
    }
    Ok(ker)
}

/// Smith form over `ℤ/e` of a relation matrix with `k` columns.
///
/// Returns `(d, V, W)` with `W = V⁻¹` over `ℤ/e` and the row space of
/// `rel · V` equal to `⊕ d_t ℤ/e`; `d_t` divides `e` and `d_t = e` marks a free
/// coordinate over `ℤ/e`.
pub fn snf_mod(rel: &[Vec<i64>], k: usize, e: i64) -> (Vec<i64>, Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut a: Vec<Vec<i64>> = rel.iter().map(|r| r.iter().map(|x| x.rem_euclid(e)).collect()).collect();
    let rows = a.len();
    let mut v = identity(k);
    let mut w = identity(k);
    let mut t = 0;
    while t < rows.min(k) {
        let mut best: Option<(usize, usize, i64)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let g = x.gcd(&e);
                    if best.is_none_or(|b| g < b.2) {
                        best = Some((i, j, g));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        w.swap(t, pj);
        loop {
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    row_combine(&mut a, t, i, e);
                }
            }
            let mut dirty = false;
            for j in t + 1..k {
                if a[t][j] != 0 {
                    col_combine(&mut a, &mut v, &mut w, t, j, e);
                }
            }
            if (t + 1..rows).any(|i| a[i][t] != 0) {
                dirty = true;
            }
            if !dirty {
                let p = a[t][t].gcd(&e);
                let bad = (t + 1..rows).find(|&i| (t + 1..k).any(|j| a[i][j] % p != 0));
                match bad {
                    Some(i) => {
                        let src = a[i].clone();
                        for (x, y) in a[t].iter_mut().zip(&src) {
                            *x = (*x + y).rem_euclid(e);
                        }
                    }
                    None => break,
                }
            }
        }
        t += 1;
    }
    let d = (0..k)
        .map(|t| if t < rows.min(k) && a[t][t] != 0 { a[t][t].gcd(&e) } else { e })
        .collect();
    (d, v, w)
}

fn identity(k: usize) -> Vec<Vec<i64>> {
    (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect()
}

fn swap_cols(m: &mut [Vec<i64>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// Unimodular row operation putting `gcd(a[t][t], a[i][t])` at `(t, t)` and 0 at `(i, t)`.
fn row_combine(a: &mut [Vec<i64>], t: usize, i: usize, e: i64) {
    let (p, x) = (a[t][t], a[i][t]);
    let (g, s, u) = gcd_coeffs(p, x);
    let (pg, xg) = (p / g, x / g);
    for j in 0..a[t].len() {
        let (rt, ri) = (a[t][j] as i128, a[i][j] as i128);
        a[t][j] = (s as i128 * rt + u as i128 * ri).rem_euclid(e as i128) as i64;
        a[i][j] = (-(xg as i128) * rt + pg as i128 * ri).rem_euclid(e as i128) as i64;
    }
}

/// Column analogue of [`row_combine`], tracking `V` (columns) and `W = V⁻¹` (rows).
fn col_combine(a: &mut [Vec<i64>], v: &mut [Vec<i64>], w: &mut [Vec<i64>], t: usize, j: usize, e: i64) {
    let (p, x) = (a[t][t], a[t][j]);
    let (g, s, u) = gcd_coeffs(p, x);
    let (pg, xg) = (p / g, x / g);
    // new col_t = s col_t + u col_j, new col_j = -xg col_t + pg col_j
    let apply = |m: &mut [Vec<i64>]| {
        for row in m.iter_mut() {
            let (ct, cj) = (row[t] as i128, row[j] as i128);
            row[t] = (s as i128 * ct + u as i128 * cj).rem_euclid(e as i128) as i64;
            row[j] = (-(xg as i128) * ct + pg as i128 * cj).rem_euclid(e as i128) as i64;
        }
    };
    apply(a);
    apply(v);
    // inverse of [[s, -xg], [u, pg]] (columns t, j) is [[pg, xg], [-u, s]], applied to rows of W
    let (rt, rj) = (w[t].clone(), w[j].clone());
    for c in 0..rt.len() {
        let (x0, x1) = (rt[c] as i128, rj[c] as i128);
        w[t][c] = (pg as i128 * x0 + xg as i128 * x1).rem_euclid(e as i128) as i64;
        w[j][c] = (-(u as i128) * x0 + s as i128 * x1).rem_euclid(e as i128) as i64;
    }
}

/// `(g, s, u)` with `s·p + u·x = g = gcd(p, x)`, preferring `(1, 0)` when `p | x`.
fn gcd_coeffs(p: i64, x: i64) -> (i64, i64, i64) {
    if p != 0 && x % p == 0 {
        return (p, 1, 0);
    }
    let r = p.extended_gcd(&x);
    (r.gcd, r.x, r.y)
}

/// `ker / im` for nested subgroups `im ⊆ ker ⊆ ⊕ ℤ/m_j`, with explicit
/// coordinates in invariant-factor form.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: Vec<i64>,
    modulus: i64,
    kernel: Echelon,
    image: Echelon,
    gens: Vec<Vec<i64>>,
    invariants: Vec<i64>,
    keep: Vec<usize>,
    v: Vec<Vec<i64>>,
    w: Vec<Vec<i64>>,
}

impl Subquotient {
    /// `ker K / im B` where `K : ⊕ℤ/m → ⊕ℤ/y` is `|y| × |m|` and `B` has one
    /// column per generator of the image (`|m| × s`).
    pub fn new(ambient: &[i64], k: &[Vec<i64>], y_mod: &[i64], b: &[Vec<i64>]) -> Result<Self> {
        let n = ambient.len();
        if k.len() != y_mod.len() || k.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("kernel matrix must be {}x{n}", y_mod.len())));
        }
        let s = b.first().map_or(0, |r| r.len());
        if (!b.is_empty() && b.len() != n) || b.iter().any(|row| row.len() != s) {
            return Err(Error::Shape(format!("image matrix must have {n} rows")));
        }
        Self::from_columns(ambient, y_mod, &dense_to_columns(k, n), &dense_to_columns(b, s))
    }

    /// [`Subquotient::new`] with both maps given by sparse columns.
    pub fn from_columns(
        ambient: &[i64],
        y_mod: &[i64],
        k_cols: &[Vec<(usize, i64)>],
        b_cols: &[Vec<(usize, i64)>],
    ) -> Result<Self> {
        let n = ambient.len();
        let e = lcm_all(ambient).lcm(&lcm_all(y_mod));
        let ker = kernel_of_columns(ambient, y_mod, k_cols, e)?;
        let mut image = Echelon::new(e, n);
        let mut col = vec![0; n];
        for j in 0..n {
            col.fill(0);
            col[j] = ambient[j];
            image.insert(&col);
        }
        for (c, bc) in b_cols.iter().enumerate() {
            col.fill(0);
            for &(j, a) in bc {
                if j >= n {
                    return Err(Error::Shape(format!("image column {c} has row {j} >= {n}")));
                }
                col[j] = (col[j] + a).rem_euclid(e);
            }
            if !ker.contains(&col) {
                return Err(Error::ImageNotInKernel { column: c });
            }
            image.insert(&col);
        }
        Ok(Self::from_lattices(ambient.to_vec(), ker, image))
    }

    /// `ker / im` from submodules already in Howell form over a common modulus.
    /// Both must contain `diag(ambient)`, and `image ⊆ kernel`.
    pub fn from_lattices(ambient: Vec<i64>, kernel: Echelon, image: Echelon) -> Self {
        let e = kernel.modulus();
        let n = ambient.len();
        debug_assert!(kernel.contains_all(&image));
        let gens: Vec<Vec<i64>> = kernel.rows().map(|(_, r)| r.to_vec()).collect();
        let k = gens.len();
        let mut graph = Echelon::new(e, n + k);
        let mut v = vec![0; n + k];
        for (i, g) in gens.iter().enumerate() {
            v.fill(0);
            v[..n].copy_from_slice(g);
            v[n + i] = 1;
            graph.insert(&v);
        }
        for (_, r) in image.rows() {
            v.fill(0);
            v[..n].copy_from_slice(r);
            graph.insert(&v);
        }
        let rel: Vec<Vec<i64>> = graph.tail(n).rows().map(|(_, r)| r.to_vec()).collect();
        let (d, vmat, wmat) = snf_mod(&rel, k, e);
        let keep: Vec<usize> = (0..k).filter(|&t| d[t] > 1).collect();
        let mut invariants: Vec<i64> = keep.iter().map(|&t| d[t]).collect();
        let mut order: Vec<usize> = (0..keep.len()).collect();
        order.sort_by_key(|&i| invariants[i]);
        let keep: Vec<usize> = order.iter().map(|&i| keep[i]).collect();
        invariants = order.iter().map(|&i| invariants[i]).collect();
        Self { ambient, modulus: e, kernel, image, gens, invariants, keep, v: vmat, w: wmat }
    }

    pub fn invariants(&self) -> &[i64] {
        &self.invariants
    }

    pub fn order(&self) -> u128 {
        self.invariants.iter().map(|&d| d as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn ambient(&self) -> &[i64] {
        &self.ambient
    }

    pub fn kernel_lattice(&self) -> &Echelon {
        &self.kernel
    }

    pub fn image_lattice(&self) -> &Echelon {
        &self.image
    }

    pub fn in_kernel(&self, x: &[i64]) -> bool {
        self.kernel.contains(x)
    }

    /// Whether `x` (assumed in the kernel) represents the zero class.
    pub fn is_zero_class(&self, x: &[i64]) -> bool {
        self.image.contains(x)
    }

    /// Coordinates of the class of `x` in `⊕ ℤ/invariants`.
    pub fn reduce(&self, x: &[i64]) -> Result<Vec<i64>> {
        let coeffs = self.kernel.solve(x).ok_or_else(|| {
            Error::VerificationFailed("element is not in the kernel".into())
        })?;
        let c: Vec<i64> = self.kernel.rows().map(|(j, _)| coeffs[j]).collect();
        let e = self.modulus;
        Ok(self
            .keep
            .iter()
            .zip(&self.invariants)
            .map(|(&t, &d)| {
                let mut acc = 0i128;
                for (i, &ci) in c.iter().enumerate() {
                    acc += ci as i128 * self.v[i][t] as i128;
                }
                (acc.rem_euclid(e as i128) as i64).rem_euclid(d)
            })
            .collect())
    }

    /// A kernel element in the class with the given coordinates, reduced mod the ambient moduli.
    pub fn lift(&self, coords: &[i64]) -> Vec<i64> {
        assert_eq!(coords.len(), self.invariants.len());
        let e = self.modulus;
        let n = self.ambient.len();
        let mut out = vec![0i128; n];
        for (&t, &y) in self.keep.iter().zip(coords) {
            if y == 0 {
                continue;
            }
            for (i, g) in self.gens.iter().enumerate() {
                let coef = mul_mod(y, self.w[t][i], e) as i128;
                if coef == 0 {
                    continue;
                }
                for j in 0..n {
                    out[j] += coef * g[j] as i128;
                }
            }
        }
        out.iter().zip(&self.ambient).map(|(&x, &m)| x.rem_euclid(m as i128) as i64).collect()
    }

    /// All coordinate tuples, in mixed-radix order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        let total = self.order();
        (0..total).map(move |mut code| {
            let mut v = vec![0; self.invariants.len()];
            for j in (0..v.len()).rev() {
                let d = self.invariants[j] as u128;
                v[j] = (code % d) as i64;
                code /= d;
            }
            v
        })
    }
}
