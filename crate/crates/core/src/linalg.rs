//! Exact elimination over the local rings `Z/p^w`.
//!
//! Every system here is an integer matrix acting on `Q/Z`-valued vectors.
//! Such a system splits into its `p`-primary parts, and each part is an
//! integer problem modulo a prime power large enough to hold all
//! denominators. Pivoting on an entry of minimal valuation gives the Smith
//! form directly over a local ring.

use crate::{Error, Result};
use rand::{Rng, SeedableRng};

/// Sparse integer row: `(column, coefficient)`.
pub type SparseRow = Vec<(usize, i64)>;

#[derive(Clone, Copy, Debug)]
pub struct Ring {
    pub p: u64,
    pub w: u32,
    pub m: u64,
    mask: Option<u64>,
}

impl Ring {
    pub fn new(p: u64, w: u32) -> Result<Ring> {
        let m = p
            .checked_pow(w)
            .filter(|&m| m < 1 << 62)
            .ok_or(Error::Overflow)?;
        Ok(Ring {
            p,
            w,
            m,
            mask: (p == 2).then_some(m - 1),
        })
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match self.mask {
            Some(k) => a.wrapping_mul(b) & k,
            None if self.m < 1 << 32 => a * b % self.m,
            None => ((a as u128 * b as u128) % self.m as u128) as u64,
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        (a as i128).rem_euclid(self.m as i128) as u64
    }

    /// Valuation, with `w` standing for zero.
    pub fn val(&self, mut a: u64) -> u32 {
        if a == 0 {
            return self.w;
        }
        let mut v = 0;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    /// Inverse of the unit part of `a = p^v u`.
    fn unit_inverse(&self, a: u64) -> u64 {
        let mut u = a;
        while u % self.p == 0 {
            u /= self.p;
        }
        crate::qz::mod_inverse(u % self.m, self.m)
    }
}

/// Result of eliminating a matrix `A` (rows × cols) to `U A V = diag(p^v_t)`.
pub struct LocalForm {
    pub ring: Ring,
    pub ncols: usize,
    /// Valuation of pivot `t`, for `t < rank`.
    pub pivots: Vec<u32>,
    /// Columns of `V`: `vt[j]` is column `j`.
    pub vt: Vec<Vec<u64>>,
    /// Rows of `V^-1`, when requested.
    pub vinv: Option<Vec<Vec<u64>>>,
    /// `U b` for the right-hand side, when one was supplied.
    pub rhs: Option<Vec<u64>>,
}

pub fn eliminate(
    ring: Ring,
    mut a: Vec<Vec<u64>>,
    ncols: usize,
    mut rhs: Option<Vec<u64>>,
    with_inverse: bool,
) -> LocalForm {
    let nrows = a.len();
    let identity = |c: usize| -> Vec<Vec<u64>> {
        (0..c)
            .map(|i| {
                let mut r = vec![0; c];
                r[i] = 1;
                r
            })
            .collect()
    };
    let mut vt = identity(ncols);
    let mut vinv = with_inverse.then(|| identity(ncols));
    let mut pivots = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Minimal-valuation pivot in the remaining block.
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = ring.val(x);
                    if best.map_or(true, |b| v < b.0) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(t, pi);
        if let Some(r) = rhs.as_mut() {
            r.swap(t, pi);
        }
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            vt.swap(t, pj);
            if let Some(vi) = vinv.as_mut() {
                vi.swap(t, pj);
            }
        }
        let u = ring.unit_inverse(a[t][t]);
        for x in a[t].iter_mut() {
            *x = ring.mul(*x, u);
        }
        if let Some(r) = rhs.as_mut() {
            r[t] = ring.mul(r[t], u);
        }
        let pv = ring.p.pow(v);
        let (head, tail) = a.split_at_mut(t + 1);
        let prow = &head[t];
        for (k, row) in tail.iter_mut().enumerate() {
            let x = row[t];
            if x == 0 {
                continue;
            }
            let f = x / pv;
            for j in t..ncols {
                if prow[j] != 0 {
                    row[j] = ring.sub(row[j], ring.mul(f, prow[j]));
                }
            }
            if let Some(r) = rhs.as_mut() {
                let i = t + 1 + k;
                r[i] = ring.sub(r[i], ring.mul(f, r[t]));
            }
        }
        // Clear the pivot row with column operations, recorded in V.
        for j in t + 1..ncols {
            let x = a[t][j];
            if x == 0 {
                continue;
            }
            let f = x / pv;
            a[t][j] = 0;
            let (lo, hi) = vt.split_at_mut(j);
            let (src, dst) = (&lo[t], &mut hi[0]);
            for (d, &s) in dst.iter_mut().zip(src) {
                if s != 0 {
                    *d = ring.sub(*d, ring.mul(f, s));
                }
            }
            if let Some(vi) = vinv.as_mut() {
                let (lo, hi) = vi.split_at_mut(j);
                let (dst, src) = (&mut lo[t], &hi[0]);
                for (d, &s) in dst.iter_mut().zip(src) {
                    if s != 0 {
                        *d = ring.add(*d, ring.mul(f, s));
                    }
                }
            }
        }
        pivots.push(v);
        t += 1;
    }
    LocalForm {
        ring,
        ncols,
        pivots,
        vt,
        vinv,
        rhs,
    }
}

const EXTRA_ROWS: usize = 16;

/// Random combinations of the sparse rows (and right-hand side).
fn compress(
    ring: Ring,
    rows: &[SparseRow],
    rhs: Option<&[u64]>,
    ncols: usize,
    k: usize,
    seed: u64,
) -> (Vec<Vec<u64>>, Option<Vec<u64>>) {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut out = vec![vec![0u64; ncols]; k];
    let mut out_rhs = rhs.map(|_| vec![0u64; k]);
    for (i, row) in rows.iter().enumerate() {
        let conv: Vec<(usize, u64)> = row.iter().map(|&(c, x)| (c, ring.from_i64(x))).collect();
        for j in 0..k {
            let r = rng.gen_range(0..ring.m);
            if r == 0 {
                continue;
            }
            let target = &mut out[j];
            for &(c, x) in &conv {
                target[c] = ring.add(target[c], ring.mul(r, x));
            }
            if let (Some(o), Some(b)) = (out_rhs.as_mut(), rhs) {
                o[j] = ring.add(o[j], ring.mul(r, b[i]));
            }
        }
    }
    (out, out_rhs)
}

fn densify(ring: Ring, row: &SparseRow, ncols: usize) -> Vec<u64> {
    let mut d = vec![0; ncols];
    for &(c, x) in row {
        d[c] = ring.add(d[c], ring.from_i64(x));
    }
    d
}

/// Smith form of the row module of `rows`, exact modulo `p^w`.
pub fn row_module(ring: Ring, rows: &[SparseRow], ncols: usize) -> LocalForm {
    let compressed = rows.len() > 2 * ncols + EXTRA_ROWS;
    let mut dense: Vec<Vec<u64>> = if compressed {
        compress(ring, rows, None, ncols, ncols + EXTRA_ROWS, 0x5eed).0
    } else {
        rows.iter().map(|r| densify(ring, r, ncols)).collect()
    };
    loop {
        let form = eliminate(ring, dense.clone(), ncols, None, true);
        if !compressed {
            return form;
        }
        let missing = rows_outside(&form, rows);
        if missing.is_empty() {
            return form;
        }
        dense.extend(missing.into_iter().map(|i| densify(ring, &rows[i], ncols)));
    }
}

/// Indices of rows that do not lie in the module described by `form`.
fn rows_outside(form: &LocalForm, rows: &[SparseRow]) -> Vec<usize> {
    let ring = form.ring;
    let n = form.ncols;
    // Row-major V for the products a·V.
    let mut v = vec![vec![0u64; n]; n];
    for (j, col) in form.vt.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            v[i][j] = x;
        }
    }
    let mut bad = Vec::new();
    let mut w = vec![0u64; n];
    for (idx, row) in rows.iter().enumerate() {
        w.iter_mut().for_each(|x| *x = 0);
        for &(c, x) in row {
            let x = ring.from_i64(x);
            for (wj, &vj) in w.iter_mut().zip(&v[c]) {
                if vj != 0 {
                    *wj = ring.add(*wj, ring.mul(x, vj));
                }
            }
        }
        let ok = w
            .iter()
            .enumerate()
            .all(|(j, &x)| match form.pivots.get(j) {
                Some(&pv) => ring.val(x) >= pv,
                None => x == 0,
            });
        if !ok {
            bad.push(idx);
            if bad.len() >= 64 {
                break;
            }
        }
    }
    bad
}

/// Some `x` with `A x ≡ b (mod p^w)`, or `None` when the system is inconsistent.
pub fn solve(ring: Ring, rows: &[SparseRow], rhs: &[u64], ncols: usize) -> Option<Vec<u64>> {
    let compressed = rows.len() > 2 * ncols + EXTRA_ROWS;
    let (mut dense, mut drhs) = if compressed {
        let (d, r) = compress(ring, rows, Some(rhs), ncols, ncols + EXTRA_ROWS, 0x50_1e);
        (d, r.unwrap())
    } else {
        (
            rows.iter().map(|r| densify(ring, r, ncols)).collect(),
            rhs.to_vec(),
        )
    };
    loop {
        let form = eliminate(ring, dense.clone(), ncols, Some(drhs.clone()), false);
        let x = back_substitute(&form)?;
        let violated: Vec<usize> = rows
            .iter()
            .enumerate()
            .filter(|(i, r)| {
                let s = r.iter().fold(0, |acc, &(c, a)| {
                    ring.add(acc, ring.mul(ring.from_i64(a), x[c]))
                });
                s != rhs[*i]
            })
            .map(|(i, _)| i)
            .take(64)
            .collect();
        if violated.is_empty() {
            return Some(x);
        }
        assert!(compressed, "full elimination produced a wrong solution");
        for i in violated {
            dense.push(densify(ring, &rows[i], ncols));
            drhs.push(rhs[i]);
        }
    }
}

fn back_substitute(form: &LocalForm) -> Option<Vec<u64>> {
    let ring = form.ring;
    let b = form.rhs.as_ref().expect("right-hand side");
    let r = form.pivots.len();
    if b[r..].iter().any(|&x| x != 0) {
        return None;
    }
    let mut x = vec![0u64; form.ncols];
    for (t, &v) in form.pivots.iter().enumerate() {
        if b[t] == 0 {
            continue;
        }
        if ring.val(b[t]) < v {
            return None;
        }
        let y = b[t] / ring.p.pow(v);
        for (xi, &c) in x.iter_mut().zip(&form.vt[t]) {
            if c != 0 {
                *xi = ring.add(*xi, ring.mul(y, c));
            }
        }
    }
    Some(x)
}

/// Exponent of `p` in `n`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_small_matrix() {
        // diag-equivalent to (2, 6): 2-part (2, 2), 3-part (1, 3).
        let rows: Vec<SparseRow> = vec![vec![(0, 2), (1, 4)], vec![(0, 6), (1, 6)]];
        let r2 = Ring::new(2, 4).unwrap();
        assert_eq!(row_module(r2, &rows, 2).pivots, vec![1, 1]);
        let r3 = Ring::new(3, 3).unwrap();
        let mut p = row_module(r3, &rows, 2).pivots;
        p.sort();
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn solve_and_inconsistency() {
        let r = Ring::new(2, 3).unwrap();
        let rows: Vec<SparseRow> = vec![vec![(0, 2)], vec![(0, 1), (1, 1)]];
        let x = solve(r, &rows, &[4, 1], 2).unwrap();
        assert_eq!((2 * x[0]) % 8, 4);
        assert_eq!((x[0] + x[1]) % 8, 1);
        assert!(solve(r, &rows, &[1, 0], 2).is_none());
    }

    #[test]
    fn compressed_matches_full() {
        // Many dependent rows force the compressed path.
        let mut rows: Vec<SparseRow> = Vec::new();
        for i in 0..60usize {
            rows.push(vec![(i % 3, 2), ((i + 1) % 3, 4 * (i as i64 % 5))]);
        }
        let r = Ring::new(2, 5).unwrap();
        let full = eliminate(
            r,
            rows.iter().map(|x| densify(r, x, 3)).collect(),
            3,
            None,
            false,
        );
        let comp = row_module(r, &rows, 3);
        let mut a = full.pivots.clone();
        let mut b = comp.pivots.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
        assert_eq!(valuation(360, 2), 3);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
    }
}
