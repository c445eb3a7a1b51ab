//! Linear algebra over prime fields `F_p`: row reduction, canonical
//! (reduced row-echelon) subspace bases, enumeration of all `k`-subspaces
//! of `F_p^n`, and intersection dimensions.

use std::fmt;

use crate::exactmath::gaussian_binomial;
use crate::{Error, Result};

/// The field of integers modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.p as u64) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p as u64 - 2)
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u32 {
        if self.p == 2 {
            return 1;
        }
        let order = self.p as u64 - 1;
        let mut factors = Vec::new();
        let mut m = order;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, order / f) != 1))
            .expect("every prime field has a primitive root")
    }
}

/// Row-reduces `rows` in place to reduced row-echelon form and returns the
/// pivot columns. Zero rows are dropped.
pub fn reduce(field: &PrimeField, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][col]);
        for v in rows[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let factor = rows[i][col];
                for j in col..ncols {
                    let sub = field.mul(factor, rows[r][j]);
                    rows[i][j] = field.sub(rows[i][j], sub);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Row rank by Gaussian elimination.
pub fn rank(field: &PrimeField, rows: &[Vec<u32>]) -> usize {
    let mut m = rows.to_vec();
    reduce(field, &mut m).len()
}

/// A subspace of `F_p^n` held by its unique reduced row-echelon basis.
///
/// Equal values denote equal subspaces. The derived order compares pivot
/// columns first, then basis rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RrefSubspace {
    field: PrimeField,
    n: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<u32>>,
}

impl RrefSubspace {
    /// The span of `rows` (each of length `n`), canonicalized.
    pub fn span(field: PrimeField, n: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter(format!("rows must have length {n}")));
        }
        let mut rows: Vec<Vec<u32>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| v % field.order()).collect())
            .collect();
        let pivots = reduce(&field, &mut rows);
        Ok(RrefSubspace {
            field,
            n,
            pivots,
            rows,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Image under a linear map given on row vectors.
    pub fn map_rows(&self, f: impl Fn(&[u32]) -> Vec<u32>) -> RrefSubspace {
        let rows = self.rows.iter().map(|r| f(r)).collect();
        RrefSubspace::span(self.field, self.n, rows).expect("map preserves row length")
    }
}

impl fmt::Display for RrefSubspace {
    /// Rows separated by `|`; entries as base-36 digits when the field is
    /// small enough, otherwise space separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (j, v) in row.iter().enumerate() {
                if self.field.order() <= 36 {
                    write!(f, "{}", char::from_digit(*v, 36).unwrap())?;
                } else {
                    if j > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{v}")?;
                }
            }
        }
        write!(f, ">")
    }
}

impl fmt::Debug for RrefSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Lexicographically ordered `k`-subsets of `0..n`.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Every `k`-dimensional subspace of `F_q^n`, each exactly once, ordered by
/// pivot-column set and then by the entries of the echelon basis.
///
/// Echelon bases are generated directly: for each pivot set, every
/// assignment of the free entries yields a distinct subspace.
pub fn enumerate_subspaces(n: usize, q: u64, k: usize, limit: usize) -> Result<Vec<RrefSubspace>> {
    let field = PrimeField::new(q)?;
    if k > n {
        return Err(Error::InvalidParameter(format!("k={k} exceeds n={n}")));
    }
    let count = gaussian_binomial(n as u32, k as i64, q)?;
    if count > limit.into() {
        return Err(Error::budget("subspaces", count, limit));
    }
    let p = field.order();
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let piv = &pivots;
                (piv[i] + 1..n)
                    .filter(move |c| !piv.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut rows = vec![vec![0u32; n]; k];
            for (i, &c) in pivots.iter().enumerate() {
                rows[i][c] = 1;
            }
            for (&(i, c), &d) in free.iter().zip(&digits) {
                rows[i][c] = d;
            }
            out.push(RrefSubspace {
                field,
                n,
                pivots: pivots.clone(),
                rows,
            });
            // odometer, last free entry fastest
            let Some(pos) = (0..digits.len()).rev().find(|&i| digits[i] + 1 < p) else {
                break;
            };
            digits[pos] += 1;
            digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
        }
    }
    Ok(out)
}

/// `dim(A ∩ B) = dim A + dim B - dim(A + B)`.
pub fn intersection_dim(a: &RrefSubspace, b: &RrefSubspace) -> Result<usize> {
    if a.n != b.n || a.field != b.field {
        return Err(Error::AmbientMismatch);
    }
    let mut stacked: Vec<Vec<u32>> = a.rows.iter().chain(&b.rows).cloned().collect();
    let sum = reduce(&a.field, &mut stacked).len();
    Ok(a.dim() + b.dim() - sum)
}
