//! Exact integer formulas: binomials, Gaussian binomials, derangement
//! numbers, the vertex degrees of the three cross-t-intersecting graphs and
//! the closed-form bounds on `|A| + |B|` for cross-t-intersecting pairs.
//!
//! The checked bound functions reject parameter tuples outside the range in
//! which the bound is a theorem, naming the failed side condition. The
//! `*_unchecked` variants evaluate the raw formula.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Arbitrary-precision nonnegative integer used for every count and bound.
pub type BigNat = BigUint;

fn nat(v: u64) -> BigNat {
    BigNat::from(v)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u32, k: i64) -> BigNat {
    if k < 0 || k > n as i64 {
        return BigNat::zero();
    }
    let k = (k as u64).min(n as u64 - k as u64);
    let mut acc = BigNat::one();
    for i in 0..k {
        acc *= nat(n as u64 - i);
        acc /= nat(i + 1);
    }
    acc
}

/// Gaussian binomial `[n k]_q`, the number of `k`-dimensional subspaces of
/// an `n`-dimensional space over a field of order `q`.
///
/// Evaluated as a product of numerators divided by the product of
/// denominators; the division is asserted exact. `q` only has to be an
/// integer `>= 2` here, field existence is not required.
pub fn gaussian_binomial(n: u32, k: i64, q: u64) -> Result<BigNat> {
    if q < 2 {
        return Err(Error::hypothesis("q >= 2 violated"));
    }
    if k < 0 || k > n as i64 {
        return Ok(BigNat::zero());
    }
    let k = k as u32;
    let q = nat(q);
    let mut num = BigNat::one();
    let mut den = BigNat::one();
    for i in 0..k {
        num *= q.pow(n - i) - 1u32;
        den *= q.pow(k - i) - 1u32;
    }
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "Gaussian binomial product is not divisible");
    Ok(quot)
}

/// Number of fixed-point-free permutations of `n` points.
pub fn derangements(n: u32) -> BigNat {
    let (mut prev, mut cur) = (BigNat::one(), BigNat::zero());
    if n == 0 {
        return prev;
    }
    for m in 2..=n as u64 {
        let next = nat(m - 1) * (&cur + &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `n!`
pub fn factorial(n: u32) -> BigNat {
    (1..=n as u64).fold(BigNat::one(), |acc, i| acc * nat(i))
}

fn check_t(t: u32) -> Result<()> {
    if t < 1 {
        return Err(Error::hypothesis("t >= 1 violated"));
    }
    Ok(())
}

/// Degree of an `a`-set in the set graph: the number of `b`-subsets of
/// `[n]` meeting a fixed `a`-subset in fewer than `t` points.
pub fn set_degree(n: u32, a: u32, b: u32, t: u32) -> Result<BigNat> {
    check_t(t)?;
    if a > n || b > n {
        return Err(Error::InvalidParameter(format!(
            "subset sizes a={a}, b={b} exceed n={n}"
        )));
    }
    Ok((0..t as i64)
        .map(|i| binomial(a, i) * binomial(n - a, b as i64 - i))
        .sum())
}

/// Degree of an `a`-subspace in the subspace graph over `F_q^n`:
/// the number of `b`-subspaces meeting it in dimension less than `t`.
pub fn subspace_degree(n: u32, q: u64, a: u32, b: u32, t: u32) -> Result<BigNat> {
    if q < 2 {
        return Err(Error::hypothesis("q >= 2 violated"));
    }
    check_t(t)?;
    if a > n || b > n {
        return Err(Error::InvalidParameter(format!(
            "subspace dimensions a={a}, b={b} exceed n={n}"
        )));
    }
    let mut total = BigNat::zero();
    // terms with i > min(a, b) vanish
    for i in 0..t.min(a.min(b) + 1) {
        let power = nat(q).pow((a - i) * (b - i));
        total += power * gaussian_binomial(a, i as i64, q)? * gaussian_binomial(n - a, (b - i) as i64, q)?;
    }
    Ok(total)
}

/// Degree of the Cayley graph on `S_n` generated by the permutations with
/// fewer than `t` fixed points.
pub fn permutation_degree(n: u32, t: u32) -> Result<BigNat> {
    if t < 1 || t + 2 > n {
        return Err(Error::hypothesis("1 <= t <= n-2 violated"));
    }
    Ok(permutation_degree_raw(n, t))
}

fn permutation_degree_raw(n: u32, t: u32) -> BigNat {
    (0..t.min(n + 1))
        .map(|i| binomial(n, i as i64) * derangements(n - i))
        .sum()
}

/// Bound on `|A| + |B|` for cross-t-intersecting `A ⊆ C([n],a)`,
/// `B ⊆ C([n],b)`, with every side condition checked.
pub fn cross_bound_sets(n: u32, a: u32, b: u32, t: u32) -> Result<BigNat> {
    check_set_hypotheses(n, a, b, t)?;
    cross_bound_sets_unchecked(n, a, b, t)
}

/// Checks the side conditions under which [`cross_bound_sets`] is a theorem.
pub fn check_set_hypotheses(n: u32, a: u32, b: u32, t: u32) -> Result<()> {
    if n < 4 {
        return Err(Error::hypothesis("n >= 4 violated"));
    }
    if a < 2 || b < 2 {
        return Err(Error::hypothesis("a, b >= 2 violated"));
    }
    if t < 1 {
        return Err(Error::hypothesis("t >= 1 violated"));
    }
    if t >= a.min(b) {
        return Err(Error::hypothesis("t < min(a,b) violated"));
    }
    if a + b >= n + t {
        return Err(Error::hypothesis("a + b < n + t violated"));
    }
    if n == a + b && t == 1 {
        return Err(Error::hypothesis("(n,t)=(a+b,1) excluded"));
    }
    if binomial(n, a as i64) > binomial(n, b as i64) {
        return Err(Error::hypothesis("C(n,a) <= C(n,b) violated"));
    }
    Ok(())
}

pub fn cross_bound_sets_unchecked(n: u32, a: u32, b: u32, t: u32) -> Result<BigNat> {
    let degree = set_degree(n, a, b, t)?;
    Ok(binomial(n, b as i64) + 1u32 - degree)
}

/// Bound on `|A| + |B|` for cross-t-intersecting families of `a`- and
/// `b`-subspaces of `F_q^n`.
pub fn cross_bound_subspaces(n: u32, q: u64, a: u32, b: u32, t: u32) -> Result<BigNat> {
    check_subspace_hypotheses(n, q, a, b, t)?;
    cross_bound_subspaces_unchecked(n, q, a, b, t)
}

pub fn check_subspace_hypotheses(n: u32, q: u64, a: u32, b: u32, t: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::hypothesis("q >= 2 violated"));
    }
    if n < 4 {
        return Err(Error::hypothesis("n >= 4 violated"));
    }
    if a < 2 || b < 2 {
        return Err(Error::hypothesis("a, b >= 2 violated"));
    }
    if t < 1 {
        return Err(Error::hypothesis("t >= 1 violated"));
    }
    if t >= a.min(b) {
        return Err(Error::hypothesis("t < min(a,b) violated"));
    }
    if a + b >= n + t {
        return Err(Error::hypothesis("a + b < n + t violated"));
    }
    if gaussian_binomial(n, a as i64, q)? > gaussian_binomial(n, b as i64, q)? {
        return Err(Error::hypothesis("[n a]_q <= [n b]_q violated"));
    }
    Ok(())
}

pub fn cross_bound_subspaces_unchecked(n: u32, q: u64, a: u32, b: u32, t: u32) -> Result<BigNat> {
    let degree = subspace_degree(n, q, a, b, t)?;
    Ok(gaussian_binomial(n, b as i64, q)? + 1u32 - degree)
}

/// Bound on `|A| + |B|` for cross-t-intersecting families in `S_n`.
pub fn cross_bound_permutations(n: u32, t: u32) -> Result<BigNat> {
    check_permutation_hypotheses(n, t)?;
    Ok(cross_bound_permutations_unchecked(n, t))
}

pub fn check_permutation_hypotheses(n: u32, t: u32) -> Result<()> {
    if n < 4 {
        return Err(Error::hypothesis("n >= 4 violated"));
    }
    if t < 1 || t + 2 > n {
        return Err(Error::hypothesis("1 <= t <= n-2 violated"));
    }
    Ok(())
}

pub fn cross_bound_permutations_unchecked(n: u32, t: u32) -> BigNat {
    factorial(n) + 1u32 - permutation_degree_raw(n, t)
}

/// Bound on the total size of `m` cross-intersecting families of
/// `k`-subsets of `[n]` (the first one nonempty).
pub fn hilton_bound(n: u32, k: u32, m: u32) -> Result<BigNat> {
    if 2 * k > n {
        return Err(Error::hypothesis("k <= n/2 violated"));
    }
    if m < 1 {
        return Err(Error::hypothesis("m >= 1 violated"));
    }
    // m <= n/k  <=>  m*k <= n
    if m as u64 * k as u64 <= n as u64 {
        Ok(binomial(n, k as i64))
    } else {
        Ok(nat(m as u64) * binomial(n - 1, k as i64 - 1))
    }
}

/// Two-family bound `C(n,b) - C(n-a,b) + 1` for cross-intersecting
/// `A ⊆ C([n],a)`, `B ⊆ C([n],b)` with `n >= a+b`, `a <= b`.
pub fn hm_ft_bound(n: u32, a: u32, b: u32) -> Result<BigNat> {
    if n < a + b {
        return Err(Error::hypothesis("n >= a + b violated"));
    }
    if a > b {
        return Err(Error::hypothesis("a <= b violated"));
    }
    Ok(hm_ft_bound_unchecked(n, a, b))
}

pub fn hm_ft_bound_unchecked(n: u32, a: u32, b: u32) -> BigNat {
    let rest = if a <= n {
        binomial(n - a, b as i64)
    } else {
        BigNat::zero()
    };
    binomial(n, b as i64) + 1u32 - rest
}
