//! Permutations of `{0, .., n-1}` in one-line notation.

use std::fmt;

/// A permutation stored by its images: `self[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// Builds a permutation from its images, or `None` if they are not a
    /// bijection of `0..len`.
    pub fn from_images(images: Vec<u8>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &v in &images {
            let slot = seen.get_mut(v as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Perm(images))
    }

    /// The permutation swapping `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Perm::identity(n);
        p.0.swap(i, j);
        p
    }

    /// The cycle `0 -> 1 -> .. -> n-1 -> 0`.
    pub fn long_cycle(n: usize) -> Self {
        Perm((0..n).map(|i| ((i + 1) % n) as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn fixed_points(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, &v)| *i == v as usize)
            .count()
    }

    /// Number of points on which the two permutations agree.
    pub fn agreements(&self, other: &Perm) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a == b).count()
    }

    pub fn is_even(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// Advances to the lexicographically next permutation; returns `false`
    /// after the last one.
    pub fn next_lex(&mut self) -> bool {
        let v = &mut self.0;
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return false;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }
}

/// All of `S_n` in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Vec<Perm> {
    let mut p = Perm::identity(n);
    let mut out = vec![p.clone()];
    while p.next_lex() {
        out.push(p.clone());
    }
    out
}

/// One-line notation with 1-based values, e.g. `[2 1 3 4]`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_enumeration() {
        let all = all_permutations(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], Perm::identity(4));
        assert_eq!(all[1].to_string(), "[1 2 4 3]");
        assert_eq!(all_permutations(0).len(), 1);
    }

    #[test]
    fn compose_and_inverse() {
        let c = Perm::long_cycle(5);
        let t = Perm::transposition(5, 0, 1);
        for p in all_permutations(5) {
            assert_eq!(p.compose(&p.inverse()), Perm::identity(5));
            assert_eq!(c.compose(&p).apply(2), c.apply(p.apply(2)));
        }
        assert!(!t.is_even());
        assert!(c.is_even());
        assert_eq!(all_permutations(4).iter().filter(|p| p.is_even()).count(), 12);
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_none());
        assert!(Perm::from_images(vec![0, 3, 1]).is_none());
        assert!(Perm::from_images(vec![2, 0, 1]).is_some());
    }
}
