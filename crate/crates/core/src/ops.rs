//! Monotone maps between finite ordinals `[m] -> [n]`.
//!
//! These are the morphisms of the simplex category. A simplex of a
//! presheaf is stored as a nondegenerate cell together with one surjection
//! per simplicial direction, so almost every construction in the crate is
//! phrased in terms of composing and factoring these maps.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Values = SmallVec<[u8; 8]>;

/// A monotone map `[m] -> [n]`, stored as its list of values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monotone {
    values: Values,
    target: u8,
}

impl fmt::Debug for Monotone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->[{}]", self.values.as_slice(), self.target)
    }
}

impl Monotone {
    pub fn new(values: impl IntoIterator<Item = usize>, target: usize) -> Self {
        let values: Values = values.into_iter().map(|v| v as u8).collect();
        debug_assert!(!values.is_empty());
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|&v| (v as usize) <= target));
        Monotone { values, target: target as u8 }
    }

    pub fn identity(n: usize) -> Self {
        Monotone::new(0..=n, n)
    }

    /// The coface `δ_i : [n-1] -> [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        debug_assert!(n >= 1 && i <= n);
        Monotone::new((0..=n).filter(|&v| v != i), n)
    }

    /// The codegeneracy `σ_j : [n+1] -> [n]` hitting `j` twice.
    pub fn codegeneracy(n: usize, j: usize) -> Self {
        debug_assert!(j <= n);
        Monotone::new((0..=n + 1).map(|v| if v <= j { v } else { v - 1 }), n)
    }

    pub fn constant(m: usize, n: usize, v: usize) -> Self {
        Monotone::new(std::iter::repeat(v).take(m + 1), n)
    }

    /// The vertex `i` of `[n]`, as a map `[0] -> [n]`.
    pub fn vertex(n: usize, i: usize) -> Self {
        Monotone::new([i], n)
    }

    /// Inclusion of the sorted subset `subset` into `[n]`.
    pub fn inclusion(subset: &[usize], n: usize) -> Self {
        Monotone::new(subset.iter().copied(), n)
    }

    pub fn source_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.target as usize
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn at(&self, i: usize) -> usize {
        self.values[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.values.len() == self.target as usize + 1 && self.values.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Monotone) -> Monotone {
        debug_assert_eq!(inner.target_dim(), self.source_dim());
        Monotone { values: inner.values.iter().map(|&i| self.values[i as usize]).collect(), target: self.target }
    }

    /// Factor as `mono ∘ epi` with `epi` surjective and `mono` injective.
    pub fn epi_mono(&self) -> (Monotone, Monotone) {
        let mut image: Values = SmallVec::new();
        let mut epi: Values = SmallVec::with_capacity(self.values.len());
        for &v in &self.values {
            if image.last() != Some(&v) {
                image.push(v);
            }
            epi.push((image.len() - 1) as u8);
        }
        let l = (image.len() - 1) as u8;
        (Monotone { values: epi, target: l }, Monotone { values: image, target: self.target })
    }

    /// Smallest value of the target not hit by the map.
    pub fn first_missing(&self) -> Option<usize> {
        let mut next = 0u8;
        for &v in &self.values {
            if v > next {
                return Some(next as usize);
            }
            if v == next {
                next += 1;
            }
        }
        (next <= self.target).then_some(next as usize)
    }

    /// For a map missing the value `j`, the factor `η'` with `self = δ_j ∘ η'`.
    pub fn drop_value(&self, j: usize) -> Monotone {
        let j = j as u8;
        debug_assert!(!self.values.contains(&j));
        Monotone {
            values: self.values.iter().map(|&v| if v > j { v - 1 } else { v }).collect(),
            target: self.target - 1,
        }
    }

    /// Sorted image of the map.
    pub fn image(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.values.iter().map(|&v| v as usize).collect();
        out.dedup();
        out
    }

    /// The Eilenberg–Zilber degeneracy word of a surjection: the strictly
    /// decreasing list of positions `i` with `σ(i) = σ(i+1)`.
    pub fn degeneracy_word(&self) -> Vec<usize> {
        debug_assert!(self.is_surjective());
        let mut word: Vec<usize> = (0..self.source_dim()).filter(|&i| self.values[i] == self.values[i + 1]).collect();
        word.reverse();
        word
    }

    /// Inverse of [`Monotone::degeneracy_word`] for a word applied to produce
    /// a simplex of dimension `level`.
    pub fn from_degeneracy_word(level: usize, word: &[usize]) -> Result<Monotone> {
        if word.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Format(format!("degeneracy word {word:?} is not strictly decreasing")));
        }
        if word.len() > level {
            return Err(Error::Format(format!("degeneracy word {word:?} too long for dimension {level}")));
        }
        if let Some(&j) = word.first() {
            if j >= level {
                return Err(Error::Format(format!("degeneracy index {j} out of range for dimension {level}")));
            }
        }
        let values = (0..=level).map(|i| i - word.iter().filter(|&&j| j < i).count());
        Ok(Monotone::new(values, level - word.len()))
    }

    /// All monotone maps `[m] -> [n]` in lexicographic order of values.
    pub fn all(m: usize, n: usize) -> Vec<Monotone> {
        let mut out = Vec::new();
        let mut cur: Values = SmallVec::new();
        fn rec(m: usize, n: usize, lo: usize, cur: &mut Values, out: &mut Vec<Monotone>) {
            if cur.len() == m + 1 {
                out.push(Monotone { values: cur.clone(), target: n as u8 });
                return;
            }
            for v in lo..=n {
                cur.push(v as u8);
                rec(m, n, v, cur, out);
                cur.pop();
            }
        }
        rec(m, n, 0, &mut cur, &mut out);
        out
    }

    /// All surjections `[m] -> [k]`, lexicographic.
    pub fn surjections(m: usize, k: usize) -> Vec<Monotone> {
        if k > m {
            return Vec::new();
        }
        Monotone::all(m, k).into_iter().filter(Monotone::is_surjective).collect()
    }

    /// All injections `[m] -> [n]`, lexicographic.
    pub fn injections(m: usize, n: usize) -> Vec<Monotone> {
        if m > n {
            return Vec::new();
        }
        Monotone::all(m, n).into_iter().filter(Monotone::is_injective).collect()
    }
}

/// Binomial coefficient, used for level counts.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cofaces_and_codegeneracies() {
        assert_eq!(Monotone::coface(2, 1).values(), &[0, 2]);
        assert_eq!(Monotone::codegeneracy(1, 0).values(), &[0, 0, 1]);
        assert!(Monotone::codegeneracy(3, 2).is_surjective());
        assert!(Monotone::coface(3, 0).is_injective());
    }

    #[test]
    fn counts_match_binomials() {
        for m in 0..5 {
            for n in 0..5 {
                assert_eq!(Monotone::all(m, n).len(), binomial(m + n + 1, m + 1));
                assert_eq!(Monotone::surjections(m, n).len(), if n <= m { binomial(m, n) } else { 0 });
            }
        }
    }

    #[test]
    fn degeneracy_word_round_trip() {
        let s = Monotone::new([0, 0, 1, 1, 1, 2], 2);
        assert_eq!(s.degeneracy_word(), vec![3, 2, 0]);
        assert_eq!(Monotone::from_degeneracy_word(5, &[3, 2, 0]).unwrap(), s);
        assert!(Monotone::from_degeneracy_word(2, &[0, 1]).is_err());
        assert!(Monotone::from_degeneracy_word(2, &[2]).is_err());
    }

    #[test]
    fn first_missing_and_drop() {
        let m = Monotone::new([0, 2, 3], 3);
        assert_eq!(m.first_missing(), Some(1));
        assert_eq!(m.drop_value(1), Monotone::new([0, 1, 2], 2));
        assert_eq!(Monotone::new([0, 1], 2).first_missing(), Some(2));
        assert_eq!(Monotone::identity(3).first_missing(), None);
    }

    fn monotone(max: usize) -> impl Strategy<Value = Monotone> {
        (0..max, 0..max).prop_flat_map(|(m, n)| {
            let all = Monotone::all(m, n);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn epi_mono_factors(f in monotone(5)) {
            let (e, m) = f.epi_mono();
            prop_assert!(e.is_surjective());
            prop_assert!(m.is_injective());
            prop_assert_eq!(m.compose(&e), f);
        }

        #[test]
        fn word_bijection(f in monotone(6)) {
            let (e, _) = f.epi_mono();
            let w = e.degeneracy_word();
            prop_assert_eq!(Monotone::from_degeneracy_word(e.source_dim(), &w).unwrap(), e);
        }
    }
}
