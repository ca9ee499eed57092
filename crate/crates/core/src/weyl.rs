//! Weyl group elements and their numerical representation.
//!
//! The simple reflection `σ_k` acts on the weight lattice (basis `ω_1..ω_n`)
//! by fixing `ω_i` for `i ≠ k` and sending `ω_k ↦ ω_k − Σ_j c_kj ω_j`. An
//! element `w` is fingerprinted by `b(w)`, the coordinates of `w(δ)` where
//! `δ = ω_1 + … + ω_n`. The map `w ↦ b(w)` is injective and never produces a
//! zero coordinate, and `b_i(w) < 0` exactly when `σ_i` is a left descent.
//!
//! All coordinate arithmetic is overflow-checked.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanMatrix, ParabolicSubset};
use crate::error::{Error, Result};

/// A word `σ_{i_1} ∘ … ∘ σ_{i_k}` in the simple reflections, letters 1-based.
/// The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::Parse("word letters are 1-based".into()));
        }
        Ok(Word(letters))
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The reversed word, which represents the inverse element.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// `σ_i ∘ self`.
    pub fn prepend(&self, i: usize) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.push(i);
        letters.extend_from_slice(&self.0);
        Word(letters)
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn subword(&self, positions: &[usize]) -> Word {
        Word(positions.iter().map(|&p| self.0[p]).collect())
    }

    pub fn check_rank(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i > n) {
            Some(&index) => Err(Error::IndexOutOfRange { index, n }),
            None => Ok(()),
        }
    }

    /// Renders as `σ_3σ_4σ_2`, or `id` for the empty word.
    pub fn to_sigma_string(&self) -> String {
        if self.0.is_empty() {
            return "id".to_string();
        }
        self.0.iter().map(|i| format!("σ_{}", i)).collect()
    }
}

/// Dot-separated letters, leftmost letter first: `"3.4.2"` is `σ_3σ_4σ_2`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(Word::identity());
        }
        let letters = s
            .split('.')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad word {:?}", s)))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

/// Coordinates of a weight in the basis of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    /// `δ = ω_1 + … + ω_n`.
    pub fn delta(n: usize) -> Self {
        WeightVector(vec![1; n])
    }

    pub fn zero(n: usize) -> Self {
        WeightVector(vec![0; n])
    }
}

/// `b(w)`: the coordinates of `w(δ)`, a faithful fingerprint of `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BVector(Vec<i64>);

impl BVector {
    pub fn identity(n: usize) -> Self {
        BVector(vec![1; n])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&c| c == 1)
    }

    pub fn from_coords(coords: Vec<i64>) -> Self {
        BVector(coords)
    }
}

impl fmt::Display for BVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl From<WeightVector> for BVector {
    fn from(v: WeightVector) -> Self {
        BVector(v.0)
    }
}

/// Applies `σ_{k0+1}` in place (0-based `k0`).
#[inline]
pub(crate) fn reflect_in_place(c: &CartanMatrix, k0: usize, v: &mut [i64]) -> Result<()> {
    let vk = v[k0];
    if vk == 0 {
        return Ok(());
    }
    for (x, &ckj) in v.iter_mut().zip(c.row(k0)) {
        if ckj != 0 {
            let delta = vk.checked_mul(ckj).ok_or(Error::Overflow)?;
            *x = x.checked_sub(delta).ok_or(Error::Overflow)?;
        }
    }
    Ok(())
}

/// `σ_k(v)` for 1-based `k`.
pub fn apply_reflection(c: &CartanMatrix, k: usize, v: &WeightVector) -> Result<WeightVector> {
    c.check_index(k)?;
    if v.0.len() != c.rank() {
        return Err(Error::InvalidCartan(format!(
            "weight has {} coordinates, rank is {}",
            v.0.len(),
            c.rank()
        )));
    }
    let mut out = v.0.clone();
    reflect_in_place(c, k - 1, &mut out)?;
    Ok(WeightVector(out))
}

/// `b(w)`, computed by applying the letters of `w` to `δ` from the right.
pub fn b_of_word(c: &CartanMatrix, w: &Word) -> Result<BVector> {
    w.check_rank(c.rank())?;
    let mut v = vec![1i64; c.rank()];
    for &i in w.letters().iter().rev() {
        reflect_in_place(c, i - 1, &mut v)?;
    }
    Ok(BVector(v))
}

/// `b(w)` by literal symbolic substitution: starting from `ω_1 + … + ω_n`,
/// replace the `ω_{i_m}` term by its image, then `ω_{i_{m-1}}`, and so on,
/// collecting like terms after each step.
pub fn b_of_word_by_substitution(c: &CartanMatrix, w: &Word) -> Result<BVector> {
    w.check_rank(c.rank())?;
    let n = c.rank();
    let mut p: BTreeMap<usize, i64> = (0..n).map(|i| (i, 1)).collect();
    for &letter in w.letters().iter().rev() {
        let i = letter - 1;
        let coeff = match p.remove(&i) {
            Some(x) => x,
            None => continue,
        };
        // coeff·ω_i  ↦  coeff·ω_i − Σ_j coeff·c_ij ω_j
        let mut image: Vec<(usize, i64)> = vec![(i, coeff)];
        for j in 0..n {
            let cij = c.get(i, j);
            if cij != 0 {
                let t = coeff.checked_mul(cij).ok_or(Error::Overflow)?;
                image.push((j, t.checked_neg().ok_or(Error::Overflow)?));
            }
        }
        for (j, t) in image {
            let e = p.entry(j).or_insert(0);
            *e = e.checked_add(t).ok_or(Error::Overflow)?;
            if *e == 0 {
                p.remove(&j);
            }
        }
    }
    Ok(BVector((0..n).map(|i| p.get(&i).copied().unwrap_or(0)).collect()))
}

/// `b(w⁻¹)`, via the reversed word.
pub fn b_of_inverse(c: &CartanMatrix, w: &Word) -> Result<BVector> {
    w.check_rank(c.rank())?;
    let mut v = vec![1i64; c.rank()];
    for &i in w.letters() {
        reflect_in_place(c, i - 1, &mut v)?;
    }
    Ok(BVector(v))
}

/// Whether `l(σ_i w) = l(w) − 1`, i.e. `b_i < 0`.
pub fn has_left_descent(b: &BVector, i: usize) -> Result<bool> {
    let n = b.0.len();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(b.0[i - 1] < 0)
}

/// Length of the element with fingerprint `b`, by stripping the smallest left
/// descent until the identity is reached.
pub fn length_of(c: &CartanMatrix, b: &BVector) -> Result<usize> {
    let mut v = b.0.clone();
    let mut count = 0;
    while let Some(i) = v.iter().position(|&x| x < 0) {
        reflect_in_place(c, i, &mut v)?;
        count += 1;
    }
    debug_assert!(v.iter().all(|&x| x == 1));
    Ok(count)
}

/// `l(w)`.
pub fn length(c: &CartanMatrix, w: &Word) -> Result<usize> {
    length_of(c, &b_of_word(c, w)?)
}

/// Whether `w` is the minimal representative of its coset `wW'`: every
/// `K`-coordinate of `b(w⁻¹)` is positive.
pub fn is_min_rep(c: &CartanMatrix, k: &ParabolicSubset, w: &Word) -> Result<bool> {
    let inv = b_of_inverse(c, w)?;
    Ok(is_min_rep_b_inv(k, &inv))
}

pub(crate) fn is_min_rep_b_inv(k: &ParabolicSubset, b_inv: &BVector) -> bool {
    k.members().iter().all(|&i| b_inv.0[i - 1] > 0)
}

/// Every reduced word of the element with fingerprint `b`, in lexicographic order.
pub fn reduced_words(c: &CartanMatrix, b: &BVector) -> Result<Vec<Word>> {
    fn walk(c: &CartanMatrix, v: &[i64], prefix: &mut Vec<usize>, out: &mut Vec<Word>) -> Result<()> {
        let descents: Vec<usize> = (0..v.len()).filter(|&i| v[i] < 0).collect();
        if descents.is_empty() {
            out.push(Word(prefix.clone()));
            return Ok(());
        }
        for i in descents {
            let mut next = v.to_vec();
            reflect_in_place(c, i, &mut next)?;
            prefix.push(i + 1);
            walk(c, &next, prefix, out)?;
            prefix.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(c, &b.0, &mut Vec::new(), &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> CartanMatrix {
        CartanMatrix::preset('A', 2).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reflection_examples() {
        let c = a2();
        let d = WeightVector::delta(2);
        let s1 = apply_reflection(&c, 1, &d).unwrap();
        assert_eq!(s1.0, vec![-1, 2]);
        assert_eq!(apply_reflection(&c, 1, &s1).unwrap(), d);
        let z = WeightVector::zero(2);
        assert_eq!(apply_reflection(&c, 2, &z).unwrap(), z);
        assert!(apply_reflection(&c, 3, &d).is_err());
        assert!(apply_reflection(&c, 0, &d).is_err());
    }

    #[test]
    fn b_vectors() {
        let c = a2();
        assert_eq!(b_of_word(&c, &Word::identity()).unwrap(), BVector::identity(2));
        assert_eq!(b_of_word(&c, &w("1")).unwrap().coords(), &[-1, 2]);
        assert_eq!(b_of_word(&c, &w("1.2")).unwrap().coords(), &[-2, 1]);
        assert_eq!(b_of_inverse(&c, &w("1.2")).unwrap().coords(), &[1, -2]);
        assert_eq!(
            b_of_inverse(&c, &w("2")).unwrap(),
            b_of_word(&c, &w("2")).unwrap()
        );
        assert_eq!(b_of_inverse(&c, &Word::identity()).unwrap(), BVector::identity(2));
        assert!(b_of_word(&c, &w("3")).is_err());
    }

    #[test]
    fn descents() {
        let b = BVector::from_coords(vec![-1, 2]);
        assert!(has_left_descent(&b, 1).unwrap());
        assert!(!has_left_descent(&BVector::identity(3), 2).unwrap());
        assert!(!has_left_descent(&BVector::from_coords(vec![-2, 1]), 2).unwrap());
        assert!(has_left_descent(&b, 3).is_err());
    }

    #[test]
    fn lengths() {
        let c = a2();
        assert_eq!(length(&c, &Word::identity()).unwrap(), 0);
        assert_eq!(length(&c, &w("1.2.1")).unwrap(), 3);
        assert_eq!(length(&c, &w("1.1")).unwrap(), 0);
        assert_eq!(length(&c, &w("1.2.1.2")).unwrap(), 2);
    }

    /// Brute force: no word of length ≤ 2 over {1,2} reaches b(σ1σ2σ1).
    #[test]
    fn longest_a2_element_needs_three_letters() {
        let c = a2();
        let target = b_of_word(&c, &w("1.2.1")).unwrap();
        let mut short = vec![Word::identity()];
        for a in 1..=2 {
            short.push(Word(vec![a]));
            for b in 1..=2 {
                short.push(Word(vec![a, b]));
            }
        }
        for s in short {
            assert_ne!(b_of_word(&c, &s).unwrap(), target, "{}", s);
        }
    }

    #[test]
    fn min_reps() {
        let c = CartanMatrix::preset('E', 6).unwrap();
        let k = ParabolicSubset::from_complement(6, [2]).unwrap();
        assert!(is_min_rep(&c, &k, &Word::identity()).unwrap());
        assert!(is_min_rep(&c, &k, &w("2")).unwrap());
        assert!(!is_min_rep(&c, &k, &w("1")).unwrap());
        assert!(is_min_rep(&c, &k, &w("4.2")).unwrap());
        assert!(!is_min_rep(&c, &k, &w("2.4")).unwrap());
    }

    #[test]
    fn reduced_words_of_longest_elements() {
        let c = a2();
        let words = reduced_words(&c, &b_of_word(&c, &w("1.2.1")).unwrap()).unwrap();
        assert_eq!(words, vec![w("1.2.1"), w("2.1.2")]);
        let a3 = CartanMatrix::preset('A', 3).unwrap();
        let w0 = w("1.2.1.3.2.1");
        assert_eq!(reduced_words(&a3, &b_of_word(&a3, &w0).unwrap()).unwrap().len(), 16);
    }

    #[test]
    fn word_parsing() {
        assert_eq!(w("3.4.2").letters(), &[3, 4, 2]);
        assert_eq!(w("3.4.2").to_string(), "3.4.2");
        assert_eq!(w("3.4.2").to_sigma_string(), "σ_3σ_4σ_2");
        assert!(w("").is_empty());
        assert!(w("id").is_empty());
        assert!("3.x".parse::<Word>().is_err());
        assert!("0.1".parse::<Word>().is_err());
    }

    #[test]
    fn overflow_is_reported() {
        // affine A1: coordinates grow without bound
        let c = CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        let mut v = WeightVector(vec![i64::MAX / 2, 1]);
        let mut hit = false;
        for k in [1, 2, 1, 2, 1, 2] {
            match apply_reflection(&c, k, &v) {
                Ok(next) => v = next,
                Err(Error::Overflow) => {
                    hit = true;
                    break;
                }
                Err(e) => panic!("{e}"),
            }
        }
        assert!(hit);
    }

    fn small_types() -> Vec<CartanMatrix> {
        ["A2", "A3", "B2", "B3", "C3", "G2", "D4", "F4", "E6"]
            .iter()
            .map(|p| CartanMatrix::parse_preset(p).unwrap())
            .collect()
    }

    proptest! {
        #[test]
        fn reflection_is_an_involution(t in 0usize..9, k in 0usize..8, v in prop::collection::vec(-50i64..50, 8)) {
            let c = &small_types()[t];
            let k = k % c.rank() + 1;
            let v = WeightVector(v[..c.rank()].to_vec());
            let once = apply_reflection(c, k, &v).unwrap();
            prop_assert_eq!(apply_reflection(c, k, &once).unwrap(), v);
        }

        #[test]
        fn fold_and_substitution_agree(t in 0usize..9, letters in prop::collection::vec(1usize..9, 0..20)) {
            let c = &small_types()[t];
            let word = Word(letters.into_iter().map(|i| (i - 1) % c.rank() + 1).collect());
            let b = b_of_word(c, &word).unwrap();
            prop_assert_eq!(&b, &b_of_word_by_substitution(c, &word).unwrap());
            prop_assert!(b.coords().iter().all(|&x| x != 0));
            prop_assert_eq!(b_of_inverse(c, &word).unwrap(), b_of_word(c, &word.reversed()).unwrap());
        }

        #[test]
        fn word_times_reverse_is_identity(t in 0usize..9, letters in prop::collection::vec(1usize..9, 0..16)) {
            let c = &small_types()[t];
            let word = Word(letters.into_iter().map(|i| (i - 1) % c.rank() + 1).collect());
            prop_assert_eq!(length(c, &word.concat(&word.reversed())).unwrap(), 0);
        }

        #[test]
        fn descent_matches_length_drop(t in 0usize..9, letters in prop::collection::vec(1usize..9, 0..14), i in 1usize..9) {
            let c = &small_types()[t];
            let word = Word(letters.into_iter().map(|i| (i - 1) % c.rank() + 1).collect());
            let i = (i - 1) % c.rank() + 1;
            let b = b_of_word(c, &word).unwrap();
            let l = length(c, &word).unwrap();
            let li = length(c, &word.prepend(i)).unwrap();
            prop_assert_eq!(has_left_descent(&b, i).unwrap(), li + 1 == l);
            prop_assert!(li + 1 == l || li == l + 1);
        }
    }
}
