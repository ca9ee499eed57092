//! The triangular operator `T_A` of a strictly upper triangular integer matrix.
//!
//! `T_A` is the linear functional on degree-`k` polynomials in `x_1..x_k`
//! fixed by three elimination laws: a polynomial free of `x_k` maps to 0, for
//! `k = 1` the variable `x_1` maps to 1, and
//! `T_A(h x_k^r) = T_{A'}(h (a_{1,k} x_1 + … + a_{k−1,k} x_{k−1})^{r−1})`
//! where `A'` drops the last row and column. Evaluation eliminates one
//! variable per stage, collapsing every `h_r` of the stage at once.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cartan::CartanMatrix;
use crate::error::{Error, Result};
use crate::polyring::{power_of_linear_form, GradedPoly};
use crate::weyl::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictUpperTriangular {
    k: usize,
    entries: Vec<i64>,
}

impl StrictUpperTriangular {
    pub fn zero(k: usize) -> Self {
        StrictUpperTriangular {
            k,
            entries: vec![0; k * k],
        }
    }

    /// From a full `k × k` matrix; entries on or below the diagonal must be 0.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let k = rows.len();
        let mut m = StrictUpperTriangular::zero(k);
        for (s, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Parse("triangular matrix must be square".into()));
            }
            for (t, &v) in row.iter().enumerate() {
                if t <= s && v != 0 {
                    return Err(Error::Parse(format!(
                        "entry ({},{}) on or below the diagonal is nonzero",
                        s + 1,
                        t + 1
                    )));
                }
                m.entries[s * k + t] = v;
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.k
    }

    /// `a_{s,t}`, 1-based; zero when `s ≥ t`.
    pub fn get(&self, s: usize, t: usize) -> i64 {
        assert!(s >= 1 && t >= 1 && s <= self.k && t <= self.k);
        self.entries[(s - 1) * self.k + (t - 1)]
    }

    /// Sets `a_{s,t}` for `s < t`, 1-based.
    pub fn set(&mut self, s: usize, t: usize, v: i64) {
        assert!(s < t && t <= self.k, "only strictly upper entries are settable");
        self.entries[(s - 1) * self.k + (t - 1)] = v;
    }

    /// `(a_{1,t}, …, a_{t−1,t})`.
    pub fn column_above_diagonal(&self, t: usize) -> Vec<i64> {
        (1..t).map(|s| self.get(s, t)).collect()
    }

    /// The leading `r × r` block.
    pub fn truncate(&self, r: usize) -> Self {
        assert!(r <= self.k);
        let mut m = StrictUpperTriangular::zero(r);
        for s in 1..=r {
            for t in s + 1..=r {
                m.set(s, t, self.get(s, t));
            }
        }
        m
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        if self.k == 0 {
            return Vec::new();
        }
        self.entries.chunks(self.k).map(|r| r.to_vec()).collect()
    }
}

/// The Cartan matrix `A_w` of a word: `a_{s,t} = −c_{i_t, i_s}` for `s < t`.
/// The word should be reduced.
pub fn word_cartan_matrix(c: &CartanMatrix, w: &Word) -> Result<StrictUpperTriangular> {
    w.check_rank(c.rank())?;
    let letters = w.letters();
    let k = letters.len();
    let mut a = StrictUpperTriangular::zero(k);
    for s in 0..k {
        for t in s + 1..k {
            a.set(s + 1, t + 1, -c.get(letters[t] - 1, letters[s] - 1));
        }
    }
    Ok(a)
}

fn check_grading(a: &StrictUpperTriangular, p: &GradedPoly) -> Result<()> {
    let k = a.size();
    if p.arity() != k {
        return Err(Error::ArityMismatch(k, p.arity()));
    }
    match p.degree() {
        Some(d) if d as usize != k => Err(Error::Grading { size: k, degree: d }),
        _ => Ok(()),
    }
}

/// `T_A(p)` by stagewise elimination of the last variable.
pub fn eval_t(a: &StrictUpperTriangular, p: &GradedPoly) -> Result<BigInt> {
    check_grading(a, p)?;
    let mut current = p.clone();
    for k in (1..=a.size()).rev() {
        if current.is_zero() {
            return Ok(BigInt::zero());
        }
        let form = a.column_above_diagonal(k);
        let mut next = GradedPoly::zero(k - 1);
        let mut power = GradedPoly::constant(k - 1, 1);
        let mut power_exp = 0u32;
        for (r, h) in current.split_by_last_variable() {
            if r == 0 {
                continue;
            }
            // powers are shared across the h_r of this stage
            while power_exp < r - 1 {
                power = power.multiply(&power_of_linear_form(&form, 1))?;
                power_exp += 1;
            }
            next.add_assign(&h.multiply(&power)?)?;
        }
        current = next;
    }
    Ok(current
        .constant_value()
        .expect("elimination ends at a constant"))
}

/// `T_A(p)` evaluated monomial by monomial, straight from the elimination
/// laws with no batching. Kept as an independent reference for [`eval_t`].
pub fn eval_t_by_definition(a: &StrictUpperTriangular, p: &GradedPoly) -> Result<BigInt> {
    check_grading(a, p)?;
    let k = a.size();
    if k == 0 {
        return Ok(p.constant_value().unwrap_or_default());
    }
    let mut total = BigInt::zero();
    for (m, c) in p.terms() {
        let e = m.exponents();
        let r = e[k - 1];
        // law 1
        if r == 0 {
            continue;
        }
        // law 2
        if k == 1 {
            total += c;
            continue;
        }
        // law 3
        let h = GradedPoly::monomial(crate::polyring::Monomial::new(e[..k - 1].to_vec()), c.clone());
        let form = a.column_above_diagonal(k);
        let mut g = h;
        for _ in 1..r {
            g = g.multiply(&power_of_linear_form(&form, 1))?;
        }
        let sub = a.truncate(k - 1);
        for (m2, c2) in g.terms() {
            let single = GradedPoly::monomial(m2.clone(), c2.clone());
            total += eval_t_by_definition(&sub, &single)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Monomial;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> GradedPoly {
        GradedPoly::monomial(Monomial::new(e.to_vec()), 1)
    }

    fn a1(a: i64) -> StrictUpperTriangular {
        StrictUpperTriangular::from_rows(&[vec![0, a], vec![0, 0]]).unwrap()
    }

    #[test]
    fn two_by_two_example() {
        for a in -3..=3 {
            let m = a1(a);
            assert_eq!(eval_t(&m, &mono(&[2, 0])).unwrap(), BigInt::from(0));
            assert_eq!(eval_t(&m, &mono(&[1, 1])).unwrap(), BigInt::from(1));
            assert_eq!(eval_t(&m, &mono(&[0, 2])).unwrap(), BigInt::from(a));
        }
    }

    #[test]
    fn three_by_three_example() {
        // T(x2 x3^2) = T_{A1}(x2 (b x1 + c x2)) = b + c a
        for (a, b, c) in [(1, 2, 3), (-1, 0, 2), (3, -2, -1)] {
            let m = StrictUpperTriangular::from_rows(&[
                vec![0, a, b],
                vec![0, 0, c],
                vec![0, 0, 0],
            ])
            .unwrap();
            assert_eq!(eval_t(&m, &mono(&[0, 1, 2])).unwrap(), BigInt::from(b + c * a));
            assert_eq!(eval_t_by_definition(&m, &mono(&[0, 1, 2])).unwrap(), BigInt::from(b + c * a));
        }
    }

    #[test]
    fn degree_zero_and_errors() {
        let m = StrictUpperTriangular::zero(0);
        assert_eq!(eval_t(&m, &GradedPoly::constant(0, 7)).unwrap(), BigInt::from(7));
        let m = StrictUpperTriangular::zero(1);
        assert_eq!(eval_t(&m, &mono(&[1])).unwrap(), BigInt::from(1));
        assert!(matches!(
            eval_t(&a1(1), &mono(&[1, 2])),
            Err(Error::Grading { size: 2, degree: 3 })
        ));
        assert!(matches!(eval_t(&a1(1), &mono(&[1, 1, 0])), Err(Error::ArityMismatch(2, 3))));
        assert_eq!(eval_t(&a1(1), &GradedPoly::zero(2)).unwrap(), BigInt::from(0));
        assert!(StrictUpperTriangular::from_rows(&[vec![1, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn word_matrices() {
        let e6 = CartanMatrix::preset('E', 6).unwrap();
        let a = word_cartan_matrix(&e6, &"3.4.2".parse().unwrap()).unwrap();
        assert_eq!(a.rows(), vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let a = word_cartan_matrix(&e6, &"5".parse().unwrap()).unwrap();
        assert_eq!(a, StrictUpperTriangular::zero(1));
        let a2 = CartanMatrix::preset('A', 2).unwrap();
        let a = word_cartan_matrix(&a2, &"1.2".parse().unwrap()).unwrap();
        assert_eq!(a.get(1, 2), 1);
        let b2 = CartanMatrix::preset('B', 2).unwrap();
        // a_{1,2} = −c_{2,1} = 1, and with letters swapped −c_{1,2} = 2
        assert_eq!(word_cartan_matrix(&b2, &"1.2".parse().unwrap()).unwrap().get(1, 2), 1);
        assert_eq!(word_cartan_matrix(&b2, &"2.1".parse().unwrap()).unwrap().get(1, 2), 2);
        assert!(word_cartan_matrix(&a2, &"3".parse().unwrap()).is_err());
    }

    /// All exponent vectors of the given degree in `k` variables.
    pub(crate) fn monomials(k: usize, degree: u32) -> Vec<Vec<u32>> {
        if k == 0 {
            return if degree == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for first in 0..=degree {
            for mut rest in monomials(k - 1, degree - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn zero_matrix_only_sees_the_square_free_top_monomial() {
        for k in 1..=5 {
            let m = StrictUpperTriangular::zero(k);
            for e in monomials(k, k as u32) {
                let expected = i64::from(e.iter().all(|&x| x == 1));
                assert_eq!(eval_t(&m, &mono(&e)).unwrap(), BigInt::from(expected), "{:?}", e);
            }
        }
    }

    fn arb_matrix(k: usize) -> impl Strategy<Value = StrictUpperTriangular> {
        prop::collection::vec(-3i64..=3, k * k).prop_map(move |v| {
            let mut m = StrictUpperTriangular::zero(k);
            for s in 1..=k {
                for t in s + 1..=k {
                    m.set(s, t, v[(s - 1) * k + (t - 1)]);
                }
            }
            m
        })
    }

    proptest! {
        #[test]
        fn batched_agrees_with_definition(m in (1usize..=5).prop_flat_map(arb_matrix)) {
            let k = m.size();
            for e in monomials(k, k as u32) {
                let p = mono(&e);
                prop_assert_eq!(eval_t(&m, &p).unwrap(), eval_t_by_definition(&m, &p).unwrap());
            }
        }

        #[test]
        fn linear(m in arb_matrix(4), cp in prop::collection::vec(-4i64..=4, 35), cq in prop::collection::vec(-4i64..=4, 35), s in -5i64..=5) {
            let basis = monomials(4, 4);
            let p = GradedPoly::from_terms(4, basis.iter().cloned().map(Monomial::new).zip(cp)).unwrap();
            let q = GradedPoly::from_terms(4, basis.iter().cloned().map(Monomial::new).zip(cq)).unwrap();
            let sum = p.add(&q).unwrap();
            prop_assert_eq!(eval_t(&m, &sum).unwrap(), eval_t(&m, &p).unwrap() + eval_t(&m, &q).unwrap());
            let scaled = p.scale(&BigInt::from(s));
            prop_assert_eq!(eval_t(&m, &scaled).unwrap(), eval_t(&m, &p).unwrap() * s);
        }

        #[test]
        fn free_of_last_variable_vanishes(m in arb_matrix(4), idx in 0usize..35) {
            let e = &monomials(4, 4)[idx];
            if e[3] == 0 {
                prop_assert!(eval_t(&m, &mono(e)).unwrap().is_zero());
            }
        }
    }
}
