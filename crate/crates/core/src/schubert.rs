//! Structure constants `a_{u,v}^w = T_{A_w}[p_w(u) p_w(v)]` of the Schubert
//! basis, where `p_w(u)` sums the square-free monomials `x_L` over the
//! position sets `L` of the stored word of `w` whose subword equals `u`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cartan::CartanMatrix;
use crate::coset::{CosetElement, CosetTable, ElementId};
use crate::error::{Error, Result};
use crate::par::{map_ordered, Execution};
use crate::polyring::{GradedPoly, Monomial};
use crate::trioper::{eval_t, word_cartan_matrix};
use crate::weyl::{self, b_of_inverse, b_of_word, BVector, Word};

/// How the subsets `L` in `p_w(u)` are found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelectionMode {
    /// Every `r`-subset of positions, compared by fingerprint.
    Naive,
    /// Depth-first over positions, dropping any partial selection that is
    /// not a reduced product.
    #[default]
    Pruned,
}

impl std::str::FromStr for SelectionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "naive" => Ok(SelectionMode::Naive),
            "pruned" => Ok(SelectionMode::Pruned),
            _ => Err(Error::Parse(format!("unknown selection mode {:?}", s))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvalOptions {
    pub mode: SelectionMode,
    pub exec: Execution,
}

impl EvalOptions {
    pub fn sequential() -> Self {
        EvalOptions {
            mode: SelectionMode::Pruned,
            exec: Execution::Sequential,
        }
    }
}

/// `p_w(u)` together with the elements it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubwordSelection {
    pub w: ElementId,
    pub u: ElementId,
    pub poly: GradedPoly,
}

/// 0-based position sets `L` of `word` with `|L| = r` whose subword has
/// fingerprint `u_b`. `u_b_inv` must be the fingerprint of the inverse.
pub fn subword_positions(
    c: &CartanMatrix,
    word: &Word,
    r: usize,
    u_b: &BVector,
    u_b_inv: &BVector,
    mode: SelectionMode,
) -> Result<Vec<Vec<usize>>> {
    word.check_rank(c.rank())?;
    let k = word.len();
    if r > k {
        return Ok(Vec::new());
    }
    match mode {
        SelectionMode::Naive => naive_positions(c, word, r, u_b),
        SelectionMode::Pruned => {
            let mut out = Vec::new();
            let mut chosen = Vec::with_capacity(r);
            let start = vec![1i64; c.rank()];
            pruned_walk(c, word.letters(), r, 0, &start, &mut chosen, u_b_inv, &mut out)?;
            Ok(out)
        }
    }
}

fn naive_positions(c: &CartanMatrix, word: &Word, r: usize, u_b: &BVector) -> Result<Vec<Vec<usize>>> {
    let k = word.len();
    let mut out = Vec::new();
    let mut l: Vec<usize> = (0..r).collect();
    loop {
        if b_of_word(c, &word.subword(&l))? == *u_b {
            out.push(l.clone());
        }
        // next r-subset in lexicographic order
        let Some(i) = (0..r).rev().find(|&i| l[i] < k - r + i) else {
            return Ok(out);
        };
        l[i] += 1;
        for j in i + 1..r {
            l[j] = l[j - 1] + 1;
        }
    }
}

// `inv` is b(x⁻¹) for the product x of the letters chosen so far; appending
// letter a keeps the product reduced iff inv_a > 0.
#[allow(clippy::too_many_arguments)]
fn pruned_walk(
    c: &CartanMatrix,
    letters: &[usize],
    r: usize,
    pos: usize,
    inv: &[i64],
    chosen: &mut Vec<usize>,
    target_inv: &BVector,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    if chosen.len() == r {
        if inv == target_inv.coords() {
            out.push(chosen.clone());
        }
        return Ok(());
    }
    if letters.len() - pos < r - chosen.len() {
        return Ok(());
    }
    let a = letters[pos] - 1;
    if inv[a] > 0 {
        let mut next = inv.to_vec();
        weyl::reflect_in_place(c, a, &mut next)?;
        chosen.push(pos);
        pruned_walk(c, letters, r, pos + 1, &next, chosen, target_inv, out)?;
        chosen.pop();
    }
    pruned_walk(c, letters, r, pos + 1, inv, chosen, target_inv, out)
}

/// `Σ x_L` over the given position sets, as a polynomial in `k` variables.
pub fn positions_to_poly(k: usize, sets: &[Vec<usize>]) -> GradedPoly {
    let terms = sets.iter().map(|l| {
        let mut e = vec![0u32; k];
        for &p in l {
            e[p] = 1;
        }
        (Monomial::new(e), 1)
    });
    GradedPoly::from_terms(k, terms).expect("subsets of equal size")
}

fn selection_poly(c: &CartanMatrix, w_word: &Word, u: &CosetElement, mode: SelectionMode) -> Result<GradedPoly> {
    let sets = subword_positions(c, w_word, u.len, &u.b, &u.b_inv, mode)?;
    Ok(positions_to_poly(w_word.len(), &sets))
}

/// `p_w(u)` on the stored word of `w`. Empty when `l(u) > l(w)`.
pub fn select_subwords(
    table: &CosetTable,
    w: &CosetElement,
    u: &CosetElement,
    mode: SelectionMode,
) -> Result<SubwordSelection> {
    let w = table.get(w.id())?;
    let u = table.get(u.id())?;
    Ok(SubwordSelection {
        w: w.id(),
        u: u.id(),
        poly: selection_poly(&table.spec().cartan, &w.word, u, mode)?,
    })
}

fn evaluate(
    c: &CartanMatrix,
    w_word: &Word,
    u: &CosetElement,
    v: &CosetElement,
    mode: SelectionMode,
) -> Result<BigInt> {
    let pu = selection_poly(c, w_word, u, mode)?;
    if pu.is_zero() {
        return Ok(BigInt::zero());
    }
    let pv = if u.b == v.b {
        pu.clone()
    } else {
        selection_poly(c, w_word, v, mode)?
    };
    if pv.is_zero() {
        return Ok(BigInt::zero());
    }
    eval_t(&word_cartan_matrix(c, w_word)?, &pu.multiply(&pv)?)
}

fn as_element(c: &CartanMatrix, w: &Word) -> Result<CosetElement> {
    Ok(CosetElement {
        len: w.len(),
        idx: 0,
        b: b_of_word(c, w)?,
        b_inv: b_of_inverse(c, w)?,
        word: w.clone(),
    })
}

fn check_reduced(c: &CartanMatrix, w: &Word) -> Result<()> {
    if weyl::length(c, w)? != w.len() {
        return Err(Error::NotReduced(w.to_string()));
    }
    Ok(())
}

/// `T_{A_w}[p_w(u) p_w(v)]` for arbitrary reduced words, with no table and no
/// sign check.
pub fn coefficient_for_words(
    c: &CartanMatrix,
    w: &Word,
    u: &Word,
    v: &Word,
    mode: SelectionMode,
) -> Result<BigInt> {
    for x in [w, u, v] {
        check_reduced(c, x)?;
    }
    if u.len() + v.len() != w.len() {
        return Err(Error::LengthMismatch {
            sum: u.len() + v.len(),
            target: w.len(),
        });
    }
    evaluate(c, w, &as_element(c, u)?, &as_element(c, v)?, mode)
}

fn to_count(a: BigInt, u: &CosetElement, v: &CosetElement, w: &CosetElement) -> Result<u64> {
    if a.is_negative() {
        return Err(Error::NegativeCoefficient(format!(
            "{} for u = {}, v = {}, w = {}",
            a,
            u.id(),
            v.id(),
            w.id()
        )));
    }
    a.to_u64().ok_or(Error::Overflow)
}

/// `a_{u,v}^w`; requires `l(u) + l(v) = l(w)`.
pub fn structure_constant(
    table: &CosetTable,
    u: &CosetElement,
    v: &CosetElement,
    w: &CosetElement,
    mode: SelectionMode,
) -> Result<u64> {
    let (u, v, w) = (table.get(u.id())?, table.get(v.id())?, table.get(w.id())?);
    if u.len + v.len != w.len {
        return Err(Error::LengthMismatch {
            sum: u.len + v.len,
            target: w.len,
        });
    }
    let a = evaluate(&table.spec().cartan, &w.word, u, v, mode)?;
    to_count(a, u, v, w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub w: ElementId,
    pub a: u64,
}

/// `P_u P_v = Σ a_{u,v}^w P_w`, listing every `w` of length `l(u) + l(v)` in
/// stratum order, zeros included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductExpansion {
    pub u: ElementId,
    pub v: ElementId,
    pub coeffs: Vec<Term>,
}

impl ProductExpansion {
    pub fn values(&self) -> Vec<u64> {
        self.coeffs.iter().map(|t| t.a).collect()
    }

    pub fn coefficient(&self, w: ElementId) -> Option<u64> {
        self.coeffs.iter().find(|t| t.w == w).map(|t| t.a)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &Term> {
        self.coeffs.iter().filter(|t| t.a != 0)
    }
}

pub fn expand_product(
    table: &CosetTable,
    u: &CosetElement,
    v: &CosetElement,
    opts: EvalOptions,
) -> Result<ProductExpansion> {
    let (u, v) = (table.get(u.id())?, table.get(v.id())?);
    let d = u.len + v.len;
    table.require_len(d)?;
    let ws = table.stratum(d)?;
    let c = &table.spec().cartan;
    let coeffs = map_ordered(opts.exec, ws, |w| {
        let a = evaluate(c, &w.word, u, v, opts.mode)?;
        Ok(Term {
            w: w.id(),
            a: to_count(a, u, v, w)?,
        })
    });
    Ok(ProductExpansion {
        u: u.id(),
        v: v.id(),
        coeffs: coeffs.into_iter().collect::<Result<_>>()?,
    })
}

/// Pairs `(u, v)` with `l(u) + l(v) = degree`, `1 ≤ l(u) ≤ l(v)` and, on
/// equal lengths, `u` not after `v`; ordered by `u` then `v`. Degree 0 has the
/// single pair `(id, id)`.
pub fn product_pairs(table: &CosetTable, degree: usize) -> Result<Vec<(ElementId, ElementId)>> {
    table.require_len(degree)?;
    let mut pairs = Vec::new();
    for lu in degree.min(1)..=degree / 2 {
        let lv = degree - lu;
        for u in table.stratum(lu)? {
            for v in table.stratum(lv)? {
                if lu < lv || u.idx <= v.idx {
                    pairs.push((u.id(), v.id()));
                }
            }
        }
    }
    Ok(pairs)
}

/// Every product of total length `degree`, one row per pair of
/// [`product_pairs`]. All `(u, v, w)` evaluations are scheduled together.
pub fn multiplication_table(table: &CosetTable, degree: usize, opts: EvalOptions) -> Result<Vec<ProductExpansion>> {
    let pairs = product_pairs(table, degree)?;
    let ws = table.stratum(degree)?;
    let c = &table.spec().cartan;
    let mut jobs = Vec::with_capacity(pairs.len() * ws.len());
    for &(u, v) in &pairs {
        for w in ws {
            jobs.push((table.get(u)?, table.get(v)?, w));
        }
    }
    let values = map_ordered(opts.exec, &jobs, |&(u, v, w)| {
        let a = evaluate(c, &w.word, u, v, opts.mode)?;
        to_count(a, u, v, w)
    });
    let values: Vec<u64> = values.into_iter().collect::<Result<_>>()?;
    Ok(pairs
        .iter()
        .enumerate()
        .map(|(row, &(u, v))| ProductExpansion {
            u,
            v,
            coeffs: ws
                .iter()
                .enumerate()
                .map(|(col, w)| Term {
                    w: w.id(),
                    a: values[row * ws.len() + col],
                })
                .collect(),
        })
        .collect())
}
