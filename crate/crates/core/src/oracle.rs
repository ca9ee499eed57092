//! Littlewood–Richardson coefficients by brute force, and the bijection
//! between minimal representatives of `S_n / (S_k × S_{n−k})` and partitions
//! in a `k × (n−k)` box.
//!
//! Two independent routes are provided: counting LR tableaux, and expanding
//! products of Schur polynomials monomial by monomial. Neither touches the
//! polynomial or operator code used for general structure constants.

use std::collections::BTreeMap;
use std::fmt;

use crate::cartan::{CartanMatrix, FlagSpec};
use crate::coset::CosetElement;
use crate::error::{Error, Result};
use crate::weyl::Word;

/// Weakly decreasing parts, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::Parse(format!("{:?} is not weakly decreasing", parts)));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        Partition((1..=cols).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    pub fn fits_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.part(0) <= cols
    }

    /// All partitions of `size` fitting in a `rows × cols` box, in
    /// lexicographically decreasing order.
    pub fn in_box(rows: usize, cols: u32, size: u32) -> Vec<Partition> {
        fn go(rows: usize, max: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if rows == 0 {
                return;
            }
            for p in (1..=max.min(left)).rev() {
                cur.push(p);
                go(rows - 1, p, left - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(rows, cols, size, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Number of LR tableaux of shape `ν/λ` and content `μ`: semistandard
/// fillings whose reverse reading word (rows top to bottom, each right to
/// left) is a lattice word. Zero when `|ν| ≠ |λ| + |μ|` or `λ ⊄ ν`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if nu.size() != lambda.size() + mu.size() || !nu.contains(lambda) {
        return 0;
    }
    let mut cells = Vec::new();
    for row in 0..nu.len() {
        for col in (lambda.part(row)..nu.part(row)).rev() {
            cells.push((row, col as usize));
        }
    }
    let width = nu.part(0) as usize;
    let mut grid = vec![vec![0u32; width]; nu.len()];
    let mut used = vec![0u32; mu.len() + 1];
    fill_lr(lambda, mu, &cells, 0, &mut grid, &mut used)
}

fn fill_lr(
    lambda: &Partition,
    mu: &Partition,
    cells: &[(usize, usize)],
    at: usize,
    grid: &mut [Vec<u32>],
    used: &mut [u32],
) -> u64 {
    let Some(&(row, col)) = cells.get(at) else {
        return 1;
    };
    let mut total = 0;
    for x in 1..=mu.len() as u32 {
        let xi = x as usize;
        if used[xi] >= mu.part(xi - 1) {
            continue;
        }
        // lattice: every prefix has at least as many (x−1)s as xs
        if x > 1 && used[xi] + 1 > used[xi - 1] {
            continue;
        }
        // the cell to the right was filled earlier in this row
        if col + 1 < grid[row].len() && grid[row][col + 1] != 0 && grid[row][col + 1] < x {
            continue;
        }
        if row > 0 && (col as u32) >= lambda.part(row - 1) && grid[row - 1][col] >= x {
            continue;
        }
        grid[row][col] = x;
        used[xi] += 1;
        total += fill_lr(lambda, mu, cells, at + 1, grid, used);
        used[xi] -= 1;
        grid[row][col] = 0;
    }
    total
}

type Poly = BTreeMap<Vec<u32>, i64>;

/// `s_λ(x_1, …, x_vars)` as a map from exponent vectors to coefficients,
/// by enumerating semistandard tableaux.
pub fn schur_polynomial(lambda: &Partition, vars: usize) -> BTreeMap<Vec<u32>, i64> {
    fn go(cells: &[(usize, usize)], vars: usize, cell: usize, grid: &mut Vec<Vec<u32>>, out: &mut Poly) {
        let Some(&(r, c)) = cells.get(cell) else {
            let mut e = vec![0u32; vars];
            for x in grid.iter().flatten() {
                e[*x as usize - 1] += 1;
            }
            *out.entry(e).or_insert(0) += 1;
            return;
        };
        let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        for x in lo_row.max(lo_col)..=vars as u32 {
            grid[r][c] = x;
            go(cells, vars, cell + 1, grid, out);
        }
        grid[r][c] = 0;
    }
    let mut grid: Vec<Vec<u32>> = lambda.parts().iter().map(|&p| vec![0; p as usize]).collect();
    let cells: Vec<(usize, usize)> = (0..lambda.len())
        .flat_map(|r| (0..lambda.part(r) as usize).map(move |c| (r, c)))
        .collect();
    let mut out = Poly::new();
    go(&cells, vars, 0, &mut grid, &mut out);
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `s_λ s_μ = Σ c_ν s_ν`, found by repeatedly subtracting the Schur
/// polynomial of the lexicographically leading exponent.
pub fn schur_product(lambda: &Partition, mu: &Partition) -> BTreeMap<Partition, u64> {
    let vars = (lambda.len() + mu.len()).max(1);
    let mut rest = poly_mul(&schur_polynomial(lambda, vars), &schur_polynomial(mu, vars));
    let mut out = BTreeMap::new();
    while let Some((lead, &c)) = rest.iter().next_back() {
        let nu = Partition::new(lead.clone()).expect("leading exponent of a symmetric polynomial");
        assert!(c > 0, "negative Schur coefficient");
        for (e, d) in schur_polynomial(&nu, vars) {
            *rest.entry(e).or_insert(0) -= c * d;
        }
        rest.retain(|_, x| *x != 0);
        out.insert(nu, c as u64);
    }
    out
}

/// The Grassmannian `G_{n,k}`: type `A_{n−1}` with `K` the complement of `{k}`.
pub fn grassmannian_spec(n: usize, k: usize) -> Result<FlagSpec> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::InvalidSubset(format!("need 1 ≤ k < n, got n = {}, k = {}", n, k)));
    }
    FlagSpec::preset_with_complement(&format!("A{}", n - 1), &[k])
}

/// `(n, k)` when `spec` is a Grassmannian `G_{n,k}`.
pub fn grassmannian_shape(spec: &FlagSpec) -> Result<(usize, usize)> {
    let rank = spec.rank();
    let n = rank + 1;
    let complement = spec.k_set.complement();
    if spec.cartan != CartanMatrix::preset('A', rank)? || complement.len() != 1 {
        return Err(Error::InvalidSubset(format!(
            "{} is not a type A Grassmannian",
            spec.label()
        )));
    }
    Ok((n, complement[0]))
}

/// One-line notation of the permutation `s_{i_1} ∘ … ∘ s_{i_m}` of `{1..n}`.
pub fn permutation_of_word(n: usize, w: &Word) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=n).collect();
    // perm[j] = w(j+1); composing on the left swaps values
    for &i in w.letters().iter().rev() {
        for x in perm.iter_mut() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
    }
    perm
}

/// `λ_i = w(k+1−i) − (k+1−i)` for the Grassmannian permutation `w`.
pub fn min_rep_to_partition(spec: &FlagSpec, w: &CosetElement) -> Result<Partition> {
    let (n, k) = grassmannian_shape(spec)?;
    let perm = permutation_of_word(n, &w.word);
    if perm[..k].windows(2).any(|p| p[0] > p[1]) || perm[k..].windows(2).any(|p| p[0] > p[1]) {
        return Err(Error::InvalidSubset(format!("{} is not a minimal representative", w.word)));
    }
    Partition::new((1..=k).rev().map(|i| (perm[i - 1] - i) as u32).collect())
}

/// A reduced word of the minimal representative attached to `lambda`.
pub fn partition_to_word(spec: &FlagSpec, lambda: &Partition) -> Result<Word> {
    let (n, k) = grassmannian_shape(spec)?;
    if !lambda.fits_box(k, (n - k) as u32) {
        return Err(Error::InvalidSubset(format!("{} does not fit a {}×{} box", lambda, k, n - k)));
    }
    let mut perm: Vec<usize> = (1..=k).map(|i| lambda.part(k - i) as usize + i).collect();
    let rest: Vec<usize> = (1..=n).filter(|x| !perm.contains(x)).collect();
    perm.extend(rest);
    let mut letters = Vec::new();
    loop {
        let mut pos = vec![0; n + 1];
        for (j, &x) in perm.iter().enumerate() {
            pos[x] = j;
        }
        // left descent at i: w⁻¹(i) > w⁻¹(i+1)
        let Some(i) = (1..n).find(|&i| pos[i] > pos[i + 1]) else {
            break;
        };
        letters.push(i);
        perm.swap(pos[i], pos[i + 1]);
    }
    Word::new(letters)
}
