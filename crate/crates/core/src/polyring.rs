//! Homogeneous sparse polynomials over `Z` with arbitrary-precision coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exponent vector; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// A homogeneous polynomial in `arity` variables. The zero polynomial has no
/// degree and is compatible with every degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly {
    arity: usize,
    degree: Option<u32>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl GradedPoly {
    pub fn zero(arity: usize) -> Self {
        GradedPoly {
            arity,
            degree: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        GradedPoly::monomial(Monomial::one(arity), c)
    }

    /// The variable `x_i`, 1-based.
    pub fn variable(arity: usize, i: usize) -> Result<Self> {
        if i == 0 || i > arity {
            return Err(Error::IndexOutOfRange { index: i, n: arity });
        }
        let mut e = vec![0; arity];
        e[i - 1] = 1;
        Ok(GradedPoly::monomial(Monomial(e), 1))
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let arity = m.arity();
        if c.is_zero() {
            return GradedPoly::zero(arity);
        }
        GradedPoly {
            arity,
            degree: Some(m.degree()),
            terms: BTreeMap::from([(m, c)]),
        }
    }

    /// Collects terms, rejecting mixed degrees or arities.
    pub fn from_terms<I, C>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut p = GradedPoly::zero(arity);
        for (m, c) in terms {
            p.add_term(m, c.into())?;
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The value of a degree-0 polynomial.
    pub fn constant_value(&self) -> Option<BigInt> {
        match self.degree {
            None => Some(BigInt::zero()),
            Some(0) => Some(self.terms.values().next().cloned().unwrap_or_default()),
            Some(_) => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) -> Result<()> {
        if m.arity() != self.arity {
            return Err(Error::ArityMismatch(self.arity, m.arity()));
        }
        if c.is_zero() {
            return Ok(());
        }
        let d = m.degree();
        match self.degree {
            Some(own) if own != d => return Err(Error::DegreeMismatch(own, d)),
            _ => {}
        }
        self.add_term_unchecked(m, c);
        self.degree = if self.terms.is_empty() { None } else { Some(d) };
        Ok(())
    }

    fn add_term_unchecked(&mut self, m: Monomial, c: BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &GradedPoly) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        if let (Some(a), Some(b)) = (self.degree, other.degree) {
            if a != b {
                return Err(Error::DegreeMismatch(a, b));
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &GradedPoly) -> Result<()> {
        self.check_compatible(other)?;
        for (m, c) in &other.terms {
            self.add_term_unchecked(m.clone(), c.clone());
        }
        self.degree = if self.terms.is_empty() {
            None
        } else {
            self.degree.or(other.degree)
        };
        Ok(())
    }

    pub fn scale(&self, c: &BigInt) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(self.arity);
        }
        GradedPoly {
            arity: self.arity,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> GradedPoly {
        self.scale(&BigInt::from(-1))
    }

    pub fn multiply(&self, other: &GradedPoly) -> Result<GradedPoly> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        let mut out = GradedPoly::zero(self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term_unchecked(ma.mul(mb), ca * cb);
            }
        }
        out.degree = match (self.degree, other.degree) {
            (Some(a), Some(b)) if !out.terms.is_empty() => Some(a + b),
            _ => None,
        };
        Ok(out)
    }

    /// The expansion `p = Σ_r h_r x_k^r` by the last variable, returning the
    /// nonzero `h_r` (in `arity − 1` variables) in increasing `r`.
    pub fn split_by_last_variable(&self) -> Vec<(u32, GradedPoly)> {
        assert!(self.arity >= 1, "cannot split a polynomial in zero variables");
        let k = self.arity - 1;
        let mut parts: BTreeMap<u32, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let r = m.0[k];
            let h = parts.entry(r).or_insert_with(|| GradedPoly::zero(k));
            h.add_term_unchecked(Monomial(m.0[..k].to_vec()), c.clone());
            h.degree = Some(m.degree() - r);
        }
        parts.into_iter().filter(|(_, h)| !h.is_zero()).collect()
    }

    /// Embeds into `arity + 1` variables and multiplies by `x_{arity+1}^r`.
    pub fn times_new_variable_power(&self, r: u32) -> GradedPoly {
        GradedPoly {
            arity: self.arity + 1,
            degree: self.degree.map(|d| d + r),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.push(r);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }
}

/// `(c_1 x_1 + … + c_m x_m)^e` expanded by the multinomial theorem.
pub fn power_of_linear_form(coeffs: &[i64], e: u32) -> GradedPoly {
    let m = coeffs.len();
    if e == 0 {
        return GradedPoly::constant(m, 1);
    }
    let mut out = GradedPoly::zero(m);
    // binomial rows up to e
    let mut binom: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..=e as usize {
        let prev = &binom[i - 1];
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &prev[j - 1] + &prev[j];
        }
        binom.push(row);
    }
    let coeffs: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    // distribute the remaining exponent over the variables left to right
    fn walk(
        var: usize,
        remaining: u32,
        coeffs: &[BigInt],
        binom: &[Vec<BigInt>],
        exps: &mut Vec<u32>,
        acc: BigInt,
        out: &mut GradedPoly,
    ) {
        let m = coeffs.len();
        if var + 1 == m {
            exps.push(remaining);
            let c = acc * num_traits::pow(coeffs[var].clone(), remaining as usize);
            out.add_term_unchecked(Monomial(exps.clone()), c);
            exps.pop();
            return;
        }
        if coeffs[var].is_zero() {
            exps.push(0);
            walk(var + 1, remaining, coeffs, binom, exps, acc, out);
            exps.pop();
            return;
        }
        for a in 0..=remaining {
            let c = &acc
                * &binom[remaining as usize][a as usize]
                * num_traits::pow(coeffs[var].clone(), a as usize);
            exps.push(a);
            walk(var + 1, remaining - a, coeffs, binom, exps, c, out);
            exps.pop();
        }
    }
    if m > 0 {
        walk(0, e, &coeffs, &binom, &mut Vec::with_capacity(m), BigInt::one(), &mut out);
    }
    out.degree = if out.terms.is_empty() { None } else { Some(e) };
    out
}

/// Terms in lexicographic exponent order, e.g. `x1^2 + 2*x1*x2 + x2^2`.
impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // lexicographically largest exponent vector first reads x1^2 before x1*x2
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            let negative = c.sign() == num_bigint::Sign::Minus;
            let abs = if negative { -c } else { c.clone() };
            if n == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            match (factors.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", abs)?,
                (false, true) => write!(f, "{}", factors.join("*"))?,
                (false, false) => write!(f, "{}*{}", abs, factors.join("*"))?,
            }
        }
        Ok(())
    }
}
