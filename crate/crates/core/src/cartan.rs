//! Cartan matrices, parabolic subsets and the flag specification built from them.
//!
//! A flag manifold `G/H` is determined by the Cartan matrix of `G` together with
//! the subset `K` of simple roots generating the Weyl group of `H`. Presets use
//! Humphreys' node numbering; Bourbaki numbering differs for some types and is
//! never converted silently. For `E_n` the branch node is 4 and node 2 hangs off
//! it.
//!
//! External indices are 1-based, internal storage is 0-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    n: usize,
    entries: Vec<i64>,
}

/// Checks the Cartan matrix invariants and reports the first violation.
pub fn validate(rows: &[Vec<i64>]) -> Result<()> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::InvalidCartan("matrix is empty".into()));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidCartan(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                n
            )));
        }
    }
    for i in 0..n {
        if rows[i][i] != 2 {
            return Err(Error::InvalidCartan(format!(
                "diagonal entry ≠ 2 at ({},{})",
                i + 1,
                i + 1
            )));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let c = rows[i][j];
            if !(-3..=0).contains(&c) {
                return Err(Error::InvalidCartan(format!(
                    "off-diagonal entry {} at ({},{}) not in {{0,-1,-2,-3}}",
                    c,
                    i + 1,
                    j + 1
                )));
            }
            if (c == 0) != (rows[j][i] == 0) {
                return Err(Error::InvalidCartan(format!(
                    "zero-pattern asymmetry at ({},{})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

impl CartanMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        validate(&rows)?;
        let n = rows.len();
        Ok(CartanMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Cartan matrix of the simple type `series_rank`, e.g. `('E', 6)`.
    pub fn preset(series: char, rank: usize) -> Result<Self> {
        let bad = || Error::InvalidPreset(format!("{}{}", series, rank));
        let n = rank;
        let valid = match series.to_ascii_uppercase() {
            'A' => n >= 1,
            'B' => n >= 2,
            'C' => n >= 3,
            'D' => n >= 4,
            'E' => (6..=8).contains(&n),
            'F' => n == 4,
            'G' => n == 2,
            _ => false,
        };
        if !valid {
            return Err(bad());
        }
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 2;
        }
        // (i, j, c_ij, c_ji), 1-based
        let mut edges: Vec<(usize, usize, i64, i64)> = Vec::new();
        match series.to_ascii_uppercase() {
            'A' => edges.extend((1..n).map(|i| (i, i + 1, -1, -1))),
            'B' => {
                edges.extend((1..n - 1).map(|i| (i, i + 1, -1, -1)));
                edges.push((n - 1, n, -2, -1));
            }
            'C' => {
                edges.extend((1..n - 1).map(|i| (i, i + 1, -1, -1)));
                edges.push((n - 1, n, -1, -2));
            }
            'D' => {
                edges.extend((1..n - 2).map(|i| (i, i + 1, -1, -1)));
                edges.push((n - 2, n - 1, -1, -1));
                edges.push((n - 2, n, -1, -1));
            }
            'E' => {
                edges.push((1, 3, -1, -1));
                edges.push((2, 4, -1, -1));
                edges.extend((3..n).map(|i| (i, i + 1, -1, -1)));
            }
            'F' => {
                edges.push((1, 2, -1, -1));
                edges.push((2, 3, -2, -1));
                edges.push((3, 4, -1, -1));
            }
            'G' => edges.push((1, 2, -1, -3)),
            _ => unreachable!(),
        }
        for (i, j, cij, cji) in edges {
            rows[i - 1][j - 1] = cij;
            rows[j - 1][i - 1] = cji;
        }
        CartanMatrix::new(rows)
    }

    /// Parses preset names such as `"E6"`, `"a3"` or `"G2"`.
    pub fn parse_preset(name: &str) -> Result<Self> {
        let name = name.trim();
        let mut chars = name.chars();
        let series = chars
            .next()
            .ok_or_else(|| Error::InvalidPreset(name.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidPreset(name.to_string()))?;
        CartanMatrix::preset(series, rank)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// The Cartan number `c_ij`, 1-based.
    pub fn cartan_number(&self, i: usize, j: usize) -> Result<i64> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.get(i - 1, j - 1))
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    /// Row `i` (0-based) as a slice.
    #[inline]
    pub(crate) fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(|c| format!("{:>2}", c)).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The subset `K ⊆ [1..n]` of simple reflections generating `W'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParabolicSubset {
    n: usize,
    members: Vec<usize>,
}

impl ParabolicSubset {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::InvalidSubset(format!(
                "index {} out of range 1..={}",
                bad, n
            )));
        }
        members.sort_unstable();
        members.dedup();
        Ok(ParabolicSubset { n, members })
    }

    /// `K = ∅`, the full flag manifold `G/T`.
    pub fn empty(n: usize) -> Self {
        ParabolicSubset {
            n,
            members: Vec::new(),
        }
    }

    /// Builds `K` as the complement of `J`.
    pub fn from_complement(n: usize, complement: impl IntoIterator<Item = usize>) -> Result<Self> {
        let j = ParabolicSubset::new(n, complement)?;
        ParabolicSubset::new(n, (1..=n).filter(|i| !j.contains(*i)))
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// The complement `J`.
    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n).filter(|i| !self.contains(*i)).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.n
    }
}

/// A Cartan matrix together with `K`: the complete input determining `G/H`.
#[derive(Debug, Clone)]
pub struct FlagSpec {
    pub name: Option<String>,
    pub preset: Option<String>,
    pub cartan: CartanMatrix,
    pub k_set: ParabolicSubset,
}

impl PartialEq for FlagSpec {
    /// Two specs are equal when they describe the same manifold; labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan && self.k_set == other.k_set
    }
}

impl Eq for FlagSpec {}

impl FlagSpec {
    pub fn new(cartan: CartanMatrix, k_set: ParabolicSubset) -> Result<Self> {
        if k_set.rank() != cartan.rank() {
            return Err(Error::InvalidSubset(format!(
                "subset is over 1..={} but the Cartan matrix has rank {}",
                k_set.rank(),
                cartan.rank()
            )));
        }
        Ok(FlagSpec {
            name: None,
            preset: None,
            cartan,
            k_set,
        })
    }

    /// A preset with `K` given as the complement of `complement`.
    pub fn preset_with_complement(preset: &str, complement: &[usize]) -> Result<Self> {
        let cartan = CartanMatrix::parse_preset(preset)?;
        let k_set = ParabolicSubset::from_complement(cartan.rank(), complement.iter().copied())?;
        let mut spec = FlagSpec::new(cartan, k_set)?;
        spec.preset = Some(preset.trim().to_ascii_uppercase());
        Ok(spec)
    }

    /// A preset with `K` given directly.
    pub fn preset_with_k(preset: &str, k: &[usize]) -> Result<Self> {
        let cartan = CartanMatrix::parse_preset(preset)?;
        let k_set = ParabolicSubset::new(cartan.rank(), k.iter().copied())?;
        let mut spec = FlagSpec::new(cartan, k_set)?;
        spec.preset = Some(preset.trim().to_ascii_uppercase());
        Ok(spec)
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// Short human-readable label, e.g. `E6/K=[1,3,4,5,6]`.
    pub fn label(&self) -> String {
        let base = self
            .name
            .clone()
            .or_else(|| self.preset.clone())
            .unwrap_or_else(|| format!("rank{}", self.rank()));
        let k: Vec<String> = self.k_set.members().iter().map(|i| i.to_string()).collect();
        format!("{}/K=[{}]", base, k.join(","))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: FlagSpecFile = serde_json::from_str(text)?;
        FlagSpec::try_from(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FlagSpecFile::from(self)).expect("flag spec serializes")
    }
}

/// On-disk form of a [`FlagSpec`]: either `{"preset": "E6", "K": [...]}` or
/// `{"n": 2, "cartan": [[...]], "K": [...]}`, each with an optional `"name"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlagSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<i64>>>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
}

impl TryFrom<FlagSpecFile> for FlagSpec {
    type Error = Error;

    fn try_from(file: FlagSpecFile) -> Result<Self> {
        let cartan = match (&file.preset, &file.cartan) {
            (Some(p), None) => CartanMatrix::parse_preset(p)?,
            (None, Some(rows)) => CartanMatrix::new(rows.clone())?,
            (Some(_), Some(_)) => {
                return Err(Error::Parse(
                    "flag spec gives both \"preset\" and \"cartan\"".into(),
                ))
            }
            (None, None) => {
                return Err(Error::Parse(
                    "flag spec needs either \"preset\" or \"cartan\"".into(),
                ))
            }
        };
        if let Some(n) = file.n {
            if n != cartan.rank() {
                return Err(Error::Parse(format!(
                    "\"n\" is {} but the Cartan matrix has rank {}",
                    n,
                    cartan.rank()
                )));
            }
        }
        let k_set = ParabolicSubset::new(cartan.rank(), file.k.iter().copied())?;
        let mut spec = FlagSpec::new(cartan, k_set)?;
        spec.name = file.name;
        spec.preset = file.preset.map(|p| p.trim().to_ascii_uppercase());
        Ok(spec)
    }
}

impl From<&FlagSpec> for FlagSpecFile {
    fn from(spec: &FlagSpec) -> Self {
        let explicit = spec.preset.is_none();
        FlagSpecFile {
            name: spec.name.clone(),
            preset: spec.preset.clone(),
            n: explicit.then(|| spec.rank()),
            cartan: explicit.then(|| spec.cartan.rows()),
            k: spec.k_set.members().to_vec(),
        }
    }
}
