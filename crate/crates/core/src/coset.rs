//! Enumeration of the minimal coset representatives `W̄ = W/W'`, stratum by
//! stratum.
//!
//! Stratum `k` is built from stratum `k−1` by scanning `(i, prefix)` over
//! `{1..n} × W̄^{k−1}` in lexicographic order and admitting `w = σ_i ∘ prefix`
//! when `b_i(w) < 0` (the product is reduced), every `K`-coordinate of
//! `b(w⁻¹)` is positive (`w` is a minimal representative) and `b(w)` has not
//! been admitted yet. The first admitted decomposition is the stored word, and
//! admission order fixes the index `w_{k,i}`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{FlagSpec, FlagSpecFile};
use crate::error::{Error, Result};
use crate::weyl::{self, b_of_word, BVector, Word};

/// Position `w_{len,idx}` of an element in a [`CosetTable`]; `idx` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct ElementId {
    pub len: usize,
    pub idx: usize,
}

impl ElementId {
    pub fn new(len: usize, idx: usize) -> Self {
        ElementId { len, idx }
    }
}

impl From<[usize; 2]> for ElementId {
    fn from([len, idx]: [usize; 2]) -> Self {
        ElementId { len, idx }
    }
}

impl From<ElementId> for [usize; 2] {
    fn from(id: ElementId) -> Self {
        [id.len, id.idx]
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w_{{{},{}}}", self.len, self.idx)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetElement {
    pub len: usize,
    pub idx: usize,
    pub word: Word,
    pub b: BVector,
    pub b_inv: BVector,
}

impl CosetElement {
    pub fn id(&self) -> ElementId {
        ElementId::new(self.len, self.idx)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    /// Stop after this stratum; `None` runs to the empty stratum.
    pub max_len: Option<usize>,
    /// Maximum number of strata before enumeration is declared non-terminating.
    pub stratum_ceiling: usize,
    /// Maximum total number of elements.
    pub element_ceiling: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_len: None,
            stratum_ceiling: 10_000,
            element_ceiling: 20_000_000,
        }
    }
}

impl BuildOptions {
    pub fn up_to(max_len: usize) -> Self {
        BuildOptions {
            max_len: Some(max_len),
            ..Default::default()
        }
    }
}

/// Builds stratum `k` from stratum `k−1`.
pub fn extend_stratum(spec: &FlagSpec, prev: &[CosetElement]) -> Result<Vec<CosetElement>> {
    let c = &spec.cartan;
    let n = c.rank();
    let len = prev.first().map_or(0, |e| e.len + 1);
    let mut seen: HashSet<BVector> = HashSet::new();
    let mut out = Vec::new();
    let mut b = vec![0i64; n];
    for i in 0..n {
        for prefix in prev {
            // b(σ_i ∘ prefix) = σ_i(b(prefix))
            b.copy_from_slice(prefix.b.coords());
            weyl::reflect_in_place(c, i, &mut b)?;
            if b[i] >= 0 {
                continue;
            }
            let bv = BVector::from_coords(b.clone());
            if seen.contains(&bv) {
                continue;
            }
            let word = prefix.word.prepend(i + 1);
            let b_inv = weyl::b_of_inverse(c, &word)?;
            if !weyl::is_min_rep_b_inv(&spec.k_set, &b_inv) {
                continue;
            }
            seen.insert(bv.clone());
            out.push(CosetElement {
                len,
                idx: out.len() + 1,
                word,
                b: bv,
                b_inv,
            });
        }
    }
    Ok(out)
}

/// The length-stratified table of minimal coset representatives.
#[derive(Debug, Clone)]
pub struct CosetTable {
    spec: FlagSpec,
    strata: Vec<Vec<CosetElement>>,
    complete: bool,
    index: HashMap<BVector, ElementId>,
}

impl PartialEq for CosetTable {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.complete == other.complete && self.strata == other.strata
    }
}

/// Ways to name an element of a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementKey {
    Index(ElementId),
    B(BVector),
    Word(Word),
}

impl ElementKey {
    /// Parses `"r.i"` (exactly two components) as a stratum index and anything
    /// else as a dot-word; a leading `s:` forces the word reading, so `"s:4.2"`
    /// is `σ_4σ_2`. `"id"` and `""` are the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("s:") {
            return Ok(ElementKey::Word(rest.parse()?));
        }
        let parts: Vec<&str> = s.split('.').collect();
        if parts.len() == 2 {
            let len = parts[0]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad element {:?}", s)))?;
            let idx = parts[1]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad element {:?}", s)))?;
            return Ok(ElementKey::Index(ElementId::new(len, idx)));
        }
        Ok(ElementKey::Word(s.parse()?))
    }
}

impl CosetTable {
    pub fn build(spec: &FlagSpec, opts: BuildOptions) -> Result<Self> {
        let n = spec.rank();
        let identity = CosetElement {
            len: 0,
            idx: 1,
            word: Word::identity(),
            b: BVector::identity(n),
            b_inv: BVector::identity(n),
        };
        let mut strata = vec![vec![identity]];
        let mut total = 1usize;
        let mut complete = false;
        loop {
            let built = strata.len() - 1;
            if opts.max_len.is_some_and(|m| built >= m) {
                break;
            }
            if strata.len() >= opts.stratum_ceiling {
                return Err(Error::NonTermination(format!(
                    "{} strata",
                    opts.stratum_ceiling
                )));
            }
            let next = extend_stratum(spec, strata.last().unwrap())?;
            if next.is_empty() {
                complete = true;
                break;
            }
            total += next.len();
            if total > opts.element_ceiling {
                return Err(Error::NonTermination(format!(
                    "{} elements",
                    opts.element_ceiling
                )));
            }
            strata.push(next);
        }
        Ok(CosetTable::from_parts(spec.clone(), strata, complete))
    }

    fn from_parts(spec: FlagSpec, strata: Vec<Vec<CosetElement>>, complete: bool) -> Self {
        let index = strata
            .iter()
            .flatten()
            .map(|e| (e.b.clone(), e.id()))
            .collect();
        CosetTable {
            spec,
            strata,
            complete,
            index,
        }
    }

    /// The same table cut down to strata `0..=max_len`.
    pub fn truncated(&self, max_len: usize) -> CosetTable {
        if max_len >= self.built_len() {
            return self.clone();
        }
        CosetTable::from_parts(self.spec.clone(), self.strata[..=max_len].to_vec(), false)
    }

    pub fn spec(&self) -> &FlagSpec {
        &self.spec
    }

    pub fn strata(&self) -> &[Vec<CosetElement>] {
        &self.strata
    }

    pub fn stratum(&self, len: usize) -> Result<&[CosetElement]> {
        match self.strata.get(len) {
            Some(s) => Ok(s),
            None if self.complete => Ok(&[]),
            None => Err(Error::TableDepth {
                built: self.built_len(),
                needed: len,
            }),
        }
    }

    /// True when enumeration reached the empty stratum.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Highest stratum present.
    pub fn built_len(&self) -> usize {
        self.strata.len() - 1
    }

    /// Checks that strata through `len` are available.
    pub fn require_len(&self, len: usize) -> Result<()> {
        if self.complete || len <= self.built_len() {
            Ok(())
        } else {
            Err(Error::TableDepth {
                built: self.built_len(),
                needed: len,
            })
        }
    }

    pub fn total(&self) -> usize {
        self.strata.iter().map(Vec::len).sum()
    }

    pub fn stratum_sizes(&self) -> Vec<usize> {
        self.strata.iter().map(Vec::len).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CosetElement> {
        self.strata.iter().flatten()
    }

    pub fn get(&self, id: ElementId) -> Result<&CosetElement> {
        self.strata
            .get(id.len)
            .and_then(|s| s.get(id.idx.wrapping_sub(1)))
            .ok_or_else(|| Error::NotFound(format!("no element {} in {}", id, self.spec.label())))
    }

    pub fn lookup_b(&self, b: &BVector) -> Result<&CosetElement> {
        match self.index.get(b) {
            Some(&id) => self.get(id),
            None => Err(Error::NotFound(format!(
                "no element with b = ({}) in {}",
                b,
                self.spec.label()
            ))),
        }
    }

    /// Resolves any decomposition of an element to its stored entry.
    pub fn lookup_word(&self, w: &Word) -> Result<&CosetElement> {
        let c = &self.spec.cartan;
        let b = b_of_word(c, w)?;
        if let Some(&id) = self.index.get(&b) {
            return self.get(id);
        }
        if !weyl::is_min_rep(c, &self.spec.k_set, w)? {
            return Err(Error::NotFound(format!(
                "{} is not a minimal coset representative for {}",
                w.to_sigma_string(),
                self.spec.label()
            )));
        }
        let l = weyl::length_of(c, &b)?;
        Err(Error::NotFound(format!(
            "{} has length {} but the table is built through length {}",
            w.to_sigma_string(),
            l,
            self.built_len()
        )))
    }

    pub fn lookup(&self, key: &ElementKey) -> Result<&CosetElement> {
        match key {
            ElementKey::Index(id) => self.get(*id),
            ElementKey::B(b) => self.lookup_b(b),
            ElementKey::Word(w) => self.lookup_word(w),
        }
    }

    /// Parses and resolves an element name (see [`ElementKey::parse`]).
    pub fn resolve(&self, name: &str) -> Result<&CosetElement> {
        self.lookup(&ElementKey::parse(name)?)
    }

    /// The top element when the table is complete.
    pub fn top(&self) -> Option<&CosetElement> {
        if self.complete {
            self.strata.last().and_then(|s| s.first())
        } else {
            None
        }
    }

    /// Verifies the structural invariants of the table, returning a description
    /// of the first violation.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let c = &self.spec.cartan;
        let n = c.rank();
        let first = &self.strata[0];
        if first.len() != 1 || !first[0].word.is_empty() {
            return Err("stratum 0 is not {id}".into());
        }
        if let Some(s1) = self.strata.get(1) {
            let letters: Vec<usize> = s1.iter().map(|e| e.word.letters()[0]).collect();
            if letters != self.spec.k_set.complement() {
                return Err(format!("stratum 1 is {:?}, expected J", letters));
            }
        }
        let mut seen = HashSet::new();
        for (len, stratum) in self.strata.iter().enumerate() {
            for (pos, e) in stratum.iter().enumerate() {
                if e.len != len || e.idx != pos + 1 || e.word.len() != len {
                    return Err(format!("{} is mislabelled", e.id()));
                }
                let b = b_of_word(c, &e.word).map_err(|x| x.to_string())?;
                let b_inv = weyl::b_of_inverse(c, &e.word).map_err(|x| x.to_string())?;
                if b != e.b || b_inv != e.b_inv {
                    return Err(format!("{} has stale fingerprints", e.id()));
                }
                if e.b.coords().iter().chain(e.b_inv.coords()).any(|&x| x == 0) {
                    return Err(format!("{} has a zero coordinate", e.id()));
                }
                if weyl::length_of(c, &e.b).map_err(|x| x.to_string())? != len {
                    return Err(format!("{} is not reduced", e.id()));
                }
                if !weyl::is_min_rep_b_inv(&self.spec.k_set, &e.b_inv) {
                    return Err(format!("{} is not a minimal representative", e.id()));
                }
                if !seen.insert(e.b.clone()) {
                    return Err(format!("{} duplicates an earlier element", e.id()));
                }
            }
            if stratum.windows(2).any(|p| p[0].word >= p[1].word) {
                return Err(format!("stratum {} is not in word order", len));
            }
        }
        if self.complete {
            let sizes = self.stratum_sizes();
            if sizes.iter().ne(sizes.iter().rev()) {
                return Err(format!("stratum sizes {:?} are not palindromic", sizes));
            }
        }
        debug_assert_eq!(n, self.spec.rank());
        Ok(())
    }

    pub fn to_cache(&self) -> CacheFile {
        CacheFile {
            spec: FlagSpecFile::from(&self.spec),
            complete: self.complete,
            strata: self
                .strata
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|e| CachedElement {
                            idx: e.idx,
                            word: e.word.clone(),
                            b: e.b.clone(),
                            b_inv: e.b_inv.clone(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_cache()).expect("cache serializes")
    }

    /// Rebuilds a table from its cache form, re-deriving every fingerprint.
    pub fn from_cache(cache: CacheFile) -> Result<Self> {
        let spec = FlagSpec::try_from(cache.spec)?;
        let c = &spec.cartan;
        let mut strata = Vec::with_capacity(cache.strata.len());
        for (len, stratum) in cache.strata.into_iter().enumerate() {
            let mut out = Vec::with_capacity(stratum.len());
            for (pos, e) in stratum.into_iter().enumerate() {
                let b = b_of_word(c, &e.word)?;
                let b_inv = weyl::b_of_inverse(c, &e.word)?;
                if e.idx != pos + 1 || e.word.len() != len || b != e.b || b_inv != e.b_inv {
                    return Err(Error::CacheMismatch(format!(
                        "entry w_{{{},{}}} is inconsistent",
                        len,
                        pos + 1
                    )));
                }
                out.push(CosetElement {
                    len,
                    idx: e.idx,
                    word: e.word,
                    b,
                    b_inv,
                });
            }
            strata.push(out);
        }
        if strata.is_empty() {
            return Err(Error::CacheMismatch("cache has no strata".into()));
        }
        Ok(CosetTable::from_parts(spec, strata, cache.complete))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        CosetTable::from_cache(serde_json::from_str(text)?)
    }
}

/// On-disk cache of a [`CosetTable`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheFile {
    pub spec: FlagSpecFile,
    pub complete: bool,
    pub strata: Vec<Vec<CachedElement>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CachedElement {
    pub idx: usize,
    pub word: Word,
    pub b: BVector,
    pub b_inv: BVector,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanMatrix, ParabolicSubset};

    fn e6() -> FlagSpec {
        FlagSpec::preset_with_complement("E6", &[2]).unwrap()
    }

    fn words(stratum: &[CosetElement]) -> Vec<String> {
        stratum.iter().map(|e| e.word.to_string()).collect()
    }

    #[test]
    fn first_e6_strata() {
        let spec = e6();
        let table = CosetTable::build(&spec, BuildOptions::up_to(3)).unwrap();
        assert_eq!(words(table.stratum(1).unwrap()), vec!["2"]);
        assert_eq!(words(table.stratum(2).unwrap()), vec!["4.2"]);
        assert_eq!(words(table.stratum(3).unwrap()), vec!["3.4.2", "5.4.2"]);
        let s4 = extend_stratum(&spec, table.stratum(3).unwrap()).unwrap();
        assert_eq!(words(&s4), vec!["1.3.4.2", "3.5.4.2", "6.5.4.2"]);
        assert!(!table.is_complete());
        assert!(table.stratum(4).is_err());
    }

    #[test]
    fn e6_full_enumeration() {
        let table = CosetTable::build(&e6(), BuildOptions::default()).unwrap();
        assert!(table.is_complete());
        assert_eq!(table.total(), 72);
        assert_eq!(table.built_len(), 21);
        assert_eq!(
            &table.stratum_sizes()[..11],
            &[1, 1, 1, 2, 3, 3, 4, 5, 5, 5, 6]
        );
        table.check_invariants().unwrap();
    }

    #[test]
    fn lookups() {
        let table = CosetTable::build(&e6(), BuildOptions::up_to(10)).unwrap();
        let e = table.get(ElementId::new(9, 5)).unwrap();
        assert_eq!(e.word.to_sigma_string(), "σ_4σ_2σ_5σ_4σ_3σ_6σ_5σ_4σ_2");
        assert_eq!(table.resolve("2").unwrap().id(), ElementId::new(1, 1));
        assert_eq!(table.resolve("s:4.2").unwrap().id(), ElementId::new(2, 1));
        assert_eq!(table.resolve("4.2").unwrap().id(), ElementId::new(4, 2));
        assert_eq!(table.resolve("id").unwrap().id(), ElementId::new(0, 1));
        assert_eq!(
            table.lookup_b(&BVector::identity(6)).unwrap().id(),
            ElementId::new(0, 1)
        );
        // another decomposition of w_{3,2}: σ5σ4σ2
        assert_eq!(table.resolve("s:5.4.2").unwrap().id(), ElementId::new(3, 2));
        let err = table.resolve("1").unwrap_err();
        assert!(err.to_string().contains("not a minimal coset representative"));
        assert!(table.get(ElementId::new(9, 6)).is_err());
        assert!(table.get(ElementId::new(11, 1)).is_err());
        assert!(table.get(ElementId::new(1, 0)).is_err());
        // non-reduced decomposition still resolves
        assert_eq!(table.resolve("s:1.1.2").unwrap().id(), ElementId::new(1, 1));
    }

    #[test]
    fn type_a_full_flags_have_factorial_size() {
        let mut fact = 1;
        for n in 1..=5usize {
            fact *= n + 1;
            let spec = FlagSpec::new(
                CartanMatrix::preset('A', n).unwrap(),
                ParabolicSubset::empty(n),
            )
            .unwrap();
            let table = CosetTable::build(&spec, BuildOptions::default()).unwrap();
            assert_eq!(table.total(), fact, "A{}", n);
            assert_eq!(table.built_len(), n * (n + 1) / 2);
            table.check_invariants().unwrap();
        }
    }

    #[test]
    fn parabolic_quotients_have_index_size() {
        // |W| / |W'| for a few maximal parabolics
        let cases: &[(&str, &[usize], usize)] = &[
            ("B3", &[1], 6),
            ("B3", &[3], 8),
            ("C3", &[3], 8),
            ("D4", &[1], 8),
            ("G2", &[1], 6),
            ("F4", &[1], 24),
            ("F4", &[4], 24),
            ("A4", &[2], 10),
        ];
        for &(preset, j, expected) in cases {
            let spec = FlagSpec::preset_with_complement(preset, j).unwrap();
            let table = CosetTable::build(&spec, BuildOptions::default()).unwrap();
            assert_eq!(table.total(), expected, "{} J={:?}", preset, j);
            table.check_invariants().unwrap();
        }
    }

    /// Integer matrices of the weight-lattice action give an independent
    /// element identity to check faithfulness of the b-vector dedup.
    fn group_by_matrices(c: &CartanMatrix) -> usize {
        let n = c.rank();
        let gens: Vec<Vec<i64>> = (0..n)
            .map(|k| {
                let mut m = vec![0i64; n * n];
                for i in 0..n {
                    m[i * n + i] = 1;
                }
                // column k holds σ_k(ω_k)
                for j in 0..n {
                    m[j * n + k] -= c.get(k, j);
                }
                m
            })
            .collect();
        let mul = |a: &[i64], b: &[i64]| -> Vec<i64> {
            let mut r = vec![0; n * n];
            for i in 0..n {
                for j in 0..n {
                    r[i * n + j] = (0..n).map(|t| a[i * n + t] * b[t * n + j]).sum();
                }
            }
            r
        };
        let id: Vec<i64> = (0..n * n).map(|x| i64::from(x % (n + 1) == 0)).collect();
        let mut seen = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(m) = frontier.pop() {
            for g in &gens {
                let next = mul(g, &m);
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn dedup_is_faithful_on_small_groups() {
        for (preset, order) in [("A2", 6), ("A3", 24), ("B2", 8), ("G2", 12)] {
            let c = CartanMatrix::parse_preset(preset).unwrap();
            assert_eq!(group_by_matrices(&c), order, "{}", preset);
            let spec = FlagSpec::new(c.clone(), ParabolicSubset::empty(c.rank())).unwrap();
            let table = CosetTable::build(&spec, BuildOptions::default()).unwrap();
            assert_eq!(table.total(), order, "{}", preset);
        }
    }

    #[test]
    fn descents_match_lengths_exhaustively() {
        for preset in ["A2", "B2", "G2"] {
            let c = CartanMatrix::parse_preset(preset).unwrap();
            let spec = FlagSpec::new(c.clone(), ParabolicSubset::empty(c.rank())).unwrap();
            let table = CosetTable::build(&spec, BuildOptions::default()).unwrap();
            for e in table.iter() {
                for i in 1..=c.rank() {
                    let up = weyl::length(&c, &e.word.prepend(i)).unwrap() == e.len + 1;
                    assert_eq!(weyl::has_left_descent(&e.b, i).unwrap(), !up);
                }
            }
        }
    }

    #[test]
    fn cache_round_trip() {
        let table = CosetTable::build(&e6(), BuildOptions::default()).unwrap();
        let back = CosetTable::from_json(&table.to_json()).unwrap();
        assert_eq!(back, table);
        assert_eq!(
            back.resolve("9.5").unwrap(),
            table.resolve("9.5").unwrap()
        );

        let mut cache = table.to_cache();
        cache.strata[3][0].word = "5.4.2".parse().unwrap();
        assert!(matches!(
            CosetTable::from_cache(cache),
            Err(Error::CacheMismatch(_))
        ));
    }

    #[test]
    fn infinite_types_are_detected() {
        let c = CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        let spec = FlagSpec::new(c, ParabolicSubset::empty(2)).unwrap();
        let opts = BuildOptions {
            stratum_ceiling: 50,
            ..Default::default()
        };
        assert!(matches!(
            CosetTable::build(&spec, opts),
            Err(Error::NonTermination(_))
        ));
        let c = CartanMatrix::new(vec![vec![2, -3], vec![-3, 2]]).unwrap();
        let spec = FlagSpec::new(c, ParabolicSubset::empty(2)).unwrap();
        assert!(CosetTable::build(&spec, opts).is_err());
    }

    #[test]
    fn element_keys() {
        assert_eq!(
            ElementKey::parse("9.5").unwrap(),
            ElementKey::Index(ElementId::new(9, 5))
        );
        assert_eq!(
            ElementKey::parse("3.4.2").unwrap(),
            ElementKey::Word("3.4.2".parse().unwrap())
        );
        assert_eq!(
            ElementKey::parse("s:4.2").unwrap(),
            ElementKey::Word("4.2".parse().unwrap())
        );
        assert!(ElementKey::parse("a.b").is_err());
    }
}
