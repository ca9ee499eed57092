//! Self-checks: reference tables, the Grassmannian LR comparison and the
//! algebraic properties of the structure constants.

use std::collections::HashMap;
use std::fmt;

use num_traits::Signed;

use crate::cartan::FlagSpec;
use crate::coset::{BuildOptions, CosetTable, ElementId};
use crate::error::{Error, Result};
use crate::golden::{Golden, E_SERIES};
use crate::oracle;
use crate::render::{render_cosets, render_products, Format};
use crate::schubert::{
    coefficient_for_words, expand_product, multiplication_table, structure_constant, EvalOptions,
    ProductExpansion, SelectionMode,
};
use crate::weyl::{b_of_word, reduced_words};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, outcome: Result<std::result::Result<String, String>>) -> Self {
        let (passed, detail) = match outcome {
            Ok(Ok(d)) => (true, d),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, e.to_string()),
        };
        Check {
            name: name.into(),
            passed,
            detail,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{} {}: {}", tag, self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}", c)?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{}: {} of {} checks passed",
            self.suite,
            self.checks.len() - failed,
            self.checks.len()
        )
    }
}

pub const SUITES: [&str; 3] = ["tables", "grassmannian", "properties"];

pub fn run_suite(name: &str, opts: EvalOptions) -> Result<Report> {
    match name {
        "tables" => Ok(tables_suite(opts)),
        "grassmannian" => Ok(grassmannian_suite(6, opts)),
        "properties" => Ok(properties_suite(opts)),
        _ => Err(Error::Parse(format!(
            "unknown suite {:?}; expected one of {}",
            name,
            SUITES.join(", ")
        ))),
    }
}

/// Compares two texts line by line, reporting the first difference.
pub fn diff_lines(actual: &str, expected: &str) -> std::result::Result<String, String> {
    if actual == expected {
        return Ok(format!("{} lines identical", expected.lines().count()));
    }
    let (a, e): (Vec<&str>, Vec<&str>) = (actual.lines().collect(), expected.lines().collect());
    for i in 0..a.len().max(e.len()) {
        let (x, y) = (a.get(i), e.get(i));
        if x != y {
            return Err(format!(
                "line {}: got {:?}, expected {:?} ({} vs {} lines)",
                i + 1,
                x.copied().unwrap_or("<none>"),
                y.copied().unwrap_or("<none>"),
                a.len(),
                e.len()
            ));
        }
    }
    Err("texts differ in line endings".into())
}

/// The reference table for `g`, built through length 10.
pub fn reference_table(g: &Golden) -> Result<CosetTable> {
    let spec = FlagSpec::preset_with_complement(g.preset, &[2])?;
    CosetTable::build(&spec, BuildOptions::up_to(10))
}

/// Text rendering of the full degree-`d` product table.
pub fn render_degree(table: &CosetTable, d: usize, opts: EvalOptions) -> Result<String> {
    let rows = multiplication_table(table, d, opts)?;
    let columns: Vec<ElementId> = table.stratum(d)?.iter().map(|w| w.id()).collect();
    Ok(render_products(&columns, &rows, Format::Text))
}

pub fn tables_suite(opts: EvalOptions) -> Report {
    let mut checks = Vec::new();
    for g in &E_SERIES {
        let table = reference_table(g);
        let label = format!("{}/K=complement{{2}}", g.preset);
        checks.push(Check::new(
            format!("{} cosets through length 10", label),
            table.as_ref().map_err(Clone::clone).map(|t| diff_lines(&render_cosets(t, Format::Text), g.cosets)),
        ));
        for d in [9, 10] {
            let outcome = table
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|t| render_degree(t, d, opts))
                .map(|text| diff_lines(&text, g.degree(d).unwrap()));
            checks.push(Check::new(format!("{} products of degree {}", label, d), outcome));
        }
    }
    Report {
        suite: "tables".into(),
        checks,
    }
}

/// Every product in `G_{n,k}` against the LR coefficient of the attached
/// partitions.
pub fn grassmannian_check(n: usize, k: usize, opts: EvalOptions) -> Check {
    let run = || -> Result<std::result::Result<String, String>> {
        let spec = oracle::grassmannian_spec(n, k)?;
        let table = CosetTable::build(&spec, BuildOptions::default())?;
        let shapes: HashMap<ElementId, oracle::Partition> = table
            .iter()
            .map(|e| Ok((e.id(), oracle::min_rep_to_partition(&spec, e)?)))
            .collect::<Result<_>>()?;
        let top = table.built_len();
        let mut count = 0usize;
        for u in table.iter() {
            for v in table.iter().filter(|v| u.len + v.len <= top) {
                let e = expand_product(&table, u, v, opts)?;
                for t in &e.coeffs {
                    let lr = oracle::lr_coefficient(&shapes[&u.id()], &shapes[&v.id()], &shapes[&t.w]);
                    if lr != t.a {
                        return Ok(Err(format!(
                            "a = {} but LR({}, {}; {}) = {} for u = {}, v = {}, w = {}",
                            t.a,
                            shapes[&u.id()],
                            shapes[&v.id()],
                            shapes[&t.w],
                            lr,
                            u.id(),
                            v.id(),
                            t.w
                        )));
                    }
                    count += 1;
                }
            }
        }
        Ok(Ok(format!("{} coefficients agree", count)))
    };
    Check::new(format!("G({},{}) against LR", n, k), run())
}

pub fn grassmannian_suite(max_n: usize, opts: EvalOptions) -> Report {
    let mut checks = Vec::new();
    for n in 2..=max_n {
        for k in 1..n {
            checks.push(grassmannian_check(n, k, opts));
        }
    }
    Report {
        suite: "grassmannian".into(),
        checks,
    }
}

/// `(u, v) ↦ P_u P_v` for every ordered pair with `l(u) + l(v)` at most the
/// top length of a complete table.
pub fn all_products(
    table: &CosetTable,
    opts: EvalOptions,
) -> Result<HashMap<(ElementId, ElementId), ProductExpansion>> {
    let top = table.built_len();
    let mut out = HashMap::new();
    for u in table.iter() {
        for v in table.iter().filter(|v| u.len + v.len <= top) {
            out.insert((u.id(), v.id()), expand_product(table, u, v, opts)?);
        }
    }
    Ok(out)
}

fn full_flag(preset: &str) -> Result<CosetTable> {
    let spec = FlagSpec::preset_with_k(preset, &[])?;
    CosetTable::build(&spec, BuildOptions::default())
}

type Outcome = Result<std::result::Result<String, String>>;

pub fn commutativity_full(preset: &str, opts: EvalOptions) -> Outcome {
    let table = full_flag(preset)?;
    let products = all_products(&table, opts)?;
    for ((u, v), e) in &products {
        if products[&(*v, *u)].values() != e.values() {
            return Ok(Err(format!("P_{} P_{} ≠ P_{} P_{}", u, v, v, u)));
        }
    }
    Ok(Ok(format!("{} ordered pairs", products.len())))
}

pub fn commutativity_reference(tables: &[CosetTable], opts: EvalOptions) -> Outcome {
    let mut count = 0;
    for table in tables {
        for d in [9, 10] {
            for row in multiplication_table(table, d, opts)? {
                let swapped = expand_product(table, table.get(row.v)?, table.get(row.u)?, opts)?;
                if swapped.values() != row.values() {
                    return Ok(Err(format!("{}: row {} {} changes when swapped", table.spec().label(), row.u, row.v)));
                }
                count += row.coeffs.len();
            }
        }
    }
    Ok(Ok(format!("{} entries", count)))
}

pub fn reduced_word_independence(preset: &str, mode: SelectionMode) -> Outcome {
    let table = full_flag(preset)?;
    let c = &table.spec().cartan;
    let mut count = 0;
    for w in table.iter() {
        let words = reduced_words(c, &w.b)?;
        for u in table.iter().filter(|u| u.len <= w.len) {
            for v in table.stratum(w.len - u.len)? {
                let expected = structure_constant(&table, u, v, w, mode)?;
                for alt in &words {
                    let a = coefficient_for_words(c, alt, &u.word, &v.word, mode)?;
                    if a != expected.into() {
                        return Ok(Err(format!(
                            "w = {} via {} gives {} for u = {}, v = {}, expected {}",
                            w.id(),
                            alt,
                            a,
                            u.id(),
                            v.id(),
                            expected
                        )));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(Ok(format!("{} evaluations over all reduced words", count)))
}

pub fn associativity(preset: &str, opts: EvalOptions) -> Outcome {
    let table = full_flag(preset)?;
    let top = table.built_len();
    let products = all_products(&table, opts)?;
    let coeff = |u: ElementId, v: ElementId, w: ElementId| products[&(u, v)].coefficient(w).unwrap_or(0);
    let mut count = 0;
    for u in table.iter() {
        for v in table.iter().filter(|v| u.len + v.len <= top) {
            for s in table.iter().filter(|s| u.len + v.len + s.len <= top) {
                let uv = table.stratum(u.len + v.len)?;
                let vs = table.stratum(v.len + s.len)?;
                for x in table.stratum(u.len + v.len + s.len)? {
                    let left: u64 = uv.iter().map(|t| coeff(u.id(), v.id(), t.id()) * coeff(t.id(), s.id(), x.id())).sum();
                    let right: u64 = vs.iter().map(|t| coeff(v.id(), s.id(), t.id()) * coeff(u.id(), t.id(), x.id())).sum();
                    if left != right {
                        return Ok(Err(format!(
                            "(P_{} P_{}) P_{} and P_{} (P_{} P_{}) differ at {}: {} vs {}",
                            u.id(),
                            v.id(),
                            s.id(),
                            u.id(),
                            v.id(),
                            s.id(),
                            x.id(),
                            left,
                            right
                        )));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(Ok(format!("{} quadruples", count)))
}

pub fn nonnegativity(preset: &str, mode: SelectionMode) -> Outcome {
    let table = full_flag(preset)?;
    let c = &table.spec().cartan;
    let mut count = 0;
    for w in table.iter() {
        for u in table.iter().filter(|u| u.len <= w.len) {
            for v in table.stratum(w.len - u.len)? {
                let a = coefficient_for_words(c, &w.word, &u.word, &v.word, mode)?;
                if a.is_negative() {
                    return Ok(Err(format!("a = {} for u = {}, v = {}, w = {}", a, u.id(), v.id(), w.id())));
                }
                count += 1;
            }
        }
    }
    Ok(Ok(format!("{} coefficients", count)))
}

/// At top degree, `a_{u,v}^{w_0} = 1` exactly when `v = w_0 u`.
pub fn duality(preset: &str, mode: SelectionMode) -> Outcome {
    let table = full_flag(preset)?;
    let c = &table.spec().cartan;
    let top = table.top().ok_or_else(|| Error::NotFound("top element".into()))?;
    let mut count = 0;
    for u in table.iter() {
        let dual = b_of_word(c, &top.word.concat(&u.word))?;
        for v in table.stratum(top.len - u.len)? {
            let a = structure_constant(&table, u, v, top, mode)?;
            let expected = u64::from(v.b == dual);
            if a != expected {
                return Ok(Err(format!(
                    "a = {} for u = {}, v = {}, expected {}",
                    a,
                    u.id(),
                    v.id(),
                    expected
                )));
            }
            count += 1;
        }
    }
    Ok(Ok(format!("{} pairs", count)))
}

pub fn selection_modes_agree(tables: &[CosetTable], exec: crate::Execution) -> Outcome {
    let mut count = 0;
    for table in tables {
        for d in [9, 10] {
            let naive = multiplication_table(table, d, EvalOptions { mode: SelectionMode::Naive, exec })?;
            let pruned = multiplication_table(table, d, EvalOptions { mode: SelectionMode::Pruned, exec })?;
            if naive != pruned {
                return Ok(Err(format!("{} degree {}", table.spec().label(), d)));
            }
            count += naive.len();
        }
    }
    Ok(Ok(format!("{} rows", count)))
}

pub fn properties_suite(opts: EvalOptions) -> Report {
    let mut checks = Vec::new();
    let reference: Result<Vec<CosetTable>> = E_SERIES.iter().map(reference_table).collect();
    let with_reference = |f: &dyn Fn(&[CosetTable]) -> Outcome| match &reference {
        Ok(t) => f(t),
        Err(e) => Err(e.clone()),
    };
    checks.push(Check::new(
        "commutativity on reference products",
        with_reference(&|t| commutativity_reference(t, opts)),
    ));
    checks.push(Check::new("commutativity on A3 full flag", commutativity_full("A3", opts)));
    checks.push(Check::new(
        "naive and pruned selection agree on reference products",
        with_reference(&|t| selection_modes_agree(t, opts.exec)),
    ));
    for p in ["A3", "B2"] {
        checks.push(Check::new(
            format!("reduced-word independence on {} full flag", p),
            reduced_word_independence(p, opts.mode),
        ));
    }
    for p in ["A2", "A3", "B2"] {
        checks.push(Check::new(format!("associativity on {} full flag", p), associativity(p, opts)));
    }
    for p in ["A2", "A3", "B2", "G2"] {
        checks.push(Check::new(format!("nonnegativity on {} full flag", p), nonnegativity(p, opts.mode)));
    }
    for p in ["A2", "A3", "B2"] {
        checks.push(Check::new(format!("duality on {} full flag", p), duality(p, opts.mode)));
    }
    Report {
        suite: "properties".into(),
        checks,
    }
}
