//! Text, CSV and JSON renderings of coset tables and product expansions.
//!
//! Text mode lays out cosets as `w_{r,i}  σ_…σ_…` and products as
//! `u v | w_{d,1} w_{d,2} …` followed by one row of coefficients per pair.

use std::fmt::Write;
use std::str::FromStr;

use crate::coset::{CosetTable, ElementId};
use crate::error::{Error, Result};
use crate::schubert::{ProductExpansion, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format {:?}", s))),
        }
    }
}

fn dotted(id: ElementId) -> String {
    format!("{}.{}", id.len, id.idx)
}

pub fn render_cosets(table: &CosetTable, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            for e in table.iter() {
                writeln!(out, "{}  {}", e.id(), e.word.to_sigma_string()).unwrap();
            }
        }
        Format::Csv => {
            out.push_str("length,index,word,b\n");
            for e in table.iter() {
                writeln!(out, "{},{},{},\"{}\"", e.len, e.idx, e.word, e.b).unwrap();
            }
        }
        Format::Json => {
            out = table.to_json();
            out.push('\n');
        }
    }
    out
}

/// Renders rows that share the columns `columns`.
pub fn render_products(columns: &[ElementId], rows: &[ProductExpansion], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            out.push_str("u v |");
            for w in columns {
                write!(out, " {}", w).unwrap();
            }
            out.push('\n');
            for row in rows {
                write!(out, "{} {} |", row.u, row.v).unwrap();
                for t in &row.coeffs {
                    write!(out, " {}", t.a).unwrap();
                }
                out.push('\n');
            }
        }
        Format::Csv => {
            out.push_str("u,v,w,a\n");
            for row in rows {
                for t in &row.coeffs {
                    writeln!(out, "{},{},{},{}", dotted(row.u), dotted(row.v), dotted(t.w), t.a).unwrap();
                }
            }
        }
        Format::Json => {
            out = serde_json::to_string(rows).expect("serializable");
            out.push('\n');
        }
    }
    out
}

pub fn render_expansion(e: &ProductExpansion, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(e).expect("serializable");
            s.push('\n');
            s
        }
        _ => {
            let columns: Vec<ElementId> = e.coeffs.iter().map(|t| t.w).collect();
            render_products(&columns, std::slice::from_ref(e), format)
        }
    }
}

pub fn parse_expansion_json(text: &str) -> Result<ProductExpansion> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_products_json(text: &str) -> Result<Vec<ProductExpansion>> {
    Ok(serde_json::from_str(text)?)
}

fn parse_id(s: &str) -> Result<ElementId> {
    let bad = || Error::Parse(format!("bad element label {:?}", s));
    let inner = s.strip_prefix("w_{").and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    Ok(ElementId::new(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
}

/// Reads the text layout of [`render_products`] back.
pub fn parse_products_text(text: &str) -> Result<(Vec<ElementId>, Vec<ProductExpansion>)> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty product table".into()))?;
    let cols = header
        .strip_prefix("u v |")
        .ok_or_else(|| Error::Parse(format!("bad header {:?}", header)))?;
    let columns: Vec<ElementId> = cols.split_whitespace().map(parse_id).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let (pair, values) = line
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("bad row {:?}", line)))?;
        let ids: Vec<ElementId> = pair.split_whitespace().map(parse_id).collect::<Result<_>>()?;
        let values: Vec<u64> = values
            .split_whitespace()
            .map(|v| v.parse().map_err(|_| Error::Parse(format!("bad value {:?}", v))))
            .collect::<Result<_>>()?;
        if ids.len() != 2 || values.len() != columns.len() {
            return Err(Error::Parse(format!("bad row {:?}", line)));
        }
        rows.push(ProductExpansion {
            u: ids[0],
            v: ids[1],
            coeffs: columns.iter().zip(values).map(|(&w, a)| Term { w, a }).collect(),
        });
    }
    Ok((columns, rows))
}
