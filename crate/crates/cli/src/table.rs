//! The table of fundamental types and the table of products of
//! fundamental compacta, with computed entries.

use std::fmt;

use cohodim::cdtype::{BasisKind, CdType};
use cohodim::dimension::fundamental_product_dim;
use cohodim::prime_base::{ExtInt, Prime};
use serde_json::{json, Value as Json};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<String>)>,
}

impl Table {
    pub fn to_json(&self) -> Json {
        let rows: Vec<Json> = self.rows.iter().map(|(label, cells)| json!({ "row": label, "cells": cells })).collect();
        json!({ "title": self.title, "columns": self.columns, "rows": rows })
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label_w = self.rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, c)| self.rows.iter().map(|(_, r)| r[j].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
            .collect();
        writeln!(f, "{}", self.title)?;
        let mut line = format!("{:label_w$} |", "");
        for (c, w) in self.columns.iter().zip(&widths) {
            line += &format!(" {c:>w$}");
        }
        writeln!(f, "{line}")?;
        writeln!(f, "{}", "-".repeat(line.chars().count()))?;
        for (label, cells) in &self.rows {
            let mut line = format!("{label:label_w$} |");
            for (c, w) in cells.iter().zip(&widths) {
                line += &format!(" {c:>w$}");
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct TableError(pub String);

/// Row order: Q, Z_(p), Z_p, Z_p∞.
pub fn row_kinds(p: Prime) -> [BasisKind; 4] {
    [BasisKind::Q, BasisKind::Zloc(p), BasisKind::Zp(p), BasisKind::ZpInf(p)]
}

/// Column order: Z_(p), Z_p, Z_p∞, Q, Z_(q), Z_q, Z_q∞.
pub fn column_kinds(p: Prime, q: Prime) -> [BasisKind; 7] {
    [
        BasisKind::Zloc(p),
        BasisKind::Zp(p),
        BasisKind::ZpInf(p),
        BasisKind::Q,
        BasisKind::Zloc(q),
        BasisKind::Zp(q),
        BasisKind::ZpInf(q),
    ]
}

fn distinct(p: Prime, q: Prime) -> Result<(), TableError> {
    if p == q {
        return Err(TableError(format!("p and q must differ, both are {p}")));
    }
    Ok(())
}

fn cell(v: ExtInt) -> String {
    v.to_string()
}

/// `dim_G F(G', n)` for every row kind `G'` and column group `G`.
pub fn fundamental(p: Prime, q: Prime, n: u64) -> Result<Table, TableError> {
    distinct(p, q)?;
    if n < 1 {
        return Err(TableError("n must be at least 1".into()));
    }
    let cols = column_kinds(p, q);
    let mut rows = Vec::new();
    for kind in row_kinds(p) {
        let phi = CdType::phi_basis(kind, n).map_err(|e| TableError(e.to_string()))?.to_phi();
        rows.push((format!("F({kind},{n})"), cols.iter().map(|&g| cell(phi.get(g))).collect()));
    }
    Ok(Table {
        title: format!("dim_G F(G',{n}) for p = {p}, q = {q}"),
        columns: cols.iter().map(|k| k.to_string()).collect(),
        rows,
    })
}

/// `‖Φ(G, n) [+] Φ(G', m)‖` with rows `(G', m)` and columns `(G, n)`.
pub fn products(p: Prime, q: Prime, n: u64, m: u64) -> Result<Table, TableError> {
    distinct(p, q)?;
    if !(n >= m && m >= 2) {
        return Err(TableError(format!("need n >= m >= 2, got n = {n}, m = {m}")));
    }
    let cols = column_kinds(p, q);
    let mut rows = Vec::new();
    for g2 in row_kinds(p) {
        let cells = cols
            .iter()
            .map(|&g| fundamental_product_dim(g, n, g2, m).map(|v| v.to_string()).map_err(|e| TableError(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((format!("F({g2},{m})"), cells));
    }
    Ok(Table {
        title: format!("dim F(G,{n}) x F(G',{m}) for p = {p}, q = {q}"),
        columns: cols.iter().map(|k| format!("({k},{n})")).collect(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn fundamental_rows() {
        let t = fundamental(p(2), p(3), 3).unwrap();
        assert_eq!(t.rows[2].1, ["3", "3", "2", "1", "1", "1", "1"]);
        assert!(fundamental(p(2), p(2), 3).is_err());
    }

    #[test]
    fn product_cells() {
        let t = products(p(2), p(3), 4, 3).unwrap();
        // row Z_p∞, column Z_p
        assert_eq!(t.rows[3].1[1], "6");
        let t = products(p(2), p(3), 2, 2).unwrap();
        assert_eq!(t.rows[0].1[3], "4");
        assert!(products(p(2), p(3), 2, 3).is_err());
    }
}
