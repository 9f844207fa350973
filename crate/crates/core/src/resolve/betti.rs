//! Graded Betti tables.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};

/// Graded Betti numbers `beta_{i,j}` of a minimal free resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub nvars: usize,
    entries: BTreeMap<(usize, i32), u64>,
}

/// Serialized form: `{"nvars", "entries": [[i, j, beta]], "pd", "reg", "depth"}`.
#[derive(Clone, Debug, Serialize)]
pub struct BettiJson {
    pub nvars: usize,
    pub entries: Vec<(usize, i32, u64)>,
    pub pd: usize,
    pub reg: i32,
    pub depth: i64,
}

impl BettiTable {
    pub fn new(nvars: usize, mut entries: BTreeMap<(usize, i32), u64>) -> Self {
        entries.retain(|_, v| *v != 0);
        BettiTable { nvars, entries }
    }

    pub fn get(&self, i: usize, j: i32) -> u64 {
        *self.entries.get(&(i, j)).unwrap_or(&0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i32, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Projective dimension.
    pub fn pd(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Castelnuovo-Mumford regularity `max (j - i)`.
    pub fn reg(&self) -> i32 {
        self.entries
            .keys()
            .map(|&(i, j)| j - i as i32)
            .max()
            .unwrap_or(0)
    }

    pub fn depth(&self) -> i64 {
        self.nvars as i64 - self.pd() as i64
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|(k, _)| k.0 == i)
            .map(|(_, v)| v)
            .sum()
    }

    /// Row `k` of the table: `beta_{i,i+k}` for `i = 0..=pd`.
    pub fn row(&self, k: i32) -> Vec<u64> {
        (0..=self.pd()).map(|i| self.get(i, i as i32 + k)).collect()
    }

    /// `u_i = beta_{i,i+1}` for `i = 1..=pd`.
    pub fn u_row(&self) -> Vec<u64> {
        self.row(1).into_iter().skip(1).collect()
    }

    /// `v_i = beta_{i,i+2}` for `i = 1..=pd`.
    pub fn v_row(&self) -> Vec<u64> {
        self.row(2).into_iter().skip(1).collect()
    }

    /// Alternating sum `sum_i (-1)^i beta_{i,j}` keyed by `j`.
    pub fn euler_polynomial(&self) -> BTreeMap<i32, i64> {
        let mut out = BTreeMap::new();
        for (&(i, j), &b) in &self.entries {
            *out.entry(j).or_insert(0) += if i % 2 == 0 { b as i64 } else { -(b as i64) };
        }
        out.retain(|_, v| *v != 0);
        out
    }

    pub fn to_json(&self) -> BettiJson {
        BettiJson {
            nvars: self.nvars,
            entries: self.entries().collect(),
            pd: self.pd(),
            reg: self.reg(),
            depth: self.depth(),
        }
    }

    /// Full grid: rows `k = j - i`, columns `i`.
    pub fn grid_text(&self) -> String {
        let pd = self.pd();
        let lo = self
            .entries
            .keys()
            .map(|&(i, j)| j - i as i32)
            .min()
            .unwrap_or(0);
        let hi = self.reg();
        let cells: Vec<Vec<String>> = (lo..=hi)
            .map(|k| {
                (0..=pd)
                    .map(|i| match self.get(i, i as i32 + k) {
                        0 => ".".to_string(),
                        b => b.to_string(),
                    })
                    .collect()
            })
            .collect();
        let totals: Vec<String> = (0..=pd).map(|i| self.total(i).to_string()).collect();
        let mut width = vec![1usize; pd + 1];
        for row in cells.iter().chain(std::iter::once(&totals)) {
            for (i, c) in row.iter().enumerate() {
                width[i] = width[i].max(c.len());
            }
        }
        for (i, w) in width.iter_mut().enumerate() {
            *w = (*w).max(i.to_string().len());
        }
        let label = 6usize.max(format!("{}:", hi).len());
        let mut out = String::new();
        let _ = write!(out, "{:>label$}", "");
        for (i, w) in width.iter().enumerate() {
            let _ = write!(out, " {:>w$}", i, w = w);
        }
        out.push('\n');
        let _ = write!(out, "{:>label$}", "total:");
        for (i, w) in width.iter().enumerate() {
            let _ = write!(out, " {:>w$}", totals[i], w = w);
        }
        out.push('\n');
        for (r, k) in (lo..=hi).enumerate() {
            let _ = write!(out, "{:>label$}", format!("{}:", k));
            for (i, w) in width.iter().enumerate() {
                let _ = write!(out, " {:>w$}", cells[r][i], w = w);
            }
            out.push('\n');
        }
        out
    }

    /// Two-row `u`/`v` layout when the table has `beta_{0,0} = 1` and regularity 2.
    pub fn uv_text(&self) -> Option<String> {
        if self.reg() != 2 || self.get(0, 0) != 1 || self.total(0) != 1 {
            return None;
        }
        if self
            .entries
            .keys()
            .any(|&(i, j)| i > 0 && j - (i as i32) < 1)
        {
            return None;
        }
        let u = self.u_row();
        let v = self.v_row();
        let cols: Vec<usize> = (0..u.len())
            .map(|k| {
                u[k].to_string()
                    .len()
                    .max(v[k].to_string().len())
                    .max((k + 1).to_string().len())
            })
            .collect();
        let mut out = String::new();
        out.push_str("i:");
        for (k, w) in cols.iter().enumerate() {
            let _ = write!(out, " {:>w$}", k + 1, w = w);
        }
        out.push_str("\nu:");
        for (k, w) in cols.iter().enumerate() {
            let _ = write!(out, " {:>w$}", u[k], w = w);
        }
        out.push_str("\nv:");
        for (k, w) in cols.iter().enumerate() {
            let _ = write!(out, " {:>w$}", v[k], w = w);
        }
        out.push('\n');
        Some(out)
    }

    /// The `u`/`v` layout if it applies, otherwise the full grid.
    pub fn to_text(&self) -> String {
        self.uv_text().unwrap_or_else(|| self.grid_text())
    }
}

/// Arithmetic depth by Auslander-Buchsbaum: `nvars - pd`.
pub fn depth_from_betti(b: &BettiTable, nvars: usize) -> Result<i64> {
    if b.is_empty() {
        return Err(Error::Precondition("empty Betti table".into()));
    }
    Ok(nvars as i64 - b.pd() as i64)
}

pub fn regularity(b: &BettiTable) -> i32 {
    b.reg()
}
