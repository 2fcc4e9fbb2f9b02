//! Two-player payoff tables and their plain-text file format.
//!
//! The text format is line oriented. Blank lines and lines whose first
//! non-space character is `#` are ignored; the remaining lines are, in order:
//!
//! ```text
//! <m> <n>
//! <row label 1> ... <row label m>
//! <col label 1> ... <col label n>
//! <p1>,<p2> <p1>,<p2> ...        (m lines of n cells)
//! ```
//!
//! Labels may not contain whitespace. Each cell holds the row player's payoff
//! followed by the column player's payoff, separated by a comma with no space.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Bimatrix {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    payoff1: Vec<Vec<f64>>,
    payoff2: Vec<Vec<f64>>,
}

impl Bimatrix {
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        payoff1: Vec<Vec<f64>>,
        payoff2: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let (m, n) = (row_labels.len(), col_labels.len());
        if m == 0 || n == 0 {
            return Err(Error::InvalidBimatrix("each player needs at least one strategy".into()));
        }
        for (name, table) in [("payoff1", &payoff1), ("payoff2", &payoff2)] {
            if table.len() != m || table.iter().any(|row| row.len() != n) {
                return Err(Error::InvalidBimatrix(format!("{name} is not {m}x{n}")));
            }
            if table.iter().flatten().any(|v| !v.is_finite()) {
                return Err(Error::InvalidBimatrix(format!("{name} has a non-finite entry")));
            }
        }
        if row_labels.iter().chain(&col_labels).any(|l| l.is_empty() || l.contains(char::is_whitespace)) {
            return Err(Error::InvalidBimatrix("labels must be non-empty and contain no whitespace".into()));
        }
        Ok(Bimatrix { row_labels, col_labels, payoff1, payoff2 })
    }

    /// Builds a game with numeric labels from `(p1, p2)` cells.
    pub fn from_cells(cells: &[Vec<(f64, f64)>]) -> Result<Self> {
        let m = cells.len();
        let n = cells.first().map_or(0, Vec::len);
        let payoff1 = cells.iter().map(|r| r.iter().map(|c| c.0).collect()).collect();
        let payoff2 = cells.iter().map(|r| r.iter().map(|c| c.1).collect()).collect();
        Bimatrix::new(
            (0..m).map(|i| format!("r{i}")).collect(),
            (0..n).map(|j| format!("c{j}")).collect(),
            payoff1,
            payoff2,
        )
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn payoff1(&self) -> &[Vec<f64>] {
        &self.payoff1
    }

    pub fn payoff2(&self) -> &[Vec<f64>] {
        &self.payoff2
    }

    pub fn cell(&self, row: usize, col: usize) -> (f64, f64) {
        (self.payoff1[row][col], self.payoff2[row][col])
    }

    /// Returns a copy with both payoff tables mapped through `f(player, value)`.
    pub fn map_payoffs(&self, f: impl Fn(usize, f64) -> f64) -> Result<Self> {
        let map = |p: usize, t: &[Vec<f64>]| t.iter().map(|r| r.iter().map(|&v| f(p, v)).collect()).collect();
        Bimatrix::new(
            self.row_labels.clone(),
            self.col_labels.clone(),
            map(1, &self.payoff1),
            map(2, &self.payoff2),
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let eof = |what: &str| Error::BimatrixParse { line: text.lines().count() + 1, message: format!("missing {what}") };

        let (line, dims) = lines.next().ok_or_else(|| eof("dimension line"))?;
        let dims: Vec<&str> = dims.split_whitespace().collect();
        let parse_dim = |s: &str| {
            s.parse::<usize>()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::BimatrixParse { line, message: format!("bad dimension {s:?}") })
        };
        if dims.len() != 2 {
            return Err(Error::BimatrixParse { line, message: "expected `m n`".into() });
        }
        let (m, n) = (parse_dim(dims[0])?, parse_dim(dims[1])?);

        let mut labels = |count: usize, what: &str| -> Result<Vec<String>> {
            let (line, l) = lines.next().ok_or_else(|| eof(what))?;
            let labels: Vec<String> = l.split_whitespace().map(str::to_string).collect();
            if labels.len() != count {
                return Err(Error::BimatrixParse {
                    line,
                    message: format!("expected {count} {what}, found {}", labels.len()),
                });
            }
            Ok(labels)
        };
        let row_labels = labels(m, "row labels")?;
        let col_labels = labels(n, "column labels")?;

        let mut payoff1 = Vec::with_capacity(m);
        let mut payoff2 = Vec::with_capacity(m);
        for _ in 0..m {
            let (line, l) = lines.next().ok_or_else(|| eof("payoff row"))?;
            let mut r1 = Vec::with_capacity(n);
            let mut r2 = Vec::with_capacity(n);
            for cell in l.split_whitespace() {
                let bad = || Error::BimatrixParse { line, message: format!("bad cell {cell:?}, expected p1,p2") };
                let (a, b) = cell.split_once(',').ok_or_else(bad)?;
                let a: f64 = a.parse().map_err(|_| bad())?;
                let b: f64 = b.parse().map_err(|_| bad())?;
                if !a.is_finite() || !b.is_finite() {
                    return Err(bad());
                }
                r1.push(a);
                r2.push(b);
            }
            if r1.len() != n {
                return Err(Error::BimatrixParse { line, message: format!("expected {n} cells, found {}", r1.len()) });
            }
            payoff1.push(r1);
            payoff2.push(r2);
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::BimatrixParse { line, message: "trailing content".into() });
        }
        Bimatrix::new(row_labels, col_labels, payoff1, payoff2)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.rows(), self.cols());
        let _ = writeln!(out, "{}", self.row_labels.join(" "));
        let _ = writeln!(out, "{}", self.col_labels.join(" "));
        for i in 0..self.rows() {
            let cells: Vec<String> =
                (0..self.cols()).map(|j| format!("{},{}", self.payoff1[i][j], self.payoff2[i][j])).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }
}
