//! Dense exact matrices and the plain-text matrix file format.

use std::fmt::Write as _;
use std::ops::{Index, IndexMut, Mul};

use crate::error::{Error, Result};
use crate::ring::{exact_div, Ring};

/// Row-major dense matrix over `R`. Zero rows or zero columns are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix<R> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
}

impl<R: Ring> DenseMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, entries }
    }

    /// Builds a matrix from row vectors; `cols` is needed to describe `r×0`
    /// and `0×c` shapes unambiguously.
    pub fn from_rows(rows: Vec<Vec<R>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::dims(
                    "from_rows",
                    format!("row {i} has {} entries, expected {cols}", row.len()),
                ));
            }
            entries.extend(row);
        }
        Ok(DenseMatrix {
            rows: nrows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from small integer literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| R::from_i64(v)).collect())
            .collect();
        Self::from_rows(rows, cols).expect("ragged integer literal matrix")
    }

    pub fn diag(entries: &[R]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&R> {
        (i < self.rows && j < self.cols).then(|| &self.entries[i * self.cols + j])
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(R::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dims(
                "multiply",
                format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols),
            ));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cell = &mut out.entries[i * rhs.cols + j];
                    *cell = std::mem::replace(cell, R::zero()) + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, op: &'static str, f: impl Fn(R, R) -> R) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::dims(
                op,
                format!("{}x{} and {}x{}", self.rows, self.cols, rhs.rows, rhs.cols),
            ));
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    pub fn scale(&self, c: &R) -> Self {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Assembles a grid of blocks. Every block in a grid row must share its
    /// row count and every block in a grid column its column count; empty
    /// blocks take part in that check like any other.
    pub fn block_compose(grid: &[Vec<&DenseMatrix<R>>]) -> Result<Self> {
        let Some(first) = grid.first() else {
            return Ok(Self::zeros(0, 0));
        };
        let ncols_grid = first.len();
        if grid.iter().any(|r| r.len() != ncols_grid) {
            return Err(Error::dims("block_compose", "ragged block grid"));
        }
        let col_widths: Vec<usize> = first.iter().map(|b| b.cols).collect();
        let mut row_heights = Vec::with_capacity(grid.len());
        for (gi, grow) in grid.iter().enumerate() {
            let h = grow.first().map_or(0, |b| b.rows);
            for (gj, b) in grow.iter().enumerate() {
                if b.rows != h || b.cols != col_widths[gj] {
                    return Err(Error::dims(
                        "block_compose",
                        format!(
                            "block ({gi},{gj}) is {}x{}, expected {h}x{}",
                            b.rows, b.cols, col_widths[gj]
                        ),
                    ));
                }
            }
            row_heights.push(h);
        }
        let total_rows = row_heights.iter().sum();
        let total_cols = col_widths.iter().sum();
        let mut out = Self::zeros(total_rows, total_cols);
        let mut r0 = 0;
        for (grow, h) in grid.iter().zip(&row_heights) {
            let mut c0 = 0;
            for b in grow {
                out.set_block(r0, c0, b);
                c0 += b.cols;
            }
            r0 += h;
        }
        Ok(out)
    }

    /// Copies the `rows×cols` sub-block whose top-left corner is `(r0, c0)`.
    pub fn block_extract(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Result<Self> {
        if r0 + rows > self.rows || c0 + cols > self.cols {
            return Err(Error::dims(
                "block_extract",
                format!(
                    "block {rows}x{cols} at ({r0},{c0}) exceeds {}x{}",
                    self.rows, self.cols
                ),
            ));
        }
        Ok(Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone()))
    }

    fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn hcat(&self, rhs: &Self) -> Result<Self> {
        Self::block_compose(&[vec![self, rhs]])
    }

    pub fn vcat(&self, rhs: &Self) -> Result<Self> {
        Self::block_compose(&[vec![self], vec![rhs]])
    }

    /// Exact determinant. Cofactor expansion up to 3×3, fraction-free
    /// (Bareiss) elimination above that.
    pub fn determinant(&self) -> Result<R> {
        if !self.is_square() {
            return Err(Error::dims(
                "determinant",
                format!("{}x{} is not square", self.rows, self.cols),
            ));
        }
        let m = |i: usize, j: usize| self[(i, j)].clone();
        Ok(match self.rows {
            0 => R::one(),
            1 => m(0, 0),
            2 => m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
            3 => {
                m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
            }
            _ => self.bareiss(),
        })
    }

    fn bareiss(&self) -> R {
        let n = self.rows;
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        negate = !negate;
                    }
                    None => return R::zero(),
                }
            }
            let pivot = a[(k, k)].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(i, j)].clone() * pivot.clone() - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = exact_div(&num, &prev).expect("Bareiss step divides exactly");
                }
                a[(i, k)] = R::zero();
            }
            prev = pivot;
        }
        let det = a[(n - 1, n - 1)].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    /// Square with a unit determinant, i.e. invertible over the ring.
    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.determinant()?.is_unit())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Replaces rows `(i, j)` by `g · [row_i; row_j]` for a 2×2 matrix `g`.
    pub(crate) fn row_transform(&mut self, i: usize, j: usize, g: &[[R; 2]; 2]) {
        for c in 0..self.cols {
            let a = self[(i, c)].clone();
            let b = self[(j, c)].clone();
            self[(i, c)] = g[0][0].clone() * a.clone() + g[0][1].clone() * b.clone();
            self[(j, c)] = g[1][0].clone() * a + g[1][1].clone() * b;
        }
    }

    /// Replaces columns `(i, j)` by `[col_i col_j] · h` for a 2×2 matrix `h`.
    pub(crate) fn col_transform(&mut self, i: usize, j: usize, h: &[[R; 2]; 2]) {
        for r in 0..self.rows {
            let a = self[(r, i)].clone();
            let b = self[(r, j)].clone();
            self[(r, i)] = a.clone() * h[0][0].clone() + b.clone() * h[1][0].clone();
            self[(r, j)] = a * h[0][1].clone() + b * h[1][1].clone();
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &R) {
        for k in 0..self.cols {
            self[(i, k)] = self[(i, k)].clone() * c.clone();
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &R) {
        for k in 0..self.rows {
            self[(k, j)] = self[(k, j)].clone() * c.clone();
        }
    }

    /// `col_dst += c · col_src`
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, c: &R) {
        for k in 0..self.rows {
            let v = self[(k, dst)].clone() + self[(k, src)].clone() * c.clone();
            self[(k, dst)] = v;
        }
    }

    /// `row_dst += c · row_src`
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, c: &R) {
        for k in 0..self.cols {
            let v = self[(dst, k)].clone() + self[(src, k)].clone() * c.clone();
            self[(dst, k)] = v;
        }
    }
}

impl<R> Index<(usize, usize)> for DenseMatrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for DenseMatrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

/// Panics on a shape mismatch; use [`DenseMatrix::try_mul`] for checked
/// products.
impl<R: Ring> Mul for &DenseMatrix<R> {
    type Output = DenseMatrix<R>;
    fn mul(self, rhs: &DenseMatrix<R>) -> DenseMatrix<R> {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

/// Renders a matrix in the file format: a `<rows> <cols>` header line, then
/// one line per row with single-space separated literals.
pub fn format_matrix<R: Ring>(m: &DenseMatrix<R>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", m.rows(), m.cols());
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(R::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

/// Parses the matrix file format. Blank lines and lines whose first
/// non-blank character is `#` are skipped. Errors carry 1-based line and
/// column numbers.
pub fn parse_matrix<R: Ring>(text: &str) -> Result<DenseMatrix<R>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let perr = |line: usize, column: usize, message: String| Error::Parse {
        line,
        column,
        message,
    };

    let (hline, header) = lines
        .next()
        .ok_or_else(|| perr(1, 1, "missing `<rows> <cols>` header".into()))?;
    let htoks = tokens(header);
    if htoks.len() != 2 {
        let col = htoks.get(2).map_or(1, |t| t.0);
        return Err(perr(hline, col, "header must be `<rows> <cols>`".into()));
    }
    let dim = |(col, tok): (usize, &str)| {
        if !tok.bytes().all(|b| b.is_ascii_digit()) {
            return Err(perr(hline, col, format!("invalid dimension `{tok}`")));
        }
        tok.parse::<usize>()
            .map_err(|e| perr(hline, col, format!("invalid dimension `{tok}`: {e}")))
    };
    let rows = dim(htoks[0])?;
    let cols = dim(htoks[1])?;

    let mut data = Vec::with_capacity(rows);
    for r in 0..rows {
        let (lno, line) = lines.next().ok_or_else(|| {
            perr(
                text.lines().count() + 1,
                1,
                format!("expected {rows} rows, found {r}"),
            )
        })?;
        let toks = tokens(line);
        if toks.len() != cols {
            let col = toks.get(cols).map_or(line.len() + 1, |t| t.0);
            return Err(perr(
                lno,
                col,
                format!("expected {cols} entries, found {}", toks.len()),
            ));
        }
        let row = toks
            .into_iter()
            .map(|(col, tok)| R::parse_literal(tok).map_err(|m| perr(lno, col, m)))
            .collect::<Result<Vec<R>>>()?;
        data.push(row);
    }
    if let Some((lno, line)) = lines.next() {
        let col = line.len() - line.trim_start().len() + 1;
        return Err(perr(lno, col, "unexpected content after the last row".into()));
    }
    DenseMatrix::from_rows(data, cols)
}

/// Whitespace separated tokens with their 1-based character columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (idx, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((idx, byte)),
            (true, Some((col, b0))) => {
                out.push((col + 1, &line[b0..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((col, b0)) = start {
        out.push((col + 1, &line[b0..]));
    }
    out
}
