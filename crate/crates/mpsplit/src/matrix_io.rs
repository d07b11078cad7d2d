//! Plain-text matrices: a `rows cols` header line followed by `rows` lines
//! of whitespace-separated values. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use mpsplit_core::Matrix;

use crate::error::{Error, Result};

pub fn parse_matrix(text: &str, path: &Path) -> Result<Matrix> {
    let bad = |message: String| Error::MatrixFile {
        path: path.to_path_buf(),
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line_no, header) = lines.next().ok_or_else(|| bad("empty file".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| bad(format!("line {line_no}: bad header: {e}")))?;
    let [rows, cols] = dims[..] else {
        return Err(bad(format!("line {line_no}: header must be `rows cols`")));
    };
    let mut data = Vec::with_capacity(rows * cols);
    let mut seen_rows = 0;
    for (line_no, line) in lines {
        let before = data.len();
        for tok in line.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|e| bad(format!("line {line_no}: `{tok}`: {e}")))?;
            data.push(v);
        }
        if data.len() - before != cols {
            return Err(bad(format!(
                "line {line_no}: expected {cols} values, found {}",
                data.len() - before
            )));
        }
        seen_rows += 1;
    }
    if seen_rows != rows {
        return Err(bad(format!("expected {rows} rows, found {seen_rows}")));
    }
    Matrix::new(rows, cols, data).map_err(|e| bad(e.to_string()))
}

pub fn read_matrix(path: &Path) -> Result<Matrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_matrix(&text, path)
}

/// Shortest round-trip formatting, so a written matrix reads back bitwise.
pub fn format_matrix(m: &Matrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row = m.row(i);
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            write!(out, "{v:?}").expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

pub fn write_matrix(m: &Matrix, path: &Path) -> Result<()> {
    fs::write(path, format_matrix(m)).map_err(|e| Error::io(path, e))
}
