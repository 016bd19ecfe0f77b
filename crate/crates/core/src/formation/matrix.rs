use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{sort_lenalph, Alphabet, Word};

/// The fundamental matrix over `Z/p`, stored transposed: `rows[r][c]` is
/// `<order[c], order[r]>`, so the matrix is upper unitriangular.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FundamentalMatrixRecord", into = "FundamentalMatrixRecord")]
pub struct FundamentalMatrix {
    alphabet: Alphabet,
    order: Vec<Word>,
    p: u64,
    j: Vec<u32>,
    rows: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FundamentalMatrixRecord {
    pub alphabet: Alphabet,
    pub order: Vec<String>,
    pub p: u64,
    pub j: Vec<u32>,
    pub rows: Vec<Vec<u64>>,
}

/// A position where unitriangularity fails, as `(row, col)`.
pub type MatrixWitness = (usize, usize);

impl FundamentalMatrix {
    pub fn new(alphabet: Alphabet, order: Vec<Word>, p: u64, j: Vec<u32>, rows: Vec<Vec<u64>>) -> Result<Self> {
        let size = order.len();
        if rows.len() != size || rows.iter().any(|r| r.len() != size) {
            return Err(Error::Parse(format!("fundamental matrix must be {size} x {size}")));
        }
        if rows.iter().flatten().any(|&v| v >= p) {
            return Err(Error::Parse(format!("entries must lie in 0..{p}")));
        }
        let mut sorted = order.clone();
        sort_lenalph(&mut sorted);
        if sorted != order {
            return Err(Error::Parse("order must be length-alphabetically sorted".into()));
        }
        Ok(FundamentalMatrix {
            alphabet,
            order,
            p,
            j,
            rows,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> &[Word] {
        &self.order
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn j(&self) -> &[u32] {
        &self.j
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.rows[row][col]
    }

    /// `<w, w'>`, for `w` and `w'` in the order.
    pub fn pairing(&self, w: &Word, w_prime: &Word) -> Option<u64> {
        let c = self.order.iter().position(|v| v == w)?;
        let r = self.order.iter().position(|v| v == w_prime)?;
        Some(self.rows[r][c])
    }

    /// Overwrites one entry.
    pub fn set(&mut self, row: usize, col: usize, v: u64) {
        self.rows[row][col] = v % self.p;
    }

    /// The first entry, in row-major order, that is not as in an upper
    /// unitriangular matrix.
    pub fn unitriangular_witness(&self) -> Option<MatrixWitness> {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if (r == c && v != 1) || (c < r && v != 0) {
                    return Some((r, c));
                }
            }
        }
        None
    }

    pub fn check_unitriangular(&self) -> bool {
        self.unitriangular_witness().is_none()
    }

    /// Restriction to the rows and columns indexed by `words`, or `None` if
    /// some word is missing.
    pub fn sub_block(&self, words: &[Word]) -> Option<FundamentalMatrix> {
        let mut words = words.to_vec();
        sort_lenalph(&mut words);
        words.dedup();
        let idx: Vec<usize> = words
            .iter()
            .map(|w| self.order.iter().position(|v| v == w))
            .collect::<Option<_>>()?;
        let rows = idx
            .iter()
            .map(|&r| idx.iter().map(|&c| self.rows[r][c]).collect())
            .collect();
        Some(FundamentalMatrix {
            alphabet: self.alphabet.clone(),
            order: words,
            p: self.p,
            j: self.j.clone(),
            rows,
        })
    }

    /// `rows[c][r]`: the untransposed matrix of `<w, w'>`, with `w` indexing rows.
    pub fn transposed_rows(&self) -> Vec<Vec<u64>> {
        let n = self.size();
        (0..n).map(|r| (0..n).map(|c| self.rows[c][r]).collect()).collect()
    }

    pub fn format_text(&self) -> String {
        let labels: Vec<String> = self.order.iter().map(|w| self.alphabet.display_word(w)).collect();
        let width = labels
            .iter()
            .map(String::len)
            .chain(self.rows.iter().flatten().map(|v| v.to_string().len()))
            .max()
            .unwrap_or(1);
        let mut out = format!("{:>width$} |", "");
        for l in &labels {
            out += &format!(" {l:>width$}");
        }
        out.push('\n');
        for (l, row) in labels.iter().zip(&self.rows) {
            out += &format!("{l:>width$} |");
            for v in row {
                out += &format!(" {v:>width$}");
            }
            out.push('\n');
        }
        out
    }
}

impl TryFrom<FundamentalMatrixRecord> for FundamentalMatrix {
    type Error = Error;
    fn try_from(r: FundamentalMatrixRecord) -> Result<Self> {
        let order = r
            .order
            .iter()
            .map(|s| r.alphabet.parse_word(s))
            .collect::<Result<Vec<_>>>()?;
        FundamentalMatrix::new(r.alphabet, order, r.p, r.j, r.rows)
    }
}

impl From<FundamentalMatrix> for FundamentalMatrixRecord {
    fn from(m: FundamentalMatrix) -> Self {
        FundamentalMatrixRecord {
            order: m.order.iter().map(|w| m.alphabet.format_word(w)).collect(),
            alphabet: m.alphabet,
            p: m.p,
            j: m.j,
            rows: m.rows,
        }
    }
}
