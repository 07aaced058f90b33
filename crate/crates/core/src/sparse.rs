//! Compressed sparse row storage and Matrix Market export.

use std::collections::BTreeMap;
use std::io::Write;

use faer::Mat;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Duplicates are summed; explicit zeros after summation are dropped.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut rows: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); nrows];
        for &(i, j, v) in triplets {
            if i >= nrows || j >= ncols {
                return Err(Error::InvalidArgument(format!("triplet ({i},{j}) outside {nrows}x{ncols}")));
            }
            *rows[i].entry(j).or_insert(0.0) += v;
        }
        let mut indptr = Vec::with_capacity(nrows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for r in rows {
            for (j, v) in r {
                if v != 0.0 {
                    indices.push(j);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Ok(Self { nrows, ncols, indptr, indices, values })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.indptr[i]..self.indptr[i + 1];
        self.indices[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.nrows).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let r = self.indptr[i]..self.indptr[i + 1];
        match self.indices[r.clone()].binary_search(&j) {
            Ok(p) => self.values[r.start + p],
            Err(_) => 0.0,
        }
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate().take(self.nrows) {
            let mut acc = 0.0;
            for p in self.indptr[i]..self.indptr[i + 1] {
                acc += self.values[p] * x[self.indices[p]];
            }
            *yi = acc;
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::DimensionMismatch { expected: self.nrows, actual: other.nrows });
        }
        let mut t: Vec<_> = self.triplets().collect();
        t.extend(other.triplets().map(|(i, j, v)| (i, j, -v)));
        Self::from_triplets(self.nrows, self.ncols, &t)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> f64 {
        self.triplets().fold(0.0_f64, |m, (i, j, v)| m.max((v - self.get(j, i)).abs()))
    }

    pub fn to_dense(&self, guard: usize) -> Result<Mat<f64>> {
        if self.nrows.max(self.ncols) > guard {
            return Err(Error::SizeGuard { order: self.nrows.max(self.ncols), limit: guard });
        }
        let mut m = Mat::<f64>::zeros(self.nrows, self.ncols);
        for (i, j, v) in self.triplets() {
            m[(i, j)] = v;
        }
        Ok(m)
    }

    /// Coordinate format, `real symmetric`, lower triangle, 1-based.
    pub fn write_matrix_market<W: Write>(&self, mut w: W) -> Result<()> {
        if self.asymmetry() > 0.0 {
            return Err(Error::InvalidArgument("matrix is not symmetric".into()));
        }
        let lower: Vec<_> = self.triplets().filter(|(i, j, _)| j <= i).collect();
        writeln!(w, "%%MatrixMarket matrix coordinate real symmetric")?;
        writeln!(w, "{} {} {}", self.nrows, self.ncols, lower.len())?;
        for (i, j, v) in lower {
            writeln!(w, "{} {} {:?}", i + 1, j + 1, v)?;
        }
        Ok(())
    }

    pub fn from_dense(m: &Mat<f64>) -> Self {
        let mut t = Vec::new();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if m[(i, j)] != 0.0 {
                    t.push((i, j, m[(i, j)]));
                }
            }
        }
        Self::from_triplets(m.nrows(), m.ncols(), &t).expect("indices in range")
    }
}

/// Reads a `coordinate real` Matrix Market file (general or symmetric).
pub fn read_matrix_market(text: &str) -> Result<CsrMatrix> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty Matrix Market input".into()))?;
    let h: Vec<_> = header.split_whitespace().map(|t| t.to_ascii_lowercase()).collect();
    if h.len() < 5 || h[0] != "%%matrixmarket" || h[2] != "coordinate" || h[3] != "real" {
        return Err(Error::Parse(format!("unsupported header {header:?}")));
    }
    let symmetric = h[4] == "symmetric";
    let mut body = lines.filter(|l| !l.starts_with('%') && !l.trim().is_empty());
    let size = body.next().ok_or_else(|| Error::Parse("missing size line".into()))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad size line {size:?}"))))
        .collect::<Result<_>>()?;
    if dims.len() != 3 {
        return Err(Error::Parse(format!("bad size line {size:?}")));
    }
    let mut t = Vec::with_capacity(dims[2] * 2);
    for line in body {
        let f: Vec<_> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("bad entry {line:?}"));
        if f.len() != 3 {
            return Err(bad());
        }
        let i: usize = f[0].parse().map_err(|_| bad())?;
        let j: usize = f[1].parse().map_err(|_| bad())?;
        let v: f64 = f[2].parse().map_err(|_| bad())?;
        if i == 0 || j == 0 {
            return Err(bad());
        }
        t.push((i - 1, j - 1, v));
        if symmetric && i != j {
            t.push((j - 1, i - 1, v));
        }
    }
    CsrMatrix::from_triplets(dims[0], dims[1], &t)
}
