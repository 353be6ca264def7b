//! Dense matrices over arbitrary-precision rationals with exact rank,
//! determinant, nullity and null-space computation.
//!
//! Everything here is exact: no floating point anywhere. Rank and
//! determinant run a fraction-free (Bareiss-style) elimination when the
//! input is integral, falling back to rational Gaussian elimination
//! otherwise. An `i128` fast path handles the small integer matrices that
//! dominate the enumeration workloads; any overflow falls back to the
//! big-integer path.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d` in lowest terms.
pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl ExactMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| rat(rows[i][j]))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rat::one() } else { Rat::zero() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Rat::zero())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Exact rank via fraction-free elimination. Integer matrices that fit
    /// in `i128` take the machine-word path; everything else runs over
    /// rationals with bit-length pivoting.
    pub fn rank(&self) -> usize {
        if let Some(ints) = self.to_i128_entries() {
            if let Some(r) = bareiss_rank_i128(ints, self.rows, self.cols) {
                return r;
            }
        }
        self.rank_rational()
    }

    fn rank_rational(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let piv = (r..rows)
                .filter(|&i| !m[i * cols + c].is_zero())
                .min_by_key(|&i| bitlen(&m[i * cols + c]));
            let Some(p) = piv else { continue };
            if p != r {
                for j in 0..cols {
                    m.swap(r * cols + j, p * cols + j);
                }
            }
            for i in (r + 1)..rows {
                if m[i * cols + c].is_zero() {
                    continue;
                }
                let factor = &m[i * cols + c] / &m[r * cols + c];
                for j in c..cols {
                    let sub = &factor * &m[r * cols + j];
                    m[i * cols + j] = &m[i * cols + j] - sub;
                }
            }
            r += 1;
        }
        r
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Exact determinant. Integer inputs run the fraction-free path
    /// directly; rational inputs have denominators cleared per row with the
    /// scaling tracked exactly.
    pub fn determinant(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "determinant requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut ints = Vec::with_capacity(n * n);
        let mut scale = BigInt::one();
        for i in 0..n {
            let lcm = (0..n).fold(BigInt::one(), |acc, j| acc.lcm(self.get(i, j).denom()));
            for j in 0..n {
                let e = self.get(i, j);
                ints.push(e.numer() * (&lcm / e.denom()));
            }
            scale *= lcm;
        }
        let det = bareiss_det_bigint(ints, n);
        Ok(Rat::new(det, scale))
    }

    /// Basis of the right null space. Vectors come from the reduced row
    /// echelon form with each free variable set to 1, ordered by free
    /// column, so the output is deterministic. Every vector satisfies
    /// `M x = 0` exactly.
    pub fn null_space_basis(&self) -> Vec<Vec<Rat>> {
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let piv = (r..rows)
                .filter(|&i| !m[i * cols + c].is_zero())
                .min_by_key(|&i| bitlen(&m[i * cols + c]));
            let Some(p) = piv else { continue };
            if p != r {
                for j in 0..cols {
                    m.swap(r * cols + j, p * cols + j);
                }
            }
            let inv = {
                let v = m[r * cols + c].clone();
                Rat::one() / v
            };
            for j in c..cols {
                let scaled = &m[r * cols + j] * &inv;
                m[r * cols + j] = scaled;
            }
            for i in 0..rows {
                if i == r || m[i * cols + c].is_zero() {
                    continue;
                }
                let factor = m[i * cols + c].clone();
                for j in c..cols {
                    let sub = &factor * &m[r * cols + j];
                    m[i * cols + j] = &m[i * cols + j] - sub;
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for f in 0..cols {
            if pivot_cols.contains(&f) {
                continue;
            }
            let mut x = vec![Rat::zero(); cols];
            x[f] = Rat::one();
            for &(i, c) in &pivots {
                x[c] = -m[i * cols + f].clone();
            }
            basis.push(x);
        }
        basis
    }

    /// `M x`, exact.
    pub fn mul_vec(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Rat::zero(), |acc, j| acc + self.get(i, j) * &x[j])
            })
            .collect())
    }

    /// Applies elementary row operations in order and returns the result.
    pub fn row_reduce(&self, ops: &[RowOp]) -> Result<ExactMatrix> {
        let mut out = self.clone();
        let cols = out.cols;
        for op in ops {
            match op {
                RowOp::Swap(a, b) => {
                    out.check_row(*a)?;
                    out.check_row(*b)?;
                    if a != b {
                        for j in 0..cols {
                            out.data.swap(a * cols + j, b * cols + j);
                        }
                    }
                }
                RowOp::Scale(i, s) => {
                    out.check_row(*i)?;
                    if s.is_zero() {
                        return Err(Error::DegenerateOp(format!(
                            "scaling row {i} by zero does not preserve rank"
                        )));
                    }
                    for j in 0..cols {
                        let v = &out.data[i * cols + j] * s;
                        out.data[i * cols + j] = v;
                    }
                }
                RowOp::AddMultiple { src, factor, dst } => {
                    out.check_row(*src)?;
                    out.check_row(*dst)?;
                    if src == dst {
                        return Err(Error::DegenerateOp(
                            "adding a row to itself is a scaling, not an addition".into(),
                        ));
                    }
                    for j in 0..cols {
                        let v = &out.data[dst * cols + j] + factor * &out.data[src * cols + j];
                        out.data[dst * cols + j] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i >= self.rows {
            Err(domain(format!(
                "row index {i} out of range for {} rows",
                self.rows
            )))
        } else {
            Ok(())
        }
    }

    fn to_i128_entries(&self) -> Option<Vec<i128>> {
        self.data
            .iter()
            .map(|r| {
                if r.denom().is_one() {
                    r.numer().to_i128()
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Elementary row operation for [`ExactMatrix::row_reduce`].
#[derive(Clone, Debug)]
pub enum RowOp {
    Swap(usize, usize),
    /// `s * r_i -> r_i`, `s` nonzero.
    Scale(usize, Rat),
    /// `r_dst + factor * r_src -> r_dst`.
    AddMultiple { src: usize, factor: Rat, dst: usize },
}

impl fmt::Display for ExactMatrix {
    /// Text format: `<rows> <cols>` then one line per row of
    /// space-separated rationals, integers printed bare.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn bitlen(r: &Rat) -> u64 {
    r.numer().bits() + r.denom().bits()
}

/// Exact rank of an integer matrix over `i128`, fraction-free. Returns
/// `None` on arithmetic overflow so the caller can retry in big integers.
pub(crate) fn bareiss_rank_i128(mut m: Vec<i128>, rows: usize, cols: usize) -> Option<usize> {
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let piv = (r..rows)
            .filter(|&i| m[i * cols + c] != 0)
            .min_by_key(|&i| m[i * cols + c].unsigned_abs());
        let Some(p) = piv else { continue };
        if p != r {
            for j in 0..cols {
                m.swap(r * cols + j, p * cols + j);
            }
        }
        let pv = m[r * cols + c];
        for i in (r + 1)..rows {
            let head = m[i * cols + c];
            for j in (c + 1)..cols {
                let a = m[i * cols + j].checked_mul(pv)?;
                let b = head.checked_mul(m[r * cols + j])?;
                m[i * cols + j] = a.checked_sub(b)? / prev;
            }
            m[i * cols + c] = 0;
        }
        prev = pv;
        r += 1;
    }
    Some(r)
}

/// Exact rank of an integer matrix; overflow-proof.
pub fn rank_of_int_matrix(rows: usize, cols: usize, data: &[i64]) -> usize {
    assert_eq!(data.len(), rows * cols);
    let ints: Vec<i128> = data.iter().map(|&v| v as i128).collect();
    if let Some(r) = bareiss_rank_i128(ints, rows, cols) {
        return r;
    }
    ExactMatrix::from_fn(rows, cols, |i, j| rat(data[i * cols + j])).rank()
}

fn bareiss_det_bigint(mut m: Vec<BigInt>, n: usize) -> BigInt {
    let mut prev = BigInt::one();
    let mut sign = 1i8;
    for k in 0..n {
        let piv = (k..n)
            .filter(|&i| !m[i * n + k].is_zero())
            .min_by_key(|&i| m[i * n + k].abs().bits());
        let Some(p) = piv else { return BigInt::zero() };
        if p != k {
            for j in 0..n {
                m.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        let pv = m[k * n + k].clone();
        for i in (k + 1)..n {
            let head = m[i * n + k].clone();
            for j in (k + 1)..n {
                let v = (&m[i * n + j] * &pv - &head * &m[k * n + j]) / &prev;
                m[i * n + j] = v;
            }
            m[i * n + k] = BigInt::zero();
        }
        prev = pv;
    }
    let det = m[(n - 1) * n + (n - 1)].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}
