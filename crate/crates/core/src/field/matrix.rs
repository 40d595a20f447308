use super::{Field, FieldError, Scalar};
use std::fmt;

/// Dense row-major matrix over a single number field.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    field: Field,
}

/// Outcome of [`Matrix::solve`].
#[derive(Debug, Clone, PartialEq)]
pub enum Solve {
    /// A solution; free variables (if any) are set to zero.
    Solution(Vec<Scalar>),
    Inconsistent,
}

/// Reduced row echelon form with its pivot columns.
struct Echelon {
    matrix: Matrix,
    pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(
        field: &Field,
        rows: usize,
        cols: usize,
        data: Vec<Scalar>,
    ) -> Result<Self, FieldError> {
        if data.len() != rows * cols {
            return Err(FieldError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|s| !s.field().same(field)) {
            return Err(FieldError::FieldMismatch);
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            field: field.clone(),
        })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Scalar>]) -> Result<Self, FieldError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(FieldError::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, rows.len(), cols, rows.concat())
    }

    pub fn from_columns(field: &Field, columns: &[Vec<Scalar>]) -> Result<Self, FieldError> {
        Ok(Matrix::from_rows(field, columns)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
            field: self.field.clone(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, FieldError> {
        if v.len() != self.cols {
            return Err(FieldError::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| dot(&self.data[i * self.cols..(i + 1) * self.cols], v))
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        if self.cols != other.rows {
            return Err(FieldError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let t = other.transpose();
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                data.push(dot(
                    &self.data[i * self.cols..(i + 1) * self.cols],
                    &t.data[j * t.cols..(j + 1) * t.cols],
                ));
            }
        }
        Matrix::new(&self.field, self.rows, other.cols, data)
    }

    /// Gauss-Jordan elimination. The pivot in each column is the first
    /// nonzero entry at or below the current row.
    fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inverse().expect("pivot is nonzero");
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.data[row * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(row, j));
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right nullspace. One vector per free column, in increasing
    /// column order, with that free coordinate equal to 1 and the other free
    /// coordinates zero.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let Echelon { matrix: r, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    pub fn solve(&self, b: &[Scalar]) -> Result<Solve, FieldError> {
        if b.len() != self.rows {
            return Err(FieldError::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut augmented = Vec::with_capacity(self.rows);
        for (i, bi) in b.iter().enumerate() {
            let mut row = self.row(i);
            row.push(bi.clone());
            augmented.push(row);
        }
        let aug = if self.rows == 0 {
            Matrix::zeros(&self.field, 0, self.cols + 1)
        } else {
            Matrix::from_rows(&self.field, &augmented)?
        };
        let Echelon { matrix: r, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solve::Inconsistent);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Ok(Solve::Solution(x))
    }

    /// The unique solution of a square nonsingular system.
    pub fn solve_unique(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.rows != self.cols || self.rank() != self.cols {
            return None;
        }
        match self.solve(b) {
            Ok(Solve::Solution(x)) => Some(x),
            _ => None,
        }
    }

    pub fn determinant(&self) -> Option<Scalar> {
        if self.rows != self.cols {
            return None;
        }
        let mut m = self.clone();
        let mut det = self.field.one();
        for col in 0..m.cols {
            let p = (col..m.rows).find(|&i| !m.get(i, col).is_zero())?;
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inverse().expect("pivot is nonzero");
            for i in col + 1..m.rows {
                let factor = m.get(i, col) * &inv;
                for j in col..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(col, j));
                    m.data[i * m.cols + j] = v;
                }
            }
        }
        Some(det)
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let field = a.first().or(b.first()).map(|s| s.field().clone());
    let mut acc = match field {
        Some(f) => f.zero(),
        None => return Field::rationals().zero(),
    };
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn sqrt2() -> Field {
        Field::new(vec![q(-2, 1), q(0, 1), q(1, 1)], (q(1, 1), q(2, 1))).unwrap()
    }

    fn mat(f: &Field, rows: &[&[&str]]) -> Matrix {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|e| f.parse(e).unwrap()).collect())
            .collect();
        Matrix::from_rows(f, &rows).unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let f = Field::rationals();
        assert!(Matrix::identity(&f, 2).kernel().is_empty());
    }

    #[test]
    fn right_triangle_kernel() {
        let f = sqrt2();
        // columns (1,0), (0,1), (-t,-s) with s = 1, t = θ
        let pi = mat(&f, &[&["1", "0", "-θ"], &["0", "1", "-1"]]);
        let k = pi.kernel();
        assert_eq!(k, vec![vec![f.generator(), f.one(), f.one()]]);
    }

    #[test]
    fn zero_matrix_rank() {
        let f = Field::rationals();
        assert_eq!(Matrix::zeros(&f, 3, 3).rank(), 0);
        assert_eq!(Matrix::zeros(&f, 3, 3).kernel().len(), 3);
    }

    #[test]
    fn solve_identity() {
        let f = sqrt2();
        let s = f.generator();
        let x = Matrix::identity(&f, 2)
            .solve(&[s.clone(), f.zero()])
            .unwrap();
        assert_eq!(x, Solve::Solution(vec![s, f.zero()]));
    }

    #[test]
    fn inconsistent_and_mismatch() {
        let f = Field::rationals();
        let m = mat(&f, &[&["1", "1"], &["2", "2"]]);
        assert_eq!(m.solve(&[f.one(), f.one()]).unwrap(), Solve::Inconsistent);
        assert!(matches!(
            m.solve(&[f.one()]),
            Err(FieldError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn determinant_matches_hand_value() {
        let f = sqrt2();
        let m = mat(&f, &[&["1", "θ"], &["θ", "3"]]);
        assert_eq!(m.determinant().unwrap(), f.from_int(1));
    }
}
