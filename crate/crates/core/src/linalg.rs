//! Coordinate vectors, ordered vector sequences, scalar matrices and the
//! exact elimination engine everything else sits on.
//!
//! Elimination runs plain Gauss-Jordan over GF(p) and fraction-free Bareiss
//! (followed by back-substitution) over the rationals. A [`VecSequence`] used
//! as a matrix contributes its vectors as *columns* unless stated otherwise,
//! so that `f = e A` means column `j` of `A` holds the coefficients of `f_j`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{mod_inv, FieldSpec, Scalar};

fn check_field(expected: FieldSpec, found: FieldSpec) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::FieldMismatch {
            left: expected,
            right: found,
        })
    }
}

/// A coordinate vector in `field^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(field: FieldSpec, entries: Vec<Scalar>) -> Result<Self> {
        for s in &entries {
            check_field(field, s.field())?;
        }
        Ok(Vector { field, entries })
    }

    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        Vector {
            field,
            entries: vec![field.zero(); dim],
        }
    }

    /// The `i`-th standard basis vector of `field^dim`.
    pub fn unit(field: FieldSpec, dim: usize, i: usize) -> Self {
        let mut v = Self::zero(field, dim);
        v.entries[i] = field.one();
        v
    }

    pub fn from_i64(field: FieldSpec, values: &[i64]) -> Self {
        Vector {
            field,
            entries: values.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Index of the first nonzero entry.
    pub fn leading_index(&self) -> Option<usize> {
        self.entries.iter().position(|s| !s.is_zero())
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    /// `self + c * other`; both must share field and dimension.
    pub fn add_scaled(&self, c: &Scalar, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector {
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + &(c * b))
                .collect(),
        }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// An ordered sequence `x_1, ..., x_n` of vectors in `field^m`.
///
/// Duplicates are allowed and order matters; equality is positionwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VecSequence {
    field: FieldSpec,
    ambient_dim: usize,
    items: Vec<Vector>,
}

impl VecSequence {
    pub fn new(field: FieldSpec, ambient_dim: usize, items: Vec<Vector>) -> Result<Self> {
        for v in &items {
            check_field(field, v.field())?;
            if v.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.dim(),
                });
            }
        }
        Ok(VecSequence {
            field,
            ambient_dim,
            items,
        })
    }

    pub fn empty(field: FieldSpec, ambient_dim: usize) -> Self {
        VecSequence {
            field,
            ambient_dim,
            items: Vec::new(),
        }
    }

    /// Builds a sequence from integer rows, one row per vector.
    pub fn from_rows_i64(field: FieldSpec, ambient_dim: usize, rows: &[&[i64]]) -> Result<Self> {
        let items = rows.iter().map(|r| Vector::from_i64(field, r)).collect();
        Self::new(field, ambient_dim, items)
    }

    /// The standard basis of `field^m`.
    pub fn standard_basis(field: FieldSpec, m: usize) -> Self {
        VecSequence {
            field,
            ambient_dim: m,
            items: (0..m).map(|i| Vector::unit(field, m, i)).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Vector] {
        &self.items
    }

    pub fn get(&self, i: usize) -> Option<&Vector> {
        self.items.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vector> {
        self.items.iter()
    }

    pub fn into_items(self) -> Vec<Vector> {
        self.items
    }

    /// Checks that `v` could be appended to this sequence.
    pub fn check_compatible(&self, v: &Vector) -> Result<()> {
        check_field(self.field, v.field())?;
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.dim(),
            });
        }
        Ok(())
    }

    pub fn check_same_space(&self, other: &VecSequence) -> Result<()> {
        check_field(self.field, other.field)?;
        if other.ambient_dim != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn pushed(&self, v: Vector) -> Result<VecSequence> {
        self.check_compatible(&v)?;
        let mut out = self.clone();
        out.items.push(v);
        Ok(out)
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &VecSequence) -> Result<VecSequence> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        out.items.extend(other.items.iter().cloned());
        Ok(out)
    }

    /// The subsequence at the given positions, in the given order.
    pub fn subsequence(&self, indices: &[usize]) -> Result<VecSequence> {
        let mut items = Vec::with_capacity(indices.len());
        for &i in indices {
            items.push(
                self.items
                    .get(i)
                    .ok_or(Error::IndexOutOfRange {
                        index: i,
                        len: self.len(),
                    })?
                    .clone(),
            );
        }
        Ok(VecSequence {
            field: self.field,
            ambient_dim: self.ambient_dim,
            items,
        })
    }

    /// The sequence with position `i` removed.
    pub fn without(&self, i: usize) -> Result<VecSequence> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        let mut out = self.clone();
        out.items.remove(i);
        Ok(out)
    }

    /// `m x n` matrix whose `j`-th column is `x_j`.
    pub fn to_columns(&self) -> ScalarMatrix {
        let (m, n) = (self.ambient_dim, self.len());
        let mut entries = Vec::with_capacity(m * n);
        for r in 0..m {
            for v in &self.items {
                entries.push(v.entries[r].clone());
            }
        }
        ScalarMatrix {
            field: self.field,
            rows: m,
            cols: n,
            entries,
        }
    }

    /// `n x m` matrix whose `j`-th row is `x_j`.
    pub fn to_rows(&self) -> ScalarMatrix {
        ScalarMatrix {
            field: self.field,
            rows: self.len(),
            cols: self.ambient_dim,
            entries: self
                .items
                .iter()
                .flat_map(|v| v.entries.iter().cloned())
                .collect(),
        }
    }
}

/// A row-major `rows x cols` matrix of scalars.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScalarMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        for s in &entries {
            check_field(field, s.field())?;
        }
        Ok(ScalarMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r.iter().map(|&v| field.from_i64(v)));
        }
        Ok(ScalarMatrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// The matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        for c in columns {
            if c.len() != rows {
                return Err(Error::LengthMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
        }
        let mut entries = Vec::with_capacity(rows * columns.len());
        for r in 0..rows {
            for c in columns {
                entries.push(c[r].clone());
            }
        }
        Self::new(field, rows, columns.len(), entries)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field mismatch in matrix update");
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let s = self.get(r, c);
                    if r == c {
                        s.is_one()
                    } else {
                        s.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        ScalarMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// The rows as a vector sequence in `field^cols`.
    pub fn row_sequence(&self) -> VecSequence {
        VecSequence {
            field: self.field,
            ambient_dim: self.cols,
            items: (0..self.rows)
                .map(|r| Vector {
                    field: self.field,
                    entries: self.row(r).to_vec(),
                })
                .collect(),
        }
    }

    pub fn mul_vector(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        for s in x {
            check_field(self.field, s.field())?;
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// `sum_j coeffs[j] * seq[j]`; the empty combination is the zero vector.
pub fn lin_comb(seq: &VecSequence, coeffs: &[Scalar]) -> Result<Vector> {
    if coeffs.len() != seq.len() {
        return Err(Error::LengthMismatch {
            expected: seq.len(),
            found: coeffs.len(),
        });
    }
    for c in coeffs {
        check_field(seq.field, c.field())?;
    }
    Ok(seq
        .items
        .iter()
        .zip(coeffs)
        .fold(Vector::zero(seq.field, seq.ambient_dim), |acc, (v, c)| {
            acc.add_scaled(c, v)
        }))
}

pub fn mat_product(a: &ScalarMatrix, b: &ScalarMatrix) -> Result<ScalarMatrix> {
    check_field(a.field, b.field)?;
    if a.cols != b.rows {
        return Err(Error::ShapeMismatch {
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows,
            right_cols: b.cols,
        });
    }
    let mut entries = Vec::with_capacity(a.rows * b.cols);
    for r in 0..a.rows {
        for c in 0..b.cols {
            let mut acc = a.field.zero();
            for k in 0..a.cols {
                acc = &acc + &(a.get(r, k) * b.get(k, c));
            }
            entries.push(acc);
        }
    }
    Ok(ScalarMatrix {
        field: a.field,
        rows: a.rows,
        cols: b.cols,
        entries,
    })
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedForm {
    pub matrix: ScalarMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl ReducedForm {
    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut pivots = self.pivots.iter().peekable();
        (0..self.matrix.cols)
            .filter(|c| {
                if pivots.peek() == Some(&c) {
                    pivots.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }
}

pub fn reduced_form(m: &ScalarMatrix) -> ReducedForm {
    match m.field.modulus() {
        Some(p) => reduce_prime(m, p as u64),
        None => reduce_rational(m),
    }
}

fn reduce_prime(m: &ScalarMatrix, p: u64) -> ReducedForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<u64> = m
        .entries
        .iter()
        .map(|s| s.residue().expect("prime-field entry") as u64)
        .collect();
    let mut pivots = Vec::new();
    let mut k = 0;
    for c in 0..cols {
        if k == rows {
            break;
        }
        let Some(r) = (k..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if r != k {
            for j in 0..cols {
                a.swap(r * cols + j, k * cols + j);
            }
        }
        let inv = mod_inv(a[k * cols + c], p);
        for j in c..cols {
            a[k * cols + j] = a[k * cols + j] * inv % p;
        }
        for i in 0..rows {
            let factor = a[i * cols + c];
            if i == k || factor == 0 {
                continue;
            }
            for j in c..cols {
                let sub = factor * a[k * cols + j] % p;
                a[i * cols + j] = (a[i * cols + j] + p - sub) % p;
            }
        }
        pivots.push(c);
        k += 1;
    }
    let pu = p as u32;
    ReducedForm {
        matrix: ScalarMatrix {
            field: m.field,
            rows,
            cols,
            entries: a
                .into_iter()
                .map(|v| Scalar::gf_unchecked(pu, v as u32))
                .collect(),
        },
        rank: pivots.len(),
        pivots,
    }
}

/// Fraction-free forward elimination on an integer matrix.
///
/// Rows are brought to echelon form in place; every division by the previous
/// pivot is exact. Returns the pivot columns.
pub(crate) fn bareiss_echelon(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut k = 0;
    for c in 0..cols {
        if k == rows {
            break;
        }
        let Some(r) = (k..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(r, k);
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let num = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                debug_assert!(num.is_multiple_of(&prev));
                row[j] = num / &prev;
            }
        }
        prev = a[k][c].clone();
        pivots.push(c);
        k += 1;
    }
    pivots
}

fn reduce_rational(m: &ScalarMatrix) -> ReducedForm {
    let (rows, cols) = (m.rows, m.cols);
    // Clearing denominators row by row leaves the row space unchanged.
    let mut ints: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let row: Vec<&BigRational> = m
                .row(r)
                .iter()
                .map(|s| s.as_rational().expect("rational entry"))
                .collect();
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let pivots = bareiss_echelon(&mut ints, cols);
    let rank = pivots.len();

    let mut q: Vec<Vec<BigRational>> = ints
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for row in q.iter_mut().skip(rank) {
        debug_assert!(row.iter().all(Zero::is_zero));
        row.iter_mut().for_each(|x| *x = BigRational::zero());
    }
    for k in (0..rank).rev() {
        let pc = pivots[k];
        let inv = q[k][pc].recip();
        for x in q[k][pc..].iter_mut() {
            *x = &*x * &inv;
        }
        let (above, rest) = q.split_at_mut(k);
        let pivot_row = &rest[0];
        for row in above.iter_mut() {
            let factor = std::mem::take(&mut row[pc]);
            if factor.is_zero() {
                continue;
            }
            for j in pc + 1..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &factor * &pivot_row[j];
                }
            }
        }
    }
    ReducedForm {
        matrix: ScalarMatrix {
            field: m.field,
            rows,
            cols,
            entries: q.into_iter().flatten().map(Scalar::from_rational).collect(),
        },
        pivots,
        rank,
    }
}

/// Coefficients expressing `target` in terms of `seq`, if it lies in the span.
///
/// Free variables are fixed to zero, so the answer is deterministic; for a
/// frame there are no free variables and the answer is the unique one.
pub fn solve_in_span(seq: &VecSequence, target: &Vector) -> Result<Option<Vec<Scalar>>> {
    seq.check_compatible(target)?;
    let n = seq.len();
    let augmented = seq.pushed(target.clone())?.to_columns();
    let rf = reduced_form(&augmented);
    if rf.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut coeffs = vec![seq.field.zero(); n];
    for (k, &pc) in rf.pivots.iter().enumerate() {
        coeffs[pc] = rf.matrix.get(k, n).clone();
    }
    Ok(Some(coeffs))
}

/// A frame spanning `{x : M x = 0}`, one vector per free column of the
/// reduced form with that coordinate set to 1.
pub fn kernel_basis(m: &ScalarMatrix) -> VecSequence {
    let rf = reduced_form(m);
    let field = m.field;
    let items = rf
        .free_columns()
        .into_iter()
        .map(|free| {
            let mut v = Vector::zero(field, m.cols);
            v.entries[free] = field.one();
            for (k, &pc) in rf.pivots.iter().enumerate() {
                v.entries[pc] = -rf.matrix.get(k, free);
            }
            v
        })
        .collect();
    VecSequence {
        field,
        ambient_dim: m.cols,
        items,
    }
}

/// Matrix rank via the reduced form.
pub fn rank(m: &ScalarMatrix) -> usize {
    reduced_form(m).rank
}
