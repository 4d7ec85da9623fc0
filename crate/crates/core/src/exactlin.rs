//! Exact scalars (rationals or prime fields) and the linear algebra used by
//! every other module: RREF, deterministic solving, kernel bases and row
//! spaces with canonical coset representatives.
//!
//! Determinism matters here: downstream coset coordinates (normal forms,
//! `HH_0` classes) are only test-stable because RREF pivoting always takes
//! the first nonzero candidate and free variables are always zeroed.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The ground field: the rationals, or `F_p` for a prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::InvalidPresentation(format!("modulus {p} is not prime")))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// One exact field element. Rationals are kept in lowest terms with a
/// positive denominator (num-rational maintains this); residues live in
/// `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { val: u64, p: u64 },
}

impl Scalar {
    pub fn zero(field: &FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Mod { val: 0, p: *p },
        }
    }

    pub fn one(field: &FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime(p) => Scalar::Mod { val: 1 % *p, p: *p },
        }
    }

    pub fn from_integer(n: i64, field: &FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Mod { val: n.rem_euclid(*p as i64) as u64, p: *p },
        }
    }

    /// `n/d` in the field; for prime fields this is `n * d^{-1}`.
    pub fn from_fraction(n: i64, d: i64, field: &FieldSpec) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidPresentation("zero denominator".into()));
        }
        match field {
            FieldSpec::Rationals => {
                Ok(Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d))))
            }
            FieldSpec::Prime(_) => {
                let den = Scalar::from_integer(d, field);
                if den.is_zero() {
                    return Err(Error::InvalidPresentation(format!(
                        "denominator {d} vanishes in {field}"
                    )));
                }
                Ok(&Scalar::from_integer(n, field) * &den.inv())
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Mod { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { val, p } => *val == 1 % *p,
        }
    }

    /// Multiplicative inverse. Panics on zero; callers check first.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                Scalar::Rat(r.recip())
            }
            Scalar::Mod { val, p } => {
                assert!(*val != 0, "inverse of zero");
                Scalar::Mod { val: mod_pow(*val, *p - 2, *p), p: *p }
            }
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r.clone()),
            Scalar::Mod { val, p } => Scalar::Mod { val: if *val == 0 { 0 } else { p - val }, p: *p },
        }
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { val: a, p }, Scalar::Mod { val: b, p: q }) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Mod { val: ((*a as u128 + *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => panic!("mixed scalar fields"),
        }
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &rhs.neg()
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { val: a, p }, Scalar::Mod { val: b, p: q }) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Mod { val: ((*a as u128 * *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => panic!("mixed scalar fields"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { val, .. } => write!(f, "{val}"),
        }
    }
}

/// Dense row-major matrix of exact scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: &FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row);
        }
        ScalarMatrix { field: field.clone(), rows: r, cols: c, entries }
    }

    pub fn from_fn(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Column vector from a coordinate slice.
    pub fn column(field: &FieldSpec, v: &[Scalar]) -> Self {
        ScalarMatrix { field: field.clone(), rows: v.len(), cols: 1, entries: v.to_vec() }
    }

    /// Row vector from a coordinate slice.
    pub fn row_vector(field: &FieldSpec, v: &[Scalar]) -> Self {
        ScalarMatrix { field: field.clone(), rows: 1, cols: v.len(), entries: v.to_vec() }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> ScalarMatrix {
        ScalarMatrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ScalarMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ScalarMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> ScalarMatrix {
        ScalarMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> ScalarMatrix {
        ScalarMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = ScalarMatrix::zeros(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + &(a * b);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Row vector times matrix; the basic "apply action" step.
    pub fn apply_row(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![Scalar::zero(&self.field); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() {
                    out[j] = &out[j] + &(c * e);
                }
            }
        }
        out
    }

    /// Stack `self` over `other`.
    pub fn vstack(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        ScalarMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn hstack(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch");
        ScalarMatrix::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Block-diagonal of the given matrices.
    pub fn block_diag(field: &FieldSpec, blocks: &[&ScalarMatrix]) -> ScalarMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = ScalarMatrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced row echelon form together with the pivot column indices.
    /// Pivoting takes the first nonzero entry, so the result is canonical.
    pub fn rref(&self) -> (ScalarMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(pr) = pivot_row else { continue };
            if pr != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(row, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = m.get(row, col).inv();
            for j in 0..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for j in 0..m.cols {
                    let v = m.get(r, j) - &(&f * m.get(row, j));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// One exact solution `X` of `self * X = rhs`, with free variables set
    /// to zero, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &ScalarMatrix) -> Result<Option<ScalarMatrix>> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, rhs.rows
            )));
        }
        let aug = self.hstack(rhs);
        let (red, piv) = aug.rref();
        // A pivot landing in the rhs block means an inconsistent row.
        if piv.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = ScalarMatrix::zeros(&self.field, self.cols, rhs.cols);
        for (r, &pc) in piv.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, red.get(r, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Canonical basis of the null space `{v : self * v = 0}` as column
    /// vectors (one per free column, free variable set to one).
    pub fn kernel_basis(&self) -> Vec<ScalarMatrix> {
        let (red, piv) = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in piv.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = ScalarMatrix::zeros(&self.field, self.cols, 1);
            v.set(free, 0, Scalar::one(&self.field));
            for (r, &pc) in piv.iter().enumerate() {
                v.set(pc, 0, red.get(r, free).neg());
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<ScalarMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let x = self.solve(&ScalarMatrix::identity(&self.field, self.rows)).expect("square");
        x.filter(|m| {
            // solve() zeroes free variables, so verify.
            self.mul(m) == ScalarMatrix::identity(&self.field, self.rows)
        })
    }
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `k^n` kept as an RREF row basis. Supplies canonical coset
/// representatives: reducing a vector zeroes its pivot coordinates, and the
/// surviving non-pivot coordinates are the canonical quotient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &FieldSpec, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &FieldSpec, ambient: usize) -> Self {
        let mut s = Self::zero(field, ambient);
        for i in 0..ambient {
            let mut v = vec![Scalar::zero(field); ambient];
            v[i] = Scalar::one(field);
            s.insert(&v);
        }
        s
    }

    pub fn from_vectors<'a>(
        field: &FieldSpec,
        ambient: usize,
        vecs: impl IntoIterator<Item = &'a [Scalar]>,
    ) -> Self {
        let mut s = Self::zero(field, ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Ambient coordinates that are not pivots; these index the canonical
    /// complement (quotient coordinates).
    pub fn complement_positions(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// Canonical representative of `v + self`: pivot coordinates eliminated.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if w[pc].is_zero() {
                continue;
            }
            let f = w[pc].clone();
            for j in 0..self.ambient {
                if !row[j].is_zero() {
                    w[j] = &w[j] - &(&f * &row[j]);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Coordinates of `v + self` in the canonical complement positions.
    pub fn coset_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let w = self.reduce(v);
        self.complement_positions().into_iter().map(|i| w[i].clone()).collect()
    }

    /// Insert a vector, keeping the RREF invariant. Returns true when the
    /// vector enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut w = self.reduce(v);
        let Some(lead) = w.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = w[lead].inv();
        for s in w.iter_mut() {
            *s = &*s * &inv;
        }
        // Eliminate the new pivot from existing rows.
        for row in self.rows.iter_mut() {
            if row[lead].is_zero() {
                continue;
            }
            let f = row[lead].clone();
            for j in 0..self.ambient {
                if !w[j].is_zero() {
                    row[j] = &row[j] - &(&f * &w[j]);
                }
            }
        }
        let at = self.pivots.iter().position(|&p| p > lead).unwrap_or(self.pivots.len());
        self.pivots.insert(at, lead);
        self.rows.insert(at, w);
        true
    }

    /// Span of this subspace together with `other`.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    /// Grow the ambient space by appending zero coordinates. Existing rows
    /// keep their pivots, so the RREF invariant is preserved.
    pub fn extend_ambient(&mut self, new_ambient: usize) {
        assert!(new_ambient >= self.ambient, "ambient can only grow");
        for row in self.rows.iter_mut() {
            row.resize(new_ambient, Scalar::zero(&self.field));
        }
        self.ambient = new_ambient;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn qi(n: i64) -> Scalar {
        Scalar::from_integer(n, &FieldSpec::Rationals)
    }

    fn mat(rows: Vec<Vec<i64>>) -> ScalarMatrix {
        ScalarMatrix::from_rows(&q(), rows.into_iter().map(|r| r.into_iter().map(qi).collect()).collect())
    }

    #[test]
    fn rref_identity_is_fixed() {
        let m = ScalarMatrix::identity(&q(), 2);
        let (r, piv) = m.rref();
        assert_eq!(r, m);
        assert_eq!(piv, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one() {
        let m = mat(vec![vec![1, 2], vec![2, 4]]);
        let (r, piv) = m.rref();
        assert_eq!(r, mat(vec![vec![1, 2], vec![0, 0]]));
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn rref_mod_two() {
        let f2 = FieldSpec::Prime(2);
        let m = ScalarMatrix::from_rows(
            &f2,
            vec![
                vec![Scalar::from_integer(1, &f2), Scalar::from_integer(1, &f2)],
                vec![Scalar::from_integer(1, &f2), Scalar::from_integer(0, &f2)],
            ],
        );
        let (r, piv) = m.rref();
        assert_eq!(r, ScalarMatrix::identity(&f2, 2));
        assert_eq!(piv, vec![0, 1]);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let m = ScalarMatrix::identity(&q(), 3);
        let rhs = mat(vec![vec![4], vec![5], vec![6]]);
        assert_eq!(m.solve(&rhs).unwrap().unwrap(), rhs);
    }

    #[test]
    fn solve_zeroes_free_variables() {
        let m = mat(vec![vec![1, 1]]);
        let rhs = mat(vec![vec![1]]);
        let x = m.solve(&rhs).unwrap().unwrap();
        assert_eq!(x, mat(vec![vec![1], vec![0]]));
    }

    #[test]
    fn solve_inconsistent_is_none() {
        let m = mat(vec![vec![1], vec![1]]);
        let rhs = mat(vec![vec![1], vec![2]]);
        assert_eq!(m.solve(&rhs).unwrap(), None);
    }

    #[test]
    fn solve_dimension_mismatch_errors() {
        let m = mat(vec![vec![1, 1]]);
        let rhs = mat(vec![vec![1], vec![2]]);
        assert!(m.solve(&rhs).is_err());
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(ScalarMatrix::identity(&q(), 3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_is_standard_basis() {
        let m = ScalarMatrix::zeros(&q(), 2, 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], mat(vec![vec![1], vec![0]]));
        assert_eq!(k[1], mat(vec![vec![0], vec![1]]));
    }

    #[test]
    fn kernel_single_equation_canonical() {
        let m = mat(vec![vec![1, 2]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], mat(vec![vec![-2], vec![1]]));
    }

    #[test]
    fn subspace_coset_coordinates() {
        let mut s = Subspace::zero(&q(), 3);
        s.insert(&[qi(1), qi(1), qi(0)]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.complement_positions(), vec![1, 2]);
        let coords = s.coset_coords(&[qi(2), qi(5), qi(7)]);
        assert_eq!(coords, vec![qi(3), qi(7)]);
        assert!(s.contains(&[qi(3), qi(3), qi(0)]));
    }

    #[test]
    fn prime_field_inverse() {
        let f5 = FieldSpec::Prime(5);
        let three = Scalar::from_integer(3, &f5);
        assert!((&three * &three.inv()).is_one());
        assert_eq!(Scalar::from_fraction(1, 2, &f5).unwrap(), Scalar::from_integer(3, &f5));
    }

    #[test]
    fn fieldspec_rejects_composite_modulus() {
        assert!(FieldSpec::prime(6).is_err());
        assert!(FieldSpec::prime(7).is_ok());
    }
}
