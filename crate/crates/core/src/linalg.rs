//! Sparse exact linear algebra over the rationals, plus a modular rank used
//! as a fast certificate for large systems.
//!
//! Elimination picks the remaining row with the fewest nonzeros and, inside
//! it, the column that occurs in the fewest remaining rows. Ties break on the
//! smallest index, so results are deterministic for a fixed input ordering.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type SparseVector = BTreeMap<usize, Scalar>;

#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Scalar>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.data[i].insert(i, Scalar::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.add_to(r, c, v.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Scalar>> =
            rows.iter().map(|row| row.iter().map(|&v| crate::scalar::int(v)).collect()).collect();
        Self::from_dense(&dense)
    }

    /// Stacks sparse vectors as rows.
    pub fn from_rows(cols: usize, rows: Vec<SparseVector>) -> Self {
        let mut m = Self::new(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, v) in row {
                assert!(c < cols, "column {c} out of range");
                if !v.is_zero() {
                    m.data[r].insert(c, v);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r].get(&c).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, Scalar> {
        &self.data[r]
    }

    /// Adds `value` to entry `(r, c)`, dropping the entry if it cancels.
    pub fn add_to(&mut self, r: usize, c: usize, value: Scalar) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of bounds");
        if value.is_zero() {
            return;
        }
        let row = &mut self.data[r];
        match row.get_mut(&c) {
            Some(existing) => {
                *existing += value;
                if existing.is_zero() {
                    row.remove(&c);
                }
            }
            None => {
                row.insert(c, value);
            }
        }
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of bounds");
        if value.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, value);
        }
    }

    /// Iterates `(row, col, value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            t.data[c].insert(r, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::new(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    *acc.entry(*c).or_insert_with(Scalar::zero) += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[r] = acc;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        for (r, c, v) in other.iter() {
            out.add_to(r, c, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        if factor.is_zero() {
            return Self::new(self.rows, self.cols);
        }
        let mut out = self.clone();
        for row in &mut out.data {
            for v in row.values_mut() {
                *v *= factor;
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &SparseVector) -> SparseVector {
        let mut y = SparseVector::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = Scalar::zero();
            for (c, a) in row {
                if let Some(b) = x.get(c) {
                    acc += a * b;
                }
            }
            if !acc.is_zero() {
                y.insert(r, acc);
            }
        }
        y
    }

    /// True iff every nonzero entry sits on the diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.iter().all(|(r, c, _)| r == c)
    }

    /// Flattens row-major into a vector of length `rows * cols`.
    pub fn flatten(&self) -> SparseVector {
        self.iter().map(|(r, c, v)| (r * self.cols + c, v.clone())).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c)).collect()).collect()
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{}, {} nnz)", self.rows, self.cols, self.nnz())
    }
}

/// Dense rational grid, one row per line; meant for debugging.
impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            self.to_dense().iter().map(|row| row.iter().map(ToString::to_string).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) trait Field {
    type Elem: Clone;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

pub(crate) struct Rationals;

impl Field for Rationals {
    type Elem = Scalar;
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        a.recip()
    }
}

pub(crate) struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub(crate) fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub(crate) fn reduce(&self, value: &Scalar) -> Result<u64> {
        let p = BigInt::from(self.p);
        let den = value.denom().mod_floor(&p);
        if den.is_zero() {
            return Err(Error::DenominatorDivisibleByPrime(self.p));
        }
        let num = value.numer().mod_floor(&p);
        let num = num.to_u64().expect("residue fits");
        let den = den.to_u64().expect("residue fits");
        Ok(self.mul(&num, &self.inv(&den)))
    }
}

impl Field for PrimeField {
    type Elem = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        pow_mod(*a, self.p - 2, self.p)
    }
}

/// Result of forward elimination: normalized pivot rows in pivot order.
/// A pivot row never contains the pivot column of an earlier pivot.
pub(crate) struct Echelon<E> {
    pub(crate) pivots: Vec<(usize, BTreeMap<usize, E>)>,
    /// Some row reduced to entries only in non-pivotable columns.
    pub(crate) inconsistent: bool,
}

/// Forward elimination. Only columns `< pivotable` may become pivots; the
/// remaining columns (a right-hand side, for instance) are carried along.
pub(crate) fn eliminate<F: Field>(
    field: &F,
    rows: Vec<BTreeMap<usize, F::Elem>>,
    ncols: usize,
    pivotable: usize,
) -> Echelon<F::Elem> {
    let mut rows: Vec<BTreeMap<usize, F::Elem>> = rows
        .into_iter()
        .map(|mut r| {
            r.retain(|_, v| !field.is_zero(v));
            r
        })
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    let mut active: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, row) in rows.iter().enumerate() {
        if row.is_empty() {
            continue;
        }
        for c in row.keys() {
            col_rows[*c].insert(i);
        }
        active.insert((row.len(), i));
    }

    let mut pivots = Vec::new();
    let mut inconsistent = false;
    while let Some(&(len, r)) = active.iter().next() {
        active.remove(&(len, r));
        let pivot_col = rows[r].keys().copied().filter(|c| *c < pivotable).min_by_key(|c| (col_rows[*c].len(), *c));
        let Some(pc) = pivot_col else {
            inconsistent = true;
            for c in rows[r].keys() {
                col_rows[*c].remove(&r);
            }
            continue;
        };

        let inv = field.inv(&rows[r][&pc]);
        let mut pivot_row = std::mem::take(&mut rows[r]);
        for v in pivot_row.values_mut() {
            *v = field.mul(v, &inv);
        }
        for c in pivot_row.keys() {
            col_rows[*c].remove(&r);
        }

        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for t in targets {
            let old_len = rows[t].len();
            let factor = rows[t][&pc].clone();
            for (c, v) in &pivot_row {
                let delta = field.mul(&factor, v);
                let updated = match rows[t].get(c) {
                    Some(existing) => field.sub(existing, &delta),
                    None => field.neg(&delta),
                };
                if field.is_zero(&updated) {
                    rows[t].remove(c);
                    col_rows[*c].remove(&t);
                } else {
                    rows[t].insert(*c, updated);
                    col_rows[*c].insert(t);
                }
            }
            active.remove(&(old_len, t));
            if !rows[t].is_empty() {
                active.insert((rows[t].len(), t));
            }
        }
        pivots.push((pc, pivot_row));
    }
    Echelon { pivots, inconsistent }
}

fn to_rows(m: &SparseMatrix) -> Vec<BTreeMap<usize, Scalar>> {
    m.data.clone()
}

/// Rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    eliminate(&Rationals, to_rows(m), m.cols, m.cols).pivots.len()
}

/// Back-substitution of one free-variable assignment through the echelon form.
fn back_substitute(pivots: &[(usize, BTreeMap<usize, Scalar>)], mut x: SparseVector) -> SparseVector {
    for (pc, row) in pivots.iter().rev() {
        let mut acc = Scalar::zero();
        for (c, v) in row {
            if c == pc {
                continue;
            }
            if let Some(xc) = x.get(c) {
                acc -= v * xc;
            }
        }
        if !acc.is_zero() {
            x.insert(*pc, acc);
        }
    }
    x
}

/// Exact basis of `{x : M x = 0}`; one vector per free column, that column
/// set to 1 and the other free columns to 0.
pub fn nullspace_basis(m: &SparseMatrix) -> Vec<SparseVector> {
    let echelon = eliminate(&Rationals, to_rows(m), m.cols, m.cols);
    nullspace_from_echelon(&echelon, m.cols)
}

pub(crate) fn nullspace_from_echelon(echelon: &Echelon<Scalar>, ncols: usize) -> Vec<SparseVector> {
    let pivot_cols: BTreeSet<usize> = echelon.pivots.iter().map(|(c, _)| *c).collect();
    (0..ncols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|free| {
            let mut x = SparseVector::new();
            x.insert(free, Scalar::one());
            back_substitute(&echelon.pivots, x)
        })
        .collect()
}

/// Solves `M x = b`, returning one solution (free variables zero) or `None`
/// when the system is inconsistent.
pub fn solve(m: &SparseMatrix, b: &SparseVector) -> Option<SparseVector> {
    let rhs = m.cols;
    let mut rows = to_rows(m);
    for (r, v) in b {
        assert!(*r < m.rows, "right-hand side longer than matrix");
        rows[*r].insert(rhs, v.clone());
    }
    let echelon = eliminate(&Rationals, rows, m.cols + 1, m.cols);
    if echelon.inconsistent {
        return None;
    }
    // Express each pivot variable through the right-hand side column, then drop it.
    let mut x = SparseVector::new();
    x.insert(rhs, -Scalar::one());
    let mut x = back_substitute(&echelon.pivots, x);
    x.remove(&rhs);
    Some(x)
}

/// Rank of `M` with entries reduced modulo the prime `p`. Never exceeds the
/// rational rank; agreement across two independent large primes is treated
/// as a certificate of the rational rank.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> Result<usize> {
    let field = PrimeField::new(p)?;
    let mut rows = Vec::with_capacity(m.rows);
    for row in &m.data {
        let mut reduced = BTreeMap::new();
        for (c, v) in row {
            let r = field.reduce(v)?;
            if r != 0 {
                reduced.insert(*c, r);
            }
        }
        rows.push(reduced);
    }
    Ok(eliminate(&field, rows, m.cols, m.cols).pivots.len())
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Two distinct primes in `(2^30, 2^31)` drawn from a seeded generator.
pub fn random_primes(seed: u64) -> [u64; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || loop {
        let candidate = rng.gen_range((1u64 << 30) + 1..(1u64 << 31)) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    };
    let first = draw();
    let mut second = draw();
    while second == first {
        second = draw();
    }
    [first, second]
}

/// Rank agreed on by two primes, or `None` when they disagree.
pub fn rank_two_primes(m: &SparseMatrix, primes: [u64; 2]) -> Result<Option<usize>> {
    let a = rank_mod_p(m, primes[0])?;
    let b = rank_mod_p(m, primes[1])?;
    Ok((a == b).then_some(a))
}

/// Scales a vector so its entries are coprime integers with a positive first entry.
pub fn primitive(v: &SparseVector) -> SparseVector {
    let Some(first) = v.values().next() else {
        return v.clone();
    };
    let mut lcm = BigInt::one();
    for x in v.values() {
        lcm = lcm.lcm(x.denom());
    }
    let mut gcd = BigInt::zero();
    for x in v.values() {
        gcd = gcd.gcd(&(x.numer() * (&lcm / x.denom())));
    }
    let mut factor = Scalar::new(lcm, gcd);
    if first.is_negative() {
        factor = -factor;
    }
    v.iter().map(|(k, x)| (*k, x * &factor)).collect()
}
