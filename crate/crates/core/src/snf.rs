//! Smith normal form over ℤ.
//!
//! Elimination runs on `i64` with checked arithmetic first; on overflow the
//! whole computation restarts on arbitrary-precision integers. Pivots are
//! the smallest nonzero absolute value, ties broken by (row, column).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntMatrix { rows: r, cols: c, data: rows.concat() }
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Exact product; panics on overflow.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a.checked_mul(other[(k, j)]).and_then(|p| p.checked_add(out[(i, j)]));
                    out[(i, j)] = v.expect("overflow in matrix product");
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i64 {
        &mut self.data[r * self.cols + c]
    }
}

/// Invariant factors `d₁ | d₂ | … | d_r` (all positive) and the rank `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    /// `(P, Q)` with `P · M · Q = D`, when requested.
    #[serde(skip)]
    pub transforms: Option<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)>,
}

impl SnfResult {
    /// Invariant factors larger than one: the torsion they present.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Arithmetic the elimination needs; `None` signals overflow.
trait Entry: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
    /// `self − q·b`.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn is_negative(&self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn divides(&self, other: &Self) -> bool {
        *other == 0 || (*self != 0 && other.checked_rem(*self).is_none_or(|r| r == 0))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|p| self.checked_sub(p))
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(other) || (!Zero::is_zero(self) && Zero::is_zero(&other.mod_floor(self)))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Overflow;

struct Work<T> {
    m: usize,
    n: usize,
    a: Vec<T>,
    p: Option<Vec<T>>,
    q: Option<Vec<T>>,
}

impl<T: Entry> Work<T> {
    fn new(m: usize, n: usize, a: Vec<T>, track: bool) -> Self {
        let ident = |k: usize| {
            let mut v = vec![T::zero(); k * k];
            for i in 0..k {
                v[i * k + i] = T::one();
            }
            v
        };
        Work { m, n, a, p: track.then(|| ident(m)), q: track.then(|| ident(n)) }
    }

    #[inline]
    fn at(&self, r: usize, c: usize) -> &T {
        &self.a[r * self.n + c]
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for c in 0..self.n {
            self.a.swap(r1 * self.n + c, r2 * self.n + c);
        }
        if let Some(p) = &mut self.p {
            for c in 0..self.m {
                p.swap(r1 * self.m + c, r2 * self.m + c);
            }
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 == c2 {
            return;
        }
        for r in 0..self.m {
            self.a.swap(r * self.n + c1, r * self.n + c2);
        }
        if let Some(q) = &mut self.q {
            for r in 0..self.n {
                q.swap(r * self.n + c1, r * self.n + c2);
            }
        }
    }

    /// row[dst] −= k · row[src], over columns `from..`.
    fn row_op(&mut self, dst: usize, src: usize, k: &T, from: usize) -> Result<(), Overflow> {
        let n = self.n;
        for c in from..n {
            let s = self.a[src * n + c].clone();
            if s.is_zero() {
                continue;
            }
            self.a[dst * n + c] = self.a[dst * n + c].sub_mul(k, &s).ok_or(Overflow)?;
        }
        if let Some(p) = &mut self.p {
            let m = self.m;
            for c in 0..m {
                let s = p[src * m + c].clone();
                if !s.is_zero() {
                    p[dst * m + c] = p[dst * m + c].sub_mul(k, &s).ok_or(Overflow)?;
                }
            }
        }
        Ok(())
    }

    /// col[dst] −= k · col[src], over rows `from..`.
    fn col_op(&mut self, dst: usize, src: usize, k: &T, from: usize) -> Result<(), Overflow> {
        let n = self.n;
        for r in from..self.m {
            let s = self.a[r * n + src].clone();
            if s.is_zero() {
                continue;
            }
            self.a[r * n + dst] = self.a[r * n + dst].sub_mul(k, &s).ok_or(Overflow)?;
        }
        if let Some(q) = &mut self.q {
            for r in 0..n {
                let s = q[r * n + src].clone();
                if !s.is_zero() {
                    q[r * n + dst] = q[r * n + dst].sub_mul(k, &s).ok_or(Overflow)?;
                }
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) -> Result<(), Overflow> {
        let n = self.n;
        for c in 0..n {
            self.a[r * n + c] = self.a[r * n + c].neg().ok_or(Overflow)?;
        }
        if let Some(p) = &mut self.p {
            let m = self.m;
            for c in 0..m {
                p[r * m + c] = p[r * m + c].neg().ok_or(Overflow)?;
            }
        }
        Ok(())
    }

    /// Smallest |entry| in the lower-right block starting at `t`; the first
    /// unit found in row-major order wins immediately.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.m {
            for c in t..self.n {
                let x = self.at(r, c);
                if x.is_zero() {
                    continue;
                }
                if x.is_unit() {
                    return Some((r, c));
                }
                if best.is_none_or(|(br, bc)| x.abs_lt(self.at(br, bc))) {
                    best = Some((r, c));
                }
            }
        }
        best
    }

    /// Clears row and column `t` by repeated division; returns once both
    /// are zero apart from the pivot.
    fn clear_cross(&mut self, t: usize) -> Result<(), Overflow> {
        loop {
            let piv = self.at(t, t).clone();
            let mut residue = false;
            for r in t + 1..self.m {
                if self.at(r, t).is_zero() {
                    continue;
                }
                let k = self.at(r, t).quot(&piv).ok_or(Overflow)?;
                self.row_op(r, t, &k, t)?;
                residue |= !self.at(r, t).is_zero();
            }
            for c in t + 1..self.n {
                if self.at(t, c).is_zero() {
                    continue;
                }
                let k = self.at(t, c).quot(&piv).ok_or(Overflow)?;
                self.col_op(c, t, &k, t)?;
                residue |= !self.at(t, c).is_zero();
            }
            if !residue {
                return Ok(());
            }
            // smaller remainder becomes the new pivot
            let mut best: Option<(usize, usize)> = None;
            let cands = (t + 1..self.m).map(|r| (r, t)).chain((t + 1..self.n).map(|c| (t, c)));
            for (r, c) in cands {
                let x = self.at(r, c);
                if !x.is_zero() && best.is_none_or(|(br, bc)| x.abs_lt(self.at(br, bc))) {
                    best = Some((r, c));
                }
            }
            let (r, c) = best.expect("residue present");
            self.swap_rows(t, r);
            self.swap_cols(t, c);
        }
    }

    fn run(mut self) -> Result<(Vec<T>, Option<(Vec<T>, Vec<T>)>), Overflow> {
        let mut diag = Vec::new();
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((r, c)) = self.find_pivot(t) else { break };
            self.swap_rows(t, r);
            self.swap_cols(t, c);
            loop {
                self.clear_cross(t)?;
                let piv = self.at(t, t).clone();
                if piv.is_unit() {
                    break;
                }
                let bad = (t + 1..self.m)
                    .flat_map(|r| (t + 1..self.n).map(move |c| (r, c)))
                    .find(|&(r, c)| !piv.divides(self.at(r, c)));
                match bad {
                    // row[t] += row[r] then clear again
                    Some((r, _)) => self.row_op(t, r, &T::one().neg().ok_or(Overflow)?, t)?,
                    None => break,
                }
            }
            if self.at(t, t).is_negative() {
                self.negate_row(t)?;
            }
            diag.push(self.at(t, t).clone());
            t += 1;
        }
        let transforms = match (self.p, self.q) {
            (Some(p), Some(q)) => Some((p, q)),
            _ => None,
        };
        Ok((diag, transforms))
    }
}

fn finish<T: Entry>(
    diag: Vec<T>,
    transforms: Option<(Vec<T>, Vec<T>)>,
    m: usize,
    n: usize,
) -> SnfResult {
    let to_rows = |v: Vec<T>, k: usize| -> Vec<Vec<BigInt>> {
        v.chunks(k.max(1)).take(k).map(|row| row.iter().map(Entry::to_big).collect()).collect()
    };
    SnfResult {
        rank: diag.len(),
        invariant_factors: diag.iter().map(Entry::to_big).collect(),
        transforms: transforms.map(|(p, q)| (to_rows(p, m), to_rows(q, n))),
    }
}

fn compute(m: &IntMatrix, track: bool) -> SnfResult {
    let (r, c) = (m.rows, m.cols);
    if let Ok((diag, tr)) = Work::new(r, c, m.data.clone(), track).run() {
        return finish(diag, tr, r, c);
    }
    let big: Vec<BigInt> = m.data.iter().map(|&x| BigInt::from(x)).collect();
    match Work::new(r, c, big, track).run() {
        Ok((diag, tr)) => finish(diag, tr, r, c),
        Err(Overflow) => unreachable!("big integers do not overflow"),
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    compute(m, false)
}

/// As [`smith_normal_form`], also returning unimodular `P`, `Q` with
/// `P · M · Q = D`.
pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SnfResult {
    compute(m, true)
}

/// SNF of a matrix given with arbitrary-precision entries.
pub fn smith_normal_form_big(rows: &[Vec<BigInt>]) -> SnfResult {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let data = rows.concat();
    match Work::new(m, n, data, false).run() {
        Ok((diag, tr)) => finish(diag, tr, m, n),
        Err(Overflow) => unreachable!("big integers do not overflow"),
    }
}

/// Rank over ℤ/p by Gaussian elimination.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let pm = p as i64;
    let mut a: Vec<u64> = m.data.iter().map(|&x| x.rem_euclid(pm) as u64).collect();
    let inv = |x: u64| -> u64 {
        // Fermat: x^{p−2}
        let (mut base, mut e, mut acc) = (x % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc as u128 * base as u128 % p as u128) as u64;
            }
            base = (base as u128 * base as u128 % p as u128) as u64;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(r) = (rank..rows).find(|&r| a[r * cols + c] != 0) else { continue };
        if r != rank {
            for k in 0..cols {
                a.swap(r * cols + k, rank * cols + k);
            }
        }
        let scale = inv(a[rank * cols + c]);
        for k in c..cols {
            a[rank * cols + k] = (a[rank * cols + k] as u128 * scale as u128 % p as u128) as u64;
        }
        for r2 in rank + 1..rows {
            let f = a[r2 * cols + c];
            if f == 0 {
                continue;
            }
            for k in c..cols {
                let s = a[rank * cols + k];
                if s != 0 {
                    let sub = (f as u128 * s as u128 % p as u128) as u64;
                    a[r2 * cols + k] = (a[r2 * cols + k] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}
