//! Exact rational arithmetic and dense matrices over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number.
///
/// Values that fit in a pair of `i64` stay on a fast path; anything larger
/// is promoted to an arbitrary-precision fraction. The representation is
/// canonical, so structural equality is numeric equality.
#[derive(Clone)]
pub struct Scalar(Repr);

#[derive(Clone)]
enum Repr {
    // denominator > 0, gcd(num, den) = 1
    Small(i64, i64),
    Big(BigRational),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Scalar(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Repr::Small(n, 1))
    }

    /// Builds `n / d`. Panics if `d` is zero.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Self {
        let (mut n, mut d) = (n, d);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Scalar(Repr::Small(a, b)),
            _ => Scalar(Repr::Big(BigRational::new(
                BigInt::from(n),
                BigInt::from(d),
            ))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Scalar(Repr::Small(a, b)),
            _ => Scalar(Repr::Big(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    /// Integer value, if this is an integer fitting in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::from_int(n as i64)
    }
}

impl From<usize> for Scalar {
    fn from(n: usize) -> Self {
        Scalar::from_i128(n as i128, 1)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_big(BigRational::from_integer(n))
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(a, b) => {
                0u8.hash(state);
                a.hash(state);
                b.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::from_big(BigRational::new(n, d)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Scalar::from_int(n)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

fn add_ref(x: &Scalar, y: &Scalar) -> Scalar {
    match (&x.0, &y.0) {
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    return Scalar(Repr::Small(s, 1));
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            match a.checked_mul(d).zip(c.checked_mul(b)) {
                Some((p, q)) => match p.checked_add(q) {
                    Some(n) => Scalar::from_i128(n, b * d),
                    None => Scalar::from_big(x.to_big() + y.to_big()),
                },
                None => Scalar::from_big(x.to_big() + y.to_big()),
            }
        }
        _ => Scalar::from_big(x.to_big() + y.to_big()),
    }
}

fn mul_ref(x: &Scalar, y: &Scalar) -> Scalar {
    match (&x.0, &y.0) {
        (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Scalar::zero(),
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return Scalar(Repr::Small(p, 1));
                }
            }
            Scalar::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
        }
        _ => Scalar::from_big(x.to_big() * y.to_big()),
    }
}

fn neg_ref(x: &Scalar) -> Scalar {
    match &x.0 {
        Repr::Small(a, b) => match a.checked_neg() {
            Some(n) => Scalar(Repr::Small(n, *b)),
            None => Scalar::from_big(-x.to_big()),
        },
        Repr::Big(r) => Scalar::from_big(-r.clone()),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Sub, sub, |x: &Scalar, y: &Scalar| add_ref(x, &neg_ref(y)));
forward_binop!(Div, div, |x: &Scalar, y: &Scalar| mul_ref(x, &y.recip()));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg_ref(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg_ref(self)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = add_ref(self, rhs);
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = add_ref(self, &rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = add_ref(self, &neg_ref(rhs));
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = mul_ref(self, rhs);
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

/// Dense row-major matrix over the rationals. Zero-sized shapes are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix with an explicit column count, so empty row lists keep their shape.
    pub fn from_rows_with_cols(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let r = rows.len();
        assert!(rows.iter().all(|x| x.len() == cols), "ragged rows");
        Mat {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                if !x.is_zero() {
                    t.set(c, r, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut s = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += &(a * b);
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in difference");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Mat, s: &Scalar) {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += &(b * s);
            }
        }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    /// Places `blocks[i][j]` at block position (i, j); row heights and column widths are given.
    pub fn block(heights: &[usize], widths: &[usize], blocks: &[Vec<Option<&Mat>>]) -> Mat {
        let mut out = Mat::zeros(heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (i, h) in heights.iter().enumerate() {
            let mut c0 = 0;
            for (j, w) in widths.iter().enumerate() {
                if let Some(b) = blocks[i][j] {
                    assert_eq!(b.shape(), (*h, *w), "block shape mismatch");
                    out.set_block(r0, c0, b);
                }
                c0 += w;
            }
            r0 += h;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c).clone());
            }
        }
    }

    pub fn sub_matrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        Mat::from_rows_with_cols(
            rows.iter().map(|&r| self.row(r).to_vec()).collect(),
            self.cols,
        )
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = Mat::zeros(self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    /// Kronecker product; row `(i, k)` of the result is `i * other.rows + k`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        kernel_basis(self)
    }

    /// Column space basis, as vectors, taken from pivot columns of the original matrix.
    pub fn column_basis(&self) -> Vec<Vec<Scalar>> {
        let (_, piv) = rref(self);
        piv.iter().map(|&c| self.col(c)).collect()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        solve(self, &Mat::identity(self.rows))
            .ok()
            .flatten()
            .filter(|_| self.rank() == self.rows)
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pv = m.get(c, c).clone();
            det *= &pv;
            let inv = pv.recip();
            for r in c + 1..n {
                let f = m.get(r, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = m.get(r, k) - &(&f * m.get(c, k));
                    m.set(r, k, v);
                }
            }
        }
        det
    }

    pub fn pow(&self, e: usize) -> Mat {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut out = Mat::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Multiplies every entry by the least common multiple of the denominators.
    pub fn clear_denominators(&self) -> (Mat, BigInt) {
        let l = self
            .data
            .iter()
            .fold(BigInt::one(), |l, x| l.lcm(&x.denom()));
        let s = Scalar::from(l.clone());
        (self.scale(&s), l)
    }
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, row);
        let inv = a.get(row, c).recip();
        if !inv.is_one() {
            for k in c..a.cols {
                let v = a.get(row, k) * &inv;
                a.set(row, k, v);
            }
        }
        let prow: Vec<(usize, Scalar)> = (c..a.cols)
            .filter(|&k| !a.get(row, k).is_zero())
            .map(|k| (k, a.get(row, k).clone()))
            .collect();
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let f = a.get(r, c).clone();
            if f.is_zero() {
                continue;
            }
            for (k, v) in &prow {
                let nv = a.get(r, *k) - &(&f * v);
                a.set(r, *k, nv);
            }
        }
        pivots.push(c);
        row += 1;
    }
    (a, pivots)
}

/// Basis of the right null space. Each vector is 1 at its own free column and 0 at the others,
/// so the coordinates of a null vector in this basis are its entries at the free columns.
pub fn kernel_basis(m: &Mat) -> Vec<Vec<Scalar>> {
    kernel_with_free(m).0
}

/// Null space basis together with the free column of each basis vector.
pub fn kernel_with_free(m: &Mat) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let (r, piv) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &piv {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..m.cols).filter(|&c| !is_pivot[c]).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[f] = Scalar::one();
            for (i, &p) in piv.iter().enumerate() {
                let x = r.get(i, f);
                if !x.is_zero() {
                    v[p] = -x;
                }
            }
            v
        })
        .collect();
    (basis, free)
}

/// Solves `a · x = b`. Returns `Ok(None)` for an inconsistent system.
pub fn solve(a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    if a.rows != b.rows {
        return Err(Error::Shape(format!(
            "solve: {} rows against {} rows",
            a.rows, b.rows
        )));
    }
    let aug = a.hstack(b);
    let (r, piv) = rref(&aug);
    if piv.iter().any(|&p| p >= a.cols) {
        return Ok(None);
    }
    let mut x = Mat::zeros(a.cols, b.cols);
    for (i, &p) in piv.iter().enumerate() {
        for j in 0..b.cols {
            x.set(p, j, r.get(i, a.cols + j).clone());
        }
    }
    Ok(Some(x))
}

/// Solves `a · x = v` for a single right-hand side vector.
pub fn solve_vec(a: &Mat, v: &[Scalar]) -> Option<Vec<Scalar>> {
    let b = Mat::from_cols(v.len(), &[v.to_vec()]);
    solve(a, &b).ok().flatten().map(|x| x.col(0))
}

/// Dimension of the span of the given vectors.
pub fn span_rank(vectors: &[Vec<Scalar>], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Mat::from_rows_with_cols(vectors.to_vec(), len).rank()
}

/// An echelon basis of a subspace of `Q^len`, built incrementally.
///
/// Vectors are kept fully reduced with respect to each other's pivots, which makes
/// membership tests and reductions cheap.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = v[p].clone();
            if f.is_zero() {
                continue;
            }
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[k] -= &(&f * x);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for (k, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    row[k] -= &(&f * x);
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (row, c) in self.rows.iter().zip(&coords) {
            if c.is_zero() {
                continue;
            }
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    r[k] -= &(c * x);
                }
            }
        }
        r.iter().all(Scalar::is_zero).then_some(coords)
    }
}

/// Indices of a maximal subfamily of `vectors` that is independent modulo `base`.
pub fn independent_modulo(base: &Echelon, vectors: &[Vec<Scalar>]) -> Vec<usize> {
    let mut e = base.clone();
    vectors
        .iter()
        .enumerate()
        .filter(|(_, v)| e.insert(v))
        .map(|(i, _)| i)
        .collect()
}

/// Characteristic polynomial of a square matrix, coefficients from the constant term up.
/// Uses the Faddeev–LeVerrier recursion, which is exact over the rationals.
pub fn char_poly(m: &Mat) -> Vec<Scalar> {
    assert!(
        m.is_square(),
        "characteristic polynomial of a non-square matrix"
    );
    let n = m.rows;
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut mk = Mat::zeros(n, n);
    let id = Mat::identity(n);
    for k in 1..=n {
        let mut prev = mk.clone();
        prev.add_scaled(&id, &coeffs[n - k + 1]);
        mk = m.mul(&prev);
        coeffs[n - k] = -(mk.trace() / Scalar::from(k));
    }
    coeffs
}

/// Rational roots of a polynomial (coefficients from the constant term up), without multiplicity.
pub fn rational_roots(poly: &[Scalar]) -> Vec<Scalar> {
    let mut p: Vec<Scalar> = poly.to_vec();
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let lead = p.iter().position(|x| !x.is_zero()).unwrap();
    if lead > 0 {
        roots.push(Scalar::zero());
        p.drain(..lead);
    }
    if p.len() <= 1 {
        return roots;
    }
    let l = p.iter().fold(BigInt::one(), |l, x| l.lcm(&x.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|x| (x.to_big() * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let c0 = ints[0].abs();
    let cn = ints[ints.len() - 1].abs();
    let eval = |r: &Scalar| -> bool {
        let mut acc = Scalar::zero();
        for c in p.iter().rev() {
            acc = &acc * r + c;
        }
        acc.is_zero()
    };
    let (Some(dc0), Some(dcn)) = (small_divisors(&c0), small_divisors(&cn)) else {
        return roots;
    };
    let mut seen = std::collections::BTreeSet::new();
    for a in &dc0 {
        for b in &dcn {
            for s in [1i64, -1] {
                let r = Scalar::new(s * a, *b);
                if seen.insert(r.clone()) && eval(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn small_divisors(n: &BigInt) -> Option<Vec<i64>> {
    let n = n.to_i64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1i64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from(n)
    }

    #[test]
    fn scalar_arithmetic_is_canonical() {
        assert_eq!(Scalar::new(2, 4), Scalar::new(-1, -2));
        assert_eq!(Scalar::new(1, 3) + Scalar::new(2, 3), Scalar::one());
        assert_eq!((Scalar::new(3, 7) * Scalar::new(7, 3)).to_i64(), Some(1));
        assert_eq!("-6/4".parse::<Scalar>().unwrap(), Scalar::new(-3, 2));
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn scalar_overflow_promotes_and_demotes() {
        let big = Scalar::from(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.to_string(), "85070591730234615847396907784232501249");
        let back = &sq / &big;
        assert_eq!(back, big);
        assert_eq!(back.to_i64(), Some(i64::MAX));
        let m = Scalar::from(i64::MIN);
        assert_eq!((-&m).to_string(), "9223372036854775808");
    }

    #[test]
    fn rref_identity_and_rank_one() {
        let (r, p) = rref(&Mat::identity(2));
        assert_eq!(r, Mat::identity(2));
        assert_eq!(p, vec![0, 1]);
        let (r, p) = rref(&Mat::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, Mat::from_ints(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Mat::identity(3)).is_empty());
        assert_eq!(kernel_basis(&Mat::zeros(3, 3)).len(), 3);
        let k = kernel_basis(&Mat::from_ints(&[&[1, 1]]));
        assert_eq!(k, vec![vec![s(-1), s(1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = Mat::from_ints(&[&[3, 4], &[5, 6]]);
        assert_eq!(solve(&Mat::identity(2), &b).unwrap().unwrap(), b);
        let x = solve(&Mat::from_ints(&[&[1, 1]]), &Mat::from_ints(&[&[2]]))
            .unwrap()
            .unwrap();
        assert_eq!(x.get(0, 0) + x.get(1, 0), s(2));
        assert!(solve(&Mat::zeros(1, 1), &Mat::from_ints(&[&[1]]))
            .unwrap()
            .is_none());
        assert!(solve(&Mat::zeros(2, 1), &Mat::zeros(1, 1)).is_err());
    }

    #[test]
    fn empty_shapes() {
        let a = Mat::zeros(0, 3);
        assert_eq!(a.rank(), 0);
        assert_eq!(kernel_basis(&a).len(), 3);
        let b = Mat::zeros(3, 0);
        assert_eq!(b.transpose().shape(), (0, 3));
        assert_eq!(Mat::zeros(2, 0).mul(&Mat::zeros(0, 4)), Mat::zeros(2, 4));
        assert_eq!(Mat::zeros(0, 0).determinant(), Scalar::one());
    }

    #[test]
    fn char_poly_and_roots() {
        // x^2 - 5x + 6 = (x - 2)(x - 3)
        let m = Mat::from_ints(&[&[2, 0], &[1, 3]]);
        let p = char_poly(&m);
        assert_eq!(p, vec![s(6), s(-5), s(1)]);
        assert_eq!(rational_roots(&p), vec![s(2), s(3)]);
        // x^2 - 2 has no rational root
        assert!(rational_roots(&[s(-2), s(0), s(1)]).is_empty());
        // 4x^2 - 1 has roots ±1/2, and x * (x - 1/3)
        assert_eq!(
            rational_roots(&[s(-1), s(0), s(4)]),
            vec![Scalar::new(-1, 2), Scalar::new(1, 2)]
        );
        assert_eq!(
            rational_roots(&[s(0), Scalar::new(-1, 3), s(1)]),
            vec![s(0), Scalar::new(1, 3)]
        );
    }

    #[test]
    fn echelon_coordinates() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[s(1), s(2), s(0)]));
        assert!(e.insert(&[s(0), s(1), s(1)]));
        assert!(!e.insert(&[s(1), s(3), s(1)]));
        let v = vec![s(2), s(5), s(1)];
        let c = e.coordinates(&v).unwrap();
        let mut recon = vec![Scalar::zero(); 3];
        for (row, x) in e.basis().iter().zip(&c) {
            for k in 0..3 {
                recon[k] += &(x * &row[k]);
            }
        }
        assert_eq!(recon, v);
        assert!(e.coordinates(&[s(0), s(0), s(1)]).is_none());
    }

    fn small_mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
        proptest::collection::vec((-4i64..=4, 1i64..=3), rows * cols).prop_map(move |v| {
            let mut m = Mat::zeros(rows, cols);
            for (i, (n, d)) in v.into_iter().enumerate() {
                m.set(i / cols, i % cols, Scalar::new(n, d));
            }
            m
        })
    }

    proptest! {
        #[test]
        fn rank_equals_rank_of_transpose(m in small_mat(5, 7)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_vectors_are_null_and_independent(m in small_mat(4, 6)) {
            let k = kernel_basis(&m);
            prop_assert_eq!(k.len(), 6 - m.rank());
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
            }
            prop_assert_eq!(span_rank(&k, 6), k.len());
        }

        #[test]
        fn solve_is_exact(a in small_mat(4, 3), x in small_mat(3, 2)) {
            let b = a.mul(&x);
            let y = solve(&a, &b).unwrap().unwrap();
            prop_assert_eq!(a.mul(&y), b);
        }

        #[test]
        fn determinant_is_multiplicative(a in small_mat(3, 3), b in small_mat(3, 3)) {
            prop_assert_eq!(a.mul(&b).determinant(), a.determinant() * b.determinant());
        }

        #[test]
        fn char_poly_vanishes_at_matrix(a in small_mat(3, 3)) {
            let p = char_poly(&a);
            let mut acc = Mat::zeros(3, 3);
            for c in p.iter().rev() {
                acc = acc.mul(&a);
                acc.add_scaled(&Mat::identity(3), c);
            }
            prop_assert!(acc.is_zero());
        }
    }
}
