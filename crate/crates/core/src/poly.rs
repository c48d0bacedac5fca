//! Dense polynomial arithmetic over Z4 and F2.
//!
//! Coefficients are little-endian: index `i` holds the coefficient of `x^i`.
//! Both types are kept normalized, so the zero polynomial is the empty
//! sequence and every other value has a nonzero leading coefficient.
//!
//! Z4 coefficients are stored as residues `0..=3`. Text written elsewhere as
//! `x - 1` is the same polynomial as `x + 3`; rendering always uses `0..=3`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// A polynomial over Z4.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PolyZ4 {
    coeffs: Vec<u8>,
}

impl PolyZ4 {
    /// Builds a polynomial from little-endian residues, reducing each mod 4.
    pub fn new(coeffs: Vec<u8>) -> Self {
        let mut p = PolyZ4 {
            coeffs: coeffs.into_iter().map(|c| c & 3).collect(),
        };
        p.normalize();
        p
    }

    /// Builds a polynomial from signed integers, so `[-1, 1]` is `x + 3`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| c.rem_euclid(4) as u8).collect())
    }

    pub fn zero() -> Self {
        PolyZ4 { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: u8) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: u8, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x^n - 1`, i.e. `x^n + 3`.
    pub fn x_n_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = 3;
        coeffs[n] = (coeffs[n] + 1) & 3;
        Self::new(coeffs)
    }

    /// Lifts an F2 polynomial coefficientwise into `{0, 1}`.
    pub fn from_f2(p: &PolyF2) -> Self {
        Self::new((0..p.len()).map(|i| p.coeff(i) as u8).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn scale(&self, c: u8) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * (c & 3)).collect())
    }

    pub fn mul_mod(&self, other: &PolyZ4, n: usize) -> PolyZ4 {
        assert!(n >= 1, "mul_mod needs n >= 1");
        let mut out = vec![0u8; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = (i + j) % n;
                out[k] = (out[k] + a * b) & 3;
            }
        }
        Self::new(out)
    }

    /// Reduces by `x^n = 1`, folding exponents mod `n`.
    pub fn reduce_mod(&self, n: usize) -> PolyZ4 {
        assert!(n >= 1, "reduce_mod needs n >= 1");
        let mut out = vec![0u8; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i % n] = (out[i % n] + a) & 3;
        }
        Self::new(out)
    }

    /// `v(x^{-1})` as an element of `Z4[x]/(x^n - 1)`.
    ///
    /// Agrees with the reciprocal polynomial up to multiplication by a power
    /// of `x` (a unit in the quotient ring), and is defined for every `v`.
    pub fn reversed_mod(&self, n: usize) -> PolyZ4 {
        assert!(n >= 1, "reversed_mod needs n >= 1");
        let mut out = vec![0u8; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            let k = (n - i % n) % n;
            out[k] = (out[k] + a) & 3;
        }
        Self::new(out)
    }

    /// Quotient and remainder on division by a monic polynomial.
    pub fn divrem_monic(&self, divisor: &PolyZ4) -> Result<(PolyZ4, PolyZ4)> {
        let d = match divisor.degree() {
            None => return Err(Error::DivisionByZero),
            Some(d) => d,
        };
        if !divisor.is_monic() {
            return Err(Error::Internal(format!(
                "divrem_monic called with non-monic divisor {divisor}"
            )));
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((PolyZ4::zero(), self.clone()));
        }
        let mut quot = vec![0u8; rem.len() - d];
        for top in (d..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            let shift = top - d;
            quot[shift] = c;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + 4 - ((c * b) & 3)) & 3;
            }
        }
        Ok((PolyZ4::new(quot), PolyZ4::new(rem)))
    }

    pub fn divides(&self, other: &PolyZ4) -> Result<bool> {
        Ok(other.divrem_monic(self)?.1.is_zero())
    }

    /// The reciprocal `a0^{-1} x^{deg f} f(1/x)` of a monic polynomial with
    /// unit constant term.
    pub fn reciprocal(&self) -> Result<PolyZ4> {
        let a0 = self.coeff(0);
        if !self.is_monic() || a0.is_multiple_of(2) {
            return Err(Error::NotReciprocable(self.to_string()));
        }
        // 1 and 3 are their own inverses mod 4.
        let rev: Vec<u8> = self.coeffs.iter().rev().map(|&c| c * a0).collect();
        Ok(PolyZ4::new(rev))
    }

    /// Coefficientwise reduction mod 2.
    pub fn mu(&self) -> PolyF2 {
        PolyF2::from_bits(self.coeffs.iter().map(|&c| c & 1 == 1))
    }

    /// Comma-separated little-endian residues, e.g. `3,1,2,1`.
    pub fn to_comma_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for PolyZ4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(|&c| c as u32))
    }
}

impl fmt::Debug for PolyZ4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyZ4({self})")
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    coeffs: impl DoubleEndedIterator<Item = u32> + ExactSizeIterator,
) -> fmt::Result {
    let len = coeffs.len();
    let mut first = true;
    for (rev_i, c) in coeffs.rev().enumerate() {
        if c == 0 {
            continue;
        }
        let k = len - 1 - rev_i;
        if !first {
            f.write_str("+")?;
        }
        first = false;
        match (c, k) {
            (c, 0) => write!(f, "{c}")?,
            (1, 1) => f.write_str("x")?,
            (1, k) => write!(f, "x^{k}")?,
            (c, 1) => write!(f, "{c}x")?,
            (c, k) => write!(f, "{c}x^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl Add for &PolyZ4 {
    type Output = PolyZ4;
    fn add(self, rhs: &PolyZ4) -> PolyZ4 {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyZ4::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &PolyZ4 {
    type Output = PolyZ4;
    fn sub(self, rhs: &PolyZ4) -> PolyZ4 {
        self + &(-rhs)
    }
}

impl Neg for &PolyZ4 {
    type Output = PolyZ4;
    fn neg(self) -> PolyZ4 {
        self.scale(3)
    }
}

impl Mul for &PolyZ4 {
    type Output = PolyZ4;
    fn mul(self, rhs: &PolyZ4) -> PolyZ4 {
        if self.is_zero() || rhs.is_zero() {
            return PolyZ4::zero();
        }
        let mut out = vec![0u8; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) & 3;
            }
        }
        PolyZ4::new(out)
    }
}

impl FromStr for PolyZ4 {
    type Err = Error;

    /// Accepts either comma-separated little-endian coefficients (`3,1,2,1`)
    /// or an expression in `x` such as `x^3+2x^2+x-1` or `2(x+3)(x^3+x+1)`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        if compact.contains(',') {
            let mut coeffs = Vec::new();
            for part in compact.split(',') {
                let v: i64 = part.parse().map_err(|_| err("bad coefficient in list"))?;
                coeffs.push(v);
            }
            return Ok(PolyZ4::from_ints(&coeffs));
        }
        let mut parser = ExprParser {
            chars: compact.as_bytes(),
            pos: 0,
        };
        let p = parser.expr().map_err(|r| err(&r))?;
        if parser.pos != parser.chars.len() {
            return Err(err("trailing characters"));
        }
        Ok(p)
    }
}

/// Recursive-descent parser for `expr := ['-'] term (('+'|'-') term)*`,
/// `term := factor+` (juxtaposition or `*`), `factor := num | x['^'num] | '(' expr ')'`.
struct ExprParser<'a> {
    chars: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> std::result::Result<PolyZ4, String> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            negate = true;
            self.pos += 1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> std::result::Result<PolyZ4, String> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(c) if c == b'x' || c == b'(' || c.is_ascii_digit() => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn number(&mut self) -> std::result::Result<u64, String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected a number at offset {start}"));
        }
        std::str::from_utf8(&self.chars[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| "number out of range".to_string())
    }

    fn factor(&mut self) -> std::result::Result<PolyZ4, String> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let mut k = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    k = self.number()?;
                }
                if k > 1 << 24 {
                    return Err("exponent too large".to_string());
                }
                Ok(PolyZ4::monomial(1, k as usize))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err("unbalanced parenthesis".to_string());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.number()?;
                Ok(PolyZ4::constant((v % 4) as u8))
            }
            Some(c) => Err(format!("unexpected character {:?}", c as char)),
            None => Err("unexpected end of input".to_string()),
        }
    }
}

/// A polynomial over F2, bit-packed little-endian into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyF2 {
    words: Vec<u64>,
}

impl PolyF2 {
    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut words = Vec::new();
        for (i, b) in bits.into_iter().enumerate() {
            if i % 64 == 0 {
                words.push(0);
            }
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Self::from_words(words)
    }

    /// From a list of 0/1 coefficients, little-endian.
    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        Self::from_bits(coeffs.iter().map(|&c| c & 1 == 1))
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = PolyF2 { words };
        p.normalize();
        p
    }

    /// Low 64 coefficients packed as an integer, bit `i` = coefficient of `x^i`.
    pub fn from_u64(bits: u64) -> Self {
        Self::from_words(vec![bits])
    }

    pub fn zero() -> Self {
        PolyF2 { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    pub fn x() -> Self {
        Self::from_u64(2)
    }

    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / 64 + 1];
        words[k / 64] = 1 << (k % 64);
        PolyF2 { words }
    }

    /// `x^n + 1`.
    pub fn x_n_plus_one(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.words[0] ^= 1;
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    /// Number of coefficients, `degree + 1` (0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.degree().map_or(0, |d| d + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn coeffs(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.coeff(i) as u8).collect()
    }

    fn xor_shifted(acc: &mut Vec<u64>, other: &[u64], shift: usize) {
        let ws = shift / 64;
        let bs = shift % 64;
        let need = other.len() + ws + 1;
        if acc.len() < need {
            acc.resize(need, 0);
        }
        for (i, &w) in other.iter().enumerate() {
            acc[i + ws] ^= w << bs;
            if bs != 0 {
                acc[i + ws + 1] ^= w >> (64 - bs);
            }
        }
    }

    pub fn square(&self) -> PolyF2 {
        let mut out = vec![0u64; self.words.len() * 2];
        for (i, &w) in self.words.iter().enumerate() {
            out[2 * i] = spread_bits(w as u32);
            out[2 * i + 1] = spread_bits((w >> 32) as u32);
        }
        PolyF2::from_words(out)
    }

    pub fn divrem(&self, divisor: &PolyF2) -> Result<(PolyF2, PolyF2)> {
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.words.clone();
        let mut quot = vec![0u64; self.words.len()];
        loop {
            while rem.last() == Some(&0) {
                rem.pop();
            }
            let rd = match rem.last() {
                None => break,
                Some(top) => (rem.len() - 1) * 64 + 63 - top.leading_zeros() as usize,
            };
            if rd < d {
                break;
            }
            let shift = rd - d;
            quot[shift / 64] |= 1 << (shift % 64);
            Self::xor_shifted(&mut rem, &divisor.words, shift);
        }
        Ok((PolyF2::from_words(quot), PolyF2::from_words(rem)))
    }

    pub fn rem(&self, modulus: &PolyF2) -> Result<PolyF2> {
        Ok(self.divrem(modulus)?.1)
    }

    pub fn gcd(&self, other: &PolyF2) -> PolyF2 {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(&self, other: &PolyF2, modulus: &PolyF2) -> Result<PolyF2> {
        (self * other).rem(modulus)
    }
}

/// Interleaves zeros between the bits of `x` (the squaring map over F2).
fn spread_bits(x: u32) -> u64 {
    let mut v = x as u64;
    v = (v | (v << 16)) & 0x0000_FFFF_0000_FFFF;
    v = (v | (v << 8)) & 0x00FF_00FF_00FF_00FF;
    v = (v | (v << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    v = (v | (v << 2)) & 0x3333_3333_3333_3333;
    v = (v | (v << 1)) & 0x5555_5555_5555_5555;
    v
}

impl Add for &PolyF2 {
    type Output = PolyF2;
    fn add(self, rhs: &PolyF2) -> PolyF2 {
        let len = self.words.len().max(rhs.words.len());
        let words = (0..len)
            .map(|i| self.words.get(i).unwrap_or(&0) ^ rhs.words.get(i).unwrap_or(&0))
            .collect();
        PolyF2::from_words(words)
    }
}

impl Mul for &PolyF2 {
    type Output = PolyF2;
    fn mul(self, rhs: &PolyF2) -> PolyF2 {
        if self.is_zero() || rhs.is_zero() {
            return PolyF2::zero();
        }
        let (short, long) = if self.words.len() <= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc = vec![0u64; short.words.len() + long.words.len() + 1];
        for (wi, &w) in short.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                PolyF2::xor_shifted(&mut acc, &long.words, wi * 64 + b);
            }
        }
        PolyF2::from_words(acc)
    }
}

impl fmt::Display for PolyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs().into_iter().map(u32::from))
    }
}

impl fmt::Debug for PolyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyF2({self})")
    }
}
