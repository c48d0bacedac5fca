//! Factorization of `x^n - 1` over F2 and Z4 for odd `n`.
//!
//! Over F2 each divisor `j` of `n` contributes the minimal polynomials of the
//! primitive `j`-th roots of unity, one per cyclotomic coset of units mod `j`.
//! For small `m = ord_j(2)` they are computed inside `F_{2^m}` by multiplying
//! out the conjugates of a fixed element of order `j`. For larger `m` the
//! cyclotomic polynomial `Phi_j` is split by gcds with the coset sums
//! `sum_{c in C} x^c`, which are fixed by squaring and so take a value in F2
//! at every root; together they separate all irreducible factors.
//!
//! Each factor is then lifted to Z4 with the Graeffe root-squaring identity:
//! writing `k(x) = e(x^2) + x o(x^2)`, the basic irreducible lift `K` satisfies
//! `K(y) = ±(e(y)^2 - y o(y)^2)`. Every lift is checked to divide `x^n - 1`
//! mod 4 and to reduce back to `k`.
//!
//! Factor ids follow a fixed order: divisors ascending; within a divisor,
//! self-reciprocal factors sorted by coefficient sequence, and reciprocal
//! pairs sorted by their smaller member, each pair stored as `f` then `f*`
//! where `f` is the lexicographically smaller of the two.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::arith::{self, DivisorProfiles};
use crate::error::{require_odd, Error, Result};
use crate::poly::{PolyF2, PolyZ4};

/// Ben-Or irreducibility test over F2.
pub fn is_irreducible(f: &PolyF2) -> bool {
    let d = match f.degree() {
        None | Some(0) => return false,
        Some(d) => d,
    };
    let x = PolyF2::x();
    let mut x_pow = x.clone();
    for _ in 0..d / 2 {
        x_pow = x_pow.square().rem(f).expect("nonzero modulus");
        let g = (&x_pow + &x).gcd(f);
        if !g.is_one() {
            return false;
        }
    }
    true
}

/// `F_{2^m}` as `F2[y] / (modulus)`.
struct ExtensionField {
    modulus: PolyF2,
    m: usize,
}

impl ExtensionField {
    /// Uses the first irreducible of degree `m` in the order of its low
    /// coefficients read as an integer.
    fn new(m: usize) -> Self {
        let top = PolyF2::monomial(m);
        let limit: u64 = if m >= 63 { u64::MAX } else { 1 << m };
        let mut low = 1u64;
        loop {
            let cand = &top + &PolyF2::from_u64(low);
            if is_irreducible(&cand) {
                return ExtensionField { modulus: cand, m };
            }
            low += 2;
            assert!(low < limit, "no irreducible polynomial of degree {m} found");
        }
    }

    fn mul(&self, a: &PolyF2, b: &PolyF2) -> PolyF2 {
        a.mul_mod(b, &self.modulus).expect("nonzero modulus")
    }

    fn square(&self, a: &PolyF2) -> PolyF2 {
        a.square().rem(&self.modulus).expect("nonzero modulus")
    }

    fn pow(&self, a: &PolyF2, exp: &BigUint) -> PolyF2 {
        let mut acc = PolyF2::one();
        for i in (0..exp.bits()).rev() {
            acc = self.square(&acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn pow_u64(&self, a: &PolyF2, exp: u64) -> PolyF2 {
        self.pow(a, &BigUint::from(exp))
    }

    /// An element of multiplicative order exactly `j` (`j` divides `2^m - 1`).
    fn element_of_order(&self, j: u64) -> PolyF2 {
        let group_order = (BigUint::one() << self.m) - BigUint::one();
        let cofactor = &group_order / j;
        debug_assert!((&cofactor * j) == group_order);
        let primes: Vec<u64> = arith::factorize(j).into_iter().map(|(p, _)| p).collect();
        let limit: u64 = if self.m >= 63 { u64::MAX } else { 1 << self.m };
        for cand in 2..limit {
            let b = self.pow(&PolyF2::from_u64(cand), &cofactor);
            if primes.iter().all(|&p| !self.pow_u64(&b, j / p).is_one()) {
                return b;
            }
        }
        unreachable!("the multiplicative group of F_2^m is cyclic")
    }

    /// `prod_{k < m} (x - root^{2^k})`, with coefficients expected in F2.
    fn minimal_polynomial(&self, root: &PolyF2) -> Result<PolyF2> {
        let mut coeffs: Vec<PolyF2> = vec![PolyF2::one()];
        let mut conj = root.clone();
        loop {
            let mut next = vec![PolyF2::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] + &self.mul(c, &conj);
            }
            coeffs = next;
            conj = self.square(&conj);
            if &conj == root {
                break;
            }
        }
        let mut bits = Vec::with_capacity(coeffs.len());
        for c in &coeffs {
            if c.is_zero() {
                bits.push(false);
            } else if c.is_one() {
                bits.push(true);
            } else {
                return Err(Error::Internal(
                    "minimal polynomial has a coefficient outside F2".into(),
                ));
            }
        }
        Ok(PolyF2::from_bits(bits))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Above this degree the idempotent split replaces extension-field arithmetic.
const FIELD_MAX_M: usize = 64;

/// Irreducible factors of `x^n + 1` over F2 whose roots have order exactly `j`.
fn factor_f2_for_divisor(j: u64) -> Result<Vec<PolyF2>> {
    if j == 1 {
        return Ok(vec![PolyF2::from_u64(0b11)]);
    }
    let m = arith::ord(j)? as usize;
    let mut out = if m <= FIELD_MAX_M {
        factor_via_field(j, m)?
    } else {
        factor_via_idempotents(j, m)?
    };
    out.sort_by_key(|p| p.coeffs());
    Ok(out)
}

fn factor_via_field(j: u64, m: usize) -> Result<Vec<PolyF2>> {
    let field = ExtensionField::new(m);
    let beta = field.element_of_order(j);
    let mut seen = vec![false; j as usize];
    let mut out = Vec::new();
    for a in 1..j {
        if seen[a as usize] || gcd(a, j) != 1 {
            continue;
        }
        let mut x = a;
        let mut size = 0;
        while !seen[x as usize] {
            seen[x as usize] = true;
            x = x * 2 % j;
            size += 1;
        }
        let k = field.minimal_polynomial(&field.pow_u64(&beta, a))?;
        if k.degree() != Some(size) {
            return Err(Error::Internal(format!(
                "minimal polynomial degree {:?} differs from coset size {size} for j={j}",
                k.degree()
            )));
        }
        out.push(k);
    }
    Ok(out)
}

/// `Phi_j(x)` mod 2 as `prod_{d | rad(j)} (x^{j/d} + 1)^{mu(d)}`.
pub fn cyclotomic_f2(j: u64) -> PolyF2 {
    let primes: Vec<u64> = arith::factorize(j).into_iter().map(|(p, _)| p).collect();
    let mut up = Vec::new();
    let mut down = Vec::new();
    for mask in 0u32..1 << primes.len() {
        let d: u64 = (0..primes.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| primes[i])
            .product();
        let k = (j / d) as usize;
        if mask.count_ones() % 2 == 0 {
            up.push(k);
        } else {
            down.push(k);
        }
    }
    let total: usize = up.iter().sum();
    let mut bits = vec![0u8; total + 1];
    bits[0] = 1;
    let mut deg = 0;
    for k in up {
        for i in (0..=deg).rev() {
            bits[i + k] ^= bits[i];
        }
        deg += k;
    }
    for k in down {
        let mut q = vec![0u8; deg - k + 1];
        for i in (k..=deg).rev() {
            let b = bits[i];
            q[i - k] = b;
            bits[i - k] ^= b;
        }
        debug_assert!(bits[..k].iter().all(|&b| b == 0));
        deg -= k;
        bits = q;
    }
    PolyF2::from_bits(bits.into_iter().map(|b| b == 1))
}

fn factor_via_idempotents(j: u64, m: usize) -> Result<Vec<PolyF2>> {
    let mut cosets = arith::cyclotomic_cosets(j)?;
    cosets.retain(|c| c[0] != 0);
    cosets.sort_by_key(|c| gcd(c[0], j) != 1);
    let mut pieces = vec![cyclotomic_f2(j)];
    for coset in cosets {
        if pieces.iter().all(|p| p.degree() == Some(m)) {
            break;
        }
        let mut bits = vec![false; j as usize];
        for &c in &coset {
            bits[c as usize] = true;
        }
        let a = PolyF2::from_bits(bits);
        let mut next = Vec::with_capacity(pieces.len() + 1);
        for p in pieces {
            let d = p.degree().unwrap_or(0);
            if d == m {
                next.push(p);
                continue;
            }
            let g = p.gcd(&a.rem(&p)?);
            let gd = g.degree().unwrap_or(0);
            if gd == 0 || gd == d {
                next.push(p);
                continue;
            }
            let (q, r) = p.divrem(&g)?;
            if !r.is_zero() {
                return Err(Error::Internal("gcd does not divide its argument".into()));
            }
            next.push(g);
            next.push(q);
        }
        pieces = next;
    }
    if let Some(p) = pieces.iter().find(|p| p.degree() != Some(m)) {
        return Err(Error::Internal(format!(
            "unsplit piece of degree {:?} for j={j}",
            p.degree()
        )));
    }
    Ok(pieces)
}

/// The distinct monic irreducible factors of `x^n + 1` over F2, grouped by
/// the order `j` of their roots (divisors ascending).
pub fn factor_f2_grouped(n: u64) -> Result<Vec<(u64, Vec<PolyF2>)>> {
    require_odd(n)?;
    arith::divisors(n)
        .into_par_iter()
        .map(|j| Ok((j, factor_f2_for_divisor(j)?)))
        .collect()
}

/// The distinct monic irreducible factors of `x^n + 1` over F2.
pub fn factor_f2(n: u64) -> Result<Vec<PolyF2>> {
    Ok(factor_f2_grouped(n)?
        .into_iter()
        .flat_map(|(_, fs)| fs)
        .collect())
}

/// The monic basic irreducible factor of `x^n - 1` over Z4 reducing to `k`.
pub fn hensel_lift(k: &PolyF2, n: u64) -> Result<PolyZ4> {
    require_odd(n)?;
    if k.is_zero() || !PolyF2::x_n_plus_one(n as usize).rem(k)?.is_zero() || !is_irreducible(k) {
        return Err(Error::NotAFactor(k.to_string(), n));
    }
    let lifted = PolyZ4::from_f2(k);
    let even = PolyZ4::new(lifted.coeffs().iter().step_by(2).copied().collect());
    let odd = PolyZ4::new(lifted.coeffs().iter().skip(1).step_by(2).copied().collect());
    let y = PolyZ4::monomial(1, 1);
    let mut big = &(&even * &even) - &(&y * &(&odd * &odd));
    if big.leading() == 3 {
        big = -&big;
    }
    let ok = big.is_monic()
        && big.degree() == k.degree()
        && big.mu() == *k
        && big.divides(&PolyZ4::x_n_minus_one(n as usize))?;
    if !ok {
        return Err(Error::Internal(format!(
            "lift {big} of {k} does not divide x^{n}-1 over Z4"
        )));
    }
    Ok(big)
}

/// One basic irreducible factor of `x^n - 1` over Z4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    /// Order of the roots of this factor; the factor has degree `ord_j(2)`.
    pub j: u64,
    pub poly: PolyZ4,
    /// Id of the reciprocal factor; equal to the own id when self-reciprocal.
    pub reciprocal: usize,
}

impl Factor {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

/// The complete factorization of `x^n - 1` over Z4, grouped into
/// self-reciprocal factors and reciprocal pairs.
#[derive(Debug, Clone)]
pub struct FactorTable {
    n: u64,
    factors: Vec<Factor>,
    profiles: DivisorProfiles,
    index: HashMap<PolyZ4, usize>,
}

impl FactorTable {
    pub fn new(n: u64) -> Result<Self> {
        require_odd(n)?;
        let profiles = arith::divisor_profiles(n)?;
        let groups = factor_f2_grouped(n)?;
        let lifted: Vec<(u64, Vec<PolyZ4>)> = groups
            .into_par_iter()
            .map(|(j, ks)| {
                let lifts = ks
                    .iter()
                    .map(|k| hensel_lift(k, n))
                    .collect::<Result<Vec<_>>>()?;
                Ok((j, lifts))
            })
            .collect::<Result<_>>()?;

        let mut factors = Vec::new();
        for (j, mut polys) in lifted {
            polys.sort();
            let mut used = vec![false; polys.len()];
            let mut group: Vec<(PolyZ4, Option<PolyZ4>)> = Vec::new();
            for i in 0..polys.len() {
                if used[i] {
                    continue;
                }
                used[i] = true;
                let star = polys[i].reciprocal()?;
                if star == polys[i] {
                    group.push((polys[i].clone(), None));
                } else {
                    let k = polys.iter().position(|q| *q == star).ok_or_else(|| {
                        Error::Internal(format!("reciprocal of {} missing", polys[i]))
                    })?;
                    used[k] = true;
                    // polys is sorted, so polys[i] < star.
                    group.push((polys[i].clone(), Some(star)));
                }
            }
            for (f, star) in group {
                let id = factors.len();
                match star {
                    None => factors.push(Factor {
                        j,
                        poly: f,
                        reciprocal: id,
                    }),
                    Some(fs) => {
                        factors.push(Factor {
                            j,
                            poly: f,
                            reciprocal: id + 1,
                        });
                        factors.push(Factor {
                            j,
                            poly: fs,
                            reciprocal: id,
                        });
                    }
                }
            }
        }
        let index = factors
            .iter()
            .enumerate()
            .map(|(i, f)| (f.poly.clone(), i))
            .collect();
        let table = FactorTable {
            n,
            factors,
            profiles,
            index,
        };
        table.check()?;
        Ok(table)
    }

    fn check(&self) -> Result<()> {
        let n = self.n as usize;
        let product = self
            .factors
            .iter()
            .fold(PolyZ4::one(), |acc, f| &acc * &f.poly);
        if product != PolyZ4::x_n_minus_one(n) {
            return Err(Error::Internal(format!(
                "factor product differs from x^{n}-1"
            )));
        }
        let selfrec = self.selfrec_ids().len() as u64;
        let pairs = self.pair_ids().len() as u64;
        if selfrec != self.profiles.s || pairs != self.profiles.t {
            return Err(Error::Internal(format!(
                "factor counts ({selfrec}, {pairs}) differ from (s, t) = ({}, {})",
                self.profiles.s, self.profiles.t
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn profiles(&self) -> &DivisorProfiles {
        &self.profiles
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor(&self, id: usize) -> &Factor {
        &self.factors[id]
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_self_reciprocal(&self, id: usize) -> bool {
        self.factors[id].reciprocal == id
    }

    pub fn selfrec_ids(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.is_self_reciprocal(i))
            .collect()
    }

    /// Pairs `(f, f*)` with `f` the lexicographically smaller member.
    pub fn pair_ids(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&i| self.factors[i].reciprocal > i)
            .map(|i| (i, self.factors[i].reciprocal))
            .collect()
    }

    pub fn id_of(&self, poly: &PolyZ4) -> Option<usize> {
        self.index.get(poly).copied()
    }

    pub fn product(&self, ids: impl IntoIterator<Item = usize>) -> PolyZ4 {
        ids.into_iter()
            .fold(PolyZ4::one(), |acc, i| &acc * &self.factors[i].poly)
    }

    /// Splits a monic divisor of `x^n - 1` into table factor ids (ascending).
    ///
    /// Fails unless `poly` equals a product of distinct table factors exactly.
    pub fn decompose(&self, poly: &PolyZ4) -> Result<Vec<usize>> {
        let fail = || Error::NotAFactorProduct {
            poly: poly.to_string(),
            n: self.n,
        };
        if !poly.is_monic() {
            return Err(fail());
        }
        let reduced = poly.mu();
        let ids: Vec<usize> = (0..self.len())
            .filter(|&i| {
                reduced
                    .rem(&self.factors[i].poly.mu())
                    .map(|r| r.is_zero())
                    .unwrap_or(false)
            })
            .collect();
        if self.product(ids.iter().copied()) != *poly {
            return Err(fail());
        }
        Ok(ids)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyZ4 {
        s.parse().unwrap()
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&PolyF2::from_u64(0b11)));
        assert!(is_irreducible(&PolyF2::from_u64(0b111)));
        assert!(is_irreducible(&PolyF2::from_u64(0b1011)));
        assert!(!is_irreducible(&PolyF2::from_u64(0b101)));
        assert!(!is_irreducible(&PolyF2::from_u64(0b1111)));
        assert!(!is_irreducible(&PolyF2::one()));
    }

    #[test]
    fn factor_f2_examples() {
        let mut f7 = factor_f2(7).unwrap();
        f7.sort_by_key(|p| p.coeffs());
        let mut want = vec![
            PolyF2::from_u64(0b11),
            PolyF2::from_u64(0b1011),
            PolyF2::from_u64(0b1101),
        ];
        want.sort_by_key(|p| p.coeffs());
        assert_eq!(f7, want);
        assert_eq!(
            factor_f2(3).unwrap(),
            vec![PolyF2::from_u64(0b11), PolyF2::from_u64(0b111)]
        );
        assert_eq!(factor_f2(1).unwrap(), vec![PolyF2::from_u64(0b11)]);
        assert!(factor_f2(8).is_err());
    }

    #[test]
    fn lift_examples() {
        assert_eq!(
            hensel_lift(&PolyF2::from_u64(0b1011), 7).unwrap(),
            p("x^3+2x^2+x-1")
        );
        assert_eq!(
            hensel_lift(&PolyF2::from_u64(0b1101), 7).unwrap(),
            p("x^3-x^2+2x-1")
        );
        for n in [1, 3, 5, 7, 9, 15] {
            assert_eq!(hensel_lift(&PolyF2::from_u64(0b11), n).unwrap(), p("x-1"));
        }
        assert!(matches!(
            hensel_lift(&PolyF2::from_u64(0b111), 7),
            Err(Error::NotAFactor(_, 7))
        ));
        assert!(hensel_lift(&PolyF2::from_u64(0b101), 3).is_err());
    }

    #[test]
    fn table_n7() {
        let t = FactorTable::new(7).unwrap();
        assert_eq!(t.selfrec_ids(), vec![0]);
        assert_eq!(t.factor(0).poly, p("x-1"));
        assert_eq!(t.factor(0).j, 1);
        assert_eq!(t.pair_ids(), vec![(1, 2)]);
        assert_eq!(t.factor(1).poly, p("x^3+2x^2+x-1"));
        assert_eq!(t.factor(2).poly, p("x^3-x^2+2x-1"));
        assert_eq!(t.factor(1).j, 7);
    }

    #[test]
    fn table_n9_and_n1() {
        let t = FactorTable::new(9).unwrap();
        assert!(t.pair_ids().is_empty());
        let degrees: Vec<usize> = t.factors().iter().map(Factor::degree).collect();
        assert_eq!(degrees, vec![1, 2, 6]);
        let t1 = FactorTable::new(1).unwrap();
        assert_eq!(t1.len(), 1);
        assert_eq!(t1.factor(0).poly, p("x-1"));
    }

    #[test]
    fn decompose_products() {
        let t = FactorTable::new(7).unwrap();
        let fg = t.product([1, 2]);
        assert_eq!(t.decompose(&fg).unwrap(), vec![1, 2]);
        assert_eq!(t.decompose(&PolyZ4::one()).unwrap(), Vec::<usize>::new());
        assert!(t.decompose(&p("x^3+x+1")).is_err());
        assert!(t.decompose(&p("x^2+2x+1")).is_err());
        assert!(t.decompose(&p("2x+2")).is_err());
    }

    #[test]
    fn tables_up_to_201() {
        for n in (1..=201u64).step_by(2) {
            let t = FactorTable::new(n).unwrap();
            let prof = t.profiles().clone();
            let mut f2: Vec<(u64, Vec<u8>)> = factor_f2_grouped(n)
                .unwrap()
                .into_iter()
                .flat_map(|(j, ks)| ks.into_iter().map(move |k| (j, k.coeffs())))
                .collect();
            let mut reduced: Vec<(u64, Vec<u8>)> = t
                .factors()
                .iter()
                .map(|f| (f.j, f.poly.mu().coeffs()))
                .collect();
            f2.sort();
            reduced.sort();
            assert_eq!(f2, reduced, "n={n}");
            let by_j: HashMap<u64, arith::DivisorProfile> =
                prof.profiles.iter().map(|d| (d.j, *d)).collect();
            for (id, f) in t.factors().iter().enumerate() {
                let d = by_j[&f.j];
                assert_eq!(f.degree() as u64, d.ord2);
                assert!(is_irreducible(&f.poly.mu()));
                assert_eq!(t.is_self_reciprocal(id), d.in_n2, "n={n} id={id}");
                assert_eq!(f.poly.reciprocal().unwrap(), t.factor(f.reciprocal).poly);
            }
            for (a, b) in t.pair_ids() {
                assert!(t.factor(a).poly < t.factor(b).poly);
            }
        }
    }

    #[test]
    fn idempotent_split_matches_field() {
        for j in (3..400u64).step_by(2) {
            let m = arith::ord(j).unwrap() as usize;
            let mut a = factor_via_field(j, m).unwrap();
            let mut b = factor_via_idempotents(j, m).unwrap();
            a.sort_by_key(|p| p.coeffs());
            b.sort_by_key(|p| p.coeffs());
            assert_eq!(a, b, "j = {j}");
        }
    }

    #[test]
    fn cyclotomic_mod_two() {
        assert_eq!(cyclotomic_f2(1), PolyF2::from_u64(0b11));
        assert_eq!(cyclotomic_f2(3), PolyF2::from_u64(0b111));
        assert_eq!(cyclotomic_f2(9), PolyF2::from_u64(0b1001001));
        assert_eq!(cyclotomic_f2(15), PolyF2::from_u64(0b110111011));
        for j in (1..200u64).step_by(2) {
            assert_eq!(cyclotomic_f2(j).degree(), Some(arith::phi(j) as usize));
        }
    }
}
