//! Number theory for odd lengths: multiplicative order of 2, Euler's phi,
//! cyclotomic cosets, membership in N2 (the odd `l` dividing some `2^i + 1`),
//! per-divisor factor counts and the N2-factorization.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{require_odd, Error, Result};

/// Prime factorization by trial division with a 2,3,5 wheel.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if m <= 1 {
        return out;
    }
    for p in [2u64, 3, 5] {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    const GAPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut gi = 0;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += GAPS[gi];
        gi = (gi + 1) % GAPS.len();
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn phi(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .fold(m, |acc, (p, _)| acc / p * (p - 1))
}

/// All positive divisors of `m`, ascending.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(m) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of 2 modulo an odd `j`; `ord(1) = 1`.
pub fn ord(j: u64) -> Result<u64> {
    if j == 0 || j.is_multiple_of(2) {
        return Err(Error::EvenLength(j));
    }
    if j == 1 {
        return Ok(1);
    }
    if j < 64 {
        // Direct search is cheaper than factoring phi for tiny moduli.
        let mut e = 1;
        let mut v = 2 % j;
        while v != 1 {
            v = v * 2 % j;
            e += 1;
        }
        return Ok(e);
    }
    let mut order = phi(j);
    for (p, _) in factorize(order) {
        while order.is_multiple_of(p) && pow_mod(2, order / p, j) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Whether the odd `l` divides `2^i + 1` for some `i >= 1`.
///
/// Uses the order criterion: `l = 1`, or `ord_l(2) = e` is even and
/// `2^{e/2} = -1 (mod l)`.
pub fn is_in_n2(l: u64) -> Result<bool> {
    let e = ord(l)?;
    if l == 1 {
        return Ok(true);
    }
    Ok(e % 2 == 0 && pow_mod(2, e / 2, l) == l - 1)
}

/// Per-divisor data for the factorization of `x^n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DivisorProfile {
    pub j: u64,
    pub in_n2: bool,
    pub ord2: u64,
    pub phi: u64,
    /// Number of self-reciprocal factors of degree `ord2` (zero unless `in_n2`).
    pub gamma: u64,
    /// Number of reciprocal pairs of degree `ord2` (zero when `in_n2`).
    pub beta: u64,
}

impl DivisorProfile {
    pub fn new(j: u64) -> Result<Self> {
        let ord2 = ord(j)?;
        let in_n2 = is_in_n2(j)?;
        let phi = phi(j);
        let (gamma, beta) = if in_n2 {
            (phi / ord2, 0)
        } else {
            (0, phi / (2 * ord2))
        };
        Ok(DivisorProfile {
            j,
            in_n2,
            ord2,
            phi,
            gamma,
            beta,
        })
    }
}

/// Profiles for every divisor of `n` plus the totals `s` (self-reciprocal
/// factors) and `t` (reciprocal pairs).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorProfiles {
    pub n: u64,
    pub profiles: Vec<DivisorProfile>,
    pub s: u64,
    pub t: u64,
}

impl DivisorProfiles {
    /// Number of cyclic codes of length `n` is `3^(s + 2t)`.
    pub fn code_count_exponent(&self) -> u64 {
        self.s + 2 * self.t
    }
}

pub fn divisor_profiles(n: u64) -> Result<DivisorProfiles> {
    require_odd(n)?;
    let profiles = divisors(n)
        .into_iter()
        .map(DivisorProfile::new)
        .collect::<Result<Vec<_>>>()?;
    let s = profiles.iter().map(|p| p.gamma).sum();
    let t = profiles.iter().map(|p| p.beta).sum();
    Ok(DivisorProfiles { n, profiles, s, t })
}

/// `B_n`: the sum of `phi(j)` over divisors `j` of `n` lying in N2.
pub fn b_n(n: u64) -> Result<u64> {
    require_odd(n)?;
    let mut total = 0;
    for j in divisors(n) {
        if is_in_n2(j)? {
            total += phi(j);
        }
    }
    Ok(total)
}

/// 2-adic valuation.
fn v2(mut m: u64) -> u32 {
    let mut v = 0;
    while m.is_multiple_of(2) && m > 0 {
        m /= 2;
        v += 1;
    }
    v
}

/// The coprime split `n = d' * d_1 * d_2 * ...`.
///
/// Prime powers `p^e` with `p` outside N2 go into `d_prime`; those with `p`
/// in N2 go into `d_alpha[alpha]` where `2^alpha` exactly divides `ord_p(2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct N2Factorization {
    pub n: u64,
    pub d_prime: u64,
    /// Entries with value 1 are omitted.
    pub d_alpha: BTreeMap<u32, u64>,
}

impl N2Factorization {
    pub fn d(&self, alpha: u32) -> u64 {
        self.d_alpha.get(&alpha).copied().unwrap_or(1)
    }
}

pub fn n2_factorization(n: u64) -> Result<N2Factorization> {
    require_odd(n)?;
    let mut d_prime = 1;
    let mut d_alpha: BTreeMap<u32, u64> = BTreeMap::new();
    for (p, e) in factorize(n) {
        let pe = p.pow(e);
        if is_in_n2(p)? {
            let alpha = v2(ord(p)?);
            // ord_p(2) is even for p in N2 with p > 1, so alpha = 0 cannot occur.
            if alpha == 0 {
                return Err(Error::Internal(format!(
                    "prime {p} in N2 with odd order of 2"
                )));
            }
            *d_alpha.entry(alpha).or_insert(1) *= pe;
        } else {
            d_prime *= pe;
        }
    }
    Ok(N2Factorization {
        n,
        d_prime,
        d_alpha,
    })
}

/// `B_n = d_1 + sum_{alpha >= 2} (d_alpha - 1)`, valid only for `n` outside N2.
pub fn b_n_via_n2(n: u64, fact: &N2Factorization) -> Result<u64> {
    require_odd(n)?;
    if fact.n != n {
        return Err(Error::Internal(format!(
            "factorization of {} passed for n = {n}",
            fact.n
        )));
    }
    if is_in_n2(n)? {
        return Err(Error::InN2(n));
    }
    let tail: u64 = fact
        .d_alpha
        .iter()
        .filter(|(&alpha, _)| alpha >= 2)
        .map(|(_, &d)| d - 1)
        .sum();
    Ok(fact.d(1) + tail)
}

/// Orbits of `i -> 2i mod n` on `0..n`, each listed from its least element,
/// ordered by that element.
pub fn cyclotomic_cosets(n: u64) -> Result<Vec<Vec<u64>>> {
    require_odd(n)?;
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for a in 0..n {
        if seen[a as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut x = a;
        while !seen[x as usize] {
            seen[x as usize] = true;
            coset.push(x);
            x = x * 2 % n;
        }
        out.push(coset);
    }
    Ok(out)
}
