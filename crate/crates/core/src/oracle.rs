//! Brute-force codeword-level ground truth for small lengths.
//!
//! Vectors of `Z4^n` are bit-sliced into a low and a high plane, so the key
//! `lo | hi << n` enumerates `Z4^n` as `0..4^n`.

use rayon::prelude::*;

use crate::code::CyclicCode;
use crate::error::{Error, Result};
use crate::poly::PolyZ4;

pub const SPAN_MAX_N: u64 = 13;
pub const SCAN_MAX_N: u64 = 9;
const SPAN_MAX_LOG2: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorZ4 {
    n: u32,
    lo: u32,
    hi: u32,
}

impl VectorZ4 {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 16, "vectors are limited to length 16");
        VectorZ4 {
            n: n as u32,
            lo: 0,
            hi: 0,
        }
    }

    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        let mut v = Self::zero(coeffs.len());
        for (i, &c) in coeffs.iter().enumerate() {
            v.lo |= ((c & 1) as u32) << i;
            v.hi |= ((c >> 1 & 1) as u32) << i;
        }
        v
    }

    /// Coefficient vector of `p` reduced modulo `x^n - 1`.
    pub fn from_poly(p: &PolyZ4, n: usize) -> Self {
        let r = p.reduce_mod(n);
        let mut c = r.coeffs().to_vec();
        c.resize(n, 0);
        Self::from_coeffs(&c)
    }

    pub fn from_key(key: u64, n: usize) -> Self {
        let mask = (1u64 << n) - 1;
        VectorZ4 {
            n: n as u32,
            lo: (key & mask) as u32,
            hi: (key >> n & mask) as u32,
        }
    }

    pub fn key(&self) -> u64 {
        self.lo as u64 | (self.hi as u64) << self.n
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_zero(&self) -> bool {
        self.lo == 0 && self.hi == 0
    }

    pub fn coeffs(&self) -> Vec<u8> {
        (0..self.n)
            .map(|i| ((self.lo >> i & 1) | (self.hi >> i & 1) << 1) as u8)
            .collect()
    }

    pub fn add(&self, other: &VectorZ4) -> VectorZ4 {
        VectorZ4 {
            n: self.n,
            lo: self.lo ^ other.lo,
            hi: self.hi ^ other.hi ^ (self.lo & other.lo),
        }
    }

    pub fn neg(&self) -> VectorZ4 {
        VectorZ4 {
            n: self.n,
            lo: self.lo,
            hi: self.hi ^ self.lo,
        }
    }

    pub fn scale(&self, c: u8) -> VectorZ4 {
        match c & 3 {
            0 => Self::zero(self.len()),
            1 => *self,
            2 => VectorZ4 {
                n: self.n,
                lo: 0,
                hi: self.lo,
            },
            _ => self.neg(),
        }
    }

    /// The cyclic shift `(c_{n-1}, c_0, ..., c_{n-2})`, i.e. multiplication by `x`.
    pub fn shift(&self) -> VectorZ4 {
        let n = self.n;
        let mask = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let rot = |w: u32| ((w << 1) | (w >> (n - 1))) & mask;
        VectorZ4 {
            n,
            lo: rot(self.lo),
            hi: rot(self.hi),
        }
    }

    /// Euclidean inner product mod 4.
    pub fn dot(&self, other: &VectorZ4) -> u8 {
        let ones = (self.lo & other.lo).count_ones();
        let twos = ((self.hi & other.lo) ^ (self.lo & other.hi)).count_ones();
        ((ones + 2 * twos) & 3) as u8
    }
}

/// A `Z4`-submodule of `Z4^n` held as its sorted element keys together with
/// a generating set.
#[derive(Debug, Clone)]
pub struct CodewordSet {
    n: usize,
    keys: Vec<u64>,
    generators: Vec<VectorZ4>,
}

impl PartialEq for CodewordSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.keys == other.keys
    }
}

impl Eq for CodewordSet {}

impl CodewordSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    pub fn generators(&self) -> &[VectorZ4] {
        &self.generators
    }

    pub fn contains(&self, v: &VectorZ4) -> bool {
        self.keys.binary_search(&v.key()).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VectorZ4> + '_ {
        self.keys
            .iter()
            .map(move |&k| VectorZ4::from_key(k, self.n))
    }

    pub fn is_cyclic(&self) -> bool {
        self.iter().all(|v| self.contains(&v.shift()))
    }

    /// Set intersection; the generating set is rebuilt from the elements.
    pub fn intersection(&self, other: &CodewordSet) -> Result<CodewordSet> {
        assert_eq!(self.n, other.n, "sets of different lengths");
        let keys: Vec<u64> = self
            .keys
            .iter()
            .copied()
            .filter(|k| other.keys.binary_search(k).is_ok())
            .collect();
        from_submodule_keys(self.n, keys)
    }
}

fn check_span_n(n: usize) -> Result<()> {
    if n == 0 || n as u64 > SPAN_MAX_N {
        return Err(Error::SizeGuard {
            what: "span",
            n: n as u64,
            max: SPAN_MAX_N,
        });
    }
    Ok(())
}

/// Incremental closure: a subgroup of `Z4^n` closed under the shift.
struct Closure {
    n: usize,
    seen: Vec<u64>,
    elems: Vec<u64>,
    generators: Vec<VectorZ4>,
}

impl Closure {
    fn new(n: usize) -> Self {
        let mut c = Closure {
            n,
            seen: vec![0; (1usize << (2 * n)).div_ceil(64)],
            elems: Vec::new(),
            generators: Vec::new(),
        };
        c.mark(0);
        c
    }

    fn has(&self, key: u64) -> bool {
        self.seen[(key / 64) as usize] >> (key % 64) & 1 == 1
    }

    fn mark(&mut self, key: u64) {
        self.seen[(key / 64) as usize] |= 1 << (key % 64);
        self.elems.push(key);
    }

    /// Adds `g` and all its shifts.
    fn absorb(&mut self, g: VectorZ4) -> Result<()> {
        let mut h = g;
        for _ in 0..self.n {
            self.absorb_one(h)?;
            h = h.shift();
        }
        Ok(())
    }

    /// Adds one element: the new subgroup is the union of the cosets `S + k h`.
    fn absorb_one(&mut self, h: VectorZ4) -> Result<()> {
        if self.has(h.key()) {
            return Ok(());
        }
        self.generators.push(h);
        let base = self.elems.clone();
        let mut kh = h;
        while !self.has(kh.key()) {
            if (self.elems.len() + base.len()) as u64 > 1 << SPAN_MAX_LOG2 {
                return Err(Error::SizeGuard {
                    what: "span cardinality (log2)",
                    n: (self.elems.len() + base.len()).ilog2() as u64,
                    max: SPAN_MAX_LOG2 as u64,
                });
            }
            for &k in &base {
                let v = VectorZ4::from_key(k, self.n).add(&kh);
                self.mark(v.key());
            }
            kh = kh.add(&h);
        }
        Ok(())
    }

    fn finish(mut self) -> CodewordSet {
        self.elems.sort_unstable();
        CodewordSet {
            n: self.n,
            keys: self.elems,
            generators: self.generators,
        }
    }
}

/// The smallest shift-invariant submodule containing `gens`.
pub fn span(gens: &[VectorZ4], n: usize) -> Result<CodewordSet> {
    check_span_n(n)?;
    let mut c = Closure::new(n);
    for g in gens {
        assert_eq!(g.len(), n, "generator of the wrong length");
        c.absorb(*g)?;
    }
    Ok(c.finish())
}

/// Wraps the keys of a known cyclic submodule, recovering a generating set.
fn from_submodule_keys(n: usize, mut keys: Vec<u64>) -> Result<CodewordSet> {
    keys.sort_unstable();
    let mut c = Closure::new(n);
    for &k in &keys {
        if !c.has(k) {
            c.absorb(VectorZ4::from_key(k, n))?;
        }
    }
    let set = c.finish();
    if set.keys != keys {
        return Err(Error::Internal(
            "keys do not form a cyclic submodule".into(),
        ));
    }
    Ok(set)
}

/// All codewords of a structurally described code.
pub fn codewords_of(code: &CyclicCode) -> Result<CodewordSet> {
    let n = code.n() as usize;
    check_span_n(n)?;
    let gens = code.generators().reduced(n);
    let vs: Vec<VectorZ4> = gens.iter().map(|g| VectorZ4::from_poly(g, n)).collect();
    span(&vs, n)
}

/// Exhaustive dual: every `v` in `Z4^n` orthogonal to each generator of `c`.
pub fn brute_dual(c: &CodewordSet) -> Result<CodewordSet> {
    let n = c.n;
    if n == 0 || n as u64 > SCAN_MAX_N {
        return Err(Error::SizeGuard {
            what: "exhaustive dual scan",
            n: n as u64,
            max: SCAN_MAX_N,
        });
    }
    let gens = c.generators();
    let keys: Vec<u64> = (0..1u64 << (2 * n))
        .into_par_iter()
        .filter(|&k| {
            let v = VectorZ4::from_key(k, n);
            gens.iter().all(|g| g.dot(&v) == 0)
        })
        .collect();
    from_submodule_keys(n, keys)
}

/// `C ∩ C^⊥` by exhaustive scan.
pub fn brute_hull(c: &CodewordSet) -> Result<CodewordSet> {
    c.intersection(&brute_dual(c)?)
}

/// Whether `u` is orthogonal to every cyclic shift of `v`, by dot products.
pub fn shift_orthogonal_by_dots(u: &VectorZ4, v: &VectorZ4) -> bool {
    let mut w = *v;
    for _ in 0..v.len() {
        if u.dot(&w) != 0 {
            return false;
        }
        w = w.shift();
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::poly_shift_orthogonal;
    use crate::factor::FactorTable;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn p(s: &str) -> PolyZ4 {
        s.parse().unwrap()
    }

    /// Plain coordinate arithmetic for comparison with the bit-sliced forms.
    fn naive_dot(a: &[u8], b: &[u8]) -> u8 {
        (a.iter()
            .zip(b)
            .map(|(x, y)| (*x as u32) * (*y as u32))
            .sum::<u32>()
            % 4) as u8
    }

    proptest! {
        #[test]
        fn bit_sliced_ops(a in prop::collection::vec(0u8..4, 1..=13), seed in any::<u64>()) {
            let n = a.len();
            let b: Vec<u8> = (0..n).map(|i| ((seed >> (2 * i)) & 3) as u8).collect();
            let (va, vb) = (VectorZ4::from_coeffs(&a), VectorZ4::from_coeffs(&b));
            prop_assert_eq!(va.coeffs(), a.clone());
            prop_assert_eq!(VectorZ4::from_key(va.key(), n), va);
            let sum: Vec<u8> = a.iter().zip(&b).map(|(x, y)| (x + y) % 4).collect();
            prop_assert_eq!(va.add(&vb).coeffs(), sum);
            prop_assert!(va.add(&va.neg()).is_zero());
            for c in 0..4u8 {
                let sc: Vec<u8> = a.iter().map(|x| x * c % 4).collect();
                prop_assert_eq!(va.scale(c).coeffs(), sc);
            }
            let mut sh = vec![a[n - 1]];
            sh.extend_from_slice(&a[..n - 1]);
            prop_assert_eq!(va.shift().coeffs(), sh);
            prop_assert_eq!(va.dot(&vb), naive_dot(&a, &b));
        }

        #[test]
        fn shift_orthogonality_criterion(
            n in (0usize..5).prop_map(|k| 2 * k + 1),
            a in prop::collection::vec(0u8..4, 9),
            b in prop::collection::vec(0u8..4, 9),
            doubled in any::<bool>(),
        ) {
            let mut u = PolyZ4::new(a[..n].to_vec());
            let v = PolyZ4::new(b[..n].to_vec());
            if doubled {
                u = u.scale(2);
            }
            let by_dots = shift_orthogonal_by_dots(&VectorZ4::from_poly(&u, n), &VectorZ4::from_poly(&v, n));
            prop_assert_eq!(poly_shift_orthogonal(&u, &v, n), by_dots);
        }
    }

    #[test]
    fn span_basics() {
        assert_eq!(span(&[VectorZ4::zero(5)], 5).unwrap().len(), 1);
        let e0 = VectorZ4::from_coeffs(&[1, 0, 0]);
        assert_eq!(span(&[e0], 3).unwrap().len(), 64);
        let two = VectorZ4::from_coeffs(&[2, 0, 0]);
        assert_eq!(span(&[two], 3).unwrap().len(), 8);
        assert!(span(&[], 14).is_err());
    }

    #[test]
    fn example_code_at_codeword_level() {
        let t = Arc::new(FactorTable::new(7).unwrap());
        let c = CyclicCode::from_fg(t, &p("x^3+2x^2+x-1"), &p("x^3-x^2+2x-1")).unwrap();
        let words = codewords_of(&c).unwrap();
        assert_eq!(words.len(), 4 * 8);
        assert!(words.is_cyclic());
        let dual_gens = [
            VectorZ4::from_poly(&(&p("x-1") * &p("x^3+2x^2+x-1")), 7),
            VectorZ4::from_poly(&p("2(x-1)"), 7),
        ];
        let dual = brute_dual(&words).unwrap();
        assert_eq!(dual, span(&dual_gens, 7).unwrap());
        assert_eq!(dual, codewords_of(&c.dual()).unwrap());
        let hull = brute_hull(&words).unwrap();
        let hull_gen = VectorZ4::from_poly(&p("2(x-1)(x^3+2x^2+x-1)"), 7);
        assert_eq!(hull, span(&[hull_gen], 7).unwrap());
        assert_eq!(hull.len(), 8);
    }

    #[test]
    fn trivial_hulls() {
        let t = Arc::new(FactorTable::new(5).unwrap());
        let zero = codewords_of(&CyclicCode::zero_code(t.clone())).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(brute_dual(&zero).unwrap().len(), 1 << 10);
        assert_eq!(brute_hull(&zero).unwrap(), zero);
        let doubled = codewords_of(&CyclicCode::doubled_space(t)).unwrap();
        assert_eq!(doubled.len(), 32);
        assert_eq!(brute_hull(&doubled).unwrap(), doubled);
    }

    #[test]
    fn scan_guard() {
        let v = VectorZ4::from_coeffs(&[1; 11]);
        let s = span(&[v.scale(2)], 11).unwrap();
        assert!(matches!(brute_dual(&s), Err(Error::SizeGuard { .. })));
    }
}
