//! Cyclic codes of odd length over Z4 as assignments of factors.
//!
//! For odd `n` every cyclic code is `<f g, 2 f>` for a unique split
//! `x^n - 1 = f g h` into pairwise coprime monic factors. Since `f`, `g`, `h`
//! are products of distinct basic irreducibles, a code is exactly a choice of
//! [`Slot`] for every factor of the [`FactorTable`], and every gcd/lcm below
//! is a per-factor min/max on exponent vectors.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::FactorTable;
use crate::poly::PolyZ4;

/// Which of `f`, `g`, `h` a factor belongs to.
///
/// Locally at a factor the code is `0` (in `f`), `2R` (in `g`) or all of `R`
/// (in `h`), so a factor of degree `d` contributes `rank * d` to the
/// 2-dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Slot {
    F,
    G,
    H,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::F, Slot::G, Slot::H];

    pub fn rank(self) -> u8 {
        match self {
            Slot::F => 0,
            Slot::G => 1,
            Slot::H => 2,
        }
    }

    pub fn from_rank(rank: u8) -> Slot {
        match rank {
            0 => Slot::F,
            1 => Slot::G,
            _ => Slot::H,
        }
    }
}

/// Type `4^k1 2^k2`, i.e. a code with `4^k1 * 2^k2` codewords.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CodeType {
    pub k1: u64,
    pub k2: u64,
}

impl CodeType {
    pub fn new(k1: u64, k2: u64) -> Self {
        CodeType { k1, k2 }
    }

    /// `log2 |C| = 2 k1 + k2`.
    pub fn dim2(&self) -> u64 {
        2 * self.k1 + self.k2
    }
}

impl fmt::Display for CodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "4^{}2^{}", self.k1, self.k2)
    }
}

/// The generators `<a, 2b>` of a code, kept both as polynomials and as the
/// factor ids they are built from.
///
/// `a` is the product `f g` and `b` the product `f`; both are divisors of
/// `x^n - 1`, so `a = x^n - 1` denotes the zero element of the ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorPair {
    pub a: PolyZ4,
    pub b: PolyZ4,
    pub a_factors: Vec<usize>,
    pub b_factors: Vec<usize>,
}

impl GeneratorPair {
    /// Generators as elements of `Z4[x]/(x^n - 1)`: `[a, 2b]` reduced mod `x^n - 1`.
    pub fn reduced(&self, n: usize) -> [PolyZ4; 2] {
        [self.a.reduce_mod(n), self.b.scale(2).reduce_mod(n)]
    }

    /// The nonzero generators in factored form, e.g.
    /// `["(x+3)(x^3+2x^2+x+3)", "2(x+3)"]`. A redundant `2b` (when `a = b`)
    /// is dropped, and the zero code renders as `["0"]`.
    pub fn factored(&self, table: &FactorTable) -> Vec<String> {
        let n = table.n() as usize;
        let mut parts = Vec::new();
        let a_zero = self.a.reduce_mod(n).is_zero();
        if !a_zero {
            parts.push(render_product(table, &self.a_factors, false));
        }
        let b_redundant = self.a_factors == self.b_factors && !a_zero;
        let b_zero = self.b.scale(2).reduce_mod(n).is_zero();
        if !b_zero && !b_redundant {
            parts.push(render_product(table, &self.b_factors, true));
        }
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        parts
    }

    /// `<g1, g2>` built from [`GeneratorPair::factored`].
    pub fn render(&self, table: &FactorTable) -> String {
        format!("<{}>", self.factored(table).join(", "))
    }
}

fn render_product(table: &FactorTable, ids: &[usize], doubled: bool) -> String {
    let mut s = String::new();
    if doubled {
        s.push('2');
    }
    if ids.is_empty() && !doubled {
        s.push('1');
    }
    for &i in ids {
        s.push('(');
        s.push_str(&table.factor(i).poly.to_string());
        s.push(')');
    }
    s
}

/// A cyclic code of odd length `n` over Z4.
#[derive(Clone)]
pub struct CyclicCode {
    table: Arc<FactorTable>,
    assign: Vec<Slot>,
}

impl CyclicCode {
    pub fn new(table: Arc<FactorTable>, assign: Vec<Slot>) -> Result<Self> {
        if assign.len() != table.len() {
            return Err(Error::AssignmentLength {
                n: table.n(),
                expected: table.len(),
                got: assign.len(),
            });
        }
        Ok(CyclicCode { table, assign })
    }

    /// The code `<f g, 2 f>` for given monic `f` and `g`; `h` is inferred.
    pub fn from_fg(table: Arc<FactorTable>, f: &PolyZ4, g: &PolyZ4) -> Result<Self> {
        let f_ids = table.decompose(f)?;
        let g_ids = table.decompose(g)?;
        if let Some(&shared) = f_ids.iter().find(|i| g_ids.contains(i)) {
            return Err(Error::SharedFactor(table.factor(shared).poly.to_string()));
        }
        let mut assign = vec![Slot::H; table.len()];
        for i in f_ids {
            assign[i] = Slot::F;
        }
        for i in g_ids {
            assign[i] = Slot::G;
        }
        Self::new(table, assign)
    }

    /// `{0}`: every factor in `f`.
    pub fn zero_code(table: Arc<FactorTable>) -> Self {
        let assign = vec![Slot::F; table.len()];
        CyclicCode { table, assign }
    }

    /// `R_n` itself: every factor in `h`.
    pub fn full_space(table: Arc<FactorTable>) -> Self {
        let assign = vec![Slot::H; table.len()];
        CyclicCode { table, assign }
    }

    /// `2 R_n`: every factor in `g`.
    pub fn doubled_space(table: Arc<FactorTable>) -> Self {
        let assign = vec![Slot::G; table.len()];
        CyclicCode { table, assign }
    }

    /// All `3^(s + 2t)` cyclic codes of length `n`, in lexicographic order of
    /// their assignments.
    pub fn all(table: Arc<FactorTable>) -> impl Iterator<Item = CyclicCode> {
        let len = table.len();
        let total = 3u64
            .checked_pow(len as u32)
            .expect("too many codes to enumerate");
        (0..total).map(move |mut idx| {
            let mut assign = vec![Slot::F; len];
            for slot in assign.iter_mut().rev() {
                *slot = Slot::ALL[(idx % 3) as usize];
                idx /= 3;
            }
            CyclicCode {
                table: Arc::clone(&table),
                assign,
            }
        })
    }

    pub fn table(&self) -> &Arc<FactorTable> {
        &self.table
    }

    pub fn n(&self) -> u64 {
        self.table.n()
    }

    pub fn assignment(&self) -> &[Slot] {
        &self.assign
    }

    pub fn slot(&self, id: usize) -> Slot {
        self.assign[id]
    }

    fn ids_in(&self, slot: Slot) -> Vec<usize> {
        (0..self.assign.len())
            .filter(|&i| self.assign[i] == slot)
            .collect()
    }

    pub fn f(&self) -> PolyZ4 {
        self.table.product(self.ids_in(Slot::F))
    }

    pub fn g(&self) -> PolyZ4 {
        self.table.product(self.ids_in(Slot::G))
    }

    pub fn h(&self) -> PolyZ4 {
        self.table.product(self.ids_in(Slot::H))
    }

    pub fn generators(&self) -> GeneratorPair {
        let a_factors: Vec<usize> = (0..self.assign.len())
            .filter(|&i| self.assign[i] != Slot::H)
            .collect();
        let b_factors = self.ids_in(Slot::F);
        GeneratorPair {
            a: self.table.product(a_factors.iter().copied()),
            b: self.table.product(b_factors.iter().copied()),
            a_factors,
            b_factors,
        }
    }

    /// The dual code `<h* g*, 2 h*>`.
    ///
    /// Taking reciprocals fixes self-reciprocal factors and swaps the members
    /// of each pair, so factor `i` of the dual takes the slot of factor
    /// `i*` with `f` and `h` exchanged.
    pub fn dual(&self) -> CyclicCode {
        let assign = (0..self.assign.len())
            .map(|i| match self.assign[self.table.factor(i).reciprocal] {
                Slot::F => Slot::H,
                Slot::G => Slot::G,
                Slot::H => Slot::F,
            })
            .collect();
        CyclicCode {
            table: Arc::clone(&self.table),
            assign,
        }
    }

    /// The hull `C ∩ C^⊥`, generated by `<lcm(f g, h* g*), 2 lcm(f, h*)>`.
    ///
    /// Its `f` part is `lcm(f, h*)`, its `h` part is `gcd(h, f*)`, and the
    /// remaining factors form its `g` part.
    pub fn hull(&self) -> CyclicCode {
        let assign = (0..self.assign.len())
            .map(|i| {
                let own = self.assign[i];
                let star = self.assign[self.table.factor(i).reciprocal];
                let in_lcm_f_hstar = own == Slot::F || star == Slot::H;
                let in_gcd_h_fstar = own == Slot::H && star == Slot::F;
                if in_lcm_f_hstar {
                    Slot::F
                } else if in_gcd_h_fstar {
                    Slot::H
                } else {
                    Slot::G
                }
            })
            .collect();
        CyclicCode {
            table: Arc::clone(&self.table),
            assign,
        }
    }

    /// Ideal intersection: per factor the smaller of the two local ideals.
    pub fn intersection(&self, other: &CyclicCode) -> CyclicCode {
        assert_eq!(self.n(), other.n(), "codes of different lengths");
        let assign = self
            .assign
            .iter()
            .zip(&other.assign)
            .map(|(a, b)| Slot::from_rank(a.rank().min(b.rank())))
            .collect();
        CyclicCode {
            table: Arc::clone(&self.table),
            assign,
        }
    }

    /// Ideal containment `other ⊆ self`.
    pub fn contains(&self, other: &CyclicCode) -> bool {
        self.n() == other.n()
            && self
                .assign
                .iter()
                .zip(&other.assign)
                .all(|(a, b)| b.rank() <= a.rank())
    }

    pub fn type_of(&self) -> CodeType {
        let mut t = CodeType::new(0, 0);
        for (i, slot) in self.assign.iter().enumerate() {
            let d = self.table.factor(i).degree() as u64;
            match slot {
                Slot::F => {}
                Slot::G => t.k2 += d,
                Slot::H => t.k1 += d,
            }
        }
        t
    }

    pub fn dim2(&self) -> u64 {
        self.type_of().dim2()
    }
}

impl PartialEq for CyclicCode {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n() && self.assign == other.assign
    }
}

impl Eq for CyclicCode {}

impl Hash for CyclicCode {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n().hash(state);
        self.assign.hash(state);
    }
}

impl fmt::Debug for CyclicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CyclicCode")
            .field("n", &self.n())
            .field("assign", &self.assign)
            .finish()
    }
}

/// Whether `u` is orthogonal to `v` and all its cyclic shifts, decided by
/// `u(x) v*(x) = 0` in `Z4[x]/(x^n - 1)`.
///
/// `v*` is taken as `v(x^{-1})` in the quotient ring, which differs from the
/// reciprocal polynomial only by a unit, so no condition on `v` is needed.
pub fn poly_shift_orthogonal(u: &PolyZ4, v: &PolyZ4, n: usize) -> bool {
    u.mul_mod(&v.reversed_mod(n), n).is_zero()
}
