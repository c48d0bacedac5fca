use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{b_n, is_in_n2};
use crate::error::{Error, Result};

/// Exact rational in lowest terms with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn from_biguints(num: BigUint, den: BigUint) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            input: s.to_string(),
            reason: "expected an integer or a/b".to_string(),
        };
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rational_op {
    ($tr:ident, $m:ident) => {
        impl $tr for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
    };
}

rational_op!(Add, add);
rational_op!(Sub, sub);
rational_op!(Mul, mul);
rational_op!(Div, div);

/// Average hull 2-dimension over all cyclic codes of length `n`:
/// `(5n - 2 B_n) / 9`.
pub fn average_dim2(n: u64) -> Result<Rational> {
    let b = b_n(n)?;
    Ok(Rational::new(5 * n as i64 - 2 * b as i64, 9))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: u64,
    pub in_n2: bool,
    pub b_n: u64,
    pub e: Rational,
    pub lower: Rational,
    pub upper: Rational,
    /// `E(n) = n/3`, which happens exactly when `n` is in N2.
    pub tight: bool,
}

/// `E(n)` with the bounds `11n/27 <= E(n) < 5n/9` for `n` outside N2 and
/// `E(n) = n/3` exactly for `n` in N2. A violated relation is an error.
pub fn check_bounds(n: u64) -> Result<BoundsReport> {
    let in_n2 = is_in_n2(n)?;
    let b = b_n(n)?;
    let e = average_dim2(n)?;
    let ni = n as i64;
    let lower = Rational::new(11 * ni, 27);
    let upper = Rational::new(5 * ni, 9);
    let third = Rational::new(ni, 3);
    let tight = e == third;
    if tight != in_n2 {
        return Err(Error::Internal(format!(
            "n = {n}: E(n) = {e}, n/3 = {third}, in N2 = {in_n2}"
        )));
    }
    if !in_n2 && !(lower <= e && e < upper) {
        return Err(Error::Internal(format!(
            "n = {n}: E(n) = {e} outside [{lower}, {upper})"
        )));
    }
    Ok(BoundsReport {
        n,
        in_n2,
        b_n: b,
        e,
        lower,
        upper,
        tight,
    })
}

/// Uniform local choices `(0,0)`, `(1,0)`, `(0,1)` for an exponent pair.
const LOCAL: [(i64, i64); 3] = [(0, 0), (1, 0), (0, 1)];

/// Local hull contribution of a self-reciprocal factor: `1 - max{u, 1-u-b}`.
fn selfrec_delta(u: i64, b: i64) -> i64 {
    1 - u.max(1 - u - b)
}

/// Local hull contribution of a reciprocal pair:
/// `2 + min{*, w} - max{*, w} + min{v, o} - max{v, o}` with `* = 1-v-z`,
/// `o = 1-w-d`.
fn pair_triangle(v: i64, z: i64, w: i64, d: i64) -> i64 {
    let star = 1 - v - z;
    let circ = 1 - w - d;
    2 + star.min(w) - star.max(w) + v.min(circ) - v.max(circ)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expectations {
    pub selfrec: Rational,
    pub pair: Rational,
}

/// Exact expectations of the local hull contributions under uniform choices,
/// together with the per-pair identities that underlie the type theorem:
/// `a = min{*, w} + min{o, v}` lies in {0, 1}, `a = 1` forces `z + d = 0`,
/// and `2 - min{*, w} - max{v, o} - min{o, v} - max{w, *} = z + d`.
pub fn expectation_checks() -> Result<Expectations> {
    let selfrec_sum: i64 = LOCAL.iter().map(|&(u, b)| selfrec_delta(u, b)).sum();
    let mut pair_sum = 0;
    for &(v, z) in &LOCAL {
        for &(w, d) in &LOCAL {
            let star = 1 - v - z;
            let circ = 1 - w - d;
            let a = star.min(w) + circ.min(v);
            if !(0..=1).contains(&a) || (a == 1 && z + d != 0) {
                return Err(Error::Internal(format!(
                    "a = {a} out of range at (v,z,w,d) = ({v},{z},{w},{d})"
                )));
            }
            let hex = 2 - star.min(w) - v.max(circ) - circ.min(v) - w.max(star);
            if hex != z + d {
                return Err(Error::Internal(format!(
                    "identity fails at (v,z,w,d) = ({v},{z},{w},{d}): {hex} != {}",
                    z + d
                )));
            }
            pair_sum += pair_triangle(v, z, w, d);
        }
    }
    let out = Expectations {
        selfrec: Rational::new(selfrec_sum, 3),
        pair: Rational::new(pair_sum, 9),
    };
    if out.selfrec != Rational::new(1, 3) || out.pair != Rational::new(10, 9) {
        return Err(Error::Internal(format!(
            "expectations {} and {}",
            out.selfrec, out.pair
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn averages() {
        assert_eq!(average_dim2(15).unwrap(), Rational::new(61, 9));
        assert_eq!(average_dim2(23).unwrap(), Rational::new(113, 9));
        assert_eq!(average_dim2(27).unwrap(), Rational::integer(9));
        assert_eq!(average_dim2(1).unwrap(), Rational::new(1, 3));
    }

    #[test]
    fn bounds_examples() {
        let r = check_bounds(27).unwrap();
        assert!(r.in_n2 && r.tight);
        assert_eq!(r.e.to_string(), "9");
        let r = check_bounds(49).unwrap();
        assert!(!r.in_n2 && !r.tight);
        assert_eq!(r.e, Rational::integer(27));
        assert_eq!(r.lower.to_string(), "539/27");
        assert_eq!(r.upper.to_string(), "245/9");
        let r = check_bounds(1).unwrap();
        assert!(r.in_n2);
        assert_eq!(r.e.to_string(), "1/3");
        assert!(check_bounds(8).is_err());
    }

    #[test]
    fn expectations() {
        let e = expectation_checks().unwrap();
        assert_eq!(e.selfrec, Rational::new(1, 3));
        assert_eq!(e.pair, Rational::new(10, 9));
    }

    #[test]
    fn pair_triangle_distribution() {
        let mut hist = [0; 3];
        for &(v, z) in &LOCAL {
            for &(w, d) in &LOCAL {
                hist[pair_triangle(v, z, w, d) as usize] += 1;
            }
        }
        assert_eq!(hist, [2, 4, 3]);
    }

    #[test]
    fn rational_text() {
        for s in ["61/9", "9", "-2/3", "0"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("6/4".parse::<Rational>().unwrap().to_string(), "3/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        let json = serde_json::to_string(&Rational::new(61, 9)).unwrap();
        assert_eq!(json, "\"61/9\"");
        assert_eq!(
            serde_json::from_str::<Rational>(&json).unwrap(),
            Rational::new(61, 9)
        );
        assert_eq!(
            &Rational::new(1, 3) + &Rational::new(1, 6),
            Rational::new(1, 2)
        );
    }
}
