//! Self-check suite behind `z4hull verify`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytics::{
    average_dim2, check_bounds, codes_with_hull, count_by_dim2, expectation_checks, flatten,
    hull_dim2_set, hull_type_set, hull_type_set_by_profiles, Rational,
};
use crate::arith::{b_n, b_n_via_n2, divisor_profiles, is_in_n2, n2_factorization};
use crate::code::{CodeType, CyclicCode};
use crate::error::{Error, Result};
use crate::factor::FactorTable;
use crate::oracle::{brute_dual, brute_hull, codewords_of};
use crate::reference;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Codeword,
    Structure,
    Tables,
    Bounds,
    All,
}

impl Level {
    /// Default and largest accepted `max` for the level.
    pub fn limits(self) -> (u64, u64) {
        match self {
            Level::Codeword => (9, 9),
            Level::Structure => (35, 63),
            Level::Tables => (53, 53),
            Level::Bounds => (9999, 10_000),
            Level::All => (0, 0),
        }
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "codeword" => Ok(Level::Codeword),
            "structure" => Ok(Level::Structure),
            "tables" => Ok(Level::Tables),
            "bounds" => Ok(Level::Bounds),
            "all" => Ok(Level::All),
            _ => Err(Error::Range(format!("unknown level {s:?}"))),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Level::Codeword => "codeword",
            Level::Structure => "structure",
            Level::Tables => "tables",
            Level::Bounds => "bounds",
            Level::All => "all",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub level: Level,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

type Outcome = std::result::Result<String, String>;

fn record(out: &mut Vec<CheckResult>, level: Level, name: &str, f: impl FnOnce() -> Outcome) {
    let (passed, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    out.push(CheckResult {
        level,
        name: name.to_string(),
        passed,
        detail,
    });
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn odd_upto(max: u64) -> impl Iterator<Item = u64> {
    (1..=max).step_by(2)
}

fn table(n: u64) -> std::result::Result<Arc<FactorTable>, String> {
    lib(FactorTable::new(n)).map(Arc::new)
}

/// Runs the checks of `level`. `max` bounds the lengths swept and defaults to
/// the level's own default; a value above the level's limit is rejected, except
/// under [`Level::All`] where it is clamped per level.
pub fn run(level: Level, max: Option<u64>) -> Result<Report> {
    let mut checks = Vec::new();
    let levels: &[Level] = match level {
        Level::All => &[
            Level::Structure,
            Level::Tables,
            Level::Bounds,
            Level::Codeword,
        ],
        _ => std::slice::from_ref(&level),
    };
    for &l in levels {
        let (default, limit) = l.limits();
        let m = match max {
            None => default,
            Some(m) if level == Level::All => m.min(limit),
            Some(m) if m > limit => {
                return Err(Error::SizeGuard {
                    what: "verify --max at this level",
                    n: m,
                    max: limit,
                })
            }
            Some(m) => m,
        };
        match l {
            Level::Codeword => codeword_checks(m, &mut checks),
            Level::Structure => structure_checks(m, &mut checks),
            Level::Tables => table_checks(m, &mut checks),
            Level::Bounds => bounds_checks(m, &mut checks),
            Level::All => unreachable!(),
        }
    }
    Ok(Report { checks })
}

fn codeword_checks(max: u64, out: &mut Vec<CheckResult>) {
    let l = Level::Codeword;
    for n in odd_upto(max) {
        record(out, l, &format!("codewords n={n}"), || {
            let t = table(n)?;
            let codes: Vec<CyclicCode> = CyclicCode::all(t).collect();
            let total = 4f64.powi(n as i32) as usize;
            let bad: Vec<String> = codes
                .par_iter()
                .filter_map(|c| {
                    let check = || -> std::result::Result<(), String> {
                        let words = lib(codewords_of(c))?;
                        let ty = c.type_of();
                        if words.len() != 1usize << ty.dim2() {
                            return Err(format!("|C| = {} but type {ty}", words.len()));
                        }
                        let dual = lib(brute_dual(&words))?;
                        if words.len() * dual.len() != total {
                            return Err(format!("|C||C^perp| = {}", words.len() * dual.len()));
                        }
                        if dual != lib(codewords_of(&c.dual()))? {
                            return Err("dual mismatch".into());
                        }
                        if lib(brute_hull(&words))? != lib(codewords_of(&c.hull()))? {
                            return Err("hull mismatch".into());
                        }
                        Ok(())
                    };
                    check().err().map(|e| format!("{:?}: {e}", c.assignment()))
                })
                .collect();
            if bad.is_empty() {
                Ok(format!("{} codes", codes.len()))
            } else {
                Err(bad.join("; "))
            }
        });
    }
}

fn exhaustive_hull_stats(
    t: &Arc<FactorTable>,
) -> (BTreeSet<CodeType>, BTreeMap<u64, BigUint>, usize) {
    let mut types = BTreeSet::new();
    let mut hist: BTreeMap<u64, BigUint> = BTreeMap::new();
    let mut count = 0;
    for c in CyclicCode::all(t.clone()) {
        let ty = c.hull().type_of();
        types.insert(ty);
        *hist.entry(ty.dim2()).or_default() += 1u32;
        count += 1;
    }
    (types, hist, count)
}

fn structure_checks(max: u64, out: &mut Vec<CheckResult>) {
    let l = Level::Structure;
    record(out, l, "local expectations and identities", || {
        let e = lib(expectation_checks())?;
        Ok(format!("{} and {}", e.selfrec, e.pair))
    });
    for n in odd_upto(max) {
        record(out, l, &format!("structure n={n}"), || {
            let t = table(n)?;
            let p = lib(divisor_profiles(n))?;
            let expect_codes = 3usize.pow(p.code_count_exponent() as u32);
            let exhaustive = expect_codes <= 3usize.pow(8);
            if exhaustive {
                let mut seen = 0;
                for c in CyclicCode::all(t.clone()) {
                    let d = c.dual();
                    let h = c.hull();
                    if d.dual() != c {
                        return Err(format!("dual not an involution at {:?}", c.assignment()));
                    }
                    if h != c.intersection(&d) || !c.contains(&h) || !d.contains(&h) {
                        return Err(format!("hull not C ∩ C^perp at {:?}", c.assignment()));
                    }
                    if c.dim2() + d.dim2() != 2 * n {
                        return Err(format!("dual cardinality at {:?}", c.assignment()));
                    }
                    seen += 1;
                }
                if seen != expect_codes {
                    return Err(format!("{seen} codes, expected {expect_codes}"));
                }
            }
            let types = lib(hull_type_set(n))?;
            if n <= 35 && types != lib(hull_type_set_by_profiles(n, 1 << 22))? {
                return Err("type DP disagrees with the profile walk".into());
            }
            let dims = lib(hull_dim2_set(n))?;
            let from_types: BTreeSet<u64> = flatten(&types).iter().map(CodeType::dim2).collect();
            if dims != from_types {
                return Err("2-dimension set disagrees with the type set".into());
            }
            let counts = lib(count_by_dim2(n))?;
            if counts.support().collect::<BTreeSet<_>>() != dims {
                return Err("count support disagrees with the 2-dimension set".into());
            }
            if counts.total() != BigUint::from(3u32).pow(p.code_count_exponent() as u32) {
                return Err("counts do not sum to the number of codes".into());
            }
            if counts.mean() != lib(average_dim2(n))? {
                return Err(format!("mean {} != E(n)", counts.mean()));
            }
            if n <= 15 {
                let (ex_types, ex_hist, _) = exhaustive_hull_stats(&t);
                if ex_types != flatten(&types) {
                    return Err("exhaustive hull types disagree".into());
                }
                if ex_hist != counts.counts {
                    return Err("exhaustive histogram disagrees".into());
                }
            }
            if n <= 9 {
                let all: Vec<CyclicCode> = CyclicCode::all(t.clone()).collect();
                let hulls: HashSet<CyclicCode> = all.iter().map(CyclicCode::hull).collect();
                let covered: usize = hulls.iter().map(|d| codes_with_hull(d).len()).sum();
                if covered != all.len() {
                    return Err(format!("fibers cover {covered} of {} codes", all.len()));
                }
                if !all.iter().all(|c| codes_with_hull(&c.hull()).contains(c)) {
                    return Err("a code is missing from its hull's fiber".into());
                }
            }
            Ok(format!(
                "{} factors, {expect_codes} codes{}",
                t.len(),
                if exhaustive { ", exhaustive" } else { "" }
            ))
        });
    }
}

fn table_checks(max: u64, out: &mut Vec<CheckResult>) {
    let l = Level::Tables;
    record(out, l, "hull type table", || {
        let mut rows = 0;
        for n in reference::hull_type_lengths().filter(|&n| n <= max) {
            let want = reference::hull_types(n).expect("listed length");
            let got = lib(hull_type_set(n))?;
            if got != want {
                return Err(format!("n = {n}: got {got:?}"));
            }
            rows += 1;
        }
        Ok(format!("{rows} rows"))
    });
    record(out, l, "average table", || {
        let mut rows = 0;
        for row in reference::averages().into_iter().filter(|r| r.n <= max) {
            let b = lib(b_n(row.n))?;
            let e = lib(average_dim2(row.n))?;
            if b != row.b_n || e != row.e {
                return Err(format!("n = {}: got B = {b}, E = {e}", row.n));
            }
            rows += 1;
        }
        Ok(format!("{rows} rows"))
    });
}

fn bounds_checks(max: u64, out: &mut Vec<CheckResult>) {
    let l = Level::Bounds;
    record(out, l, &format!("bounds sweep n<={max}"), || {
        let failures: Vec<String> = odd_upto(max)
            .collect::<Vec<_>>()
            .par_iter()
            .filter_map(|&n| {
                let check = || -> std::result::Result<(), String> {
                    let r = lib(check_bounds(n))?;
                    if r.in_n2 != lib(is_in_n2(n))? || r.tight != r.in_n2 {
                        return Err("tightness".into());
                    }
                    if r.in_n2 {
                        if r.e != Rational::new(n as i64, 3) {
                            return Err(format!("E = {} != n/3", r.e));
                        }
                    } else {
                        let f = lib(n2_factorization(n))?;
                        let via = lib(b_n_via_n2(n, &f))?;
                        if via != r.b_n {
                            return Err(format!("B_n = {} but factorization gives {via}", r.b_n));
                        }
                    }
                    Ok(())
                };
                check().err().map(|e| format!("n = {n}: {e}"))
            })
            .collect();
        if failures.is_empty() {
            Ok(format!("{} lengths", max.div_ceil(2)))
        } else {
            Err(failures.join("; "))
        }
    });
}
