use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::bitset::BitSet;
use crate::arith::{divisor_profiles, DivisorProfiles};
use crate::code::CodeType;
use crate::error::{Error, Result};

/// Exponent profile of a hull type: `a_j`, `c_j` for divisors outside N2 and
/// `b_j` for divisors in N2, keyed by `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TypeProfile {
    pub a: BTreeMap<u64, u64>,
    pub b: BTreeMap<u64, u64>,
    pub c: BTreeMap<u64, u64>,
}

impl TypeProfile {
    pub fn is_admissible(&self, profiles: &DivisorProfiles) -> bool {
        let mut seen = 0;
        for p in &profiles.profiles {
            if p.in_n2 {
                let b = self.b.get(&p.j).copied().unwrap_or(0);
                if b > p.gamma || self.a.contains_key(&p.j) || self.c.contains_key(&p.j) {
                    return false;
                }
                seen += self.b.contains_key(&p.j) as usize;
            } else {
                let a = self.a.get(&p.j).copied().unwrap_or(0);
                let c = self.c.get(&p.j).copied().unwrap_or(0);
                if a > p.beta || c > 2 * (p.beta - a) || self.b.contains_key(&p.j) {
                    return false;
                }
                seen += self.a.contains_key(&p.j) as usize;
                seen += self.c.contains_key(&p.j) as usize;
            }
        }
        seen == self.a.len() + self.b.len() + self.c.len()
    }

    pub fn hull_type(&self, profiles: &DivisorProfiles) -> CodeType {
        let ord = |j: &u64| {
            profiles
                .profiles
                .iter()
                .find(|p| p.j == *j)
                .map(|p| p.ord2)
                .unwrap_or(0)
        };
        let k1 = self.a.iter().map(|(j, a)| ord(j) * a).sum();
        let k2 = self.b.iter().map(|(j, b)| ord(j) * b).sum::<u64>()
            + self.c.iter().map(|(j, c)| ord(j) * c).sum::<u64>();
        CodeType::new(k1, k2)
    }

    /// Every admissible profile, as an explicit list.
    ///
    /// Fails when the list would exceed `limit` entries.
    pub fn enumerate(profiles: &DivisorProfiles, limit: u64) -> Result<Vec<TypeProfile>> {
        let mut size: u64 = 1;
        for p in &profiles.profiles {
            let local = if p.in_n2 {
                p.gamma + 1
            } else {
                (0..=p.beta).map(|a| 2 * (p.beta - a) + 1).sum()
            };
            size = size.saturating_mul(local);
        }
        if size > limit {
            return Err(Error::SizeGuard {
                what: "type profile enumeration",
                n: profiles.n,
                max: limit,
            });
        }
        let mut out = vec![TypeProfile {
            a: BTreeMap::new(),
            b: BTreeMap::new(),
            c: BTreeMap::new(),
        }];
        for p in &profiles.profiles {
            let mut next = Vec::new();
            for tp in &out {
                if p.in_n2 {
                    for b in 0..=p.gamma {
                        let mut t = tp.clone();
                        t.b.insert(p.j, b);
                        next.push(t);
                    }
                } else {
                    for a in 0..=p.beta {
                        for c in 0..=2 * (p.beta - a) {
                            let mut t = tp.clone();
                            t.a.insert(p.j, a);
                            t.c.insert(p.j, c);
                            next.push(t);
                        }
                    }
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// Achievable hull types grouped by `k1`.
pub type TypeSet = BTreeMap<u64, BTreeSet<u64>>;

/// Flatten a grouped type set.
pub fn flatten(set: &TypeSet) -> BTreeSet<CodeType> {
    set.iter()
        .flat_map(|(&k1, k2s)| k2s.iter().map(move |&k2| CodeType::new(k1, k2)))
        .collect()
}

/// All hull types `(k1, k2)` of cyclic codes of length `n`.
///
/// Subset-sum over divisors: the state maps each reachable `k1` to the set of
/// reachable `k2`, and a divisor outside N2 with `beta` pairs branches on
/// `a`, adding `ord * a` to `k1` and the progression `ord * {0..2(beta - a)}`
/// to `k2`. States with equal `k1` are merged by union.
pub fn hull_type_set(n: u64) -> Result<TypeSet> {
    let profiles = divisor_profiles(n)?;
    let cap = n as usize + 1;
    let mut base = BitSet::singleton(cap, 0);
    for p in profiles.profiles.iter().filter(|p| p.in_n2) {
        base.add_progression(p.ord2 as usize, p.gamma as usize);
    }
    let mut states: BTreeMap<u64, BitSet> = BTreeMap::from([(0, base)]);
    for p in profiles.profiles.iter().filter(|p| !p.in_n2 && p.beta > 0) {
        let mut next: BTreeMap<u64, BitSet> = BTreeMap::new();
        for (&k1, k2s) in &states {
            for a in 0..=p.beta {
                let mut set = k2s.clone();
                set.add_progression(p.ord2 as usize, 2 * (p.beta - a) as usize);
                let key = k1 + p.ord2 * a;
                match next.get_mut(&key) {
                    Some(existing) => existing.union_with(&set),
                    None => {
                        next.insert(key, set);
                    }
                }
            }
        }
        states = next;
    }
    Ok(states
        .into_iter()
        .map(|(k1, set)| (k1, set.iter().map(|k2| k2 as u64).collect()))
        .collect())
}

/// The same set by walking every admissible [`TypeProfile`] explicitly.
pub fn hull_type_set_by_profiles(n: u64, limit: u64) -> Result<TypeSet> {
    let profiles = divisor_profiles(n)?;
    let mut out = TypeSet::new();
    for tp in TypeProfile::enumerate(&profiles, limit)? {
        let t = tp.hull_type(&profiles);
        out.entry(t.k1).or_default().insert(t.k2);
    }
    Ok(out)
}

/// All hull 2-dimensions: sums of `ord * D` with `D <= gamma` over divisors in
/// N2 and `ord * T` with `T <= 2 beta` over the others.
pub fn hull_dim2_set(n: u64) -> Result<BTreeSet<u64>> {
    let profiles = divisor_profiles(n)?;
    let mut set = BitSet::singleton(2 * n as usize + 1, 0);
    for p in &profiles.profiles {
        let count = if p.in_n2 { p.gamma } else { 2 * p.beta };
        set.add_progression(p.ord2 as usize, count as usize);
    }
    Ok(set.iter().map(|l| l as u64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(groups: &[(u64, &[u64])]) -> TypeSet {
        groups
            .iter()
            .map(|(k1, k2s)| (*k1, k2s.iter().copied().collect()))
            .collect()
    }

    #[test]
    fn small_rows() {
        assert_eq!(
            hull_type_set(7).unwrap(),
            row(&[(0, &[0, 1, 3, 4, 6, 7]), (3, &[0, 1])])
        );
        assert_eq!(hull_type_set(3).unwrap(), row(&[(0, &[0, 1, 2, 3])]));
        assert_eq!(hull_type_set(1).unwrap(), row(&[(0, &[0, 1])]));
        assert_eq!(
            hull_type_set(21).unwrap()[&9],
            [0, 1, 2, 3].into_iter().collect()
        );
    }

    #[test]
    fn dim2_sets() {
        assert_eq!(hull_dim2_set(1).unwrap(), [0, 1].into());
        assert_eq!(hull_dim2_set(7).unwrap(), [0, 1, 3, 4, 6, 7].into());
        assert_eq!(hull_dim2_set(9).unwrap(), [0, 1, 2, 3, 6, 7, 8, 9].into());
    }

    #[test]
    fn dp_agrees_with_profile_walk() {
        for n in (1..=63).step_by(2) {
            let dp = hull_type_set(n).unwrap();
            let walk = hull_type_set_by_profiles(n, 1 << 22).unwrap();
            assert_eq!(dp, walk, "n = {n}");
            let dims: BTreeSet<u64> = flatten(&dp).iter().map(CodeType::dim2).collect();
            assert_eq!(dims, hull_dim2_set(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn profiles_are_admissible() {
        let profiles = divisor_profiles(21).unwrap();
        let all = TypeProfile::enumerate(&profiles, 1 << 20).unwrap();
        assert!(all.iter().all(|t| t.is_admissible(&profiles)));
        let mut bad = all[0].clone();
        let j = *bad.a.keys().next().unwrap();
        bad.c.insert(j, 100);
        assert!(!bad.is_admissible(&profiles));
        assert!(TypeProfile::enumerate(&profiles, 2).is_err());
    }
}
