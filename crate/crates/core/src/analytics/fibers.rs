use std::sync::Arc;

use serde::Serialize;

use crate::code::{CyclicCode, Slot};
use crate::factor::FactorTable;

/// Exponents of a self-reciprocal factor in the two hull generators
/// `lcm(fg, h*g*)` (`a`) and `lcm(f, h*)` (`d`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SelfRecExponents {
    pub id: usize,
    pub a: bool,
    pub d: bool,
}

/// Exponents of a reciprocal pair `(f, f*)`: `b`, `c` are those of `f`, `f*`
/// in `lcm(fg, h*g*)` and `e`, `f` those of `f`, `f*` in `lcm(f, h*)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PairExponents {
    pub id: usize,
    pub star: usize,
    pub b: bool,
    pub c: bool,
    pub e: bool,
    pub f: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HullProfile {
    pub selfrec: Vec<SelfRecExponents>,
    pub pairs: Vec<PairExponents>,
}

impl HullProfile {
    /// Generator exponents of `d` read as a candidate hull.
    pub fn of(d: &CyclicCode) -> Self {
        let table = d.table();
        let in_a = |i: usize| d.slot(i) != Slot::H;
        let in_d = |i: usize| d.slot(i) == Slot::F;
        let selfrec = table
            .selfrec_ids()
            .into_iter()
            .map(|id| SelfRecExponents {
                id,
                a: in_a(id),
                d: in_d(id),
            })
            .collect();
        let pairs = table
            .pair_ids()
            .into_iter()
            .map(|(id, star)| PairExponents {
                id,
                star,
                b: in_a(id),
                c: in_a(star),
                e: in_d(id),
                f: in_d(star),
            })
            .collect();
        HullProfile { selfrec, pairs }
    }
}

fn selfrec_choices(e: &SelfRecExponents) -> &'static [Slot] {
    match (e.a, e.d) {
        (true, false) => &[Slot::G],
        (true, true) => &[Slot::H, Slot::F],
        (false, _) => &[],
    }
}

/// Slots of `(f, f*)` in the codes whose hull has the given pair exponents.
fn pair_choices(e: &PairExponents) -> &'static [(Slot, Slot)] {
    use Slot::{F, G, H};
    match (e.b, e.c, e.e, e.f) {
        (true, true, true, true) => &[(H, H), (F, F)],
        (true, true, false, true) => &[(G, F), (H, G)],
        (true, true, true, false) => &[(G, H), (F, G)],
        (true, false, true, false) => &[(F, H)],
        (false, true, false, true) => &[(H, F)],
        (true, true, false, false) => &[(G, G)],
        _ => &[],
    }
}

/// All codes with the given hull profile, in lexicographic order of their
/// assignments. Empty when some factor's exponents admit no code.
pub fn codes_with_profile(table: &Arc<FactorTable>, profile: &HullProfile) -> Vec<CyclicCode> {
    let mut options: Vec<(Vec<usize>, Vec<Vec<Slot>>)> = Vec::new();
    for e in &profile.selfrec {
        let ch = selfrec_choices(e);
        if ch.is_empty() {
            return Vec::new();
        }
        options.push((vec![e.id], ch.iter().map(|&s| vec![s]).collect()));
    }
    for e in &profile.pairs {
        let ch = pair_choices(e);
        if ch.is_empty() {
            return Vec::new();
        }
        options.push((
            vec![e.id, e.star],
            ch.iter().map(|&(x, y)| vec![x, y]).collect(),
        ));
    }
    let mut assigns = vec![vec![Slot::F; table.len()]];
    for (ids, choices) in &options {
        let mut next = Vec::with_capacity(assigns.len() * choices.len());
        for a in &assigns {
            for ch in choices {
                let mut a = a.clone();
                for (&id, &s) in ids.iter().zip(ch) {
                    a[id] = s;
                }
                next.push(a);
            }
        }
        assigns = next;
    }
    assigns.sort();
    assigns
        .into_iter()
        .map(|a| CyclicCode::new(Arc::clone(table), a).expect("assignment sized from table"))
        .collect()
}

/// All cyclic codes `c` with `hull(c) = d`.
pub fn codes_with_hull(d: &CyclicCode) -> Vec<CyclicCode> {
    codes_with_profile(d.table(), &HullProfile::of(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn fibers_partition_and_round_trip() {
        for n in [1u64, 3, 5, 7, 9, 15] {
            let t = Arc::new(FactorTable::new(n).unwrap());
            let all: Vec<CyclicCode> = CyclicCode::all(t.clone()).collect();
            let hulls: HashSet<CyclicCode> = all.iter().map(CyclicCode::hull).collect();
            let mut covered = 0;
            for d in &hulls {
                let fiber = codes_with_hull(d);
                assert!(!fiber.is_empty());
                assert!(fiber.iter().all(|c| &c.hull() == d));
                covered += fiber.len();
            }
            assert_eq!(covered, all.len(), "n = {n}");
            for c in &all {
                assert!(codes_with_hull(&c.hull()).contains(c));
            }
            let non_hulls = all.iter().filter(|c| !hulls.contains(c));
            for d in non_hulls {
                assert!(codes_with_hull(d).is_empty());
            }
        }
    }

    #[test]
    fn selfrec_without_a_is_empty() {
        let t = Arc::new(FactorTable::new(3).unwrap());
        let profile = HullProfile {
            selfrec: t
                .selfrec_ids()
                .into_iter()
                .map(|id| SelfRecExponents {
                    id,
                    a: false,
                    d: false,
                })
                .collect(),
            pairs: Vec::new(),
        };
        assert!(codes_with_profile(&t, &profile).is_empty());
    }
}
