/// Fixed-capacity bitset over `0..cap` used for subset-sum sweeps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct BitSet {
    words: Vec<u64>,
    cap: usize,
}

impl BitSet {
    pub fn new(cap: usize) -> Self {
        BitSet {
            words: vec![0; cap.div_ceil(64).max(1)],
            cap,
        }
    }

    pub fn singleton(cap: usize, i: usize) -> Self {
        let mut s = Self::new(cap);
        s.insert(i);
        s
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.cap, "bit {i} out of range {}", self.cap);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    /// `self |= self << k`, dropping bits past the capacity.
    fn or_shifted(&mut self, k: usize) {
        if k == 0 {
            return;
        }
        let (ws, bs) = (k / 64, k % 64);
        for i in (ws..self.words.len()).rev() {
            let mut v = self.words[i - ws] << bs;
            if bs != 0 && i > ws {
                v |= self.words[i - ws - 1] >> (64 - bs);
            }
            self.words[i] |= v;
        }
        self.trim();
    }

    fn trim(&mut self) {
        let extra = self.words.len() * 64 - self.cap;
        if extra > 0 && extra < 64 {
            let last = self.words.len() - 1;
            self.words[last] &= u64::MAX >> extra;
        }
    }

    /// Sumset with the progression `{0, step, 2 step, ..., count step}`.
    pub fn add_progression(&mut self, step: usize, count: usize) {
        let mut covered = 0;
        while covered < count {
            let jump = (covered + 1).min(count - covered);
            self.or_shifted(jump * step);
            covered += jump;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn progression_sumset_matches_naive() {
        for cap in [5usize, 64, 65, 200] {
            for step in 1..7 {
                for count in 0..9 {
                    let mut s = BitSet::new(cap);
                    s.insert(0);
                    s.insert(3.min(cap - 1));
                    let base: Vec<usize> = s.iter().collect();
                    s.add_progression(step, count);
                    let expect: BTreeSet<usize> = base
                        .iter()
                        .flat_map(|&b| (0..=count).map(move |c| b + c * step))
                        .filter(|&v| v < cap)
                        .collect();
                    assert_eq!(s.iter().collect::<BTreeSet<_>>(), expect);
                }
            }
        }
    }
}
