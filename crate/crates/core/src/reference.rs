//! Reference values for regression checks: hull types for odd `3 <= n <= 35`
//! and `(B_n, E(n))` for odd `3 <= n <= 53`.

use std::collections::BTreeSet;

use crate::analytics::{Rational, TypeSet};

type TypeRow = (u64, &'static [(u64, &'static [u64])]);

const HULL_TYPES: &[TypeRow] = &[
    (3, &[(0, &[0, 1, 2, 3])]),
    (5, &[(0, &[0, 1, 4, 5])]),
    (7, &[(0, &[0, 1, 3, 4, 6, 7]), (3, &[0, 1])]),
    (9, &[(0, &[0, 1, 2, 3, 6, 7, 8, 9])]),
    (11, &[(0, &[0, 1, 10, 11])]),
    (13, &[(0, &[0, 1, 12, 13])]),
    (
        15,
        &[
            (0, &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15]),
            (4, &[0, 1, 2, 3, 4, 5, 6, 7]),
        ],
    ),
    (17, &[(0, &[0, 1, 8, 9, 16, 17])]),
    (19, &[(0, &[0, 1, 18, 19])]),
    (
        21,
        &[
            (
                0,
                &[
                    0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21,
                ],
            ),
            (3, &[0, 1, 2, 3, 6, 7, 8, 9, 12, 13, 14, 15]),
            (6, &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]),
            (9, &[0, 1, 2, 3]),
        ],
    ),
    (23, &[(0, &[0, 1, 11, 12, 22, 23]), (11, &[0, 1])]),
    (25, &[(0, &[0, 1, 4, 5, 20, 21, 24, 25])]),
    (
        27,
        &[(0, &[0, 1, 2, 3, 6, 7, 8, 9, 18, 19, 20, 21, 24, 25, 26, 27])],
    ),
    (29, &[(0, &[0, 1, 28, 29])]),
    (
        31,
        &[
            (0, &[0, 1, 5, 6, 10, 11, 15, 16, 20, 21, 25, 26, 30, 31]),
            (5, &[0, 1, 5, 6, 10, 11, 15, 16, 20, 21]),
            (10, &[0, 1, 5, 6, 10, 11]),
            (15, &[0, 1]),
        ],
    ),
    (
        33,
        &[(
            0,
            &[0, 1, 2, 3, 10, 11, 12, 13, 20, 21, 22, 23, 30, 31, 32, 33],
        )],
    ),
    (
        35,
        &[
            (
                0,
                &[
                    0, 1, 3, 4, 5, 6, 7, 8, 10, 11, 12, 13, 15, 16, 17, 18, 19, 20, 22, 23, 24, 25,
                    27, 28, 29, 30, 31, 32, 34, 35,
                ],
            ),
            (3, &[0, 1, 4, 5, 12, 13, 16, 17, 24, 25, 28, 29]),
            (12, &[0, 1, 3, 4, 5, 6, 7, 8, 10, 11]),
            (15, &[0, 1, 4, 5]),
        ],
    ),
];

/// Reference hull-type set for an odd `n` in `3..=35`.
pub fn hull_types(n: u64) -> Option<TypeSet> {
    HULL_TYPES.iter().find(|(m, _)| *m == n).map(|(_, groups)| {
        groups
            .iter()
            .map(|(k1, k2s)| (*k1, k2s.iter().copied().collect::<BTreeSet<u64>>()))
            .collect()
    })
}

pub fn hull_type_lengths() -> impl Iterator<Item = u64> {
    HULL_TYPES.iter().map(|(n, _)| *n)
}

/// `(n, B_n, E numerator, E denominator)`.
const AVERAGES: &[(u64, u64, i64, i64)] = &[
    (3, 3, 1, 1),
    (5, 5, 5, 3),
    (7, 1, 11, 3),
    (9, 9, 3, 1),
    (11, 11, 11, 3),
    (13, 13, 13, 3),
    (15, 7, 61, 9),
    (17, 17, 17, 3),
    (19, 19, 19, 3),
    (21, 3, 11, 1),
    (23, 1, 113, 9),
    (25, 25, 25, 3),
    (27, 27, 9, 1),
    (29, 29, 29, 3),
    (31, 1, 17, 1),
    (33, 33, 11, 1),
    (35, 5, 55, 3),
    (37, 37, 37, 3),
    (39, 15, 55, 3),
    (41, 41, 41, 3),
    (43, 43, 43, 3),
    (45, 13, 199, 9),
    (47, 1, 233, 9),
    (49, 1, 27, 1),
    (51, 19, 217, 9),
    (53, 53, 53, 3),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AverageRow {
    pub n: u64,
    pub b_n: u64,
    pub e: Rational,
}

pub fn averages() -> Vec<AverageRow> {
    AVERAGES
        .iter()
        .map(|&(n, b_n, num, den)| AverageRow {
            n,
            b_n,
            e: Rational::new(num, den),
        })
        .collect()
}
