//! Named small permutation groups used by the test suites.

use super::{GroupError, PermGroup};

/// `(name, order, descriptor)`.
pub const SMALL_GROUPS: &[(&str, usize, &str)] = &[
    ("1", 1, "deg=1"),
    ("Z2", 2, "deg=2; gens=(0 1)"),
    ("Z3", 3, "deg=3; gens=(0 1 2)"),
    ("Z4", 4, "deg=4; gens=(0 1 2 3)"),
    ("Z2^2", 4, "deg=4; gens=(0 1),(2 3)"),
    ("Z5", 5, "deg=5; gens=(0 1 2 3 4)"),
    ("Z6", 6, "deg=5; gens=(0 1),(2 3 4)"),
    ("S3", 6, "deg=3; gens=(0 1 2),(0 1)"),
    ("Z7", 7, "deg=7; gens=(0 1 2 3 4 5 6)"),
    ("Z8", 8, "deg=8; gens=(0 1 2 3 4 5 6 7)"),
    ("Z2xZ4", 8, "deg=6; gens=(0 1),(2 3 4 5)"),
    ("Z2^3", 8, "deg=6; gens=(0 1),(2 3),(4 5)"),
    ("D4", 8, "deg=4; gens=(0 1 2 3),(0 2)"),
    ("Q8", 8, "deg=8; gens=(0 1 4 5)(2 3 6 7),(0 2 4 6)(1 7 5 3)"),
    ("Z9", 9, "deg=9; gens=(0 1 2 3 4 5 6 7 8)"),
    ("Z3^2", 9, "deg=6; gens=(0 1 2),(3 4 5)"),
    ("D5", 10, "deg=5; gens=(0 1 2 3 4),(1 4)(2 3)"),
    ("Z12", 12, "deg=7; gens=(0 1 2 3),(4 5 6)"),
    ("D6", 12, "deg=6; gens=(0 1 2 3 4 5),(1 5)(2 4)"),
    ("A4", 12, "deg=4; gens=(0 1 2),(1 2 3)"),
    ("Dic3", 12, "deg=12; gens=(0 1 2 3 4 5)(6 7 8 9 10 11),(0 6 3 9)(1 11 4 8)(2 10 5 7)"),
    ("Z16", 16, "deg=16; gens=(0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15)"),
    ("Z2^4", 16, "deg=8; gens=(0 1),(2 3),(4 5),(6 7)"),
    ("Z4^2", 16, "deg=8; gens=(0 1 2 3),(4 5 6 7)"),
    ("D4xZ2", 16, "deg=6; gens=(0 1 2 3),(0 2),(4 5)"),
    ("D8", 16, "deg=8; gens=(0 1 2 3 4 5 6 7),(1 7)(2 6)(3 5)"),
    ("S3xZ3", 18, "deg=6; gens=(0 1 2),(0 1),(3 4 5)"),
    ("Z3wrZ2", 18, "deg=6; gens=(0 1 2),(0 3)(1 4)(2 5)"),
    ("F20", 20, "deg=5; gens=(0 1 2 3 4),(1 2 4 3)"),
    ("Dic5", 20, "deg=20; gens=(0 1 2 3 4 5 6 7 8 9)(10 11 12 13 14 15 16 17 18 19),(0 10 5 15)(1 19 6 14)(2 18 7 13)(3 17 8 12)(4 16 9 11)"),
    ("F21", 21, "deg=7; gens=(0 1 2 3 4 5 6),(1 2 4)(3 6 5)"),
    ("S4", 24, "deg=4; gens=(0 1 2 3),(0 1)"),
    ("SL(2,3)", 24, "deg=8; gens=(0 3 6)(1 7 4),(0 5 1 2)(3 6 7 4)"),
    ("A4xZ2", 24, "deg=6; gens=(0 1 2),(1 2 3),(4 5)"),
    ("Z5^2", 25, "deg=10; gens=(0 1 2 3 4),(5 6 7 8 9)"),
    ("3^1+2", 27, "deg=9; gens=(0 1 2)(3 4 5)(6 7 8),(0 3 6)(1 4 7)(2 5 8),(1 4 7)(2 8 5)"),
    ("Z3xZ9", 27, "deg=12; gens=(0 1 2),(3 4 5 6 7 8 9 10 11)"),
    ("S3xS3", 36, "deg=6; gens=(0 1 2),(0 1),(3 4 5),(3 4)"),
    ("A4xZ3", 36, "deg=7; gens=(0 1 2),(1 2 3),(4 5 6)"),
    ("AGL(1,7)", 42, "deg=7; gens=(0 1 2 3 4 5 6),(1 3 2 6 4 5)"),
    ("S4xZ2", 48, "deg=6; gens=(0 1 2 3),(0 1),(4 5)"),
    ("GL(2,3)", 48, "deg=8; gens=(0 3 6)(1 7 4),(0 5 1 2)(3 6 7 4),(2 5)(3 6)(4 7)"),
    ("AGL(1,8)", 56, "deg=8; gens=(0 1)(2 3)(4 5)(6 7),(1 2 4 3 6 7 5)"),
    ("A5", 60, "deg=5; gens=(0 1 2 3 4),(0 1 2)"),
    ("S3wrZ2", 72, "deg=6; gens=(0 1 2),(0 1),(0 3)(1 4)(2 5)"),
    ("AGL(1,11)", 110, "deg=11; gens=(0 1 2 3 4 5 6 7 8 9 10),(1 2 4 8 5 10 9 7 3 6)"),
    ("S5", 120, "deg=5; gens=(0 1 2 3 4),(0 1)"),
    ("A5xZ2", 120, "deg=7; gens=(0 1 2 3 4),(0 1 2),(5 6)"),
    ("GL(3,2)", 168, "deg=7; gens=(1 5)(2 6),(0 3 1)(2 4 5)"),
    ("AGammaL(1,8)", 168, "deg=8; gens=(0 1)(2 3)(4 5)(6 7),(1 2 4 3 6 7 5),(2 4 6)(3 5 7)"),
    ("A5xZ3", 180, "deg=8; gens=(0 1 2 3 4),(0 1 2),(5 6 7)"),
];

/// Corpus groups of order at most `max_order`, in table order.
pub fn small_groups(max_order: usize) -> Result<Vec<(&'static str, PermGroup)>, GroupError> {
    SMALL_GROUPS
        .iter()
        .filter(|(_, o, _)| *o <= max_order)
        .map(|&(name, _, d)| Ok((name, PermGroup::parse(d)?)))
        .collect()
}
