//! The reference instance: calibrated group, twist `n = 2`, and an `f` that
//! reproduces the trefoil computation, together with the reference values
//! it is compared against.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::biquandle::Biquandle;
use crate::calibrate::{calibrated_group, CalibrationError};
use crate::coloring::{color, Engine};
use crate::diagram::{builtin_trefoil, Hand};
use crate::fmap::{FCandidate, FDirection, FKind, Seed};
use crate::group::{GroupElement, ParityTable, TorusGroup};
use crate::words::{eval_str, parse_word};

pub const STANDARD_TWIST: u32 = 2;

/// Right trefoil arc colors `a1..a5` with `a1 = a`.
pub const RIGHT_CHAIN: [&str; 5] = ["a", "a b^-1", "a^2 b^-1 a^-1", "(ab)^2 a^-1", "a b^2"];

/// End color the left trefoil would need to match the right one.
pub const LEFT_END: &str = "a b^2";

pub const ALPHA: &str = "(ab)^-3 a (ab)^3";

/// The two readings of the left-trefoil comparison value; the second is the
/// one the derivation uses.
pub const BETA_READINGS: [&str; 2] = ["(a b^3)^3 (a b) (a b^3)^-3", "(a b^3)^3 (a b^2) (a b^3)^-3"];

/// Words the trefoil computation pushes through `f` or `f^-1`.
pub const TREFOIL_SEEDS: [(&str, FDirection); 6] = [
    ("a", FDirection::Inverse),
    ("a^2 b^-1 a^-1", FDirection::Inverse),
    ("a b", FDirection::Forward),
    ("(a b^2)^3 (a b) (a b^2)^-3", FDirection::Forward),
    ("a", FDirection::Forward),
    ("b", FDirection::Forward),
];

pub fn trefoil_seeds() -> Vec<Seed> {
    TREFOIL_SEEDS
        .iter()
        .map(|&(w, direction)| Seed {
            word: parse_word(w).expect("seed words are well formed"),
            direction,
        })
        .collect()
}

pub fn right_chain(group: &TorusGroup) -> [GroupElement; 5] {
    RIGHT_CHAIN.map(|w| eval_str(w, group).expect("chain words are well formed"))
}

/// Exponent entry of the reference parity table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityExponent {
    Zero,
    MinusFourI,
    MinusFourJ,
}

impl ParityExponent {
    fn value(self, i: u8, j: u8) -> i64 {
        match self {
            ParityExponent::Zero => 0,
            ParityExponent::MinusFourI => -4 * i as i64,
            ParityExponent::MinusFourJ => -4 * j as i64,
        }
    }
}

impl fmt::Display for ParityExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityExponent::Zero => "0",
            ParityExponent::MinusFourI => "-4i",
            ParityExponent::MinusFourJ => "-4j",
        })
    }
}

/// One column of the reference table: parities of `(i, j, k, l)` and the
/// claimed exponents of `a` and `b` in `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParityReference {
    pub parities: (u8, u8, u8, u8),
    pub alpha: ParityExponent,
    pub beta: ParityExponent,
}

impl ParityReference {
    /// Claimed value of `A` on a class member with the given `i`, `j`.
    pub fn expected(&self, i: u8, j: u8) -> GroupElement {
        GroupElement::from_normal(self.alpha.value(i, j), self.beta.value(i, j))
    }
}

pub const PARITY_REFERENCE: [ParityReference; 16] = {
    use ParityExponent::*;
    const fn col(i: u8, j: u8, k: u8, l: u8, alpha: ParityExponent, beta: ParityExponent) -> ParityReference {
        ParityReference {
            parities: (i, j, k, l),
            alpha,
            beta,
        }
    }
    [
        col(1, 1, 1, 1, Zero, Zero),
        col(1, 0, 1, 1, MinusFourI, Zero),
        col(0, 1, 1, 1, Zero, MinusFourJ),
        col(0, 0, 1, 1, Zero, Zero),
        col(1, 1, 1, 0, Zero, Zero),
        col(1, 0, 1, 0, Zero, Zero),
        col(0, 1, 1, 0, Zero, MinusFourJ),
        col(0, 0, 1, 0, Zero, Zero),
        col(1, 1, 0, 1, Zero, Zero),
        col(1, 0, 0, 1, MinusFourI, Zero),
        col(0, 1, 0, 1, Zero, Zero),
        col(0, 0, 0, 1, Zero, Zero),
        col(1, 1, 0, 0, Zero, Zero),
        col(1, 0, 0, 0, Zero, Zero),
        col(0, 1, 0, 0, Zero, Zero),
        col(0, 0, 0, 0, Zero, Zero),
    ]
};

/// A parity class whose computed values disagree with the reference cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityErratum {
    pub reference: ParityReference,
    pub computed: Vec<GroupElement>,
}

/// Compare every class of the computed table against the reference one.
/// Classes are compared on their representative parities (`i`, `j` taken
/// as 0 or 1), which is exact because `-4` times an odd number is 4 mod 8.
pub fn parity_errata(table: &ParityTable) -> Vec<ParityErratum> {
    PARITY_REFERENCE
        .iter()
        .filter_map(|r| {
            let (i, j, k, l) = r.parities;
            let row = table.row(i, j, k, l);
            let expected = r.expected(i, j);
            (row.constant() != Some(expected)).then(|| ParityErratum {
                reference: *r,
                computed: row.values.iter().copied().collect(),
            })
        })
        .collect()
}

/// Why a candidate `f` was passed over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub kind: FKind,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSelection {
    pub chosen: FCandidate,
    pub rejected: Vec<Rejection>,
}

/// Does the right trefoil, started at `a`, admit the reference chain?
pub fn reproduces_right_chain(group: &TorusGroup, f: &FCandidate) -> bool {
    let bq = Biquandle::from_group(group, STANDARD_TWIST)
        .expect("standard twist is valid")
        .with_f(f.clone());
    let chain = right_chain(group);
    color(&builtin_trefoil(Hand::Right), &bq, chain[0], None, Engine::Propagation)
        .expect("f is attached")
        .colorings
        .iter()
        .any(|c| c.arcs == chain)
}

/// Try the total candidates first; fall back to the substitution evaluated
/// only on the words the trefoil computation visits.
pub fn select_f(group: &TorusGroup) -> FSelection {
    let mut rejected = Vec::new();
    for candidate in [FCandidate::shear(group), FCandidate::substitution(group)] {
        if reproduces_right_chain(group, &candidate) {
            return FSelection {
                chosen: candidate,
                rejected,
            };
        }
        rejected.push(Rejection {
            kind: candidate.kind(),
            reason: "right trefoil from a does not admit the reference chain".into(),
        });
    }
    let chosen = FCandidate::seeded_substitution(group, &trefoil_seeds()).expect("trefoil seeds are consistent");
    FSelection { chosen, rejected }
}

/// Everything needed to reproduce the trefoil comparison.
#[derive(Clone, Debug)]
pub struct StandardInstance {
    pub group: TorusGroup,
    pub biquandle: Biquandle,
    pub selection: FSelection,
}

impl StandardInstance {
    pub fn build() -> Result<Self, CalibrationError> {
        let group = calibrated_group()?;
        let selection = select_f(&group);
        let biquandle = Biquandle::from_group(&group, STANDARD_TWIST)
            .expect("standard twist is valid")
            .with_f(selection.chosen.clone());
        Ok(StandardInstance {
            group,
            biquandle,
            selection,
        })
    }

    /// Same group and twist with a different `f`, or none.
    pub fn with_f(&self, f: Option<FCandidate>) -> Biquandle {
        let bq = Biquandle::from_group(&self.group, self.biquandle.n_twist()).expect("twist already validated");
        match f {
            Some(f) => bq.with_f(f),
            None => bq,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::distinguish;

    #[test]
    fn reference_parity_table_has_no_errata() {
        let inst = StandardInstance::build().unwrap();
        assert!(parity_errata(&inst.group.parity_table()).is_empty());
    }

    #[test]
    fn corrupted_class_is_reported() {
        let inst = StandardInstance::build().unwrap();
        let mut table = inst.group.parity_table();
        let odd = GroupElement::from_normal(1, 1);
        let row = table.rows.iter_mut().find(|r| (r.i, r.j, r.k, r.l) == (1, 1, 1, 1)).unwrap();
        row.values.insert(odd);
        let errata = parity_errata(&table);
        assert_eq!(errata.len(), 1);
        assert_eq!(errata[0].reference.parities, (1, 1, 1, 1));
        assert!(errata[0].computed.contains(&odd));
    }

    #[test]
    fn parity_reference_covers_every_class_once() {
        let mut seen: Vec<_> = PARITY_REFERENCE.iter().map(|r| r.parities).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn total_candidates_are_rejected() {
        let inst = StandardInstance::build().unwrap();
        assert_eq!(inst.selection.chosen.kind(), FKind::SeededSubstitution);
        let kinds: Vec<_> = inst.selection.rejected.iter().map(|r| r.kind).collect();
        assert_eq!(kinds, [FKind::Shear, FKind::Substitution]);
    }

    #[test]
    fn seeded_f_pairs() {
        let inst = StandardInstance::build().unwrap();
        let g = &inst.group;
        let f = &inst.selection.chosen;
        let e = |w: &str| eval_str(w, g).unwrap();
        assert_eq!(f.forward(e("a")), Some(e("a b")));
        assert_eq!(f.forward(e("b")), Some(e("b")));
        assert_eq!(f.forward(e("a b^-1")), Some(e("a")));
        assert_eq!(f.forward(e("a b")), Some(e("a b^2")));
        assert_eq!(f.forward(e("a^-1")), Some(e("a^2 b^-1 a^-1")));
        assert!(f.forward(e(ALPHA)).is_none());
        assert_eq!(f.verdict().defined, 6);
        assert_eq!(f.pairs().count(), 6);
    }

    #[test]
    fn right_chain_is_reproduced_and_left_is_excluded() {
        let inst = StandardInstance::build().unwrap();
        let g = &inst.group;
        let chain = right_chain(g);
        assert_eq!(
            chain.map(|x| x.normal_form()),
            [(1, 0), (1, 1), (3, 7), (7, 0), (1, 6)]
        );
        let right = color(&builtin_trefoil(Hand::Right), &inst.biquandle, chain[0], None, Engine::Propagation).unwrap();
        assert_eq!(right.colorings.len(), 1);
        assert_eq!(right.colorings[0].arcs, chain);
        let end = eval_str(LEFT_END, g).unwrap();
        for engine in Engine::ALL {
            let left = color(&builtin_trefoil(Hand::Left), &inst.biquandle, chain[0], Some(end), engine).unwrap();
            assert_eq!(left.count(), 0);
        }
        let d = distinguish(
            &builtin_trefoil(Hand::Right),
            &builtin_trefoil(Hand::Left),
            &inst.biquandle,
            chain[0],
            Engine::Propagation,
        )
        .unwrap();
        assert_eq!(d.verdict, crate::coloring::Verdict::Distinguished);
        assert!(d.end_colors_differ);
    }

    #[test]
    fn shear_would_color_the_left_trefoil() {
        let inst = StandardInstance::build().unwrap();
        let g = &inst.group;
        let bq = inst.with_f(Some(FCandidate::shear(g)));
        let end = eval_str(LEFT_END, g).unwrap();
        let left = color(&builtin_trefoil(Hand::Left), &bq, g.generator_a(), Some(end), Engine::Propagation).unwrap();
        assert!(left.count() > 0);
        let b2 = left.colorings[0].arc(2);
        assert_eq!(b2, eval_str(ALPHA, g).unwrap());
    }
}
