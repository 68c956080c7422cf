//! Choosing the grid convention from known products.
//!
//! The grid description fixes which way the first row and first column
//! point, but a reader could also flip either phase, and it never says which
//! end of a word is walked first. Every one of the eight variants is built
//! and checked against five computed products; the required anchors pin down
//! a single variant.

use alloc::vec::Vec;
use core::fmt;

use crate::group::{build_group, Convention, GroupElement, GroupError, TorusGroup};
use crate::words::{eval_str, format_normal};

/// A word together with the label its value is expected to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Anchor {
    pub id: &'static str,
    /// Alternative spellings; the anchor matches if any reading does.
    pub readings: &'static [&'static str],
    /// Expected normal form `(k, l)`.
    pub expected: (u8, u8),
    /// Anchors that are not required are reported but do not vote.
    pub required: bool,
}

pub const ANCHORS: [Anchor; 5] = [
    Anchor {
        id: "i",
        readings: &["a (a b a^-1 b^-1)"],
        expected: (3, 2),
        required: true,
    },
    Anchor {
        id: "ii",
        readings: &["(a b a^-1 b^-1) a"],
        expected: (3, 6),
        required: true,
    },
    Anchor {
        id: "iii",
        readings: &["(ab)^-3 a (ab)^3"],
        expected: (7, 6),
        required: true,
    },
    Anchor {
        id: "iv",
        readings: &["(a b^3)^3 (a b) (a b^3)^-3", "(a b^3)^3 (a b^2) (a b^3)^-3"],
        expected: (7, 1),
        required: false,
    },
    Anchor {
        id: "v",
        readings: &["b^-2"],
        expected: (0, 6),
        required: true,
    },
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchorOutcome {
    pub anchor: Anchor,
    /// Value of each reading, in the order of `anchor.readings`.
    pub values: Vec<GroupElement>,
}

impl AnchorOutcome {
    pub fn matched(&self) -> bool {
        let expected = GroupElement::from_normal(self.anchor.expected.0 as i64, self.anchor.expected.1 as i64);
        self.values.contains(&expected)
    }
}

impl fmt::Display for AnchorOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, l) = self.anchor.expected;
        write!(f, "({}) ", self.anchor.id)?;
        for (i, (reading, value)) in self.anchor.readings.iter().zip(&self.values).enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{reading} = {}", format_normal(*value))?;
        }
        write!(
            f,
            " [expected {}{}] {}",
            format_normal(GroupElement::from_normal(k as i64, l as i64)),
            if self.anchor.required { "" } else { ", informational" },
            if self.matched() { "match" } else { "no match" }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConventionOutcome {
    pub convention: Convention,
    /// `Err` when the convention does not even give a group.
    pub anchors: Result<Vec<AnchorOutcome>, GroupError>,
}

impl ConventionOutcome {
    pub fn reproduces_required(&self) -> bool {
        match &self.anchors {
            Ok(outcomes) => outcomes.iter().filter(|o| o.anchor.required).all(|o| o.matched()),
            Err(_) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Calibration {
    pub convention: Convention,
    pub outcomes: Vec<ConventionOutcome>,
}

impl Calibration {
    pub fn selected(&self) -> &ConventionOutcome {
        self.outcomes
            .iter()
            .find(|o| o.convention == self.convention)
            .expect("the selected convention was evaluated")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CalibrationError {
    #[error("no convention reproduces the required anchors")]
    NoConventionMatches { outcomes: Vec<ConventionOutcome> },
    #[error("{} conventions reproduce the required anchors; first is {pick}", matching.len())]
    CalibrationAmbiguous {
        matching: Vec<Convention>,
        pick: Convention,
        outcomes: Vec<ConventionOutcome>,
    },
}

pub fn evaluate_anchors(group: &TorusGroup) -> Vec<AnchorOutcome> {
    ANCHORS
        .iter()
        .map(|anchor| AnchorOutcome {
            anchor: *anchor,
            values: anchor
                .readings
                .iter()
                .map(|r| eval_str(r, group).expect("anchor words are well formed"))
                .collect(),
        })
        .collect()
}

/// Try all eight conventions and return the one that reproduces every
/// required anchor.
pub fn calibrate_convention() -> Result<Calibration, CalibrationError> {
    let outcomes: Vec<ConventionOutcome> = Convention::ALL
        .iter()
        .map(|&convention| ConventionOutcome {
            convention,
            anchors: build_group(convention).map(|g| evaluate_anchors(&g)),
        })
        .collect();
    let matching: Vec<Convention> = outcomes
        .iter()
        .filter(|o| o.reproduces_required())
        .map(|o| o.convention)
        .collect();
    match matching.as_slice() {
        [] => Err(CalibrationError::NoConventionMatches { outcomes }),
        [only] => Ok(Calibration {
            convention: *only,
            outcomes,
        }),
        [first, ..] => Err(CalibrationError::CalibrationAmbiguous {
            pick: *first,
            matching,
            outcomes,
        }),
    }
}

/// The group under the calibrated convention.
pub fn calibrated_group() -> Result<TorusGroup, CalibrationError> {
    let calibration = calibrate_convention()?;
    Ok(build_group(calibration.convention).expect("calibrated conventions build"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ColumnPhase, CompositionOrder, RowPhase};

    #[test]
    fn calibration_is_unique() {
        let cal = calibrate_convention().unwrap();
        assert_eq!(
            cal.convention,
            Convention {
                composition_order: CompositionOrder::WordOrder,
                row_orientation_phase: RowPhase::EvenRowsRight,
                column_orientation_phase: ColumnPhase::EvenColsUp,
            }
        );
        assert_eq!(cal.outcomes.len(), 8);
        assert_eq!(cal.outcomes.iter().filter(|o| o.reproduces_required()).count(), 1);
    }

    #[test]
    fn identity_word_is_e_everywhere() {
        for c in Convention::ALL {
            let g = build_group(c).unwrap();
            assert!(eval_str("e", &g).unwrap().is_identity());
            assert!(eval_str("a b a^-1 b^-1 b a b^-1 a^-1", &g).unwrap().is_identity());
        }
    }

    #[test]
    fn anchors_i_and_ii_swap_between_phases() {
        let cal = calibrate_convention().unwrap();
        let values = |c: Convention| {
            let o = cal.outcomes.iter().find(|o| o.convention == c).unwrap();
            let a = o.anchors.as_ref().unwrap();
            (a[0].values[0], a[1].values[0])
        };
        let (x, y) = values(Convention::ALL[0]);
        let (x2, y2) = values(Convention::ALL[1]);
        assert_eq!((x, y), (y2, x2));
    }

    #[test]
    fn beta_anchor_matches_no_reading() {
        let cal = calibrate_convention().unwrap();
        let selected = cal.selected().anchors.as_ref().unwrap();
        let beta = &selected[3];
        assert!(!beta.matched());
        assert_eq!(
            beta.values,
            [GroupElement::from_normal(1, 3), GroupElement::from_normal(7, 4)]
        );
    }
}
