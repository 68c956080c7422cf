//! Long virtual biquandles on the group carrier.
//!
//! `x ∘ y = y x y^-1` and `x ⋆ y = y^(n+1) x y^-(n+1)`, with the right
//! divisions stored as their own tables. The unary map `f` is optional and
//! attached separately because no candidate satisfies every requirement.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::fmap::{FCandidate, FDirection};
use crate::group::{GroupElement, TorusGroup, ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Circ,
    Star,
    CircDiv,
    StarDiv,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::Circ, Op::Star, Op::CircDiv, Op::StarDiv];

    /// The right division undoing this operation (and vice versa).
    pub fn division(self) -> Op {
        match self {
            Op::Circ => Op::CircDiv,
            Op::Star => Op::StarDiv,
            Op::CircDiv => Op::Circ,
            Op::StarDiv => Op::Star,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::Circ => "circ",
            Op::Star => "star",
            Op::CircDiv => "circ_div",
            Op::StarDiv => "star_div",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BiquandleError {
    #[error("twist exponent must be at least 1")]
    InvalidTwist,
    #[error("no f map attached")]
    MissingF,
    #[error("f is undefined at {0:?}")]
    Undefined(GroupElement),
    #[error("f^-1 of {element:?} is not unique ({preimages} preimages)")]
    NotInvertible { element: GroupElement, preimages: usize },
    #[error("x -> x {op} {y:?} is not a permutation")]
    NotRightInvertible { op: Op, y: GroupElement },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biquandle {
    n_twist: u32,
    tables: [Vec<u8>; 4],
    f: Option<FCandidate>,
}

fn division_table(op: &[u8]) -> Option<Vec<u8>> {
    let mut div = vec![u8::MAX; ORDER * ORDER];
    for y in 0..ORDER {
        for x in 0..ORDER {
            let z = op[x * ORDER + y] as usize;
            if div[z * ORDER + y] != u8::MAX {
                return None;
            }
            div[z * ORDER + y] = x as u8;
        }
    }
    Some(div)
}

impl Biquandle {
    /// Conjugation and `(n+1)`-fold conjugation on the group.
    pub fn from_group(group: &TorusGroup, n_twist: u32) -> Result<Self, BiquandleError> {
        if n_twist == 0 {
            return Err(BiquandleError::InvalidTwist);
        }
        let mut circ = vec![0u8; ORDER * ORDER];
        let mut star = vec![0u8; ORDER * ORDER];
        for y in group.elements() {
            let twist = group.pow(y, n_twist as i64 + 1);
            for x in group.elements() {
                circ[x.index() * ORDER + y.index()] = group.conjugate(x, y).index() as u8;
                star[x.index() * ORDER + y.index()] = group.conjugate(x, twist).index() as u8;
            }
        }
        Self::from_tables(circ, star, n_twist)
    }

    /// Build from raw `∘` and `⋆` tables indexed `x * 64 + y`; divisions are
    /// solved from them.
    pub fn from_tables(circ: Vec<u8>, star: Vec<u8>, n_twist: u32) -> Result<Self, BiquandleError> {
        assert_eq!(circ.len(), ORDER * ORDER);
        assert_eq!(star.len(), ORDER * ORDER);
        let witness = |op: Op, table: &[u8]| {
            (0..ORDER)
                .find(|&y| {
                    let mut seen = [false; ORDER];
                    (0..ORDER).any(|x| core::mem::replace(&mut seen[table[x * ORDER + y] as usize], true))
                })
                .map(|y| BiquandleError::NotRightInvertible { op, y: GroupElement::from_index(y) })
                .expect("a failed division has a witness column")
        };
        let circ_div = division_table(&circ).ok_or_else(|| witness(Op::Circ, &circ))?;
        let star_div = division_table(&star).ok_or_else(|| witness(Op::Star, &star))?;
        Ok(Biquandle {
            n_twist,
            tables: [circ, star, circ_div, star_div],
            f: None,
        })
    }

    pub fn with_f(mut self, f: FCandidate) -> Self {
        self.f = Some(f);
        self
    }

    pub fn f(&self) -> Option<&FCandidate> {
        self.f.as_ref()
    }

    pub fn n_twist(&self) -> u32 {
        self.n_twist
    }

    pub fn op(&self, which: Op, x: GroupElement, y: GroupElement) -> GroupElement {
        GroupElement::from_index(self.tables[which.slot()][x.index() * ORDER + y.index()] as usize)
    }

    pub fn apply_f(&self, direction: FDirection, x: GroupElement) -> Result<GroupElement, BiquandleError> {
        let f = self.f.as_ref().ok_or(BiquandleError::MissingF)?;
        match direction {
            FDirection::Forward => f.forward(x).ok_or(BiquandleError::Undefined(x)),
            FDirection::Inverse => match f.preimages(x) {
                [y] => Ok(*y),
                [] => Err(BiquandleError::Undefined(x)),
                many => Err(BiquandleError::NotInvertible {
                    element: x,
                    preimages: many.len(),
                }),
            },
        }
    }
}
