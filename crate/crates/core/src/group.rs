//! The order-64 group of paths on the oriented 8x8 torus grid.
//!
//! Vertices of the grid are `(x, y)` with both coordinates mod 8. Horizontal
//! edges carry the letter `a`, vertical edges the letter `b`. Horizontal lines
//! alternate in direction from row to row and vertical lines from column to
//! column, so a step along `a` from `(x, y)` moves `x` by `+1` or `-1`
//! depending on the parity of `y` (and symmetrically for `b`).
//!
//! A word in `a`, `b` and their inverses is a path starting at the base
//! vertex `(0, 0)`; two words are the same group element when their paths end
//! at the same vertex. This is only a group if the permutation action of the
//! words on the vertices is regular, which [`build_group`] verifies rather
//! than assumes.
//!
//! Elements are stored by the coordinates `(k, l)` of their endpoint vertex.
//! The label `a^k b^l` printed by [`crate::words::format_normal`] names that
//! vertex; it is not the same as the path word `a^k b^l` whenever column `k`
//! points down.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::words::{Letter, WordExpr};

/// Side length of the torus grid.
pub const SIDE: u8 = 8;
/// Number of group elements (and of grid vertices).
pub const ORDER: usize = 64;

/// A vertex of the glued 8x8 grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub x: u8,
    pub y: u8,
}

impl Vertex {
    pub fn new(x: i64, y: i64) -> Self {
        Vertex {
            x: x.rem_euclid(SIDE as i64) as u8,
            y: y.rem_euclid(SIDE as i64) as u8,
        }
    }

    fn index(self) -> usize {
        self.x as usize * SIDE as usize + self.y as usize
    }

    fn from_index(i: usize) -> Self {
        Vertex {
            x: (i / SIDE as usize) as u8,
            y: (i % SIDE as usize) as u8,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A group element in normal form: the endpoint `(k, l)` of its path from the
/// base vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(u8);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    /// Element with normal form `a^k b^l`; exponents are reduced mod 8.
    pub fn from_normal(k: i64, l: i64) -> Self {
        GroupElement(Vertex::new(k, l).index() as u8)
    }

    pub fn from_index(i: usize) -> Self {
        assert!(i < ORDER, "element index {i} out of range");
        GroupElement(i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Exponent of `a` in the normal form.
    pub fn k(self) -> u8 {
        self.0 / SIDE
    }

    /// Exponent of `b` in the normal form.
    pub fn l(self) -> u8 {
        self.0 % SIDE
    }

    pub fn normal_form(self) -> (u8, u8) {
        (self.k(), self.l())
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    /// All 64 elements in index order.
    pub fn all() -> impl Iterator<Item = GroupElement> + Clone {
        (0..ORDER as u8).map(GroupElement)
    }
}

/// Which end of a word is walked first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CompositionOrder {
    /// `uv` walks `u` first, then `v` from where `u` ended.
    WordOrder,
    /// `uv` walks `v` first.
    FunctionOrder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RowPhase {
    EvenRowsRight,
    EvenRowsLeft,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ColumnPhase {
    EvenColsUp,
    EvenColsDown,
}

/// The three choices the grid description leaves open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Convention {
    pub composition_order: CompositionOrder,
    pub row_orientation_phase: RowPhase,
    pub column_orientation_phase: ColumnPhase,
}

const fn c(
    composition_order: CompositionOrder,
    row_orientation_phase: RowPhase,
    column_orientation_phase: ColumnPhase,
) -> Convention {
    Convention {
        composition_order,
        row_orientation_phase,
        column_orientation_phase,
    }
}

impl Convention {
    /// All eight variants, in enum order.
    pub const ALL: [Convention; 8] = {
        use ColumnPhase::*;
        use CompositionOrder::*;
        use RowPhase::*;
        [
            c(WordOrder, EvenRowsRight, EvenColsUp),
            c(WordOrder, EvenRowsRight, EvenColsDown),
            c(WordOrder, EvenRowsLeft, EvenColsUp),
            c(WordOrder, EvenRowsLeft, EvenColsDown),
            c(FunctionOrder, EvenRowsRight, EvenColsUp),
            c(FunctionOrder, EvenRowsRight, EvenColsDown),
            c(FunctionOrder, EvenRowsLeft, EvenColsUp),
            c(FunctionOrder, EvenRowsLeft, EvenColsDown),
        ]
    };

    /// Direction (+1 or -1 in `x`) of the horizontal line at height `y`.
    pub fn row_direction(&self, y: u8) -> i64 {
        let even = y.is_multiple_of(2);
        match (self.row_orientation_phase, even) {
            (RowPhase::EvenRowsRight, true) | (RowPhase::EvenRowsLeft, false) => 1,
            _ => -1,
        }
    }

    /// Direction (+1 or -1 in `y`) of the vertical line at position `x`.
    pub fn column_direction(&self, x: u8) -> i64 {
        let even = x.is_multiple_of(2);
        match (self.column_orientation_phase, even) {
            (ColumnPhase::EvenColsUp, true) | (ColumnPhase::EvenColsDown, false) => 1,
            _ => -1,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = match self.composition_order {
            CompositionOrder::WordOrder => "word-order",
            CompositionOrder::FunctionOrder => "function-order",
        };
        let rows = match self.row_orientation_phase {
            RowPhase::EvenRowsRight => "even-rows-right",
            RowPhase::EvenRowsLeft => "even-rows-left",
        };
        let cols = match self.column_orientation_phase {
            ColumnPhase::EvenColsUp => "even-cols-up",
            ColumnPhase::EvenColsDown => "even-cols-down",
        };
        write!(f, "{order}, {rows}, {cols}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    /// Two words end at the same vertex but act differently on the grid, so
    /// "same endpoint" is not compatible with multiplication.
    #[error("convention {convention}: words `{first}` and `{second}` end at the same vertex but are different paths")]
    ConventionInconsistent {
        convention: Convention,
        first: WordExpr,
        second: WordExpr,
    },
    #[error("convention {convention}: words reach only {reached} of the 64 vertices")]
    NotTransitive { convention: Convention, reached: usize },
    #[error("convention {convention}: the words a^k b^m do not give 64 distinct elements")]
    NoPathNormalForm { convention: Convention },
}

type Perm = [u8; ORDER];

/// Letters with exponents, read left to right.
pub(crate) type LetterPath = Vec<(Letter, i64)>;

const IDENTITY_PERM: Perm = {
    let mut p = [0u8; ORDER];
    let mut i = 0;
    while i < ORDER {
        p[i] = i as u8;
        i += 1;
    }
    p
};

/// `p` followed by `q`.
fn then(p: &Perm, q: &Perm) -> Perm {
    let mut r = [0u8; ORDER];
    for (v, slot) in r.iter_mut().enumerate() {
        *slot = q[p[v] as usize];
    }
    r
}

fn invert(p: &Perm) -> Perm {
    let mut r = [0u8; ORDER];
    for (v, &w) in p.iter().enumerate() {
        r[w as usize] = v as u8;
    }
    r
}

/// The built group: multiplication table, inverses, and the grid it came from.
#[derive(Clone, PartialEq, Eq)]
pub struct TorusGroup {
    convention: Convention,
    mul: Vec<u8>,
    inv: [u8; ORDER],
    generator_a: GroupElement,
    generator_b: GroupElement,
    step_a: Perm,
    step_b: Perm,
    // element -> (k, m) with a^k b^m the canonical path word
    path_exponents: [(u8, u8); ORDER],
    // (k, m) -> element
    path_word_element: [u8; ORDER],
}

impl fmt::Debug for TorusGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TorusGroup")
            .field("convention", &self.convention)
            .field("generator_a", &self.generator_a)
            .field("generator_b", &self.generator_b)
            .finish_non_exhaustive()
    }
}

/// Build the group for one choice of conventions.
///
/// The generators act on the 64 vertices as permutations; the words are
/// closed under composition breadth-first, and every word is identified with
/// its endpoint from `(0, 0)`. Construction fails with a witness pair of words
/// if two distinct permutations share an endpoint.
pub fn build_group(convention: Convention) -> Result<TorusGroup, GroupError> {
    let mut step_a = [0u8; ORDER];
    let mut step_b = [0u8; ORDER];
    for i in 0..ORDER {
        let v = Vertex::from_index(i);
        let dx = convention.row_direction(v.y);
        let dy = convention.column_direction(v.x);
        step_a[i] = Vertex::new(v.x as i64 + dx, v.y as i64).index() as u8;
        step_b[i] = Vertex::new(v.x as i64, v.y as i64 + dy).index() as u8;
    }
    let compose = |g: &Perm, h: &Perm| -> Perm {
        match convention.composition_order {
            CompositionOrder::WordOrder => then(g, h),
            CompositionOrder::FunctionOrder => then(h, g),
        }
    };
    let generators: [(Letter, i64, Perm); 4] = [
        (Letter::A, 1, step_a),
        (Letter::B, 1, step_b),
        (Letter::A, -1, invert(&step_a)),
        (Letter::B, -1, invert(&step_b)),
    ];

    // endpoint -> (permutation, word reaching it)
    let mut by_endpoint: Vec<Option<(Perm, LetterPath)>> = vec![None; ORDER];
    by_endpoint[0] = Some((IDENTITY_PERM, Vec::new()));
    let mut queue = VecDeque::from([0usize]);
    while let Some(end) = queue.pop_front() {
        let (perm, word) = by_endpoint[end].clone().expect("queued endpoints are filled");
        for (letter, exp, gen) in &generators {
            let next = compose(&perm, gen);
            let next_end = next[0] as usize;
            let mut next_word = word.clone();
            next_word.push((*letter, *exp));
            match &by_endpoint[next_end] {
                Some((existing, existing_word)) => {
                    if *existing != next {
                        return Err(GroupError::ConventionInconsistent {
                            convention,
                            first: word_expr(existing_word),
                            second: word_expr(&next_word),
                        });
                    }
                }
                None => {
                    by_endpoint[next_end] = Some((next, next_word));
                    queue.push_back(next_end);
                }
            }
        }
    }
    let reached = by_endpoint.iter().filter(|e| e.is_some()).count();
    if reached != ORDER {
        return Err(GroupError::NotTransitive { convention, reached });
    }
    let perms: Vec<Perm> = by_endpoint.into_iter().map(|e| e.unwrap().0).collect();

    let mut mul = vec![0u8; ORDER * ORDER];
    for g in 0..ORDER {
        for h in 0..ORDER {
            mul[g * ORDER + h] = compose(&perms[g], &perms[h])[0];
        }
    }
    let mut inv = [0u8; ORDER];
    for g in 0..ORDER {
        let h = (0..ORDER)
            .find(|&h| mul[g * ORDER + h] == 0)
            .expect("regular action gives every element an inverse");
        inv[g] = h as u8;
    }

    let mut group = TorusGroup {
        convention,
        mul,
        inv,
        generator_a: GroupElement(step_a[0]),
        generator_b: GroupElement(step_b[0]),
        step_a,
        step_b,
        path_exponents: [(0, 0); ORDER],
        path_word_element: [0; ORDER],
    };

    let mut seen = [false; ORDER];
    for k in 0..SIDE {
        for m in 0..SIDE {
            let g = group.mul(group.pow(group.generator_a, k as i64), group.pow(group.generator_b, m as i64));
            if seen[g.index()] {
                return Err(GroupError::NoPathNormalForm { convention });
            }
            seen[g.index()] = true;
            group.path_exponents[g.index()] = (k, m);
            group.path_word_element[(k * SIDE + m) as usize] = g.0;
        }
    }
    Ok(group)
}

fn word_expr(word: &[(Letter, i64)]) -> WordExpr {
    let factors: Vec<WordExpr> = word
        .iter()
        .map(|&(letter, exp)| match exp {
            1 => WordExpr::Letter(letter),
            e => WordExpr::power(WordExpr::Letter(letter), e),
        })
        .collect();
    WordExpr::concat(factors)
}

impl TorusGroup {
    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn generator_a(&self) -> GroupElement {
        self.generator_a
    }

    pub fn generator_b(&self) -> GroupElement {
        self.generator_b
    }

    pub fn generator(&self, letter: Letter) -> GroupElement {
        match letter {
            Letter::A => self.generator_a,
            Letter::B => self.generator_b,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + Clone {
        GroupElement::all()
    }

    pub fn mul(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        GroupElement(self.mul[g.index() * ORDER + h.index()])
    }

    pub fn inv(&self, g: GroupElement) -> GroupElement {
        GroupElement(self.inv[g.index()])
    }

    /// `g^n` by repeated squaring; negative powers go through the inverse.
    pub fn pow(&self, g: GroupElement, n: i64) -> GroupElement {
        let mut base = if n < 0 { self.inv(g) } else { g };
        let mut e = n.unsigned_abs();
        let mut acc = GroupElement::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `g h g^-1 h^-1`.
    pub fn commutator(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let gh = self.mul(g, h);
        let ghg = self.mul(gh, self.inv(g));
        self.mul(ghg, self.inv(h))
    }

    /// `h g h^-1`.
    pub fn conjugate(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn commutes(&self, g: GroupElement, h: GroupElement) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    pub fn is_central(&self, z: GroupElement) -> bool {
        self.elements().all(|g| self.commutes(z, g))
    }

    pub fn center(&self) -> CenterSet {
        CenterSet {
            members: self.elements().filter(|&z| self.is_central(z)).collect(),
        }
    }

    /// Least `m >= 1` with `g^m = e`.
    pub fn order_of(&self, g: GroupElement) -> u32 {
        let mut x = g;
        let mut m = 1;
        while !x.is_identity() {
            x = self.mul(x, g);
            m += 1;
        }
        m
    }

    /// Endpoint of the element's path from the base vertex.
    pub fn vertex(&self, g: GroupElement) -> Vertex {
        Vertex::from_index(g.index())
    }

    /// The element whose path from the base vertex ends at `v`.
    pub fn element_at(&self, v: Vertex) -> GroupElement {
        GroupElement(v.index() as u8)
    }

    /// One step along a letter's edge from `v` (`exp` is +1 or -1).
    pub fn step(&self, v: Vertex, letter: Letter, exp: i64) -> Vertex {
        let perm = match letter {
            Letter::A => &self.step_a,
            Letter::B => &self.step_b,
        };
        let i = v.index();
        let j = if exp >= 0 {
            perm[i] as usize
        } else {
            perm.iter().position(|&w| w as usize == i).expect("steps are permutations")
        };
        Vertex::from_index(j)
    }

    /// Exponents `(k, m)` of the canonical path word `a^k b^m` equal to `g`,
    /// both in `0..8`.
    pub fn path_exponents(&self, g: GroupElement) -> (u8, u8) {
        self.path_exponents[g.index()]
    }

    /// The element of the path word `a^k b^m`.
    pub fn path_word(&self, k: i64, m: i64) -> GroupElement {
        let k = k.rem_euclid(SIDE as i64) as usize;
        let m = m.rem_euclid(SIDE as i64) as usize;
        GroupElement(self.path_word_element[k * SIDE as usize + m])
    }

    /// First triple violating associativity, if any.
    pub fn associativity_violation(&self) -> Option<(GroupElement, GroupElement, GroupElement)> {
        for g in self.elements() {
            for h in self.elements() {
                let gh = self.mul(g, h);
                for k in self.elements() {
                    if self.mul(gh, k) != self.mul(g, self.mul(h, k)) {
                        return Some((g, h, k));
                    }
                }
            }
        }
        None
    }

    /// Checks that the table is a group: associative, `e` neutral on both
    /// sides, and the inverse table two-sided.
    pub fn is_group(&self) -> bool {
        let e = self.identity();
        let neutral = self
            .elements()
            .all(|g| self.mul(e, g) == g && self.mul(g, e) == g);
        let inverses = self
            .elements()
            .all(|g| self.mul(g, self.inv(g)) == e && self.mul(self.inv(g), g) == e);
        neutral && inverses && self.associativity_violation().is_none()
    }

    /// `A = x y^2 x^-1 y^-2` for every `x = (k, l)`, `y = (i, j)`, grouped by
    /// the parities of `i, j, k, l`.
    pub fn parity_table(&self) -> ParityTable {
        let mut rows: Vec<ParityRow> = Vec::with_capacity(16);
        for bits in 0..16u8 {
            rows.push(ParityRow {
                i: (bits >> 3) & 1,
                j: (bits >> 2) & 1,
                k: (bits >> 1) & 1,
                l: bits & 1,
                values: BTreeSet::new(),
                all_central: true,
            });
        }
        for y in self.elements() {
            let y2 = self.pow(y, 2);
            let y2_inv = self.inv(y2);
            for x in self.elements() {
                let a = self.mul(self.mul(self.mul(x, y2), self.inv(x)), y2_inv);
                let (i, j) = y.normal_form();
                let (k, l) = x.normal_form();
                let bits = ((i & 1) << 3) | ((j & 1) << 2) | ((k & 1) << 1) | (l & 1);
                let row = &mut rows[bits as usize];
                if row.values.insert(a) && !self.is_central(a) {
                    row.all_central = false;
                }
            }
        }
        ParityTable { rows }
    }
}

/// Exact center of the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterSet {
    pub members: BTreeSet<GroupElement>,
}

impl CenterSet {
    pub fn contains(&self, g: GroupElement) -> bool {
        self.members.contains(&g)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.members.iter().copied()
    }
}

/// One parity class of `(i, j, k, l)` and every value of `A` found in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityRow {
    pub i: u8,
    pub j: u8,
    pub k: u8,
    pub l: u8,
    pub values: BTreeSet<GroupElement>,
    pub all_central: bool,
}

impl ParityRow {
    /// The single value of `A` on this class, if it is constant.
    pub fn constant(&self) -> Option<GroupElement> {
        if self.values.len() == 1 {
            self.values.iter().next().copied()
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityTable {
    pub rows: Vec<ParityRow>,
}

impl ParityTable {
    pub fn row(&self, i: u8, j: u8, k: u8, l: u8) -> &ParityRow {
        let bits = ((i & 1) << 3) | ((j & 1) << 2) | ((k & 1) << 1) | (l & 1);
        &self.rows[bits as usize]
    }

    pub fn all_central(&self) -> bool {
        self.rows.iter().all(|r| r.all_central)
    }

    pub fn some_nontrivial(&self) -> bool {
        self.rows
            .iter()
            .any(|r| r.values.iter().any(|v| !v.is_identity()))
    }
}
