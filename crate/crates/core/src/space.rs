//! Feasible pairs `(T, O)` with an admissible set `R`, and the points `f_k`.
//!
//! The built-in space takes `T` to be the eventually periodic binary
//! sequences, `O_n` the cylinder of the `n`-th finite word in length-then-
//! lexicographic order (`O_1` is the cylinder of the empty word), and
//! `R = {x : x(2j-1) = x(2j) for all j}`. Every predicate is decidable.

use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::finset::FinSet;

/// An eventually periodic binary sequence `pre · period^ω`, canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TPoint {
    pre: Vec<bool>,
    period: Vec<bool>,
}

impl TPoint {
    pub fn new(pre: Vec<bool>, period: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidPoint("empty period".into()));
        }
        let mut p = TPoint { pre, period };
        p.canonicalize();
        Ok(p)
    }

    /// The constant sequence `b^ω`.
    pub fn constant(b: bool) -> Self {
        TPoint { pre: Vec::new(), period: alloc::vec![b] }
    }

    fn canonicalize(&mut self) {
        let len = self.period.len();
        if let Some(d) = (1..=len).find(|&d| {
            len.is_multiple_of(d) && (0..len).all(|i| self.period[i] == self.period[i % d])
        }) {
            self.period.truncate(d);
        }
        while let (Some(&a), Some(&b)) = (self.pre.last(), self.period.last()) {
            if a != b {
                break;
            }
            self.pre.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[bool] {
        &self.pre
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    /// Coordinate at a 1-based position.
    pub fn bit(&self, pos: usize) -> bool {
        assert!(pos >= 1, "positions are 1-based");
        let i = pos - 1;
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    /// Whether `word` is a prefix of this sequence.
    pub fn has_prefix(&self, word: &[bool]) -> bool {
        word.iter().enumerate().all(|(i, &b)| self.bit(i + 1) == b)
    }
}

fn bits_to_str(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for TPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", bits_to_str(&self.pre), bits_to_str(&self.period))
    }
}

impl fmt::Debug for TPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TPoint {
    type Err = Error;

    /// Parses `pre:period`, e.g. `:01` for `(01)^ω` or `0:1`.
    fn from_str(s: &str) -> Result<Self> {
        let (pre, period) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidPoint(format!("missing ':' in {s:?}")))?;
        let parse = |w: &str| {
            w.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::InvalidPoint(format!("bad digit {c:?} in {s:?}"))),
                })
                .collect::<Result<Vec<bool>>>()
        };
        TPoint::new(parse(pre)?, parse(period)?)
    }
}

/// Decidable data of a feasible pair with an admissible set.
pub trait FeasibleSpace {
    fn name(&self) -> &str;
    /// `t ∈ O_n`, for `n ≥ 1`.
    fn in_o(&self, n: u32, t: &TPoint) -> bool;
    /// Finite description of `O_n`.
    fn o_descriptor(&self, n: u32) -> String;
    fn in_r(&self, t: &TPoint) -> bool;
    /// A point of `O_n ∖ R`.
    fn r_witness(&self, n: u32) -> TPoint;
}

pub type SpaceRef = Rc<dyn FeasibleSpace>;

/// Cantor-space cylinders with the pair-doubling set as `R`.
#[derive(Debug, Clone, Copy, Default)]
pub struct BuiltinCantor;

impl BuiltinCantor {
    pub const NAME: &'static str = "builtin-cantor";

    /// The `n`-th word in length-then-lexicographic order: the binary digits
    /// of `n` after its leading one.
    pub fn word(n: u32) -> Vec<bool> {
        assert!(n >= 1);
        let len = 31 - n.leading_zeros();
        (0..len).rev().map(|i| n >> i & 1 == 1).collect()
    }

    pub fn shared() -> SpaceRef {
        Rc::new(BuiltinCantor)
    }
}

impl FeasibleSpace for BuiltinCantor {
    fn name(&self) -> &str {
        Self::NAME
    }

    fn in_o(&self, n: u32, t: &TPoint) -> bool {
        t.has_prefix(&Self::word(n))
    }

    fn o_descriptor(&self, n: u32) -> String {
        format!("[{}]", bits_to_str(&Self::word(n)))
    }

    fn in_r(&self, t: &TPoint) -> bool {
        // pairs repeat with period lcm(|period|, 2) once past the preperiod
        let horizon = t.pre.len() + 2 * t.period.len() + 2;
        (1..=horizon.div_ceil(2)).all(|j| t.bit(2 * j - 1) == t.bit(2 * j))
    }

    fn r_witness(&self, n: u32) -> TPoint {
        // appending (01)^ω breaks a pair within two positions of the word's end
        TPoint::new(Self::word(n), alloc::vec![false, true]).expect("non-empty period")
    }
}

/// Looks a space up by its CLI name.
pub fn space_by_name(name: &str) -> Option<SpaceRef> {
    (name == BuiltinCantor::NAME).then(BuiltinCantor::shared)
}

pub fn in_o(space: &dyn FeasibleSpace, n: u32, t: &TPoint) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    Ok(space.in_o(n, t))
}

/// `N(t) ∩ [1..bound]` where `N(t) = {n : t ∈ O_n}`.
pub fn n_window(space: &dyn FeasibleSpace, t: &TPoint, bound: u32) -> Result<FinSet> {
    if bound == 0 {
        return Err(Error::ZeroIndex);
    }
    Ok((1..=bound).filter(|&n| space.in_o(n, t)).collect())
}

/// Least `n` with `m < n ≤ search_bound`, `t ∈ O_n` and `O_n ∩ M = ∅`.
pub fn feasibility_audit(
    space: &dyn FeasibleSpace,
    others: &[TPoint],
    t: &TPoint,
    m: u32,
    search_bound: u32,
) -> Result<u32> {
    if others.contains(t) {
        return Err(Error::Precondition(format!("{t} is a member of M")));
    }
    (m.saturating_add(1)..=search_bound)
        .find(|&n| space.in_o(n, t) && others.iter().all(|s| !space.in_o(n, s)))
        .ok_or(Error::SearchExhausted { bound: search_bound })
}

/// A point of `O_n ∖ R`, checked against both predicates before it is returned.
pub fn admissibility_audit(space: &dyn FeasibleSpace, n: u32) -> Result<TPoint> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let t = space.r_witness(n);
    if space.in_o(n, &t) && !space.in_r(&t) {
        Ok(t)
    } else {
        Err(Error::InvalidWitness(n))
    }
}

/// The argument `(k, l, L)` of `f_k(l, L)`.
#[derive(Debug, Clone)]
pub struct PointQuery {
    pub k: FinSet,
    pub l: FinSet,
    pub points: Vec<TPoint>,
}

/// `f_k(l, L)`: 1 iff `l ⊆ k` and `N(t) ∩ (k∖l) = ∅` for every `t ∈ L`.
///
/// Only indices in `k∖l` matter, so membership in `O_n` is consulted for
/// `n ≤ max(k)` alone.
pub fn eval_point(space: &dyn FeasibleSpace, q: &PointQuery) -> Result<bool> {
    if let Some(t) = q.points.iter().find(|t| space.in_r(t)) {
        return Err(Error::PointInR(format!("{t}")));
    }
    if !q.l.is_subset(&q.k) {
        return Ok(false);
    }
    let free = q.k.difference(&q.l);
    Ok(q.points.iter().all(|t| free.iter().all(|n| !space.in_o(n, t))))
}

/// `Γ f_k` truncated to `bound` coordinates: the indicator word of `k`.
pub fn gamma_project(k: &FinSet, bound: u32) -> Result<Vec<bool>> {
    if k.max_elem().is_some_and(|m| m > bound) {
        return Err(Error::Precondition(format!("bound {bound} below max of {k}")));
    }
    Ok((1..=bound).map(|n| k.contains(n)).collect())
}

pub fn word_string(bits: &[bool]) -> String {
    bits_to_str(bits)
}
