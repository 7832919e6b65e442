//! Piecewise involutions exchanging two disjoint clopen sets.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;

use super::piecewise::{Piece, PieceSource, PiecewiseMap};
use crate::clopen::{equal_on_window, ClopenExpr};
use crate::error::{Error, Result};
use crate::finset::{enum_finset, subsets, DyadicElem, FinSet};

/// How far past the natural depth a piece may be pushed to stay proper.
const DEPTH_HEADROOM: u32 = 64;

struct SwapSource {
    a_set: ClopenExpr,
    b_set: ClopenExpr,
    rem_a: ClopenExpr,
    rem_b: ClopenExpr,
    /// Enumeration indices below which the remainders are known to be empty.
    cursor_a: u64,
    cursor_b: u64,
    first: Option<(FinSet, FinSet)>,
    pending: Option<Piece>,
    started: bool,
    step: u32,
    depth: u32,
}

/// First point of `e` in enumeration order, at or after index `*cursor`.
fn first_point(e: &ClopenExpr, cursor: &mut u64, depth: u32) -> Result<FinSet> {
    let bound = (depth + DEPTH_HEADROOM).min(62);
    while *cursor < 1u64 << bound {
        let k = enum_finset(*cursor);
        if e.member(&k)? {
            return Ok(k);
        }
        *cursor += 1;
    }
    Err(Error::SearchExhausted { bound })
}

impl PieceSource for SwapSource {
    fn next_piece(&mut self) -> Result<Option<Piece>> {
        if !self.started {
            self.started = true;
            let outside = self.a_set.or(&self.b_set).not();
            return Ok(Some(Piece { region: outside, mv: DyadicElem::zero() }));
        }
        if let Some(p) = self.pending.take() {
            return Ok(Some(p));
        }
        self.step += 1;
        let (a, b) = match self.first.take() {
            Some(pair) => pair,
            None => (
                first_point(&self.rem_a, &mut self.cursor_a, self.depth)?,
                first_point(&self.rem_b, &mut self.cursor_b, self.depth)?,
            ),
        };
        let g = DyadicElem::moving(&a, &b);
        let cand = self.rem_a.and(&self.rem_b.translate(&g));
        // A_j is the cylinder of a_j on {1..d} inside cand. The point
        // a_j ∪ {d} certifies that A_j is proper in both remainders; d starts
        // past max(a_j ∪ b_j) by a margin growing with the step count, which
        // keeps the pieces small and both remainders thick.
        let top = a.max_elem().unwrap_or(0).max(b.max_elem().unwrap_or(0));
        let start = top + 2 + (u32::BITS - self.step.leading_zeros());
        let mut d = start;
        while !cand.member(&a.with(d))? {
            d += 1;
            if d > start + DEPTH_HEADROOM {
                return Err(Error::NoSplit { depth: d });
            }
        }
        let piece_a = cand.and(&ClopenExpr::cylinder(&a, d));
        let piece_b = piece_a.translate(&g);
        self.rem_a = self.rem_a.minus(&piece_a);
        self.rem_b = self.rem_b.minus(&piece_b);
        self.pending = Some(Piece { region: piece_b, mv: g.clone() });
        Ok(Some(Piece { region: piece_a, mv: g }))
    }
}

/// Involution `h` with `h(a) = b`, `h[A] = B`, `h[B] = A` and `h = id` off
/// `A ∪ B`.
///
/// Pieces are produced on demand: the identity piece off `A ∪ B` first, then
/// matched pairs `(A_j, g_j)`, `(g_j[A_j], g_j)`. Step `j` pairs the first
/// uncovered points `a_j ∈ A`, `b_j ∈ B` (the given `a`, `b` at the first
/// step) through `g_j = a_j Δ b_j`, and `A_j` is a proper clopen
/// neighbourhood of `a_j` inside the uncovered part of `A` that `g_j` moves
/// into the uncovered part of `B`, cut down to a cylinder around `a_j` deep
/// enough that both remainders stay non-empty. Keeping both remainders non-empty lets
/// the induction run forever, and every point is covered after finitely many
/// steps.
pub fn build_swap(
    a_set: &ClopenExpr,
    b_set: &ClopenExpr,
    a: &FinSet,
    b: &FinSet,
    depth: u32,
) -> Result<PiecewiseMap> {
    build_swap_named("swap", a_set, b_set, a, b, depth)
}

pub fn build_swap_named(
    label: &str,
    a_set: &ClopenExpr,
    b_set: &ClopenExpr,
    a: &FinSet,
    b: &FinSet,
    depth: u32,
) -> Result<PiecewiseMap> {
    if !equal_on_window(&a_set.and(b_set), &ClopenExpr::empty(), depth)? {
        return Err(Error::Precondition("swap sets overlap".into()));
    }
    if !a_set.member(a)? || !b_set.member(b)? {
        return Err(Error::Precondition(format!("swap endpoints {a}, {b} outside their sets")));
    }
    let source = SwapSource {
        a_set: a_set.clone(),
        b_set: b_set.clone(),
        rem_a: a_set.clone(),
        rem_b: b_set.clone(),
        cursor_a: 0,
        cursor_b: 0,
        first: Some((a.clone(), b.clone())),
        pending: None,
        started: false,
        step: 0,
        depth,
    };
    Ok(PiecewiseMap::lazy(label, Box::new(source)))
}

/// First window point where `h` fails to be an involution swapping `A` and
/// `B`, fixing the rest and sending `a` to `b`.
pub fn swap_counterexample(
    h: &PiecewiseMap,
    a_set: &ClopenExpr,
    b_set: &ClopenExpr,
    a: &FinSet,
    b: &FinSet,
    depth: u32,
) -> Result<Option<String>> {
    if h.apply(a)? != *b {
        return Ok(Some(format!("h({a}) != {b}")));
    }
    for x in subsets(depth) {
        let y = h.apply(&x)?;
        if h.apply(&y)? != x {
            return Ok(Some(format!("h(h({x})) != {x}")));
        }
        let (in_a, in_b) = (a_set.member(&x)?, b_set.member(&x)?);
        if in_a && !b_set.member(&y)? {
            return Ok(Some(format!("{x} in A but h({x}) = {y} not in B")));
        }
        if in_b && !a_set.member(&y)? {
            return Ok(Some(format!("{x} in B but h({x}) = {y} not in A")));
        }
        if !in_a && !in_b && y != x {
            return Ok(Some(format!("{x} outside A and B but moved to {y}")));
        }
    }
    Ok(None)
}
