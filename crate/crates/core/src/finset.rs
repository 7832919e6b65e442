//! Finite subsets of `ℕ = {1, 2, ...}` and the dyadic group acting on them.
//!
//! A [`FinSet`] plays three roles: the index `k` of an orbit point `f_k`, the
//! support of a dyadic group element, and the parameter `l` of a basis set.
//! The group law of `⊕Z₂` is symmetric difference of supports, and the action
//! on orbit indices is symmetric difference as well.

use alloc::vec::Vec;
use core::fmt;

/// Default upper bound on elements used by exhaustive sweeps.
pub const DEFAULT_UNIVERSE: u32 = 64;

/// A finite set of positive integers stored as a strictly increasing sequence.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSet(Vec<u32>);

impl FinSet {
    pub const fn empty() -> Self {
        FinSet(Vec::new())
    }

    /// Builds a set from arbitrary elements, sorting and removing duplicates.
    ///
    /// Panics if an element is zero; indices start at 1.
    pub fn new<I: IntoIterator<Item = u32>>(elems: I) -> Self {
        let mut v: Vec<u32> = elems.into_iter().collect();
        assert!(!v.contains(&0), "FinSet elements are positive integers");
        v.sort_unstable();
        v.dedup();
        FinSet(v)
    }

    pub fn singleton(n: u32) -> Self {
        FinSet::new([n])
    }

    /// `{lo, lo+1, ..., hi}`; empty when `hi < lo`.
    pub fn interval(lo: u32, hi: u32) -> Self {
        FinSet::new(lo.max(1)..=hi)
    }

    pub fn elems(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_elem(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn min_elem(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn contains(&self, n: u32) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    pub fn is_subset(&self, other: &FinSet) -> bool {
        let mut it = other.0.iter();
        'outer: for x in &self.0 {
            for y in it.by_ref() {
                if y == x {
                    continue 'outer;
                }
                if y > x {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn with(&self, n: u32) -> FinSet {
        match self.0.binary_search(&n) {
            Ok(_) => self.clone(),
            Err(pos) => {
                assert!(n != 0, "FinSet elements are positive integers");
                let mut v = self.0.clone();
                v.insert(pos, n);
                FinSet(v)
            }
        }
    }

    pub fn without(&self, n: u32) -> FinSet {
        match self.0.binary_search(&n) {
            Ok(pos) => {
                let mut v = self.0.clone();
                v.remove(pos);
                FinSet(v)
            }
            Err(_) => self.clone(),
        }
    }

    pub fn union(&self, other: &FinSet) -> FinSet {
        self.merge(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &FinSet) -> FinSet {
        self.merge(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &FinSet) -> FinSet {
        self.merge(other, |a, b| a && !b)
    }

    pub fn symdiff(&self, other: &FinSet) -> FinSet {
        self.merge(other, |a, b| a != b)
    }

    fn merge(&self, other: &FinSet, keep: impl Fn(bool, bool) -> bool) -> FinSet {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (x, in_a, in_b) = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                    (x, true, true)
                }
                (Some(&x), Some(&y)) if x < y => {
                    i += 1;
                    (x, true, false)
                }
                (Some(_), Some(&y)) => {
                    j += 1;
                    (y, false, true)
                }
                (Some(&x), None) => {
                    i += 1;
                    (x, true, false)
                }
                (None, Some(&y)) => {
                    j += 1;
                    (y, false, true)
                }
                (None, None) => unreachable!(),
            };
            if keep(in_a, in_b) {
                out.push(x);
            }
        }
        FinSet(out)
    }

    /// Position of this set in the binary enumeration, if every element is at
    /// most 64.
    pub fn enum_index(&self) -> Option<u64> {
        self.0.iter().try_fold(0u64, |acc, &n| {
            (n <= 64).then(|| acc | (1u64 << (n - 1)))
        })
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<u32> for FinSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        FinSet::new(iter)
    }
}

/// Symmetric difference `(a∖b) ∪ (b∖a)`.
pub fn symdiff(a: &FinSet, b: &FinSet) -> FinSet {
    a.symdiff(b)
}

/// The `i`-th finite set: positions (1-based) of the set bits of `i`.
///
/// `enum_finset(0)` is the empty set, so the enumeration starts at `f_∅`.
pub fn enum_finset(i: u64) -> FinSet {
    let mut v = Vec::with_capacity(i.count_ones() as usize);
    let mut rest = i;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        v.push(bit + 1);
        rest &= rest - 1;
    }
    FinSet(v)
}

/// All subsets of `{1..n}` in enumeration order.
pub fn subsets(n: u32) -> impl Iterator<Item = FinSet> {
    assert!(n < 64, "window too large to enumerate");
    (0..(1u64 << n)).map(enum_finset)
}

/// An element of the dyadic group `⊕Z₂`, identified with its support.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyadicElem(FinSet);

impl DyadicElem {
    pub const fn zero() -> Self {
        DyadicElem(FinSet::empty())
    }

    /// The standard generator `g_n`.
    pub fn generator(n: u32) -> Self {
        DyadicElem(FinSet::singleton(n))
    }

    pub fn from_support(support: FinSet) -> Self {
        DyadicElem(support)
    }

    pub fn support(&self) -> &FinSet {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Group law. Every element is its own inverse.
    pub fn add(&self, other: &DyadicElem) -> DyadicElem {
        DyadicElem(self.0.symdiff(&other.0))
    }

    pub fn act(&self, k: &FinSet) -> FinSet {
        self.0.symdiff(k)
    }

    /// The unique element moving `x` to `y`.
    pub fn moving(x: &FinSet, y: &FinSet) -> DyadicElem {
        DyadicElem(x.symdiff(y))
    }
}

impl fmt::Debug for DyadicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

impl fmt::Display for DyadicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

/// `ε_g(k)`: the action of `g` on the orbit index `k`.
pub fn dyadic_act(g: &DyadicElem, k: &FinSet) -> FinSet {
    g.act(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &[u32]) -> FinSet {
        FinSet::new(v.iter().copied())
    }

    /// One application of `σ_n` exactly as defined pointwise: remove `n` when
    /// present, add it otherwise.
    fn sigma(n: u32, k: &FinSet) -> FinSet {
        if k.contains(n) {
            k.without(n)
        } else {
            k.with(n)
        }
    }

    #[test]
    fn symdiff_examples() {
        assert_eq!(symdiff(&s(&[1, 2]), &s(&[2, 3])), s(&[1, 3]));
        assert_eq!(symdiff(&FinSet::empty(), &s(&[5])), s(&[5]));
        assert_eq!(symdiff(&s(&[1, 2]), &s(&[1, 2])), FinSet::empty());
    }

    #[test]
    fn enum_examples() {
        assert_eq!(enum_finset(0), FinSet::empty());
        assert_eq!(enum_finset(5), s(&[1, 3]));
        assert_eq!(enum_finset(6), s(&[2, 3]));
    }

    #[test]
    fn enum_is_a_bijection_below_2_16() {
        let mut seen = std::collections::HashSet::new();
        for i in 0..(1u64 << 16) {
            let k = enum_finset(i);
            // independent reconstruction from the element list
            let back: u64 = k.iter().map(|n| 1u64 << (n - 1)).sum();
            assert_eq!(back, i);
            assert_eq!(k.enum_index(), Some(i));
            assert!(seen.insert(k));
        }
    }

    #[test]
    fn act_examples() {
        let g = DyadicElem::from_support(s(&[1, 3]));
        let sequential = sigma(3, &sigma(1, &s(&[1, 2])));
        assert_eq!(sequential, s(&[2, 3]));
        assert_eq!(dyadic_act(&g, &s(&[1, 2])), sequential);
        assert_eq!(dyadic_act(&DyadicElem::zero(), &s(&[4, 7])), s(&[4, 7]));
        assert_eq!(dyadic_act(&DyadicElem::generator(2), &s(&[1, 2])), s(&[1]));
    }

    #[test]
    fn group_laws_exhaustive_on_1_to_4() {
        let all: Vec<FinSet> = subsets(4).collect();
        for a in &all {
            assert_eq!(symdiff(a, &FinSet::empty()), *a);
            assert!(symdiff(a, a).is_empty());
            for b in &all {
                assert_eq!(symdiff(a, b), symdiff(b, a));
                for c in &all {
                    assert_eq!(symdiff(&symdiff(a, b), c), symdiff(a, &symdiff(b, c)));
                }
            }
        }
    }

    #[test]
    fn orbit_of_empty_is_power_set_and_action_is_free() {
        for n in 0..=8u32 {
            let orbit: std::collections::BTreeSet<FinSet> = subsets(n)
                .map(|supp| dyadic_act(&DyadicElem::from_support(supp), &FinSet::empty()))
                .collect();
            assert_eq!(orbit.len(), 1 << n);
            assert!(orbit.iter().all(|k| k.max_elem().is_none_or(|m| m <= n)));
        }
        for g in subsets(8) {
            let g = DyadicElem::from_support(g);
            for k in subsets(8) {
                if dyadic_act(&g, &k) == k {
                    assert!(g.is_zero());
                }
            }
        }
    }

    #[test]
    fn subset_and_set_ops() {
        assert!(s(&[1, 3]).is_subset(&s(&[1, 2, 3])));
        assert!(!s(&[1, 4]).is_subset(&s(&[1, 2, 3])));
        assert!(FinSet::empty().is_subset(&FinSet::empty()));
        assert_eq!(s(&[1, 2, 5]).difference(&s(&[2])), s(&[1, 5]));
        assert_eq!(s(&[1, 2, 5]).intersection(&s(&[2, 5, 7])), s(&[2, 5]));
        assert_eq!(FinSet::interval(2, 4), s(&[2, 3, 4]));
        assert_eq!(format!("{}", s(&[1, 3])), "{1,3}");
    }

    fn arb_set() -> impl Strategy<Value = FinSet> {
        (0u64..256).prop_map(enum_finset)
    }

    proptest! {
        #[test]
        fn sigma_involutive_and_commuting(k in arb_set(), m in 1u32..=8, n in 1u32..=8) {
            prop_assert_eq!(sigma(n, &sigma(n, &k)), k.clone());
            prop_assert_eq!(sigma(m, &sigma(n, &k)), sigma(n, &sigma(m, &k)));
            let gm = DyadicElem::generator(m);
            let gn = DyadicElem::generator(n);
            prop_assert_eq!(dyadic_act(&gn, &k), sigma(n, &k));
            prop_assert_eq!(dyadic_act(&gm, &dyadic_act(&gn, &k)), dyadic_act(&gm.add(&gn), &k));
        }

        #[test]
        fn set_ops_agree_with_membership(a in arb_set(), b in arb_set()) {
            for n in 1..=8 {
                prop_assert_eq!(a.symdiff(&b).contains(n), a.contains(n) != b.contains(n));
                prop_assert_eq!(a.union(&b).contains(n), a.contains(n) || b.contains(n));
                prop_assert_eq!(a.difference(&b).contains(n), a.contains(n) && !b.contains(n));
            }
            prop_assert_eq!(a.is_subset(&b), a.iter().all(|n| b.contains(n)));
        }
    }
}
