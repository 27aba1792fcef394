//! Fixed-width state sets and membership indices for set families.

use std::collections::HashSet;
use std::fmt;

/// Largest state space a [`StateSet`] can address.
pub const MAX_STATES: usize = 128;

/// A subset of a state space of at most [`MAX_STATES`] states, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(u128);

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub fn from_bits(bits: u128) -> Self {
        StateSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// All states `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_STATES);
        if n == MAX_STATES {
            StateSet(u128::MAX)
        } else {
            StateSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_STATES);
        StateSet(1u128 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(StateSet::EMPTY, |s, i| s.with(i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_STATES && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        StateSet(self.0 | 1u128 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        StateSet(self.0 & !(1u128 << i))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        StateSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        StateSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        StateSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Complement relative to `0..n`.
    pub fn complement(self, n: usize) -> Self {
        StateSet::full(n).difference(self)
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Applies a state relabelling `map[i]` to every member.
    pub fn map(self, map: &[usize]) -> Self {
        self.iter().fold(StateSet::EMPTY, |s, i| s.with(map[i]))
    }

    /// Shifts every member up by `offset` positions.
    pub fn shifted(self, offset: usize) -> Self {
        if self.0 == 0 {
            self
        } else {
            StateSet(self.0 << offset)
        }
    }

    /// The members in `offset..offset + len`, shifted down to start at 0.
    pub fn window(self, offset: usize, len: usize) -> Self {
        if offset >= MAX_STATES {
            return StateSet::EMPTY;
        }
        StateSet(self.0 >> offset).intersection(StateSet::full(len))
    }

    /// Renders the set as `{a,b}` using the given state names.
    pub fn display_with(self, names: &[String]) -> String {
        let inner: Vec<&str> = self.iter().map(|i| names[i].as_str()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        StateSet::from_indices(iter)
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Orders sets by cardinality, then by bit pattern. Used as the canonical
/// property order: the empty set comes first and the full set last.
pub fn canonical_cmp(a: &StateSet, b: &StateSet) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then(a.0.cmp(&b.0))
}

const DENSE_LIMIT: usize = 20;

/// Maps member sets of a family to their position in the family.
///
/// Small ground sets use a dense table indexed by bit pattern; larger ones
/// fall back to hashing.
#[derive(Clone, Debug)]
pub enum FamilyIndex {
    Dense(Vec<u32>),
    Sparse(std::collections::HashMap<StateSet, u32>),
}

const ABSENT: u32 = u32::MAX;

impl FamilyIndex {
    pub fn new(n_states: usize, members: &[StateSet]) -> Self {
        if n_states <= DENSE_LIMIT {
            let mut table = vec![ABSENT; 1usize << n_states];
            for (i, m) in members.iter().enumerate() {
                let slot = &mut table[m.bits() as usize];
                if *slot == ABSENT {
                    *slot = i as u32;
                }
            }
            FamilyIndex::Dense(table)
        } else {
            let mut map = std::collections::HashMap::with_capacity(members.len());
            for (i, m) in members.iter().enumerate() {
                map.entry(*m).or_insert(i as u32);
            }
            FamilyIndex::Sparse(map)
        }
    }

    #[inline]
    pub fn get(&self, set: StateSet) -> Option<usize> {
        match self {
            FamilyIndex::Dense(t) => match t.get(set.bits() as usize) {
                Some(&i) if i != ABSENT => Some(i as usize),
                _ => None,
            },
            FamilyIndex::Sparse(m) => m.get(&set).map(|&i| i as usize),
        }
    }

    #[inline]
    pub fn contains(&self, set: StateSet) -> bool {
        self.get(set).is_some()
    }
}

/// Smallest intersection-closed family containing `seed` and every generator.
///
/// `seed` must already be intersection-closed and non-empty (typically
/// `[ground]`). Each generator `g` extends the family with `{g ∩ f}` for
/// every current member `f`; since the family is intersection-closed before
/// the step, it remains so after it.
pub fn intersection_saturate(seed: Vec<StateSet>, generators: &[StateSet]) -> Vec<StateSet> {
    let mut seen: HashSet<StateSet> = seed.iter().copied().collect();
    let mut family = seed;
    for &g in generators {
        if seen.contains(&g) {
            continue;
        }
        let current = family.len();
        for i in 0..current {
            let m = family[i].intersection(g);
            if seen.insert(m) {
                family.push(m);
            }
        }
        if seen.insert(g) {
            family.push(g);
        }
    }
    family.sort_by(canonical_cmp);
    family
}
