//! Finite closure systems (Moore families), their closure operators, and
//! finite topologies.
//!
//! On a finite carrier the closure operator `c` of a closure system is
//! additive (`c(A ∪ B) = c(A) ∪ c(B)`) exactly when the closed family is
//! closed under binary unions: if it is, `c(A) ∪ c(B)` is a closed superset
//! of `A ∪ B` and so contains `c(A ∪ B)`, while monotonicity gives the
//! reverse inclusion; conversely, for closed `A`, `B` additivity makes
//! `A ∪ B = c(A ∪ B)` closed. [`FiniteClosureSystem::is_additive`] relies on
//! this and never quantifies over arbitrary subset pairs.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::order::{enumerate_orthos, Lattice};
use crate::stateset::{canonical_cmp, intersection_saturate, FamilyIndex, StateSet, MAX_STATES};

/// An intersection-closed family of subsets of a finite ground set that
/// contains the ground set and (always) the empty set.
///
/// Members are kept in canonical order: by cardinality, then bit pattern. The
/// empty set is member 0 and the ground set is the last member.
#[derive(Clone, Debug)]
pub struct FiniteClosureSystem {
    ground: Vec<String>,
    closed: Vec<StateSet>,
    index: FamilyIndex,
}

impl PartialEq for FiniteClosureSystem {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.closed == other.closed
    }
}

fn check_ground(ground: &[String]) -> Result<()> {
    if ground.len() > MAX_STATES {
        return Err(Error::TooManyStates(ground.len()));
    }
    let mut seen = HashSet::new();
    for g in ground {
        if !seen.insert(g.as_str()) {
            return Err(Error::Document(format!("duplicate state name '{g}'")));
        }
    }
    Ok(())
}

impl FiniteClosureSystem {
    /// Smallest intersection-closed family containing `generators` and the
    /// ground set, with the empty set adjoined.
    pub fn saturate(ground: Vec<String>, generators: &[StateSet]) -> Result<Self> {
        check_ground(&ground)?;
        let full = StateSet::full(ground.len());
        if let Some(index) = generators.iter().position(|g| !g.is_subset(full)) {
            return Err(Error::GeneratorOutOfGround { index });
        }
        let mut gens = generators.to_vec();
        gens.push(StateSet::EMPTY);
        let closed = intersection_saturate(vec![full], &gens);
        Ok(Self::from_sorted(ground, closed))
    }

    /// Accepts a family that must already contain the ground set and be
    /// intersection-closed; the empty set is adjoined if missing.
    pub fn new(ground: Vec<String>, family: Vec<StateSet>) -> Result<Self> {
        check_ground(&ground)?;
        let full = StateSet::full(ground.len());
        let mut closed: Vec<StateSet> = family;
        if closed.iter().any(|s| !s.is_subset(full)) {
            return Err(Error::NotAClosureSystem("member outside the ground set".into()));
        }
        closed.push(StateSet::EMPTY);
        closed.sort_by(canonical_cmp);
        closed.dedup();
        if *closed.last().unwrap() != full {
            return Err(Error::NotAClosureSystem("ground set is not closed".into()));
        }
        let index = FamilyIndex::new(ground.len(), &closed);
        for (i, a) in closed.iter().enumerate() {
            for b in &closed[i + 1..] {
                if !index.contains(a.intersection(*b)) {
                    return Err(Error::NotAClosureSystem(format!(
                        "{} ∩ {} is not closed",
                        a.display_with(&ground),
                        b.display_with(&ground)
                    )));
                }
            }
        }
        Ok(FiniteClosureSystem { ground, closed, index })
    }

    pub(crate) fn from_sorted(ground: Vec<String>, closed: Vec<StateSet>) -> Self {
        debug_assert!(closed.windows(2).all(|w| canonical_cmp(&w[0], &w[1]).is_lt()));
        let index = FamilyIndex::new(ground.len(), &closed);
        FiniteClosureSystem { ground, closed, index }
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    pub fn full(&self) -> StateSet {
        StateSet::full(self.ground.len())
    }

    pub fn members(&self) -> &[StateSet] {
        &self.closed
    }

    pub fn len(&self) -> usize {
        self.closed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty()
    }

    pub fn position(&self, set: StateSet) -> Option<usize> {
        self.index.get(set)
    }

    pub fn is_closed(&self, set: StateSet) -> bool {
        self.index.contains(set)
    }

    /// The smallest closed superset of `a`.
    pub fn close(&self, a: StateSet) -> StateSet {
        if self.is_closed(a) {
            return a;
        }
        self.closed
            .iter()
            .filter(|c| a.is_subset(**c))
            .fold(self.full(), |acc, c| acc.intersection(*c))
    }

    /// First pair of members whose union is not closed.
    pub fn additivity_witness(&self) -> Option<(usize, usize)> {
        let n = self.closed.len();
        for i in 0..n {
            for j in i + 1..n {
                if !self.index.contains(self.closed[i].union(self.closed[j])) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_additive(&self) -> bool {
        self.additivity_witness().is_none()
    }

    /// Number of unordered member pairs whose union is not closed.
    pub fn additivity_defect(&self) -> usize {
        let n = self.closed.len();
        let mut count = 0;
        for i in 0..n {
            let a = self.closed[i];
            count += self.closed[i + 1..]
                .iter()
                .filter(|b| !self.index.contains(a.union(**b)))
                .count();
        }
        count
    }

    pub fn display(&self, a: StateSet) -> String {
        a.display_with(&self.ground)
    }
}

impl Lattice for FiniteClosureSystem {
    fn size(&self) -> usize {
        self.closed.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.closed[a].is_subset(self.closed[b])
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.index
            .get(self.closed[a].intersection(self.closed[b]))
            .expect("closure systems are intersection-closed")
    }

    fn join(&self, a: usize, b: usize) -> usize {
        let c = self.close(self.closed[a].union(self.closed[b]));
        self.index.get(c).expect("closures are closed")
    }

    fn bottom(&self) -> usize {
        0
    }

    fn top(&self) -> usize {
        self.closed.len() - 1
    }

    fn element_name(&self, a: usize) -> String {
        self.display(self.closed[a])
    }
}

/// A finite topology given by its open sets.
#[derive(Clone, Debug)]
pub struct FiniteTopology {
    ground: Vec<String>,
    open: Vec<StateSet>,
    index: FamilyIndex,
}

impl FiniteTopology {
    pub fn new(ground: Vec<String>, open: Vec<StateSet>) -> Result<Self> {
        check_ground(&ground)?;
        let full = StateSet::full(ground.len());
        let mut open = open;
        if open.iter().any(|s| !s.is_subset(full)) {
            return Err(Error::InvalidTopology("open set outside the ground set".into()));
        }
        open.sort_by(canonical_cmp);
        open.dedup();
        let index = FamilyIndex::new(ground.len(), &open);
        if !index.contains(StateSet::EMPTY) {
            return Err(Error::InvalidTopology("empty set is not open".into()));
        }
        if !index.contains(full) {
            return Err(Error::InvalidTopology("ground set is not open".into()));
        }
        for (i, a) in open.iter().enumerate() {
            for b in &open[i + 1..] {
                for (op, set) in [("∪", a.union(*b)), ("∩", a.intersection(*b))] {
                    if !index.contains(set) {
                        return Err(Error::InvalidTopology(format!(
                            "{} {op} {} is not open",
                            a.display_with(&ground),
                            b.display_with(&ground)
                        )));
                    }
                }
            }
        }
        Ok(FiniteTopology { ground, open, index })
    }

    /// The topology whose opens are all unions of finite intersections of
    /// `subbase` members.
    pub fn generated_by(ground: Vec<String>, subbase: &[StateSet]) -> Result<Self> {
        check_ground(&ground)?;
        let full = StateSet::full(ground.len());
        let base = intersection_saturate(vec![full], subbase);
        let mut opens: HashSet<StateSet> = HashSet::new();
        opens.insert(StateSet::EMPTY);
        for b in base {
            let current: Vec<StateSet> = opens.iter().copied().collect();
            for o in current {
                opens.insert(o.union(b));
            }
        }
        FiniteTopology::new(ground, opens.into_iter().collect())
    }

    pub fn discrete(ground: Vec<String>) -> Result<Self> {
        let n = ground.len();
        let singletons: Vec<StateSet> = (0..n).map(StateSet::singleton).collect();
        FiniteTopology::generated_by(ground, &singletons)
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn opens(&self) -> &[StateSet] {
        &self.open
    }

    pub fn is_open(&self, a: StateSet) -> bool {
        self.index.contains(a)
    }

    /// The closed sets, as a closure system. Always additive.
    pub fn closed_sets(&self) -> FiniteClosureSystem {
        let n = self.ground.len();
        let mut closed: Vec<StateSet> = self.open.iter().map(|o| o.complement(n)).collect();
        closed.sort_by(canonical_cmp);
        FiniteClosureSystem::from_sorted(self.ground.clone(), closed)
    }

    /// Topological closure `c_X(a)`.
    pub fn closure_of(&self, a: StateSet) -> StateSet {
        let n = self.ground.len();
        self.open
            .iter()
            .map(|o| o.complement(n))
            .filter(|c| a.is_subset(*c))
            .fold(StateSet::full(n), |acc, c| acc.intersection(c))
    }

    /// `A* = ⋃ {B open | A ∩ B = ∅}`, cross-checked against `X \ c_X(A)`.
    pub fn pseudocomplement(&self, a: StateSet) -> Result<StateSet> {
        if !self.is_open(a) {
            return Err(Error::NotOpen);
        }
        let by_union = self
            .open
            .iter()
            .filter(|b| b.is_disjoint(a))
            .fold(StateSet::EMPTY, |acc, b| acc.union(*b));
        let by_closure = self.closure_of(a).complement(self.ground.len());
        if by_union != by_closure {
            return Err(Error::Inconsistent(format!(
                "pseudocomplement of {}: union route {} differs from closure route {}",
                a.display_with(&self.ground),
                by_union.display_with(&self.ground),
                by_closure.display_with(&self.ground)
            )));
        }
        Ok(by_union)
    }
}

/// The three assertions about the closed-set lattice of a topology, each
/// evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop1Verdict {
    /// The closed-set lattice admits an orthocomplementation (exhaustive search).
    pub ortho_exists: bool,
    pub ortho_count: usize,
    /// The closed-set lattice is a Boolean algebra.
    pub boolean: bool,
    /// Every closed set is open and vice versa.
    pub clopen_coincide: bool,
    /// The open family is the whole power set.
    pub discrete: bool,
    pub equivalence_holds: bool,
}

pub fn prop1_verdict(t: &FiniteTopology, cap: usize) -> Result<Prop1Verdict> {
    let closed = t.closed_sets();
    let orthos = enumerate_orthos(&closed, cap)?;
    let boolean = closed.is_boolean();
    let clopen_coincide = closed.len() == t.open.len() && closed.members().iter().all(|c| t.is_open(*c));
    let ortho_exists = !orthos.is_empty();
    Ok(Prop1Verdict {
        ortho_exists,
        ortho_count: orthos.len(),
        boolean,
        clopen_coincide,
        discrete: t.ground.len() < 64 && t.open.len() == 1usize << t.ground.len(),
        equivalence_holds: ortho_exists == boolean && boolean == clopen_coincide,
    })
}
