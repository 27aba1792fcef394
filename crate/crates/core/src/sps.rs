//! Finite State Property Systems.
//!
//! A finite SPS is stored canonically as its Cartan image: the family
//! `{κ(a) | a ∈ L}` of state sets, ordered by inclusion. Property
//! determination makes `κ` an order embedding, so the family is the property
//! lattice up to renaming and `ξ(p) = {a | p ∈ κ(a)}` is recovered from it.
//! Property indices follow the canonical family order of
//! [`FiniteClosureSystem`]: `0` is the bottom and the last index the top.

use std::fmt;

use crate::closure::FiniteClosureSystem;
use crate::error::{Error, Result};
use crate::order::{Lattice, OrthoMap};
use crate::stateset::{canonical_cmp, FamilyIndex, StateSet, MAX_STATES};

/// Upper bound on the number of properties produced by [`direct_sum`].
pub const MAX_SUM_PROPERTIES: usize = 1 << 20;

/// Unverified SPS data: states, one Cartan image per property, and an
/// optional declared state pre-order (pairs `(p, q)` meaning `p ≤ q`).
#[derive(Clone, Debug, Default)]
pub struct SpsCandidate {
    pub states: Vec<String>,
    pub family: Vec<StateSet>,
    pub declared_preorder: Option<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomFailure {
    /// Properties `a`, `b` lack a greatest lower bound.
    NotALattice { a: usize, b: usize },
    /// No property lies above all others.
    NoTop,
    /// The top property is not actual in `state`.
    TopNotActual { state: usize },
    /// No property lies below all others.
    NoBottom,
    /// The bottom property is actual in `state`.
    BottomActual { state: usize },
    /// Declared and derived pre-orders disagree on `p ≤ q`.
    PreorderMismatch { p: usize, q: usize, declared: bool },
    /// `a ≤ b` and `κ(a) ⊆ κ(b)` disagree, or distinct properties share a
    /// Cartan image.
    NotDetermined { a: usize, b: usize },
    /// `κ(a ∧ b) ≠ κ(a) ∩ κ(b)`.
    MeetNotIntersection { a: usize, b: usize },
}

impl AxiomFailure {
    /// The axiom (1–4) the failure belongs to; `None` for a lattice defect.
    pub fn axiom(&self) -> Option<u8> {
        match self {
            AxiomFailure::NotALattice { .. } => None,
            AxiomFailure::NoTop
            | AxiomFailure::TopNotActual { .. }
            | AxiomFailure::NoBottom
            | AxiomFailure::BottomActual { .. } => Some(1),
            AxiomFailure::PreorderMismatch { .. } => Some(2),
            AxiomFailure::NotDetermined { .. } => Some(3),
            AxiomFailure::MeetNotIntersection { .. } => Some(4),
        }
    }
}

/// Outcome of axiom verification, with one witness per failing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub failures: Vec<AxiomFailure>,
    pub state_names: Vec<String>,
    pub property_names: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn lattice_ok(&self) -> bool {
        !self.failures.iter().any(|f| {
            matches!(
                f,
                AxiomFailure::NotALattice { .. } | AxiomFailure::NoTop | AxiomFailure::NoBottom
            )
        })
    }

    pub fn axiom_holds(&self, axiom: u8) -> bool {
        !self.failures.iter().any(|f| f.axiom() == Some(axiom))
    }

    pub fn describe(&self, f: &AxiomFailure) -> String {
        let s = |i: usize| self.state_names[i].as_str();
        let p = |i: usize| self.property_names[i].as_str();
        match *f {
            AxiomFailure::NotALattice { a, b } => {
                format!("lattice: {} and {} have no greatest lower bound", p(a), p(b))
            }
            AxiomFailure::NoTop => "axiom 1: no top property (no property is actual in every state)".into(),
            AxiomFailure::TopNotActual { state } => {
                format!("axiom 1: top property is not actual in state {}", s(state))
            }
            AxiomFailure::NoBottom => "axiom 1: no bottom property".into(),
            AxiomFailure::BottomActual { state } => {
                format!("axiom 1: bottom property is actual in state {}", s(state))
            }
            AxiomFailure::PreorderMismatch { p: a, q: b, declared } => format!(
                "axiom 2: {} <= {} is {} but {} by actuality",
                s(a),
                s(b),
                if declared { "declared" } else { "not declared" },
                if declared { "does not hold" } else { "holds" }
            ),
            AxiomFailure::NotDetermined { a, b } => format!(
                "axiom 3: order between {} and {} is not determined by their Cartan images",
                p(a),
                p(b)
            ),
            AxiomFailure::MeetNotIntersection { a, b } => format!(
                "axiom 4: Cartan image of the meet of {} and {} is not the intersection",
                p(a),
                p(b)
            ),
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "all axioms hold");
        }
        let parts: Vec<String> = self.failures.iter().map(|x| self.describe(x)).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Verifies the four axioms for a system whose properties are ordered by
/// inclusion of `order_sets` and whose Cartan map is `cartan` (over
/// `state_names`). When the order comes from the Cartan images themselves,
/// pass the same slice twice.
pub fn verify_parts(
    state_names: &[String],
    order_sets: &[StateSet],
    cartan: &[StateSet],
    declared_preorder: Option<&[(usize, usize)]>,
    property_names: Vec<String>,
) -> AxiomReport {
    assert_eq!(order_sets.len(), cartan.len());
    let n_states = state_names.len();
    let n = order_sets.len();
    let full = StateSet::full(n_states.min(MAX_STATES));
    let mut failures = Vec::new();

    // axiom 1
    match (0..n).find(|&t| order_sets.iter().all(|x| x.is_subset(order_sets[t]))) {
        None => failures.push(AxiomFailure::NoTop),
        Some(t) => {
            if let Some(state) = full.difference(cartan[t]).first() {
                failures.push(AxiomFailure::TopNotActual { state });
            }
        }
    }
    match (0..n).find(|&b| order_sets.iter().all(|x| order_sets[b].is_subset(*x))) {
        None => failures.push(AxiomFailure::NoBottom),
        Some(b) => {
            if let Some(state) = cartan[b].first() {
                failures.push(AxiomFailure::BottomActual { state });
            }
        }
    }

    // axiom 2: derived p <= q iff every property actual at q is actual at p
    if let Some(declared) = declared_preorder {
        let mut leq = vec![vec![false; n_states]; n_states];
        for (p, row) in leq.iter_mut().enumerate() {
            row[p] = true;
        }
        for &(p, q) in declared {
            if p < n_states && q < n_states {
                leq[p][q] = true;
            }
        }
        crate::order::transitive_closure(&mut leq);
        'outer: for (p, row) in leq.iter().enumerate() {
            for (q, &declared) in row.iter().enumerate() {
                let derived = cartan.iter().all(|k| !k.contains(q) || k.contains(p));
                if derived != declared {
                    failures.push(AxiomFailure::PreorderMismatch { p, q, declared });
                    break 'outer;
                }
            }
        }
    }

    // axiom 3
    'outer: for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let ordered = order_sets[a].is_subset(order_sets[b]);
            let included = cartan[a].is_subset(cartan[b]);
            if ordered != included || (a < b && order_sets[a] == order_sets[b]) {
                failures.push(AxiomFailure::NotDetermined { a, b });
                break 'outer;
            }
        }
    }

    // axiom 4 (binary meets suffice on a finite lattice; the empty meet is
    // the top, covered by axiom 1)
    let width = order_sets
        .iter()
        .map(|s| 128 - s.bits().leading_zeros() as usize)
        .max()
        .unwrap_or(0);
    let index = FamilyIndex::new(width, order_sets);
    'outer: for a in 0..n {
        for b in a + 1..n {
            let inter = order_sets[a].intersection(order_sets[b]);
            let glb = index.get(inter).or_else(|| {
                let lower: Vec<usize> = (0..n).filter(|&z| order_sets[z].is_subset(inter)).collect();
                lower
                    .iter()
                    .copied()
                    .find(|&g| lower.iter().all(|&z| order_sets[z].is_subset(order_sets[g])))
            });
            match glb {
                None => {
                    failures.push(AxiomFailure::NotALattice { a, b });
                    break 'outer;
                }
                Some(g) => {
                    if cartan[g] != cartan[a].intersection(cartan[b]) {
                        failures.push(AxiomFailure::MeetNotIntersection { a, b });
                        break 'outer;
                    }
                }
            }
        }
    }

    AxiomReport {
        failures,
        state_names: state_names.to_vec(),
        property_names,
    }
}

impl SpsCandidate {
    pub fn verify(&self) -> AxiomReport {
        let names = self.family.iter().map(|s| s.display_with(&self.states)).collect();
        verify_parts(
            &self.states,
            &self.family,
            &self.family,
            self.declared_preorder.as_deref(),
            names,
        )
    }
}

/// A (verified) finite State Property System in canonical form.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSps {
    system: FiniteClosureSystem,
}

/// A test together with its inverse, given by their eigen-properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TestPair {
    pub yes: usize,
    pub no: usize,
}

impl FiniteSps {
    /// Verifies `candidate` and converts it to canonical form.
    pub fn new(candidate: SpsCandidate) -> Result<Self> {
        if candidate.states.len() > MAX_STATES {
            return Err(Error::TooManyStates(candidate.states.len()));
        }
        let report = candidate.verify();
        if !report.passed() {
            return Err(Error::AxiomViolation(Box::new(report)));
        }
        let mut family = candidate.family;
        family.sort_by(canonical_cmp);
        Ok(FiniteSps {
            system: FiniteClosureSystem::from_sorted(candidate.states, family),
        })
    }

    pub fn from_family(states: Vec<String>, family: Vec<StateSet>) -> Result<Self> {
        FiniteSps::new(SpsCandidate {
            states,
            family,
            declared_preorder: None,
        })
    }

    /// Properties are the closed sets, `ξ(p) = {A | p ∈ A}`.
    pub fn from_closure(c: &FiniteClosureSystem) -> Self {
        FiniteSps { system: c.clone() }
    }

    /// The Cartan image family.
    pub fn to_closure(&self) -> FiniteClosureSystem {
        self.system.clone()
    }

    pub fn closure_system(&self) -> &FiniteClosureSystem {
        &self.system
    }

    pub fn to_candidate(&self) -> SpsCandidate {
        SpsCandidate {
            states: self.states().to_vec(),
            family: self.props().to_vec(),
            declared_preorder: None,
        }
    }

    /// Re-runs the axiom checks on the canonical data.
    pub fn verify_axioms(&self) -> AxiomReport {
        self.to_candidate().verify()
    }

    pub fn states(&self) -> &[String] {
        self.system.ground()
    }

    pub fn n_states(&self) -> usize {
        self.system.ground_size()
    }

    pub fn n_props(&self) -> usize {
        self.system.len()
    }

    /// Cartan images, indexed by property.
    pub fn props(&self) -> &[StateSet] {
        self.system.members()
    }

    pub fn all_states(&self) -> StateSet {
        self.system.full()
    }

    #[inline]
    pub fn kappa(&self, a: usize) -> StateSet {
        self.system.members()[a]
    }

    /// `κ(a) = {p | a ∈ ξ(p)}`.
    pub fn cartan(&self, a: usize) -> Result<StateSet> {
        self.props()
            .get(a)
            .copied()
            .ok_or_else(|| Error::UnknownProperty(format!("#{a}")))
    }

    pub fn property_of(&self, set: StateSet) -> Option<usize> {
        self.system.position(set)
    }

    pub fn require_property(&self, set: StateSet) -> Result<usize> {
        self.property_of(set)
            .ok_or_else(|| Error::UnknownProperty(self.system.display(set)))
    }

    pub fn check_property(&self, a: usize) -> Result<()> {
        if a < self.n_props() {
            Ok(())
        } else {
            Err(Error::UnknownProperty(format!("#{a}")))
        }
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states().iter().position(|s| s == name)
    }

    pub fn is_actual(&self, p: usize, a: usize) -> bool {
        self.kappa(a).contains(p)
    }

    /// `ξ(p)` as property indices.
    pub fn actual(&self, p: usize) -> Vec<usize> {
        (0..self.n_props()).filter(|&a| self.is_actual(p, a)).collect()
    }

    /// Derived state pre-order: `p ≤ q` iff `ξ(q) ⊆ ξ(p)`.
    pub fn state_leq(&self, p: usize, q: usize) -> bool {
        self.props().iter().all(|k| !k.contains(q) || k.contains(p))
    }

    pub fn close(&self, set: StateSet) -> StateSet {
        self.system.close(set)
    }

    pub fn property_name(&self, a: usize) -> String {
        self.system.display(self.kappa(a))
    }

    pub fn set_name(&self, s: StateSet) -> String {
        self.system.display(s)
    }

    pub fn names_of(&self, props: &[usize]) -> Vec<String> {
        props.iter().map(|&a| self.property_name(a)).collect()
    }

    /// The sub-system on the states `κ(top)` with properties the interval
    /// `[0, top]`, i.e. all properties below `top`, with the restricted
    /// actuality. State order is preserved.
    pub fn interval_below(&self, top: usize) -> FiniteSps {
        let states: Vec<usize> = self.kappa(top).iter().collect();
        let names: Vec<String> = states.iter().map(|&i| self.states()[i].clone()).collect();
        let mut relabel = vec![usize::MAX; self.n_states()];
        for (new, &old) in states.iter().enumerate() {
            relabel[old] = new;
        }
        let mut family: Vec<StateSet> = self
            .props()
            .iter()
            .filter(|k| k.is_subset(self.kappa(top)))
            .map(|k| k.map(&relabel))
            .collect();
        family.sort_by(canonical_cmp);
        FiniteSps {
            system: FiniteClosureSystem::from_sorted(names, family),
        }
    }
}

impl Lattice for FiniteSps {
    fn size(&self) -> usize {
        self.system.size()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.system.leq(a, b)
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.system.meet(a, b)
    }

    fn join(&self, a: usize, b: usize) -> usize {
        self.system.join(a, b)
    }

    fn bottom(&self) -> usize {
        0
    }

    fn top(&self) -> usize {
        self.system.len() - 1
    }

    fn element_name(&self, a: usize) -> String {
        self.property_name(a)
    }
}

fn sum_layout(summands: &[&FiniteSps]) -> Result<Vec<usize>> {
    let mut offsets = Vec::with_capacity(summands.len());
    let mut total = 0usize;
    for s in summands {
        offsets.push(total);
        total += s.n_states();
    }
    if total > MAX_STATES {
        return Err(Error::TooManyStates(total));
    }
    let props: usize = summands
        .iter()
        .map(|s| s.n_props())
        .try_fold(1usize, |acc, k| acc.checked_mul(k))
        .unwrap_or(usize::MAX);
    if props > MAX_SUM_PROPERTIES {
        return Err(Error::SizeCapExceeded {
            size: props,
            cap: MAX_SUM_PROPERTIES,
        });
    }
    Ok(offsets)
}

/// Direct sum: disjoint union of states (summand `i`'s state `x` is named
/// `i.x`), product property lattice ordered componentwise, and for a state of
/// summand `ω`, `(a_ν) ∈ ξ(p)` iff `a_ω ∈ ξ_ω(p)`. The Cartan image of
/// `(a_ν)` is therefore the disjoint union of the `κ_ν(a_ν)`.
pub fn direct_sum(summands: &[FiniteSps]) -> Result<FiniteSps> {
    if summands.is_empty() {
        return Err(Error::Document("direct sum needs at least one summand".into()));
    }
    let refs: Vec<&FiniteSps> = summands.iter().collect();
    let offsets = sum_layout(&refs)?;
    let mut names = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        names.extend(s.states().iter().map(|x| format!("{i}.{x}")));
    }
    let mut family = vec![StateSet::EMPTY];
    for (s, &off) in summands.iter().zip(&offsets) {
        let mut next = Vec::with_capacity(family.len() * s.n_props());
        for f in &family {
            for k in s.props() {
                next.push(f.union(k.shifted(off)));
            }
        }
        family = next;
    }
    family.sort_by(canonical_cmp);
    Ok(FiniteSps {
        system: FiniteClosureSystem::from_sorted(names, family),
    })
}

/// Direct sum together with the componentwise orthocomplementation.
pub fn direct_sum_with_orthos(summands: &[(FiniteSps, OrthoMap)]) -> Result<(FiniteSps, OrthoMap)> {
    for (s, m) in summands {
        m.validate(s)?;
    }
    let systems: Vec<FiniteSps> = summands.iter().map(|(s, _)| s.clone()).collect();
    let sum = direct_sum(&systems)?;
    let refs: Vec<&FiniteSps> = systems.iter().collect();
    let offsets = sum_layout(&refs)?;
    let image = sum
        .props()
        .iter()
        .map(|&k| {
            let mut out = StateSet::EMPTY;
            for ((s, m), &off) in summands.iter().zip(&offsets) {
                let piece = k.window(off, s.n_states());
                let a = s
                    .property_of(piece)
                    .expect("pieces of sum properties are summand properties");
                out = out.union(s.kappa(m.apply(a)).shifted(off));
            }
            sum.property_of(out)
                .expect("componentwise complements are sum properties")
        })
        .collect();
    Ok((sum, OrthoMap::new(image)))
}
