//! Topological properties and states, the topological Cartan map, the
//! T-classical subsystem `(T, 𝒯, ξ_t)` and the checks around it.
//!
//! A property `a` is topological when `κ(a ∨ b) = κ(a) ∪ κ(b)` for every `b`.
//! Since `κ(a ∨ b)` is the closure of `κ(a) ∪ κ(b)`, this says that the
//! union is itself a Cartan image, which is a single index lookup.

use crate::classical::{is_partition, meet_of_actual, OperationalClassicalAnalysis};
use crate::error::{Error, Result};
use crate::order::Lattice;
use crate::sps::{verify_parts, FiniteSps, TestPair};
use crate::stateset::StateSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologicalAnalysis {
    /// `𝒯`, ascending.
    pub topological: Vec<usize>,
    /// `τ(p)` for every state.
    pub tau_of: Vec<usize>,
    /// `T`: the distinct topological states, ascending.
    pub t_states: Vec<usize>,
    /// `{κ(τ(p)) | p ∈ Σ}` without repetitions, in the order of `t_states`.
    pub coverage: Vec<StateSet>,
}

impl TopologicalAnalysis {
    pub fn new(s: &FiniteSps) -> Self {
        let topological = topological_properties(s);
        let tau_of: Vec<usize> = (0..s.n_states()).map(|p| meet_of_actual(s, p, &topological)).collect();
        let mut t_states = tau_of.clone();
        t_states.sort_unstable();
        t_states.dedup();
        let coverage = t_states.iter().map(|&t| s.kappa(t)).collect();
        TopologicalAnalysis {
            topological,
            tau_of,
            t_states,
            coverage,
        }
    }

    pub fn is_topological(&self, a: usize) -> bool {
        self.topological.binary_search(&a).is_ok()
    }

    /// Position of `τ(p)` in `t_states`.
    pub fn t_state_index(&self, p: usize) -> usize {
        self.t_states
            .binary_search(&self.tau_of[p])
            .expect("every τ(p) is listed")
    }

    /// `κ_t(a) = {τ(p) | p ∈ κ(a)}` as positions in `t_states`.
    pub fn cartan(&self, s: &FiniteSps, a: usize) -> Result<StateSet> {
        s.check_property(a)?;
        if !self.is_topological(a) {
            return Err(Error::NotTopological(s.property_name(a)));
        }
        Ok(s.kappa(a).iter().map(|p| self.t_state_index(p)).collect())
    }
}

fn union_is_image(s: &FiniteSps, a: usize) -> bool {
    let ka = s.kappa(a);
    s.props().iter().all(|kb| s.property_of(ka.union(*kb)).is_some())
}

/// `∀b: κ(a ∨ b) ⊆ κ(a) ∪ κ(b)`.
pub fn is_topological(s: &FiniteSps, a: usize) -> Result<bool> {
    s.check_property(a)?;
    Ok(union_is_image(s, a))
}

/// `𝒯` by an exhaustive scan over all pairs.
pub fn topological_properties(s: &FiniteSps) -> Vec<usize> {
    (0..s.n_props()).filter(|&a| union_is_image(s, a)).collect()
}

/// `τ(p) = ⋀ {a ∈ ξ(p) ∩ 𝒯}`.
pub fn topological_state(s: &FiniteSps, p: usize) -> Result<usize> {
    if p >= s.n_states() {
        return Err(Error::UnknownState(format!("#{p}")));
    }
    Ok(meet_of_actual(s, p, &topological_properties(s)))
}

/// `T = {τ(p) | p ∈ Σ}`.
pub fn topological_state_space(s: &FiniteSps) -> Vec<usize> {
    TopologicalAnalysis::new(s).t_states
}

/// `κ_t(a)` as positions in [`topological_state_space`].
pub fn topological_cartan(s: &FiniteSps, a: usize) -> Result<StateSet> {
    TopologicalAnalysis::new(s).cartan(s, a)
}

/// Builds `(T, 𝒯, ξ_t)` with `ξ_t(τ(p)) = ξ(p) ∩ 𝒯`. States are named by the
/// Cartan image of the topological state they stand for.
pub fn t_classical_system(s: &FiniteSps) -> Result<FiniteSps> {
    let analysis = TopologicalAnalysis::new(s);
    // ξ_t must not depend on the representative p of τ(p)
    let mut representative: Vec<Option<usize>> = vec![None; analysis.t_states.len()];
    for p in 0..s.n_states() {
        let t = analysis.t_state_index(p);
        match representative[t] {
            None => representative[t] = Some(p),
            Some(q) => {
                if let Some(&a) = analysis
                    .topological
                    .iter()
                    .find(|&&a| s.is_actual(p, a) != s.is_actual(q, a))
                {
                    return Err(Error::Inconsistent(format!(
                        "states {} and {} share a topological state but differ on {}",
                        s.states()[q],
                        s.states()[p],
                        s.property_name(a)
                    )));
                }
            }
        }
    }
    let order_sets: Vec<StateSet> = analysis.topological.iter().map(|&a| s.kappa(a)).collect();
    let cartan: Vec<StateSet> = analysis
        .topological
        .iter()
        .map(|&a| analysis.cartan(s, a))
        .collect::<Result<_>>()?;
    let names: Vec<String> = analysis.t_states.iter().map(|&t| s.property_name(t)).collect();
    let report = verify_parts(&names, &order_sets, &cartan, None, s.names_of(&analysis.topological));
    if !report.passed() {
        return Err(Error::Inconsistent(format!("T-classical system: {report}")));
    }
    let out = FiniteSps::from_family(names, cartan)?;
    if let Some((i, j)) = out.closure_system().additivity_witness() {
        return Err(Error::Inconsistent(format!(
            "T-classical system is not additive: {} ∪ {}",
            out.property_name(i),
            out.property_name(j)
        )));
    }
    Ok(out)
}

/// `⋀ {b ∈ 𝒯 | a_i ≤ b for all i}`, the join inside `𝒯`. For non-empty
/// inputs it is cross-checked against the join in the full lattice.
pub fn tilde_join(s: &FiniteSps, members: &[usize]) -> Result<usize> {
    let topological = topological_properties(s);
    for &a in members {
        s.check_property(a)?;
        if topological.binary_search(&a).is_err() {
            return Err(Error::NotTopological(s.property_name(a)));
        }
    }
    let upper = topological
        .iter()
        .map(|&b| s.kappa(b))
        .filter(|kb| members.iter().all(|&a| s.kappa(a).is_subset(*kb)))
        .fold(s.all_states(), |acc, k| acc.intersection(k));
    let tilde = s.property_of(upper).expect("meets of properties are properties");
    if !members.is_empty() {
        let join = s.join_all(members.iter().copied());
        if join != tilde {
            return Err(Error::Inconsistent(format!(
                "join within 𝒯 is {} but the lattice join is {}",
                s.property_name(tilde),
                s.property_name(join)
            )));
        }
    }
    Ok(tilde)
}

/// `(Σ, L, ξ)` is T-classical when its closure is additive.
pub fn is_t_classical(s: &FiniteSps) -> bool {
    s.closure_system().is_additive()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop2Report {
    /// States violating `τ(p) = ⋁_{q ∈ κ(τ(p))} τ(q)`.
    pub unconditional_violations: Vec<usize>,
    /// Whether `𝒯 ⊆ C_op` for the supplied tests.
    pub condition_holds: bool,
    /// A member of `𝒯` outside `C_op`, when the condition fails.
    pub condition_witness: Option<usize>,
    /// States violating `τ(p) = ⋁ ω_op(q)`; only checked under the condition.
    pub identity1_violations: Vec<usize>,
    /// States violating `κ(τ(p)) = ⋃ κ(ω_op(q))`; only checked under the condition.
    pub identity2_violations: Vec<usize>,
}

impl Prop2Report {
    pub fn holds(&self) -> bool {
        self.unconditional_violations.is_empty()
            && self.identity1_violations.is_empty()
            && self.identity2_violations.is_empty()
    }
}

pub fn check_prop2(s: &FiniteSps, tests: &[TestPair]) -> Result<Prop2Report> {
    let top = TopologicalAnalysis::new(s);
    let op = OperationalClassicalAnalysis::new(s, tests)?;
    let below = |p: usize| s.kappa(top.tau_of[p]).iter().collect::<Vec<_>>();

    let unconditional_violations = (0..s.n_states())
        .filter(|&p| {
            let taus: Vec<usize> = below(p).into_iter().map(|q| top.tau_of[q]).collect();
            s.join_all(taus) != top.tau_of[p]
        })
        .collect();

    let condition_witness = top.topological.iter().copied().find(|&a| !op.contains(a));
    let condition_holds = condition_witness.is_none();
    let mut identity1_violations = Vec::new();
    let mut identity2_violations = Vec::new();
    if condition_holds {
        for p in 0..s.n_states() {
            let qs = below(p);
            let omegas: Vec<usize> = qs.iter().map(|&q| op.omega_op_of[q]).collect();
            if s.join_all(omegas.iter().copied()) != top.tau_of[p] {
                identity1_violations.push(p);
            }
            let union = omegas.iter().fold(StateSet::EMPTY, |acc, &w| acc.union(s.kappa(w)));
            if union != s.kappa(top.tau_of[p]) {
                identity2_violations.push(p);
            }
        }
    }
    Ok(Prop2Report {
        unconditional_violations,
        condition_holds,
        condition_witness,
        identity1_violations,
        identity2_violations,
    })
}

/// How a family of state sets that covers `Σ` sits on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyShape {
    /// Pairwise disjoint and covering.
    Partition,
    /// Covering, with two distinct members that meet.
    Overlapping(StateSet, StateSet),
    /// Some state lies in no member.
    NotCovering(usize),
}

pub fn family_shape(blocks: &[StateSet], full: StateSet) -> FamilyShape {
    let union = blocks.iter().fold(StateSet::EMPTY, |acc, b| acc.union(*b));
    if let Some(p) = full.difference(union).first() {
        return FamilyShape::NotCovering(p);
    }
    if is_partition(blocks, full) {
        return FamilyShape::Partition;
    }
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            if a != b && !a.is_disjoint(*b) {
                return FamilyShape::Overlapping(*a, *b);
            }
        }
    }
    FamilyShape::Partition
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    /// `{κ(τ(p))}` without repetitions.
    pub topological_blocks: Vec<StateSet>,
    pub topological_shape: FamilyShape,
    /// `{κ(ω_op(p))}` without repetitions.
    pub operational_blocks: Vec<StateSet>,
    pub operational_shape: FamilyShape,
}

impl CoverageReport {
    pub fn same_structure(&self) -> bool {
        self.topological_blocks == self.operational_blocks
    }
}

fn distinct_blocks(s: &FiniteSps, states: &[usize]) -> Vec<StateSet> {
    let mut props = states.to_vec();
    props.sort_unstable();
    props.dedup();
    props.into_iter().map(|a| s.kappa(a)).collect()
}

/// Compares the families `{κ(τ(p))}` and `{κ(ω_op(p))}`.
pub fn coverage_structure(s: &FiniteSps, tests: &[TestPair]) -> Result<CoverageReport> {
    let top = TopologicalAnalysis::new(s);
    let op = OperationalClassicalAnalysis::new(s, tests)?;
    let topological_blocks = distinct_blocks(s, &top.tau_of);
    let operational_blocks = distinct_blocks(s, &op.omega_op_of);
    let full = s.all_states();
    Ok(CoverageReport {
        topological_shape: family_shape(&topological_blocks, full),
        operational_shape: family_shape(&operational_blocks, full),
        topological_blocks,
        operational_blocks,
    })
}
