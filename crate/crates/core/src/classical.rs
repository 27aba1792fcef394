//! Classical and operationally classical properties, classical states, the
//! classical subsystem and the decomposition into totally non-classical
//! summands.

use crate::error::{Error, Result};
use crate::iso::{is_isomorphic, SpsIsomorphism};
use crate::order::{central_elements, Lattice, OrthoMap};
use crate::sps::{direct_sum, verify_parts, FiniteSps, TestPair};
use crate::stateset::{canonical_cmp, intersection_saturate, StateSet};
use crate::topological::topological_properties;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalAnalysis {
    /// `𝒞`: properties with `κ(a) ∪ κ(a') = Σ`, ascending.
    pub classical: Vec<usize>,
    /// `ω(p)` for every state.
    pub classical_state_of: Vec<usize>,
    /// `Ω`: the distinct classical states, ascending.
    pub omega: Vec<usize>,
    /// `{κ(ω) | ω ∈ Ω}`.
    pub partition: Vec<StateSet>,
    /// Classical states that are not themselves classical properties.
    pub non_classical_omegas: Vec<usize>,
}

impl ClassicalAnalysis {
    pub fn new(s: &FiniteSps, m: &OrthoMap) -> Result<Self> {
        m.validate(s)?;
        let full = s.all_states();
        let classical: Vec<usize> = (0..s.n_props())
            .filter(|&a| s.kappa(a).union(s.kappa(m.apply(a))) == full)
            .collect();
        let classical_state_of: Vec<usize> = (0..s.n_states()).map(|p| meet_of_actual(s, p, &classical)).collect();
        let mut omega = classical_state_of.clone();
        omega.sort_unstable();
        omega.dedup();
        let partition = omega.iter().map(|&w| s.kappa(w)).collect();
        let non_classical_omegas = omega
            .iter()
            .copied()
            .filter(|w| classical.binary_search(w).is_err())
            .collect();
        Ok(ClassicalAnalysis {
            classical,
            classical_state_of,
            omega,
            partition,
            non_classical_omegas,
        })
    }

    pub fn is_classical(&self, a: usize) -> bool {
        self.classical.binary_search(&a).is_ok()
    }

    /// Pairwise disjoint blocks covering all states.
    pub fn partition_is_valid(&self, n_states: usize) -> bool {
        is_partition(&self.partition, StateSet::full(n_states))
    }
}

pub(crate) fn is_partition(blocks: &[StateSet], full: StateSet) -> bool {
    let union = blocks.iter().fold(StateSet::EMPTY, |acc, b| acc.union(*b));
    let total: usize = blocks.iter().map(|b| b.len()).sum();
    union == full && total == full.len() && blocks.iter().all(|b| !b.is_empty())
}

/// Meet of the members of `family` actual at `p` (the top if none is).
pub(crate) fn meet_of_actual(s: &FiniteSps, p: usize, family: &[usize]) -> usize {
    let k = family
        .iter()
        .map(|&a| s.kappa(a))
        .filter(|k| k.contains(p))
        .fold(s.all_states(), |acc, k| acc.intersection(k));
    s.property_of(k).expect("meets of properties are properties")
}

pub fn classical_properties(s: &FiniteSps, m: &OrthoMap) -> Result<Vec<usize>> {
    Ok(ClassicalAnalysis::new(s, m)?.classical)
}

/// `ω(p) = ⋀ {a ∈ ξ(p) ∩ 𝒞}`.
pub fn classical_state(s: &FiniteSps, m: &OrthoMap, p: usize) -> Result<usize> {
    if p >= s.n_states() {
        return Err(Error::UnknownState(format!("#{p}")));
    }
    Ok(ClassicalAnalysis::new(s, m)?.classical_state_of[p])
}

pub fn is_totally_nonclassical(s: &FiniteSps, m: &OrthoMap) -> Result<bool> {
    let c = classical_properties(s, m)?;
    let trivial = if s.n_props() == 1 {
        vec![0]
    } else {
        vec![s.bottom(), s.top()]
    };
    Ok(c == trivial)
}

/// The system `(Ω, 𝒞, ξ_c)` with `ξ_c(ω) = {a ∈ 𝒞 | ω ≤ a}`. States are
/// named by the Cartan image of the classical state they stand for.
pub fn classical_subsystem(s: &FiniteSps, m: &OrthoMap) -> Result<FiniteSps> {
    let analysis = ClassicalAnalysis::new(s, m)?;
    let order_sets: Vec<StateSet> = analysis.classical.iter().map(|&a| s.kappa(a)).collect();
    let cartan: Vec<StateSet> = analysis
        .classical
        .iter()
        .map(|&a| {
            analysis
                .omega
                .iter()
                .enumerate()
                .filter(|(_, &w)| s.leq(w, a))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let state_names: Vec<String> = analysis.omega.iter().map(|&w| s.property_name(w)).collect();
    let report = verify_parts(
        &state_names,
        &order_sets,
        &cartan,
        None,
        s.names_of(&analysis.classical),
    );
    if !report.passed() {
        return Err(Error::Inconsistent(format!("classical subsystem: {report}")));
    }
    FiniteSps::from_family(state_names, cartan)
}

/// One block of the decomposition.
#[derive(Clone, Debug)]
pub struct Summand {
    /// The classical state `ω` (a property of the decomposed system).
    pub omega: usize,
    /// `Σ_ω = κ(ω)`.
    pub states: StateSet,
    /// `(Σ_ω, [0, ω], ξ|)`.
    pub system: FiniteSps,
    /// `a ↦ a' ∧ ω`, the relative orthocomplementation on `[0, ω]`.
    pub ortho: OrthoMap,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Isomorphism from the direct sum of the summands onto the input.
    pub witness: SpsIsomorphism,
}

/// Splits `s` into one totally non-classical summand per classical state and
/// certifies that their direct sum is isomorphic to `s`.
pub fn decompose(s: &FiniteSps, m: &OrthoMap, cap: usize) -> Result<Decomposition> {
    let analysis = ClassicalAnalysis::new(s, m)?;
    if !analysis.partition_is_valid(s.n_states()) {
        return Err(Error::PartitionFailure(
            analysis
                .partition
                .iter()
                .map(|b| s.set_name(*b))
                .collect::<Vec<_>>()
                .join(", "),
        ));
    }
    let mut summands = Vec::with_capacity(analysis.omega.len());
    for &w in &analysis.omega {
        let system = s.interval_below(w);
        // relabel states of Σ_ω to 0..|Σ_ω|
        let states = s.kappa(w);
        let positions: Vec<usize> = states.iter().collect();
        let mut relabel = vec![usize::MAX; s.n_states()];
        for (new, &old) in positions.iter().enumerate() {
            relabel[old] = new;
        }
        let image = system
            .props()
            .iter()
            .map(|k| {
                let outer = k.iter().fold(StateSet::EMPTY, |acc, i| acc.with(positions[i]));
                let a = s.property_of(outer).expect("interval members are properties");
                let rel = s.kappa(s.meet(m.apply(a), w)).map(&relabel);
                system
                    .property_of(rel)
                    .expect("relative complements stay in the interval")
            })
            .collect();
        let ortho = OrthoMap::new(image);
        ortho
            .validate(&system)
            .map_err(|e| Error::Inconsistent(format!("relative complement below {}: {e}", s.property_name(w))))?;
        if !is_totally_nonclassical(&system, &ortho)? {
            return Err(Error::Inconsistent(format!(
                "summand below {} has non-trivial classical properties",
                s.property_name(w)
            )));
        }
        summands.push(Summand {
            omega: w,
            states,
            system,
            ortho,
        });
    }
    let systems: Vec<FiniteSps> = summands.iter().map(|x| x.system.clone()).collect();
    let sum = direct_sum(&systems)?;
    let witness = is_isomorphic(&sum, s, cap)?
        .ok_or_else(|| Error::Inconsistent("direct sum of the summands is not isomorphic to the input".into()))?;
    Ok(Decomposition { summands, witness })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperationalClassicalAnalysis {
    /// `C_op`, ascending.
    pub cop: Vec<usize>,
    /// `ω_op(p)` for every state.
    pub omega_op_of: Vec<usize>,
    /// Tests whose eigen-properties cover every state.
    pub classical_tests: Vec<TestPair>,
}

impl OperationalClassicalAnalysis {
    pub fn new(s: &FiniteSps, tests: &[TestPair]) -> Result<Self> {
        for t in tests {
            s.check_property(t.yes)?;
            s.check_property(t.no)?;
        }
        let full = s.all_states();
        let classical_tests: Vec<TestPair> = tests
            .iter()
            .copied()
            .filter(|t| s.kappa(t.yes).union(s.kappa(t.no)) == full)
            .collect();
        let generators: Vec<StateSet> = classical_tests
            .iter()
            .flat_map(|t| [s.kappa(t.yes), s.kappa(t.no)])
            .collect();
        let closed = intersection_saturate(vec![full], &generators);
        let mut cop: Vec<usize> = closed
            .iter()
            .map(|k| s.property_of(*k).expect("meets of properties are properties"))
            .collect();
        cop.sort_unstable();
        let omega_op_of = (0..s.n_states()).map(|p| meet_of_actual(s, p, &cop)).collect();
        Ok(OperationalClassicalAnalysis {
            cop,
            omega_op_of,
            classical_tests,
        })
    }

    pub fn contains(&self, a: usize) -> bool {
        self.cop.binary_search(&a).is_ok()
    }
}

/// Meet-closure of the eigen-properties of tests that, in every state, are
/// certain either way, together with the top.
pub fn operational_classical_properties(s: &FiniteSps, tests: &[TestPair]) -> Result<Vec<usize>> {
    Ok(OperationalClassicalAnalysis::new(s, tests)?.cop)
}

/// `ω_op(p) = ⋀ {a ∈ ξ(p) ∩ C_op}`.
pub fn operational_classical_state(s: &FiniteSps, tests: &[TestPair], p: usize) -> Result<usize> {
    if p >= s.n_states() {
        return Err(Error::UnknownState(format!("#{p}")));
    }
    Ok(OperationalClassicalAnalysis::new(s, tests)?.omega_op_of[p])
}

/// The test pairs `(a, a')` for every property; on a Boolean system these
/// make `C_op` coincide with `𝒞`.
pub fn complement_tests(s: &FiniteSps, m: &OrthoMap) -> Vec<TestPair> {
    (0..s.n_props()).map(|a| TestPair { yes: a, no: m.apply(a) }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm3Report {
    pub classical: Vec<usize>,
    pub topological: Vec<usize>,
    pub central: Vec<usize>,
    pub atomistic: bool,
    pub classical_eq_topological: bool,
    /// `Some` only for atomistic lattices.
    pub central_eq_classical: Option<bool>,
    pub classical_subset_central: bool,
    pub violations: Vec<String>,
}

impl Thm3Report {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares classical, topological and (for atomistic lattices) central
/// properties under the given orthocomplementation.
pub fn check_thm3(s: &FiniteSps, m: &OrthoMap) -> Result<Thm3Report> {
    let classical = classical_properties(s, m)?;
    let topological = topological_properties(s);
    let central = central_elements(s, m)?;
    let atomistic = s.is_atomistic();
    let mut violations = Vec::new();

    let classical_eq_topological = classical == topological;
    if !classical_eq_topological {
        let diff: Vec<String> = symmetric_difference(&classical, &topological)
            .into_iter()
            .map(|a| s.property_name(a))
            .collect();
        violations.push(format!("classical and topological differ at {}", diff.join(", ")));
    }
    let classical_subset_central = classical.iter().all(|a| central.contains(a));
    if !classical_subset_central {
        violations.push("a classical property is not central".into());
    }
    let central_eq_classical = atomistic.then(|| central == classical);
    if central_eq_classical == Some(false) {
        violations.push("atomistic lattice: central elements differ from classical ones".into());
    }
    Ok(Thm3Report {
        classical,
        topological,
        central,
        atomistic,
        classical_eq_topological,
        central_eq_classical,
        classical_subset_central,
        violations,
    })
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a
        .iter()
        .filter(|x| !b.contains(x))
        .chain(b.iter().filter(|x| !a.contains(x)))
        .copied()
        .collect();
    out.sort_unstable();
    out
}

/// Sorts state sets canonically; handy for comparing partitions.
pub fn canonical_blocks(mut blocks: Vec<StateSet>) -> Vec<StateSet> {
    blocks.sort_by(canonical_cmp);
    blocks.dedup();
    blocks
}
