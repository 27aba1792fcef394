//! Random generators and brute-force oracles shared by the integration
//! tests. The oracles work directly on families of state sets and do not
//! call the analysis code they are used to check.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spslab::order::OrthoMap;
use spslab::{FiniteClosureSystem, FiniteSps, Lattice, StateSet, TestPair};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> StateSet {
    StateSet::from_bits(rng.random::<u128>() & ((1u128 << n) - 1))
}

/// Intersection closure of a few random generators, with ∅ and Σ.
pub fn random_family(rng: &mut ChaCha8Rng, max_states: usize) -> (usize, Vec<StateSet>) {
    let n = rng.random_range(1..=max_states);
    let k = rng.random_range(0..=n + 2);
    let gens: Vec<StateSet> = (0..k).map(|_| random_subset(rng, n)).collect();
    let mut family = vec![StateSet::EMPTY, StateSet::full(n)];
    family.extend(gens.iter().filter(|g| !g.is_empty() && **g != StateSet::full(n)));
    family.dedup();
    // naive fixpoint, deliberately independent of the library's saturation
    loop {
        let mut grown = false;
        for i in 0..family.len() {
            for j in 0..family.len() {
                let m = family[i].intersection(family[j]);
                if !family.contains(&m) {
                    family.push(m);
                    grown = true;
                }
            }
        }
        if !grown {
            break;
        }
    }
    family.sort_by_key(|s| s.bits());
    family.dedup();
    (n, family)
}

pub fn random_sps(rng: &mut ChaCha8Rng, max_states: usize) -> FiniteSps {
    let (n, family) = random_family(rng, max_states);
    FiniteSps::from_family(names(n), family).expect("intersection-closed families are systems")
}

pub fn random_closure(rng: &mut ChaCha8Rng, max_states: usize) -> FiniteClosureSystem {
    let (n, family) = random_family(rng, max_states);
    FiniteClosureSystem::new(names(n), family).expect("intersection-closed")
}

pub fn is_intersection_closed(family: &[StateSet]) -> bool {
    family
        .iter()
        .all(|a| family.iter().all(|b| family.contains(&a.intersection(*b))))
}

/// `a` is topological iff `κ(a) ∪ κ(b)` is a Cartan image for every `b`.
pub fn topological_oracle(family: &[StateSet]) -> Vec<StateSet> {
    let mut out: Vec<StateSet> = family
        .iter()
        .copied()
        .filter(|a| family.iter().all(|b| family.contains(&a.union(*b))))
        .collect();
    out.sort_by_key(|s| s.bits());
    out
}

/// `κ(τ(p))`: intersection of the topological images containing `p`.
pub fn tau_oracle(n: usize, family: &[StateSet], p: usize) -> StateSet {
    topological_oracle(family)
        .into_iter()
        .filter(|t| t.contains(p))
        .fold(StateSet::full(n), |acc, t| acc.intersection(t))
}

/// Smallest member containing `set`.
pub fn close_oracle(n: usize, family: &[StateSet], set: StateSet) -> StateSet {
    family
        .iter()
        .filter(|c| set.is_subset(**c))
        .fold(StateSet::full(n), |acc, c| acc.intersection(*c))
}

/// Every orthocomplementation of a lattice, by backtracking over all
/// involutions. Only meant for tiny lattices.
pub fn brute_force_orthos<L: Lattice>(l: &L) -> Vec<Vec<usize>> {
    let n = l.size();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    fn go<L: Lattice>(l: &L, image: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(a) = image.iter().position(|&x| x == usize::MAX) else {
            if is_ortho(l, image) {
                out.push(image.clone());
            }
            return;
        };
        for b in 0..image.len() {
            if image[b] != usize::MAX {
                continue;
            }
            image[a] = b;
            image[b] = a;
            go(l, image, out);
            image[a] = usize::MAX;
            image[b] = usize::MAX;
        }
    }
    go(l, &mut image, &mut out);
    out
}

/// The three defining conditions, checked pointwise.
pub fn is_ortho<L: Lattice>(l: &L, image: &[usize]) -> bool {
    let n = l.size();
    (0..n).all(|a| image[image[a]] == a)
        && (0..n).all(|a| (0..n).all(|b| !l.leq(a, b) || l.leq(image[b], image[a])))
        && (0..n).all(|a| l.meet(a, image[a]) == l.bottom() && l.join(a, image[a]) == l.top())
}

pub fn ortho_images(orthos: &[OrthoMap]) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = orthos.iter().map(|m| m.image().to_vec()).collect();
    v.sort();
    v
}

/// Tests `(a, b)` with `κ(a) ∪ κ(b) = Σ` for every topological `a`, so
/// that `𝒯 ⊆ C_op`.
pub fn covering_battery(s: &FiniteSps) -> Vec<TestPair> {
    let full = s.all_states();
    topological_oracle(s.props())
        .into_iter()
        .map(|k| {
            let yes = s.property_of(k).unwrap();
            let no = s.property_of(s.close(full.difference(k))).unwrap();
            TestPair { yes, no }
        })
        .collect()
}

pub fn random_battery(rng: &mut ChaCha8Rng, s: &FiniteSps, len: usize) -> Vec<TestPair> {
    (0..len)
        .map(|_| TestPair {
            yes: rng.random_range(0..s.n_props()),
            no: rng.random_range(0..s.n_props()),
        })
        .collect()
}

/// Renames states by a random permutation; returns the new system and the
/// map old index -> new index.
pub fn shuffled(rng: &mut ChaCha8Rng, s: &FiniteSps) -> (FiniteSps, Vec<usize>) {
    let n = s.n_states();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut new_names = vec![String::new(); n];
    for (old, &new) in perm.iter().enumerate() {
        new_names[new] = s.states()[old].clone();
    }
    let family = s.props().iter().map(|k| k.map(&perm)).collect();
    (FiniteSps::from_family(new_names, family).unwrap(), perm)
}
