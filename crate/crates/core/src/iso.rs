//! Isomorphism search between finite State Property Systems.
//!
//! An isomorphism is a state bijection `f` mapping the Cartan image family of
//! one system onto that of the other; it induces the lattice isomorphism
//! `κ(a) ↦ f(κ(a))`, commutes with actuality, and preserves the derived state
//! pre-order. States are first partitioned by an iterated colour refinement
//! (sizes of the properties they make actual, then the colours of their
//! co-members); the backtracking search only pairs states of equal colour and
//! prunes whenever the traces of the two families on the mapped states differ.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::sps::FiniteSps;
use crate::stateset::StateSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpsIsomorphism {
    /// `state_map[p]` is the image of state `p`.
    pub state_map: Vec<usize>,
    /// `property_map[a]` is the image of property `a`.
    pub property_map: Vec<usize>,
}

impl SpsIsomorphism {
    /// Checks the witness against both systems.
    pub fn is_valid(&self, a: &FiniteSps, b: &FiniteSps) -> bool {
        if self.state_map.len() != a.n_states() || self.property_map.len() != a.n_props() || a.n_props() != b.n_props()
        {
            return false;
        }
        let mut seen = vec![false; b.n_states()];
        for &q in &self.state_map {
            if q >= b.n_states() || std::mem::replace(&mut seen[q], true) {
                return false;
            }
        }
        (0..a.n_props()).all(|x| {
            let y = self.property_map[x];
            y < b.n_props() && a.kappa(x).map(&self.state_map) == b.kappa(y)
        })
    }
}

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

fn refine(s: &FiniteSps, colors: &[u64]) -> Vec<u64> {
    let prop_colors: Vec<u64> = s
        .props()
        .iter()
        .map(|k| {
            let mut cs: Vec<u64> = k.iter().map(|q| colors[q]).collect();
            cs.sort_unstable();
            hash_of(&cs)
        })
        .collect();
    (0..s.n_states())
        .map(|p| {
            let mut ps: Vec<u64> = s
                .props()
                .iter()
                .zip(&prop_colors)
                .filter(|(k, _)| k.contains(p))
                .map(|(_, c)| *c)
                .collect();
            ps.sort_unstable();
            hash_of(&(colors[p], ps))
        })
        .collect()
}

fn class_count(colors: &[u64]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

/// Searches for an isomorphism. Refuses systems with more than `cap` states.
pub fn is_isomorphic(a: &FiniteSps, b: &FiniteSps, cap: usize) -> Result<Option<SpsIsomorphism>> {
    let n = a.n_states();
    if n > cap || b.n_states() > cap {
        return Err(Error::SizeCapExceeded {
            size: n.max(b.n_states()),
            cap,
        });
    }
    if n != b.n_states() || a.n_props() != b.n_props() {
        return Ok(None);
    }
    let profile = |s: &FiniteSps| sorted(s.props().iter().map(|k| k.len() as u64).collect());
    if profile(a) != profile(b) {
        return Ok(None);
    }
    if a.props() == b.props() {
        let id: Vec<usize> = (0..n).collect();
        return Ok(Some(SpsIsomorphism {
            state_map: id,
            property_map: (0..a.n_props()).collect(),
        }));
    }

    let mut ca = vec![0u64; n];
    let mut cb = vec![0u64; n];
    loop {
        let na = refine(a, &ca);
        let nb = refine(b, &cb);
        if sorted(na.clone()) != sorted(nb.clone()) {
            return Ok(None);
        }
        let stable = class_count(&na) == class_count(&ca);
        ca = na;
        cb = nb;
        if stable {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let class_size = |c: u64| ca.iter().filter(|&&x| x == c).count();
    order.sort_by_key(|&p| (class_size(ca[p]), p));

    let mut search = Search {
        a,
        b,
        ca: &ca,
        cb: &cb,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    if !search.extend(0, StateSet::EMPTY, StateSet::EMPTY) {
        return Ok(None);
    }
    let state_map = search.map;
    let property_map = (0..a.n_props())
        .map(|x| {
            b.property_of(a.kappa(x).map(&state_map))
                .expect("complete trace match maps families onto each other")
        })
        .collect();
    Ok(Some(SpsIsomorphism {
        state_map,
        property_map,
    }))
}

struct Search<'a> {
    a: &'a FiniteSps,
    b: &'a FiniteSps,
    ca: &'a [u64],
    cb: &'a [u64],
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn traces_match(&self, dom: StateSet, img: StateSet) -> bool {
        let tb: HashSet<StateSet> = self.b.props().iter().map(|k| k.intersection(img)).collect();
        let mut ta: HashSet<StateSet> = HashSet::with_capacity(tb.len());
        for k in self.a.props() {
            let t = k.intersection(dom);
            if ta.insert(t) {
                let mapped = t.iter().fold(StateSet::EMPTY, |s, p| s.with(self.map[p]));
                if !tb.contains(&mapped) {
                    return false;
                }
            }
        }
        ta.len() == tb.len()
    }

    fn extend(&mut self, depth: usize, dom: StateSet, img: StateSet) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        for q in 0..self.b.n_states() {
            if self.used[q] || self.cb[q] != self.ca[p] {
                continue;
            }
            self.map[p] = q;
            self.used[q] = true;
            let (d, i) = (dom.with(p), img.with(q));
            if self.traces_match(d, i) && self.extend(depth + 1, d, i) {
                return true;
            }
            self.used[q] = false;
            self.map[p] = usize::MAX;
        }
        false
    }
}
