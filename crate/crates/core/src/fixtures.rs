//! Small named systems used by tests, examples and the CLI.

use crate::closure::{FiniteClosureSystem, FiniteTopology};
use crate::error::Result;
use crate::order::OrthoMap;
use crate::sps::FiniteSps;
use crate::stateset::StateSet;

fn names<S: AsRef<str>>(xs: &[S]) -> Vec<String> {
    xs.iter().map(|s| s.as_ref().to_string()).collect()
}

fn set(xs: &[usize]) -> StateSet {
    StateSet::from_indices(xs.iter().copied())
}

/// Builds an orthocomplementation from pairs of Cartan images; `0 ↔ 1` is
/// added automatically. Panics if a set is not a property (fixture bug).
pub fn ortho_from_pairs(s: &FiniteSps, pairs: &[(StateSet, StateSet)]) -> OrthoMap {
    let mut image: Vec<usize> = (0..s.n_props()).collect();
    image[0] = s.n_props() - 1;
    image[s.n_props() - 1] = 0;
    for &(x, y) in pairs {
        let a = s.property_of(x).expect("fixture set is a property");
        let b = s.property_of(y).expect("fixture set is a property");
        image[a] = b;
        image[b] = a;
    }
    OrthoMap::new(image)
}

/// Set complement, for systems whose family is closed under complements.
pub fn complement_ortho(s: &FiniteSps) -> Option<OrthoMap> {
    let n = s.n_states();
    s.props()
        .iter()
        .map(|k| s.property_of(k.complement(n)))
        .collect::<Option<Vec<_>>>()
        .map(OrthoMap::new)
}

/// One state, properties `{0, 1}`.
pub fn trivial() -> (FiniteSps, OrthoMap) {
    let s = FiniteSps::from_family(names(&["*"]), vec![StateSet::EMPTY, set(&[0])]).unwrap();
    (s, OrthoMap::new(vec![1, 0]))
}

/// `Σ = {p, q}` with every subset a property.
pub fn two_point_discrete() -> (FiniteSps, OrthoMap) {
    boolean(&["p", "q"])
}

/// The power set of the named states, with set complement.
pub fn boolean<S: AsRef<str>>(states: &[S]) -> (FiniteSps, OrthoMap) {
    let n = states.len();
    let family = (0u128..1 << n).map(StateSet::from_bits).collect();
    let s = FiniteSps::from_family(names(states), family).unwrap();
    let m = complement_ortho(&s).unwrap();
    (s, m)
}

/// `Σ = {p, q}` with properties `{∅, {q}, Σ}`: the closed sets of the
/// Sierpiński space.
pub fn sierpinski() -> FiniteSps {
    FiniteSps::from_family(names(&["p", "q"]), vec![StateSet::EMPTY, set(&[1]), set(&[0, 1])]).unwrap()
}

/// `MO_n`: `2n` states `x1, x1*, …`, each singleton a property, with
/// `{x_i} ↔ {x_i*}`.
pub fn mo(n: usize) -> (FiniteSps, OrthoMap) {
    let states: Vec<String> = (1..=n).flat_map(|i| [format!("x{i}"), format!("x{i}*")]).collect();
    let mut family = vec![StateSet::EMPTY, StateSet::full(2 * n)];
    family.extend((0..2 * n).map(StateSet::singleton));
    let s = FiniteSps::from_family(states, family).unwrap();
    let pairs: Vec<(StateSet, StateSet)> = (0..n)
        .map(|i| (StateSet::singleton(2 * i), StateSet::singleton(2 * i + 1)))
        .collect();
    let m = ortho_from_pairs(&s, &pairs);
    (s, m)
}

/// The hexagon `0 < a < b < 1`, `0 < b' < a' < 1`: orthocomplemented but
/// not atomistic.
pub fn hexagon() -> (FiniteSps, OrthoMap) {
    let s = FiniteSps::from_family(
        names(&["s1", "s2", "s3", "s4"]),
        vec![
            StateSet::EMPTY,
            set(&[0]),
            set(&[0, 1]),
            set(&[2]),
            set(&[2, 3]),
            StateSet::full(4),
        ],
    )
    .unwrap();
    let m = ortho_from_pairs(&s, &[(set(&[0]), set(&[2, 3])), (set(&[0, 1]), set(&[2]))]);
    (s, m)
}

/// Lines of the projective plane over the two-element field on points `1..=7`.
pub const FANO_LINES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 6, 7],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 7],
    [3, 5, 6],
];

/// Points as states, lines as generators: the subspace lattice of a
/// three-dimensional space over the two-element field.
pub fn fano_closure() -> FiniteClosureSystem {
    let ground: Vec<String> = (1..=7).map(|i| i.to_string()).collect();
    let lines: Vec<StateSet> = FANO_LINES.iter().map(|l| l.iter().map(|&p| p - 1).collect()).collect();
    FiniteClosureSystem::saturate(ground, &lines).unwrap()
}

pub fn fano() -> FiniteSps {
    FiniteSps::from_closure(&fano_closure())
}

/// `{∅, {x}, {y, z}, X}` on `{x, y, z}`.
pub fn partition_topology() -> FiniteTopology {
    FiniteTopology::new(
        names(&["x", "y", "z"]),
        vec![StateSet::EMPTY, set(&[0]), set(&[1, 2]), StateSet::full(3)],
    )
    .unwrap()
}

/// `{∅, {p}, X}` on `{p, q}`.
pub fn sierpinski_topology() -> FiniteTopology {
    FiniteTopology::new(names(&["p", "q"]), vec![StateSet::EMPTY, set(&[0]), StateSet::full(2)]).unwrap()
}

/// The SPS whose properties are the closed sets of `t`.
pub fn from_topology(t: &FiniteTopology) -> FiniteSps {
    FiniteSps::from_closure(&t.closed_sets())
}

/// Looks a fixture up by name; the orthocomplementation is present when the
/// fixture has one.
pub fn by_name(name: &str) -> Result<Option<(FiniteSps, Option<OrthoMap>)>> {
    let with = |(s, m): (FiniteSps, OrthoMap)| Some((s, Some(m)));
    Ok(match name {
        "trivial" => with(trivial()),
        "discrete2" => with(two_point_discrete()),
        "sierpinski" => Some((sierpinski(), None)),
        "mo2" => with(mo(2)),
        "mo3" => with(mo(3)),
        "hexagon" => with(hexagon()),
        "fano" => Some((fano(), None)),
        "partition" => {
            let s = from_topology(&partition_topology());
            let m = complement_ortho(&s);
            Some((s, m))
        }
        _ => None,
    })
}
