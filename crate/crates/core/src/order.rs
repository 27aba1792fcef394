//! Finite bounded lattices, structural predicates and orthocomplementations.
//!
//! Lattice elements are plain indices `0..size()`. Anything that can answer
//! order, meet and join queries on such indices implements [`Lattice`]; the
//! generic algorithms in this module (ortho verification and search, centre,
//! atomisticity, distributivity) work on every implementor, including the
//! property lattice of a [`crate::FiniteSps`].

use crate::error::{Error, Result};

/// Warshall's algorithm, in place.
#[allow(clippy::needless_range_loop)]
pub(crate) fn transitive_closure(rel: &mut [Vec<bool>]) {
    let n = rel.len();
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
}

/// Default cap on the number of lattice elements for exhaustive searches.
pub const DEFAULT_SIZE_CAP: usize = 64;

pub trait Lattice {
    fn size(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;
    fn meet(&self, a: usize, b: usize) -> usize;
    fn join(&self, a: usize, b: usize) -> usize;
    fn bottom(&self) -> usize;
    fn top(&self) -> usize;
    fn element_name(&self, a: usize) -> String;

    /// Meet of a finite family; the empty meet is the top.
    fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize
    where
        Self: Sized,
    {
        items.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Join of a finite family; the empty join is the bottom.
    fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize
    where
        Self: Sized,
    {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    /// Elements covering the bottom.
    fn atoms(&self) -> Vec<usize> {
        let bot = self.bottom();
        (0..self.size())
            .filter(|&a| a != bot)
            .filter(|&a| !(0..self.size()).any(|x| x != bot && x != a && self.leq(x, a)))
            .collect()
    }

    /// Elements covered by the top.
    fn coatoms(&self) -> Vec<usize> {
        let top = self.top();
        (0..self.size())
            .filter(|&a| a != top)
            .filter(|&a| !(0..self.size()).any(|x| x != top && x != a && self.leq(a, x)))
            .collect()
    }

    /// Every element is the join of the atoms below it.
    fn is_atomistic(&self) -> bool
    where
        Self: Sized,
    {
        let atoms = self.atoms();
        (0..self.size()).all(|a| {
            let below = atoms.iter().copied().filter(|&t| self.leq(t, a));
            self.join_all(below) == a
        })
    }

    /// First triple `(a, b, c)` with `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)`.
    fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                for c in b + 1..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// All `c` with `a ∧ c = 0` and `a ∨ c = 1`.
    fn complements(&self, a: usize) -> Vec<usize> {
        (0..self.size())
            .filter(|&c| self.meet(a, c) == self.bottom() && self.join(a, c) == self.top())
            .collect()
    }

    /// Distributive and complemented.
    fn is_boolean(&self) -> bool {
        self.distributivity_witness().is_none() && (0..self.size()).all(|a| !self.complements(a).is_empty())
    }
}

/// A validated finite lattice with precomputed order, meet and join tables.
#[derive(Clone, Debug)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Validates `leq` (a full `n × n` relation) as a lattice order and tabulates
    /// meets and joins.
    pub fn new(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotAPartialOrder("no elements".into()));
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::NotAPartialOrder(format!("relation must be {n} x {n}")));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::NotAPartialOrder(format!("not reflexive at {}", names[a])));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if leq[a][b] && leq[b][a] {
                    return Err(Error::NotAPartialOrder(format!(
                        "not antisymmetric: {} and {}",
                        names[a], names[b]
                    )));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !leq[a][b] {
                    continue;
                }
                for c in 0..n {
                    if leq[b][c] && !leq[a][c] {
                        return Err(Error::NotAPartialOrder(format!(
                            "not transitive: {} <= {} <= {}",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }

        let flat: Vec<bool> = leq.into_iter().flatten().collect();
        let down: Vec<usize> = (0..n).map(|z| (0..n).filter(|&x| flat[x * n + z]).count()).collect();
        let up: Vec<usize> = (0..n).map(|z| (0..n).filter(|&x| flat[z * n + x]).count()).collect();

        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let lower: Vec<usize> = (0..n).filter(|&z| flat[z * n + a] && flat[z * n + b]).collect();
                let glb = lower.iter().copied().find(|&z| down[z] == lower.len());
                let Some(glb) = glb else {
                    return Err(Error::NotALattice {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        missing: "greatest lower bound",
                    });
                };
                let upper: Vec<usize> = (0..n).filter(|&z| flat[a * n + z] && flat[b * n + z]).collect();
                let lub = upper.iter().copied().find(|&z| up[z] == upper.len());
                let Some(lub) = lub else {
                    return Err(Error::NotALattice {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        missing: "least upper bound",
                    });
                };
                meet[a * n + b] = glb as u32;
                meet[b * n + a] = glb as u32;
                join[a * n + b] = lub as u32;
                join[b * n + a] = lub as u32;
            }
        }
        let bottom = (0..n).find(|&z| up[z] == n).expect("finite lattice has a bottom");
        let top = (0..n).find(|&z| down[z] == n).expect("finite lattice has a top");
        Ok(FiniteLattice {
            names,
            leq: flat,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// Builds the order as the reflexive-transitive closure of `covers`
    /// (pairs `(lower, upper)`).
    pub fn from_covers(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::NotAPartialOrder(format!(
                    "covering pair ({a}, {b}) out of range"
                )));
            }
            leq[a][b] = true;
        }
        transitive_closure(&mut leq);
        FiniteLattice::new(names, leq)
    }

    /// Tabulates any [`Lattice`] implementor, refusing more than `cap` elements.
    pub fn from_lattice<L: Lattice>(l: &L, cap: usize) -> Result<Self> {
        let n = l.size();
        if n > cap {
            return Err(Error::SizeCapExceeded { size: n, cap });
        }
        let mut leq = vec![false; n * n];
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = l.leq(a, b);
                if b >= a {
                    let m = l.meet(a, b) as u32;
                    let j = l.join(a, b) as u32;
                    meet[a * n + b] = m;
                    meet[b * n + a] = m;
                    join[a * n + b] = j;
                    join[b * n + a] = j;
                }
            }
        }
        Ok(FiniteLattice {
            names: (0..n).map(|a| l.element_name(a)).collect(),
            leq,
            meet,
            join,
            bottom: l.bottom(),
            top: l.top(),
        })
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        FiniteLattice::new(names, leq).expect("chains are lattices")
    }

    /// The power set of a `k`-set; element `i` is the subset with bitmask `i`.
    pub fn boolean(k: usize) -> Self {
        let n = 1usize << k;
        let names = (0..n).map(|i| format!("{i:0k$b}")).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a & !b == 0).collect()).collect();
        FiniteLattice::new(names, leq).expect("power sets are lattices")
    }

    /// `MOn`: bottom, top and `2n` pairwise incomparable atoms `x1, x1*, …`.
    /// Element 0 is the bottom, the last element the top, and atoms `2i+1`,
    /// `2i+2` are mutual complements in the standard orthocomplementation.
    pub fn mo(n: usize) -> Self {
        let size = 2 * n + 2;
        let mut names = vec!["0".to_string()];
        for i in 1..=n {
            names.push(format!("x{i}"));
            names.push(format!("x{i}*"));
        }
        names.push("1".into());
        let top = size - 1;
        let leq = (0..size)
            .map(|a| (0..size).map(|b| a == b || a == 0 || b == top).collect())
            .collect();
        FiniteLattice::new(names, leq).expect("MOn is a lattice")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Covering pairs `(lower, upper)` in lexicographic order.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) && !(0..n).any(|z| z != a && z != b && self.leq(a, z) && self.leq(z, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

impl Lattice for FiniteLattice {
    fn size(&self) -> usize {
        self.names.len()
    }

    #[inline]
    fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size() + b]
    }

    #[inline]
    fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b] as usize
    }

    #[inline]
    fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b] as usize
    }

    fn bottom(&self) -> usize {
        self.bottom
    }

    fn top(&self) -> usize {
        self.top
    }

    fn element_name(&self, a: usize) -> String {
        self.names[a].clone()
    }
}

/// A candidate orthocomplementation: `image[a]` is `a'`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrthoMap(Vec<usize>);

impl OrthoMap {
    pub fn new(image: Vec<usize>) -> Self {
        OrthoMap(image)
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.0[a]
    }

    /// Checks the four orthocomplementation axioms and turns a failure into
    /// [`Error::InvalidOrtho`].
    pub fn validate<L: Lattice>(&self, l: &L) -> Result<()> {
        let verdict = verify_ortho(l, self);
        if verdict.passed() {
            Ok(())
        } else {
            Err(Error::InvalidOrtho(verdict.describe(l)))
        }
    }
}

/// Per-axiom outcome of [`verify_ortho`]; each field holds a witness on failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrthoVerdict {
    /// The map is not a total map on the lattice's elements.
    pub malformed: Option<String>,
    /// `a` with `(a')' ≠ a`.
    pub involution: Option<usize>,
    /// `(a, b)` with `a ≤ b` but not `b' ≤ a'`.
    pub order_reversing: Option<(usize, usize)>,
    /// `a` with `a ∧ a' ≠ 0`.
    pub meet_zero: Option<usize>,
    /// `a` with `a ∨ a' ≠ 1`.
    pub join_one: Option<usize>,
}

impl OrthoVerdict {
    pub fn passed(&self) -> bool {
        self.malformed.is_none()
            && self.involution.is_none()
            && self.order_reversing.is_none()
            && self.meet_zero.is_none()
            && self.join_one.is_none()
    }

    pub fn describe<L: Lattice>(&self, l: &L) -> String {
        let mut parts = Vec::new();
        if let Some(m) = &self.malformed {
            parts.push(m.clone());
        }
        if let Some(a) = self.involution {
            parts.push(format!("involution fails at {}", l.element_name(a)));
        }
        if let Some((a, b)) = self.order_reversing {
            parts.push(format!(
                "order reversal fails at {} <= {}",
                l.element_name(a),
                l.element_name(b)
            ));
        }
        if let Some(a) = self.meet_zero {
            parts.push(format!("a ∧ a' ≠ 0 at {}", l.element_name(a)));
        }
        if let Some(a) = self.join_one {
            parts.push(format!("a ∨ a' ≠ 1 at {}", l.element_name(a)));
        }
        if parts.is_empty() {
            "all axioms hold".into()
        } else {
            parts.join("; ")
        }
    }
}

pub fn verify_ortho<L: Lattice>(l: &L, m: &OrthoMap) -> OrthoVerdict {
    let n = l.size();
    let mut v = OrthoVerdict::default();
    if m.0.len() != n {
        v.malformed = Some(format!("map has {} entries for {} elements", m.0.len(), n));
        return v;
    }
    if let Some(a) = m.0.iter().position(|&x| x >= n) {
        v.malformed = Some(format!("image of element {a} out of range"));
        return v;
    }
    v.involution = (0..n).find(|&a| m.apply(m.apply(a)) != a);
    'outer: for a in 0..n {
        for b in 0..n {
            if l.leq(a, b) && !l.leq(m.apply(b), m.apply(a)) {
                v.order_reversing = Some((a, b));
                break 'outer;
            }
        }
    }
    v.meet_zero = (0..n).find(|&a| l.meet(a, m.apply(a)) != l.bottom());
    v.join_one = (0..n).find(|&a| l.join(a, m.apply(a)) != l.top());
    v
}

/// Every orthocomplementation of `l`, in lexicographic order of image vectors.
///
/// Backtracking assigns complement pairs. Candidates for `a'` are restricted
/// to lattice complements `c` of `a` whose down-set has the size of `a`'s
/// up-set (and vice versa), since an orthocomplementation is an
/// order-anti-automorphism; in particular atoms only pair with coatoms.
/// Every partial assignment is kept consistent with order reversal.
pub fn enumerate_orthos<L: Lattice>(l: &L, cap: usize) -> Result<Vec<OrthoMap>> {
    let t = FiniteLattice::from_lattice(l, cap)?;
    let n = t.size();
    let down: Vec<usize> = (0..n).map(|z| (0..n).filter(|&x| t.leq(x, z)).count()).collect();
    let up: Vec<usize> = (0..n).map(|z| (0..n).filter(|&x| t.leq(z, x)).count()).collect();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&c| down[a] == up[c] && up[a] == down[c] && t.meet(a, c) == t.bottom && t.join(a, c) == t.top)
                .collect()
        })
        .collect();

    let mut search = OrthoSearch {
        lat: &t,
        candidates,
        image: vec![None; n],
        found: Vec::new(),
    };
    if search.candidates.iter().all(|c| !c.is_empty()) {
        search.run();
    }
    let mut found = search.found;
    found.sort();
    Ok(found)
}

struct OrthoSearch<'a> {
    lat: &'a FiniteLattice,
    candidates: Vec<Vec<usize>>,
    image: Vec<Option<usize>>,
    found: Vec<OrthoMap>,
}

impl OrthoSearch<'_> {
    fn consistent(&self, a: usize, c: usize) -> bool {
        let l = self.lat;
        if a == c {
            // only possible in the one-element lattice
            return l.size() == 1;
        }
        if self.image[c].is_some() {
            return false;
        }
        self.image.iter().enumerate().all(|(x, img)| match *img {
            None => true,
            Some(xi) => {
                (!l.leq(x, a) || l.leq(c, xi))
                    && (!l.leq(a, x) || l.leq(xi, c))
                    && (!l.leq(x, c) || l.leq(a, xi))
                    && (!l.leq(c, x) || l.leq(xi, a))
            }
        })
    }

    fn run(&mut self) {
        // most constrained unassigned element first
        let mut best: Option<(usize, Vec<usize>)> = None;
        for a in 0..self.lat.size() {
            if self.image[a].is_some() {
                continue;
            }
            let feasible: Vec<usize> = self.candidates[a]
                .iter()
                .copied()
                .filter(|&c| self.consistent(a, c))
                .collect();
            if feasible.is_empty() {
                return;
            }
            if best.as_ref().is_none_or(|(_, f)| feasible.len() < f.len()) {
                best = Some((a, feasible));
            }
        }
        let Some((a, feasible)) = best else {
            let map = OrthoMap(self.image.iter().map(|x| x.unwrap()).collect());
            debug_assert!(verify_ortho(self.lat, &map).passed());
            self.found.push(map);
            return;
        };
        for c in feasible {
            self.image[a] = Some(c);
            self.image[c] = Some(a);
            self.run();
            self.image[a] = None;
            self.image[c] = None;
        }
    }
}

/// Elements `a` with `b = (b ∧ a) ∨ (b ∧ a')` for every `b`.
pub fn central_elements<L: Lattice>(l: &L, m: &OrthoMap) -> Result<Vec<usize>> {
    m.validate(l)?;
    let n = l.size();
    Ok((0..n)
        .filter(|&a| {
            let ac = m.apply(a);
            (0..n).all(|b| l.join(l.meet(b, a), l.meet(b, ac)) == b)
        })
        .collect())
}
