//! TOML documents for systems, lattices, topologies and model configs.
//!
//! Properties are written as the list of states in their Cartan image, so
//! `[]` is the bottom and the full state list the top. Reading a system
//! adjoins `[]` to `closed_sets`; the full set is not adjoined, so a
//! document that forgets it fails axiom 1.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::closure::FiniteTopology;
use crate::error::{Error, Result};
use crate::order::{FiniteLattice, Lattice, OrthoMap};
use crate::sphere::{d_grid, preset, SphereModelConfig, SpherePoint};
use crate::sps::{FiniteSps, SpsCandidate, TestPair};
use crate::stateset::{canonical_cmp, StateSet, MAX_STATES};

/// 1-based line and column of a byte offset.
pub fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn parse_toml<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |r| line_column(text, r.start));
        Error::Parse {
            line,
            column,
            message: e.message().trim().to_string(),
        }
    })
}

type NamedSet = Vec<String>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpsDocument {
    pub states: Vec<String>,
    pub closed_sets: Vec<NamedSet>,
    /// Pairs `[p, q]` meaning `p ≤ q`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preorder: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ortho: Option<Vec<[NamedSet; 2]>>,
    /// `[yes, no]` eigen-property pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tests: Option<Vec<[NamedSet; 2]>>,
}

/// A system document resolved against its states, before axiom checking.
#[derive(Clone, Debug)]
pub struct ParsedSps {
    pub candidate: SpsCandidate,
    pub ortho_pairs: Option<Vec<(StateSet, StateSet)>>,
    pub test_pairs: Vec<(StateSet, StateSet)>,
}

fn state_lookup(states: &[String]) -> Result<HashMap<&str, usize>> {
    if states.len() > MAX_STATES {
        return Err(Error::TooManyStates(states.len()));
    }
    let mut map = HashMap::with_capacity(states.len());
    for (i, s) in states.iter().enumerate() {
        if map.insert(s.as_str(), i).is_some() {
            return Err(Error::Document(format!("duplicate state name '{s}'")));
        }
    }
    Ok(map)
}

fn resolve(lookup: &HashMap<&str, usize>, names: &[String]) -> Result<StateSet> {
    names
        .iter()
        .map(|n| {
            lookup
                .get(n.as_str())
                .copied()
                .ok_or_else(|| Error::Document(format!("unknown state '{n}'")))
        })
        .collect()
}

impl SpsDocument {
    pub fn parse(text: &str) -> Result<Self> {
        parse_toml(text)
    }

    pub fn resolve(&self) -> Result<ParsedSps> {
        let lookup = state_lookup(&self.states)?;
        let mut family = vec![StateSet::EMPTY];
        for names in &self.closed_sets {
            let s = resolve(&lookup, names)?;
            if !family.contains(&s) {
                family.push(s);
            }
        }
        family.sort_by(canonical_cmp);
        let declared_preorder = match &self.preorder {
            None => None,
            Some(pairs) => Some(
                pairs
                    .iter()
                    .map(|[p, q]| {
                        let get = |n: &String| {
                            lookup
                                .get(n.as_str())
                                .copied()
                                .ok_or_else(|| Error::Document(format!("unknown state '{n}'")))
                        };
                        Ok((get(p)?, get(q)?))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let pairs = |list: &Option<Vec<[NamedSet; 2]>>| -> Result<Option<Vec<(StateSet, StateSet)>>> {
            list.as_ref()
                .map(|v| {
                    v.iter()
                        .map(|[a, b]| Ok((resolve(&lookup, a)?, resolve(&lookup, b)?)))
                        .collect()
                })
                .transpose()
        };
        Ok(ParsedSps {
            candidate: SpsCandidate {
                states: self.states.clone(),
                family,
                declared_preorder,
            },
            ortho_pairs: pairs(&self.ortho)?,
            test_pairs: pairs(&self.tests)?.unwrap_or_default(),
        })
    }

    /// Serializes a system, optionally with its ortho and tests.
    pub fn from_system(s: &FiniteSps, ortho: Option<&OrthoMap>, tests: &[TestPair]) -> Self {
        let named = |k: StateSet| -> NamedSet { k.iter().map(|i| s.states()[i].clone()).collect() };
        let ortho = ortho.map(|m| {
            (0..s.n_props())
                .filter(|&a| a <= m.apply(a))
                .map(|a| [named(s.kappa(a)), named(s.kappa(m.apply(a)))])
                .collect()
        });
        let tests = (!tests.is_empty()).then(|| {
            tests
                .iter()
                .map(|t| [named(s.kappa(t.yes)), named(s.kappa(t.no))])
                .collect()
        });
        SpsDocument {
            states: s.states().to_vec(),
            closed_sets: s.props().iter().skip(1).map(|&k| named(k)).collect(),
            preorder: None,
            ortho,
            tests,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("documents serialize")
    }
}

impl ParsedSps {
    /// Verifies the axioms and resolves the ortho and tests against the
    /// verified system.
    pub fn into_system(self) -> Result<(FiniteSps, Option<OrthoMap>, Vec<TestPair>)> {
        let s = FiniteSps::new(self.candidate)?;
        let ortho = self.ortho_pairs.map(|p| ortho_from_sets(&s, &p)).transpose()?;
        let tests = self
            .test_pairs
            .iter()
            .map(|&(y, n)| {
                Ok(TestPair {
                    yes: s.require_property(y)?,
                    no: s.require_property(n)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok((s, ortho, tests))
    }
}

/// Builds an ortho map from pairs of Cartan images. `∅ ↔ Σ` is implied when
/// neither is mentioned; every other property must appear in a pair.
pub fn ortho_from_sets(s: &FiniteSps, pairs: &[(StateSet, StateSet)]) -> Result<OrthoMap> {
    let n = s.n_props();
    let mut image: Vec<Option<usize>> = vec![None; n];
    let prop = |k: StateSet| {
        s.property_of(k)
            .ok_or_else(|| Error::InvalidOrtho(format!("{} is not a property", s.set_name(k))))
    };
    let assign = |a: usize, b: usize, image: &mut Vec<Option<usize>>| -> Result<()> {
        for (x, y) in [(a, b), (b, a)] {
            match image[x] {
                Some(z) if z != y => {
                    return Err(Error::InvalidOrtho(format!(
                        "{} is paired with both {} and {}",
                        s.property_name(x),
                        s.property_name(z),
                        s.property_name(y)
                    )))
                }
                _ => image[x] = Some(y),
            }
        }
        Ok(())
    };
    for &(x, y) in pairs {
        let (a, b) = (prop(x)?, prop(y)?);
        assign(a, b, &mut image)?;
    }
    let (bot, top) = (s.bottom(), s.top());
    if image[bot].is_none() && image[top].is_none() {
        assign(bot, top, &mut image)?;
    }
    image
        .iter()
        .enumerate()
        .map(|(a, m)| m.ok_or_else(|| Error::InvalidOrtho(format!("no complement given for {}", s.property_name(a)))))
        .collect::<Result<Vec<_>>>()
        .map(OrthoMap::new)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDocument {
    pub elements: Vec<String>,
    /// Covering pairs `[lower, upper]`.
    pub covers: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ortho: Option<Vec<[String; 2]>>,
}

impl LatticeDocument {
    pub fn parse(text: &str) -> Result<Self> {
        parse_toml(text)
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::Document(format!("unknown element '{name}'")))
    }

    pub fn build(&self) -> Result<(FiniteLattice, Option<OrthoMap>)> {
        let covers = self
            .covers
            .iter()
            .map(|[a, b]| Ok((self.index(a)?, self.index(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let l = FiniteLattice::from_covers(self.elements.clone(), &covers)?;
        let ortho = match &self.ortho {
            None => None,
            Some(pairs) => {
                let mut image: Vec<Option<usize>> = vec![None; l.size()];
                for [a, b] in pairs {
                    let (a, b) = (self.index(a)?, self.index(b)?);
                    image[a] = Some(b);
                    image[b] = Some(a);
                }
                if image[l.bottom()].is_none() && image[l.top()].is_none() {
                    image[l.bottom()] = Some(l.top());
                    image[l.top()] = Some(l.bottom());
                }
                let image = image
                    .iter()
                    .enumerate()
                    .map(|(a, m)| {
                        m.ok_or_else(|| Error::InvalidOrtho(format!("no complement given for {}", l.element_name(a))))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(OrthoMap::new(image))
            }
        };
        Ok((l, ortho))
    }

    pub fn from_lattice(l: &FiniteLattice, ortho: Option<&OrthoMap>) -> Self {
        let name = |a: usize| l.names()[a].clone();
        LatticeDocument {
            elements: l.names().to_vec(),
            covers: l
                .covering_pairs()
                .into_iter()
                .map(|(a, b)| [name(a), name(b)])
                .collect(),
            ortho: ortho.map(|m| {
                (0..l.size())
                    .filter(|&a| a <= m.apply(a))
                    .map(|a| [name(a), name(m.apply(a))])
                    .collect()
            }),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("documents serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyDocument {
    pub ground: Vec<String>,
    pub open_sets: Vec<NamedSet>,
}

impl TopologyDocument {
    pub fn parse(text: &str) -> Result<Self> {
        parse_toml(text)
    }

    /// `∅` and the ground set are adjoined.
    pub fn build(&self) -> Result<FiniteTopology> {
        let lookup = state_lookup(&self.ground)?;
        let mut open = vec![StateSet::EMPTY, StateSet::full(self.ground.len())];
        for names in &self.open_sets {
            open.push(resolve(&lookup, names)?);
        }
        FiniteTopology::new(self.ground.clone(), open)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    /// `icosahedron`, `cube`, `octahedron` or `fibonacci-N`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    /// Explicit sample points; must be antipodally closed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<Vec<[f64; 3]>>,
    /// Scale explicit points to unit length instead of rejecting them.
    #[serde(default)]
    pub normalize: bool,
    pub epsilon: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_grid: Option<Vec<f64>>,
    /// Test directions; the sample itself when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directions: Option<Vec<[f64; 3]>>,
}

fn points(raw: &[[f64; 3]], normalize: bool) -> Result<Vec<SpherePoint>> {
    raw.iter()
        .map(|&[x, y, z]| {
            if normalize {
                SpherePoint::normalized(x, y, z)
            } else {
                SpherePoint::new(x, y, z)
            }
        })
        .collect()
}

impl ModelDocument {
    pub fn parse(text: &str) -> Result<Self> {
        parse_toml(text)
    }

    pub fn sample(&self) -> Result<Vec<SpherePoint>> {
        match (&self.preset, &self.sample) {
            (Some(_), Some(_)) => Err(Error::Document("give either preset or sample, not both".into())),
            (None, None) => Err(Error::Document("missing preset or sample".into())),
            (Some(p), None) => preset(p).ok_or_else(|| Error::Document(format!("unknown preset '{p}'"))),
            (None, Some(raw)) => {
                if raw.is_empty() {
                    return Err(Error::EmptySample);
                }
                points(raw, self.normalize)
            }
        }
    }

    pub fn config(&self) -> Result<SphereModelConfig> {
        let sample = self.sample()?;
        let directions = match &self.directions {
            Some(raw) => points(raw, self.normalize)?,
            None => sample.clone(),
        };
        let grid = match (&self.d_grid, self.d_steps) {
            (Some(_), Some(_)) => return Err(Error::Document("give either d_grid or d_steps, not both".into())),
            (Some(g), None) => g.clone(),
            (None, steps) => d_grid(self.epsilon, steps.unwrap_or(0)),
        };
        let c = SphereModelConfig {
            sample,
            directions,
            epsilon: self.epsilon,
            d_grid: grid,
        };
        c.validate()?;
        Ok(c)
    }
}

/// Any of the documents above, told apart by their keys.
#[derive(Clone, Debug)]
pub enum Document {
    Sps(SpsDocument),
    Lattice(LatticeDocument),
    Topology(TopologyDocument),
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        let table: toml::Table = parse_toml(text)?;
        if table.contains_key("elements") {
            LatticeDocument::parse(text).map(Document::Lattice)
        } else if table.contains_key("ground") {
            TopologyDocument::parse(text).map(Document::Topology)
        } else if table.contains_key("states") {
            SpsDocument::parse(text).map(Document::Sps)
        } else {
            Err(Error::Document(
                "expected `states` (system), `elements` (lattice) or `ground` (topology)".into(),
            ))
        }
    }
}
