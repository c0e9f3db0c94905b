//! JSON documents for lattices, alphabets, automata, configurations,
//! projective sequences and decision witnesses.
//!
//! All numbers are integers. Emitted documents are pretty-printed with
//! fields in declaration order, so equal objects give identical bytes.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::alphabet::{Alphabet, AlphabetKind, LocalRule, Matrix, Polynomial, RuleBody, Term};
use crate::ca::{CellularAutomaton, PeriodicConfig};
use crate::error::{Error, Result};
use crate::lattice::{CosetTable, GroupElement, Lattice};
use crate::onedim::{DiamondWitness, EventuallyPeriodic, InjectivityWitness};
use crate::projlim::ProjectiveSequence;

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents contain only integers, strings and arrays")
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub dim: usize,
    /// Basis columns in canonical form.
    pub basis: Vec<Vec<i64>>,
}

impl LatticeDoc {
    pub fn from_lattice(l: &Lattice) -> Self {
        LatticeDoc {
            dim: l.dim(),
            basis: l.columns().to_vec(),
        }
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        Lattice::from_columns(self.dim, &self.basis)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlphabetDoc {
    Finite { size: u32 },
    Vector { q: u32, dim: u32 },
    Module { p: u32, e: u32, rank: u32 },
}

impl AlphabetDoc {
    pub fn from_alphabet(a: &Alphabet) -> Self {
        match *a.kind() {
            AlphabetKind::FiniteSet { size } => AlphabetDoc::Finite { size },
            AlphabetKind::VectorSpace { q, dim } => AlphabetDoc::Vector { q, dim },
            AlphabetKind::Module { p, e, rank } => AlphabetDoc::Module { p, e, rank },
        }
    }

    pub fn to_alphabet(&self) -> Result<Alphabet> {
        match *self {
            AlphabetDoc::Finite { size } => Alphabet::finite(size),
            AlphabetDoc::Vector { q, dim } => Alphabet::vector(q, dim),
            AlphabetDoc::Module { p, e, rank } => Alphabet::module(p, e, rank),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coef: u32,
    pub exp: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RuleDoc {
    /// Outputs over argument tuples, first argument most significant.
    Table { entries: Vec<u32> },
    /// One row-major matrix per memory element.
    Linear { matrices: Vec<Vec<Vec<u32>>> },
    /// One polynomial per target coordinate.
    Poly { coords: Vec<Vec<TermDoc>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaDoc {
    pub dim: usize,
    pub source: AlphabetDoc,
    pub target: AlphabetDoc,
    pub memory: Vec<Vec<i64>>,
    pub rule: RuleDoc,
}

impl CaDoc {
    pub fn from_ca(ca: &CellularAutomaton) -> Self {
        let rule = match ca.rule().body() {
            RuleBody::Table(entries) => RuleDoc::Table {
                entries: entries.clone(),
            },
            RuleBody::Linear(ms) => RuleDoc::Linear {
                matrices: ms.iter().map(Matrix::to_rows).collect(),
            },
            RuleBody::Polynomial(ps) => RuleDoc::Poly {
                coords: ps
                    .iter()
                    .map(|p| {
                        p.terms
                            .iter()
                            .map(|t| TermDoc {
                                coef: t.coef,
                                exp: t.exps.clone(),
                            })
                            .collect()
                    })
                    .collect(),
            },
        };
        CaDoc {
            dim: ca.dim(),
            source: AlphabetDoc::from_alphabet(ca.source()),
            target: AlphabetDoc::from_alphabet(ca.target()),
            memory: ca.memory().iter().map(|g| g.0.clone()).collect(),
            rule,
        }
    }

    pub fn to_ca(&self) -> Result<CellularAutomaton> {
        let source = self.source.to_alphabet()?;
        let target = self.target.to_alphabet()?;
        let arity = self.memory.len();
        let rule = match &self.rule {
            RuleDoc::Table { entries } => LocalRule::table(source, target, arity, entries.clone())?,
            RuleDoc::Linear { matrices } => {
                let ms = matrices
                    .iter()
                    .map(|rows| Matrix::from_rows(rows.clone()))
                    .collect::<Result<Vec<_>>>()?;
                if ms.len() != arity {
                    return Err(Error::ArityMismatch {
                        expected: arity,
                        found: ms.len(),
                    });
                }
                LocalRule::linear(source, target, ms)?
            }
            RuleDoc::Poly { coords } => {
                let polys = coords
                    .iter()
                    .map(|terms| Polynomial {
                        terms: terms
                            .iter()
                            .map(|t| Term {
                                coef: t.coef,
                                exps: t.exp.clone(),
                            })
                            .collect(),
                    })
                    .collect();
                LocalRule::polynomial(source, target, arity, polys)?
            }
        };
        let memory = self
            .memory
            .iter()
            .map(|g| {
                if g.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: g.len(),
                    });
                }
                Ok(GroupElement(g.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        CellularAutomaton::new(self.dim, memory, rule)
    }
}

/// Symbols by coset-representative index, serialized as a JSON object with
/// keys `"0"`, `"1"`, ... in numeric order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedValues(pub Vec<u32>);

impl Serialize for IndexedValues {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (i, v) in self.0.iter().enumerate() {
            map.serialize_entry(&i.to_string(), v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for IndexedValues {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: BTreeMap<String, u32> = BTreeMap::deserialize(d)?;
        let mut by_index = BTreeMap::new();
        for (k, v) in raw {
            let i: usize = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad index key {k:?}")))?;
            by_index.insert(i, v);
        }
        if by_index.keys().enumerate().any(|(pos, &i)| pos != i) {
            return Err(D::Error::custom("value keys must be 0..n-1"));
        }
        Ok(IndexedValues(by_index.into_values().collect()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    pub alphabet: AlphabetDoc,
    pub lattice: LatticeDoc,
    pub values: IndexedValues,
}

impl ConfigDoc {
    pub fn from_config(x: &PeriodicConfig) -> Self {
        ConfigDoc {
            alphabet: AlphabetDoc::from_alphabet(x.alphabet()),
            lattice: LatticeDoc::from_lattice(x.lattice()),
            values: IndexedValues(x.values().to_vec()),
        }
    }

    pub fn to_config(&self) -> Result<PeriodicConfig> {
        let cosets = CosetTable::new(self.lattice.to_lattice()?)?;
        if cosets.size() != self.values.0.len() {
            return Err(Error::Document(format!(
                "lattice has {} cosets but {} values were given",
                cosets.size(),
                self.values.0.len()
            )));
        }
        PeriodicConfig::from_raw(self.alphabet.to_alphabet()?, Arc::new(cosets), self.values.0.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDoc {
    pub sets: Vec<usize>,
    pub steps: Vec<Vec<u32>>,
}

impl SequenceDoc {
    pub fn from_sequence(s: &ProjectiveSequence) -> Self {
        SequenceDoc {
            sets: s.sizes().to_vec(),
            steps: s.steps().to_vec(),
        }
    }

    pub fn to_sequence(&self) -> Result<ProjectiveSequence> {
        ProjectiveSequence::new(self.sets.clone(), self.steps.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventuallyPeriodicDoc {
    pub left: Vec<u32>,
    pub middle: Vec<u32>,
    pub right: Vec<u32>,
}

impl EventuallyPeriodicDoc {
    pub fn from_config(x: &EventuallyPeriodic) -> Self {
        EventuallyPeriodicDoc {
            left: x.left.clone(),
            middle: x.middle.clone(),
            right: x.right.clone(),
        }
    }

    pub fn to_config(&self) -> Result<EventuallyPeriodic> {
        EventuallyPeriodic::new(self.left.clone(), self.middle.clone(), self.right.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum WitnessDoc {
    /// A target word with no preimage.
    Orphan {
        word: Vec<u32>,
    },
    /// Two configurations equal outside `window` with equal images.
    Diamond {
        left: EventuallyPeriodicDoc,
        right: EventuallyPeriodicDoc,
        window: [i64; 2],
    },
    /// Two distinct configurations with equal images.
    Collision {
        first: EventuallyPeriodicDoc,
        second: EventuallyPeriodicDoc,
    },
    Inverse {
        ca: CaDoc,
    },
}

impl WitnessDoc {
    pub fn diamond(d: &DiamondWitness) -> Self {
        WitnessDoc::Diamond {
            left: EventuallyPeriodicDoc::from_config(&d.first),
            right: EventuallyPeriodicDoc::from_config(&d.second),
            window: [d.lo, d.hi],
        }
    }

    pub fn collision(w: &InjectivityWitness) -> Self {
        WitnessDoc::Collision {
            first: EventuallyPeriodicDoc::from_config(&w.first),
            second: EventuallyPeriodicDoc::from_config(&w.second),
        }
    }
}
