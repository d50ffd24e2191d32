use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use super::Time;
use crate::error::BoundsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub lower: Time,
    pub upper: Time,
    pub optimal: bool,
}

/// Best-known bounds per instance name, read from a `name,lb,ub,optimal` CSV.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BestKnown {
    entries: BTreeMap<String, Bounds>,
}

#[derive(Deserialize)]
struct Row {
    name: String,
    lb: Time,
    ub: Time,
    optimal: u8,
}

impl BestKnown {
    pub fn from_reader<R: Read>(reader: R) -> Result<BestKnown, BoundsError> {
        let mut csv = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let mut known = BestKnown::default();
        for row in csv.deserialize() {
            let Row { name, lb, ub, optimal } = row?;
            let optimal = match optimal {
                0 => false,
                1 => true,
                value => return Err(BoundsError::BadFlag { name, value }),
            };
            known.insert(
                name,
                Bounds {
                    lower: lb,
                    upper: ub,
                    optimal,
                },
            )?;
        }
        Ok(known)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<BestKnown, BoundsError> {
        BestKnown::from_reader(std::fs::File::open(path)?)
    }

    pub fn insert(&mut self, name: impl Into<String>, bounds: Bounds) -> Result<(), BoundsError> {
        let name = name.into();
        if bounds.lower > bounds.upper {
            return Err(BoundsError::Inverted {
                name,
                lb: bounds.lower,
                ub: bounds.upper,
            });
        }
        if bounds.optimal && bounds.lower != bounds.upper {
            return Err(BoundsError::OptimalMismatch {
                name,
                lb: bounds.lower,
                ub: bounds.upper,
            });
        }
        self.entries.insert(name, bounds);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Bounds> {
        self.entries.get(name)
    }

    /// Best-known upper bound, the denominator of relative error.
    pub fn upper(&self, name: &str) -> Option<Time> {
        self.entries.get(name).map(|b| b.upper)
    }

    /// The optimum, when it is known.
    pub fn optimum(&self, name: &str) -> Option<Time> {
        self.entries.get(name).filter(|b| b.optimal).map(|b| b.upper)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Bounds)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
