//! Model and evidence files.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncf::Ncf;
use crate::revision::EvidenceNcf;
use crate::space::{eval_formula, PartitionField, Proposition, Space, Variable};

pub const MODEL_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub version: u32,
    pub variables: Vec<VariableSpec>,
    pub ranking: Ranking,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub propositions: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableSpec {
    pub name: String,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Ranking {
    /// One row per world.
    Table(Vec<TableRow>),
    /// Per-variable rank maps, summed over the variables.
    Additive(BTreeMap<String, BTreeMap<String, u32>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    pub world: BTreeMap<String, String>,
    pub rank: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvidenceFile {
    pub version: u32,
    pub atoms: Vec<EvidenceAtom>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvidenceAtom {
    pub formula: String,
    pub rank: u32,
}

/// A loaded model: the NCF and its named propositions.
#[derive(Clone, Debug)]
pub struct Model {
    pub kappa: Ncf,
    /// Name, formula and its proposition.
    pub propositions: BTreeMap<String, (String, Proposition)>,
}

impl Model {
    pub fn space(&self) -> &Arc<Space> {
        self.kappa.space()
    }

    /// A named proposition, or else the formula's proposition.
    pub fn resolve(&self, formula: &str) -> Result<Proposition> {
        match self.propositions.get(formula) {
            Some((_, p)) => Ok(p.clone()),
            None => eval_formula(self.space(), formula),
        }
    }

    /// The same model with different ranks, as a table.
    pub fn with_kappa(&self, kappa: Ncf) -> Model {
        Model {
            kappa,
            propositions: self.propositions.clone(),
        }
    }

    pub fn to_file(&self) -> ModelFile {
        let space = self.space();
        let variables = space
            .variables()
            .iter()
            .map(|v| VariableSpec {
                name: v.name().to_string(),
                values: v.values().to_vec(),
            })
            .collect();
        let rows = (0..space.world_count())
            .map(|w| TableRow {
                world: space
                    .variables()
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v.name().to_string(), v.values()[space.value_of(w, i)].clone()))
                    .collect(),
                rank: self.kappa.world_rank(w),
            })
            .collect();
        ModelFile {
            version: MODEL_VERSION,
            variables,
            ranking: Ranking::Table(rows),
            propositions: self
                .propositions
                .iter()
                .map(|(k, (f, _))| (k.clone(), f.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("models serialize");
        s.push('\n');
        s
    }
}

fn invalid(message: impl Into<String>) -> Error {
    Error::InvalidModel(message.into())
}

impl ModelFile {
    pub fn parse(text: &str) -> std::result::Result<ModelFile, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid model file: {e}"))
    }

    pub fn load(&self, world_cap: usize) -> Result<Model> {
        if self.version != MODEL_VERSION {
            return Err(invalid(format!(
                "unsupported model version {}, expected {MODEL_VERSION}",
                self.version
            )));
        }
        let space = Space::build_with_cap(
            self.variables
                .iter()
                .map(|v| Variable::new(v.name.as_str(), v.values.iter().map(String::as_str)))
                .collect(),
            world_cap,
        )?;
        let ranks = match &self.ranking {
            Ranking::Table(rows) => table_ranks(&space, rows)?,
            Ranking::Additive(maps) => additive_ranks(&space, maps)?,
        };
        let kappa = Ncf::from_world_ranks(&space, ranks)?;
        let propositions = self
            .propositions
            .iter()
            .map(|(name, f)| Ok((name.clone(), (f.clone(), eval_formula(&space, f)?))))
            .collect::<Result<_>>()?;
        Ok(Model { kappa, propositions })
    }
}

fn world_index(space: &Space, world: &BTreeMap<String, String>) -> Result<usize> {
    let mut assignment = vec![usize::MAX; space.variables().len()];
    for (name, value) in world {
        let i = space.variable_index(name)?;
        assignment[i] = space.variables()[i]
            .value_index(value)
            .ok_or_else(|| Error::UnknownValue {
                variable: name.clone(),
                value: value.clone(),
            })?;
    }
    if let Some(i) = assignment.iter().position(|&a| a == usize::MAX) {
        return Err(invalid(format!(
            "table row does not assign variable `{}`",
            space.variables()[i].name()
        )));
    }
    Ok(space.world_of(&assignment).expect("complete assignment"))
}

fn table_ranks(space: &Space, rows: &[TableRow]) -> Result<Vec<u32>> {
    let mut ranks = vec![None; space.world_count()];
    for row in rows {
        let w = world_index(space, &row.world)?;
        if ranks[w].replace(row.rank).is_some() {
            return Err(invalid(format!("world {} is listed twice", space.describe_world(w))));
        }
    }
    ranks
        .iter()
        .enumerate()
        .map(|(w, r)| r.ok_or_else(|| invalid(format!("world {} has no rank", space.describe_world(w)))))
        .collect()
}

fn additive_ranks(space: &Space, maps: &BTreeMap<String, BTreeMap<String, u32>>) -> Result<Vec<u32>> {
    for name in maps.keys() {
        space.variable_index(name)?;
    }
    let mut tables = Vec::new();
    for v in space.variables() {
        let map = maps
            .get(v.name())
            .ok_or_else(|| invalid(format!("no ranks for variable `{}`", v.name())))?;
        for value in map.keys() {
            if v.value_index(value).is_none() {
                return Err(Error::UnknownValue {
                    variable: v.name().to_string(),
                    value: value.clone(),
                });
            }
        }
        let table = v
            .values()
            .iter()
            .map(|value| {
                map.get(value)
                    .copied()
                    .ok_or_else(|| invalid(format!("no rank for {}={value}", v.name())))
            })
            .collect::<Result<Vec<u32>>>()?;
        match table.iter().min() {
            Some(0) => {}
            Some(&m) => return Err(Error::NotNormalized(m)),
            None => unreachable!("domains are non-empty"),
        }
        tables.push(table);
    }
    Ok((0..space.world_count())
        .map(|w| {
            space
                .assignment(w)
                .iter()
                .zip(&tables)
                .map(|(&i, t)| t[i])
                .sum()
        })
        .collect())
}

impl EvidenceFile {
    pub fn parse(text: &str) -> std::result::Result<EvidenceFile, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid evidence file: {e}"))
    }

    /// The evidence NCF whose atoms are the formulas' propositions.
    pub fn load(&self, model: &Model) -> Result<EvidenceNcf> {
        if self.version != MODEL_VERSION {
            return Err(invalid(format!(
                "unsupported evidence version {}, expected {MODEL_VERSION}",
                self.version
            )));
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| model.resolve(&a.formula))
            .collect::<Result<Vec<_>>>()?;
        let field = PartitionField::from_atoms(model.space(), atoms.clone())?;
        let ranks = field
            .atoms()
            .iter()
            .map(|atom| {
                let i = atoms.iter().position(|a| a == atom).expect("same atoms");
                self.atoms[i].rank
            })
            .collect();
        EvidenceNcf::new(field, ranks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::DEFAULT_WORLD_CAP;

    const KAPPA1: &str = r#"{
        "version": 1,
        "variables": [{"name": "X", "values": ["0", "1"]}, {"name": "Y", "values": ["0", "1"]}],
        "ranking": {"table": [
            {"world": {"X": "0", "Y": "0"}, "rank": 0},
            {"world": {"X": "0", "Y": "1"}, "rank": 2},
            {"world": {"X": "1", "Y": "0"}, "rank": 1},
            {"world": {"X": "1", "Y": "1"}, "rank": 3}
        ]},
        "propositions": {"wet": "Y=1"}
    }"#;

    fn load(text: &str) -> Result<Model> {
        ModelFile::parse(text).unwrap().load(DEFAULT_WORLD_CAP)
    }

    #[test]
    fn table_and_additive_agree() {
        let m = load(KAPPA1).unwrap();
        assert_eq!(m.kappa.world_ranks(), &[0, 2, 1, 3]);
        assert_eq!(m.resolve("wet").unwrap(), m.resolve("Y=1").unwrap());
        let additive = r#"{"version": 1,
            "variables": [{"name": "X", "values": ["0", "1"]}, {"name": "Y", "values": ["0", "1"]}],
            "ranking": {"additive": {"X": {"0": 0, "1": 1}, "Y": {"0": 0, "1": 2}}}}"#;
        assert_eq!(load(additive).unwrap().kappa, m.kappa);
    }

    #[test]
    fn round_trip() {
        let m = load(KAPPA1).unwrap();
        let again = load(&m.to_json()).unwrap();
        assert_eq!(again.kappa, m.kappa);
        assert_eq!(again.to_json(), m.to_json());
    }

    #[test]
    fn rejects_bad_models() {
        assert!(ModelFile::parse(&KAPPA1.replace("\"version\": 1,", "\"version\": 1, \"extra\": 0,")).is_err());
        assert!(load(&KAPPA1.replace("\"version\": 1", "\"version\": 2")).is_err());
        let shifted = KAPPA1.replace("\"rank\": 0", "\"rank\": 1");
        assert_eq!(load(&shifted).unwrap_err(), Error::NotNormalized(1));
        let dup = KAPPA1.replace(r#""X": "0", "Y": "1""#, r#""X": "0", "Y": "0""#);
        assert!(matches!(load(&dup), Err(Error::InvalidModel(_))));
        let unknown = KAPPA1.replace(r#""X": "1", "Y": "1""#, r#""X": "1", "Y": "7""#);
        assert!(matches!(load(&unknown), Err(Error::UnknownValue { .. })));
        let additive = r#"{"version": 1, "variables": [{"name": "X", "values": ["0", "1"]}],
            "ranking": {"additive": {"X": {"0": 1, "1": 2}}}}"#;
        assert_eq!(load(additive).unwrap_err(), Error::NotNormalized(1));
        assert!(matches!(
            ModelFile::parse(KAPPA1).unwrap().load(2),
            Err(Error::SpaceTooLarge { .. })
        ));
    }

    #[test]
    fn evidence_files() {
        let m = load(KAPPA1).unwrap();
        let e = EvidenceFile::parse(r#"{"version": 1, "atoms": [{"formula": "X=1", "rank": 0}, {"formula": "X=0", "rank": 1}]}"#)
            .unwrap()
            .load(&m)
            .unwrap();
        assert_eq!(e.ranks(), &[1, 0]);
        let gap = EvidenceFile::parse(r#"{"version": 1, "atoms": [{"formula": "X=1", "rank": 0}]}"#).unwrap();
        assert!(matches!(gap.load(&m), Err(Error::InvalidPartition(_))));
    }
}
