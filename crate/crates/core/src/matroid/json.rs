//! JSON interchange for matroid descriptions.
//!
//! Every document is an object tagged by `"type"`; the top level carries a
//! schema version field `"v"` (currently 1). Rank tables list every subset
//! as a sorted label array so files are self-describing.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{bits, Matroid, MatroidDesc, MatroidError, RankOracle};
use crate::gf::FieldMatrix;
use crate::spike::SpikeDesc;

pub(crate) const SCHEMA_VERSION: u64 = 1;

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
enum MatroidJson {
    Linear {
        matrix: FieldMatrix,
        labels: Vec<String>,
    },
    Uniform {
        r: u32,
        n: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Spike {
        n: usize,
        dependent_transversals: Vec<String>,
    },
    RankTable {
        labels: Vec<String>,
        ranks: Vec<RankEntry>,
    },
    Minor {
        base: Box<MatroidJson>,
        contract: Vec<String>,
        delete: Vec<String>,
    },
    Dual {
        base: Box<MatroidJson>,
    },
}

#[derive(Serialize, Deserialize)]
struct RankEntry {
    set: Vec<String>,
    rank: u32,
}

fn to_json(m: &Matroid) -> MatroidJson {
    match m.desc() {
        MatroidDesc::Linear { matrix } => MatroidJson::Linear {
            matrix: matrix.clone(),
            labels: m.ground().labels().to_vec(),
        },
        MatroidDesc::Uniform { rank } => MatroidJson::Uniform {
            r: *rank,
            n: m.ground().size(),
            labels: Some(m.ground().labels().to_vec()),
        },
        MatroidDesc::Spike(spike) => MatroidJson::Spike {
            n: spike.legs(),
            dependent_transversals: spike.transversal_strings(),
        },
        MatroidDesc::RankTable { ranks } => MatroidJson::RankTable {
            labels: m.ground().labels().to_vec(),
            ranks: ranks
                .iter()
                .enumerate()
                .map(|(mask, &r)| RankEntry {
                    set: bits(mask as u64).map(|i| m.ground().label(i).to_string()).collect(),
                    rank: r as u32,
                })
                .collect(),
        },
        MatroidDesc::Minor { base, contract, delete } => MatroidJson::Minor {
            base: Box::new(to_json(base)),
            contract: base.ground().labels_of(*contract),
            delete: base.ground().labels_of(*delete),
        },
        MatroidDesc::Dual { base } => MatroidJson::Dual { base: Box::new(to_json(base)) },
    }
}

fn from_json(j: MatroidJson) -> Result<Matroid, MatroidError> {
    match j {
        MatroidJson::Linear { matrix, labels } => Matroid::linear(matrix, labels),
        MatroidJson::Uniform { r, n, labels } => {
            let labels = labels.unwrap_or_else(|| (1..=n).map(|i| format!("e{i}")).collect());
            if labels.len() != n {
                return Err(MatroidError::InvalidDescription(format!(
                    "uniform: {} labels for n = {n}",
                    labels.len()
                )));
            }
            Matroid::uniform_labeled(r, labels)
        }
        MatroidJson::Spike { n, dependent_transversals } => {
            let spike = SpikeDesc::from_transversal_strings(n, &dependent_transversals)
                .map_err(|e| MatroidError::InvalidDescription(e.to_string()))?;
            Ok(Matroid::spike(spike))
        }
        MatroidJson::RankTable { labels, ranks } => {
            let ground = super::GroundSet::new(labels.clone())?;
            let size = 1usize << ground.size();
            if ranks.len() != size {
                return Err(MatroidError::InvalidDescription(format!(
                    "rank table lists {} subsets; expected {size}",
                    ranks.len()
                )));
            }
            let mut table = vec![u8::MAX; size];
            for entry in &ranks {
                let mask = ground.mask_of(&entry.set)? as usize;
                if table[mask] != u8::MAX {
                    return Err(MatroidError::InvalidDescription(format!(
                        "subset {:?} listed twice",
                        entry.set
                    )));
                }
                table[mask] = entry.rank as u8;
            }
            Matroid::from_rank_table(labels, table)
        }
        MatroidJson::Minor { base, contract, delete } => {
            from_json(*base)?.minor(&contract, &delete)
        }
        MatroidJson::Dual { base } => Ok(from_json(*base)?.dual()),
    }
}

/// Serialize a matroid as a versioned JSON value.
pub fn matroid_to_json_value(m: &Matroid) -> Value {
    let mut v = serde_json::to_value(to_json(m)).expect("matroid serialization");
    v.as_object_mut().unwrap().insert("v".into(), SCHEMA_VERSION.into());
    v
}

/// Parse a matroid from a JSON value, accepting a missing version field.
pub fn matroid_from_json_value(value: Value) -> Result<Matroid, MatroidError> {
    if let Some(v) = value.get("v") {
        if v.as_u64() != Some(SCHEMA_VERSION) {
            return Err(MatroidError::InvalidDescription(format!(
                "unsupported schema version {v}"
            )));
        }
    }
    let j: MatroidJson = serde_json::from_value(value)
        .map_err(|e| MatroidError::InvalidDescription(e.to_string()))?;
    from_json(j)
}

pub fn matroid_from_json_str(s: &str) -> Result<Matroid, MatroidError> {
    let value: Value = serde_json::from_str(s)
        .map_err(|e| MatroidError::InvalidDescription(e.to_string()))?;
    matroid_from_json_value(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::matroid_equal;

    #[test]
    fn uniform_round_trip() {
        let u24 = Matroid::uniform(2, 4);
        let v = matroid_to_json_value(&u24);
        assert_eq!(v["v"], 1);
        assert_eq!(v["type"], "uniform");
        let back = matroid_from_json_value(v).unwrap();
        assert_eq!(matroid_equal(&u24, &back).unwrap(), Ok(()));
    }

    #[test]
    fn rank_table_round_trip() {
        let u24 = Matroid::uniform(2, 4);
        let table = Matroid::from_rank_table(
            u24.ground().labels().to_vec(),
            u24.rank_table().unwrap(),
        )
        .unwrap();
        let v = matroid_to_json_value(&table);
        let back = matroid_from_json_value(v).unwrap();
        assert_eq!(matroid_equal(&table, &back).unwrap(), Ok(()));
    }

    #[test]
    fn minor_of_dual_round_trip() {
        let m = Matroid::uniform(2, 5).dual().minor(&["e1"], &["e2"]).unwrap();
        let v = matroid_to_json_value(&m);
        let back = matroid_from_json_value(v).unwrap();
        assert_eq!(matroid_equal(&m, &back).unwrap(), Ok(()));
    }

    #[test]
    fn rejects_unknown_version() {
        let v = serde_json::json!({"v": 99, "type": "uniform", "r": 1, "n": 2});
        assert!(matroid_from_json_value(v).is_err());
    }

    #[test]
    fn parses_without_version() {
        let v = serde_json::json!({"type": "uniform", "r": 1, "n": 2});
        assert!(matroid_from_json_value(v).is_ok());
    }
}
