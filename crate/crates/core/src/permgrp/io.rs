//! JSON form of a group: `{"degree": n, "generators": [...]}` where each
//! generator is an image list or a cycle-notation string.

use serde::{Deserialize, Serialize};

use super::{GroupError, PermGroup};
use crate::perm::Permutation;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorJson {
    Images(Vec<usize>),
    Cycles(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<GeneratorJson>,
}

impl GroupJson {
    pub fn from_group(g: &PermGroup) -> Self {
        GroupJson {
            degree: g.degree(),
            generators: g
                .generators()
                .iter()
                .map(|x| GeneratorJson::Images(x.images().collect()))
                .collect(),
        }
    }

    /// Builds the group; the error names the offending generator.
    pub fn to_group(&self) -> Result<PermGroup, (usize, GroupError)> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            let perm = match g {
                GeneratorJson::Images(v) => {
                    if v.len() != self.degree {
                        return Err((
                            i,
                            crate::perm::PermError::DegreeMismatch {
                                expected: self.degree,
                                found: v.len(),
                            }
                            .into(),
                        ));
                    }
                    Permutation::from_images(v.clone())
                }
                GeneratorJson::Cycles(s) => Permutation::parse_cycles(self.degree, s),
            }
            .map_err(|e| (i, e.into()))?;
            gens.push(perm);
        }
        PermGroup::new(self.degree, gens).map_err(|e| (0, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_mixed_forms() {
        let text = r#"{"degree": 5, "generators": ["(0,1,2,3,4)", [0,4,3,2,1]]}"#;
        let parsed: GroupJson = serde_json::from_str(text).unwrap();
        let g = parsed.to_group().unwrap();
        assert_eq!(g.size(), 10);
        let back = serde_json::to_string(&GroupJson::from_group(&g)).unwrap();
        let again: GroupJson = serde_json::from_str(&back).unwrap();
        assert_eq!(again.to_group().unwrap().size(), 10);
    }

    #[test]
    fn reports_bad_generator_index() {
        let text = r#"{"degree": 3, "generators": [[0,1,2], [0,0,1]]}"#;
        let parsed: GroupJson = serde_json::from_str(text).unwrap();
        assert_eq!(parsed.to_group().unwrap_err().0, 1);
    }
}
