use super::{conjugation_closure, GroupElement, Reflection, ReflectionGroupData};
use crate::arith::{cyclotomic::euler_phi, CycNum, Matrix, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::path::Path;

const MAX_CONDUCTOR: u32 = 1000;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Entry {
    pub den: i64,
    pub num: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum MatrixData {
    Rows(Vec<Vec<Entry>>),
    Flat(Vec<Entry>),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GeneratorFile {
    pub name: String,
    pub rank: usize,
    pub conductor: u32,
    pub expected_reflection_count: usize,
    #[serde(default)]
    pub order: Option<u64>,
    pub generators: Vec<MatrixData>,
}

impl GeneratorFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn entry(&self, e: &Entry) -> Result<CycNum> {
        let phi = euler_phi(self.conductor);
        if e.num.len() != phi {
            return Err(Error::InvalidGeneratorData(format!(
                "{}: entry has {} coefficients, conductor {} needs {}",
                self.name,
                e.num.len(),
                self.conductor,
                phi
            )));
        }
        if e.den <= 0 {
            return Err(Error::InvalidGeneratorData(format!("{}: denominator must be positive", self.name)));
        }
        let den = BigInt::from(e.den);
        Ok(CycNum::from_coeffs(
            self.conductor,
            e.num
                .iter()
                .map(|&v| Rational::new(BigInt::from(v), den.clone()))
                .collect(),
        ))
    }

    pub fn matrices(&self) -> Result<Vec<GroupElement>> {
        if self.conductor == 0 || self.conductor > MAX_CONDUCTOR {
            return Err(Error::InvalidGeneratorData(format!(
                "{}: unknown conductor {}",
                self.name, self.conductor
            )));
        }
        let r = self.rank;
        self.generators
            .iter()
            .map(|g| {
                let flat: Vec<&Entry> = match g {
                    MatrixData::Rows(rows) => {
                        if rows.len() != r || rows.iter().any(|row| row.len() != r) {
                            return Err(Error::InvalidGeneratorData(format!("{}: generator is not {}x{}", self.name, r, r)));
                        }
                        rows.iter().flatten().collect()
                    }
                    MatrixData::Flat(v) => {
                        if v.len() != r * r {
                            return Err(Error::InvalidGeneratorData(format!("{}: generator is not {}x{}", self.name, r, r)));
                        }
                        v.iter().collect()
                    }
                };
                let data = flat.into_iter().map(|e| self.entry(e)).collect::<Result<Vec<_>>>()?;
                Matrix::new(r, r, data)
            })
            .collect()
    }
}

/// Reflections obtained by conjugation closure of the generators, certified
/// against the expected count.
pub fn build_from_generators(data: &GeneratorFile) -> Result<ReflectionGroupData> {
    let gens = data.matrices()?;
    if gens.is_empty() {
        return Err(Error::InvalidGeneratorData(format!("{}: no generators", data.name)));
    }
    for (i, g) in gens.iter().enumerate() {
        Reflection::from_matrix(g.clone()).map_err(|reason| Error::NotAReflection { index: i, reason })?;
    }
    let all = conjugation_closure(gens, data.expected_reflection_count)?;
    if all.len() != data.expected_reflection_count {
        return Err(Error::MetadataMismatch {
            expected: data.expected_reflection_count,
            found: all.len(),
        });
    }
    ReflectionGroupData::from_reflections(&data.name, data.rank, data.conductor, all, data.expected_reflection_count)
}

pub const SHIPPED: [u32; 9] = [12, 13, 22, 24, 27, 29, 31, 33, 34];

pub fn shipped_generator_json(k: u32) -> Option<&'static str> {
    Some(match k {
        12 => include_str!("../../data/G12.json"),
        13 => include_str!("../../data/G13.json"),
        22 => include_str!("../../data/G22.json"),
        24 => include_str!("../../data/G24.json"),
        27 => include_str!("../../data/G27.json"),
        29 => include_str!("../../data/G29.json"),
        31 => include_str!("../../data/G31.json"),
        33 => include_str!("../../data/G33.json"),
        34 => include_str!("../../data/G34.json"),
        _ => return None,
    })
}

/// Generator file for G<k>, from `dir` when given, otherwise the shipped copy.
pub fn load_generator_file(k: u32, dir: Option<&Path>) -> Result<GeneratorFile> {
    if let Some(d) = dir {
        let p = d.join(format!("G{}.json", k));
        if p.exists() {
            return GeneratorFile::from_json(&std::fs::read_to_string(p)?);
        }
    }
    let text = shipped_generator_json(k).ok_or(Error::NoGeneratorData(k))?;
    GeneratorFile::from_json(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_minus_one() {
        let f = GeneratorFile {
            name: "Z2".into(),
            rank: 1,
            conductor: 1,
            expected_reflection_count: 1,
            order: Some(2),
            generators: vec![MatrixData::Flat(vec![Entry { den: 1, num: vec![-1] }])],
        };
        let g = build_from_generators(&f).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.classes.len(), 1);
    }

    #[test]
    fn wrong_count_is_reported() {
        let mut f = GeneratorFile::from_json(shipped_generator_json(12).unwrap()).unwrap();
        f.expected_reflection_count = 11;
        assert!(matches!(build_from_generators(&f), Err(Error::MetadataMismatch { .. })));
    }

    #[test]
    fn non_reflection_generator() {
        let f = GeneratorFile {
            name: "bad".into(),
            rank: 1,
            conductor: 1,
            expected_reflection_count: 1,
            order: None,
            generators: vec![MatrixData::Flat(vec![Entry { den: 1, num: vec![2] }])],
        };
        assert!(matches!(build_from_generators(&f), Err(Error::NotAReflection { .. })));
    }

    #[test]
    fn bad_conductor() {
        let f = GeneratorFile {
            name: "bad".into(),
            rank: 1,
            conductor: 0,
            expected_reflection_count: 1,
            order: None,
            generators: vec![],
        };
        assert!(build_from_generators(&f).is_err());
    }

    #[test]
    fn g12_and_g24() {
        let g = build_from_generators(&load_generator_file(12, None).unwrap()).unwrap();
        assert_eq!(g.len(), 12);
        let g = build_from_generators(&load_generator_file(24, None).unwrap()).unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g.classes.len(), 1);
    }
}
