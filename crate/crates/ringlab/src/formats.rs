//! JSON file formats for algebras and subspaces.

use std::fs;
use std::path::Path;

use ringlab_core::{Algebra, FVector, PrimeField, Subspace};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Algebra(#[from] ringlab_core::Error),
    #[error("{0}")]
    Invalid(String),
}

/// An algebra given by its structure constants: `table[i][j]` holds the
/// coordinates of `e_i e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub id: String,
    pub p: u32,
    pub dim: usize,
    pub table: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
}

impl AlgebraFile {
    pub fn from_algebra(id: &str, alg: &Algebra) -> Self {
        let d = alg.dim();
        AlgebraFile {
            id: id.to_string(),
            p: alg.p(),
            dim: d,
            table: (0..d)
                .map(|i| (0..d).map(|j| alg.basis_product(i, j).to_vec()).collect())
                .collect(),
            unit: alg.unit().map(|u| u.coords().to_vec()),
            basis_names: alg.basis_names().map(<[String]>::to_vec),
        }
    }

    /// Validates shape and entries, then checks associativity.
    pub fn to_algebra(&self) -> Result<Algebra, FormatError> {
        let field = PrimeField::new(self.p)?;
        if self.table.len() != self.dim {
            return Err(FormatError::Invalid(format!(
                "table has {} rows, expected {}",
                self.table.len(),
                self.dim
            )));
        }
        let mut products = Vec::with_capacity(self.dim * self.dim);
        for (i, row) in self.table.iter().enumerate() {
            if row.len() != self.dim {
                return Err(FormatError::Invalid(format!(
                    "table row {i} has {} entries, expected {}",
                    row.len(),
                    self.dim
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != self.dim {
                    return Err(FormatError::Invalid(format!("product e{i}e{j} has length {}", v.len())));
                }
                if let Some(&bad) = v.iter().find(|&&x| x >= self.p) {
                    return Err(FormatError::Invalid(format!("entry {bad} in e{i}e{j} is not reduced mod {}", self.p)));
                }
                products.push(v.clone());
            }
        }
        Ok(Algebra::from_products(
            field,
            self.dim,
            &products,
            self.unit.clone(),
            self.basis_names.clone(),
        )?)
    }
}

/// A subspace as a list of generators; canonicalized on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceFile {
    pub algebra_id: String,
    pub generators: Vec<Vec<u32>>,
}

impl SubspaceFile {
    pub fn from_subspace(algebra_id: &str, s: &Subspace) -> Self {
        SubspaceFile {
            algebra_id: algebra_id.to_string(),
            generators: s.to_rows(),
        }
    }

    pub fn to_subspace(&self, alg: &Algebra) -> Result<Subspace, FormatError> {
        let gens = self
            .generators
            .iter()
            .map(|g| alg.element(g.clone()))
            .collect::<Result<Vec<FVector>, _>>()?;
        Ok(alg.span(&gens)?)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FormatError::Json {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FormatError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_algebra(path: &Path) -> Result<(String, Algebra), FormatError> {
    let file: AlgebraFile = read_json(path)?;
    let alg = file.to_algebra()?;
    Ok((file.id, alg))
}

pub fn read_subspace(path: &Path, alg: &Algebra) -> Result<Subspace, FormatError> {
    read_json::<SubspaceFile>(path)?.to_subspace(alg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_round_trip() {
        let alg = Algebra::matrix_algebra(2, PrimeField::new(3).unwrap());
        let file = AlgebraFile::from_algebra("m2-f3", &alg);
        let text = serde_json::to_string(&file).unwrap();
        let back: AlgebraFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_algebra().unwrap(), alg);
    }

    #[test]
    fn rejects_bad_tables() {
        let alg = Algebra::truncated_poly(2, PrimeField::new(3).unwrap());
        let mut file = AlgebraFile::from_algebra("t", &alg);
        file.unit = None;
        file.table = vec![vec![vec![0, 1], vec![1, 0]], vec![vec![0, 0], vec![0, 0]]];
        assert!(matches!(
            file.to_algebra(),
            Err(FormatError::Algebra(ringlab_core::Error::NotAssociative { .. }))
        ));
        let mut file = AlgebraFile::from_algebra("t", &alg);
        file.table[0][0] = vec![3, 0];
        assert!(matches!(file.to_algebra(), Err(FormatError::Invalid(_))));
        file.p = 4;
        assert!(matches!(file.to_algebra(), Err(FormatError::Algebra(_))));
    }
}
