//! JSON group description files.
//!
//! ```json
//! {"kind":"zmod","moduli":[2,4],"generators":[[1,0],[0,1]],"order":8}
//! {"kind":"perm","degree":3,"generators":[[1,2,0],[1,0,2]]}
//! {"kind":"matmod","prime":5,"dim":2,"generators":[[[1,1],[0,1]]]}
//! ```
//!
//! A `zmod` file with exactly two moduli `[c, d]` may carry `"action": v`, in
//! which case elements `[u, k]` stand for `x^u y^k` in `Z/c ⋉ Z/d` with
//! `x⁻¹ y x = y^v`. Unknown fields are rejected.

use serde::{Deserialize, Serialize};

use super::{Ambient, Element, Group};
use crate::arith::{gcd, pow_mod};
use crate::order::{factorize, FactoredInteger};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupFile {
    Zmod {
        moduli: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        action: Option<u64>,
        generators: Vec<Vec<u64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order_factors: Option<Vec<(u64, u32)>>,
    },
    Perm {
        degree: usize,
        generators: Vec<Vec<u64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order_factors: Option<Vec<(u64, u32)>>,
    },
    Matmod {
        prime: u64,
        dim: usize,
        generators: Vec<Vec<Vec<u64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order_factors: Option<Vec<(u64, u32)>>,
    },
}

fn declared_order(
    order: Option<u64>,
    factors: &Option<Vec<(u64, u32)>>,
) -> Result<Option<FactoredInteger>> {
    let from_factors = factors
        .as_deref()
        .map(FactoredInteger::from_factors)
        .transpose()?;
    match (order, from_factors) {
        (Some(n), Some(f)) if f.value() != n => Err(Error::InvalidInput(format!(
            "order {n} disagrees with order_factors {f}"
        ))),
        (_, Some(f)) => Ok(Some(f)),
        (Some(n), None) => Ok(Some(factorize(n)?)),
        (None, None) => Ok(None),
    }
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group files serialize")
    }

    /// Build the group handle, validating every generator.
    pub fn into_group(self) -> Result<Group> {
        let (ambient, gens, order) = match self {
            GroupFile::Zmod {
                moduli,
                action,
                generators,
                order,
                order_factors,
            } => {
                if moduli.iter().any(|&m| m == 0) {
                    return Err(Error::InvalidInput("moduli must be positive".into()));
                }
                let ambient = match action {
                    None => Ambient::Zmod { moduli },
                    Some(v) => {
                        let [c, d] = moduli[..] else {
                            return Err(Error::InvalidInput(
                                "action needs exactly two moduli".into(),
                            ));
                        };
                        if gcd(v, d) != 1 || pow_mod(v, c, d) != 1 % d {
                            return Err(Error::InvalidInput(format!(
                                "{v} does not act with order dividing {c} mod {d}"
                            )));
                        }
                        Ambient::Twisted {
                            c,
                            d,
                            action: v % d,
                        }
                    }
                };
                let gens = generators.iter().map(|g| Element::from_slice(g)).collect();
                (ambient, gens, declared_order(order, &order_factors)?)
            }
            GroupFile::Perm {
                degree,
                generators,
                order,
                order_factors,
            } => {
                let gens = generators.iter().map(|g| Element::from_slice(g)).collect();
                (
                    Ambient::Perm { degree },
                    gens,
                    declared_order(order, &order_factors)?,
                )
            }
            GroupFile::Matmod {
                prime,
                dim,
                generators,
                order,
                order_factors,
            } => {
                if !crate::arith::is_prime(prime) {
                    return Err(Error::InvalidInput(format!("{prime} is not prime")));
                }
                let mut gens = Vec::new();
                for m in &generators {
                    if m.len() != dim || m.iter().any(|row| row.len() != dim) {
                        return Err(Error::InvalidInput(format!("matrix is not {dim}x{dim}")));
                    }
                    gens.push(Element::from_slice(&m.concat()));
                }
                (
                    Ambient::MatMod { prime, dim },
                    gens,
                    declared_order(order, &order_factors)?,
                )
            }
        };
        let gens: Vec<Element> = gens;
        if gens.is_empty() {
            return Err(Error::InvalidInput("generator list is empty".into()));
        }
        let group = Group::new(ambient, gens)?;
        Ok(match order {
            Some(n) => group.with_order(n),
            None => group,
        })
    }

    /// Describe a group on one of the file backends.
    pub fn from_group(group: &Group) -> Result<Self> {
        let order = group.known_order().map(|n| n.factors().to_vec());
        let gens = group.generators().iter().map(|g| g.values().to_vec());
        Ok(match group.ambient() {
            Ambient::Zmod { moduli } => GroupFile::Zmod {
                moduli: moduli.clone(),
                action: None,
                generators: gens.collect(),
                order: None,
                order_factors: order,
            },
            Ambient::Twisted { c, d, action } => GroupFile::Zmod {
                moduli: vec![*c, *d],
                action: Some(*action),
                generators: gens.collect(),
                order: None,
                order_factors: order,
            },
            Ambient::Perm { degree } => GroupFile::Perm {
                degree: *degree,
                generators: gens.collect(),
                order: None,
                order_factors: order,
            },
            Ambient::MatMod { prime, dim } => GroupFile::Matmod {
                prime: *prime,
                dim: *dim,
                generators: gens
                    .map(|g| g.chunks(*dim).map(<[u64]>::to_vec).collect())
                    .collect(),
                order: None,
                order_factors: order,
            },
            Ambient::Units { .. } => {
                return Err(Error::InvalidInput(
                    "unit groups have no file representation".into(),
                ))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let z = GroupFile::parse(
            r#"{"kind":"zmod","moduli":[2,4],"generators":[[1,0],[0,1]],"order":8}"#,
        )
        .unwrap()
        .into_group()
        .unwrap();
        assert_eq!(z.known_order().unwrap().value(), 8);
        let p = GroupFile::parse(r#"{"kind":"perm","degree":3,"generators":[[1,2,0]]}"#)
            .unwrap()
            .into_group()
            .unwrap();
        assert!(p.known_order().is_none());
        let m = GroupFile::parse(
            r#"{"kind":"matmod","prime":5,"dim":2,"generators":[[[1,1],[0,1]]],"order_factors":[[5,1]]}"#,
        )
        .unwrap()
        .into_group()
        .unwrap();
        assert_eq!(m.generators()[0].values(), &[1, 1, 0, 1]);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(
            GroupFile::parse(r#"{"kind":"zmod","moduli":[2],"generators":[[1]],"colour":1}"#)
                .is_err()
        );
        assert!(
            GroupFile::parse(r#"{"kind":"zmod","moduli":[2],"generators":[]}"#)
                .unwrap()
                .into_group()
                .is_err()
        );
        assert!(GroupFile::parse(
            r#"{"kind":"zmod","moduli":[2],"generators":[[1]],"order":2,"order_factors":[[3,1]]}"#
        )
        .unwrap()
        .into_group()
        .is_err());
        assert!(GroupFile::parse(
            r#"{"kind":"zmod","moduli":[3,7],"action":3,"generators":[[1,0]]}"#
        )
        .unwrap()
        .into_group()
        .is_err());
        assert!(
            GroupFile::parse(r#"{"kind":"matmod","prime":4,"dim":1,"generators":[[[1]]]}"#)
                .unwrap()
                .into_group()
                .is_err()
        );
    }

    #[test]
    fn round_trips() {
        let text = r#"{"kind":"zmod","moduli":[3,7],"action":2,"generators":[[1,0],[0,1]],"order_factors":[[3,1],[7,1]]}"#;
        let f = GroupFile::parse(text).unwrap();
        let g = f.clone().into_group().unwrap();
        assert_eq!(GroupFile::from_group(&g).unwrap(), f);
        assert_eq!(GroupFile::parse(&f.to_json()).unwrap(), f);
    }
}
