//! JSON wire format. Rationals travel as canonical `"p/q"` strings (plain
//! integers are also accepted on input); matrices are arrays of rows and
//! structure tensors are nested `[i][j][k]` arrays.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cohomology::{total_bidegrees, CohomologyResult};
use crate::config::EngineConfig;
use crate::deformations::{DeformationEquivalence, TruncatedDeformation};
use crate::degree1::Degree1Cochain;
use crate::dialgebra::{Dialgebra, StructureTensor};
use crate::error::{Error, Result};
use crate::extensions::SingularExtension;
use crate::linalg::{format_rational, parse_rational, Matrix, Rational};
use crate::oriented::{OrientedDialgebra, OrientedGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Q, E> {
                parse_rational(v).map(Q).map_err(|e| match e {
                    Error::Parse(m) => E::custom(m),
                    e => E::custom(e),
                })
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
        }
        d.deserialize_any(V)
    }
}

pub type MatrixJson = Vec<Vec<Q>>;
pub type TensorJson = Vec<Vec<Vec<Q>>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DialgebraJson {
    pub dim: usize,
    pub left: TensorJson,
    pub right: TensorJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub epsilon: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleJson {
    pub alpha: Vec<MatrixJson>,
    pub beta_left: TensorJson,
    pub beta_right: TensorJson,
}

/// The middle term; its group is the bundle's group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionJson {
    pub dialgebra: DialgebraJson,
    pub action: Vec<MatrixJson>,
    pub inclusion: MatrixJson,
    pub projection: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationJson {
    pub order: usize,
    pub ml: Vec<TensorJson>,
    pub mr: Vec<TensorJson>,
    pub phi: Vec<Vec<MatrixJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivalenceJson {
    pub order: usize,
    pub psi: Vec<MatrixJson>,
}

/// Everything a command may need; each command reads the sections it uses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dialgebra: Option<DialgebraJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<MatrixJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub section: Option<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deformation: Option<DeformationJson>,
    /// Second deformation for equivalence checks: `Ψ` maps `deformation` to `target`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<DeformationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<EquivalenceJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<EngineConfig>,
}

fn missing(section: &str) -> Error {
    Error::Parse(format!("bundle has no \"{section}\" section"))
}

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    m.to_rows().into_iter().map(|r| r.into_iter().map(Q).collect()).collect()
}

/// Empty row lists are `0×0`.
pub fn matrix_from_json(m: &MatrixJson) -> Result<Matrix> {
    Matrix::from_rows(m.iter().map(|r| r.iter().map(|q| q.0.clone()).collect()).collect())
}

pub fn tensor_to_json(t: &StructureTensor) -> TensorJson {
    t.to_nested()
        .into_iter()
        .map(|a| a.into_iter().map(|b| b.into_iter().map(Q).collect()).collect())
        .collect()
}

pub fn tensor_from_json(t: &TensorJson) -> Result<StructureTensor> {
    StructureTensor::from_nested(
        t.iter()
            .map(|a| a.iter().map(|b| b.iter().map(|q| q.0.clone()).collect()).collect())
            .collect(),
    )
}

fn tensor_with_dim(t: &TensorJson, dim: usize, what: &str) -> Result<StructureTensor> {
    let t = tensor_from_json(t)?;
    if t.dim() != dim {
        return Err(Error::ShapeMismatch(format!("{what} has dimension {}, expected {dim}", t.dim())));
    }
    Ok(t)
}

pub fn dialgebra_to_json(d: &Dialgebra) -> DialgebraJson {
    DialgebraJson {
        dim: d.dim(),
        left: tensor_to_json(d.left()),
        right: tensor_to_json(d.right()),
    }
}

/// Does not check the axioms, so that failures can be reported.
pub fn dialgebra_from_json(d: &DialgebraJson) -> Result<Dialgebra> {
    Dialgebra::new_unchecked(
        tensor_with_dim(&d.left, d.dim, "left product")?,
        tensor_with_dim(&d.right, d.dim, "right product")?,
    )
}

pub fn group_to_json(g: &OrientedGroup) -> GroupJson {
    GroupJson {
        order: g.order(),
        table: g.table().to_vec(),
        epsilon: g.epsilons().to_vec(),
    }
}

pub fn group_from_json(g: &GroupJson) -> Result<OrientedGroup> {
    if g.table.len() != g.order || g.epsilon.len() != g.order {
        return Err(Error::ShapeMismatch(format!("group of order {} has mismatched table or epsilon", g.order)));
    }
    OrientedGroup::new(g.table.clone(), g.epsilon.clone())
}

pub fn cocycle_to_json(c: &Degree1Cochain) -> CocycleJson {
    CocycleJson {
        alpha: c.alpha.iter().map(matrix_to_json).collect(),
        beta_left: tensor_to_json(&c.beta_left),
        beta_right: tensor_to_json(&c.beta_right),
    }
}

pub fn cocycle_from_json(c: &CocycleJson) -> Result<Degree1Cochain> {
    Ok(Degree1Cochain {
        alpha: c.alpha.iter().map(matrix_from_json).collect::<Result<_>>()?,
        beta_left: tensor_from_json(&c.beta_left)?,
        beta_right: tensor_from_json(&c.beta_right)?,
    })
}

pub fn extension_to_json(e: &SingularExtension) -> ExtensionJson {
    ExtensionJson {
        dialgebra: dialgebra_to_json(e.total.dialgebra()),
        action: e.total.actions().iter().map(matrix_to_json).collect(),
        inclusion: matrix_to_json(&e.inclusion),
        projection: matrix_to_json(&e.projection),
    }
}

pub fn extension_from_json(e: &ExtensionJson, group: &OrientedGroup) -> Result<SingularExtension> {
    let action = e.action.iter().map(matrix_from_json).collect::<Result<_>>()?;
    Ok(SingularExtension {
        total: OrientedDialgebra::new_unchecked(dialgebra_from_json(&e.dialgebra)?, group.clone(), action)?,
        inclusion: matrix_from_json(&e.inclusion)?,
        projection: matrix_from_json(&e.projection)?,
    })
}

pub fn deformation_to_json(def: &TruncatedDeformation) -> DeformationJson {
    DeformationJson {
        order: def.order,
        ml: def.ml.iter().map(tensor_to_json).collect(),
        mr: def.mr.iter().map(tensor_to_json).collect(),
        phi: def.phi.iter().map(|p| p.iter().map(matrix_to_json).collect()).collect(),
    }
}

pub fn deformation_from_json(def: &DeformationJson) -> Result<TruncatedDeformation> {
    Ok(TruncatedDeformation {
        order: def.order,
        ml: def.ml.iter().map(tensor_from_json).collect::<Result<_>>()?,
        mr: def.mr.iter().map(tensor_from_json).collect::<Result<_>>()?,
        phi: def
            .phi
            .iter()
            .map(|p| p.iter().map(matrix_from_json).collect::<Result<_>>())
            .collect::<Result<_>>()?,
    })
}

pub fn equivalence_to_json(eq: &DeformationEquivalence) -> EquivalenceJson {
    EquivalenceJson {
        order: eq.order,
        psi: eq.psi.iter().map(matrix_to_json).collect(),
    }
}

pub fn equivalence_from_json(eq: &EquivalenceJson) -> Result<DeformationEquivalence> {
    Ok(DeformationEquivalence {
        order: eq.order,
        psi: eq.psi.iter().map(matrix_from_json).collect::<Result<_>>()?,
    })
}

/// Flat coordinates of a cohomology representative; total-complex vectors are
/// split by bidegree `"p,q"`.
fn representative_json(v: &[Rational], split: Option<&[(usize, usize, usize)]>) -> serde_json::Value {
    let flat = |s: &[Rational]| serde_json::Value::Array(s.iter().map(|q| format_rational(q).into()).collect());
    match split {
        None => flat(v),
        Some(blocks) => {
            let mut map = BTreeMap::new();
            let mut at = 0;
            for &(p, q, len) in blocks {
                map.insert(format!("{p},{q}"), flat(&v[at..at + len]));
                at += len;
            }
            serde_json::to_value(map).expect("string map")
        }
    }
}

/// `{"dim": …, "representatives": […]}`; `bidegrees` lists `(p, q, block length)`
/// for total-complex results.
pub fn cohomology_to_json(r: &CohomologyResult, bidegrees: Option<&[(usize, usize, usize)]>) -> serde_json::Value {
    serde_json::json!({
        "dim": r.dim,
        "representatives": r.representatives.iter().map(|v| representative_json(v, bidegrees)).collect::<Vec<_>>(),
    })
}

/// `(p, q, dim C^{p,q})` in the order of `Tot^n`.
pub fn total_layout(group_order: usize, dim: usize, n: usize) -> Vec<(usize, usize, usize)> {
    total_bidegrees(n)
        .into_iter()
        .map(|(p, q)| (p, q, crate::cohomology::bicochain_dim(group_order, dim, p, q)))
        .collect()
}

impl Bundle {
    pub fn parse(text: &str) -> Result<Bundle> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json_string(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("serializable")
        } else {
            serde_json::to_string(self).expect("serializable")
        }
    }

    pub fn config(&self) -> EngineConfig {
        self.config.clone().unwrap_or_default()
    }

    pub fn dialgebra(&self) -> Result<Dialgebra> {
        dialgebra_from_json(self.dialgebra.as_ref().ok_or_else(|| missing("dialgebra"))?)
    }

    /// The trivial group acting by the identity when `group` is absent.
    pub fn group(&self) -> Result<OrientedGroup> {
        match &self.group {
            Some(g) => group_from_json(g),
            None => Ok(OrientedGroup::trivial()),
        }
    }

    /// Shapes are checked, axioms are not.
    pub fn oriented_unchecked(&self) -> Result<OrientedDialgebra> {
        let d = self.dialgebra()?;
        let group = self.group()?;
        let action = match &self.action {
            Some(a) => a.iter().map(matrix_from_json).collect::<Result<Vec<_>>>()?,
            None if group.order() == 1 => vec![Matrix::identity(d.dim())],
            None => return Err(missing("action")),
        };
        OrientedDialgebra::new_unchecked(d, group, action)
    }

    pub fn oriented(&self) -> Result<OrientedDialgebra> {
        let od = self.oriented_unchecked()?;
        OrientedDialgebra::new(
            Dialgebra::new(od.dialgebra().left().clone(), od.dialgebra().right().clone())?,
            od.group().clone(),
            od.actions().to_vec(),
        )
    }

    pub fn cocycle(&self) -> Result<Degree1Cochain> {
        cocycle_from_json(self.cocycle.as_ref().ok_or_else(|| missing("cocycle"))?)
    }

    pub fn extension(&self) -> Result<SingularExtension> {
        extension_from_json(self.extension.as_ref().ok_or_else(|| missing("extension"))?, &self.group()?)
    }

    pub fn section(&self) -> Result<Option<Matrix>> {
        self.section.as_ref().map(matrix_from_json).transpose()
    }

    pub fn deformation(&self) -> Result<TruncatedDeformation> {
        deformation_from_json(self.deformation.as_ref().ok_or_else(|| missing("deformation"))?)
    }

    pub fn target(&self) -> Result<Option<TruncatedDeformation>> {
        self.target.as_ref().map(deformation_from_json).transpose()
    }

    pub fn equivalence(&self) -> Result<DeformationEquivalence> {
        equivalence_from_json(self.equivalence.as_ref().ok_or_else(|| missing("equivalence"))?)
    }

    /// A bundle holding just `od`.
    pub fn from_oriented(od: &OrientedDialgebra) -> Bundle {
        Bundle {
            dialgebra: Some(dialgebra_to_json(od.dialgebra())),
            group: Some(group_to_json(od.group())),
            action: Some(od.actions().iter().map(matrix_to_json).collect()),
            ..Bundle::default()
        }
    }
}
