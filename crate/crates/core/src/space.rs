//! Objects of the concrete category: finite-dimensional spaces carrying
//! enough structure metadata to catch ill-typed compositions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::multiset_count;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Structure {
    Base,
    Unit,
    Tensor(Box<SpaceObject>, Box<SpaceObject>),
    Biproduct(Vec<SpaceObject>),
    Fock {
        base: Box<SpaceObject>,
        cutoff: usize,
    },
    Sym {
        base: Box<SpaceObject>,
        degree: usize,
    },
    Dual(Box<SpaceObject>),
}

/// A finite-dimensional space. Two objects are composable when their
/// normal forms agree: tensor products are flattened, tensor units dropped,
/// `S^0(A) = I`, `S^1(A) = A` and `A** = A`. Under the row-major index
/// convention these identifications are literal equalities of matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "UncheckedObject")]
pub struct SpaceObject {
    dim: usize,
    structure: Structure,
}

#[derive(Deserialize)]
struct UncheckedObject {
    dim: usize,
    structure: Structure,
}

impl TryFrom<UncheckedObject> for SpaceObject {
    type Error = String;

    fn try_from(raw: UncheckedObject) -> Result<Self, Self::Error> {
        let expected = match &raw.structure {
            Structure::Base => raw.dim,
            other => dim_of(other),
        };
        if expected != raw.dim {
            return Err(format!(
                "object declares dim {} but its structure has dim {}",
                raw.dim, expected
            ));
        }
        Ok(SpaceObject {
            dim: raw.dim,
            structure: raw.structure,
        })
    }
}

fn dim_of(structure: &Structure) -> usize {
    match structure {
        Structure::Base => unreachable!("base objects carry their own dim"),
        Structure::Unit => 1,
        Structure::Tensor(l, r) => l.dim * r.dim,
        Structure::Biproduct(parts) => parts.iter().map(|p| p.dim).sum(),
        Structure::Fock { base, cutoff } => {
            (0..=*cutoff).map(|n| multiset_count(base.dim, n)).sum()
        }
        Structure::Sym { base, degree } => multiset_count(base.dim, *degree),
        Structure::Dual(inner) => inner.dim,
    }
}

impl SpaceObject {
    fn from_structure(structure: Structure) -> Self {
        SpaceObject {
            dim: dim_of(&structure),
            structure,
        }
    }

    /// A plain space `C^dim`.
    pub fn base(dim: usize) -> Self {
        SpaceObject {
            dim,
            structure: Structure::Base,
        }
    }

    /// The tensor unit `I`.
    pub fn unit() -> Self {
        SpaceObject {
            dim: 1,
            structure: Structure::Unit,
        }
    }

    /// The zero object: the empty biproduct.
    pub fn zero() -> Self {
        Self::biproduct(Vec::new())
    }

    pub fn tensor(left: &SpaceObject, right: &SpaceObject) -> Self {
        Self::from_structure(Structure::Tensor(
            Box::new(left.clone()),
            Box::new(right.clone()),
        ))
    }

    /// Left-nested tensor product of `parts`; the empty product is `I`.
    pub fn tensor_all<'a, I>(parts: I) -> Self
    where
        I: IntoIterator<Item = &'a SpaceObject>,
    {
        let mut iter = parts.into_iter();
        match iter.next() {
            None => Self::unit(),
            Some(first) => iter.fold(first.clone(), |acc, p| Self::tensor(&acc, p)),
        }
    }

    /// `A^{⊗n}`, with `A^{⊗0} = I`.
    pub fn tensor_power(base: &SpaceObject, n: usize) -> Self {
        Self::tensor_all(std::iter::repeat_n(base, n))
    }

    pub fn biproduct(parts: Vec<SpaceObject>) -> Self {
        Self::from_structure(Structure::Biproduct(parts))
    }

    pub fn fock(base: &SpaceObject, cutoff: usize) -> Self {
        Self::from_structure(Structure::Fock {
            base: Box::new(base.clone()),
            cutoff,
        })
    }

    pub fn sym(base: &SpaceObject, degree: usize) -> Self {
        Self::from_structure(Structure::Sym {
            base: Box::new(base.clone()),
            degree,
        })
    }

    pub fn dual(inner: &SpaceObject) -> Self {
        Self::from_structure(Structure::Dual(Box::new(inner.clone())))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.structure, Structure::Unit)
    }

    /// Parts of a biproduct object, if it is one.
    pub fn biproduct_parts(&self) -> Option<&[SpaceObject]> {
        match &self.structure {
            Structure::Biproduct(parts) => Some(parts),
            _ => None,
        }
    }

    /// Base and cutoff of a Fock object, if it is one.
    pub fn fock_parts(&self) -> Option<(&SpaceObject, usize)> {
        match &self.structure {
            Structure::Fock { base, cutoff } => Some((base, *cutoff)),
            _ => None,
        }
    }

    /// Canonical representative used for composability checks.
    pub fn normalized(&self) -> SpaceObject {
        match &self.structure {
            Structure::Base | Structure::Unit => self.clone(),
            Structure::Tensor(..) => {
                let mut factors = Vec::new();
                self.push_factors(&mut factors);
                Self::tensor_all(&factors)
            }
            Structure::Biproduct(parts) => {
                Self::biproduct(parts.iter().map(SpaceObject::normalized).collect())
            }
            Structure::Fock { base, cutoff } => Self::fock(&base.normalized(), *cutoff),
            Structure::Sym { base, degree } => {
                let base = base.normalized();
                match degree {
                    0 => Self::unit(),
                    1 => base,
                    _ if base.is_unit() => Self::unit(),
                    _ => Self::sym(&base, *degree),
                }
            }
            Structure::Dual(inner) => {
                let inner = inner.normalized();
                match &inner.structure {
                    Structure::Unit => inner,
                    Structure::Dual(x) => (**x).clone(),
                    Structure::Tensor(..) => {
                        let mut factors = Vec::new();
                        inner.push_factors(&mut factors);
                        let duals: Vec<_> =
                            factors.iter().map(|f| Self::dual(f).normalized()).collect();
                        Self::tensor_all(&duals)
                    }
                    _ => Self::dual(&inner),
                }
            }
        }
    }

    /// Flattened, normalized, non-unit tensor factors.
    fn push_factors(&self, out: &mut Vec<SpaceObject>) {
        match &self.structure {
            Structure::Tensor(l, r) => {
                l.push_factors(out);
                r.push_factors(out);
            }
            _ => {
                let n = self.normalized();
                match &n.structure {
                    Structure::Unit => {}
                    Structure::Tensor(..) => n.push_factors(out),
                    _ => out.push(n),
                }
            }
        }
    }

    /// The flattened tensor factors of the normal form (empty for `I`).
    pub fn factors(&self) -> Vec<SpaceObject> {
        let mut out = Vec::new();
        self.push_factors(&mut out);
        out
    }

    pub fn is_compatible(&self, other: &SpaceObject) -> bool {
        self.dim == other.dim && self.normalized() == other.normalized()
    }
}

impl fmt::Display for SpaceObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.structure {
            Structure::Base => write!(f, "C^{}", self.dim),
            Structure::Unit => write!(f, "I"),
            Structure::Tensor(l, r) => write!(f, "({l} ⊗ {r})"),
            Structure::Biproduct(parts) if parts.is_empty() => write!(f, "0"),
            Structure::Biproduct(parts) => {
                write!(f, "(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ⊕ ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            Structure::Fock { base, cutoff } => write!(f, "F_{cutoff}({base})"),
            Structure::Sym { base, degree } => write!(f, "S^{degree}({base})"),
            Structure::Dual(inner) => write!(f, "{inner}*"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_follow_structure() {
        let a = SpaceObject::base(2);
        let b = SpaceObject::base(3);
        assert_eq!(SpaceObject::tensor(&a, &b).dim(), 6);
        assert_eq!(SpaceObject::biproduct(vec![a.clone(), b.clone()]).dim(), 5);
        assert_eq!(SpaceObject::zero().dim(), 0);
        assert_eq!(SpaceObject::unit().dim(), 1);
        assert_eq!(SpaceObject::fock(&a, 2).dim(), 6);
        assert_eq!(SpaceObject::fock(&SpaceObject::unit(), 3).dim(), 4);
        assert_eq!(SpaceObject::fock(&SpaceObject::zero(), 3).dim(), 1);
        assert_eq!(SpaceObject::sym(&b, 2).dim(), 6);
    }

    #[test]
    fn unitors_and_associators_are_strict() {
        let a = SpaceObject::base(2);
        let i = SpaceObject::unit();
        assert!(SpaceObject::tensor(&i, &a).is_compatible(&a));
        assert!(SpaceObject::tensor(&a, &i).is_compatible(&a));
        let left = SpaceObject::tensor(&SpaceObject::tensor(&a, &a), &a);
        let right = SpaceObject::tensor(&a, &SpaceObject::tensor(&a, &a));
        assert!(left.is_compatible(&right));
        assert!(SpaceObject::sym(&a, 1).is_compatible(&a));
        assert!(SpaceObject::sym(&a, 0).is_compatible(&i));
        let dd = SpaceObject::dual(&SpaceObject::dual(&a));
        assert!(dd.is_compatible(&a));
    }

    #[test]
    fn structure_tags_are_checked() {
        let a = SpaceObject::base(4);
        let b = SpaceObject::tensor(&SpaceObject::base(2), &SpaceObject::base(2));
        assert!(!a.is_compatible(&b));
        assert!(!a.is_compatible(&SpaceObject::dual(&a)));
        let f = SpaceObject::fock(&SpaceObject::base(1), 3);
        assert!(!f.is_compatible(&a));
    }

    #[test]
    fn json_shape() {
        let a = SpaceObject::base(2);
        let obj = SpaceObject::tensor(&a, &SpaceObject::fock(&a, 1));
        let text = serde_json::to_string(&obj).unwrap();
        assert_eq!(
            text,
            r#"{"dim":6,"structure":{"tensor":[{"dim":2,"structure":"base"},{"dim":3,"structure":{"fock":{"base":{"dim":2,"structure":"base"},"cutoff":1}}}]}}"#
        );
        let back: SpaceObject = serde_json::from_str(&text).unwrap();
        assert_eq!(back, obj);
        let bad = r#"{"dim":5,"structure":{"biproduct":[{"dim":2,"structure":"base"}]}}"#;
        assert!(serde_json::from_str::<SpaceObject>(bad).is_err());
        let unit: SpaceObject = serde_json::from_str(r#"{"dim":1,"structure":"unit"}"#).unwrap();
        assert!(unit.is_unit());
    }
}
