//! Internal monoids and comonoids, morphism exponentials over commutative
//! monoids, the endomorphism monoid built from duals, and endomorphism
//! exponentials.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphism::{
    add, compose, compose_tensor, duality_pair, swap_after, tensor, Cplx, MatrixJson, Morphism,
    ONE, ZERO,
};
use crate::space::SpaceObject;
use crate::DEFAULT_TOLERANCE;

fn expect_type(op: &'static str, f: &Morphism, dom: &SpaceObject, cod: &SpaceObject) -> Result<()> {
    for (want, got) in [(dom, f.dom()), (cod, f.cod())] {
        if !want.is_compatible(got) {
            return Err(Error::DomainMismatch {
                op,
                expected: want.clone(),
                found: got.clone(),
            });
        }
    }
    Ok(())
}

/// `(A, g, u)`: a comultiplication `g: A -> A ⊗ A` and counit `u: A -> I`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComonoidPresentation {
    carrier: SpaceObject,
    comult: Morphism,
    counit: Morphism,
}

/// Max-abs residuals of the comonoid laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComonoidResiduals {
    pub coassociativity: f64,
    pub counit: f64,
    pub cocommutativity: f64,
}

impl ComonoidResiduals {
    pub fn max(&self) -> f64 {
        self.coassociativity
            .max(self.counit)
            .max(self.cocommutativity)
    }
}

impl ComonoidPresentation {
    pub fn new(carrier: SpaceObject, comult: Morphism, counit: Morphism) -> Result<Self> {
        expect_type(
            "comonoid",
            &comult,
            &carrier,
            &SpaceObject::tensor(&carrier, &carrier),
        )?;
        expect_type("comonoid", &counit, &carrier, &SpaceObject::unit())?;
        Ok(ComonoidPresentation {
            carrier,
            comult,
            counit,
        })
    }

    /// `I_× = (I, λ†, id)`.
    pub fn unit_comonoid() -> Self {
        let i = SpaceObject::unit();
        ComonoidPresentation {
            carrier: i.clone(),
            comult: Morphism::scalar(ONE)
                .cast(&i, &SpaceObject::tensor(&i, &i))
                .expect("1x1"),
            counit: Morphism::scalar(ONE),
        }
    }

    /// The copying comonoid `e_i ↦ e_i ⊗ e_i`, `e_i ↦ 1` on `C^d`: the
    /// diagonal of the biproduct decomposition `C^d = I ⊕ ... ⊕ I` carried
    /// over to the tensor product.
    pub fn copy(a: &SpaceObject) -> Self {
        let d = a.dim();
        let aa = SpaceObject::tensor(a, a);
        let comult = Morphism::from_fn(
            a.clone(),
            aa,
            |r, c| if r == c * d + c { ONE } else { ZERO },
        );
        let counit = Morphism::from_fn(a.clone(), SpaceObject::unit(), |_, _| ONE);
        ComonoidPresentation {
            carrier: a.clone(),
            comult,
            counit,
        }
    }

    pub fn carrier(&self) -> &SpaceObject {
        &self.carrier
    }

    pub fn comult(&self) -> &Morphism {
        &self.comult
    }

    pub fn counit(&self) -> &Morphism {
        &self.counit
    }

    pub fn residuals(&self) -> ComonoidResiduals {
        let a = &self.carrier;
        let id = Morphism::identity(a);
        let g = &self.comult;
        let left = compose_tensor(g, &id, g).expect("typed");
        let right = compose_tensor(&id, g, g).expect("typed");
        let coassociativity = left.max_abs_diff(&right);
        let lu = compose_tensor(&self.counit, &id, g).expect("typed");
        let ru = compose_tensor(&id, &self.counit, g).expect("typed");
        let counit = lu.max_abs_diff(&id).max(ru.max_abs_diff(&id));
        let swapped = swap_after(a, a, g).expect("typed");
        let cocommutativity = swapped.max_abs_diff(g);
        ComonoidResiduals {
            coassociativity,
            counit,
            cocommutativity,
        }
    }

    /// Fails with `LawViolation` unless every comonoid law holds to `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let dev = self.residuals().max();
        if dev <= tol {
            Ok(())
        } else {
            Err(Error::LawViolation {
                law: "cocommutative comonoid".into(),
                deviation: dev,
            })
        }
    }

    pub fn to_json(&self) -> ComonoidJson {
        ComonoidJson {
            carrier: self.carrier.clone(),
            comult: self.comult.to_json(),
            counit: self.counit.to_json(),
        }
    }

    pub fn from_json(json: &ComonoidJson) -> Result<Self> {
        let c = &json.carrier;
        let comult = Morphism::from_json_typed(&json.comult, c.clone(), SpaceObject::tensor(c, c))?;
        let counit = Morphism::from_json_typed(&json.counit, c.clone(), SpaceObject::unit())?;
        Self::new(c.clone(), comult, counit)
    }
}

/// `(A, g, u)`: a multiplication `g: A ⊗ A -> A` and unit `u: I -> A`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonoidPresentation {
    carrier: SpaceObject,
    mult: Morphism,
    unit: Morphism,
    commutative: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonoidResiduals {
    pub associativity: f64,
    pub unit: f64,
    pub commutativity: f64,
}

impl MonoidResiduals {
    /// Residual of the laws every monoid must satisfy.
    pub fn monoid(&self) -> f64 {
        self.associativity.max(self.unit)
    }
}

impl MonoidPresentation {
    pub fn new(
        carrier: SpaceObject,
        mult: Morphism,
        unit: Morphism,
        commutative: bool,
    ) -> Result<Self> {
        expect_type(
            "monoid",
            &mult,
            &SpaceObject::tensor(&carrier, &carrier),
            &carrier,
        )?;
        expect_type("monoid", &unit, &SpaceObject::unit(), &carrier)?;
        Ok(MonoidPresentation {
            carrier,
            mult,
            unit,
            commutative,
        })
    }

    /// Pointwise multiplication on `C^d`: `e_i · e_j = δ_ij e_i`, unit `Σ e_i`.
    pub fn elementwise(d: usize) -> Self {
        let a = SpaceObject::base(d);
        let aa = SpaceObject::tensor(&a, &a);
        let mult = Morphism::from_fn(
            aa,
            a.clone(),
            |r, c| if c == r * d + r { ONE } else { ZERO },
        );
        let unit = Morphism::from_fn(SpaceObject::unit(), a.clone(), |_, _| ONE);
        MonoidPresentation {
            carrier: a,
            mult,
            unit,
            commutative: true,
        }
    }

    /// The two-dimensional algebra `C[x] / (x² - a x - b)` in the basis `{1, x}`.
    pub fn quadratic(a: Cplx, b: Cplx) -> Self {
        let obj = SpaceObject::base(2);
        // columns: 1·1, 1·x, x·1, x·x
        let table = [[ONE, ZERO, ZERO, b], [ZERO, ONE, ONE, a]];
        let mult = Morphism::from_fn(SpaceObject::tensor(&obj, &obj), obj.clone(), |r, c| {
            table[r][c]
        });
        let unit = Morphism::basis_state(&obj, 0);
        MonoidPresentation {
            carrier: obj,
            mult,
            unit,
            commutative: true,
        }
    }

    /// Transports the structure along an invertible `t` (with inverse `t_inv`):
    /// `g' = t g (t⁻¹ ⊗ t⁻¹)`, `u' = t u`.
    pub fn transport(&self, t: &Morphism, t_inv: &Morphism) -> Result<Self> {
        let inv2 = tensor(t_inv, t_inv);
        let mult = compose(t, &compose(&self.mult, &inv2)?)?;
        let unit = compose(t, &self.unit)?;
        Self::new(t.cod().clone(), mult, unit, self.commutative)
    }

    pub fn carrier(&self) -> &SpaceObject {
        &self.carrier
    }

    pub fn mult(&self) -> &Morphism {
        &self.mult
    }

    pub fn unit(&self) -> &Morphism {
        &self.unit
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Computed on the flipped comonoid; daggers preserve max-abs norms.
    pub fn residuals(&self) -> MonoidResiduals {
        let co = dagger_flip_monoid(self).residuals();
        MonoidResiduals {
            associativity: co.coassociativity,
            unit: co.counit,
            commutativity: co.cocommutativity,
        }
    }

    /// Max-abs residual of `g ∘ swap = g`.
    pub fn commutativity_residual(&self) -> f64 {
        let gd = self.mult.dagger();
        swap_after(&self.carrier, &self.carrier, &gd)
            .expect("typed")
            .max_abs_diff(&gd)
    }

    pub fn to_json(&self) -> MonoidJson {
        MonoidJson {
            carrier: self.carrier.clone(),
            mult: self.mult.to_json(),
            unit: self.unit.to_json(),
            commutative: Some(self.commutative),
        }
    }

    /// Reads a monoid; when the `commutative` flag is absent it is decided
    /// numerically at the default tolerance.
    pub fn from_json(json: &MonoidJson) -> Result<Self> {
        let c = &json.carrier;
        let mult = Morphism::from_json_typed(&json.mult, SpaceObject::tensor(c, c), c.clone())?;
        let unit = Morphism::from_json_typed(&json.unit, SpaceObject::unit(), c.clone())?;
        let mut m = Self::new(c.clone(), mult, unit, false)?;
        m.commutative = match json.commutative {
            Some(flag) => flag,
            None => m.commutativity_residual() <= DEFAULT_TOLERANCE,
        };
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComonoidJson {
    pub carrier: SpaceObject,
    pub comult: MatrixJson,
    pub counit: MatrixJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonoidJson {
    pub carrier: SpaceObject,
    pub mult: MatrixJson,
    pub unit: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutative: Option<bool>,
}

/// `(A, g†, u†)`; the flip of a cocommutative comonoid is commutative.
pub fn dagger_flip(co: &ComonoidPresentation) -> MonoidPresentation {
    let mut mono = MonoidPresentation {
        carrier: co.carrier.clone(),
        mult: co.comult.dagger(),
        unit: co.counit.dagger(),
        commutative: false,
    };
    mono.commutative = mono.commutativity_residual() <= DEFAULT_TOLERANCE;
    mono
}

/// `(A, g†, u†)` read as a comonoid.
pub fn dagger_flip_monoid(mono: &MonoidPresentation) -> ComonoidPresentation {
    ComonoidPresentation {
        carrier: mono.carrier.clone(),
        comult: mono.mult.dagger(),
        counit: mono.unit.dagger(),
    }
}

/// The `n`-fold comultiplication `g^{n-1}: A -> A^{⊗n}`, with `g^{-1} = u`
/// and `g^0 = id`.
pub fn iterated_comult(g: &Morphism, u: &Morphism, n: usize) -> Result<Morphism> {
    let a = g.dom().clone();
    expect_type("iterated_comult", g, &a, &SpaceObject::tensor(&a, &a))?;
    expect_type("iterated_comult", u, &a, &SpaceObject::unit())?;
    Ok(match n {
        0 => u.clone(),
        1 => Morphism::identity(&a),
        _ => {
            let mut acc = g.clone();
            for k in 3..=n {
                let rest = Morphism::identity(&SpaceObject::tensor_power(&a, k - 2));
                acc = compose_tensor(g, &rest, &acc)?;
            }
            acc
        }
    })
}

/// The `n`-fold multiplication `g^{n-1}: A^{⊗n} -> A`, with `g^{-1} = u`
/// and `g^0 = id`.
pub fn iterated_mult(g: &Morphism, u: &Morphism, n: usize) -> Result<Morphism> {
    Ok(iterated_comult(&g.dagger(), &u.dagger(), n)?.dagger())
}

/// Truncated exponential `Σ_{m=0}^{order} (1/m!) g^{m-1} ∘ φ^{⊗m}` over a
/// commutative monoid.
pub fn monoid_exp(mono: &MonoidPresentation, phi: &Morphism, order: usize) -> Result<Morphism> {
    let commutativity = mono.commutativity_residual();
    if !mono.commutative || commutativity > DEFAULT_TOLERANCE {
        return Err(Error::LawViolation {
            law: "commutativity of the monoid".into(),
            deviation: commutativity,
        });
    }
    expect_type("monoid_exp", phi, &SpaceObject::unit(), &mono.carrier)?;
    let mut total = mono.unit.clone();
    if order == 0 {
        return Ok(total);
    }
    // term_m = g^{m-1} φ^{⊗m} / m!, built as g(term_{m-1} ⊗ φ) / m
    let mut term = phi.clone();
    total = add(&total, &term)?;
    for m in 2..=order {
        term = compose(&mono.mult, &tensor(&term, phi))?.scale_real(1.0 / m as f64);
        total = add(&total, &term)?;
    }
    Ok(total)
}

/// Exponential in a possibly noncommutative monoid, computed in a
/// commutative monoid and pushed forward along a monoid morphism `embed`.
pub fn exp_via(
    commutative: &MonoidPresentation,
    element: &Morphism,
    embed: &Morphism,
    order: usize,
) -> Result<Morphism> {
    compose(embed, &monoid_exp(commutative, element, order)?)
}

/// `(A ⊗ A*, id ⊗ θ ⊗ id, ζ)`: names of endomorphisms under composition.
pub fn endo_monoid(a: &SpaceObject) -> MonoidPresentation {
    let (zeta, theta) = duality_pair(a);
    let a_star = SpaceObject::dual(a);
    let mult = tensor(
        &tensor(&Morphism::identity(a), &theta),
        &Morphism::identity(&a_star),
    );
    MonoidPresentation {
        carrier: SpaceObject::tensor(a, &a_star),
        mult,
        unit: zeta,
        commutative: false,
    }
}

/// The embedding `(k ⊗ id_{N*}) ∘ (id_N ⊗ ζ_N): N -> N ⊗ N*` of a monoid into
/// the endomorphism monoid of its carrier.
pub fn monoid_embed(mono: &MonoidPresentation) -> Morphism {
    let n = &mono.carrier;
    let (zeta, _) = duality_pair(n);
    let id_n = Morphism::identity(n);
    let bend = tensor(&id_n, &zeta);
    let mult = tensor(&mono.mult, &Morphism::identity(&SpaceObject::dual(n)));
    compose(&mult, &bend).expect("typed by construction")
}

/// Truncated series `Σ_{m=0}^{order} f^m / m!` for an endomorphism `f`.
pub fn endo_exp(f: &Morphism, order: usize) -> Result<Morphism> {
    if !f.dom().is_compatible(f.cod()) {
        return Err(Error::DomainMismatch {
            op: "endo_exp",
            expected: f.dom().clone(),
            found: f.cod().clone(),
        });
    }
    let id = Morphism::identity(f.dom());
    let mut total = id.clone();
    let mut term = id;
    for m in 1..=order {
        term = compose(f, &term)?.scale_real(1.0 / m as f64);
        total = add(&total, &term)?;
    }
    total.cast(f.dom(), f.dom())
}
