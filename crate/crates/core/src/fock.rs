//! The cutoff-`N` Fock functor `F(A) = S_0(A) ⊕ ... ⊕ S_N(A)` with the
//! ladder-style structure: comultiplication, counits, the unit `Rη` of the
//! adjunction, the product isomorphism `k`, raising and lowering morphisms
//! and coherent states.
//!
//! Truncation keeps exactly the terms whose intermediate sector indices are
//! all at most `N`. Laws that involve a sum of degrees are then exact on the
//! subspace of total degree at most `N`; [`restrict_total_degree`] and
//! [`restrict_input_degree`] express those restrictions.

use std::collections::BTreeMap;

use crate::algebraic::{iterated_comult, ComonoidPresentation};
use crate::combinatorics::{binomial, factorial, multiset_count};
use crate::error::{Error, Result};
use crate::morphism::{compose, compose_tensor, tensor, Cplx, Morphism, ZERO};
use crate::par;
use crate::space::SpaceObject;
use crate::symtensor::{sym_isometry_dag, sym_object, sym_power, sym_projection};
use crate::DEFAULT_TOLERANCE;

/// Scalars `B(m,n)`, `C`, `K(n)` and `L` of a ladder-style adjunction.
///
/// The default family is `B(m,n) = √((m+n)!/(m!n!))`, `C = L = 1` and
/// `K(n) = 1/√n!`. Individual values may be overridden, which is how the
/// negative controls are produced.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LadderCoefficients {
    b: BTreeMap<(usize, usize), f64>,
    k: BTreeMap<usize, f64>,
    c: Option<f64>,
    l: Option<f64>,
}

impl LadderCoefficients {
    pub fn standard() -> Self {
        Self::default()
    }

    pub fn with_b(mut self, m: usize, n: usize, value: f64) -> Self {
        self.b.insert((m, n), value);
        self
    }

    pub fn with_k(mut self, n: usize, value: f64) -> Self {
        self.k.insert(n, value);
        self
    }

    pub fn with_c(mut self, value: f64) -> Self {
        self.c = Some(value);
        self
    }

    pub fn with_l(mut self, value: f64) -> Self {
        self.l = Some(value);
        self
    }

    pub fn is_standard(&self) -> bool {
        self == &Self::default()
    }

    pub fn b(&self, m: usize, n: usize) -> f64 {
        match self.b.get(&(m, n)) {
            Some(v) => *v,
            None => (binomial(m + n, m) as f64).sqrt(),
        }
    }

    pub fn c(&self) -> f64 {
        self.c.unwrap_or(1.0)
    }

    pub fn l(&self) -> f64 {
        self.l.unwrap_or(1.0)
    }

    pub fn k(&self, n: usize) -> f64 {
        match self.k.get(&n) {
            Some(v) => *v,
            None => 1.0 / factorial(n).sqrt(),
        }
    }
}

/// `F(A)` truncated at particle number `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockSpace {
    base: SpaceObject,
    cutoff: usize,
    sector_dims: Vec<usize>,
    offsets: Vec<usize>,
    object: SpaceObject,
    coefficients: LadderCoefficients,
}

impl FockSpace {
    pub fn new(base: &SpaceObject, cutoff: usize) -> Self {
        Self::with_coefficients(base, cutoff, LadderCoefficients::standard())
    }

    pub fn with_coefficients(
        base: &SpaceObject,
        cutoff: usize,
        coefficients: LadderCoefficients,
    ) -> Self {
        let sector_dims: Vec<usize> = (0..=cutoff)
            .map(|n| multiset_count(base.dim(), n))
            .collect();
        let mut offsets = Vec::with_capacity(cutoff + 1);
        let mut acc = 0;
        for d in &sector_dims {
            offsets.push(acc);
            acc += d;
        }
        FockSpace {
            base: base.clone(),
            cutoff,
            sector_dims,
            offsets,
            object: SpaceObject::fock(base, cutoff),
            coefficients,
        }
    }

    /// Reads the base and cutoff off a Fock-tagged object.
    pub fn from_object(obj: &SpaceObject, coefficients: LadderCoefficients) -> Result<Self> {
        match obj.normalized().fock_parts() {
            Some((base, cutoff)) => Ok(Self::with_coefficients(base, cutoff, coefficients)),
            None => Err(Error::InvariantViolation(format!(
                "{obj} is not a Fock space"
            ))),
        }
    }

    pub fn base(&self) -> &SpaceObject {
        &self.base
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn sector_dims(&self) -> &[usize] {
        &self.sector_dims
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn dim(&self) -> usize {
        self.object.dim()
    }

    pub fn object(&self) -> &SpaceObject {
        &self.object
    }

    pub fn coefficients(&self) -> &LadderCoefficients {
        &self.coefficients
    }

    /// `F` with the same coefficients over another base.
    pub fn over(&self, base: &SpaceObject) -> FockSpace {
        Self::with_coefficients(base, self.cutoff, self.coefficients.clone())
    }

    pub fn sector_object(&self, n: usize) -> SpaceObject {
        sym_object(&self.base, n)
    }

    /// Particle number of every basis index.
    pub fn degrees(&self) -> Vec<usize> {
        self.sector_dims
            .iter()
            .enumerate()
            .flat_map(|(n, &d)| std::iter::repeat_n(n, d))
            .collect()
    }

    fn check_sector(&self, n: usize) -> Result<()> {
        if n > self.cutoff {
            Err(Error::IndexOutOfRange {
                index: n,
                len: self.cutoff + 1,
            })
        } else {
            Ok(())
        }
    }
}

/// Shorthand for [`FockSpace::new`].
pub fn fock_space(base: &SpaceObject, cutoff: usize) -> FockSpace {
    FockSpace::new(base, cutoff)
}

/// Writes `block` into a dense `rows x cols` buffer, mapping its local
/// indices through `row_of` and `col_of`.
fn place(
    data: &mut [Cplx],
    cols: usize,
    block: &Morphism,
    row_of: impl Fn(usize) -> usize,
    col_of: impl Fn(usize) -> usize,
) {
    let bc = block.cols();
    for (idx, v) in block.entries().iter().enumerate() {
        if *v != ZERO {
            data[row_of(idx / bc) * cols + col_of(idx % bc)] += *v;
        }
    }
}

/// `p^n: F(A) -> S_n(A)`.
pub fn sector_projection(f: &FockSpace, n: usize) -> Result<Morphism> {
    Ok(sector_injection(f, n)?.dagger())
}

/// `p^n†: S_n(A) -> F(A)`.
pub fn sector_injection(f: &FockSpace, n: usize) -> Result<Morphism> {
    f.check_sector(n)?;
    let off = f.offsets[n];
    Ok(Morphism::from_fn(
        f.sector_object(n),
        f.object.clone(),
        |r, c| {
            if r == off + c {
                Cplx::new(1.0, 0.0)
            } else {
                ZERO
            }
        },
    ))
}

/// `F(f) = S_0(f) ⊕ ... ⊕ S_N(f)`.
pub fn fock_map(dom: &FockSpace, cod: &FockSpace, f: &Morphism) -> Result<Morphism> {
    for (want, got) in [(&dom.base, f.dom()), (&cod.base, f.cod())] {
        if !want.is_compatible(got) {
            return Err(Error::DomainMismatch {
                op: "fock_map",
                expected: want.clone(),
                found: got.clone(),
            });
        }
    }
    if dom.cutoff != cod.cutoff {
        return Err(Error::DomainMismatch {
            op: "fock_map",
            expected: dom.object.clone(),
            found: cod.object.clone(),
        });
    }
    let f = f.cast(&dom.base, &cod.base)?;
    let sectors: Vec<usize> = (0..=dom.cutoff).collect();
    let blocks = par::map(&sectors, |&n| sym_power(&f, n));
    let (rows, cols) = (cod.dim(), dom.dim());
    let mut data = vec![ZERO; rows * cols];
    for (n, block) in blocks.iter().enumerate() {
        let (ro, co) = (cod.offsets[n], dom.offsets[n]);
        place(&mut data, cols, block, |r| ro + r, |c| co + c);
    }
    Morphism::from_entries(dom.object.clone(), cod.object.clone(), data)
}

/// `d_A = Σ_{m+n≤N} B(m,n) (p^m† ⊗ p^n†)(s^m ⊗ s^n) s^{m+n}† p^{m+n}`.
pub fn comultiplication(f: &FockSpace) -> Morphism {
    let a = &f.base;
    let n_max = f.cutoff;
    let pairs: Vec<(usize, usize)> = (0..=n_max)
        .flat_map(|m| (0..=n_max - m).map(move |n| (m, n)))
        .collect();
    let blocks = par::map(&pairs, |&(m, n)| {
        let split = compose_tensor(
            &sym_projection(a, m),
            &sym_projection(a, n),
            &sym_isometry_dag(a, m + n),
        )
        .expect("typed by construction");
        split.scale_real(f.coefficients.b(m, n))
    });
    let dim = f.dim();
    let cod = SpaceObject::tensor(&f.object, &f.object);
    let mut data = vec![ZERO; dim * dim * dim];
    for (&(m, n), block) in pairs.iter().zip(&blocks) {
        let (om, on, ok) = (f.offsets[m], f.offsets[n], f.offsets[m + n]);
        let dn = f.sector_dims[n];
        place(
            &mut data,
            dim,
            block,
            |r| (om + r / dn) * dim + on + r % dn,
            |c| ok + c,
        );
    }
    Morphism::raw(f.object.clone(), cod, data)
}

/// `e_A = C · p^0: F(A) -> I`.
pub fn counit_e(f: &FockSpace) -> Morphism {
    sector_projection(f, 0)
        .expect("sector 0 always exists")
        .scale_real(f.coefficients.c())
}

/// `ε_A = L · p^1: F(A) -> A`. Requires `N ≥ 1` unless `A` is the zero object.
pub fn epsilon_single(f: &FockSpace) -> Result<Morphism> {
    if f.cutoff == 0 {
        return Ok(Morphism::zero(&f.object, &f.base));
    }
    Ok(sector_projection(f, 1)?.scale_real(f.coefficients.l()))
}

/// `(F(A), d_A, e_A)`.
pub fn fock_comonoid(f: &FockSpace) -> ComonoidPresentation {
    ComonoidPresentation::new(f.object.clone(), comultiplication(f), counit_e(f))
        .expect("typed by construction")
}

/// `e_A†: I -> F(A)`, the vacuum.
pub fn vacuum_state(f: &FockSpace) -> Morphism {
    counit_e(f).dagger()
}

/// `Rη_{(A,g,u)} = Σ_{n≤N} K(n) p^n† s^n g^{n-1}: A -> F(A)`. The comonoid
/// laws are checked first.
pub fn eta_comonoid(co: &ComonoidPresentation, f: &FockSpace) -> Result<Morphism> {
    co.validate(DEFAULT_TOLERANCE)?;
    if !co.carrier().is_compatible(&f.base) {
        return Err(Error::DomainMismatch {
            op: "eta_comonoid",
            expected: f.base.clone(),
            found: co.carrier().clone(),
        });
    }
    let a = &f.base;
    let g = co.comult().cast(a, &SpaceObject::tensor(a, a))?;
    let u = co.counit().cast(a, &SpaceObject::unit())?;
    let sectors: Vec<usize> = (0..=f.cutoff).collect();
    let blocks = par::map(&sectors, |&n| -> Result<Morphism> {
        let power = iterated_comult(&g, &u, n)?;
        Ok(compose(&sym_projection(a, n), &power)?.scale_real(f.coefficients.k(n)))
    });
    let cols = a.dim();
    let mut data = vec![ZERO; f.dim() * cols];
    for (n, block) in blocks.into_iter().enumerate() {
        let off = f.offsets[n];
        place(&mut data, cols, &block?, |r| off + r, |c| c);
    }
    Morphism::from_entries(a.clone(), f.object.clone(), data)
}

/// `Rη_{I_×}: I -> F(I)`.
pub fn eta_unit(f: &FockSpace) -> Result<Morphism> {
    eta_comonoid(
        &ComonoidPresentation::unit_comonoid(),
        &f.over(&SpaceObject::unit()),
    )
}

/// `k_{A,B}: F(A ⊕ B) -> F(A) ⊗ F(B)` with the standard coefficients.
pub fn k_decompose(a: &SpaceObject, b: &SpaceObject, cutoff: usize) -> Morphism {
    k_decompose_with(a, b, cutoff, &LadderCoefficients::standard())
}

/// `k_{A,B} = Σ_{p+q≤N} B(p,q) (p^p† ⊗ p^q†)(s^p ⊗ s^q)(π_A^{⊗p} ⊗ π_B^{⊗q}) s^{p+q}† p^{p+q}`.
///
/// On symmetric tensors no reordering of factors is needed before the
/// projections: every ordering gives the same vector.
pub fn k_decompose_with(
    a: &SpaceObject,
    b: &SpaceObject,
    cutoff: usize,
    coefficients: &LadderCoefficients,
) -> Morphism {
    let parts = vec![a.clone(), b.clone()];
    let ab = SpaceObject::biproduct(parts.clone());
    let fab = FockSpace::with_coefficients(&ab, cutoff, coefficients.clone());
    let fa = fab.over(a);
    let fb = fab.over(b);
    let pi_a = crate::morphism::projection(&parts, 0).expect("two parts");
    let pi_b = crate::morphism::projection(&parts, 1).expect("two parts");
    let pairs: Vec<(usize, usize)> = (0..=cutoff)
        .flat_map(|p| (0..=cutoff - p).map(move |q| (p, q)))
        .collect();
    let blocks = par::map(&pairs, |&(p, q)| {
        let proj = tensor(
            &crate::symtensor::tensor_power(&pi_a, p),
            &crate::symtensor::tensor_power(&pi_b, q),
        );
        let split = compose(&proj, &sym_isometry_dag(&ab, p + q)).expect("typed by construction");
        compose_tensor(&sym_projection(a, p), &sym_projection(b, q), &split)
            .expect("typed by construction")
            .scale_real(coefficients.b(p, q))
    });
    let db = fb.dim();
    let rows = fa.dim() * db;
    let cols = fab.dim();
    let mut data = vec![ZERO; rows * cols];
    for (&(p, q), block) in pairs.iter().zip(&blocks) {
        let (op, oq, on) = (fa.offsets[p], fb.offsets[q], fab.offsets[p + q]);
        let dq = fb.sector_dims[q];
        place(
            &mut data,
            cols,
            block,
            |r| (op + r / dq) * db + oq + r % dq,
            |c| on + c,
        );
    }
    Morphism::raw(
        fab.object,
        SpaceObject::tensor(&fa.object, &fb.object),
        data,
    )
}

fn check_state(op: &'static str, f: &FockSpace, phi: &Morphism) -> Result<Morphism> {
    let unit = SpaceObject::unit();
    if !phi.dom().is_compatible(&unit) || !phi.cod().is_compatible(&f.base) {
        return Err(Error::DomainMismatch {
            op,
            expected: SpaceObject::tensor(&unit, &f.base),
            found: SpaceObject::tensor(phi.dom(), phi.cod()),
        });
    }
    phi.cast(&unit, &f.base)
}

/// `a†_φ = Σ_{n<N} B(1,n) L p^{n+1}† s^{n+1} (id_A ⊗ s^n†)(φ ⊗ p^n)`, which
/// equals `d† ∘ ((ε† ∘ φ) ⊗ id)`.
pub fn raising(f: &FockSpace, phi: &Morphism) -> Result<Morphism> {
    let phi = check_state("raising", f, phi)?;
    let a = &f.base;
    let sectors: Vec<usize> = (0..f.cutoff).collect();
    let blocks = par::map(&sectors, |&n| {
        let spread = tensor(&phi, &sym_isometry_dag(a, n));
        compose(&sym_projection(a, n + 1), &spread)
            .expect("typed by construction")
            .scale_real(f.coefficients.b(1, n) * f.coefficients.l())
    });
    let dim = f.dim();
    let mut data = vec![ZERO; dim * dim];
    for (n, block) in blocks.iter().enumerate() {
        let (ro, co) = (f.offsets[n + 1], f.offsets[n]);
        place(&mut data, dim, block, |r| ro + r, |c| co + c);
    }
    Ok(Morphism::raw(f.object.clone(), f.object.clone(), data))
}

/// `a_φ = (a†_φ)†`.
pub fn lowering(f: &FockSpace, phi: &Morphism) -> Result<Morphism> {
    Ok(raising(f, phi)?.dagger())
}

/// The lowering natural transformation `a_A = (id ⊗ ε) ∘ d: F(A) -> F(A) ⊗ A`.
pub fn lowering_transformation(f: &FockSpace) -> Result<Morphism> {
    let eps = epsilon_single(f)?;
    compose_tensor(&Morphism::identity(&f.object), &eps, &comultiplication(f))
}

/// `Coh(φ) = F(φ) ∘ Rη_{I_×}`; sector `n` is `s^n(φ^{⊗n}) / √n!`.
pub fn coherent_state(f: &FockSpace, phi: &Morphism) -> Result<Morphism> {
    let phi = check_state("coherent_state", f, phi)?;
    let fi = f.over(&SpaceObject::unit());
    let eta = eta_unit(f)?;
    compose(&fock_map(&fi, f, &phi)?, &eta)
}

/// Total particle number of every basis index of a tensor product of Fock
/// spaces (units count as degree 0).
pub fn degree_map(obj: &SpaceObject) -> Result<Vec<usize>> {
    let mut degrees = vec![0];
    for factor in obj.factors() {
        let (base, cutoff) = factor.fock_parts().ok_or_else(|| {
            Error::InvariantViolation(format!(
                "{factor} in {obj} carries no particle-number grading"
            ))
        })?;
        let local = FockSpace::new(base, cutoff).degrees();
        degrees = degrees
            .iter()
            .flat_map(|&x| local.iter().map(move |&y| x + y))
            .collect();
    }
    Ok(degrees)
}

/// Zeroes the rows of `m` whose codomain degree exceeds `k`.
pub fn restrict_total_degree(m: &Morphism, k: usize) -> Result<Morphism> {
    let keep: Vec<bool> = degree_map(m.cod())?.into_iter().map(|d| d <= k).collect();
    Ok(m.mask_rows(&keep))
}

/// Zeroes the columns of `m` whose domain degree exceeds `k`.
pub fn restrict_input_degree(m: &Morphism, k: usize) -> Result<Morphism> {
    let keep: Vec<bool> = degree_map(m.dom())?.into_iter().map(|d| d <= k).collect();
    Ok(m.mask_cols(&keep))
}
